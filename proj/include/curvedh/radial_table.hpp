#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "geometry.hpp"
#include "quantum_numbers.hpp"

namespace curvedh {

/// Sampled real radial wavefunction G(r) on an ascending grid.
struct RadialFunctionTable {
    std::vector<double> grid;
    std::vector<double> values;
    QuantumNumbers qn;
    Curvature kappa;
    /// L2 norm (measure S_k^2 dr) of the unnormalized function; values are already divided by it.
    double norm = 1.0;
};

/// Uniform grid of `points` radii on [r_begin, r_end], endpoints included.
inline std::vector<double> uniform_grid(double r_begin, double r_end, std::size_t points)
{
    std::vector<double> g(points);
    if (points == 1) {
        g[0] = r_begin;
        return g;
    }
    const double h = (r_end - r_begin) / double(points - 1);
    for (std::size_t i = 0; i < points; ++i)
        g[i] = r_begin + h * double(i);
    g.back() = r_end;
    return g;
}

/// Interior sign changes of a sampled function. Samples below `floor` times the
/// largest magnitude are treated as zero and skipped.
inline int count_sign_changes(const std::vector<double>& values, double floor = 1e-10)
{
    double peak = 0.0;
    for (double v : values)
        peak = std::max(peak, std::abs(v));
    const double cut = floor * peak;
    int changes = 0;
    int last = 0;
    for (double v : values) {
        if (std::abs(v) <= cut)
            continue;
        const int sign = v > 0 ? 1 : -1;
        if (last != 0 && sign != last)
            ++changes;
        last = sign;
    }
    return changes;
}

} // namespace curvedh
