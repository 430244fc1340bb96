#pragma once

// Minimal-length (deformed Heisenberg algebra) corrections to the hydrogen
// spectrum at first order in the deformation gamma = L^2/hbar^2, combined with
// the curvature term, and the order-of-magnitude comparisons built on them.
//
// Every quantity is evaluated dimensionless first (L/a1, k a1^2) and scaled by
// B last, so that relative effects of 1e-70 stay representable.

#include <cmath>
#include <sstream>

#include "analytic.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "quantum_numbers.hpp"
#include "units.hpp"

namespace curvedh {

/// Minimal length, stored as the ratio L/a1.
class MinimalLength {
public:
    constexpr MinimalLength() = default;

    explicit MinimalLength(double ratio) : ratio_(ratio)
    {
        if (!(ratio >= 0.0) || !std::isfinite(ratio))
            throw domain_error("minimal length must be finite and non-negative");
    }

    static MinimalLength from_meters(double length_m, const UnitScales& units)
    {
        return MinimalLength(length_m / units.bohr_radius_m);
    }

    static MinimalLength planck(const UnitScales& units) { return from_meters(units.planck_length_m, units); }

    constexpr double ratio() const { return ratio_; }
    double meters(const UnitScales& units) const { return ratio_ * units.bohr_radius_m; }
    /// gamma = L^2 / hbar^2 in atomic units (hbar = a1 = 1).
    constexpr double gamma_atomic() const { return ratio_ * ratio_; }

private:
    double ratio_ = 0.0;
};

struct CorrectedLevel {
    QuantumNumbers qn;
    double base = 0;        // -B/n^2
    double ml_shift = 0;    // minimal-length term
    double curvature = 0;   // B k a1^2 (n^2 - 1)
    double total = 0;       // base + ml_shift + curvature
};

/// B 4 (L/a1)^2 (4n - 3(l + 1/2)) / (n^4 (l + 1/2)); positive for L > 0.
inline double ml_shift(const QuantumNumbers& qn, const MinimalLength& length, const UnitScales& units)
{
    const double n = qn.n();
    const double lh = qn.l() + 0.5;
    const double x2 = length.ratio() * length.ratio();
    return units.rydberg * (4.0 * x2 * (4.0 * n - 3.0 * lh) / (n * n * n * n * lh));
}

/// Delta E_{n,0} / E_{n,0} = -4 (L/a1)^2 (8n - 3)/n^2.
inline double relative_shift_s(int n, const MinimalLength& length)
{
    if (n < 1)
        throw domain_error("relative_shift_s: n must be >= 1");
    const double nd = n;
    const double x2 = length.ratio() * length.ratio();
    return -4.0 * x2 * (8.0 * nd - 3.0) / (nd * nd);
}

/// E_{n,l} = B(-1/n^2 + minimal-length term + k a1^2 (n^2 - 1)).
inline CorrectedLevel combined_level(const QuantumNumbers& qn, const Curvature& k, const MinimalLength& length,
                                     const UnitScales& units)
{
    CorrectedLevel c;
    c.qn = qn;
    c.base = flat_energy(qn.n(), units);
    c.ml_shift = ml_shift(qn, length, units);
    c.curvature = curvature_energy_term(qn.n(), k, units);
    c.total = c.base + c.ml_shift + c.curvature;
    return c;
}

/// Q_P = -20 (L_P/a1)^2, the relative shift of the ground-state energy at the Planck length.
inline double planck_Q(const UnitScales& units)
{
    return relative_shift_s(1, MinimalLength::planck(units));
}

/// Ratio L/a1 at which the 1S-2S splitting moves by the given energy precision
/// (same energy units as units.rydberg).
inline MinimalLength length_bound_from_precision(double precision, const UnitScales& units)
{
    if (!(precision >= 0.0))
        throw domain_error("length_bound_from_precision: precision must be non-negative");
    const MinimalLength unit(1.0);
    const double per_ratio_sq = ml_shift(QuantumNumbers(1, 0), unit, units) - ml_shift(QuantumNumbers(2, 0), unit, units);
    return MinimalLength(std::sqrt(precision / per_ratio_sq));
}

/// Relative size |Delta E / E_n| of the curvature term at level n (against |E| = B/n^2).
inline double curvature_relative_effect(double n, const Curvature& k, const UnitScales& units)
{
    const double ka2 = std::abs(k.value()) * units.bohr_radius * units.bohr_radius;
    return ka2 * (n * n - 1.0) * n * n;
}

/// Relative size of the l = 0 minimal-length term at (real) level n.
inline double ml_relative_effect(double n, const MinimalLength& length)
{
    const double x2 = length.ratio() * length.ratio();
    return 4.0 * x2 * (8.0 * n - 3.0) / (n * n);
}

struct Crossover {
    double level = 0;               // real n where both relative effects agree
    double relative_magnitude = 0;  // their common value
};

/// Real n* >= 1 where the curvature and minimal-length relative effects (l = 0)
/// coincide; bisection in log n over [1, 1e20].
inline Crossover crossover_level(const Curvature& k, const MinimalLength& length, const UnitScales& units)
{
    if (k.value() == 0 || !(length.ratio() > 0))
        throw domain_error("crossover_level: requires non-zero curvature and positive minimal length");
    // Difference of the relative effects multiplied by n^2 (monotone increasing in n >= 1).
    auto excess = [&](double n) {
        const double ka2 = std::abs(k.value()) * units.bohr_radius * units.bohr_radius;
        const double x2 = length.ratio() * length.ratio();
        return ka2 * (n * n - 1.0) * n * n * n * n - 4.0 * x2 * (8.0 * n - 3.0);
    };
    double lo = 0.0, hi = 20.0;  // log10 n
    if (excess(std::pow(10.0, hi)) <= 0)
        throw domain_error("crossover_level: minimal-length effect dominates for every n up to 1e20");
    for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (excess(std::pow(10.0, mid)) > 0)
            hi = mid;
        else
            lo = mid;
    }
    Crossover c;
    c.level = std::pow(10.0, 0.5 * (lo + hi));
    c.relative_magnitude = curvature_relative_effect(c.level, k, units);
    return c;
}

} // namespace curvedh
