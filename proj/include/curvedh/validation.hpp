#pragma once

// Closed-form spectrum and wavefunctions checked against the finite-difference oracle.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <future>
#include <limits>
#include <vector>

#include "analytic.hpp"
#include "oracle.hpp"

namespace curvedh {

struct OracleOptions {
    /// Interior points of the coarsest grid; the finer grids use 2N+1 and 4N+3.
    std::size_t points = 6000;
    /// Dirichlet cutoff for k <= 0; 0 selects max(60, 6 n^2) a1, extended to cover
    /// 30 decay lengths of the most weakly bound requested level.
    double r_max = 0.0;
    /// When positive, N is raised until the coarse spacing is at most this.
    double max_spacing = 0.02;
    /// Spacing of the tables used for the wavefunction residual check.
    double table_spacing = 0.01;
    bool parallel = false;
};

struct LevelRecord {
    int n = 0;
    int l = 0;
    double lambda_analytic = 0;
    double lambda_numeric = 0;  // Richardson value from spacings h/2 and h/4
    double relative_error = 0;
    int node_count = 0;         // interior nodes of the oracle eigenfunction
    int analytic_node_count = 0;
    double ode_residual = 0;    // closed-form G in the discretized radial equation
    double lambda_h = 0;
    double lambda_h2 = 0;
    double lambda_h4 = 0;
    /// (lambda_h - exact)/(lambda_h2 - exact); 4 for a second-order scheme.
    double error_ratio = 0;
    /// log2 of successive differences over h, h/2, h/4.
    double convergence_order = 0;
};

struct ChannelGrid {
    double kappa = 0;
    int l = 0;
    std::size_t points = 0;
    double r_end = 0;
    double h = 0;
};

struct SpectralReport {
    std::vector<LevelRecord> levels;
    std::vector<ChannelGrid> grids;
    double max_relative_error = 0;
    double max_residual = 0;
};

/// Highest n to compare in a channel: n_max, limited by the hyperbolic cutoff.
inline int admissible_n_max(const Curvature& k, int n_max, const UnitScales& units)
{
    int top = n_max;
    while (top >= 1 && !bound_state_admissible(QuantumNumbers(top, 0), k, units))
        --top;
    return top;
}

inline ChannelGrid channel_grid(const Curvature& k, int l, int n_top, const OracleOptions& opt, const UnitScales& units)
{
    ChannelGrid g;
    g.kappa = k.value();
    g.l = l;
    if (k.value() > 0) {
        g.r_end = k.domain_end();
    } else if (opt.r_max > 0) {
        g.r_end = opt.r_max;
    } else {
        const double n = n_top;
        g.r_end = std::max(60.0, 6.0 * n * n) * units.bohr_radius;
        if (k.value() < 0) {
            const double decay = units.beta() / (2.0 * n) - n * k.root();
            g.r_end = std::max(g.r_end, 30.0 / decay);
        }
    }
    g.points = opt.points;
    if (opt.max_spacing > 0)
        g.points = std::max(g.points, static_cast<std::size_t>(std::ceil(g.r_end / opt.max_spacing)));
    g.h = g.r_end / double(g.points + 1);
    return g;
}

/// Oracle eigenvalues of levels n = l+1..n_top of one channel, with the closed-form comparison.
inline std::vector<LevelRecord> validate_channel(const Curvature& k, int l, int n_top, const OracleOptions& opt,
                                                 const UnitScales& units, ChannelGrid* grid_out = nullptr)
{
    std::vector<LevelRecord> out;
    if (n_top < l + 1)
        return out;
    const ChannelGrid grid = channel_grid(k, l, n_top, opt, units);
    if (grid_out)
        *grid_out = grid;
    const auto count = static_cast<std::size_t>(n_top - l);
    const auto d1 = build(k, l, grid.points, grid.r_end, units);
    const auto d2 = build(k, l, 2 * grid.points + 1, grid.r_end, units);
    const auto d4 = build(k, l, 4 * grid.points + 3, grid.r_end, units);
    const auto e1 = eigenvalues(d1, count);
    const auto e2 = eigenvalues(d2, count);
    const auto e4 = eigenvalues(d4, count);
    for (std::size_t i = 0; i < count; ++i) {
        const QuantumNumbers qn(l + 1 + int(i), l);
        LevelRecord rec;
        rec.n = qn.n();
        rec.l = l;
        rec.lambda_analytic = lambda_n(qn.n(), k, units);
        rec.lambda_h = e1[i];
        rec.lambda_h2 = e2[i];
        rec.lambda_h4 = e4[i];
        rec.lambda_numeric = richardson(e2[i], e4[i]);
        rec.relative_error = std::abs(rec.lambda_numeric - rec.lambda_analytic) / std::abs(rec.lambda_analytic);
        rec.error_ratio = (e1[i] - rec.lambda_analytic) / (e2[i] - rec.lambda_analytic);
        rec.convergence_order = std::log2(std::abs((e1[i] - e2[i]) / (e2[i] - e4[i])));
        rec.node_count = count_sign_changes(eigenfunction(d2, e2[i]), 1e-8);

        const double extent = k.value() > 0 ? k.domain_end()
                                            : std::max(20.0, 3.0 * rec.n * rec.n) * units.bohr_radius;
        const auto points = static_cast<std::size_t>(std::ceil(extent / opt.table_spacing)) + 1;
        const auto table = radial_wavefunction(qn, k, units, uniform_grid(0.0, extent, points));
        rec.analytic_node_count = count_sign_changes(table.values);
        rec.ode_residual = ode_residual(k, l, rec.lambda_analytic, table, units);
        out.push_back(rec);
    }
    return out;
}

/// Runs the oracle on every (k, l) channel of the matrix, levels n <= n_max.
/// Records are ordered by curvature (input order), then l, then n.
inline SpectralReport validate_matrix(const std::vector<double>& kappas, int n_max, const OracleOptions& opt,
                                      const UnitScales& units)
{
    struct Job {
        Curvature k;
        int l;
        int n_top;
    };
    std::vector<Job> jobs;
    for (double kv : kappas) {
        const Curvature k(kv);
        const int top = admissible_n_max(k, n_max, units);
        for (int l = 0; l < top; ++l)
            jobs.push_back({k, l, top});
    }
    std::vector<std::vector<LevelRecord>> results(jobs.size());
    std::vector<ChannelGrid> grids(jobs.size());
    if (opt.parallel) {
        std::vector<std::future<std::vector<LevelRecord>>> futures;
        for (std::size_t j = 0; j < jobs.size(); ++j)
            futures.push_back(std::async(std::launch::async, [&, j] {
                return validate_channel(jobs[j].k, jobs[j].l, jobs[j].n_top, opt, units, &grids[j]);
            }));
        for (std::size_t j = 0; j < jobs.size(); ++j)
            results[j] = futures[j].get();
    } else {
        for (std::size_t j = 0; j < jobs.size(); ++j)
            results[j] = validate_channel(jobs[j].k, jobs[j].l, jobs[j].n_top, opt, units, &grids[j]);
    }

    SpectralReport report;
    report.grids = std::move(grids);
    for (auto& channel : results) {
        for (auto& rec : channel) {
            report.max_relative_error = std::max(report.max_relative_error, rec.relative_error);
            report.max_residual = std::max(report.max_residual, rec.ode_residual);
            report.levels.push_back(rec);
        }
    }
    return report;
}

} // namespace curvedh
