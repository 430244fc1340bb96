// Acceptance run: one PASS/FAIL line per criterion. With an argument, runs only that criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "curvedh/curvedh.hpp"

using namespace curvedh;

namespace {

const UnitScales au = UnitScales::atomic();

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = double(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

SpectralReport flat_report()
{
    OracleOptions opt;
    opt.points = 6000;
    opt.max_spacing = 0;
    return validate_matrix({0.0}, 4, opt, au);
}

const std::vector<double> curved_kappas{1e-2, 1e-4, -1e-4, -1e-2};

Outcome flat_oracle()
{
    const auto t0 = std::chrono::steady_clock::now();
    const auto report = flat_report();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    double worst = 0.0;
    for (const auto& rec : report.levels)
        worst = std::max(worst, std::abs(rec.lambda_numeric - (-1.0 / (rec.n * rec.n))) * rec.n * rec.n);
    const bool ok = report.levels.size() == 10 && worst <= 1e-6 && secs <= 30.0;
    return {ok, fmt("flat oracle n<=4 all l at N=%zu: max rel err %.2e (<= 1e-6), %zu levels, %.2f s (<= 30 s)",
                    report.grids.front().points, worst, report.levels.size(), secs)};
}

Outcome curved_spectra()
{
    const auto report = validate_matrix(curved_kappas, 4, OracleOptions{}, au);
    double ground = 0.0;
    std::vector<double> kappas = curved_kappas;
    kappas.push_back(0.0);
    OracleOptions opt;
    for (double kv : kappas) {
        const auto recs = validate_channel(Curvature(kv), 0, 1, opt, au);
        ground = std::max(ground, std::abs(recs.front().lambda_numeric + 1.0));
    }
    const bool ok = report.max_relative_error <= 1e-6 && ground <= 1e-8 && report.levels.size() == 36;
    return {ok, fmt("k in {+-1e-2, +-1e-4}: %zu levels, max rel err %.2e (<= 1e-6); n=1 spread over k incl. 0 %.2e (<= 1e-8)",
                    report.levels.size(), report.max_relative_error, ground)};
}

Outcome hyperbolic_cutoff()
{
    const Curvature k(-0.01);
    const int count = count_bound_states(k, 0, au);
    const auto recs = validate_channel(k, 0, 3, OracleOptions{}, au);
    double worst = 0.0;
    for (const auto& r : recs)
        worst = std::max(worst, r.relative_error);
    // Fourth eigenvalue on the validation box lies at or above the threshold.
    const ChannelGrid g = channel_grid(k, 0, 3, OracleOptions{}, au);
    const auto d = build(k, 0, g.points, g.r_end, au);
    const double fourth = eigenvalue(d, 3);
    const double lc = continuum_threshold(k, au);
    const bool ok = count == 3 && recs.size() == 3 && worst <= 1e-6 && fourth > lc - 1e-9;
    return {ok, fmt("k=-0.01, l=0: %d discrete states below lambda_c=%.2f (stable under doubling), n=1..3 max rel err %.2e, "
                    "4th eigenvalue %.6f >= lambda_c",
                    count, lc, worst, fourth)};
}

Outcome wavefunctions()
{
    const auto report = validate_matrix(curved_kappas, 4, OracleOptions{}, au);
    int node_mismatch = 0;
    for (const auto& r : report.levels)
        if (r.analytic_node_count != r.n - r.l - 1 || r.node_count != r.n - r.l - 1)
            ++node_mismatch;

    // Imaginary residue of the complex evaluation on the sphere.
    double worst_im = 0.0;
    for (double kv : curved_kappas) {
        if (kv <= 0)
            continue;
        const Curvature k(kv);
        for (int n = 1; n <= 4; ++n)
            for (int l = 0; l < n; ++l) {
                const QuantumNumbers qn(n, l);
                const auto data = hypergeometric_data(qn, k, au);
                const cplx phase = detail::leading_phase(data, qn, k, au);
                const double end = std::min(k.domain_end(), std::max(20.0, 3.0 * n * n));
                double re = 0, im = 0;
                for (int j = 1; j < 2000; ++j) {
                    const cplx v = radial_value(data, qn, k, end * j / 2000.0) / phase;
                    re = std::max(re, std::abs(v.real()));
                    im = std::max(im, std::abs(v.imag()));
                }
                worst_im = std::max(worst_im, im / re);
            }
    }
    const bool ok = report.max_residual <= 1e-8 && node_mismatch == 0 && worst_im <= 1e-8;
    return {ok, fmt("closed-form G: max ODE residual %.2e (<= 1e-8), node mismatches %d, max imaginary residue %.2e (<= 1e-8)",
                    report.max_residual, node_mismatch, worst_im)};
}

Outcome limits()
{
    std::vector<double> ks{1e-3, 5e-4, 2.5e-4, 1.25e-4, 6.25e-5};
    double worst_flat = 0.0;
    for (double sign : {1.0, -1.0})
        for (int n = 1; n <= 3; ++n)
            for (int l = 0; l < n; ++l) {
                std::vector<double> signed_ks;
                for (double k : ks)
                    signed_ks.push_back(sign * k);
                const double end = std::max(20.0, 3.0 * n * n);
                const auto gaps = flat_limit_gap(QuantumNumbers(n, l), signed_ks, uniform_grid(0, end, 4001), au);
                worst_flat = std::max(worst_flat, std::abs(loglog_slope(ks, gaps) - 1.0));
            }
    std::vector<double> nus;
    for (double e = 2.0; e <= 6.0 + 1e-9; e += 0.5)
        nus.push_back(std::pow(10.0, e));
    double worst_nu = 0.0;
    for (int m = 1; m <= 5; ++m)
        for (double alpha : {1.0, 3.0})
            for (double x : {0.5, 2.0}) {
                std::vector<double> gaps;
                for (double nu : nus)
                    gaps.push_back(jacobi_laguerre_limit_gap(m, alpha, nu, x));
                worst_nu = std::max(worst_nu, std::abs(loglog_slope(nus, gaps) + 1.0));
            }
    const bool ok = worst_flat <= 0.1 && worst_nu <= 0.1;
    return {ok, fmt("flat-limit gap slope 1 +- %.3f (tol 0.1); Jacobi->Laguerre slope -1 +- %.3f over nu in [1e2,1e6], m<=5",
                    worst_flat, worst_nu)};
}

Outcome reproductions()
{
    const auto ev = UnitScales::electron_volt();
    const double q = planck_Q(au);
    const auto c2 = combined_level(QuantumNumbers(2, 0), Curvature(1e-72), MinimalLength(0.0), au);
    const double curv_rel = std::abs(c2.curvature / c2.base);
    const auto cross = crossover_level(Curvature::from_radius(1e36), MinimalLength::planck(au), au);
    const double bound_m = length_bound_from_precision(1e-12, ev).meters(ev);
    const double ns = transition_level(Curvature::from_radius(1e36), au);

    const bool ok_q = q >= -3e-48 && q <= -1e-48;
    const bool ok_c = std::abs(curv_rel - 1.2e-71) <= 1e-74;
    const bool ok_x = cross.level >= 3e4 && cross.level <= 3e5 && cross.relative_magnitude >= 1e-54 &&
                      cross.relative_magnitude <= 1e-51;
    const bool ok_b = std::abs(std::log10(bound_m / 1e-17)) <= 1.0;
    const bool ok_t = std::abs(ns / 1e18 - 1.0) <= 0.01;
    return {ok_q && ok_c && ok_x && ok_b && ok_t,
            fmt("Q_P=%.3e; |dE2/E2|_curv=%.3e; n*=%.4g at rel %.2e; L bound %.2e m (0.01 fm=1e-17 m); n_transition=%.6g",
                q, curv_rel, cross.level, cross.relative_magnitude, bound_m, ns)};
}

Outcome invariants()
{
    int failures = 0;
    for (double kv : {1e-2, -1e-2, 1e-4, 0.7})
        for (int n = 1; n <= 30; ++n)
            if (energy_n(n, Curvature(kv), au) != energy_n(n, Curvature(0), au) + au.rydberg * (double(n) * n - 1.0) * kv)
                ++failures;
    const MinimalLength len(1e-3);
    for (int n = 1; n <= 50; ++n)
        for (int l = 0; l < n; ++l) {
            const double s = ml_shift(QuantumNumbers(n, l), len, au);
            if (!(s > 0) || (l > 0 && !(s < ml_shift(QuantumNumbers(n, l - 1), len, au))))
                ++failures;
        }
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> logk(-12.0, 1.0), unit(0.0, 1.0);
    double trig = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const double kv = (i % 2 ? 1.0 : -1.0) * std::pow(10.0, logk(rng));
        const Curvature k(kv);
        const double r = kv > 0 ? unit(rng) * k.domain_end() : unit(rng) * 3.0 / k.root();
        const double s = curved_sin(k, r), c = curved_cos(k, r);
        trig = std::max(trig, std::abs(c * c + kv * s * s - 1.0));
    }
    double rep = 0.0;
    for (int i = 0; i < 50; ++i) {
        const int m = i % 7;
        const cplx a(0.5 + 0.1 * i, 0.03 * i), b(-3.0 + 0.2 * i, -0.05 * i), x(0.3 - 0.01 * i, 0.02 * i);
        cplx poch = 1.0;
        for (int j = 0; j < m; ++j)
            poch *= (a + 1.0 + double(j)) / double(j + 1);
        const cplx rhs = poch * gauss2f1_terminating(m, double(m) + a + b + 1.0, a + 1.0, (1.0 - x) / 2.0);
        rep = std::max(rep, std::abs(jacobi_poly(m, a, b, x) - rhs) / std::max(1.0, std::abs(rhs)));
        const double z = 0.2 * i, al = 0.5 * (i % 5);
        double binom = 1.0;
        for (int j = 1; j <= m; ++j)
            binom *= (al + j) / j;
        const double lag = laguerre_poly(m, al, z);
        rep = std::max(rep, std::abs(lag - binom * kummer1f1_terminating(m, al + 1.0, z)) / std::max(1.0, std::abs(lag)));
    }
    const bool ok = failures == 0 && trig <= 1e-13 && rep <= 1e-10;
    return {ok, fmt("additivity/positivity/l-monotonicity failures %d; C^2+kS^2-1 max %.2e (<= 1e-13); "
                    "representation equivalences max %.2e (<= 1e-10)",
                    failures, trig, rep)};
}

Outcome convergence_order()
{
    const auto report = flat_report();
    double lo = INFINITY, hi = -INFINITY;
    for (const auto& rec : report.levels) {
        lo = std::min(lo, rec.error_ratio);
        hi = std::max(hi, rec.error_ratio);
    }
    const bool ok = lo >= 3.6 && hi <= 4.4;
    return {ok, fmt("error ratio h vs h/2 over flat n<=4 levels in [%.4f, %.4f] (4 +- 10%%)", lo, hi)};
}

} // namespace

int main(int argc, char** argv)
{
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"flat hydrogen oracle", flat_oracle},
        {"curved spectra", curved_spectra},
        {"hyperbolic cutoff", hyperbolic_cutoff},
        {"wavefunction cross-validation", wavefunctions},
        {"limit studies", limits},
        {"order-of-magnitude reproductions", reproductions},
        {"structural invariants", invariants},
        {"oracle convergence order", convergence_order},
    };
    int only = 0;
    if (argc > 1)
        only = std::atoi(argv[1]);
    if (only < 0 || only > int(criteria.size())) {
        std::fprintf(stderr, "usage: %s [criterion 1..%zu]\n", argv[0], criteria.size());
        return 2;
    }
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (only != 0 && only != int(i + 1))
            continue;
        Outcome o{false, ""};
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s criterion %zu (%s): %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
        if (!o.pass)
            ++failed;
    }
    return failed == 0 ? 0 : 1;
}
