#pragma once

// Closed-form hydrogen on spaces of constant curvature.
//
// Spectrum:     lambda_n = -beta^2/(4 n^2) + (n^2 - 1) k,   n = l + m + 1
// Wavefunction: G(r) ~ S_k(r)^l exp(-sqrt(-k) (l + 2q) r) P_m^{(2l+1, nu)}(1 - 2 z(r)),
//               z(r) = 2 sqrt(-k) S_k(r) exp(-sqrt(-k) r) = 1 - exp(-2 sqrt(-k) r),
// with (q, nu) fixed by the hypergeometric reduction. The square roots in that
// reduction are branch-ambiguous, so the branch is chosen by enumeration and
// certified by the ODE residual of the reconstructed G.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "errors.hpp"
#include "geometry.hpp"
#include "oracle.hpp"
#include "quantum_numbers.hpp"
#include "radial_table.hpp"
#include "specfun.hpp"
#include "units.hpp"

namespace curvedh {

/// Curvatures with |k| a1^2 below this are handled by the flat-space (Laguerre) formulas.
inline constexpr double flat_dispatch_threshold = 1e-12;

inline bool is_flat(const Curvature& k, const UnitScales& units)
{
    return std::abs(k.value()) * units.bohr_radius * units.bohr_radius < flat_dispatch_threshold;
}

// ---------------------------------------------------------------------------
// Spectrum

/// Eigenvalue parameter lambda = 2m E / hbar^2 of level n.
inline double lambda_n(int n, const Curvature& k, const UnitScales& units)
{
    if (n < 1)
        throw domain_error("lambda_n: n must be >= 1");
    const double beta = units.beta();
    const double nn = double(n) * double(n);
    return -beta * beta / (4.0 * nn) + (nn - 1.0) * k.value();
}

/// Flat-space energy -B/n^2.
inline double flat_energy(int n, const UnitScales& units)
{
    const double nn = double(n) * double(n);
    return units.rydberg * (-1.0 / nn);
}

/// Curvature contribution B (n^2 - 1) k a1^2.
inline double curvature_energy_term(int n, const Curvature& k, const UnitScales& units)
{
    const double nn = double(n) * double(n);
    return units.rydberg * (nn - 1.0) * k.value() * units.bohr_radius * units.bohr_radius;
}

/// E_n = B(-1/n^2 + (n^2 - 1) k a1^2), assembled as flat part plus curvature part.
inline double energy_n(int n, const Curvature& k, const UnitScales& units)
{
    if (n < 1)
        throw domain_error("energy_n: n must be >= 1");
    return flat_energy(n, units) + curvature_energy_term(n, k, units);
}

/// Positive root n* of n^2 (n^2 - 1) = (R/a1)^2, where E_n crosses zero on the sphere.
inline double transition_level(const Curvature& k, const UnitScales& units)
{
    if (!(k.value() > 0))
        throw domain_error("transition_level: requires positive curvature");
    const double ratio = k.radius() / units.bohr_radius;
    const double n2 = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * ratio * ratio));
    return std::sqrt(n2);
}

/// True for every level when k >= 0; for k < 0 iff n^2 < beta / (2 sqrt(-k)) = R/a1.
inline bool bound_state_admissible(const QuantumNumbers& qn, const Curvature& k, const UnitScales& units)
{
    if (k.value() >= 0 || is_flat(k, units))
        return true;
    const double nn = double(qn.n()) * double(qn.n());
    return nn < units.beta() / (2.0 * k.root());
}

struct EnergyLevel {
    QuantumNumbers qn;
    double lambda = 0;
    double energy = 0;
    Curvature kappa;
    bool bound = true;
};

inline EnergyLevel energy_level(const QuantumNumbers& qn, const Curvature& k, const UnitScales& units)
{
    return EnergyLevel{qn, lambda_n(qn.n(), k, units), energy_n(qn.n(), k, units), k,
                       bound_state_admissible(qn, k, units)};
}

// ---------------------------------------------------------------------------
// Hypergeometric parametrization

/// Which square-root branches produced a HypergeometricData.
struct BranchTag {
    int sign_omega_minus = 1;
    int sign_omega_plus = 1;
    /// false: q = (1 + omega_-)/2 (the labelling of the reduction as usually written);
    /// true: q = (1 + omega_+)/2, the roles of the two roots exchanged.
    bool q_from_omega_plus = false;
    /// Relative ODE residual of the reconstructed G on the probe grid.
    double residual = 0;
    int survivors = 0;
};

struct HypergeometricData {
    cplx omega_plus;
    cplx omega_minus;
    cplx q_plus;  // the q actually used in the decomposition f = z^p (1-z)^q g
    cplx a, b, c;
    cplx jacobi_nu;       // -n + (omega_- + omega_+)/2
    cplx exponent_coeff;  // sqrt(-k) (l + 2q)
    cplx sqrt_minus_kappa;
    BranchTag branch;
};

/// sqrt(-k) on the principal branch: real positive for k < 0, i sqrt(k) for k > 0.
inline cplx sqrt_minus_kappa(const Curvature& k)
{
    if (k.value() > 0)
        return {0.0, k.root()};
    return {k.root(), 0.0};
}

/// z(r) = 2 sqrt(-k) S_k(r) exp(-sqrt(-k) r). Equals 1 - exp(-2 sqrt(-k) r): a point
/// of [0, 1) for k < 0 and of the unit circle about 1 for k > 0; zero in flat space.
inline cplx mobius_argument(const Curvature& k, double r)
{
    if (k.value() == 0) {
        detail::check_radius(k, r, "mobius_argument");
        return 0.0;
    }
    const double s = k.root();
    if (k.value() < 0) {
        detail::check_radius(k, r, "mobius_argument");
        return -std::expm1(-2.0 * s * r);
    }
    const double sn = curved_sin(k, r) * s;
    return cplx(0.0, 2.0 * sn) * std::exp(cplx(0.0, -s * r));
}

/// Unnormalized complex G(r) for the given parameters.
inline cplx radial_value(const HypergeometricData& data, const QuantumNumbers& qn, const Curvature& k, double r)
{
    const int l = qn.l();
    const cplx y = -2.0 * mobius_argument(k, r);
    const cplx poly = jacobi_poly_shifted(qn.m(), cplx(2.0 * l + 1.0), data.jacobi_nu, y);
    cplx prefactor;
    if (k.value() < 0) {
        // exp(l log S - c r) keeps S^l exp(-c r) finite where sinh alone would overflow.
        const double log_s = l == 0 ? 0.0 : log_curved_sin(k, r);
        prefactor = std::exp(cplx(l * log_s) - data.exponent_coeff * r);
    } else {
        prefactor = std::pow(curved_sin(k, r), l) * std::exp(-data.exponent_coeff * r);
    }
    return prefactor * poly;
}

namespace detail {

inline double probe_extent(const QuantumNumbers& qn, const Curvature& k, const UnitScales& units)
{
    const double n = qn.n();
    const double extent = std::max(20.0, 3.0 * n * n) * units.bohr_radius;
    return k.value() > 0 ? std::min(extent, k.domain_end()) : extent;
}

inline std::vector<double> probe_grid(const QuantumNumbers& qn, const Curvature& k, const UnitScales& units)
{
    constexpr int probes = 64;
    const double extent = probe_extent(qn, k, units);
    std::vector<double> r(probes);
    for (int j = 0; j < probes; ++j)
        r[j] = extent * double(j + 1) / double(probes + 1);
    return r;
}

// Phase making the leading small-r coefficient real and positive.
inline cplx leading_phase(const HypergeometricData& data, const QuantumNumbers& qn, const Curvature& k,
                          const UnitScales& units)
{
    const double r0 = 1e-7 * std::min(units.bohr_radius, probe_extent(qn, k, units));
    const cplx v = radial_value(data, qn, k, r0);
    if (std::abs(v) == 0.0 || !finite(v))
        return 1.0;
    return v / std::abs(v);
}

} // namespace detail

/// Residual of the real part of exp(-i phase) G on the probe grid.
inline double branch_residual(const HypergeometricData& data, const QuantumNumbers& qn, const Curvature& k,
                              const UnitScales& units)
{
    const cplx phase = detail::leading_phase(data, qn, k, units);
    const double lambda = lambda_n(qn.n(), k, units);
    const auto probes = detail::probe_grid(qn, k, units);
    try {
        return ode_residual_at(
            k, qn.l(), lambda, [&](double r) { return (radial_value(data, qn, k, r) / phase).real(); }, probes, units);
    } catch (const overflow_error&) {
        return std::numeric_limits<double>::infinity();
    }
}

/// Every branch of the hypergeometric reduction that terminates (a = -m, c = 2l+2),
/// before the decay and residual criteria are applied. Order is deterministic.
inline std::vector<HypergeometricData> hypergeometric_candidates(const QuantumNumbers& qn, const Curvature& k,
                                                                 const UnitScales& units)
{
    if (is_flat(k, units))
        throw domain_error("hypergeometric_data: flat space has no hypergeometric parametrization; use the Laguerre route");
    const double kappa = k.value();
    const double lambda = lambda_n(qn.n(), k, units);
    const double beta = units.beta();
    const cplx s = sqrt_minus_kappa(k);
    const cplx omega_plus_sq = (kappa + lambda + beta * s) / kappa;
    const cplx omega_minus_sq = (kappa + lambda - beta * s) / kappa;
    const cplx root_plus = std::sqrt(omega_plus_sq);
    const cplx root_minus = std::sqrt(omega_minus_sq);
    const int l = qn.l();
    const int m = qn.m();
    const int n = qn.n();

    std::vector<HypergeometricData> out;
    for (bool swapped : {false, true}) {
        for (int sm : {1, -1}) {
            for (int sp : {1, -1}) {
                HypergeometricData d;
                d.sqrt_minus_kappa = s;
                d.omega_minus = double(sm) * root_minus;
                d.omega_plus = double(sp) * root_plus;
                const cplx wq = swapped ? d.omega_plus : d.omega_minus;
                const cplx wo = swapped ? d.omega_minus : d.omega_plus;
                d.q_plus = 0.5 * (1.0 + wq);
                d.a = double(l + 1) + 0.5 * (wq - wo);
                d.b = double(l + 1) + 0.5 * (wq + wo);
                d.c = double(2 * l + 2);
                if (std::abs(d.a + double(m)) > 1e-8 * (1.0 + std::abs(wq) + std::abs(wo)))
                    continue;
                d.a = double(-m);
                d.jacobi_nu = double(-n) + 0.5 * (d.omega_minus + d.omega_plus);
                d.exponent_coeff = s * (double(l) + 2.0 * d.q_plus);
                d.branch.sign_omega_minus = sm;
                d.branch.sign_omega_plus = sp;
                d.branch.q_from_omega_plus = swapped;
                out.push_back(d);
            }
        }
    }
    return out;
}

/// Hypergeometric parameters of level qn with a deterministic branch choice:
/// terminating candidates, then (k < 0) those whose u = S_k G decays at infinity,
/// then the smallest probe-grid ODE residual, ties broken toward Re(omega_-) >= 0.
inline HypergeometricData hypergeometric_data(const QuantumNumbers& qn, const Curvature& k, const UnitScales& units)
{
    auto candidates = hypergeometric_candidates(qn, k, units);
    std::vector<HypergeometricData> survivors;
    for (auto& d : candidates) {
        // u ~ exp(-sqrt(-k) omega_q r) as r -> infinity.
        const cplx wq = d.branch.q_from_omega_plus ? d.omega_plus : d.omega_minus;
        if (k.value() < 0 && !((d.sqrt_minus_kappa * wq).real() > 0.0))
            continue;
        d.branch.residual = branch_residual(d, qn, k, units);
        survivors.push_back(d);
    }
    if (survivors.empty()) {
        std::ostringstream os;
        os << "hypergeometric_data: no normalizable branch for n=" << qn.n() << ", l=" << qn.l()
           << " at curvature " << k.value();
        throw branch_error(os.str());
    }
    const auto best = std::min_element(survivors.begin(), survivors.end(), [](const auto& x, const auto& y) {
        const double rx = x.branch.residual, ry = y.branch.residual;
        if (std::abs(rx - ry) > 1e-12 * std::max(rx, ry))
            return rx < ry;
        return (x.omega_minus.real() >= 0) && !(y.omega_minus.real() >= 0);
    });
    HypergeometricData chosen = *best;
    chosen.branch.survivors = static_cast<int>(survivors.size());
    return chosen;
}

// ---------------------------------------------------------------------------
// Wavefunctions

namespace detail {

// Integral of f over [0, end] on panels of the given width.
template <class Fn>
double panel_integral(Fn&& f, double end, double width)
{
    using boost::math::quadrature::gauss_kronrod;
    const auto panels = static_cast<std::size_t>(std::max(1.0, std::ceil(end / width)));
    const double w = end / double(panels);
    double total = 0.0;
    for (std::size_t i = 0; i < panels; ++i)
        total += gauss_kronrod<double, 31>::integrate(f, w * double(i), w * double(i + 1), 8, 1e-13);
    return total;
}

// Extent beyond which S_k^2 G^2 is negligible, from the decay rate of u.
inline double norm_extent(const QuantumNumbers& qn, const Curvature& k, double decay)
{
    const double n = qn.n();
    const double cut = (60.0 + 6.0 * n) / decay;
    return k.value() > 0 ? std::min(cut, k.domain_end()) : cut;
}

inline RadialFunctionTable finish_table(std::vector<double> grid, std::vector<double> raw, const QuantumNumbers& qn,
                                        const Curvature& k, double norm)
{
    RadialFunctionTable t;
    t.grid = std::move(grid);
    t.values = std::move(raw);
    for (double& v : t.values)
        v /= norm;
    t.qn = qn;
    t.kappa = k;
    t.norm = norm;
    return t;
}

} // namespace detail

/// Flat-space G_0(r) = r^l exp(-sqrt(-lambda_0) r) L_m^{2l+1}(2 sqrt(-lambda_0) r),
/// normalized to unit integral of G^2 r^2 with G(0+) > 0.
inline RadialFunctionTable radial_wavefunction_flat(const QuantumNumbers& qn, const UnitScales& units,
                                                    std::vector<double> grid)
{
    const double decay = units.beta() / (2.0 * qn.n());  // sqrt(-lambda_0)
    const int l = qn.l();
    auto g = [&](double r) {
        return std::pow(r, l) * std::exp(-decay * r) * laguerre_poly(qn.m(), 2.0 * l + 1.0, 2.0 * decay * r);
    };
    for (double r : grid) {
        if (!(r >= 0.0))
            throw domain_error("radial_wavefunction_flat: negative radius in grid");
    }
    const Curvature flat(0.0);
    const double extent = detail::norm_extent(qn, flat, decay);
    const double norm2 = detail::panel_integral([&](double r) { const double v = g(r) * r; return v * v; }, extent,
                                                0.5 / decay);
    std::vector<double> raw(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        raw[i] = g(grid[i]);
    return detail::finish_table(std::move(grid), std::move(raw), qn, flat, std::sqrt(norm2));
}

/// Closed-form G_k(r) on the grid, normalized to unit integral of G^2 S_k^2 with G(0+) > 0.
/// Throws unbound_level_error for hyperbolic levels beyond the bound-state cutoff and
/// phase_error if the complex evaluation does not reduce to a real function.
inline RadialFunctionTable radial_wavefunction(const QuantumNumbers& qn, const Curvature& k, const UnitScales& units,
                                               std::vector<double> grid)
{
    if (is_flat(k, units))
        return radial_wavefunction_flat(qn, units, std::move(grid));
    if (!bound_state_admissible(qn, k, units)) {
        std::ostringstream os;
        os << "level n=" << qn.n() << " is not bound at curvature " << k.value() << " (needs n^2 < R/a1)";
        throw unbound_level_error(os.str());
    }
    const HypergeometricData data = hypergeometric_data(qn, k, units);
    const cplx phase = detail::leading_phase(data, qn, k, units);
    auto g = [&](double r) { return radial_value(data, qn, k, r) / phase; };

    std::vector<double> raw(grid.size());
    double max_re = 0.0, max_im = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const cplx v = g(grid[i]);
        raw[i] = v.real();
        max_re = std::max(max_re, std::abs(v.real()));
        max_im = std::max(max_im, std::abs(v.imag()));
    }
    if (max_im > 1e-8 * max_re) {
        std::ostringstream os;
        os << "radial_wavefunction: imaginary residue " << max_im / max_re << " of amplitude for n=" << qn.n()
           << ", l=" << qn.l() << " at curvature " << k.value();
        throw phase_error(os.str());
    }

    const cplx wq = data.branch.q_from_omega_plus ? data.omega_plus : data.omega_minus;
    const double decay = (data.sqrt_minus_kappa * wq).real();
    const double extent = detail::norm_extent(qn, k, decay);
    const double norm2 = detail::panel_integral(
        [&](double r) {
            const double v = g(r).real() * curved_sin(k, r);
            return v * v;
        },
        extent, std::min(0.5 / decay, extent));
    return detail::finish_table(std::move(grid), std::move(raw), qn, k, std::sqrt(norm2));
}

/// Default table grid: [0, max(20, 3 n^2) a1] for k <= 0, the full [0, pi/sqrt(k)] for k > 0.
inline std::vector<double> default_grid(const QuantumNumbers& qn, const Curvature& k, const UnitScales& units,
                                        std::size_t points = 2001, double r_max = 0.0)
{
    double end = r_max;
    if (!(end > 0)) {
        const double n = qn.n();
        end = k.value() > 0 && !is_flat(k, units) ? k.domain_end() : std::max(20.0, 3.0 * n * n) * units.bohr_radius;
    }
    if (k.value() > 0)
        end = std::min(end, k.domain_end());
    return uniform_grid(0.0, end, points);
}

/// sup_grid |G_k - G_0| for each curvature in the sequence (both normalized).
inline std::vector<double> flat_limit_gap(const QuantumNumbers& qn, const std::vector<double>& kappas,
                                          const std::vector<double>& grid, const UnitScales& units)
{
    const auto flat = radial_wavefunction_flat(qn, units, grid);
    std::vector<double> gaps;
    gaps.reserve(kappas.size());
    for (double kv : kappas) {
        if (std::abs(kv) * units.bohr_radius * units.bohr_radius > 0.1)
            throw domain_error("flat_limit_gap: requires |k| a1^2 <= 0.1");
        const auto curved = radial_wavefunction(qn, Curvature(kv), units, grid);
        double gap = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i)
            gap = std::max(gap, std::abs(curved.values[i] - flat.values[i]));
        gaps.push_back(gap);
    }
    return gaps;
}

} // namespace curvedh
