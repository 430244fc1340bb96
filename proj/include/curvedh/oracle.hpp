#pragma once

// Independent numerical eigensolver for the curved-space Coulomb radial problem.
//
// With u = S_k G the radial equation becomes the Schroedinger-type form
//
//   -u'' + [ l(l+1)/S_k^2 + U_k - k ] u = lambda u,     U_k = -beta cot_k(r),
//
// (S_k'' = -k S_k). It is discretized with the 3-point Laplacian on a uniform
// grid that excludes both singular endpoints, giving a symmetric tridiagonal
// operator whose eigenvalues are found by Sturm-sequence bisection.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <sstream>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "geometry.hpp"
#include "radial_table.hpp"
#include "units.hpp"

namespace curvedh {

/// U_k(r) = 2m V_k / hbar^2 = -beta cot_k(r).
inline double potential(const Curvature& k, double r, const UnitScales& units)
{
    return -units.beta() * curved_cot(k, r);
}

/// Infimum of the essential spectrum: s^2 - beta s for k = -s^2 < 0, 0 for flat
/// space, +infinity for the (compact) sphere.
inline double continuum_threshold(const Curvature& k, const UnitScales& units)
{
    if (k.value() > 0)
        return std::numeric_limits<double>::infinity();
    if (k.value() == 0)
        return 0.0;
    const double s = k.root();
    return s * s - units.beta() * s;
}

/// Symmetric tridiagonal finite-difference operator for one (k, l) channel.
struct Discretization {
    Curvature kappa;
    int l = 0;
    double h = 0;
    double r_end = 0;
    std::vector<double> diagonal;
    double off_diagonal = 0;
    double threshold = 0;

    std::size_t size() const { return diagonal.size(); }
    double radius(std::size_t i) const { return h * double(i + 1); }
};

/// Interior points r_i = i h, i = 1..N, with h = r_end/(N+1) and Dirichlet values
/// at r = 0 and r = r_end. For k > 0, r_end is the antipode and r_max is ignored.
inline Discretization build(const Curvature& k, int l, std::size_t points, double r_max, const UnitScales& units)
{
    if (points < 2)
        throw domain_error("build: need at least 2 interior points");
    if (l < 0)
        throw domain_error("build: negative angular momentum");
    const double r_end = k.value() > 0 ? k.domain_end() : r_max;
    if (!(r_end > 0) || !std::isfinite(r_end))
        throw domain_error("build: domain extent must be positive and finite");

    Discretization d;
    d.kappa = k;
    d.l = l;
    d.r_end = r_end;
    d.h = r_end / double(points + 1);
    d.off_diagonal = -1.0 / (d.h * d.h);
    d.threshold = continuum_threshold(k, units);
    d.diagonal.resize(points);
    const double centrifugal = double(l) * double(l + 1);
    for (std::size_t i = 0; i < points; ++i) {
        const double r = d.radius(i);
        const double s = curved_sin(k, r);
        d.diagonal[i] = 2.0 / (d.h * d.h) + centrifugal / (s * s) + potential(k, r, units) - k.value();
    }
    return d;
}

/// Number of eigenvalues strictly below lambda (negative count of the LDL^T pivots).
inline std::size_t sturm_count(const Discretization& d, double lambda)
{
    const double e2 = d.off_diagonal * d.off_diagonal;
    const double pivmin = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon() * std::max(1.0, e2);
    std::size_t count = 0;
    double q = 1.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        q = d.diagonal[i] - lambda - (i == 0 ? 0.0 : e2 / q);
        if (std::abs(q) < pivmin)
            q = -pivmin;
        if (q < 0)
            ++count;
    }
    return count;
}

inline std::pair<double, double> gershgorin_bounds(const Discretization& d)
{
    const auto [lo, hi] = std::minmax_element(d.diagonal.begin(), d.diagonal.end());
    const double e = 2.0 * std::abs(d.off_diagonal);
    return {*lo - e, *hi + e};
}

/// The index-th (0-based) eigenvalue by bisection to `tol` absolute.
inline double eigenvalue(const Discretization& d, std::size_t index, double tol = 1e-12)
{
    if (index >= d.size())
        throw domain_error("eigenvalue: index exceeds operator size");
    auto [lo, hi] = gershgorin_bounds(d);
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        if (sturm_count(d, mid) > index)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

/// The k lowest eigenvalues in ascending order.
inline std::vector<double> eigenvalues(const Discretization& d, std::size_t k)
{
    if (k > d.size())
        throw domain_error("eigenvalues: requested more eigenvalues than grid points");
    std::vector<double> out(k);
    for (std::size_t i = 0; i < k; ++i)
        out[i] = eigenvalue(d, i);
    return out;
}

/// Richardson extrapolation for a second-order scheme, from spacings h and h/2.
/// Written as a correction to the fine value so that equal inputs are returned unchanged.
constexpr double richardson(double coarse, double fine) { return fine + (fine - coarse) / 3.0; }

namespace detail {

// Solves (T - shift) x = b in place (b becomes x) by Gaussian elimination with
// partial pivoting; zero pivots are perturbed, as inverse iteration expects.
inline void shifted_tridiagonal_solve(const Discretization& t, double shift, std::vector<double>& b)
{
    const std::size_t n = t.size();
    std::vector<double> diag(n), upper(n, t.off_diagonal), lower(n, t.off_diagonal), upper2(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        diag[i] = t.diagonal[i] - shift;
    const double tiny = std::numeric_limits<double>::epsilon() * std::abs(t.off_diagonal);
    auto guard = [tiny](double& p) {
        if (std::abs(p) < tiny)
            p = p < 0 ? -tiny : tiny;
    };
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (std::abs(diag[i]) >= std::abs(lower[i])) {
            guard(diag[i]);
            const double f = lower[i] / diag[i];
            diag[i + 1] -= f * upper[i];
            b[i + 1] -= f * b[i];
        } else {
            const double f = diag[i] / lower[i];
            diag[i] = lower[i];
            const double tmp = diag[i + 1];
            diag[i + 1] = upper[i] - f * tmp;
            if (i + 2 < n) {
                upper2[i] = upper[i + 1];
                upper[i + 1] = -f * upper2[i];
            }
            upper[i] = tmp;
            std::swap(b[i], b[i + 1]);
            b[i + 1] -= f * b[i];
        }
    }
    guard(diag[n - 1]);
    b[n - 1] /= diag[n - 1];
    if (n >= 2)
        b[n - 2] = (b[n - 2] - upper[n - 2] * b[n - 1]) / diag[n - 2];
    for (std::size_t i = n - 2; i-- > 0;)
        b[i] = (b[i] - upper[i] * b[i + 1] - upper2[i] * b[i + 2]) / diag[i];
}

inline void normalize_grid_function(std::vector<double>& u, double h)
{
    double sum = 0.0;
    for (double v : u)
        sum += v * v;
    const double scale = 1.0 / std::sqrt(sum * h);
    // Positive near the origin, where u ~ r^{l+1}.
    const double peak = *std::max_element(u.begin(), u.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
    const double cut = 1e-8 * std::abs(peak);
    double sign = 1.0;
    for (double v : u) {
        if (std::abs(v) > cut) {
            sign = v > 0 ? 1.0 : -1.0;
            break;
        }
    }
    for (double& v : u)
        v *= sign * scale;
}

} // namespace detail

/// Eigenvector u on the interior grid for an eigenvalue lambda, by inverse iteration.
/// Normalized to sum u_i^2 h = 1 and positive near the origin.
inline std::vector<double> eigenfunction(const Discretization& d, double lambda)
{
    const std::size_t n = d.size();
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = 1.0 + 0.25 * std::sin(0.7 * double(i));
    detail::normalize_grid_function(x, d.h);
    for (int iter = 1; iter <= 8; ++iter) {
        std::vector<double> y = x;
        detail::shifted_tridiagonal_solve(d, lambda, y);
        detail::normalize_grid_function(y, d.h);
        double change = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            change = std::max(change, std::abs(y[i] - x[i]));
        x = std::move(y);
        if (iter >= 2 && change * std::sqrt(d.h) < 1e-9)
            return x;
    }
    std::ostringstream os;
    os << "eigenfunction: inverse iteration at lambda = " << lambda << " did not converge in 8 iterations";
    throw convergence_error(os.str());
}

namespace detail {

// Radial-equation left-hand side at one point, relative to max|G| (|lambda| + beta |cot|).
inline double residual_point(const Curvature& k, int l, double lambda, double r, double g, double dg, double ddg,
                             double g_scale, const UnitScales& units)
{
    const double s = curved_sin(k, r);
    const double cot = curved_cot(k, r);
    const double beta = units.beta();
    const double lhs = -ddg - 2.0 * cot * dg + double(l) * double(l + 1) / (s * s) * g - beta * cot * g - lambda * g;
    return std::abs(lhs) / (g_scale * (std::abs(lambda) + beta * std::abs(cot)));
}

} // namespace detail

/// Largest relative residual of the radial equation
///   -G'' - 2 cot_k G' + l(l+1)/S_k^2 G + U_k G - lambda G
/// for a tabulated G on a uniform grid, using 4th-order central differences at
/// interior points (two points in from each end of the table).
inline double ode_residual(const Curvature& k, int l, double lambda, const RadialFunctionTable& table,
                           const UnitScales& units)
{
    const auto& r = table.grid;
    const auto& g = table.values;
    if (r.size() < 5 || r.size() != g.size())
        throw domain_error("ode_residual: table needs at least 5 matching samples");
    const double h = r[1] - r[0];
    for (std::size_t i = 1; i < r.size(); ++i) {
        if (std::abs((r[i] - r[i - 1]) - h) > 1e-9 * std::max(1.0, std::abs(r[i])))
            throw domain_error("ode_residual: table grid is not uniform");
    }
    double g_scale = 0.0;
    for (double v : g)
        g_scale = std::max(g_scale, std::abs(v));
    if (g_scale == 0.0)
        throw domain_error("ode_residual: identically zero table");
    double worst = 0.0;
    for (std::size_t i = 2; i + 2 < r.size(); ++i) {
        if (!(curved_sin(k, r[i]) > 0.0) || (k.value() > 0 && r[i] >= k.domain_end()))
            continue;
        const double dg = (-g[i + 2] + 8.0 * g[i + 1] - 8.0 * g[i - 1] + g[i - 2]) / (12.0 * h);
        const double ddg = (-g[i + 2] + 16.0 * g[i + 1] - 30.0 * g[i] + 16.0 * g[i - 1] - g[i - 2]) / (12.0 * h * h);
        worst = std::max(worst, detail::residual_point(k, l, lambda, r[i], g[i], dg, ddg, g_scale, units));
    }
    return worst;
}

/// Residual of a callable G at selected probe radii, with local 5-point stencils.
template <class Fn>
double ode_residual_at(const Curvature& k, int l, double lambda, Fn&& g, std::span<const double> probes,
                       const UnitScales& units)
{
    const double r_end = k.domain_end();
    double g_scale = 0.0;
    std::vector<double> centre(probes.size());
    for (std::size_t j = 0; j < probes.size(); ++j) {
        centre[j] = g(probes[j]);
        g_scale = std::max(g_scale, std::abs(centre[j]));
    }
    if (!(g_scale > 0.0) || !std::isfinite(g_scale))
        return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (std::size_t j = 0; j < probes.size(); ++j) {
        const double r = probes[j];
        const double h = std::min({5e-3, r / 4.0, (r_end - r) / 4.0});
        const double gm2 = g(r - 2 * h), gm1 = g(r - h), gp1 = g(r + h), gp2 = g(r + 2 * h);
        const double dg = (-gp2 + 8.0 * gp1 - 8.0 * gm1 + gm2) / (12.0 * h);
        const double ddg = (-gp2 + 16.0 * gp1 - 30.0 * centre[j] + 16.0 * gm1 - gm2) / (12.0 * h * h);
        const double res = detail::residual_point(k, l, lambda, r, centre[j], dg, ddg, g_scale, units);
        if (!std::isfinite(res))
            return std::numeric_limits<double>::infinity();
        worst = std::max(worst, res);
    }
    return worst;
}

/// Number of discrete l-states below the continuum threshold of a hyperbolic
/// space, from Sturm counts at lambda_c - 1e-9 on Dirichlet boxes of doubling
/// extent (fixed spacing h) until the count is unchanged over two doublings.
inline int count_bound_states(const Curvature& k, int l, const UnitScales& units, double h = 0.02)
{
    if (!(k.value() < 0))
        throw domain_error("count_bound_states: requires negative curvature");
    const double lambda_c = continuum_threshold(k, units) - 1e-9;
    double extent = std::max(60.0, 20.0 * k.radius());
    std::vector<std::size_t> counts;
    for (int doubling = 0; doubling < 12; ++doubling, extent *= 2.0) {
        const auto points = static_cast<std::size_t>(std::ceil(extent / h)) - 1;
        counts.push_back(sturm_count(build(k, l, points, extent, units), lambda_c));
        const std::size_t c = counts.size();
        if (c >= 3 && counts[c - 1] == counts[c - 2] && counts[c - 2] == counts[c - 3])
            return static_cast<int>(counts.back());
    }
    throw convergence_error("count_bound_states: bound-state count did not stabilize under domain doubling");
}

} // namespace curvedh
