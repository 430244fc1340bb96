#pragma once

// Orthogonal polynomials and terminating hypergeometric sums with
// general (possibly complex, possibly non-classical) parameters.

#include <cmath>
#include <complex>
#include <sstream>
#include <string>

#include "errors.hpp"

namespace curvedh {

using cplx = std::complex<double>;

namespace detail {

inline bool finite(const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

[[noreturn]] inline void throw_overflow(const char* fn, int m, const cplx& a, const cplx& b)
{
    std::ostringstream os;
    os << fn << ": overflow at degree " << m << " with parameters " << a << ", " << b;
    throw overflow_error(os.str());
}

// Explicit finite sum for P_m^{(a,b)}(1 + y):
//   sum_j (a+j+1)_{m-j} (m+a+b+1)_j / ((m-j)! j!) (y/2)^j
// Valid for every parameter pair, used where the recurrence degenerates.
inline cplx jacobi_explicit_sum(int m, cplx alpha, cplx nu, cplx y)
{
    cplx sum = 0.0;
    for (int j = 0; j <= m; ++j) {
        cplx term = 1.0;
        for (int i = j + 1; i <= m; ++i)
            term *= (alpha + double(i)) / double(i - j);
        for (int i = 0; i < j; ++i)
            term *= (double(m + 1 + i) + alpha + nu) / double(i + 1);
        sum += term * std::pow(y / 2.0, j);
    }
    return sum;
}

} // namespace detail

/// Jacobi polynomial P_m^{(alpha,nu)}(1 + y), parametrized by the offset y = x - 1.
///
/// The three-term recurrence is written in y so that arguments near x = 1 and
/// very large second parameters do not lose precision to cancellation:
///
///   2k(k+s)(2k+s-2) P_k = (2k+s-1)[(2k+s)(2k+s-2) y + 4k(k-1+s) + 2s(alpha-1)] P_{k-1}
///                         - 2(k+alpha-1)(k+nu-1)(2k+s) P_{k-2},      s = alpha + nu.
inline cplx jacobi_poly_shifted(int m, cplx alpha, cplx nu, cplx y)
{
    if (m < 0)
        throw parameter_error("jacobi_poly: negative degree");
    if (m == 0)
        return 1.0;
    const cplx s = alpha + nu;
    cplx prev = 1.0;
    cplx cur = (alpha + 1.0) + (s + 2.0) * y / 2.0;
    for (int k = 2; k <= m; ++k) {
        const double kd = k;
        const cplx t = 2.0 * kd + s;
        const cplx denom = 2.0 * kd * (kd + s) * (t - 2.0);
        if (std::abs(denom) < 1e-12 * 2.0 * kd * (kd + std::abs(s)) * (std::abs(t) + 2.0))
            return detail::jacobi_explicit_sum(m, alpha, nu, y);
        const cplx lin = (t - 1.0) * (t * (t - 2.0) * y + 4.0 * kd * (kd - 1.0 + s) + 2.0 * s * (alpha - 1.0));
        const cplx back = 2.0 * (kd + alpha - 1.0) * (kd + nu - 1.0) * t;
        const cplx next = (lin * cur - back * prev) / denom;
        prev = cur;
        cur = next;
        if (!detail::finite(cur))
            detail::throw_overflow("jacobi_poly", m, alpha, nu);
    }
    if (!detail::finite(cur))
        detail::throw_overflow("jacobi_poly", m, alpha, nu);
    return cur;
}

/// Jacobi polynomial P_m^{(alpha,nu)}(x) for arbitrary complex parameters.
inline cplx jacobi_poly(int m, cplx alpha, cplx nu, cplx x)
{
    return jacobi_poly_shifted(m, alpha, nu, x - 1.0);
}

/// Real-parameter convenience wrapper; the imaginary part is exactly zero.
inline double jacobi_poly(int m, double alpha, double nu, double x)
{
    const cplx v = jacobi_poly(m, cplx(alpha), cplx(nu), cplx(x));
    return v.real();
}

/// Associated Laguerre polynomial L_m^alpha(x).
inline double laguerre_poly(int m, double alpha, double x)
{
    if (m < 0)
        throw parameter_error("laguerre_poly: negative degree");
    if (m == 0)
        return 1.0;
    double prev = 1.0;
    double cur = 1.0 + alpha - x;
    for (int k = 1; k < m; ++k) {
        const double next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    if (!std::isfinite(cur))
        detail::throw_overflow("laguerre_poly", m, alpha, 0.0);
    return cur;
}

/// 2F1(-m, b; c; z) as the exact sum of its m+1 terms.
inline cplx gauss2f1_terminating(int m, cplx b, cplx c, cplx z)
{
    if (m < 0)
        throw parameter_error("gauss2f1_terminating: negative degree");
    cplx term = 1.0;
    cplx sum = 1.0;
    for (int j = 0; j < m; ++j) {
        const cplx cj = c + double(j);
        if (cj == 0.0) {
            std::ostringstream os;
            os << "gauss2f1_terminating: c = " << c << " gives a zero denominator at term " << j + 1;
            throw parameter_error(os.str());
        }
        term *= (double(j - m) * (b + double(j))) / (cj * double(j + 1)) * z;
        sum += term;
    }
    if (!detail::finite(sum))
        detail::throw_overflow("gauss2f1_terminating", m, b, c);
    return sum;
}

/// 1F1(-m; c; z) as the exact sum of its m+1 terms.
inline double kummer1f1_terminating(int m, double c, double z)
{
    if (m < 0)
        throw parameter_error("kummer1f1_terminating: negative degree");
    double term = 1.0;
    double sum = 1.0;
    for (int j = 0; j < m; ++j) {
        const double cj = c + j;
        if (cj == 0.0) {
            std::ostringstream os;
            os << "kummer1f1_terminating: c = " << c << " gives a zero denominator at term " << j + 1;
            throw parameter_error(os.str());
        }
        term *= (double(j - m) / (cj * (j + 1))) * z;
        sum += term;
    }
    if (!std::isfinite(sum))
        detail::throw_overflow("kummer1f1_terminating", m, c, 0.0);
    return sum;
}

/// |P_m^{(alpha,nu)}(1 - 2x/nu) - L_m^alpha(x)|, which vanishes as nu -> infinity.
inline double jacobi_laguerre_limit_gap(int m, double alpha, double nu, double x)
{
    if (!(nu > 0))
        throw parameter_error("jacobi_laguerre_limit_gap: nu must be positive");
    const double p = jacobi_poly_shifted(m, cplx(alpha), cplx(nu), cplx(-2.0 * x / nu)).real();
    return std::abs(p - laguerre_poly(m, alpha, x));
}

} // namespace curvedh
