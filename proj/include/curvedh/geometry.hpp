#pragma once

// Curved trigonometry S_k, C_k, T_k for a 3D space of constant curvature k.
//
//   S_k(r) = sin(sqrt(k) r)/sqrt(k)      k > 0
//          = r                          k = 0
//          = sinh(sqrt(-k) r)/sqrt(-k)   k < 0
//
// C_k = S_k', T_k = S_k / C_k. All functions are continuous in k across zero:
// for |k| r^2 below series_switch a four-term Taylor series in k r^2 is used.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "errors.hpp"

namespace curvedh {

enum class SpaceKind { spherical, euclidean, hyperbolic };

/// Signed constant curvature, in inverse squared internal length units.
class Curvature {
public:
    constexpr Curvature() = default;

    explicit Curvature(double kappa) : kappa_(kappa)
    {
        if (!std::isfinite(kappa))
            throw domain_error("curvature must be finite");
    }

    /// Curvature of a sphere (radius > 0) or hyperbolic space (radius < 0) of the given radius.
    static Curvature from_radius(double signed_radius)
    {
        if (signed_radius == 0.0 || !std::isfinite(signed_radius))
            throw domain_error("curvature radius must be finite and non-zero");
        const double k = 1.0 / (signed_radius * signed_radius);
        return Curvature(signed_radius > 0 ? k : -k);
    }

    constexpr double value() const { return kappa_; }

    constexpr SpaceKind kind() const
    {
        if (kappa_ > 0)
            return SpaceKind::spherical;
        if (kappa_ < 0)
            return SpaceKind::hyperbolic;
        return SpaceKind::euclidean;
    }

    /// R = 1/sqrt|k|; +infinity for flat space.
    double radius() const
    {
        if (kappa_ == 0.0)
            return std::numeric_limits<double>::infinity();
        return 1.0 / std::sqrt(std::abs(kappa_));
    }

    /// sqrt|k|
    double root() const { return std::sqrt(std::abs(kappa_)); }

    /// Largest admissible radial coordinate: the antipode pi/sqrt(k) for k > 0, else infinity.
    double domain_end() const
    {
        if (kappa_ > 0)
            return std::numbers::pi / std::sqrt(kappa_);
        return std::numeric_limits<double>::infinity();
    }

private:
    double kappa_ = 0.0;
};

namespace detail {

inline constexpr double series_switch = 1e-8;

inline void check_radius(const Curvature& k, double r, const char* fn)
{
    if (!(r >= 0.0) || !std::isfinite(r)) {
        std::ostringstream os;
        os << fn << ": radius " << r << " outside [0, inf)";
        throw domain_error(os.str());
    }
    if (k.value() > 0) {
        const double end = k.domain_end();
        if (r > end * (1.0 + 4 * std::numeric_limits<double>::epsilon())) {
            std::ostringstream os;
            os << fn << ": radius " << r << " beyond antipode " << end;
            throw domain_error(os.str());
        }
    }
}

// S/r and C as series in x = k r^2.
inline double sin_series(double x) { return 1.0 - x / 6.0 * (1.0 - x / 20.0 * (1.0 - x / 42.0)); }
inline double cos_series(double x) { return 1.0 - x / 2.0 * (1.0 - x / 12.0 * (1.0 - x / 30.0)); }

} // namespace detail

inline double curved_sin(const Curvature& k, double r)
{
    detail::check_radius(k, r, "curved_sin");
    const double kappa = k.value();
    const double x = kappa * r * r;
    if (std::abs(x) < detail::series_switch)
        return r * detail::sin_series(x);
    const double s = k.root();
    if (kappa > 0)
        return std::max(0.0, std::sin(s * r) / s);
    return std::sinh(s * r) / s;
}

inline double curved_cos(const Curvature& k, double r)
{
    detail::check_radius(k, r, "curved_cos");
    const double kappa = k.value();
    const double x = kappa * r * r;
    if (std::abs(x) < detail::series_switch)
        return detail::cos_series(x);
    const double s = k.root();
    if (kappa > 0)
        return std::cos(s * r);
    return std::cosh(s * r);
}

/// T_k = S_k / C_k; pole where C_k vanishes (k > 0, r = pi/(2 sqrt k)).
inline double curved_tan(const Curvature& k, double r)
{
    const double s = curved_sin(k, r);
    const double c = curved_cos(k, r);
    if (std::abs(c) < 1e-15) {
        std::ostringstream os;
        os << "curved_tan: pole at r = " << r;
        throw pole_error(os.str());
    }
    return s / c;
}

/// 1/T_k(r), the coordinate y in which the radial equation loses its first-derivative term.
/// Poles at r = 0 and, for k > 0, at the antipode.
inline double curved_cot(const Curvature& k, double r)
{
    const double s = curved_sin(k, r);
    if (!(s > 0.0)) {
        std::ostringstream os;
        os << "curved_cot: pole at r = " << r;
        throw pole_error(os.str());
    }
    if (k.value() > 0 && r >= k.domain_end()) {
        std::ostringstream os;
        os << "curved_cot: pole at antipode r = " << r;
        throw pole_error(os.str());
    }
    return curved_cos(k, r) / s;
}

/// Radial volume weight S_k(r)^2.
inline double volume_weight(const Curvature& k, double r)
{
    const double s = curved_sin(k, r);
    return s * s;
}

/// log S_k(r), usable for k < 0 far beyond the range where sinh overflows.
inline double log_curved_sin(const Curvature& k, double r)
{
    if (k.value() < 0) {
        detail::check_radius(k, r, "log_curved_sin");
        const double s = k.root();
        const double x = s * r;
        if (x > 20.0)
            return x - std::log(2.0 * s) + std::log1p(-std::exp(-2.0 * x));
    }
    return std::log(curved_sin(k, r));
}

} // namespace curvedh
