#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "ambizero/ambiguity.hpp"
#include "ambizero/errors.hpp"
#include "ambizero/frft.hpp"
#include "ambizero/minorant.hpp"
#include "ambizero/signal.hpp"

namespace ambizero {

/// Convex hull of (+-dx, 0) and (0, +-dy) in the (delay, Doppler) plane.
struct Rhombus {
    double dx = 0.0;
    double dy = 0.0;
    double area = 0.0;

    /// Distance from the origin to the boundary along direction theta.
    double radius(double theta) const {
        const double c = std::abs(std::cos(theta)), s = std::abs(std::sin(theta));
        return 1.0 / (c / dx + s / dy);
    }
};

struct StarRay {
    double theta = 0.0;
    double tau = 0.0;
};

struct ZeroFreeRegion {
    double q = 2.0;
    MinorantCert cert;
    std::optional<Rhombus> rhombus;
    std::vector<StarRay> star;
};

struct ValidationRow {
    double theta = 0.0;
    double tau_cert = 0.0;
    std::optional<double> tau_empirical;
    bool pass = true;
};

struct ValidationReport {
    std::vector<ValidationRow> rows;
    bool pass = true;
};

namespace detail {

inline void require_certificate(const MinorantCert& cert, double q) {
    if (!cert.verified) throw InvalidInput("minorant certificate is not verified");
    if (std::abs(cert.q - q) > 1e-12 * std::max(1.0, q))
        throw InvalidInput("minorant certificate is for q = " + std::to_string(cert.q) + ", not " + std::to_string(q));
}

/// Square root of the q = 2 dispersion of |v|^2, rejecting unresolved moments.
inline double dispersion_2(const SampledSignal& v, const std::string& which) {
    const SampledSignal w = power(v);
    const DispersionProfile d = dispersion_inf(w, 2.0);
    if (!moment_resolved(w, 2.0, d.center))
        throw InfiniteMoment(which + " (q = 2); a star region with q < 1 may still apply");
    return std::sqrt(d.value);
}

}  // namespace detail

/// tau = (kappa ||w||_1 / inf_t0 int |t - t0|^q w)^{1/q}; the Fourier
/// transform of w has no zero in (-tau, tau).
inline double first_zero_bound(const SampledSignal& w, double q, const MinorantCert& cert) {
    detail::require_certificate(cert, q);
    const double mass = l1_norm(SampledSignal(nonnegative_values(w), w.dt(), w.t0()));
    if (!(mass > 0.0)) throw InvalidInput("first_zero_bound: zero weight");
    const DispersionProfile d = dispersion_inf(w, q);
    if (!(d.value > 0.0)) throw InvalidInput("first_zero_bound: weight has zero dispersion");
    return std::pow(cert.kappa * mass / d.value, 1.0 / q);
}

/// Certified radius on the rays +-(cos theta, sin theta) of A(u), from the
/// weight |F_{theta - pi/2} u|^2 whose Fourier transform is that section.
inline double direction_bound(const SampledSignal& u, double theta, double q, const MinorantCert& cert) {
    detail::require_certificate(cert, q);
    return first_zero_bound(power(frft(u, theta - std::numbers::pi / 2.0)), q, cert);
}

/// q = 2 rhombus. Along direction theta the section weight has
/// inf ||(t - t0) F_a u||_2 <= sigma_t |cos a| + sigma_xi |sin a| with
/// a = theta - pi/2; the radii ||u|| sqrt(kappa)/(sigma_t |sin theta| +
/// sigma_xi |cos theta|) trace exactly the rhombus with
///   dx = ||u|| / (2 pi sqrt(c2) sigma_xi),  dy = ||u|| / (2 pi sqrt(c2) sigma_t).
/// The delay half-diagonal is set by the frequency spread and the Doppler one
/// by the time spread.
inline ZeroFreeRegion rhombus_region(const SampledSignal& u, const MinorantCert& cert) {
    detail::require_certificate(cert, 2.0);
    const double sigma_t = detail::dispersion_2(u, "time dispersion");
    const double sigma_xi = detail::dispersion_2(fourier(u), "frequency dispersion");
    const double scale = l2_norm(u) / (2.0 * std::numbers::pi * std::sqrt(cert.c));
    ZeroFreeRegion r;
    r.q = 2.0;
    r.cert = cert;
    Rhombus h;
    h.dx = scale / sigma_xi;
    h.dy = scale / sigma_t;
    h.area = 2.0 * h.dx * h.dy;
    r.rhombus = h;
    return r;
}

/// Per-direction radii from direction_bound, in the order of thetas.
inline ZeroFreeRegion star_region(const SampledSignal& u, double q, const MinorantCert& cert,
                                  std::span<const double> thetas) {
    detail::require_certificate(cert, q);
    ZeroFreeRegion r;
    r.q = q;
    r.cert = cert;
    for (double th : thetas) r.star.push_back({th, direction_bound(u, th, q, cert)});
    return r;
}

/// Directions k pi / n, k = 0..n-1.
inline std::vector<double> direction_grid(std::size_t n) {
    std::vector<double> t(n);
    for (std::size_t k = 0; k < n; ++k) t[k] = std::numbers::pi * double(k) / double(n);
    return t;
}

/// No translate f(t - a) with 0 < |a| < a_min is orthogonal to f.
inline double translate_orthogonality_bound(const SampledSignal& f, double q, const MinorantCert& cert) {
    detail::require_certificate(cert, q);
    const SampledSignal w = power(fourier(f));
    if (!moment_resolved(w, q, dispersion_inf(w, q).center))
        throw InfiniteMoment("frequency moment of order " + std::to_string(q));
    return first_zero_bound(w, q, cert);
}

/// No modulation e^{2 i pi w t} f with 0 < |w| < w_min is orthogonal to f.
inline double modulation_orthogonality_bound(const SampledSignal& f, double q, const MinorantCert& cert) {
    detail::require_certificate(cert, q);
    const SampledSignal w = power(f);
    if (!moment_resolved(w, q, dispersion_inf(w, q).center))
        throw InfiniteMoment("time moment of order " + std::to_string(q));
    return first_zero_bound(w, q, cert);
}

struct HeisenbergReport {
    double rho = 0.0;
    double sigma_t = 0.0;
    double sigma_xi = 0.0;
    double area = 0.0;
};

/// rho = 4 pi sigma_t sigma_xi / ||u||^2 (>= 1, equality for Gaussians), and
/// the area of the rhombus for minorant constant c2.
inline HeisenbergReport heisenberg_diagnostic(const SampledSignal& u, double c2 = 0.5) {
    HeisenbergReport h;
    h.sigma_t = detail::dispersion_2(u, "time dispersion");
    h.sigma_xi = detail::dispersion_2(fourier(u), "frequency dispersion");
    const double e = energy(u);
    h.rho = 4.0 * std::numbers::pi * h.sigma_t * h.sigma_xi / e;
    const double k = 1.0 / (4.0 * std::numbers::pi * std::numbers::pi * c2);
    h.area = 2.0 * k * e / (h.sigma_t * h.sigma_xi);
    return h;
}

/// Certified radius of a region along theta: the larger of the rhombus
/// radius and the star radius (computed on demand for unlisted directions).
inline double certified_radius(const SampledSignal& u, const ZeroFreeRegion& region, double theta) {
    double r = 0.0;
    if (region.rhombus) r = region.rhombus->radius(theta);
    if (!region.star.empty() || !region.rhombus) {
        const auto it = std::find_if(region.star.begin(), region.star.end(),
                                     [&](const StarRay& s) { return std::abs(s.theta - theta) <= 1e-12; });
        r = std::max(r, it != region.star.end() ? it->tau : direction_bound(u, theta, region.q, region.cert));
    }
    return r;
}

inline constexpr double radius_tolerance = 1e-4;

/// Compares certified radii with empirical first zeros on 32 directions (and
/// the star directions), scanning each ray to 3x its certified radius.
inline ValidationReport validate_region(const SampledSignal& u, const ZeroFreeRegion& region, double eps_rel = 1e-6,
                                        std::size_t directions = 32) {
    std::vector<double> thetas = direction_grid(directions);
    for (const StarRay& s : region.star)
        if (std::none_of(thetas.begin(), thetas.end(), [&](double t) { return std::abs(t - s.theta) <= 1e-12; }))
            thetas.push_back(s.theta);
    std::sort(thetas.begin(), thetas.end());

    const AmbiguityEvaluator amb(u);
    ValidationReport rep;
    for (double th : thetas) {
        ValidationRow row;
        row.theta = th;
        row.tau_cert = certified_radius(u, region, th);
        const RayScan scan = first_zero_on_ray(amb, th, 3.0 * row.tau_cert, eps_rel);
        row.tau_empirical = scan.first_zero;
        row.pass = !scan.first_zero || row.tau_cert <= *scan.first_zero + radius_tolerance;
        rep.pass = rep.pass && row.pass;
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace ambizero
