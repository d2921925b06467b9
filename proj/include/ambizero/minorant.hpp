#pragma once

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numbers>
#include <optional>

#include "ambizero/errors.hpp"
#include "ambizero/optimize.hpp"

namespace ambizero {

/// A pair (a, c) with a cos x >= 1 - c|x|^q for all real x, and the
/// uncertainty constant kappa = 1/(c (2 pi)^q) it yields.
struct MinorantCert {
    double q = 2.0;
    double a = 1.0;
    double c = 0.5;
    double kappa = 0.0;
    bool verified = false;
    double margin = 0.0;
    std::optional<double> witness;
};

struct MinorantCheck {
    bool verified = false;
    double margin = 0.0;
    std::optional<double> witness;
};

inline double kappa(double q, double c) {
    if (!(q > 0.0) || !(c > 0.0)) throw InvalidInput("kappa: q and c must be > 0");
    return 1.0 / (c * std::pow(2.0 * std::numbers::pi, q));
}

/// a cos x - 1 + c|x|^q, written as -2a sin^2(x/2) + (a - 1) + c|x|^q so
/// the tangency at x = 0 of a = 1 minorants does not cancel catastrophically.
inline double minorant_gap(double a, double c, double q, double x) {
    const double s = std::sin(0.5 * x);
    return -2.0 * a * s * s + (a - 1.0) + c * std::pow(std::abs(x), q);
}

namespace detail {

inline double gap_slope(double a, double c, double q, double x) {
    return -a * std::sin(x) + c * q * std::pow(x, q - 1.0);
}

/// Lower bound on the second derivative of the gap over [x1, x2], x1 > 0.
inline double gap_curvature_floor(double a, double c, double q, double x1, double x2) {
    const double two_pi = 2.0 * std::numbers::pi;
    const bool has_peak = std::floor(x2 / two_pi) > std::floor(x1 / two_pi) || std::fmod(x1, two_pi) == 0.0;
    const double max_cos = has_peak ? 1.0 : std::max(std::cos(x1), std::cos(x2));
    auto power_term = [&](double x) { return c * q * (q - 1.0) * std::pow(x, q - 2.0); };
    return -a * max_cos + std::min(power_term(x1), power_term(x2));
}

/// Certified lower bound of the gap on [x, x + s] from the Taylor expansion
/// at x with the curvature floor of the cell.
inline double cell_floor(double a, double c, double q, double x, double s) {
    const double g = minorant_gap(a, c, q, x);
    const double g1 = gap_slope(a, c, q, x);
    const double m2 = gap_curvature_floor(a, c, q, x, x + s);
    auto quad = [&](double d) { return g + g1 * d + 0.5 * m2 * d * d; };
    double lo = std::min(quad(0.0), quad(s));
    if (m2 > 0.0) {
        const double d = -g1 / m2;
        if (d > 0.0 && d < s) lo = std::min(lo, quad(d));
    }
    const double rounding = 8.0 * DBL_EPSILON * (a + 1.0 + c * std::pow(x + s, q));
    return lo - rounding;
}

/// Dense scan of the gap on [0, x_end]; returns (argmin, min).
inline std::pair<double, double> gap_argmin(double a, double c, double q, double x_end) {
    const std::size_t n = 1'000'000;
    double best_x = 0.0, best = minorant_gap(a, c, q, 0.0);
    for (std::size_t i = 1; i <= n; ++i) {
        const double x = x_end * double(i) / double(n);
        const double g = minorant_gap(a, c, q, x);
        if (g < best) best = g, best_x = x;
    }
    return {best_x, best};
}

}  // namespace detail

/// Certifies a cos x >= 1 - c|x|^q on the whole real line.
///
/// Beyond x_cut = ((1 + a)/c)^{1/q} the right side is <= -a and the claim is
/// trivial. Near zero, cos x >= 1 - x^2/2 gives the analytic floor
/// (a - 1) - a x^2/2 + c x^q, which covers an initial interval [0, x_s]
/// (and, for q < 1, removes the singular slope at 0). The rest of [0, x_cut]
/// is walked in cells of at most 1e-4: a cell passes when the Taylor
/// expansion at its left end, with a floor on the second derivative over the
/// cell, stays above a rounding allowance. Cells far from tangency are
/// skipped with a global slope bound. A failed cell is re-checked in 64
/// pieces before the check gives up.
inline MinorantCheck verify_minorant(double a, double c, double q) {
    if (!(a > 0.0) || !(c > 0.0) || !(q > 0.0)) throw InvalidInput("verify_minorant: a, c, q must be > 0");
    MinorantCheck out;
    const double x_cut = std::pow((1.0 + a) / c, 1.0 / q);

    auto fail = [&]() {
        const auto [x, g] = detail::gap_argmin(a, c, q, x_cut);
        out.verified = false;
        out.margin = g;
        out.witness = x;
        return out;
    };
    if (a < 1.0) return fail();

    double x_s = 0.0;
    if (q < 2.0) {
        x_s = std::pow(2.0 * c / a, 1.0 / (2.0 - q));
        if (a > 1.0) x_s = std::max(x_s, std::sqrt(2.0 * (a - 1.0) / a));
    } else if (q == 2.0) {
        x_s = c >= 0.5 * a ? x_cut : std::sqrt((a - 1.0) / (0.5 * a - c));
    } else {
        x_s = std::sqrt(2.0 * (a - 1.0) / a);
    }
    x_s = std::min(x_s, x_cut);

    double margin = a - 1.0;
    if (x_s < x_cut) {
        if (x_s <= 0.0) return fail();  // a = 1 and q > 2: the gap is -x^2/2 + o(x^2)
        const double slope_bound = a + c * q * std::max(std::pow(x_s, q - 1.0), std::pow(x_cut, q - 1.0));
        constexpr double h = 1e-4;
        double x = x_s;
        while (x < x_cut) {
            const double g = minorant_gap(a, c, q, x);
            margin = std::min(margin, g);
            const double skip = 0.5 * g / slope_bound;
            if (skip > h) {
                x = std::min(x + skip, x_cut);
                continue;
            }
            const double s = std::min(h, x_cut - x);
            if (detail::cell_floor(a, c, q, x, s) < 0.0) {
                const double sub = s / 64.0;
                for (int k = 0; k < 64; ++k) {
                    const double xk = x + sub * k;
                    if (detail::cell_floor(a, c, q, xk, sub) < 0.0) return fail();
                }
            }
            x += s;
        }
    }
    out.verified = true;
    out.margin = std::max(0.0, margin);
    return out;
}

inline MinorantCert make_certificate(double q, double a, double c) {
    MinorantCert cert;
    cert.q = q;
    cert.a = a;
    cert.c = c;
    cert.kappa = kappa(q, c);
    const MinorantCheck chk = verify_minorant(a, c, q);
    cert.verified = chk.verified;
    cert.margin = chk.margin;
    cert.witness = chk.witness;
    return cert;
}

/// a = 2, c = 3 (3/pi)^q: 2 cos x >= 1 on |x| <= pi/3 and 1 - c|x|^q <= -2 beyond.
inline MinorantCert minorant_simple(double q) {
    if (!(q > 0.0)) throw InvalidInput("minorant_simple: q must be > 0");
    return make_certificate(q, 2.0, 3.0 * std::pow(3.0 / std::numbers::pi, q));
}

inline double parametric_c(double q, double eta) {
    return (2.0 + eta) / std::pow(std::acos(1.0 / (1.0 + eta)), q);
}

/// a = 1 + eta, c = (2 + eta)/arccos(1/(1 + eta))^q.
inline MinorantCert minorant_parametric(double q, double eta) {
    if (!(q > 0.0) || !(eta > 0.0)) throw InvalidInput("minorant_parametric: q and eta must be > 0");
    return make_certificate(q, 1.0 + eta, parametric_c(q, eta));
}

/// Best member of the parametric family: golden section over eta in (1e-6, 50].
inline MinorantCert minorant_optimize(double q) {
    if (!(q > 0.0)) throw InvalidInput("minorant_optimize: q must be > 0");
    const MinimizeResult r =
        golden_section_minimize([q](double eta) { return parametric_c(q, eta); }, 1e-6, 50.0, 1e-8);
    return minorant_parametric(q, r.x);
}

/// Root in [pi/2, pi] of cos x + x sin x / q = 1, where 1 - c x^q touches cos x.
inline double concave_tangency_point(double q) {
    if (!(q > 0.0 && q <= 1.0)) throw InvalidInput("concave tangency needs 0 < q <= 1");
    return bisect_root([q](double x) { return std::cos(x) + x * std::sin(x) / q - 1.0; }, std::numbers::pi / 2.0,
                       std::numbers::pi, 1e-13);
}

/// Optimal c for a = 1 when 0 < q <= 1, c = sin x0/(q x0^{q-1}).
///
/// The minorant touches cos x at x0, so the exact constant has zero margin;
/// the returned c is rounded up by one part in 1e10 so the certificate can
/// be verified in floating point.
inline MinorantCert minorant_exact_concave(double q) {
    if (!(q > 0.0 && q <= 1.0)) throw InvalidInput("minorant_exact_concave: requires 0 < q <= 1");
    const double x0 = concave_tangency_point(q);
    const double c = std::sin(x0) / (q * std::pow(x0, q - 1.0));
    return make_certificate(q, 1.0, c * (1.0 + 1e-10));
}

}  // namespace ambizero
