#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <vector>

#include "ambizero/signal.hpp"

namespace ambizero {

/// Reduces an angle to (-pi, pi].
inline double reduce_angle(double alpha) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double r = std::remainder(alpha, two_pi);
    if (r <= -std::numbers::pi) r += two_pi;
    return r;
}

/// Evaluation plan for the fractional Fourier transform at angle alpha.
///
///   F_a f(xi) = c_a e^{i pi xi^2 cot a} int f(t) e^{i pi t^2 cot a} e^{-2 i pi t xi / sin a} dt
///
/// with c_a the principal square root of 1 - i cot a, so c_{pi/2} = 1 and
/// F_{pi/2} is the plain Fourier transform. Multiples of 2 pi are the
/// identity and odd multiples of pi the reflection f(-xi). When
/// |sin a| < sin(pi/8) the transform is evaluated as F_{a - pi/2} applied to
/// the Fourier transform, so every direct quadrature has |sin| >= cos(pi/8).
struct FrftPlan {
    enum class Route { identity, reflection, direct, via_fourier };

    double alpha = 0.0;
    double reduced = 0.0;
    cplx c{1.0, 0.0};
    Route route = Route::identity;

    bool degenerate() const { return route == Route::identity || route == Route::reflection; }

    static FrftPlan make(double alpha) {
        constexpr double eps = 1e-12;
        FrftPlan p;
        p.alpha = alpha;
        p.reduced = reduce_angle(alpha);
        if (std::abs(p.reduced) <= eps) {
            p.route = Route::identity;
        } else if (std::abs(p.reduced) >= std::numbers::pi - eps) {
            p.route = Route::reflection;
        } else {
            p.c = std::sqrt(cplx(1.0, -std::cos(p.reduced) / std::sin(p.reduced)));
            p.route = std::abs(std::sin(p.reduced)) < std::sin(std::numbers::pi / 8.0) ? Route::via_fourier
                                                                                      : Route::direct;
        }
        return p;
    }
};

namespace detail {

/// Direct O(N*M) quadrature of the FrFT integral at the points xi.
inline std::vector<cplx> frft_quadrature(const SampledSignal& f, double alpha, std::span<const double> xi) {
    using std::numbers::pi;
    const double s = std::sin(alpha);
    const double cot = std::cos(alpha) / s;
    const cplx c = std::sqrt(cplx(1.0, -cot));
    const std::size_t n = f.size();
    std::vector<cplx> g(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double t = f.time(j);
        g[j] = trapezoid_weight(j, n) * f.dt() * f[j] * std::polar(1.0, pi * cot * t * t);
    }
    std::vector<cplx> out(xi.size());
    constexpr std::size_t resync = 64;
    for (std::size_t m = 0; m < xi.size(); ++m) {
        const double k = -2.0 * pi * xi[m] / s;
        const cplx step = std::polar(1.0, k * f.dt());
        cplx z{};
        cplx acc{0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j) {
            if (j % resync == 0) z = std::polar(1.0, k * f.time(j));
            acc += g[j] * z;
            z *= step;
        }
        out[m] = c * std::polar(1.0, pi * cot * xi[m] * xi[m]) * acc;
    }
    return out;
}

}  // namespace detail

/// F_alpha u evaluated at arbitrary output points.
inline std::vector<cplx> frft_at(const SampledSignal& u, double alpha, std::span<const double> xi) {
    const FrftPlan plan = FrftPlan::make(alpha);
    if (plan.route == FrftPlan::Route::direct) return detail::frft_quadrature(u, plan.reduced, xi);
    return detail::frft_quadrature(fourier(u), reduce_angle(plan.reduced - std::numbers::pi / 2.0), xi);
}

/// F_alpha u on the input grid (the reflection lands on the mirrored grid).
inline SampledSignal frft(const SampledSignal& u, double alpha) {
    const FrftPlan plan = FrftPlan::make(alpha);
    if (plan.route == FrftPlan::Route::identity) return u;
    if (plan.route == FrftPlan::Route::reflection) {
        std::vector<cplx> r(u.samples().rbegin(), u.samples().rend());
        return SampledSignal(std::move(r), u.dt(), -u.t_last());
    }
    std::vector<double> grid(u.size());
    for (std::size_t k = 0; k < u.size(); ++k) grid[k] = u.time(k);
    return SampledSignal(frft_at(u, alpha, grid), u.dt(), u.t0());
}

/// Upper bound ||t u||_2 |cos a| + ||xi u^||_2 |sin a| on ||t F_a u||_2.
inline double frft_moment_rhs(const SampledSignal& u, double alpha) {
    const double tu = std::sqrt(moment_l1(power(u), 2.0, 0.0));
    const double ca = std::abs(std::cos(alpha)), sa = std::abs(std::sin(alpha));
    if (sa == 0.0) return tu;
    const double xu = std::sqrt(moment_l1(power(fourier(u)), 2.0, 0.0));
    return tu * ca + xu * sa;
}

}  // namespace ambizero
