#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ambizero/errors.hpp"
#include "ambizero/fft.hpp"
#include "ambizero/optimize.hpp"

namespace ambizero {

/// Uniformly sampled complex signal; sample k approximates u(t0 + k*dt).
/// The represented function is zero outside [t0, t0 + (N-1)dt].
class SampledSignal {
public:
    SampledSignal(std::vector<cplx> samples, double dt, double t0)
        : samples_(std::move(samples)), dt_(dt), t0_(t0) {
        if (samples_.empty()) throw InvalidInput("SampledSignal: no samples");
        if (!(dt_ > 0.0) || !std::isfinite(dt_)) throw InvalidInput("SampledSignal: dt must be finite and > 0");
        if (!std::isfinite(t0_)) throw InvalidInput("SampledSignal: t0 must be finite");
        for (const cplx& z : samples_)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
                throw InvalidInput("SampledSignal: non-finite sample");
    }

    SampledSignal(const std::vector<double>& real_samples, double dt, double t0)
        : SampledSignal(std::vector<cplx>(real_samples.begin(), real_samples.end()), dt, t0) {}

    const std::vector<cplx>& samples() const { return samples_; }
    std::size_t size() const { return samples_.size(); }
    double dt() const { return dt_; }
    double t0() const { return t0_; }
    double time(std::size_t k) const { return t0_ + double(k) * dt_; }
    double t_last() const { return time(samples_.size() - 1); }
    const cplx& operator[](std::size_t k) const { return samples_[k]; }

private:
    std::vector<cplx> samples_;
    double dt_;
    double t0_;
};

/// Trapezoid weight of sample k out of n (endpoints get 1/2).
inline double trapezoid_weight(std::size_t k, std::size_t n) {
    return (n > 1 && (k == 0 || k + 1 == n)) ? 0.5 : 1.0;
}

inline double trapezoid(std::span<const double> f, double dt) {
    double acc = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) acc += trapezoid_weight(k, f.size()) * f[k];
    return acc * dt;
}

inline double l1_norm(const SampledSignal& u) {
    std::vector<double> m(u.size());
    for (std::size_t k = 0; k < u.size(); ++k) m[k] = std::abs(u[k]);
    return trapezoid(m, u.dt());
}

/// Squared L2 norm, i.e. the signal energy.
inline double energy(const SampledSignal& u) {
    std::vector<double> m(u.size());
    for (std::size_t k = 0; k < u.size(); ++k) m[k] = std::norm(u[k]);
    return trapezoid(m, u.dt());
}

inline double l2_norm(const SampledSignal& u) { return std::sqrt(energy(u)); }

/// |u|^2 as a real-valued signal on the same grid.
inline SampledSignal power(const SampledSignal& u) {
    std::vector<cplx> p(u.size());
    for (std::size_t k = 0; k < u.size(); ++k) p[k] = std::norm(u[k]);
    return SampledSignal(std::move(p), u.dt(), u.t0());
}

/// The real values of a weight, with rounding noise below 1e-12 (relative to
/// its peak) clipped to zero. Anything more negative is rejected.
inline std::vector<double> nonnegative_values(const SampledSignal& w) {
    double peak = 0.0;
    for (const cplx& z : w.samples()) peak = std::max(peak, std::abs(z));
    const double tol = 1e-12 * std::max(1.0, peak);
    std::vector<double> v(w.size());
    for (std::size_t k = 0; k < w.size(); ++k) {
        const cplx z = w[k];
        if (z.real() < -tol || std::abs(z.imag()) > tol)
            throw NotNonNegative("not a non-negative weight (sample " + std::to_string(k) + ")");
        v[k] = std::max(0.0, z.real());
    }
    return v;
}

/// Time shift u(t - a): same samples on a grid moved by a.
inline SampledSignal translate(const SampledSignal& u, double a) {
    return SampledSignal(u.samples(), u.dt(), u.t0() + a);
}

/// Modulation e^{i omega t} u(t) (omega in radians per time unit).
inline SampledSignal modulate(const SampledSignal& u, double omega) {
    std::vector<cplx> s(u.size());
    for (std::size_t k = 0; k < u.size(); ++k) s[k] = u[k] * std::polar(1.0, omega * u.time(k));
    return SampledSignal(std::move(s), u.dt(), u.t0());
}

/// Fourier transform u^(xi) = int u(t) e^{-2 pi i xi t} dt.
///
/// The output grid is xi_k = (k - N/2)/(N dt), k = 0..N-1, i.e. it spans the
/// full Nyquist band. The t0 offset of the input grid enters as an explicit
/// phase factor, so the samples approximate the continuous transform.
inline SampledSignal fourier(const SampledSignal& u) {
    const std::size_t n = u.size();
    const double dxi = 1.0 / (double(n) * u.dt());
    const std::size_t half = n / 2;
    std::vector<cplx> v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = trapezoid_weight(j, n) * u[j];
    const std::vector<cplx> spec = dft(std::move(v));
    std::vector<cplx> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t idx = (k + n - half) % n;
        const double xi = (double(k) - double(half)) * dxi;
        out[k] = u.dt() * spec[idx] * std::polar(1.0, -2.0 * std::numbers::pi * xi * u.t0());
    }
    return SampledSignal(std::move(out), dxi, -double(half) * dxi);
}

struct DispersionProfile {
    double q;
    double center;
    double value;
};

namespace detail {

inline bool smooth_power(double q) { return q == std::floor(q) && std::fmod(q, 2.0) == 0.0; }

/// Moment of pre-validated values; the hot loop of the dispersion search.
///
/// For even integer q the integrand is smooth and the trapezoid rule is used.
/// Otherwise |t - c|^q has a cusp at c and the trapezoid error would depend on
/// where c falls between samples; w is taken piecewise linear instead (with a
/// curvature correction) and each cell is integrated exactly against |t - c|^q.
inline double moment_of(const std::vector<double>& v, double dt, double t_first, double q, double c) {
    double acc = 0.0;
    const std::size_t n = v.size();
    if (q == 2.0) {
        for (std::size_t k = 0; k < n; ++k) {
            const double d = t_first + double(k) * dt - c;
            acc += trapezoid_weight(k, n) * v[k] * d * d;
        }
        return acc * dt;
    }
    if (smooth_power(q)) {
        for (std::size_t k = 0; k < n; ++k)
            if (v[k] != 0.0) acc += trapezoid_weight(k, n) * v[k] * std::pow(t_first + double(k) * dt - c, q);
        return acc * dt;
    }
    // The linear interpolant overshoots by (dt^2/12) int |t - c|^q w'';
    // subtracting w''dt^2/12 from the samples removes it (ends untouched).
    std::vector<double> adj(v);
    for (std::size_t k = 1; k + 1 < n; ++k) adj[k] -= (v[k + 1] - 2.0 * v[k] + v[k - 1]) / 12.0;
    // P(d) = int_0^d |s|^q ds, Q(d) = int_0^d s |s|^q ds.
    const double q1 = q + 1.0, q2 = q + 2.0;
    auto node = [&](std::size_t k, double& d, double& p, double& qq) {
        d = t_first + double(k) * dt - c;
        const double m = std::pow(std::abs(d), q1);
        p = std::copysign(m / q1, d);
        qq = m * std::abs(d) / q2;
    };
    // Within a few cells of c the remaining error oscillates with the offset
    // of c from the grid; there the cubic through v[k-1..k+2] is integrated
    // exactly instead.
    constexpr double near_cells = 8.0;
    const double near = near_cells * dt;
    auto cubic_cell = [&](std::size_t k, double d0, double d1) {
        const double fm = v[k - 1], f0 = v[k], f1 = v[k + 1], f2 = v[k + 2];
        const double a[4] = {f0, -fm / 3.0 - f0 / 2.0 + f1 - f2 / 6.0, fm / 2.0 - f0 + f1 / 2.0,
                             -fm / 6.0 + f0 / 2.0 - f1 / 2.0 + f2 / 6.0};
        // S[j] = int_{d0}^{d1} |s|^q s^j ds.
        double S[4];
        for (int j = 0; j < 4; ++j) {
            auto G = [&](double d) {
                const double m = std::pow(std::abs(d), q + j + 1) / (q + j + 1);
                return (j % 2 == 0) ? std::copysign(m, d) : m;
            };
            S[j] = G(d1) - G(d0);
        }
        // sigma = (s - d0) / dt; int |s|^q sigma^m ds by binomial expansion.
        const double e = -d0 / dt, r = 1.0 / dt;
        const double mu[4] = {S[0], r * S[1] + e * S[0], r * r * S[2] + 2.0 * e * r * S[1] + e * e * S[0],
                              r * r * r * S[3] + 3.0 * e * r * r * S[2] + 3.0 * e * e * r * S[1] + e * e * e * S[0]};
        return a[0] * mu[0] + a[1] * mu[1] + a[2] * mu[2] + a[3] * mu[3];
    };
    double d0, p0, s0;
    node(0, d0, p0, s0);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        double d1, p1, s1;
        node(k + 1, d1, p1, s1);
        if (k >= 1 && k + 2 < n && d1 > -near && d0 < near) {
            acc += cubic_cell(k, d0, d1);
        } else if (adj[k] != 0.0 || adj[k + 1] != 0.0) {
            const double dp = p1 - p0;
            acc += adj[k] * dp + (adj[k + 1] - adj[k]) / dt * ((s1 - s0) - d0 * dp);
        }
        d0 = d1, p0 = p1, s0 = s1;
    }
    return acc;
}

}  // namespace detail

/// int |t - t0|^q w(t) dt for a non-negative weight w.
inline double moment_l1(const SampledSignal& w, double q, double t0) {
    if (!(q > 0.0)) throw InvalidInput("moment_l1: q must be > 0");
    return detail::moment_of(nonnegative_values(w), w.dt(), w.t0(), q, t0);
}

/// Centroid int t w / int w of a non-negative weight.
inline double centroid(const SampledSignal& w) {
    const std::vector<double> v = nonnegative_values(w);
    double m0 = 0.0, m1 = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) {
        const double tw = trapezoid_weight(k, v.size()) * v[k];
        m0 += tw;
        m1 += tw * w.time(k);
    }
    if (!(m0 > 0.0)) throw InvalidInput("centroid: zero weight");
    return m1 / m0;
}

/// inf over centers t0 of int |t - t0|^q w(t) dt, with the minimizing center.
///
/// q = 2: the centroid, exactly.
/// q >= 1: convex objective, golden section over the grid span to 1e-9.
/// q < 1: concave between samples, so a coarse scan picks the basin, golden
/// section refines it, and nearby samples are checked exhaustively.
inline DispersionProfile dispersion_inf(const SampledSignal& w, double q) {
    if (!(q > 0.0)) throw InvalidInput("dispersion_inf: q must be > 0");
    const std::vector<double> v = nonnegative_values(w);
    if (!(trapezoid(v, w.dt()) > 0.0)) throw InvalidInput("dispersion_inf: zero weight");
    const double lo = w.t0(), hi = w.t_last(), dt = w.dt();
    auto objective = [&](double c) { return detail::moment_of(v, dt, lo, q, c); };
    constexpr double tol = 1e-9;

    MinimizeResult best{};
    if (q == 2.0) {
        const double c = centroid(w);
        best = {c, objective(c)};
    } else if (q >= 1.0) {
        best = golden_section_minimize(objective, lo, hi, tol);
    } else {
        const std::size_t coarse = std::max<std::size_t>(512, std::min<std::size_t>(v.size(), 2048));
        const double step = (hi - lo) / double(coarse - 1);
        std::size_t arg = 0;
        double fmin = objective(lo);
        for (std::size_t i = 1; i < coarse; ++i) {
            const double f = objective(lo + double(i) * step);
            if (f < fmin) fmin = f, arg = i;
        }
        const double a = lo + double(arg == 0 ? 0 : arg - 1) * step;
        const double b = lo + double(std::min(arg + 1, coarse - 1)) * step;
        best = golden_section_minimize(objective, a, b, tol);
        if (fmin < best.value) best = {lo + double(arg) * step, fmin};
        const double k_center = (best.x - lo) / dt;
        const long k_lo = std::max(0L, long(std::floor(k_center - 2.0 * step / dt)) - 1);
        const long k_hi = std::min(long(v.size()) - 1, long(std::ceil(k_center + 2.0 * step / dt)) + 1);
        for (long k = k_lo; k <= k_hi; ++k) {
            const double c = lo + double(k) * dt;
            const double f = objective(c);
            if (f < best.value) best = {c, f};
        }
    }
    return DispersionProfile{q, best.x, best.value};
}

/// Whether the q-th moment about `center` is resolved on the grid: the outer
/// eighth of the grid at each end may carry at most 1e-6 of it. A moment whose
/// integrand has not decayed by the grid edge is treated as infinite.
inline bool moment_resolved(const SampledSignal& w, double q, double center) {
    const std::vector<double> v = nonnegative_values(w);
    const std::size_t n = v.size();
    const std::size_t edge = std::max<std::size_t>(1, n / 8);
    double total = 0.0, outer = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double m = trapezoid_weight(k, n) * v[k] * std::pow(std::abs(w.time(k) - center), q);
        total += m;
        if (k < edge || k + edge >= n) outer += m;
    }
    if (!(total > 0.0)) return true;
    return outer <= 1e-6 * total;
}

}  // namespace ambizero
