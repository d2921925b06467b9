#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "ambizero/fft.hpp"
#include "ambizero/frft.hpp"
#include "ambizero/optimize.hpp"
#include "ambizero/signal.hpp"

namespace ambizero {

/// Evaluates A(u)(x, y) = int u(t + x/2) conj(u(t - x/2)) e^{-2 i pi y t} dt.
///
/// u is extended by its band-limited interpolant: the samples are zero-padded
/// to twice their length (so shifts do not wrap onto the support) and the
/// spectrum is zero-padded by the oversampling factor, giving u on a grid
/// fine enough for the trapezoid rule on the lag product. Uses
///   A(x, y) = e^{i pi x y} int u(s) conj(u(s - x)) e^{-2 i pi y s} ds.
/// The shift by x is an integer number of fine steps plus a fractional part
/// handled by 16-point Lagrange interpolation; on the 4x oversampled grid the
/// signal occupies at most a quarter of the band, which keeps that step well
/// below quadrature error.
class AmbiguityEvaluator {
public:
    static constexpr int taps = 16;

    explicit AmbiguityEvaluator(const SampledSignal& u, std::size_t oversample = 4)
        : t0_(u.t0()),
          dt_(u.dt()),
          padded_(detail::next_pow2(2 * u.size())),
          fine_size_(padded_ * detail::next_pow2(std::max<std::size_t>(oversample, 4))),
          fine_(fine_size_, cplx(0.0, 0.0)) {
        std::vector<cplx> a(padded_, cplx(0.0, 0.0));
        for (std::size_t j = 0; j < u.size(); ++j) a[j] = u[j];
        FftPlan(padded_).forward(a);
        // Bins 0..P/2-1 are non-negative frequencies; P/2..P-1 map to -P/2..-1.
        const double scale = 1.0 / double(padded_);
        for (std::size_t k = 0; k < padded_; ++k) {
            const std::size_t dst = k < padded_ / 2 ? k : fine_size_ - (padded_ - k);
            fine_[dst] = a[k] * scale;
        }
        FftPlan(fine_size_).inverse(fine_);

        double peak = 0.0;
        energy_ = 0.0;
        for (const cplx& z : fine_) {
            peak = std::max(peak, std::abs(z));
            energy_ += std::norm(z);
        }
        energy_ *= fine_dt();
        // Products are only formed where |u| exceeds 1e-13 of its peak; FFT
        // roundoff in the padding sits near 1e-16.
        const double cut = 1e-13 * peak;
        lo_ = 0;
        hi_ = 0;
        bool any = false;
        for (std::size_t m = 0; m < fine_size_; ++m)
            if (std::abs(fine_[m]) > cut) {
                if (!any) lo_ = m;
                hi_ = m + 1;
                any = true;
            }
    }

    /// A(u)(0, 0), the energy of the interpolated signal.
    double energy() const { return energy_; }

    cplx operator()(double x, double y) const {
        const double ys[1] = {y};
        return at_delay(x, ys)[0];
    }

    /// A(u)(x, y) for one delay and many Doppler values.
    std::vector<cplx> at_delay(double x, std::span<const double> ys) const {
        const std::vector<cplx> prod = lag_product(x);
        std::vector<cplx> out(ys.size());
        for (std::size_t i = 0; i < ys.size(); ++i) out[i] = integrate(prod, x, ys[i]);
        return out;
    }

private:
    double fine_dt() const { return dt_ * double(padded_) / double(fine_size_); }

    /// u(s_m) conj(u(s_m - x)) for s_m = t0 + m*fine_dt, m in [lo_, hi_).
    std::vector<cplx> lag_product(double x) const {
        const double pos = x / fine_dt();
        const double whole = std::floor(pos);
        const double frac = pos - whole;
        // u(s_m - x) sits at fine index m - whole - frac; interpolate on nodes
        // base + k, k = -7..8, with base = m - whole - 1, at local coordinate 1 - frac.
        const double at = 1.0 - frac;
        double w[taps];
        for (int k = 0; k < taps; ++k) {
            const double nk = double(k - 7);
            double num = 1.0, den = 1.0;
            for (int j = 0; j < taps; ++j) {
                if (j == k) continue;
                const double nj = double(j - 7);
                num *= at - nj;
                den *= nk - nj;
            }
            w[k] = num / den;
        }
        const long m_size = long(fine_size_);
        const long offset = long(std::fmod(whole, double(m_size))) + 1 + 7;
        std::vector<cplx> prod(hi_ - lo_);
        for (std::size_t m = lo_; m < hi_; ++m) {
            long idx = (long(m) - offset) % m_size;
            if (idx < 0) idx += m_size;
            double re = 0.0, im = 0.0;
            if (idx + taps <= m_size) {
                const cplx* p = fine_.data() + idx;
                for (int k = 0; k < taps; ++k) {
                    re += w[k] * p[k].real();
                    im += w[k] * p[k].imag();
                }
            } else {
                for (int k = 0; k < taps; ++k) {
                    const cplx& v = fine_[std::size_t((idx + k) % m_size)];
                    re += w[k] * v.real();
                    im += w[k] * v.imag();
                }
            }
            const cplx& a = fine_[m];
            prod[m - lo_] = cplx(a.real() * re + a.imag() * im, a.imag() * re - a.real() * im);
        }
        return prod;
    }

    cplx integrate(const std::vector<cplx>& prod, double x, double y) const {
        const double h = fine_dt();
        const double k = -2.0 * std::numbers::pi * y;
        const cplx step = std::polar(1.0, k * h);
        constexpr std::size_t resync = 64;
        cplx z{};
        double re = 0.0, im = 0.0;
        for (std::size_t i = 0; i < prod.size(); ++i) {
            if (i % resync == 0) z = std::polar(1.0, k * (t0_ + double(lo_ + i) * h));
            re += prod[i].real() * z.real() - prod[i].imag() * z.imag();
            im += prod[i].real() * z.imag() + prod[i].imag() * z.real();
            z *= step;
        }
        return std::polar(1.0, std::numbers::pi * x * y) * cplx(re, im) * h;
    }

    double t0_;
    double dt_;
    std::size_t padded_;
    std::size_t fine_size_;
    std::vector<cplx> fine_;
    std::size_t lo_ = 0;
    std::size_t hi_ = 0;
    double energy_ = 0.0;
};

inline cplx ambiguity_point(const SampledSignal& u, double x, double y) { return AmbiguityEvaluator(u)(x, y); }

/// Ambiguity values on a rectangular grid, stored row-major with x varying
/// along each row: values[iy * xs.size() + ix] = A(u)(xs[ix], ys[iy]).
struct ComplexGrid {
    std::vector<double> xs;
    std::vector<double> ys;
    std::vector<cplx> values;

    const cplx& at(std::size_t iy, std::size_t ix) const { return values[iy * xs.size() + ix]; }
};

inline ComplexGrid ambiguity_grid(const AmbiguityEvaluator& amb, std::span<const double> xs,
                                  std::span<const double> ys) {
    ComplexGrid g{{xs.begin(), xs.end()}, {ys.begin(), ys.end()}, std::vector<cplx>(xs.size() * ys.size())};
    for (std::size_t ix = 0; ix < xs.size(); ++ix) {
        const std::vector<cplx> col = amb.at_delay(xs[ix], ys);
        for (std::size_t iy = 0; iy < ys.size(); ++iy) g.values[iy * xs.size() + ix] = col[iy];
    }
    return g;
}

inline ComplexGrid ambiguity_grid(const SampledSignal& u, std::span<const double> xs, std::span<const double> ys) {
    return ambiguity_grid(AmbiguityEvaluator(u), xs, ys);
}

/// Section of A(u) along direction theta, A(u)(r cos theta, r sin theta), via
///   A(u)(-r sin a, r cos a) = F[|F_a u|^2](r),  a = theta - pi/2.
/// Negative r values give the opposite ray.
inline std::vector<cplx> cross_section(const SampledSignal& u, double theta, std::span<const double> rs) {
    const SampledSignal w = power(frft(u, theta - std::numbers::pi / 2.0));
    const std::size_t n = w.size();
    std::vector<cplx> out(rs.size());
    for (std::size_t i = 0; i < rs.size(); ++i) {
        const double k = -2.0 * std::numbers::pi * rs[i];
        cplx acc{0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j) acc += trapezoid_weight(j, n) * w[j].real() * std::polar(1.0, k * w.time(j));
        out[i] = acc * w.dt();
    }
    return out;
}

/// Empirical first zero of A(u) along +-(cos theta, sin theta).
struct RayScan {
    double theta = 0.0;
    std::vector<double> radii;
    std::vector<double> magnitudes_plus;
    std::vector<double> magnitudes_minus;
    std::optional<double> first_zero;
};

/// Samples |A| on both rays at step r_max/steps. Each interior local minimum
/// is refined by golden section to 1e-6 in radius and accepted as a zero when
/// the refined magnitude is at most eps_rel * A(0,0). The first zero is the
/// smallest accepted radius on either ray.
inline RayScan first_zero_on_ray(const AmbiguityEvaluator& amb, double theta, double r_max, double eps_rel = 1e-6,
                                 std::size_t steps = 1024) {
    if (!(r_max > 0.0)) throw InvalidInput("first_zero_on_ray: r_max must be > 0");
    if (!(eps_rel > 0.0 && eps_rel < 1.0)) throw InvalidInput("first_zero_on_ray: eps_rel must be in (0, 1)");
    RayScan scan;
    scan.theta = theta;
    const double ct = std::cos(theta), st = std::sin(theta);
    const double h = r_max / double(steps);
    scan.radii.resize(steps + 1);
    scan.magnitudes_plus.resize(steps + 1);
    scan.magnitudes_minus.resize(steps + 1);
    for (std::size_t i = 0; i <= steps; ++i) {
        const double r = double(i) * h;
        scan.radii[i] = r;
        scan.magnitudes_plus[i] = std::abs(amb(r * ct, r * st));
        scan.magnitudes_minus[i] = std::abs(amb(-r * ct, -r * st));
    }
    const double threshold = eps_rel * amb.energy();
    auto first_on = [&](const std::vector<double>& mag, double sign) -> std::optional<double> {
        for (std::size_t i = 1; i + 1 <= steps; ++i) {
            if (!(mag[i] <= mag[i - 1] && mag[i] <= mag[i + 1])) continue;
            if (mag[i] == mag[i - 1] && mag[i] == mag[i + 1] && mag[i] > threshold) continue;
            auto f = [&](double r) { return std::abs(amb(sign * r * ct, sign * r * st)); };
            const MinimizeResult m = golden_section_minimize(f, scan.radii[i - 1], scan.radii[i + 1], 1e-6);
            if (m.value <= threshold) return m.x;
        }
        return std::nullopt;
    };
    const auto zp = first_on(scan.magnitudes_plus, 1.0);
    const auto zm = first_on(scan.magnitudes_minus, -1.0);
    if (zp && zm) scan.first_zero = std::min(*zp, *zm);
    else if (zp) scan.first_zero = zp;
    else if (zm) scan.first_zero = zm;
    return scan;
}

inline RayScan first_zero_on_ray(const SampledSignal& u, double theta, double r_max, double eps_rel = 1e-6) {
    return first_zero_on_ray(AmbiguityEvaluator(u), theta, r_max, eps_rel);
}

}  // namespace ambizero
