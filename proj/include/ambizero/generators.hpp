#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "ambizero/errors.hpp"
#include "ambizero/signal.hpp"

namespace ambizero {

enum class WaveKind { gaussian, hermite, rect, chirp, two_pulse };

/// Built-in test waveform on an N-point grid spanning [t_lo, t_hi].
struct GeneratorSpec {
    WaveKind kind = WaveKind::gaussian;
    int order = 0;             // hermite
    double width = 1.0;        // rect
    double rate = 0.0;         // chirp
    double separation = 2.0;   // two_pulse
    double pulse_width = 0.5;  // two_pulse
    std::size_t n = 1024;
    double t_lo = -8.0;
    double t_hi = 8.0;

    static GeneratorSpec gaussian() { return {}; }
    static GeneratorSpec hermite(int n) {
        GeneratorSpec s;
        s.kind = WaveKind::hermite;
        s.order = n;
        return s;
    }
    static GeneratorSpec rect(double w) {
        GeneratorSpec s;
        s.kind = WaveKind::rect;
        s.width = w;
        return s;
    }
    static GeneratorSpec chirp(double r) {
        GeneratorSpec s;
        s.kind = WaveKind::chirp;
        s.rate = r;
        return s;
    }
    static GeneratorSpec two_pulse(double sep, double pw) {
        GeneratorSpec s;
        s.kind = WaveKind::two_pulse;
        s.separation = sep;
        s.pulse_width = pw;
        return s;
    }

    GeneratorSpec with_grid(std::size_t samples, double lo, double hi) const {
        GeneratorSpec s = *this;
        s.n = samples;
        s.t_lo = lo;
        s.t_hi = hi;
        return s;
    }

    std::string name() const {
        std::ostringstream os;
        switch (kind) {
            case WaveKind::gaussian: os << "gaussian"; break;
            case WaveKind::hermite: os << "hermite:" << order; break;
            case WaveKind::rect: os << "rect:" << width; break;
            case WaveKind::chirp: os << "chirp:" << rate; break;
            case WaveKind::two_pulse: os << "two_pulse:" << separation << "," << pulse_width; break;
        }
        return os.str();
    }
};

/// Parses "gaussian", "hermite:<n>", "rect:<width>", "chirp:<rate>",
/// "two_pulse:<separation>,<pulse_width>". Grid fields keep their defaults.
inline GeneratorSpec parse_generator(const std::string& text) {
    const auto colon = text.find(':');
    const std::string kind = text.substr(0, colon);
    const std::string args = colon == std::string::npos ? "" : text.substr(colon + 1);
    auto number = [&](const std::string& s) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            throw InvalidInput("bad generator argument '" + s + "' in '" + text + "'");
        }
        if (used != s.size()) throw InvalidInput("bad generator argument '" + s + "' in '" + text + "'");
        return v;
    };
    if (kind == "gaussian" && args.empty()) return GeneratorSpec::gaussian();
    if (kind == "hermite" && !args.empty()) {
        const double n = number(args);
        if (n < 0 || n != std::floor(n)) throw InvalidInput("hermite order must be a non-negative integer");
        return GeneratorSpec::hermite(int(n));
    }
    if (kind == "rect" && !args.empty()) return GeneratorSpec::rect(number(args));
    if (kind == "chirp" && !args.empty()) return GeneratorSpec::chirp(number(args));
    if (kind == "two_pulse") {
        const auto comma = args.find(',');
        if (comma == std::string::npos) throw InvalidInput("two_pulse needs <separation>,<pulse_width>");
        return GeneratorSpec::two_pulse(number(args.substr(0, comma)), number(args.substr(comma + 1)));
    }
    throw InvalidInput("unknown generator '" + text + "'");
}

namespace detail {

inline std::function<cplx(double)> waveform(const GeneratorSpec& s) {
    using std::numbers::pi;
    const double g0 = std::pow(2.0, 0.25);
    switch (s.kind) {
        case WaveKind::gaussian:
            return [=](double t) { return cplx(g0 * std::exp(-pi * t * t), 0.0); };
        case WaveKind::hermite: {
            const int n = s.order;
            // Normalized Hermite functions h_n(t) = phi_n(sqrt(2 pi) t) (2 pi)^{1/4},
            // Fourier eigenfunctions with eigenvalue (-i)^n.
            return [=](double t) {
                const double x = std::sqrt(2.0 * pi) * t;
                double prev = g0 * std::exp(-pi * t * t);
                if (n == 0) return cplx(prev, 0.0);
                double cur = std::sqrt(2.0) * x * prev;
                for (int k = 1; k < n; ++k) {
                    const double next = std::sqrt(2.0 / (k + 1)) * x * cur - std::sqrt(double(k) / (k + 1)) * prev;
                    prev = cur;
                    cur = next;
                }
                return cplx(cur, 0.0);
            };
        }
        case WaveKind::chirp: {
            const double r = s.rate;
            return [=](double t) { return g0 * std::exp(-pi * t * t) * std::polar(1.0, pi * r * t * t); };
        }
        case WaveKind::two_pulse: {
            const double h = s.separation / 2.0, w = s.pulse_width;
            return [=](double t) {
                const double a = (t - h) / w, b = (t + h) / w;
                return cplx(std::exp(-pi * a * a) + std::exp(-pi * b * b), 0.0);
            };
        }
        case WaveKind::rect: break;
    }
    throw InvalidInput("waveform: rect has no closed-form sampler");
}

inline SampledSignal generate_rect(const GeneratorSpec& s) {
    if (!(s.width > 0.0)) throw InvalidInput("rect width must be > 0");
    const double dt_nominal = (s.t_hi - s.t_lo) / double(s.n - 1);
    long inside = std::lround(s.width / dt_nominal);
    if (inside < 1) inside = 1;
    // Odd N puts a sample at the centre, so an odd count of inside samples
    // puts the edges on cell midpoints; even N needs an even count.
    if ((inside % 2) != long(s.n % 2)) ++inside;
    const double dt = s.width / double(inside);
    const double mid = std::round(0.5 * (s.t_lo + s.t_hi) / dt) * dt;
    const double t0 = mid - 0.5 * double(s.n - 1) * dt;
    const double half = 0.5 * s.width;
    if (!(t0 < -half - dt / 4 && t0 + double(s.n - 1) * dt > half + dt / 4) || std::size_t(inside) + 2 > s.n)
        throw InvalidInput("rect does not fit inside the window");
    const double height = 1.0 / std::sqrt(s.width);
    std::vector<cplx> v(s.n, cplx(0.0, 0.0));
    for (std::size_t k = 0; k < s.n; ++k)
        if (std::abs(t0 + double(k) * dt) < half) v[k] = height;
    return SampledSignal(std::move(v), dt, t0);
}

}  // namespace detail

/// Samples a built-in waveform, normalized to unit L2 norm.
///
/// rect is the indicator of [-w/2, w/2] scaled by 1/sqrt(w); its grid is
/// adjusted so the edges fall halfway between samples. Decaying kinds are
/// rejected if more than 1e-12 of their energy lies outside the window.
inline SampledSignal generate(const GeneratorSpec& s) {
    if (s.n < 16) throw InvalidInput("generator needs N >= 16");
    if (!(s.t_lo < s.t_hi)) throw InvalidInput("generator window must satisfy t_lo < t_hi");
    if (s.kind == WaveKind::hermite && s.order < 0) throw InvalidInput("hermite order must be >= 0");
    if (s.kind == WaveKind::two_pulse && !(s.pulse_width > 0.0)) throw InvalidInput("pulse_width must be > 0");
    if (s.kind == WaveKind::rect) return detail::generate_rect(s);

    const auto f = detail::waveform(s);
    const double dt = (s.t_hi - s.t_lo) / double(s.n - 1);
    std::vector<cplx> v(s.n);
    for (std::size_t k = 0; k < s.n; ++k) v[k] = f(s.t_lo + double(k) * dt);

    // Tail mass: the same sampler on a grid three windows wide.
    const double span = s.t_hi - s.t_lo;
    const std::size_t extra = std::size_t(std::ceil(span / dt));
    double inside = 0.0, outside = 0.0;
    for (std::size_t k = 0; k < s.n; ++k) inside += std::norm(v[k]);
    for (std::size_t k = 1; k <= extra; ++k) {
        outside += std::norm(f(s.t_lo - double(k) * dt));
        outside += std::norm(f(s.t_hi + double(k) * dt));
    }
    if (!(inside > 0.0) || outside > 1e-12 * (inside + outside))
        throw InvalidInput("window too small for " + s.name() + ": tail mass exceeds 1e-12 of the total");

    SampledSignal raw(std::move(v), dt, s.t_lo);
    const double scale = 1.0 / l2_norm(raw);
    std::vector<cplx> out = raw.samples();
    for (cplx& z : out) z *= scale;
    return SampledSignal(std::move(out), dt, s.t_lo);
}

}  // namespace ambizero
