#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "ambizero/ambiguity.hpp"
#include "ambizero/generators.hpp"

using namespace ambizero;
using Catch::Matchers::WithinAbs;
using std::numbers::pi;

namespace {

double gauss_amb(double x, double y) { return std::exp(-pi * (x * x + y * y) / 2.0); }

// Direct trapezoid quadrature of the defining integral for a closed-form
// waveform, independent of the sampled evaluator.
cplx direct_ambiguity(const std::function<cplx(double)>& f, double x, double y, double lo, double hi,
                      std::size_t n = 8001) {
    const double dt = (hi - lo) / double(n - 1);
    cplx acc{};
    for (std::size_t k = 0; k < n; ++k) {
        const double t = lo + dt * double(k);
        const double w = (k == 0 || k + 1 == n) ? 0.5 : 1.0;
        acc += w * f(t + x / 2) * std::conj(f(t - x / 2)) * std::polar(1.0, -2 * pi * y * t);
    }
    return acc * dt;
}

}  // namespace

TEST_CASE("ambiguity_point: origin and closed forms") {
    const SampledSignal g = generate(GeneratorSpec::gaussian());
    CHECK_THAT(ambiguity_point(g, 0, 0).real(), WithinAbs(energy(g), 1e-9));
    CHECK_THAT(std::abs(ambiguity_point(g, 1, 0) - gauss_amb(1, 0)), WithinAbs(0.0, 1e-6));
    CHECK_THAT(ambiguity_point(g, 1, 0).real(), WithinAbs(0.2079, 1e-4));
    const SampledSignal r = generate(GeneratorSpec::rect(1.0));
    CHECK(std::abs(ambiguity_point(r, 0, 1)) <= 1e-3);
    CHECK_THAT(ambiguity_point(r, 0, 0).real(), WithinAbs(1.0, 1e-9));
}

TEST_CASE("ambiguity_point: rect(1) Doppler axis at fine sampling") {
    const SampledSignal r = generate(GeneratorSpec::rect(1.0).with_grid(4096, -8, 8));
    // Sampling the jumps leaves an O(dt^2) residue, dt = 1/256.
    CHECK(std::abs(ambiguity_point(r, 0, 1)) <= 3e-5);
    CHECK(std::abs(ambiguity_point(r, 0, 2)) <= 3e-5);
    // Along the delay axis A(x, 0) = 1 - |x| for |x| <= 1.
    CHECK_THAT(ambiguity_point(r, 0.5, 0).real(), WithinAbs(0.5, 2e-3));
}

TEST_CASE("ambiguity_point: matches direct quadrature") {
    const auto f = [](double t) { return std::exp(-pi * (t - 1) * (t - 1) / 0.25) + std::exp(-pi * (t + 1) * (t + 1) / 0.25); };
    const SampledSignal u = generate(GeneratorSpec::two_pulse(2.0, 0.5));
    const AmbiguityEvaluator amb(u);
    double norm2 = 0.0;
    for (double t = -8; t <= 8; t += 1e-3) norm2 += std::norm(f(t)) * 1e-3;
    for (auto [x, y] : {std::pair{0.3, 0.2}, {2.0, 0.0}, {1.7, -0.9}, {-0.5, 1.3}}) {
        INFO("x = " << x << ", y = " << y);
        CHECK(std::abs(amb(x, y) - direct_ambiguity(f, x, y, -8, 8) / norm2) <= 1e-6);
    }
}

TEST_CASE("ambiguity_grid: layout, singleton and gaussian closed form") {
    const SampledSignal g = generate(GeneratorSpec::gaussian());
    const double z[] = {0.0};
    const ComplexGrid one = ambiguity_grid(g, z, z);
    REQUIRE(one.values.size() == 1);
    CHECK_THAT(one.values[0].real(), WithinAbs(energy(g), 1e-9));

    const double xs[] = {-1.0, -0.5, 0.0, 0.5, 1.0};
    const double ys[] = {-1.0, -0.25, 0.0, 0.6, 1.0};
    const ComplexGrid grid = ambiguity_grid(g, xs, ys);
    for (std::size_t iy = 0; iy < 5; ++iy)
        for (std::size_t ix = 0; ix < 5; ++ix) {
            CHECK(std::abs(grid.at(iy, ix) - gauss_amb(xs[ix], ys[iy])) <= 1e-6);
            CHECK(&grid.at(iy, ix) == &grid.values[iy * 5 + ix]);
        }
}

TEST_CASE("ambiguity_grid: Hermitian symmetry") {
    const SampledSignal u = generate(GeneratorSpec::chirp(1.0));
    const double axis[] = {-1.2, -0.7, -0.3, 0.0, 0.3, 0.7, 1.2};
    const ComplexGrid g = ambiguity_grid(u, axis, axis);
    for (std::size_t iy = 0; iy < 7; ++iy)
        for (std::size_t ix = 0; ix < 7; ++ix)
            CHECK(std::abs(g.at(6 - iy, 6 - ix) - std::conj(g.at(iy, ix))) <= 1e-9);
}

TEST_CASE("Moyal identity and maximum at the origin") {
    const GeneratorSpec kinds[] = {GeneratorSpec::gaussian(), GeneratorSpec::hermite(1), GeneratorSpec::chirp(0.5),
                                   GeneratorSpec::two_pulse(2.0, 0.5)};
    for (const GeneratorSpec& s : kinds) {
        INFO(s.name());
        const SampledSignal u = generate(s);
        const AmbiguityEvaluator amb(u);
        // Two-pulse has side lobes at delay +-2; chirp(0.5) is sheared. A
        // half-width of 5 holds all of them.
        const std::size_t n = 161;
        const double half = 5.0, h = 2 * half / double(n - 1);
        std::vector<double> axis(n);
        for (std::size_t k = 0; k < n; ++k) axis[k] = -half + h * double(k);
        const ComplexGrid g = ambiguity_grid(amb, axis, axis);
        double vol = 0.0, peak = 0.0;
        for (const cplx& z : g.values) vol += std::norm(z), peak = std::max(peak, std::abs(z));
        vol *= h * h;
        const double e = energy(u);
        CHECK(std::abs(vol - e * e) <= 1e-3 * e * e);
        CHECK(peak <= amb.energy() * (1 + 1e-12));
    }
}

TEST_CASE("cross_section agrees with ambiguity_point") {
    for (const GeneratorSpec& s : {GeneratorSpec::two_pulse(2.0, 0.5), GeneratorSpec::hermite(2), GeneratorSpec::chirp(1.0)}) {
        const SampledSignal u = generate(s);
        const AmbiguityEvaluator amb(u);
        std::vector<double> rs;
        for (double r = -2.5; r <= 2.5; r += 0.125) rs.push_back(r);
        for (double th : {0.0, 0.4, pi / 4, pi / 2, 2.0, 3.0}) {
            INFO(s.name() << ", theta = " << th);
            const std::vector<cplx> cs = cross_section(u, th, rs);
            double err = 0.0;
            for (std::size_t k = 0; k < rs.size(); ++k)
                err = std::max(err, std::abs(cs[k] - amb(rs[k] * std::cos(th), rs[k] * std::sin(th))));
            CHECK(err <= 1e-4 * energy(u));
        }
    }
}

TEST_CASE("cross_section: gaussian is radial") {
    const SampledSignal g = generate(GeneratorSpec::gaussian());
    const double rs[] = {0.0, 0.3, 0.8, 1.5};
    for (double th : {0.0, 0.7, pi / 2, 2.4}) {
        const std::vector<cplx> cs = cross_section(g, th, rs);
        for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(cs[k] - gauss_amb(rs[k], 0)) <= 1e-5);
    }
}

TEST_CASE("rotation covariance") {
    for (const GeneratorSpec& s : {GeneratorSpec::two_pulse(2.0, 0.5), GeneratorSpec::hermite(1)}) {
        const SampledSignal u = generate(s);
        const AmbiguityEvaluator amb(u);
        for (double a : {0.4, 1.1, 2.5}) {
            const AmbiguityEvaluator rot(frft(u, a));
            for (auto [x, y] : {std::pair{0.5, 0.3}, {-1.0, 0.8}, {1.5, -0.2}}) {
                INFO(s.name() << ", alpha = " << a << ", x = " << x << ", y = " << y);
                const cplx want = amb(x * std::cos(a) - y * std::sin(a), x * std::sin(a) + y * std::cos(a));
                CHECK(std::abs(rot(x, y) - want) <= 1e-4);
            }
        }
    }
}

TEST_CASE("|A| is invariant under time shift and modulation") {
    const SampledSignal u = generate(GeneratorSpec::two_pulse(2.0, 0.5));
    const SampledSignal v = modulate(translate(u, 0.7), 2.3);
    const AmbiguityEvaluator au(u), av(v);
    for (auto [x, y] : {std::pair{0.0, 0.0}, {0.4, 0.4}, {-2.0, 0.1}, {1.0, -1.5}})
        CHECK(std::abs(std::abs(au(x, y)) - std::abs(av(x, y))) <= 1e-6);
}

TEST_CASE("first_zero_on_ray") {
    const SampledSignal r = generate(GeneratorSpec::rect(1.0));
    const RayScan sr = first_zero_on_ray(r, pi / 2, 3.0);
    REQUIRE(sr.first_zero);
    CHECK_THAT(*sr.first_zero, WithinAbs(1.0, 1e-3));
    REQUIRE(sr.radii.size() == 1025);
    CHECK(sr.radii.back() == 3.0);

    const SampledSignal g = generate(GeneratorSpec::gaussian());
    for (double th : {0.0, 1.0, 2.0}) CHECK_FALSE(first_zero_on_ray(g, th, 2.5).first_zero);

    const SampledSignal h1 = generate(GeneratorSpec::hermite(1));
    const AmbiguityEvaluator amb(h1);
    for (double th : {0.0, 0.5, pi / 2, 2.7}) {
        const RayScan s = first_zero_on_ray(amb, th, 2.0);
        REQUIRE(s.first_zero);
        CHECK_THAT(*s.first_zero, WithinAbs(1.0 / std::sqrt(pi), 1e-3));
        for (std::size_t k = 0; k < s.radii.size(); ++k) CHECK(s.magnitudes_plus[k] >= 0.0);
    }

    CHECK_THROWS_AS(first_zero_on_ray(g, 0.0, 0.0), InvalidInput);
    CHECK_THROWS_AS(first_zero_on_ray(g, 0.0, 1.0, 0.0), InvalidInput);
    CHECK_THROWS_AS(first_zero_on_ray(g, 0.0, 1.0, 1.0), InvalidInput);
}

TEST_CASE("first_zero_on_ray: two-sided for asymmetric sections") {
    // Modulated two-pulse: A(x, y) and A(-x, -y) are conjugate, so both rays
    // share zeros; the minimum over them still comes from one scan.
    const SampledSignal u = modulate(generate(GeneratorSpec::two_pulse(2.0, 0.5)), 1.0);
    const RayScan s = first_zero_on_ray(u, pi / 2, 3.0);
    REQUIRE(s.first_zero);
    CHECK_THAT(*s.first_zero, WithinAbs(0.25, 1e-3));  // cos(pi y s) zero at y = 1/(2 s), s = 2
}
