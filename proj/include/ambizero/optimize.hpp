#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

namespace ambizero {

struct MinimizeResult {
    double x;
    double value;
};

/// Golden-section search for a minimum of f on [lo, hi].
///
/// The bracket endpoints are evaluated too, so a monotone objective returns
/// the better endpoint instead of a point near it.
inline MinimizeResult golden_section_minimize(const std::function<double(double)>& f, double lo, double hi,
                                              double tol, int max_iter = 200) {
    if (!(hi >= lo)) throw std::invalid_argument("golden_section_minimize: empty bracket");
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < max_iter && (b - a) > tol; ++it) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    MinimizeResult best = fc <= fd ? MinimizeResult{c, fc} : MinimizeResult{d, fd};
    const double flo = f(lo), fhi = f(hi);
    if (flo < best.value) best = {lo, flo};
    if (fhi < best.value) best = {hi, fhi};
    return best;
}

/// Bisection for a root of f on [lo, hi]; f(lo) and f(hi) must differ in sign.
inline double bisect_root(const std::function<double(double)>& f, double lo, double hi, double tol,
                          int max_iter = 400) {
    double flo = f(lo);
    const double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) throw std::invalid_argument("bisect_root: no sign change on bracket");
    for (int it = 0; it < max_iter && (hi - lo) > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace ambizero
