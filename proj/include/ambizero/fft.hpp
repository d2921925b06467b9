#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace ambizero {

using cplx = std::complex<double>;

namespace detail {

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

}  // namespace detail

/// Iterative radix-2 FFT with a precomputed twiddle table.
///
/// forward() computes X_k = sum_j x_j e^{-2 pi i jk/n}; inverse() uses the
/// conjugate kernel and does not scale by 1/n.
class FftPlan {
public:
    explicit FftPlan(std::size_t n) : n_(n), forward_(n), inverse_(n), bitrev_(n) {
        if (!detail::is_pow2(n)) throw std::invalid_argument("FftPlan: size must be a power of two");
        // Stage twiddles stored contiguously: stage with half-length h uses
        // entries [h, 2h), entry h + k = e^{-i pi k / h}.
        for (std::size_t half = 1; half < n; half <<= 1)
            for (std::size_t k = 0; k < half; ++k) {
                forward_[half + k] = std::polar(1.0, -std::numbers::pi * double(k) / double(half));
                inverse_[half + k] = std::conj(forward_[half + k]);
            }
        std::size_t bits = 0;
        while ((std::size_t(1) << bits) < n) ++bits;
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t r = 0;
            for (std::size_t b = 0; b < bits; ++b)
                if (i & (std::size_t(1) << b)) r |= std::size_t(1) << (bits - 1 - b);
            bitrev_[i] = r;
        }
    }

    std::size_t size() const { return n_; }

    void forward(std::vector<cplx>& a) const { run(a, forward_); }
    void inverse(std::vector<cplx>& a) const { run(a, inverse_); }

private:
    void run(std::vector<cplx>& a, const std::vector<cplx>& tw) const {
        if (a.size() != n_) throw std::invalid_argument("FftPlan: length mismatch");
        for (std::size_t i = 0; i < n_; ++i)
            if (i < bitrev_[i]) std::swap(a[i], a[bitrev_[i]]);
        cplx* d = a.data();
        for (std::size_t half = 1; half < n_; half <<= 1) {
            const cplx* w = tw.data() + half;
            for (std::size_t start = 0; start < n_; start += 2 * half) {
                cplx* lo = d + start;
                cplx* hi = lo + half;
                for (std::size_t k = 0; k < half; ++k) {
                    const double re = w[k].real() * hi[k].real() - w[k].imag() * hi[k].imag();
                    const double im = w[k].real() * hi[k].imag() + w[k].imag() * hi[k].real();
                    hi[k] = cplx(lo[k].real() - re, lo[k].imag() - im);
                    lo[k] = cplx(lo[k].real() + re, lo[k].imag() + im);
                }
            }
        }
    }

    std::size_t n_;
    std::vector<cplx> forward_;
    std::vector<cplx> inverse_;
    std::vector<std::size_t> bitrev_;
};

/// Unscaled DFT of arbitrary length: radix-2 when possible, otherwise the
/// direct sum with an index-reduced twiddle table.
inline std::vector<cplx> dft(std::vector<cplx> x, bool inverse = false) {
    const std::size_t n = x.size();
    if (n == 0) return x;
    if (detail::is_pow2(n)) {
        FftPlan plan(n);
        inverse ? plan.inverse(x) : plan.forward(x);
        return x;
    }
    const double sign = inverse ? 1.0 : -1.0;
    std::vector<cplx> table(n);
    for (std::size_t k = 0; k < n; ++k)
        table[k] = std::polar(1.0, sign * 2.0 * std::numbers::pi * double(k) / double(n));
    std::vector<cplx> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        cplx acc{0.0, 0.0};
        std::size_t idx = 0;
        for (std::size_t j = 0; j < n; ++j) {
            acc += x[j] * table[idx];
            idx += k;
            if (idx >= n) idx -= n;
        }
        out[k] = acc;
    }
    return out;
}

}  // namespace ambizero
