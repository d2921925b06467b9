#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ambizero/errors.hpp"
#include "ambizero/signal.hpp"

namespace ambizero {

/// Reads a `t,re,im` CSV. Times must be strictly increasing and equispaced
/// (relative spacing jitter at most 1e-9).
inline SampledSignal read_signal_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw InvalidInput("signal CSV is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "t,re,im") throw InvalidInput("signal CSV header must be 't,re,im'");
    std::vector<double> ts;
    std::vector<cplx> zs;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string a, b, c, rest;
        if (!std::getline(row, a, ',') || !std::getline(row, b, ',') || !std::getline(row, c, ',') ||
            std::getline(row, rest, ','))
            throw InvalidInput("signal CSV line " + std::to_string(lineno) + ": expected 3 fields");
        try {
            std::size_t ua = 0, ub = 0, uc = 0;
            const double t = std::stod(a, &ua), re = std::stod(b, &ub), im = std::stod(c, &uc);
            if (ua != a.size() || ub != b.size() || uc != c.size()) throw std::invalid_argument("trailing");
            ts.push_back(t);
            zs.emplace_back(re, im);
        } catch (const std::exception&) {
            throw InvalidInput("signal CSV line " + std::to_string(lineno) + ": not a number");
        }
    }
    if (ts.empty()) throw InvalidInput("signal CSV has no samples");
    if (ts.size() == 1) throw InvalidInput("signal CSV needs at least two samples to define dt");
    const double dt = (ts.back() - ts.front()) / double(ts.size() - 1);
    if (!(dt > 0.0)) throw InvalidInput("signal CSV times must be strictly increasing");
    for (std::size_t k = 1; k < ts.size(); ++k) {
        const double step = ts[k] - ts[k - 1];
        if (!(step > 0.0)) throw InvalidInput("signal CSV times must be strictly increasing");
        if (std::abs(step - dt) > 1e-9 * dt) throw InvalidInput("signal CSV times are not equispaced");
    }
    return SampledSignal(std::move(zs), dt, ts.front());
}

inline SampledSignal read_signal_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open signal CSV '" + path + "'");
    return read_signal_csv(in);
}

inline void write_signal_csv(std::ostream& out, const SampledSignal& u) {
    out << "t,re,im\n";
    char buf[128];
    for (std::size_t k = 0; k < u.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", u.time(k), u[k].real(), u[k].imag());
        out << buf;
    }
}

}  // namespace ambizero
