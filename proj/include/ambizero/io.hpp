#pragma once

#include <cstdio>
#include <ostream>
#include <string>

#include <json.hpp>

#include "ambizero/ambiguity.hpp"
#include "ambizero/certifier.hpp"
#include "ambizero/errors.hpp"
#include "ambizero/minorant.hpp"

namespace ambizero {

using json = nlohmann::ordered_json;

inline json to_json(const MinorantCert& c) {
    json j{{"q", c.q}, {"a", c.a}, {"c", c.c}, {"kappa", c.kappa}, {"verified", c.verified}, {"margin", c.margin}};
    if (c.witness) j["witness"] = *c.witness;
    return j;
}

inline json to_json(const ValidationReport& r) {
    json rows = json::array();
    for (const ValidationRow& row : r.rows) {
        json jr{{"theta", row.theta}, {"tau_cert", row.tau_cert}};
        jr["tau_empirical"] = row.tau_empirical ? json(*row.tau_empirical) : json(nullptr);
        jr["pass"] = row.pass;
        rows.push_back(jr);
    }
    return json{{"rows", rows}, {"pass", r.pass}};
}

inline json to_json(const ZeroFreeRegion& r, const ValidationReport* validation = nullptr) {
    json j{{"q", r.q}, {"minorant", {{"a", r.cert.a}, {"c", r.cert.c}, {"kappa", r.cert.kappa}}}};
    j["rhombus"] = r.rhombus ? json{{"dx", r.rhombus->dx}, {"dy", r.rhombus->dy}, {"area", r.rhombus->area}}
                             : json(nullptr);
    json star = json::array();
    for (const StarRay& s : r.star) star.push_back({{"theta", s.theta}, {"tau", s.tau}});
    j["star"] = star;
    if (validation) j["validation"] = to_json(*validation);
    return j;
}

inline json to_json(const RayScan& s) {
    json j{{"theta", s.theta},
           {"radii", s.radii},
           {"magnitudes_plus", s.magnitudes_plus},
           {"magnitudes_minus", s.magnitudes_minus}};
    j["first_zero"] = s.first_zero ? json(*s.first_zero) : json(nullptr);
    return j;
}

/// Reads a region JSON back. The minorant is re-verified from (q, a, c), so a
/// tampered certificate cannot pass validation.
inline ZeroFreeRegion region_from_json(const json& j) {
    try {
        ZeroFreeRegion r;
        r.q = j.at("q").get<double>();
        const json& m = j.at("minorant");
        r.cert = make_certificate(r.q, m.at("a").get<double>(), m.at("c").get<double>());
        if (j.contains("rhombus") && !j["rhombus"].is_null()) {
            const json& h = j["rhombus"];
            r.rhombus = Rhombus{h.at("dx").get<double>(), h.at("dy").get<double>(), h.at("area").get<double>()};
        }
        if (j.contains("star"))
            for (const json& s : j["star"]) r.star.push_back({s.at("theta").get<double>(), s.at("tau").get<double>()});
        return r;
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("malformed region JSON: ") + e.what());
    }
}

/// `x,y,re,im,abs`, rows in grid order (y outer, x inner).
inline void write_grid_csv(std::ostream& out, const ComplexGrid& g) {
    out << "x,y,re,im,abs\n";
    char buf[160];
    for (std::size_t iy = 0; iy < g.ys.size(); ++iy)
        for (std::size_t ix = 0; ix < g.xs.size(); ++ix) {
            const cplx z = g.at(iy, ix);
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", g.xs[ix], g.ys[iy], z.real(), z.imag(),
                          std::abs(z));
            out << buf;
        }
}

}  // namespace ambizero
