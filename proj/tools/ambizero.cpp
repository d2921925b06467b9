// ambizero: ambiguity functions, FrFT moments and certified zero-free regions.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ambizero/ambiguity.hpp"
#include "ambizero/certifier.hpp"
#include "ambizero/csv.hpp"
#include "ambizero/errors.hpp"
#include "ambizero/generators.hpp"
#include "ambizero/io.hpp"
#include "ambizero/minorant.hpp"

namespace az = ambizero;

namespace {

enum Exit { ok = 0, usage = 2, unsound = 3, infinite = 4 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    std::string signal_path;
    std::string gen;
    std::vector<double> qs;
    std::string minorant;
    std::string mode = "rhombus";
    std::string grid;
    std::size_t dirs = 32;
    double rmax = 3.0;
    double eps = 1e-6;
    double span = 2.0;
    std::size_t points = 65;
    std::string region_path;
    std::string out;
    std::string format = "json";
};

double parse_number(const std::string& s, const std::string& what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw UsageError("bad number '" + s + "' in " + what);
    }
    if (used != s.size() || !std::isfinite(v)) throw UsageError("bad number '" + s + "' in " + what);
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(item);
    return parts;
}

// "N=<n>,win=<lo:hi>", either part optional.
void apply_grid(az::GeneratorSpec& spec, const std::string& text) {
    if (text.empty()) return;
    for (const std::string& part : split(text, ',')) {
        const auto eq = part.find('=');
        if (eq == std::string::npos) throw UsageError("bad --grid entry '" + part + "'");
        const std::string key = part.substr(0, eq), val = part.substr(eq + 1);
        if (key == "N") {
            const double n = parse_number(val, "--grid N");
            if (n < 16 || n != std::floor(n)) throw UsageError("--grid N must be an integer >= 16");
            spec.n = std::size_t(n);
        } else if (key == "win") {
            const auto colon = val.find(':');
            if (colon == std::string::npos) throw UsageError("--grid win must be <lo:hi>");
            spec.t_lo = parse_number(val.substr(0, colon), "--grid win");
            spec.t_hi = parse_number(val.substr(colon + 1), "--grid win");
        } else {
            throw UsageError("unknown --grid key '" + key + "'");
        }
    }
}

struct Loaded {
    az::SampledSignal signal;
    std::string source;
};

Loaded load_signal(const Config& cfg) {
    if (cfg.signal_path.empty() == cfg.gen.empty()) throw UsageError("give exactly one of --signal or --gen");
    if (!cfg.signal_path.empty()) {
        if (!cfg.grid.empty()) throw UsageError("--grid applies to --gen only");
        return {az::read_signal_csv(cfg.signal_path), cfg.signal_path};
    }
    az::GeneratorSpec spec = az::parse_generator(cfg.gen);
    apply_grid(spec, cfg.grid);
    return {az::generate(spec), spec.name()};
}

double single_q(const Config& cfg, double fallback) {
    if (cfg.qs.size() > 1) throw UsageError("this command takes a single --q");
    const double q = cfg.qs.empty() ? fallback : cfg.qs.front();
    if (!(q > 0.0)) throw UsageError("--q must be > 0");
    return q;
}

// simple | opt | exact | classical | eta=<r> | a=<r>,c=<r>; default is
// classical (1, 1/2) at q = 2, exact for q <= 1, opt otherwise.
az::MinorantCert select_minorant(const std::string& sel, double q) {
    std::string s = sel;
    if (s.empty()) s = q == 2.0 ? "classical" : (q <= 1.0 ? "exact" : "opt");
    // Long spellings: optimal, parametric(<r>), explicit(<a>,<c>).
    auto unwrap = [&](const std::string& head) {
        if (s.rfind(head + "(", 0) == 0 && s.back() == ')') return s.substr(head.size() + 1, s.size() - head.size() - 2);
        return std::string();
    };
    if (s == "optimal") s = "opt";
    if (const std::string in = unwrap("parametric"); !in.empty()) s = "eta=" + in;
    if (const std::string in = unwrap("explicit"); !in.empty()) {
        const auto parts = split(in, ',');
        if (parts.size() != 2) throw UsageError("--minorant explicit(<a>,<c>)");
        s = "a=" + parts[0] + ",c=" + parts[1];
    }
    az::MinorantCert cert;
    if (s == "simple") {
        cert = az::minorant_simple(q);
    } else if (s == "opt") {
        cert = az::minorant_optimize(q);
    } else if (s == "exact") {
        if (q > 1.0) throw UsageError("--minorant exact requires q <= 1");
        cert = az::minorant_exact_concave(q);
    } else if (s == "classical") {
        if (q != 2.0) throw UsageError("--minorant classical is the q = 2 pair (1, 1/2)");
        cert = az::make_certificate(2.0, 1.0, 0.5);
    } else if (s.rfind("eta=", 0) == 0) {
        const double eta = parse_number(s.substr(4), "--minorant eta");
        if (!(eta > 0.0)) throw UsageError("--minorant eta must be > 0");
        cert = az::minorant_parametric(q, eta);
    } else if (s.rfind("a=", 0) == 0) {
        const auto parts = split(s, ',');
        if (parts.size() != 2 || parts[1].rfind("c=", 0) != 0) throw UsageError("--minorant a=<r>,c=<r>");
        const double a = parse_number(parts[0].substr(2), "--minorant a");
        const double c = parse_number(parts[1].substr(2), "--minorant c");
        if (!(a > 0.0) || !(c > 0.0)) throw UsageError("--minorant a and c must be > 0");
        cert = az::make_certificate(q, a, c);
    } else {
        throw UsageError("unknown --minorant '" + s + "'");
    }
    if (!cert.verified) {
        std::ostringstream os;
        os << "minorant (a=" << cert.a << ", c=" << cert.c << ", q=" << q << ") does not verify";
        if (cert.witness) os << "; violated near x=" << *cert.witness;
        throw UsageError(os.str());
    }
    return cert;
}

void emit(const Config& cfg, const std::string& file, const std::string& text) {
    if (cfg.out.empty()) {
        std::cout << text;
        return;
    }
    std::error_code ec;
    std::filesystem::create_directories(cfg.out, ec);
    const std::filesystem::path path = std::filesystem::path(cfg.out) / file;
    std::ofstream f(path, std::ios::binary);
    if (!f || !(f << text)) throw UsageError("cannot write " + path.string());
    std::cerr << "wrote " << path.string() << "\n";
}

std::string dump(const az::json& j) { return j.dump(2) + "\n"; }

az::json minorant_brief(const az::MinorantCert& c) {
    return {{"a", c.a}, {"c", c.c}, {"kappa", c.kappa}};
}

int cmd_constants(const Config& cfg) {
    std::vector<double> qs = cfg.qs.empty() ? std::vector<double>{3, 4, 5, 6} : cfg.qs;
    for (double q : qs)
        if (!(q > 0.0)) throw UsageError("--q values must be > 0");

    bool all = true;
    az::json rows = az::json::array();
    std::ostringstream csv;
    csv << "q,a,c,kappa\n";
    for (double q : qs) {
        const az::MinorantCert c = q <= 1.0 ? az::minorant_exact_concave(q) : az::minorant_optimize(q);
        all = all && c.verified;
        az::json r = az::to_json(c);
        r["method"] = q <= 1.0 ? "exact" : "opt";
        rows.push_back(r);
        char buf[160];
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", c.q, c.a, c.c, c.kappa);
        csv << buf;
    }

    // Quoted q = 2 and q = 3/2 inequalities, and the rhombus multiplier
    // 1/(2 pi sqrt(c)) each q = 2 pair implies.
    struct Claim {
        double a, c, q;
    };
    const Claim claims[] = {{1.0, 0.5, 2.0}, {1.1, 0.42, 2.0}, {1.02, 0.52, 1.5}, {1.1, 0.41, 2.0}};
    az::json checks = az::json::array();
    for (const Claim& cl : claims) {
        const az::MinorantCheck v = az::verify_minorant(cl.a, cl.c, cl.q);
        az::json j{{"a", cl.a}, {"c", cl.c}, {"q", cl.q}, {"verified", v.verified}, {"margin", v.margin}};
        j["witness"] = v.witness ? az::json(*v.witness) : az::json(nullptr);
        if (cl.q == 2.0)
            j["rhombus_multiplier"] =
                v.verified ? az::json(1.0 / (2.0 * std::numbers::pi * std::sqrt(cl.c))) : az::json(nullptr);
        checks.push_back(j);
    }

    if (cfg.format == "csv") {
        emit(cfg, "constants.csv", csv.str());
        std::ostringstream side;
        for (const auto& j : checks) {
            side << "inequality a=" << j["a"].get<double>() << " c=" << j["c"].get<double>()
                 << " q=" << j["q"].get<double>() << ": " << (j["verified"].get<bool>() ? "holds" : "fails");
            if (!j["witness"].is_null()) side << " (witness x=" << j["witness"].get<double>() << ")";
            if (j.contains("rhombus_multiplier") && !j["rhombus_multiplier"].is_null())
                side << ", rhombus multiplier " << j["rhombus_multiplier"].get<double>();
            side << "\n";
        }
        side << "claimed improved multiplier 0.248\n";
        std::cerr << side.str();
    } else {
        az::json doc{{"constants", rows}, {"inequalities", checks}, {"claimed_multiplier", 0.248}};
        emit(cfg, "constants.json", dump(doc));
    }
    return all ? ok : unsound;
}

int cmd_analyze(const Config& cfg) {
    const Loaded in = load_signal(cfg);
    const az::SampledSignal& u = in.signal;
    const double q = single_q(cfg, 2.0);
    az::json doc{{"source", in.source},
                 {"samples", u.size()},
                 {"dt", u.dt()},
                 {"t0", u.t0()},
                 {"l1_norm", az::l1_norm(u)},
                 {"l2_norm", az::l2_norm(u)}};
    auto profile = [&](const az::SampledSignal& w) {
        const az::DispersionProfile d = az::dispersion_inf(w, q);
        return az::json{{"q", q}, {"center", d.center}, {"value", d.value},
                        {"resolved", az::moment_resolved(w, q, d.center)}};
    };
    doc["time_dispersion"] = profile(az::power(u));
    doc["frequency_dispersion"] = profile(az::power(az::fourier(u)));
    try {
        const az::HeisenbergReport h = az::heisenberg_diagnostic(u);
        doc["heisenberg"] = {{"rho", h.rho}, {"sigma_t", h.sigma_t}, {"sigma_xi", h.sigma_xi}, {"area", h.area}};
    } catch (const az::InfiniteMoment& e) {
        doc["heisenberg"] = {{"error", e.what()}};
    }
    emit(cfg, "analysis.json", dump(doc));
    return ok;
}

int cmd_certify(const Config& cfg) {
    const Loaded in = load_signal(cfg);
    const az::SampledSignal& u = in.signal;
    az::ZeroFreeRegion region;
    if (!cfg.region_path.empty()) {
        std::ifstream f(cfg.region_path);
        if (!f) throw UsageError("cannot open region '" + cfg.region_path + "'");
        az::json j;
        try {
            j = az::json::parse(f);
        } catch (const az::json::exception& e) {
            throw UsageError(std::string("region is not JSON: ") + e.what());
        }
        region = az::region_from_json(j);
        if (!region.cert.verified) throw UsageError("region minorant does not verify");
    } else if (cfg.mode == "rhombus") {
        const double q = single_q(cfg, 2.0);
        if (q != 2.0) throw UsageError("rhombus mode uses q = 2; use --mode star for other orders");
        region = az::rhombus_region(u, select_minorant(cfg.minorant, q));
    } else if (cfg.mode == "star") {
        const double q = single_q(cfg, 2.0);
        const std::vector<double> thetas = az::direction_grid(cfg.dirs);
        region = az::star_region(u, q, select_minorant(cfg.minorant, q), thetas);
    } else {
        throw UsageError("--mode must be rhombus or star");
    }
    const az::ValidationReport rep = az::validate_region(u, region, cfg.eps, cfg.dirs);
    az::json doc = az::to_json(region, &rep);
    doc["source"] = in.source;
    emit(cfg, "region.json", dump(doc));
    if (!rep.pass) std::cerr << "soundness violation: a certified radius exceeds an empirical zero\n";
    return rep.pass ? ok : unsound;
}

int cmd_scan(const Config& cfg) {
    const Loaded in = load_signal(cfg);
    if (cfg.points < 1) throw UsageError("--points must be >= 1");
    if (!(cfg.span > 0.0)) throw UsageError("--span must be > 0");
    if (!(cfg.rmax > 0.0)) throw UsageError("--rmax must be > 0");
    const az::AmbiguityEvaluator amb(in.signal);
    std::vector<double> axis(cfg.points);
    for (std::size_t i = 0; i < cfg.points; ++i)
        axis[i] = cfg.points == 1 ? 0.0 : -cfg.span + 2.0 * cfg.span * double(i) / double(cfg.points - 1);
    const az::ComplexGrid grid = az::ambiguity_grid(amb, axis, axis);
    std::ostringstream csv;
    az::write_grid_csv(csv, grid);
    emit(cfg, "grid.csv", csv.str());

    az::json rays = az::json::array();
    for (double th : az::direction_grid(cfg.dirs)) rays.push_back(az::to_json(az::first_zero_on_ray(amb, th, cfg.rmax, cfg.eps)));
    emit(cfg, "rays.json", dump(az::json{{"source", in.source}, {"energy", amb.energy()}, {"rays", rays}}));
    return ok;
}

int cmd_ortho(const Config& cfg) {
    const Loaded in = load_signal(cfg);
    const az::SampledSignal& f = in.signal;
    const double q = single_q(cfg, 2.0);
    const az::MinorantCert cert = select_minorant(cfg.minorant, q);
    const az::AmbiguityEvaluator amb(f);

    // <f, f(. - a)> is A(f)(a, 0) and <f, e^{2 i pi w t} f> is A(f)(0, w).
    bool sound = true, moment_missing = false;
    az::json doc{{"source", in.source}, {"q", q}, {"minorant", minorant_brief(cert)}};
    auto side = [&](const char* key, const char* emp_key, double theta, auto bound) {
        try {
            const double b = bound();
            doc[key] = b;
            const az::RayScan s = az::first_zero_on_ray(amb, theta, 3.0 * b, cfg.eps);
            doc[emp_key] = s.first_zero ? az::json(*s.first_zero) : az::json(nullptr);
            if (s.first_zero && b > *s.first_zero + az::radius_tolerance) sound = false;
        } catch (const az::InfiniteMoment& e) {
            doc[key] = nullptr;
            doc[emp_key] = nullptr;
            doc[std::string(key) + "_error"] = e.what();
            std::cerr << e.what() << "\n";
            moment_missing = true;
        }
    };
    side("a_min", "a_empirical", 0.0, [&] { return az::translate_orthogonality_bound(f, q, cert); });
    side("omega_min", "omega_empirical", std::numbers::pi / 2.0,
         [&] { return az::modulation_orthogonality_bound(f, q, cert); });
    doc["pass"] = sound;
    emit(cfg, "ortho.json", dump(doc));
    if (!sound) return unsound;
    return moment_missing ? infinite : ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ambiguity functions, fractional Fourier transforms and certified zero-free regions"};
    app.require_subcommand(1);
    Config cfg;

    auto signal_opts = [&](CLI::App* sub) {
        auto* s = sub->add_option("--signal", cfg.signal_path, "signal CSV with header t,re,im");
        auto* g = sub->add_option("--gen", cfg.gen, "generator: gaussian | hermite:<n> | rect:<w> | chirp:<r> | two_pulse:<s>,<w>");
        s->excludes(g);
        sub->add_option("--grid", cfg.grid, "generator grid N=<n>,win=<lo:hi> (default N=1024,win=-8:8)");
        sub->add_option("--q", cfg.qs, "moment order")->expected(1);
        sub->add_option("--minorant", cfg.minorant, "simple | opt | exact | classical | eta=<r> | a=<r>,c=<r> (also optimal, parametric(<r>), explicit(<a>,<c>))");
        sub->add_option("--eps", cfg.eps, "zero threshold relative to A(0,0)")->capture_default_str();
    };
    auto output_opts = [&](CLI::App* sub) {
        sub->add_option("--out", cfg.out, "output directory (default: stdout)");
        sub->add_option("--format", cfg.format, "json | csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    };

    auto* constants = app.add_subcommand("constants", "optimized minorant constants per q, and the quoted inequalities");
    constants->add_option("--q", cfg.qs, "moment orders")->delimiter(',');
    output_opts(constants);

    auto* analyze = app.add_subcommand("analyze", "norms, dispersions and the Heisenberg ratio of a signal");
    signal_opts(analyze);
    output_opts(analyze);

    auto* certify = app.add_subcommand("certify", "certified zero-free region, validated against ray scans");
    signal_opts(certify);
    output_opts(certify);
    certify->add_option("--mode", cfg.mode, "rhombus | star")->capture_default_str();
    certify->add_option("--dirs", cfg.dirs, "number of directions in [0, pi)")->capture_default_str()->check(CLI::PositiveNumber);
    certify->add_option("--region", cfg.region_path, "re-validate a region JSON instead of computing one");

    auto* scan = app.add_subcommand("scan", "ambiguity grid and ray scans");
    signal_opts(scan);
    output_opts(scan);
    scan->add_option("--dirs", cfg.dirs, "number of ray directions")->capture_default_str()->check(CLI::PositiveNumber);
    scan->add_option("--rmax", cfg.rmax, "ray length")->capture_default_str();
    scan->add_option("--span", cfg.span, "grid covers [-span, span]^2")->capture_default_str();
    scan->add_option("--points", cfg.points, "grid points per axis")->capture_default_str();

    auto* ortho = app.add_subcommand("ortho", "orthogonality bounds for translates and modulations");
    signal_opts(ortho);
    output_opts(ortho);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? ok : usage;
    }

    try {
        if (*constants) return cmd_constants(cfg);
        if (*analyze) return cmd_analyze(cfg);
        if (*certify) return cmd_certify(cfg);
        if (*scan) return cmd_scan(cfg);
        if (*ortho) return cmd_ortho(cfg);
    } catch (const az::InfiniteMoment& e) {
        std::cerr << "error: " << e.what() << "\n";
        return infinite;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    } catch (const az::InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    }
    return usage;
}
