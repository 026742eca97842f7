// Command-line surface: solve the admissibility constraint, dump field
// grids, run the verification suites, and print collision asymptotics.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ccmkdv/assembly.hpp"
#include "ccmkdv/config.hpp"
#include "ccmkdv/reduction.hpp"
#include "ccmkdv/tau.hpp"
#include "ccmkdv/verifier.hpp"

using ccmkdv::Cx;
using json = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double parse_double(const std::string& s, const std::string& what) {
    size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw UsageError("cannot parse " + what + ": '" + s + "'");
    }
    if (pos != s.size()) throw UsageError("cannot parse " + what + ": '" + s + "'");
    return v;
}

// "a", "a+bi", "a-bi", "bi", "i", "-i"
Cx parse_complex(std::string s, const std::string& what) {
    std::erase(s, ' ');
    if (s.empty()) throw UsageError("empty complex value for " + what);
    if (s.back() != 'i' && s.back() != 'j') return {parse_double(s, what), 0.0};
    s.pop_back();
    // split at the last +/- that is not a leading sign or an exponent sign
    size_t split = std::string::npos;
    for (size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string::npos) {
        if (s.empty() || s == "+" || s == "-") return {0.0, s == "-" ? -1.0 : 1.0};
        return {0.0, parse_double(s, what)};
    }
    const std::string re = s.substr(0, split);
    std::string im = s.substr(split);
    if (im == "+") im = "1";
    if (im == "-") im = "-1";
    return {parse_double(re, what), parse_double(im, what)};
}

std::array<double, 2> parse_pair(const std::string& s, const std::string& what) {
    const size_t comma = s.find(',');
    if (comma == std::string::npos) throw UsageError(what + " expects two comma-separated values");
    return {parse_double(s.substr(0, comma), what), parse_double(s.substr(comma + 1), what)};
}

struct GridSpec {
    double x_lo{-10.0}, x_hi{10.0};
    int nx{201};
    double t_lo{-5.0}, t_hi{5.0};
    int nt{41};
};

// "xlo:xhi:nx,tlo:thi:nt"
GridSpec parse_grid(const std::string& s) {
    GridSpec g;
    const size_t comma = s.find(',');
    if (comma == std::string::npos) throw UsageError("grid expects 'xlo:xhi:nx,tlo:thi:nt'");
    auto axis = [](const std::string& part, double& lo, double& hi, int& n) {
        const size_t c1 = part.find(':');
        const size_t c2 = part.find(':', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos) {
            throw UsageError("grid axis expects 'lo:hi:n'");
        }
        lo = parse_double(part.substr(0, c1), "grid bound");
        hi = parse_double(part.substr(c1 + 1, c2 - c1 - 1), "grid bound");
        n = static_cast<int>(parse_double(part.substr(c2 + 1), "grid count"));
        if (n < 2) throw UsageError("grid counts must be >= 2");
        if (!std::isfinite(lo) || !std::isfinite(hi) || hi <= lo) {
            throw UsageError("grid range must be finite and increasing");
        }
    };
    axis(s.substr(0, comma), g.x_lo, g.x_hi, g.nx);
    axis(s.substr(comma + 1), g.t_lo, g.t_hi, g.nt);
    return g;
}

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt_complex(Cx v) {
    std::string s = fmt17(v.real());
    s += (v.imag() < 0 ? "-" : "+");
    s += fmt17(std::abs(v.imag()));
    s += "i";
    return s;
}

// Options shared by eval/verify/asym; mirrors the soliton configuration.
struct PhysicsOpts {
    std::string rho = "1,1";
    std::string alpha;
    double c = 1.0;
    std::vector<std::string> p;
    std::vector<std::string> xi0;
    bool paper_rounded = false;
    std::string conj_sign = "plus";
    double reduction_tol = 0.0;
    std::string config_file;
};

void add_physics_options(CLI::App* sub, PhysicsOpts& o) {
    sub->add_option("--rho", o.rho, "background amplitudes rho1,rho2")->capture_default_str();
    sub->add_option("--alpha", o.alpha, "carrier wavenumbers alpha1,alpha2")->required();
    sub->add_option("--c", o.c, "nonlinearity coefficient")->capture_default_str();
    sub->add_option("--p", o.p, "spectral parameter a+bi (repeatable)");
    sub->add_option("--xi0", o.xi0, "phase constant a+bi (repeatable)");
    sub->add_flag("--paper-rounded", o.paper_rounded,
                  "accept two-decimal figure parameters (constraint tolerance 2e-2)");
    sub->add_option("--conj-sign", o.conj_sign,
                    "sign of the i*pi/2 conjugate phase offset: plus|minus")
        ->check(CLI::IsMember({"plus", "minus"}))
        ->capture_default_str();
    sub->add_option("--reduction-tol", o.reduction_tol,
                    "override the construction-time constraint tolerance");
    sub->add_option("--config", o.config_file,
                    "read options from a config file (command-line flags win)");
}

// Key/value config reader matching the emitted format: key="value" or
// key=["a","b"] lines, # comments, [section] headers ignored. Returns keys
// in file order.
std::vector<std::pair<std::string, std::vector<std::string>>> read_config_file(
    const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ccmkdv::InvalidConfigError("cannot read config file: " + path);
    std::vector<std::pair<std::string, std::vector<std::string>>> items;
    auto strip = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return (b == std::string::npos) ? std::string{} : s.substr(b, e - b + 1);
    };
    auto unquote = [&](std::string s) {
        s = strip(s);
        if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') ||
                              (s.front() == '\'' && s.back() == '\''))) {
            return s.substr(1, s.size() - 2);
        }
        return s;
    };
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = strip(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[' && t.back() == ']') continue;
        const size_t eq = t.find('=');
        if (eq == std::string::npos) {
            throw ccmkdv::InvalidConfigError("config line " + std::to_string(lineno) +
                                             " is not key=value: " + t);
        }
        const std::string key = strip(t.substr(0, eq));
        std::string value = strip(t.substr(eq + 1));
        std::vector<std::string> values;
        if (!value.empty() && value.front() == '[' && value.back() == ']') {
            std::string inner = value.substr(1, value.size() - 2);
            std::stringstream ss(inner);
            std::string item;
            while (std::getline(ss, item, ',')) {
                const std::string v = unquote(item);
                if (!v.empty()) values.push_back(v);
            }
        } else {
            values.push_back(unquote(value));
        }
        items.emplace_back(key, std::move(values));
    }
    return items;
}

// Loads --config contents as extra flags, skipping keys already given on the
// command line.
void apply_config_file(std::vector<std::string>& args) {
    std::string path;
    for (size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    }
    if (path.empty()) return;
    for (const auto& [key, values] : read_config_file(path)) {
        if (key == "config" || key == "emit-config") continue;
        const std::string flag = "--" + key;
        bool present = false;
        for (const auto& a : args) {
            if (a == flag || a.rfind(flag + "=", 0) == 0) {
                present = true;
                break;
            }
        }
        if (present) continue;
        for (const auto& v : values) args.push_back(flag + "=" + v);
    }
}

ccmkdv::SolitonConfig build_config(const PhysicsOpts& o) {
    if (o.alpha.empty()) throw UsageError("--alpha is required");
    std::vector<Cx> ps, xi0s;
    for (const auto& s : o.p) ps.push_back(parse_complex(s, "--p"));
    for (const auto& s : o.xi0) xi0s.push_back(parse_complex(s, "--xi0"));
    const auto policy = o.paper_rounded ? ccmkdv::ReductionCheck::paper_rounded
                                        : ccmkdv::ReductionCheck::strict;
    const auto sign = (o.conj_sign == "minus") ? ccmkdv::ConjSign::minus : ccmkdv::ConjSign::plus;
    return ccmkdv::SolitonConfig(parse_pair(o.rho, "--rho"), parse_pair(o.alpha, "--alpha"), ps,
                                 xi0s, o.c, policy, sign, o.reduction_tol);
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ccmkdv::Error("cannot open output file: " + path);
    out << content;
    if (!out.good()) throw ccmkdv::Error("write failed: " + path);
}

void emit_config_if_requested(CLI::App* sub, const std::string& path) {
    if (path.empty()) return;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ccmkdv::Error("cannot open config output: " + path);
    // only explicitly set options; defaults reapply identically on re-read
    out << sub->config_to_str(false, false);
}

// ---------------------------------------------------------------------------
// params

int cmd_params(const std::string& rho_s, const std::string& alpha_s, double c,
               std::optional<double> im, std::optional<double> im2, const std::string& im_range,
               const std::string& bracket_s, const std::string& format, const std::string& out) {
    const auto rho = parse_pair(rho_s, "--rho");
    const auto alpha = parse_pair(alpha_s, "--alpha");
    const double sc = std::sqrt(c);
    const std::array<double, 2> rho_eff{sc * rho[0], sc * rho[1]};
    std::pair<double, double> bracket{0.1, 3.0};
    if (!bracket_s.empty()) {
        const auto b = parse_pair(bracket_s, "--bracket");
        bracket = {b[0], b[1]};
    }

    ccmkdv::FamilyScan scan;
    if (!im_range.empty()) {
        const size_t c1 = im_range.find(':');
        const size_t c2 = im_range.find(':', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos) {
            throw UsageError("--im-range expects 'lo:hi:n'");
        }
        const double lo = parse_double(im_range.substr(0, c1), "--im-range");
        const double hi = parse_double(im_range.substr(c1 + 1, c2 - c1 - 1), "--im-range");
        const int n = static_cast<int>(parse_double(im_range.substr(c2 + 1), "--im-range"));
        scan = ccmkdv::family_scan(rho_eff, alpha, lo, hi, n, bracket);
    } else {
        if (!im.has_value()) throw UsageError("params needs --im or --im-range");
        std::vector<double> ims{*im};
        if (im2.has_value()) ims.push_back(*im2);
        int idx = 0;
        for (double v : ims) {
            try {
                const double re = ccmkdv::solve_re(v, rho_eff, alpha, bracket);
                const Cx p{re, v};
                scan.points.push_back({p, ccmkdv::reduction_residual(p, rho_eff, alpha)});
            } catch (const ccmkdv::Error& e) {
                scan.failures.push_back({idx, v, e.what()});
            }
            ++idx;
        }
    }

    if (format == "json") {
        json doc;
        doc["points"] = json::array();
        for (const auto& pt : scan.points) {
            doc["points"].push_back(
                {{"re", pt.p.real()}, {"im", pt.p.imag()}, {"residual", pt.residual}});
        }
        doc["failures"] = json::array();
        for (const auto& f : scan.failures) {
            doc["failures"].push_back({{"index", f.index}, {"im", f.im}, {"message", f.message}});
        }
        write_output(out, doc.dump(2) + "\n");
    } else {
        std::ostringstream os;
        for (const auto& pt : scan.points) {
            os << "p = " << fmt_complex(pt.p) << "  residual = " << fmt17(pt.residual) << "\n";
        }
        for (const auto& f : scan.failures) {
            os << "failed at Im(p) = " << fmt17(f.im) << ": " << f.message << "\n";
        }
        write_output(out, os.str());
    }
    return scan.failures.empty() ? 0 : 2;
}

// ---------------------------------------------------------------------------
// eval

int cmd_eval(const PhysicsOpts& phys, const std::string& grid_s, const std::string& backend,
             const std::string& format, const std::string& out) {
    const ccmkdv::SolitonConfig config = build_config(phys);
    for (const auto& w : config.warnings()) std::cerr << "warning: " << w << "\n";
    const GridSpec grid = parse_grid(grid_s);

    const bool use_pfaffian = (backend == "pfaffian");
    std::optional<ccmkdv::FieldEvaluator> eval;
    std::optional<ccmkdv::GeneralTau> tau;
    if (use_pfaffian || config.n() > 5) {
        tau.emplace(ccmkdv::GeneralTau::from_config(config));
    } else {
        eval.emplace(config);
    }

    const double gamma = config.frame_shift();
    auto sample = [&](double x, double t) -> std::pair<ccmkdv::FieldSample, double> {
        if (eval.has_value()) {
            const double m = std::abs(eval->f_value(x, t).real());
            ccmkdv::FieldSample s;
            try {
                s = (*eval)(x, t);
            } catch (const ccmkdv::NearSingularError&) {
                // report the row; the ratio may be huge but is still the value
                const Cx f = eval->f_value(x, t);
                const ccmkdv::SolitonConfig& cfg = eval->config();
                const Cx g1 = ccmkdv::tau_eval(cfg, {1, 0}, x - gamma * t, t);
                const Cx g2 = ccmkdv::tau_eval(cfg, {0, 1}, x - gamma * t, t);
                s.x = x;
                s.t = t;
                const Cx ph1 = std::exp(Cx{0.0, cfg.alpha()[0] * x - cfg.omega(0) * t});
                const Cx ph2 = std::exp(Cx{0.0, cfg.alpha()[1] * x - cfg.omega(1) * t});
                s.u1 = cfg.rho()[0] * (g1 / f) * ph1;
                s.u2 = cfg.rho()[1] * (g2 / f) * ph2;
            }
            return {s, m};
        }
        const double xt = x - gamma * t;
        const auto f = tau->eval_pfaffian_scaled({0, 0}, xt, t);
        const auto g1 = tau->eval_pfaffian_scaled({1, 0}, xt, t);
        const auto g2 = tau->eval_pfaffian_scaled({0, 1}, xt, t);
        ccmkdv::FieldSample s;
        s.x = x;
        s.t = t;
        s.u1 = config.rho()[0] * (g1.mantissa / f.mantissa) *
               std::exp(Cx{0.0, config.alpha()[0] * x - config.omega(0) * t});
        s.u2 = config.rho()[1] * (g2.mantissa / f.mantissa) *
               std::exp(Cx{0.0, config.alpha()[1] * x - config.omega(1) * t});
        double fabs = std::abs(f.mantissa);
        if (f.log_scale < 700.0) fabs *= std::exp(std::min(f.log_scale, 700.0));
        return {s, fabs};
    };

    double min_f = std::numeric_limits<double>::infinity();
    int warned = 0;
    std::ostringstream os;
    const char* gnuplot =
        "# gnuplot: set datafile separator ','; splot FILE using 1:2:5 with pm3d\n";
    json rows = json::array();
    if (format == "csv") {
        os << gnuplot;
        os << "x,t,re_u1,im_u1,abs_u1,re_u2,im_u2,abs_u2,abs_f\n";
    }
    for (int it = 0; it < grid.nt; ++it) {
        const double t = grid.t_lo + (grid.t_hi - grid.t_lo) * it / (grid.nt - 1);
        for (int ix = 0; ix < grid.nx; ++ix) {
            const double x = grid.x_lo + (grid.x_hi - grid.x_lo) * ix / (grid.nx - 1);
            ccmkdv::FieldSample s;
            double fabs = 0.0;
            std::tie(s, fabs) = sample(x, t);
            min_f = std::min(min_f, fabs);
            const double margin =
                eval.has_value() ? eval->f_margin(x, t) : fabs;  // pfaffian path: raw |f|
            if (margin < ccmkdv::FieldEvaluator::kSingularTol) {
                if (warned < 100) {
                    std::cerr << "warning: near-singular row at x = " << fmt17(x)
                              << ", t = " << fmt17(t) << ", |f| margin = " << fmt17(margin)
                              << "\n";
                } else if (warned == 100) {
                    std::cerr << "warning: further near-singular rows suppressed\n";
                }
                ++warned;
            }
            if (format == "csv") {
                os << fmt17(x) << ',' << fmt17(t) << ',' << fmt17(s.u1.real()) << ','
                   << fmt17(s.u1.imag()) << ',' << fmt17(std::abs(s.u1)) << ','
                   << fmt17(s.u2.real()) << ',' << fmt17(s.u2.imag()) << ','
                   << fmt17(std::abs(s.u2)) << ',' << fmt17(fabs) << "\n";
            } else {
                rows.push_back({x, t, s.u1.real(), s.u1.imag(), std::abs(s.u1), s.u2.real(),
                                s.u2.imag(), std::abs(s.u2), fabs});
            }
        }
    }
    if (format == "json") {
        json doc;
        doc["columns"] = {"x", "t", "re_u1", "im_u1", "abs_u1",
                          "re_u2", "im_u2", "abs_u2", "abs_f"};
        doc["rows"] = std::move(rows);
        write_output(out, doc.dump(2) + "\n");
    } else {
        write_output(out, os.str());
    }
    std::cerr << "min |f| over the grid = " << fmt17(min_f) << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// verify

struct SuiteThresholds {
    double bilinear = 1e-9;
    double toda = 1e-9;
    double pde = 1e-9;
    double conjugacy = 1e-9;
    double evolve_sup = 1e-4;
    double order_window = 0.3;
};

json report_json(const ccmkdv::ResidualReport& rep, double threshold, bool pass) {
    return json{{"suite", rep.equation},
                {"points", rep.points_evaluated},
                {"skipped", rep.points_skipped},
                {"max_abs", rep.max_abs},
                {"normalization", rep.normalization},
                {"relative", rep.relative()},
                {"threshold", threshold},
                {"pass", pass},
                {"worst_point", {{"x", rep.worst.x}, {"t", rep.worst.t}}},
                {"note", rep.note}};
}

int cmd_verify(const PhysicsOpts& phys, std::string suites_s, int npoints, uint64_t seed,
               double evolve_dx, double evolve_T, double evolve_cfl,
               const std::string& evolve_domain_s, const std::string& out) {
    ccmkdv::SolitonConfig config = build_config(phys);
    for (const auto& w : config.warnings()) std::cerr << "warning: " << w << "\n";

    std::vector<std::string> suites;
    {
        std::stringstream ss(suites_s);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (!item.empty()) suites.push_back(item);
        }
    }
    const std::vector<std::string> known{"bilinear-a", "bilinear-b", "bilinear-c", "toda",
                                         "pde",        "evolve",     "conjugacy"};
    for (const auto& s : suites) {
        if (std::find(known.begin(), known.end(), s) == known.end()) {
            throw UsageError("unknown suite: " + s);
        }
    }
    auto wants = [&](const std::string& s) {
        return std::find(suites.begin(), suites.end(), s) != suites.end();
    };

    SuiteThresholds th;
    std::string relax_note;
    if (phys.paper_rounded) {
        const double relaxed = std::max(1e-9, 30.0 * config.max_reduction_residual());
        std::ostringstream note;
        note << "constraint satisfied only to " << config.max_reduction_residual()
             << " (rounded figure parameters); threshold relaxed to " << relaxed;
        relax_note = note.str();
        th.toda = th.pde = relaxed;  // constraint-sensitive identities
    }

    std::mt19937_64 gen{seed};
    std::uniform_real_distribution<double> ux(-10.0, 10.0), ut(-5.0, 5.0), utl(-2.0, 2.0);
    std::vector<ccmkdv::GridPoint> frame_pts(npoints), lab_pts(npoints);
    for (auto& p : frame_pts) p = {ux(gen), ut(gen)};
    for (auto& p : lab_pts) p = {ux(gen), utl(gen)};

    json reports = json::array();
    bool all_pass = true;
    std::string worst_line;
    auto add = [&](const ccmkdv::ResidualReport& rep, double threshold) {
        const bool pass = rep.relative() <= threshold;
        all_pass = all_pass && pass;
        reports.push_back(report_json(rep, threshold, pass));
        std::cout << (pass ? "pass" : "FAIL") << "  " << rep.equation
                  << "  relative = " << fmt17(rep.relative()) << "  (threshold " << threshold
                  << ")\n";
        if (!pass) {
            std::ostringstream os;
            os << rep.equation << " worst point: x = " << fmt17(rep.worst.x)
               << ", t = " << fmt17(rep.worst.t) << ", relative = " << fmt17(rep.relative());
            worst_line = os.str();
        }
    };

    if (wants("bilinear-a") || wants("bilinear-b") || wants("bilinear-c")) {
        const ccmkdv::BilinearReports reps = ccmkdv::bilinear_residuals(config, frame_pts);
        // the constrained identity inherits the figure-parameter slack
        const double cth = phys.paper_rounded ? th.toda : th.bilinear;
        if (wants("bilinear-a")) add(reps.g1, th.bilinear);
        if (wants("bilinear-b")) add(reps.g2, th.bilinear);
        if (wants("bilinear-c")) {
            ccmkdv::ResidualReport r = reps.f;
            if (phys.paper_rounded) r.note = relax_note;
            add(r, cth);
        }
    }
    if (wants("toda")) {
        ccmkdv::ResidualReport r = ccmkdv::toda_residual(config, frame_pts);
        if (phys.paper_rounded) r.note = relax_note;
        add(r, th.toda);
    }
    if (wants("conjugacy")) {
        for (const ccmkdv::TauIndex idx : {ccmkdv::TauIndex{0, 0}, ccmkdv::TauIndex{1, 0},
                                           ccmkdv::TauIndex{0, 1}}) {
            ccmkdv::ResidualReport r = ccmkdv::verify_conjugacy(config, idx, frame_pts);
            r.equation = "conjugacy(" + std::to_string(idx.k1) + "," + std::to_string(idx.k2) + ")";
            add(r, th.conjugacy);
        }
    }
    if (wants("pde")) {
        const auto reps = ccmkdv::pde_residual(config, lab_pts);
        for (auto r : reps) {
            if (phys.paper_rounded) r.note = relax_note;
            add(r, th.pde);
        }
    }
    if (wants("evolve")) {
        double xlo = -20.0, xhi = 20.0;
        if (!evolve_domain_s.empty()) {
            const auto d = parse_pair(evolve_domain_s, "--evolve-domain");
            xlo = d[0];
            xhi = d[1];
        }
        const ccmkdv::EvolveReport er =
            ccmkdv::evolve_and_compare(config, xlo, xhi, evolve_dx, evolve_T, evolve_cfl);
        const bool pass =
            er.sup_error < th.evolve_sup && std::abs(er.order - 4.0) <= th.order_window;
        all_pass = all_pass && pass;
        reports.push_back(json{{"suite", "evolve"},
                               {"sup_error", er.sup_error},
                               {"sup_error_half", er.sup_error_half},
                               {"order", er.order},
                               {"dx", er.dx},
                               {"dt", er.dt},
                               {"steps", er.steps},
                               {"threshold", th.evolve_sup},
                               {"pass", pass}});
        std::cout << (pass ? "pass" : "FAIL") << "  evolve  sup_error = " << fmt17(er.sup_error)
                  << "  order = " << fmt17(er.order) << "\n";
    }

    json doc;
    doc["reports"] = std::move(reports);
    doc["all_pass"] = all_pass;
    if (!out.empty()) write_output(out, doc.dump(2) + "\n");
    if (!all_pass && !worst_line.empty()) std::cerr << worst_line << "\n";
    return all_pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// asym

int cmd_asym(const PhysicsOpts& phys, const std::string& format, const std::string& out) {
    const ccmkdv::SolitonConfig config = build_config(phys);
    if (config.n() != 2) {
        throw ccmkdv::InvalidConfigError("asym requires exactly two solitons (N = 2)");
    }
    const ccmkdv::InteractionConstants ic = ccmkdv::interaction_constants(config);
    const ccmkdv::PhaseShifts ps = ccmkdv::phase_shifts(config);
    const double shift1 = 0.5 * std::log(std::abs(ps.chi2 / ps.chi1)) / config.p()[0].real();
    const double shift2 = 0.5 * std::log(std::abs(ps.gamma1 / ps.gamma2)) / config.p()[1].real();
    const double T = ccmkdv::collision_time(config);

    json agreements = json::array();
    double worst_agreement = 0.0;
    for (int soliton : {1, 2}) {
        for (const auto epoch : {ccmkdv::Epoch::before, ccmkdv::Epoch::after}) {
            const double resid = ccmkdv::asymptotic_agreement(config, soliton, epoch, T);
            worst_agreement = std::max(worst_agreement, resid);
            agreements.push_back(
                {{"soliton", soliton},
                 {"epoch", epoch == ccmkdv::Epoch::before ? "before" : "after"},
                 {"t", epoch == ccmkdv::Epoch::before ? -T : T},
                 {"sup_difference", resid}});
        }
    }

    json doc;
    doc["C1"] = ic.C1;
    doc["C2"] = ic.C2;
    doc["A1"] = {ic.A1.real(), ic.A1.imag()};
    doc["A2"] = {ic.A2.real(), ic.A2.imag()};
    doc["B1"] = {ic.B1.real(), ic.B1.imag()};
    doc["B2"] = {ic.B2.real(), ic.B2.imag()};
    doc["M"] = ic.M;
    doc["chi1"] = {ps.chi1.real(), ps.chi1.imag()};
    doc["chi2"] = {ps.chi2.real(), ps.chi2.imag()};
    doc["gamma1"] = {ps.gamma1.real(), ps.gamma1.imag()};
    doc["gamma2"] = {ps.gamma2.real(), ps.gamma2.imag()};
    doc["spatial_shift_soliton1"] = shift1;
    doc["spatial_shift_soliton2"] = shift2;
    doc["separation_time"] = T;
    doc["asymptotic_agreement"] = std::move(agreements);

    if (format == "json") {
        write_output(out, doc.dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << "C1 = " << fmt17(ic.C1) << "   C2 = " << fmt17(ic.C2) << "\n"
           << "A1 = " << fmt_complex(ic.A1) << "   A2 = " << fmt_complex(ic.A2) << "\n"
           << "B1 = " << fmt_complex(ic.B1) << "   B2 = " << fmt_complex(ic.B2) << "\n"
           << "M  = " << fmt17(ic.M) << "\n"
           << "chi1 = " << fmt_complex(ps.chi1) << "   chi2 = " << fmt_complex(ps.chi2) << "\n"
           << "gamma1 = " << fmt_complex(ps.gamma1) << "   gamma2 = " << fmt_complex(ps.gamma2)
           << "\n"
           << "spatial shift soliton 1 = " << fmt17(shift1) << "\n"
           << "spatial shift soliton 2 = " << fmt17(shift2) << "\n"
           << "separation time T = " << fmt17(T) << "\n"
           << "worst asymptotic agreement residual = " << fmt17(worst_agreement) << "\n";
        write_output(out, os.str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dark-dark soliton toolkit for the coupled complex mKdV equation"};
    app.require_subcommand(1);

    // params
    auto* params = app.add_subcommand("params", "solve the admissibility constraint");
    std::string pr_rho = "1,1", pr_alpha, pr_bracket, pr_imrange, pr_format = "text", pr_out;
    double pr_c = 1.0;
    std::optional<double> pr_im, pr_im2;
    params->add_option("--rho", pr_rho, "background amplitudes rho1,rho2")->capture_default_str();
    params->add_option("--alpha", pr_alpha, "carrier wavenumbers alpha1,alpha2")->required();
    params->add_option("--c", pr_c, "nonlinearity coefficient")->capture_default_str();
    params->add_option("--im", pr_im, "Im(p) to solve at");
    params->add_option("--im2", pr_im2, "second Im(p) to solve at");
    params->add_option("--im-range", pr_imrange, "scan 'lo:hi:n'");
    params->add_option("--bracket", pr_bracket, "Re(p) bracket 'lo,hi' (default 0.1,3)");
    params->add_option("--format", pr_format, "text|json")
        ->check(CLI::IsMember({"text", "json"}));
    params->add_option("--out", pr_out, "output path (default stdout)");
    std::string pr_config;
    params->add_option("--config", pr_config,
                       "read options from a config file (command-line flags win)");

    // eval
    auto* eval = app.add_subcommand("eval", "evaluate the fields on a grid");
    PhysicsOpts ev_phys;
    std::string ev_grid = "-10:10:201,-5:5:41", ev_backend = "expsum", ev_format = "csv", ev_out,
                ev_emit;
    add_physics_options(eval, ev_phys);
    eval->add_option("--grid", ev_grid, "grid 'xlo:xhi:nx,tlo:thi:nt'")->capture_default_str();
    eval->add_option("--backend", ev_backend, "expsum|pfaffian")
        ->check(CLI::IsMember({"expsum", "pfaffian"}));
    eval->add_option("--format", ev_format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    eval->add_option("--out", ev_out, "output path (default stdout)");
    eval->add_option("--emit-config", ev_emit, "write the resolved options to a config file");

    // verify
    auto* verify = app.add_subcommand("verify", "run the residual verification suites");
    PhysicsOpts vf_phys;
    std::string vf_suites = "bilinear-a,bilinear-b,bilinear-c,toda,pde,evolve,conjugacy";
    std::string vf_out, vf_domain, vf_emit;
    int vf_points = 200;
    uint64_t vf_seed = 2024;
    double vf_dx = 0.05, vf_T = 0.05, vf_cfl = 0.4;
    add_physics_options(verify, vf_phys);
    verify->add_option("--suite", vf_suites, "comma-separated suite list")->capture_default_str();
    verify->add_option("--points", vf_points, "random points per suite")->capture_default_str();
    verify->add_option("--seed", vf_seed, "random point seed")->capture_default_str();
    verify->add_option("--evolve-dx", vf_dx, "evolution grid spacing")->capture_default_str();
    verify->add_option("--evolve-T", vf_T, "evolution horizon")->capture_default_str();
    verify->add_option("--evolve-cfl", vf_cfl, "evolution cfl number (<= 0.5)")
        ->capture_default_str();
    verify->add_option("--evolve-domain", vf_domain, "evolution domain 'lo,hi' (default -20,20)");
    verify->add_option("--out", vf_out, "write the JSON report bundle here");
    verify->add_option("--emit-config", vf_emit, "write the resolved options to a config file");

    // asym
    auto* asym = app.add_subcommand("asym", "two-soliton collision constants and phase shifts");
    PhysicsOpts as_phys;
    std::string as_format = "text", as_out;
    add_physics_options(asym, as_phys);
    asym->add_option("--format", as_format, "text|json")->check(CLI::IsMember({"text", "json"}));
    asym->add_option("--out", as_out, "output path (default stdout)");

    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        apply_config_file(args);
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 64;
    } catch (const ccmkdv::InvalidConfigError& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return 65;
    }

    try {
        if (params->parsed()) {
            return cmd_params(pr_rho, pr_alpha, pr_c, pr_im, pr_im2, pr_imrange, pr_bracket,
                              pr_format, pr_out);
        }
        if (eval->parsed()) {
            emit_config_if_requested(eval, ev_emit);
            return cmd_eval(ev_phys, ev_grid, ev_backend, ev_format, ev_out);
        }
        if (verify->parsed()) {
            emit_config_if_requested(verify, vf_emit);
            return cmd_verify(vf_phys, vf_suites, vf_points, vf_seed, vf_dx, vf_T, vf_cfl,
                              vf_domain, vf_out);
        }
        if (asym->parsed()) {
            return cmd_asym(as_phys, as_format, as_out);
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 64;
    } catch (const ccmkdv::InvalidConfigError& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return 65;
    } catch (const ccmkdv::NoSignChangeError& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return 2;
    } catch (const ccmkdv::NonConvergenceError& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return 2;
    } catch (const ccmkdv::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
