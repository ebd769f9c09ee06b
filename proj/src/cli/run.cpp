#include "subord/cli.hpp"

#include "json_report.hpp"
#include "subord/errors.hpp"
#include "subord/parallel.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace subord::cli {

namespace {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Flags {
    std::string family;
    std::string params_path;
    std::string out_path;
    std::string m_grid;
    std::string variant = "a";
    std::string series_path;
    double A = 0, B = 0, D = 0, E = 0;
    double beta = 1, beta_im = 0, alpha = 0, gamma = 0;
    int k = 0;
    int n_theta = 256;
    int samples = 100;
    int degree = 8;
    int truncation = 12;
    int leading_order = 1;
    int grid = kDefaultMembershipGrid;
    int points = 256;
    std::uint64_t seed = 1;
    double radius = kDefaultMembershipRadius;
    double tolerance = 1e-9;
    bool explore = false;
    bool from_p = false;
};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string names_list() {
    std::string s;
    for (auto f : kAllFamilies) {
        if (!s.empty()) {
            s += ", ";
        }
        s += family_name(f);
    }
    return s;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open " + path);
    }
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(path + ": " + e.what());
    }
}

Family require_family(const std::string& name) {
    if (name.empty()) {
        throw InputError("--family is required (one of: " + names_list() + ")");
    }
    auto f = parse_family(name);
    if (!f) {
        throw InputError("unknown family '" + name + "' (expected one of: " + names_list() + ")");
    }
    return *f;
}

// Flags override values from --params; every pair coefficient must come from one of them.
TheoremParams build_params(const CLI::App& sub, const Flags& fl, bool need_inner) {
    Json file = fl.params_path.empty() ? Json::object() : read_json_file(fl.params_path);
    if (!file.is_object()) {
        throw InputError("--params must hold a JSON object");
    }
    auto pick = [&](const char* flag, const char* key, double flag_value, std::optional<double> fallback) {
        const auto* opt = sub.get_option_no_throw(flag);
        if (opt != nullptr && opt->count() > 0) {
            return flag_value;
        }
        if (file.contains(key)) {
            if (!file[key].is_number()) {
                throw InputError(std::string("--params: '") + key + "' must be a number");
            }
            return file[key].get<double>();
        }
        if (fallback) {
            return *fallback;
        }
        throw InputError(std::string("missing ") + flag);
    };
    const double A = pick("--A", "A", fl.A, std::nullopt);
    const double B = pick("--B", "B", fl.B, std::nullopt);
    const double D = need_inner ? pick("--D", "D", fl.D, std::nullopt) : 1.0;
    const double E = need_inner ? pick("--E", "E", fl.E, std::nullopt) : 0.0;
    TheoremParams p{JanowskiPair(A, B), JanowskiPair(D, E)};
    p.beta = Complex(pick("--beta", "beta", fl.beta, 1.0), pick("--beta-im", "beta_im", fl.beta_im, 0.0));
    p.alpha = pick("--alpha", "alpha", fl.alpha, 0.0);
    p.gamma = pick("--gamma", "gamma", fl.gamma, 0.0);
    p.k = static_cast<int>(pick("--k", "k", fl.k, 0.0));
    return p;
}

std::vector<double> parse_m_grid(const std::string& text) {
    if (text.empty()) {
        return default_m_grid();
    }
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) {
                throw std::invalid_argument(item);
            }
        } catch (const std::exception&) {
            throw InputError("--m-grid: '" + item + "' is not a decimal number");
        }
    }
    return out;
}

unsigned sweep_threads() {
    const unsigned cap = threads_from_env();
    const unsigned hw = resolve_threads(0);
    return cap > 0 ? std::min(cap, hw) : hw;
}

void write_report(const Flags& fl, const Json& j) {
    if (fl.out_path.empty()) {
        return;
    }
    std::ofstream f(fl.out_path, std::ios::binary);
    if (!f) {
        throw InputError("cannot write " + fl.out_path);
    }
    f << dump(j);
}

Json header(const char* command) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["command"] = command;
    return j;
}

// Sweeps presuppose the family's condition; without --explore a false condition is a
// failed check rather than invalid input.
std::optional<int> gate_condition(Family family, const TheoremParams& params, const Flags& fl, std::ostream& out) {
    if (fl.explore) {
        return std::nullopt;
    }
    const auto res = check_condition(family, params);
    if (res.holds) {
        return std::nullopt;
    }
    out << family_name(family) << ": condition fails (margin " << fmt(res.margin)
        << "); rerun with --explore to sweep anyway\n";
    return kExitCheckFailed;
}

int cmd_check(const CLI::App& sub, const Flags& fl, std::ostream& out) {
    const Family family = require_family(fl.family);
    const auto params = build_params(sub, fl, true);
    const auto res = check_condition(family, params);
    Json j = header("check");
    j["family"] = family_name(family);
    j["params"] = params_json(family, params, true);
    j["holds"] = res.holds;
    j["margin"] = res.margin;
    if (is_affine(family)) {
        const auto c = condition_coeffs(family, params);
        j["affine"] = Json{{"a", c.a}, {"b", c.b}};
    }
    write_report(fl, j);
    out << family_name(family) << ": condition " << (res.holds ? "holds" : "fails") << " (margin " << fmt(res.margin)
        << ")\n";
    return res.holds ? kExitOk : kExitCheckFailed;
}

int cmd_min_beta(const CLI::App& sub, const Flags& fl, std::ostream& out) {
    const Family family = require_family(fl.family);
    const auto params = build_params(sub, fl, true);
    const auto c = condition_coeffs(family, params);
    const auto t = min_beta(family, params);
    Json j = header("min-beta");
    j["family"] = family_name(family);
    j["params"] = params_json(family, params, false);
    j["affine"] = Json{{"a", c.a}, {"b", c.b}};
    j["feasible"] = t.has_value();
    j["threshold"] = t ? Json(*t) : Json(nullptr);
    write_report(fl, j);
    if (t) {
        out << family_name(family) << ": minimal |beta| = " << fmt(*t) << "\n";
        return kExitOk;
    }
    out << family_name(family) << ": INFEASIBLE (" << c.description() << " has no solution)\n";
    return kExitCheckFailed;
}

int cmd_admissible(const CLI::App& sub, const Flags& fl, std::ostream& out) {
    const Family family = require_family(fl.family);
    const auto params = build_params(sub, fl, true);
    if (auto gated = gate_condition(family, params, fl, out)) {
        return *gated;
    }
    AdmissibilityOptions opt;
    opt.n_theta = fl.n_theta;
    opt.m_values = parse_m_grid(fl.m_grid);
    opt.tolerance = fl.tolerance;
    opt.explore = fl.explore;
    opt.threads = sweep_threads();
    const auto rep = admissibility_check(family, params, opt);
    const bool phi_ok = phi_check(family, params, opt.m_values);

    Json j = header("admissible");
    j["family"] = family_name(family);
    j["params"] = params_json(family, params, true);
    j["report"] = report_json(rep);
    j["phi_nondecreasing"] = phi_ok;
    write_report(fl, j);
    out << family_name(family) << ": min chi = " << fmt(rep.min_chi) << " at theta = " << fmt(rep.argmin_theta)
        << ", m = " << fmt(rep.argmin_m) << " (" << rep.guarded_points << "/" << rep.total_points
        << " points guarded) -> " << (rep.pass ? "PASS" : "FAIL") << "\n";
    return rep.pass ? kExitOk : kExitCheckFailed;
}

int cmd_trial(const CLI::App& sub, const Flags& fl, std::ostream& out) {
    const Family family = require_family(fl.family);
    const auto params = build_params(sub, fl, true);
    if (auto gated = gate_condition(family, params, fl, out)) {
        return *gated;
    }
    TrialOptions opt;
    opt.samples = fl.samples;
    opt.degree = fl.degree;
    opt.truncation = std::max(fl.truncation, fl.degree);
    opt.leading_order = fl.leading_order;
    opt.seed = fl.seed;
    opt.grid = fl.grid;
    opt.radius = fl.radius;
    opt.explore = fl.explore;
    opt.threads = sweep_threads();
    const auto v = implication_trial(family, params, opt);

    Json j = header("trial");
    j["family"] = family_name(family);
    j["params"] = params_json(family, params, true);
    j["options"] = Json{{"samples", opt.samples},           {"degree", opt.degree},
                        {"truncation", opt.truncation},     {"leading_order", opt.leading_order},
                        {"seed", opt.seed},                 {"grid", opt.grid},
                        {"radius", opt.radius},             {"explore", opt.explore}};
    j["verdict"] = verdict_json(v);
    write_report(fl, j);
    out << family_name(family) << ": " << v.n_total << " samples, " << v.n_hypothesis_true << " hypothesis-true, "
        << v.n_violations << " violations, " << v.skipped << " skipped\n";
    return v.n_violations == 0 ? kExitOk : kExitCheckFailed;
}

int cmd_starlike(const CLI::App& sub, const Flags& fl, std::ostream& out) {
    const auto variant = parse_variant(fl.variant);
    if (!variant) {
        throw InputError("unknown variant '" + fl.variant + "' (expected a, b, c, i or ii)");
    }
    if (fl.series_path.empty()) {
        throw InputError("--series is required");
    }
    const auto params = build_params(sub, fl, true);
    {
        const auto [family, k] = variant_family(*variant);
        TheoremParams governed = params;
        governed.k = k;
        validate(family, governed);
        if (auto gated = gate_condition(family, governed, fl, out)) {
            return *gated;
        }
    }
    auto coeffs = parse_series(read_json_file(fl.series_path));
    const AnalyticFn f = fl.from_p ? integrate_to_starlike(AnalyticFn(std::move(coeffs)), fl.truncation)
                                   : AnalyticFn(std::move(coeffs));
    StarlikeOptions opt;
    opt.grid = fl.grid;
    opt.radius = fl.radius;
    opt.explore = fl.explore;
    const auto r = starlike_sufficiency_check(f, *variant, params, opt);
    const auto [family, k] = variant_family(*variant);
    TheoremParams shown = params;
    shown.k = k;

    Json j = header("starlike");
    j["variant"] = variant_name(*variant);
    j["family"] = family_name(family);
    j["params"] = params_json(family, shown, true);
    j["condition"] = Json{{"holds", r.condition_holds}, {"margin", r.condition_margin}};
    j["hypothesis_margin"] = r.hypothesis_margin;
    j["hypothesis_witness"] = complex_json(r.hypothesis_witness);
    j["conclusion_margin"] = r.conclusion_margin;
    j["conclusion_witness"] = complex_json(r.conclusion_witness);
    j["f"] = series_json(f.coefficients());
    write_report(fl, j);
    const bool ok = r.hypothesis_margin > 0.0 && r.conclusion_margin > 0.0;
    out << "variant " << variant_name(*variant) << ": hypothesis margin " << fmt(r.hypothesis_margin)
        << ", conclusion margin " << fmt(r.conclusion_margin) << "\n";
    return ok ? kExitOk : kExitCheckFailed;
}

int cmd_region(const CLI::App& sub, const Flags& fl, std::ostream& out) {
    const auto params = build_params(sub, fl, false);
    if (fl.points < 1) {
        throw InputError("--points must be positive");
    }
    const auto& pair = params.outer;
    std::ostringstream csv;
    csv << "theta,re,im,chi\n";
    for (double theta : midpoint_angles(fl.points)) {
        const Complex w = janowski_map(std::polar(1.0, theta), pair);
        const double c = try_chi(w, pair).value_or(std::numeric_limits<double>::infinity());
        csv << fmt(theta) << ',' << fmt(w.real()) << ',' << fmt(w.imag()) << ',' << fmt(c) << '\n';
    }
    if (fl.out_path.empty()) {
        out << csv.str();
    } else {
        std::ofstream f(fl.out_path, std::ios::binary);
        if (!f) {
            throw InputError("cannot write " + fl.out_path);
        }
        f << csv.str();
        const auto region = region_descriptor(pair);
        if (const auto* d = std::get_if<Disk>(&region)) {
            out << "disk: center " << fmt(d->center.real()) << ", radius " << fmt(d->radius) << "\n";
        } else {
            out << "half-plane: Re w > " << fmt(std::get<HalfPlane>(region).re_min) << "\n";
        }
    }
    return kExitOk;
}

void add_pair_flags(CLI::App* sub, Flags& fl, bool inner) {
    sub->add_option("--A", fl.A, "upper coefficient of the conclusion class");
    sub->add_option("--B", fl.B, "lower coefficient of the conclusion class");
    if (inner) {
        sub->add_option("--D", fl.D, "upper coefficient of the hypothesis class");
        sub->add_option("--E", fl.E, "lower coefficient of the hypothesis class");
    }
    sub->add_option("--params", fl.params_path, "JSON object with any of A, B, D, E, beta, beta_im, alpha, gamma, k");
    sub->add_option("--out", fl.out_path, "write the report to this path");
}

void add_theorem_flags(CLI::App* sub, Flags& fl, bool with_family) {
    add_pair_flags(sub, fl, true);
    if (with_family) {
        sub->add_option("--family", fl.family, "condition family: " + names_list());
    }
    sub->add_option("--beta", fl.beta, "beta (real part)");
    sub->add_option("--beta-im", fl.beta_im, "beta (imaginary part)");
    sub->add_option("--alpha", fl.alpha);
    sub->add_option("--gamma", fl.gamma);
    sub->add_option("--k", fl.k, "exponent of p in the denominator");
}

} // namespace

unsigned threads_from_env() {
    const char* v = std::getenv("SUBORD_THREADS");
    if (v == nullptr || *v == '\0') {
        return 0;
    }
    char* end = nullptr;
    const unsigned long n = std::strtoul(v, &end, 10);
    if (*end != '\0' || n == 0 || n > 4096) {
        return 0;
    }
    return static_cast<unsigned>(n);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Flags fl;
    CLI::App app{"Differential subordination verification toolkit for Janowski classes", "subord"};
    app.require_subcommand(1);

    auto* check = app.add_subcommand("check", "evaluate a family's sufficient condition");
    add_theorem_flags(check, fl, true);

    auto* minb = app.add_subcommand("min-beta", "smallest |beta| satisfying a family's condition");
    add_theorem_flags(minb, fl, true);

    auto* adm = app.add_subcommand("admissible", "sweep the boundary admissibility condition");
    add_theorem_flags(adm, fl, true);
    adm->add_option("--n-theta", fl.n_theta, "number of theta midpoints");
    adm->add_option("--m-grid", fl.m_grid, "comma-separated m values (must contain 1)");
    adm->add_option("--tolerance", fl.tolerance);
    adm->add_flag("--explore", fl.explore, "run even when the condition fails");

    auto* trial = app.add_subcommand("trial", "randomized implication trial");
    add_theorem_flags(trial, fl, true);
    trial->add_option("--samples", fl.samples);
    trial->add_option("--degree", fl.degree);
    trial->add_option("--truncation", fl.truncation);
    trial->add_option("--leading-order", fl.leading_order);
    trial->add_option("--seed", fl.seed);
    trial->add_option("--grid", fl.grid);
    trial->add_option("--radius", fl.radius);
    trial->add_flag("--explore", fl.explore, "run even when the condition fails");

    auto* star = app.add_subcommand("starlike", "Janowski starlikeness sufficiency check for a series f");
    add_theorem_flags(star, fl, false);
    star->add_option("--variant", fl.variant, "a, b, c, i or ii");
    star->add_option("--series", fl.series_path, "JSON array of [re, im] coefficients of f");
    star->add_flag("--from-p", fl.from_p, "the series is p = zf'/f; integrate it to f first");
    star->add_option("--truncation", fl.truncation, "order used with --from-p");
    star->add_option("--grid", fl.grid);
    star->add_option("--radius", fl.radius);
    star->add_flag("--explore", fl.explore, "run even when the variant's condition fails");

    auto* region = app.add_subcommand("region", "emit the boundary curve of q(D) as CSV");
    add_pair_flags(region, fl, false);
    region->add_option("--points", fl.points);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    }

    try {
        if (check->parsed()) {
            return cmd_check(*check, fl, out);
        }
        if (minb->parsed()) {
            return cmd_min_beta(*minb, fl, out);
        }
        if (adm->parsed()) {
            return cmd_admissible(*adm, fl, out);
        }
        if (trial->parsed()) {
            return cmd_trial(*trial, fl, out);
        }
        if (star->parsed()) {
            return cmd_starlike(*star, fl, out);
        }
        return cmd_region(*region, fl, out);
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << "\n";
    } catch (const PoleError& e) {
        err << "error: " << e.what() << "\n";
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
    }
    return kExitInvalidInput;
}

} // namespace subord::cli
