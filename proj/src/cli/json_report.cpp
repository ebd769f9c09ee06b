#include "json_report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace subord::cli {

namespace {

void write_float(std::string& out, double v) {
    if (!std::isfinite(v)) {
        out += "null";
        return;
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

void write(std::string& out, const Json& j, int depth) {
    const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
    const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
    switch (j.type()) {
    case Json::value_t::object: {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (const auto& [key, value] : j.items()) {
            if (!first) {
                out += ",\n";
            }
            first = false;
            out += pad;
            out += Json(key).dump();
            out += ": ";
            write(out, value, depth + 1);
        }
        out += "\n" + close_pad + "}";
        return;
    }
    case Json::value_t::array: {
        if (j.empty()) {
            out += "[]";
            return;
        }
        // Short numeric arrays (complex pairs, m grids) stay on one line.
        const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_number(); });
        if (flat) {
            out += "[";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) {
                    out += ", ";
                }
                write(out, j[i], depth + 1);
            }
            out += "]";
            return;
        }
        out += "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i) {
                out += ",\n";
            }
            out += pad;
            write(out, j[i], depth + 1);
        }
        out += "\n" + close_pad + "]";
        return;
    }
    case Json::value_t::number_float:
        write_float(out, j.get<double>());
        return;
    default:
        out += j.dump();
        return;
    }
}

Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

} // namespace

std::string dump(const Json& j) {
    std::string out;
    write(out, j, 0);
    out += "\n";
    return out;
}

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json series_json(const std::vector<Complex>& coeffs) {
    Json arr = Json::array();
    for (const auto& c : coeffs) {
        arr.push_back(complex_json(c));
    }
    return arr;
}

std::vector<Complex> parse_series(const Json& j) {
    if (!j.is_array() || j.empty()) {
        throw std::invalid_argument("series must be a non-empty JSON array of [re, im] pairs");
    }
    std::vector<Complex> out;
    out.reserve(j.size());
    for (const auto& e : j) {
        if (e.is_number()) {
            out.emplace_back(e.get<double>(), 0.0);
        } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
            out.emplace_back(e[0].get<double>(), e[1].get<double>());
        } else {
            throw std::invalid_argument("series entries must be [re, im] pairs");
        }
    }
    return out;
}

Json params_json(Family family, const TheoremParams& params, bool with_beta) {
    Json j;
    j["A"] = params.outer.upper();
    j["B"] = params.outer.lower();
    j["D"] = params.inner.upper();
    j["E"] = params.inner.lower();
    if (with_beta) {
        j["beta"] = complex_json(params.beta);
    }
    if (family == Family::ConvexComboDeriv || family == Family::ConvexComboDerivOverP) {
        j["alpha"] = params.alpha;
    }
    if (family == Family::BriotBouquet) {
        j["gamma"] = params.gamma;
    }
    if (family_uses_k(family)) {
        j["k"] = params.k;
    }
    return j;
}

Json report_json(const AdmissibilityReport& report) {
    Json j;
    j["min_chi"] = finite_or_null(report.min_chi);
    j["argmin"] = Json{{"theta", report.argmin_theta}, {"m", report.argmin_m}};
    j["pass"] = report.pass;
    j["tolerance"] = report.tolerance;
    j["grid"] = Json{{"n_theta", report.n_theta}, {"m_values", report.m_values}};
    j["total_points"] = report.total_points;
    j["guarded_points"] = report.guarded_points;
    return j;
}

Json verdict_json(const SampleVerdict& verdict) {
    Json j;
    j["n_total"] = verdict.n_total;
    j["n_hypothesis_true"] = verdict.n_hypothesis_true;
    j["n_violations"] = verdict.n_violations;
    j["skipped"] = verdict.skipped;
    Json vs = Json::array();
    for (const auto& v : verdict.violations) {
        Json e;
        e["seed"] = v.seed;
        e["witness"] = complex_json(v.witness);
        e["hypothesis_margin"] = v.hypothesis_margin;
        e["conclusion_margin"] = v.conclusion_margin;
        e["coefficients"] = series_json(v.coefficients);
        vs.push_back(std::move(e));
    }
    j["violations"] = std::move(vs);
    return j;
}

} // namespace subord::cli
