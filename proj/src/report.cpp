#include "dgcurv/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace dgcurv {

namespace {

double parse_real(std::string_view text, const char* what) {
    const std::string s(text);
    char* end = nullptr;
    const double value = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || std::isnan(value))
        throw std::invalid_argument(std::string(what) + ": not a number: '" + s + "'");
    return value;
}

}  // namespace

double parse_alpha(std::string_view text) {
    const double alpha = parse_real(text, "alpha");
    if (!(alpha >= 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in [0, 1)");
    return alpha;
}

double parse_dimension(std::string_view text) {
    if (text == "inf" || text == "infinity" || text == "Inf") return kInfiniteDimension;
    const double m = parse_real(text, "m");
    if (!(m >= 1.0)) throw std::invalid_argument("m must be >= 1 or 'inf'");
    return m;
}

std::string format_real(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (x == 0.0) x = 0.0;  // drop the sign of -0
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

nlohmann::ordered_json json_real(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (std::isnan(x)) return nullptr;
    const double rounded = std::strtod(format_real(x).c_str(), nullptr);
    return rounded == 0.0 ? 0.0 : rounded;
}

namespace {

nlohmann::ordered_json vertex_json(const VertexReport& v) {
    nlohmann::ordered_json j;
    j["label"] = v.label;
    j["phi"] = json_real(v.phi);
    j["C"] = json_real(v.C);
    j["K_theorem"] = json_real(v.K_theorem);
    j["K_optimal"] = json_real(v.K_optimal);
    j["cd_holds"] = v.cd_holds;
    return j;
}

nlohmann::ordered_json summary_json(const CurvatureReport& r) {
    nlohmann::ordered_json s;
    s["min_K_theorem"] = json_real(r.min_K_theorem());
    s["min_K_optimal"] = json_real(r.min_K_optimal());
    s["all_cd_hold"] = r.all_cd_hold();
    return s;
}

}  // namespace

nlohmann::ordered_json analyze_json(const CurvatureReport& report) {
    nlohmann::ordered_json j;
    j["alpha"] = json_real(report.alpha);
    j["m"] = json_real(report.m);
    j["vertices"] = nlohmann::ordered_json::array();
    for (const auto& v : report.vertices) j["vertices"].push_back(vertex_json(v));
    j["summary"] = summary_json(report);
    return j;
}

nlohmann::ordered_json verify_json(const CurvatureReport& report, std::optional<double> k_override) {
    nlohmann::ordered_json j;
    j["alpha"] = json_real(report.alpha);
    j["m"] = json_real(report.m);
    j["samples"] = report.samples;
    j["seed"] = report.seed;
    j["K_override"] = k_override ? json_real(*k_override) : nlohmann::ordered_json(nullptr);
    j["vertices"] = nlohmann::ordered_json::array();
    for (const auto& v : report.vertices) {
        auto vj = vertex_json(v);
        vj["K_checked"] = json_real(v.K_checked);
        vj["min_sample_residual"] = json_real(v.min_sample_residual);
        vj["sample_violations"] = v.sample_violations;
        vj["C_at_least_one"] = v.c_at_least_one;
        j["vertices"].push_back(std::move(vj));
    }
    j["violations"] = nlohmann::ordered_json::array();
    for (const auto& v : report.violations) {
        nlohmann::ordered_json vj;
        vj["vertex"] = report.vertices[v.vertex].label;
        vj["source"] = v.source == Violation::Source::pencil ? "pencil" : "sample";
        vj["residual"] = json_real(v.residual);
        auto& f = vj["f"] = nlohmann::ordered_json::array();
        for (double x : v.f) f.push_back(json_real(x));
        j["violations"].push_back(std::move(vj));
    }
    auto summary = summary_json(report);
    summary["violations"] = report.violations.size();
    j["summary"] = std::move(summary);
    return j;
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string report_csv(const CurvatureReport& report) {
    std::string out = "label,phi,C,K_theorem,K_optimal,cd_holds\n";
    for (const auto& v : report.vertices) {
        out += csv_field(v.label) + ',' + format_real(v.phi) + ',' + format_real(v.C) + ',' +
               format_real(v.K_theorem) + ',' + format_real(v.K_optimal) + ',' + (v.cd_holds ? "true" : "false") +
               '\n';
    }
    return out;
}

}  // namespace dgcurv
