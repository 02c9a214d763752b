#include "hvx/scenario.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace hvx {

namespace {

using nlohmann::json;

double require_number(const json& j, const std::string& field)
{
    if (!j.contains(field) || !j[field].is_number()) {
        throw ScenarioParseError("scenario: missing or non-numeric field '" + field + "'");
    }
    return j[field].get<double>();
}

} // namespace

Configuration Scenario::to_configuration() const
{
    std::vector<HPoint> pts;
    std::vector<double> gammas;
    pts.reserve(vortices.size());
    gammas.reserve(vortices.size());
    for (const Vortex& v : vortices) {
        pts.push_back(lift(v.x, v.y));
        gammas.push_back(v.gamma);
    }
    return Configuration(std::move(pts), std::move(gammas));
}

Scenario parse_scenario(const std::string& json_text)
{
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ScenarioParseError(std::string("scenario: invalid JSON: ") + e.what());
    }
    Scenario sc;
    if (!j.contains("vortices") || !j["vortices"].is_array() || j["vortices"].empty()) {
        throw ScenarioParseError("scenario: field 'vortices' must be a non-empty array");
    }
    for (const json& jv : j["vortices"]) {
        Scenario::Vortex v;
        v.x = require_number(jv, "x");
        v.y = require_number(jv, "y");
        v.gamma = require_number(jv, "gamma");
        if (v.gamma == 0.0) throw ScenarioParseError("scenario: field 'gamma' must be nonzero");
        sc.vortices.push_back(v);
    }
    if (j.contains("t_end")) sc.t_end = require_number(j, "t_end");
    if (j.contains("sample_dt")) sc.sample_dt = require_number(j, "sample_dt");
    if (j.contains("integrator")) {
        const json& ji = j["integrator"];
        if (!ji.is_object()) throw ScenarioParseError("scenario: field 'integrator' must be an object");
        if (ji.contains("rel_tol")) sc.integrator.rel_tol = require_number(ji, "rel_tol");
        if (ji.contains("abs_tol")) sc.integrator.abs_tol = require_number(ji, "abs_tol");
        if (ji.contains("max_step")) sc.integrator.max_step = require_number(ji, "max_step");
        if (ji.contains("renormalize_each_step")) {
            if (!ji["renormalize_each_step"].is_boolean()) {
                throw ScenarioParseError(
                    "scenario: field 'renormalize_each_step' must be a boolean");
            }
            sc.integrator.renormalize_each_step = ji["renormalize_each_step"].get<bool>();
        }
    }
    return sc;
}

Scenario load_scenario(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ScenarioParseError("scenario: cannot open file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

std::string format_real(double value)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

void write_trajectory_csv(std::ostream& os, const std::vector<TrajectorySample>& samples)
{
    if (samples.empty()) return;
    const int n = samples.front().config.size();
    os << "t";
    for (int i = 1; i <= n; ++i) os << ",x" << i << ",y" << i << ",z" << i;
    os << ",H,mux,muy,muz,h2_residual\n";
    for (const TrajectorySample& s : samples) {
        os << format_real(s.t);
        for (int i = 0; i < n; ++i) {
            const Vec3& p = s.config.point(i).vec();
            os << ',' << format_real(p.x()) << ',' << format_real(p.y()) << ','
               << format_real(p.z());
        }
        os << ',' << format_real(s.H) << ',' << format_real(s.mu.x()) << ','
           << format_real(s.mu.y()) << ',' << format_real(s.mu.z()) << ','
           << format_real(s.h2_residual) << '\n';
    }
}

} // namespace hvx
