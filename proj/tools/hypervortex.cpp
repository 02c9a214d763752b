#include "hvx/equilibria.hpp"
#include "hvx/scenario.hpp"
#include "hvx/stability.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

namespace {

using nlohmann::json;

constexpr int exit_ok = 0;
constexpr int exit_input_error = 2;
constexpr int exit_integration_failure = 3;
constexpr int exit_precondition = 4;

const char* momentum_type_name(hvx::MomentumType t)
{
    switch (t) {
    case hvx::MomentumType::Zero: return "zero";
    case hvx::MomentumType::Elliptic: return "elliptic";
    case hvx::MomentumType::Parabolic: return "parabolic";
    case hvx::MomentumType::Hyperbolic: return "hyperbolic";
    }
    return "?";
}

const char* isotropy_description(hvx::MomentumType t)
{
    switch (t) {
    case hvx::MomentumType::Zero: return "full group";
    case hvx::MomentumType::Elliptic: return "rotation";
    case hvx::MomentumType::Parabolic: return "upper-triangular unipotent";
    case hvx::MomentumType::Hyperbolic: return "diagonal";
    }
    return "?";
}

const char* modality_name(hvx::Modality m)
{
    switch (m) {
    case hvx::Modality::GmuStable: return "GmuStable";
    case hvx::Modality::GStable: return "GStable";
    case hvx::Modality::LeafwiseOnly: return "LeafwiseOnly";
    case hvx::Modality::NotFormallyStable: return "NotFormallyStable";
    case hvx::Modality::ZeroMomentumCase: return "ZeroMomentumCase";
    case hvx::Modality::Undetermined: return "Undetermined";
    }
    return "?";
}

const char* definiteness_name(hvx::Definiteness d)
{
    switch (d) {
    case hvx::Definiteness::Definite: return "Definite";
    case hvx::Definiteness::Indefinite: return "Indefinite";
    case hvx::Definiteness::Degenerate: return "Degenerate";
    }
    return "?";
}

std::ofstream open_output(const std::string& path)
{
    std::ofstream out(path);
    if (!out) throw hvx::ScenarioParseError("cannot open output file '" + path + "'");
    return out;
}

int cmd_simulate(const std::string& scenario_path, const std::string& out_path)
{
    const hvx::Scenario sc = hvx::load_scenario(scenario_path);
    const hvx::Configuration cfg = sc.to_configuration();
    std::vector<hvx::TrajectorySample> samples;
    bool failed = false;
    std::string failure;
    try {
        samples = hvx::integrate(cfg, sc.t_end, sc.integrator, sc.sample_dt);
    } catch (const hvx::IntegrationError& e) {
        samples = e.samples;
        failure = e.what();
        failed = true;
    }
    {
        std::ofstream out = open_output(out_path);
        hvx::write_trajectory_csv(out, samples);
    }
    json summary;
    if (!samples.empty()) {
        const auto& first = samples.front();
        const auto& last = samples.back();
        double max_res = 0.0;
        for (const auto& s : samples) max_res = std::max(max_res, s.h2_residual);
        summary["dH"] = last.H - first.H;
        summary["dmu"] = (last.mu - first.mu).norm();
        summary["max_h2_residual"] = max_res;
        summary["samples"] = samples.size();
        summary["accepted"] = last.step_stats.accepted;
        summary["rejected"] = last.step_stats.rejected;
    }
    if (failed) summary["error"] = failure;
    std::cout << summary.dump() << '\n';
    return failed ? exit_integration_failure : exit_ok;
}

int cmd_classify(const std::string& scenario_path)
{
    const hvx::Configuration cfg = hvx::load_scenario(scenario_path).to_configuration();
    const hvx::DualElement mu = hvx::momentum(cfg);
    const hvx::MomentumClass mc = hvx::classify_momentum(mu);
    json out;
    out["mu"] = {mu.v.x(), mu.v.y(), mu.v.z()};
    out["det_mu"] = mc.det_mu;
    out["type"] = momentum_type_name(mc.type);
    out["isotropy_description"] = isotropy_description(mc.type);
    std::cout << out.dump() << '\n';
    return exit_ok;
}

int cmd_re(const std::string& scenario_path, double tol)
{
    const hvx::Configuration cfg = hvx::load_scenario(scenario_path).to_configuration();
    const auto [is_re, rep] = hvx::is_relative_equilibrium(cfg, tol);
    json out;
    out["xi"] = {rep.xi.v.x(), rep.xi.v.y(), rep.xi.v.z()};
    out["lambdas"] = rep.lambdas;
    out["residual"] = rep.residual;
    out["is_re"] = is_re;
    if (cfg.size() == 3 && is_re) {
        switch (hvx::re_shape(cfg)) {
        case hvx::REShape::Equilateral: out["tag"] = "equilateral"; break;
        case hvx::REShape::Geodesic: out["tag"] = "geodesic"; break;
        case hvx::REShape::Neither: out["tag"] = "neither"; break;
        }
    } else {
        out["tag"] = nullptr;
    }
    std::cout << out.dump() << '\n';
    return exit_ok;
}

int cmd_stability(const std::string& scenario_path)
{
    const hvx::Configuration cfg = hvx::load_scenario(scenario_path).to_configuration();
    hvx::StabilityVerdict v;
    try {
        v = hvx::classify_stability(cfg);
    } catch (const hvx::Error& e) {
        std::cerr << e.what() << '\n';
        return exit_precondition;
    }
    json out;
    out["formal"] = definiteness_name(v.formal);
    out["momentum_type"] = momentum_type_name(v.momentum_type);
    out["modality"] = modality_name(v.modality);
    out["restricted_hessian"] = {{v.restricted_hessian(0, 0), v.restricted_hessian(0, 1)},
                                 {v.restricted_hessian(1, 0), v.restricted_hessian(1, 1)}};
    out["det_mu"] = v.det_mu;
    out["g_stable"] = v.g_stable;
    std::cout << out.dump() << '\n';
    return exit_ok;
}

int cmd_sweep(double gamma1, double a_min, double a_max, double g2_min, double g2_max,
              int resolution, const std::string& out_path)
{
    const std::vector<hvx::SweepCell> grid =
        hvx::sweep_isosceles(gamma1, {a_min, a_max}, {g2_min, g2_max}, resolution);
    {
        std::ofstream out = open_output(out_path);
        out << "a,gamma2,verdict_code,A_value,det_mu,detQ\n";
        for (const hvx::SweepCell& c : grid) {
            out << hvx::format_real(c.a) << ',' << hvx::format_real(c.gamma2) << ','
                << c.verdict_code << ',' << hvx::format_real(c.A_value) << ','
                << hvx::format_real(c.det_mu) << ',' << hvx::format_real(c.detQ) << '\n';
        }
    }
    json out;
    const auto interval = hvx::equilibrium_interval(gamma1);
    if (interval) {
        out["a_lo"] = interval->first;
        out["a_hi"] = interval->second;
    } else {
        out["a_lo"] = nullptr;
        out["a_hi"] = nullptr;
    }
    out["equilibrium_curve_roots"] = hvx::equilibrium_curve_roots(gamma1);
    std::cout << out.dump() << '\n';
    return exit_ok;
}

int cmd_orbit(const std::vector<double>& mu_raw, const std::vector<double>& nu_raw, double t_max,
              int samples, const std::string& out_path)
{
    const hvx::Vec3 mu(mu_raw[0], mu_raw[1], mu_raw[2]);
    if (mu.norm() == 0.0) throw hvx::ScenarioParseError("orbit: mu must be nonzero");
    if (samples < 2) throw hvx::ScenarioParseError("orbit: need at least 2 samples");
    const hvx::HPoint nu = hvx::lift(nu_raw[0], nu_raw[1]);
    std::ofstream out = open_output(out_path);
    out << "t,x,y,z\n";
    for (int i = 0; i < samples; ++i) {
        const double t = t_max * i / (samples - 1);
        const hvx::HPoint p = hvx::orbit_curve(hvx::DualElement(mu), nu, t);
        out << hvx::format_real(t) << ',' << hvx::format_real(p.x()) << ','
            << hvx::format_real(p.y()) << ',' << hvx::format_real(p.z()) << '\n';
    }
    return exit_ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Point-vortex dynamics on the hyperbolic plane"};
    app.require_subcommand(1);

    std::string scenario_path, out_path;
    double tol = hvx::tol_re;

    auto* simulate = app.add_subcommand("simulate", "Integrate a scenario and write a trajectory CSV");
    simulate->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    simulate->add_option("--out", out_path, "Output CSV path")->required();

    auto* classify = app.add_subcommand("classify", "Momentum type of a scenario");
    classify->add_option("scenario", scenario_path, "Scenario JSON file")->required();

    auto* re = app.add_subcommand("re", "Relative-equilibrium report");
    re->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    re->add_option("--tol", tol, "Certification tolerance");

    auto* stability = app.add_subcommand("stability", "Stability verdict for a certified RE");
    stability->add_option("scenario", scenario_path, "Scenario JSON file")->required();

    double gamma1 = 1.0, a_min = -5.0, a_max = -1.05, g2_min = -5.0, g2_max = 5.0;
    int resolution = 100;
    auto* sweep = app.add_subcommand(
        "sweep", "Isosceles stability atlas CSV (verdict codes: 0 GmuStable, 1 GStable, "
                 "2 LeafwiseOnly, 3 NotFormallyStable, 4 ZeroMomentumCase, 5 Undetermined, "
                 "-1 not classified)");
    sweep->add_option("--gamma1", gamma1, "Outer vortex strength");
    sweep->add_option("--a-min", a_min, "Lower bound of a");
    sweep->add_option("--a-max", a_max, "Upper bound of a (must be < -1)");
    sweep->add_option("--g2-min", g2_min, "Lower bound of gamma2");
    sweep->add_option("--g2-max", g2_max, "Upper bound of gamma2");
    sweep->add_option("--resolution", resolution, "Grid points per axis");
    sweep->add_option("--out", out_path, "Output CSV path")->required();

    std::vector<double> mu_raw, nu_raw;
    double t_max = 6.283185307179586;
    int orbit_samples = 200;
    auto* orbit = app.add_subcommand("orbit", "Sample the coadjoint-isotropy orbit conic");
    orbit->add_option("--mu", mu_raw, "Momentum vector x,y,z")->expected(3)->delimiter(',')->required();
    orbit->add_option("--nu", nu_raw, "Base point chart coordinates x,y")->expected(2)->delimiter(',')->required();
    orbit->add_option("--t-max", t_max, "Parameter range end");
    orbit->add_option("--samples", orbit_samples, "Number of samples");
    orbit->add_option("--out", out_path, "Output CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_input_error;
    }

    try {
        if (simulate->parsed()) return cmd_simulate(scenario_path, out_path);
        if (classify->parsed()) return cmd_classify(scenario_path);
        if (re->parsed()) return cmd_re(scenario_path, tol);
        if (stability->parsed()) return cmd_stability(scenario_path);
        if (sweep->parsed()) {
            return cmd_sweep(gamma1, a_min, a_max, g2_min, g2_max, resolution, out_path);
        }
        if (orbit->parsed()) return cmd_orbit(mu_raw, nu_raw, t_max, orbit_samples, out_path);
    } catch (const hvx::ScenarioParseError& e) {
        std::cerr << e.what() << '\n';
        return exit_input_error;
    } catch (const hvx::Error& e) {
        std::cerr << e.what() << '\n';
        return exit_input_error;
    }
    return exit_ok;
}
