// accelrad: spectra, kinematics, energies and temperatures of radiating
// point charges and their moving-mirror counterparts.
//
// Subcommands: trajectory | spectrum | beta | particles | energy | thermal
//              | duality-check
//
// Output is CSV ('.' decimal, comma separator, LF, header row, 17
// significant digits) or JSON (schema_version 1).  Identical
// configuration produces byte-identical output.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical gate failure,
// 4 unsupported combination, 1 unexpected internal failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "accelrad/accelrad.hpp"
#include "json.hpp"

using nlohmann::json;
using namespace accelrad;
using kinematics::Trajectory;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config = 2;
constexpr int exit_gate = 3;
constexpr int exit_unsupported = 4;

std::string fmt17(double x) {
    if (x == 0.0) x = 0.0;  // normalize negative zero
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

struct RangeSpec {
    double lo = 0.0, hi = 0.0;
    int n = 0;
};

// parse "a:b:n"
RangeSpec parse_range(const std::string& text, const char* name) {
    RangeSpec r;
    char extra;
    if (std::sscanf(text.c_str(), "%lf:%lf:%d%c", &r.lo, &r.hi, &r.n, &extra) != 3)
        throw std::domain_error(std::string(name) + ": expected 'lo:hi:count', got '" +
                                text + "'");
    if (!(r.lo < r.hi)) throw std::domain_error(std::string(name) + ": need lo < hi");
    if (r.n < 2) throw std::domain_error(std::string(name) + ": need count >= 2");
    return r;
}

std::vector<double> geometric_points(const RangeSpec& r, const char* name) {
    if (!(r.lo > 0.0))
        throw std::domain_error(std::string(name) + ": geometric range needs lo > 0");
    std::vector<double> out(r.n);
    const double lr = std::log(r.hi / r.lo);
    for (int i = 0; i < r.n; ++i) out[i] = r.lo * std::exp(lr * i / (r.n - 1));
    return out;
}

std::vector<double> linear_points(const RangeSpec& r) {
    std::vector<double> out(r.n);
    for (int i = 0; i < r.n; ++i) out[i] = r.lo + (r.hi - r.lo) * i / (r.n - 1);
    return out;
}

// Trajectory selection shared by every subcommand.
struct TrajOptions {
    std::string kind;  // df | wd | uniform | cw
    double s = 0.5;
    double kappa = 1.0;
    std::optional<double> A, B, vmax;

    void attach(CLI::App* cmd) {
        cmd->add_option("--traj", kind, "trajectory: df, wd, uniform, cw")
            ->required()
            ->check(CLI::IsMember({"df", "wd", "uniform", "cw"}));
        cmd->add_option("--s", s, "Davies-Fulling asymptotic speed (0,1]");
        cmd->add_option("--kappa", kappa, "acceleration scale");
        auto* a = cmd->add_option("--A", "Walker-Davies A");
        auto* b = cmd->add_option("--B", "Walker-Davies B");
        auto* v = cmd->add_option("--vmax", "Walker-Davies maximum speed (with --kappa)");
        a->each([this](const std::string& val) { A = std::stod(val); });
        b->each([this](const std::string& val) { B = std::stod(val); });
        v->each([this](const std::string& val) { vmax = std::stod(val); });
    }

    Trajectory build() const {
        using namespace kinematics;
        if (kind == "df") return Trajectory{DaviesFulling(s, kappa)};
        if (kind == "uniform") return Trajectory{UniformAcceleration(kappa)};
        if (kind == "cw") return Trajectory{CarlitzWilley(kappa)};
        if (kind == "wd") {
            if (vmax) {
                if (A || B)
                    throw std::domain_error("give either --vmax or --A/--B, not both");
                return Trajectory{WdParametrization(kappa, *vmax).to_walker_davies()};
            }
            if (!A || !B) throw std::domain_error("wd needs --A and --B, or --vmax");
            return Trajectory{WalkerDavies(*A, *B)};
        }
        throw std::domain_error("unknown trajectory kind " + kind);
    }
};

struct OutputOptions {
    std::string format = "csv";  // csv | json
    std::string path;            // empty = stdout

    void attach(CLI::App* cmd) {
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--out", path, "output file (default stdout)");
    }

    void write(const std::string& payload) const {
        if (path.empty()) {
            std::fwrite(payload.data(), 1, payload.size(), stdout);
            return;
        }
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open output file " + path);
        out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    }
};

json trajectory_json(const Trajectory& traj) {
    using namespace kinematics;
    json j;
    j["name"] = trajectory_name(traj);
    if (auto* df = std::get_if<DaviesFulling>(&traj)) {
        j["s"] = df->s;
        j["kappa"] = df->kappa;
    } else if (auto* wd = std::get_if<WalkerDavies>(&traj)) {
        j["A"] = wd->A;
        j["B"] = wd->B;
        const auto par = WdParametrization::from_walker_davies(*wd);
        j["kappa"] = par.kappa;
        j["v_max"] = par.v_max;
    } else if (auto* ua = std::get_if<UniformAcceleration>(&traj)) {
        j["kappa"] = ua->kappa;
    } else if (auto* cw = std::get_if<CarlitzWilley>(&traj)) {
        j["kappa"] = cw->kappa;
    }
    return j;
}

json meta_json(const Trajectory& traj, const numerics::QuadratureConfig& cfg,
               const std::string& units) {
    json j;
    j["schema_version"] = 1;
    j["tool"] = "accelrad";
    j["tool_version"] = version;
    j["trajectory"] = trajectory_json(traj);
    j["quadrature"] = {{"rel_tol", cfg.rel_tol}, {"abs_tol", cfg.abs_tol}};
    j["units"] = units;
    return j;
}

// ---------------------------------------------------------------------------
// trajectory
// ---------------------------------------------------------------------------

int cmd_trajectory(const TrajOptions& traj_opt, const OutputOptions& out_opt,
                   const std::string& t_range, double e2) {
    const Trajectory traj = traj_opt.build();
    const RangeSpec range = parse_range(t_range, "--t-range");
    const bool proper = std::holds_alternative<kinematics::CarlitzWilley>(traj);
    if (proper && !(range.lo > 0.0))
        throw std::domain_error("--t-range: Carlitz-Willey is sampled by proper time > 0");
    const auto ts = linear_points(range);

    std::vector<kinematics::KinematicState> states;
    states.reserve(ts.size());
    for (double t : ts) states.push_back(kinematics::sample_state(traj, t));

    if (out_opt.format == "csv") {
        std::string csv = "t,z,v,eta,gamma,alpha,peel,jerk_sq\n";
        for (const auto& st : states) {
            csv += fmt17(st.t) + ',' + fmt17(st.z) + ',' + fmt17(st.v) + ',' +
                   fmt17(st.eta) + ',' + fmt17(st.gamma) + ',' + fmt17(st.alpha) + ',' +
                   fmt17(st.peel) + ',' + fmt17(st.jerk_sq) + '\n';
        }
        out_opt.write(csv);
        return exit_ok;
    }
    json j = meta_json(traj, {}, "geometric (c = 1)");
    j["e2"] = e2;
    j["columns"] = {"t", "z", "v", "eta", "gamma", "alpha", "peel", "jerk_sq"};
    json rows = json::array();
    for (const auto& st : states)
        rows.push_back({st.t, st.z, st.v, st.eta, st.gamma, st.alpha, st.peel, st.jerk_sq});
    j["rows"] = rows;
    out_opt.write(j.dump(2) + "\n");
    return exit_ok;
}

// ---------------------------------------------------------------------------
// spectrum and duality-check
// ---------------------------------------------------------------------------

struct GridEval {
    std::vector<double> omegas, cosines;
    std::vector<std::optional<double>> recipe, closed;
    long error_cells = 0;
    double max_rel_diff = 0.0;
};

GridEval evaluate_spectrum_grid(const Trajectory& traj, const RangeSpec& w_range,
                                const RangeSpec& th_range, const std::string& method,
                                const numerics::QuadratureConfig& cfg, double e2) {
    GridEval g;
    g.omegas = geometric_points(w_range, "--omega-range");
    for (double th : linear_points(th_range)) g.cosines.push_back(std::cos(th));
    std::sort(g.cosines.begin(), g.cosines.end());

    const bool want_recipe = method == "recipe" || method == "both";
    const bool want_closed = method == "closed" || method == "both";
    for (double w : g.omegas) {
        for (double c : g.cosines) {
            const electron::PhotonMode mode{w, c};
            std::optional<double> vr, vc;
            if (want_recipe) {
                try {
                    vr = e2 * electron::spectral_distribution_recipe(traj, mode, cfg);
                } catch (const std::domain_error&) {
                    ++g.error_cells;
                }
            }
            if (want_closed) {
                try {
                    vc = e2 * electron::spectral_distribution_closed(traj, mode, cfg);
                } catch (const std::domain_error&) {
                    ++g.error_cells;
                }
            }
            if (vr && vc && *vc != 0.0)
                g.max_rel_diff = std::max(g.max_rel_diff, std::abs(*vr / *vc - 1.0));
            g.recipe.push_back(vr);
            g.closed.push_back(vc);
        }
    }
    return g;
}

std::string optional_field(const std::optional<double>& v) {
    return v ? fmt17(*v) : std::string{};
}

int cmd_spectrum(const TrajOptions& traj_opt, const OutputOptions& out_opt,
                 const std::string& omega_range, const std::string& theta_range,
                 const std::string& method, double rel_tol, double e2) {
    const Trajectory traj = traj_opt.build();
    numerics::QuadratureConfig cfg;
    cfg.rel_tol = rel_tol;
    const auto grid = evaluate_spectrum_grid(traj, parse_range(omega_range, "--omega-range"),
                                             parse_range(theta_range, "--theta-range"),
                                             method, cfg, e2);
    if (grid.error_cells > 0)
        std::cerr << "spectrum: " << grid.error_cells
                  << " grid cell(s) failed to evaluate and were left empty\n";

    if (out_opt.format == "csv") {
        std::string csv;
        const bool both = method == "both";
        csv = both ? "omega,cos_theta,value_recipe,value_closed,rel_diff\n"
                   : "omega,cos_theta,value,method\n";
        size_t idx = 0;
        for (double w : grid.omegas) {
            for (double c : grid.cosines) {
                const auto& vr = grid.recipe[idx];
                const auto& vc = grid.closed[idx];
                if (both) {
                    std::string rd;
                    if (vr && vc && *vc != 0.0) rd = fmt17(std::abs(*vr / *vc - 1.0));
                    csv += fmt17(w) + ',' + fmt17(c) + ',' + optional_field(vr) + ',' +
                           optional_field(vc) + ',' + rd + '\n';
                } else {
                    const auto& v = method == "recipe" ? vr : vc;
                    csv += fmt17(w) + ',' + fmt17(c) + ',' + optional_field(v) + ',' +
                           (method == "recipe" ? "recipe" : "closed_form") + '\n';
                }
                ++idx;
            }
        }
        out_opt.write(csv);
        return exit_ok;
    }

    json j = meta_json(traj, cfg, e2 == 1.0 ? "per_e2" : "scaled_by_e2");
    j["e2"] = e2;
    j["method"] = method;
    j["omega"] = grid.omegas;
    j["cos_theta"] = grid.cosines;
    j["error_cells"] = grid.error_cells;
    auto cells = [&](const std::vector<std::optional<double>>& vals) {
        json arr = json::array();
        for (const auto& v : vals)
            arr.push_back(v ? json(*v) : json(nullptr));
        return arr;
    };
    if (method == "recipe" || method == "both") j["values_recipe"] = cells(grid.recipe);
    if (method == "closed" || method == "both") j["values_closed"] = cells(grid.closed);
    if (method == "both") j["max_rel_diff"] = grid.max_rel_diff;
    out_opt.write(j.dump(2) + "\n");
    return exit_ok;
}

int cmd_duality_check(const TrajOptions& traj_opt, const OutputOptions& out_opt,
                      const std::string& omega_range, const std::string& theta_range,
                      double rel_tol, double gate) {
    const Trajectory traj = traj_opt.build();
    numerics::QuadratureConfig cfg;
    cfg.rel_tol = rel_tol;
    const auto grid = evaluate_spectrum_grid(traj, parse_range(omega_range, "--omega-range"),
                                             parse_range(theta_range, "--theta-range"),
                                             "both", cfg, 1.0);
    json j = meta_json(traj, cfg, "per_e2");
    j["gate"] = gate;
    j["max_rel_diff"] = grid.max_rel_diff;
    j["error_cells"] = grid.error_cells;
    j["gate_passed"] = grid.max_rel_diff <= gate;
    out_opt.write(j.dump(2) + "\n");
    return grid.max_rel_diff <= gate ? exit_ok : exit_gate;
}

// ---------------------------------------------------------------------------
// beta
// ---------------------------------------------------------------------------

int cmd_beta(const TrajOptions& traj_opt, const OutputOptions& out_opt,
             const std::string& pq_range, const std::string& side, double rel_tol) {
    using namespace kinematics;
    const Trajectory traj = traj_opt.build();
    if (std::holds_alternative<CarlitzWilley>(traj))
        throw unsupported_error("beta: no spectra for the Carlitz-Willey form");
    numerics::QuadratureConfig cfg;
    cfg.rel_tol = rel_tol;
    const auto points = geometric_points(parse_range(pq_range, "--pq-range"), "--pq-range");

    std::string method;
    auto eval = [&](mirror::ModePair pair) -> double {
        if (auto* df = std::get_if<DaviesFulling>(&traj)) {
            if (df->at_light_speed()) {
                method = "df_lightspeed";
                return mirror::beta_sq_df_lightspeed(df->kappa, pair);
            }
            if (side == "double") {
                method = "df_double";
                return mirror::beta_sq_df_double(df->s, df->kappa, pair);
            }
            method = "df_right";
            return mirror::beta_sq_df_right(df->s, df->kappa, pair);
        }
        if (auto* wd = std::get_if<WalkerDavies>(&traj)) {
            method = "wd_right";
            return mirror::beta_sq_wd_right(wd->A, wd->B, pair, cfg);
        }
        method = "uniform_right";
        return mirror::beta_sq_uniform_right(std::get<UniformAcceleration>(traj).kappa, pair);
    };

    std::vector<std::optional<double>> values;
    long error_cells = 0;
    for (double p : points) {
        for (double q : points) {
            try {
                values.emplace_back(eval({p, q}));
            } catch (const std::domain_error&) {
                values.emplace_back(std::nullopt);
                ++error_cells;
            }
        }
    }
    if (error_cells > 0)
        std::cerr << "beta: " << error_cells << " grid cell(s) failed to evaluate\n";

    if (out_opt.format == "csv") {
        std::string csv = "p,q,value,method\n";
        size_t idx = 0;
        for (double p : points)
            for (double q : points) {
                csv += fmt17(p) + ',' + fmt17(q) + ',' + optional_field(values[idx]) + ',' +
                       method + '\n';
                ++idx;
            }
        out_opt.write(csv);
        return exit_ok;
    }
    json j = meta_json(traj, cfg, "per_hbar");
    j["method"] = method;
    j["p"] = points;
    j["q"] = points;
    j["error_cells"] = error_cells;
    json arr = json::array();
    for (const auto& v : values) arr.push_back(v ? json(*v) : json(nullptr));
    j["values"] = arr;
    out_opt.write(j.dump(2) + "\n");
    return exit_ok;
}

// ---------------------------------------------------------------------------
// particles
// ---------------------------------------------------------------------------

int cmd_particles(const TrajOptions& traj_opt, const OutputOptions& out_opt,
                  const std::string& p_range, double rel_tol) {
    using namespace kinematics;
    const Trajectory traj = traj_opt.build();
    const auto* wd = std::get_if<WalkerDavies>(&traj);
    if (!wd)
        throw unsupported_error("particles: analytic particle content exists only for "
                                "the Walker-Davies trajectory");
    numerics::QuadratureConfig cfg;
    cfg.rel_tol = rel_tol;
    const auto p_grid = geometric_points(parse_range(p_range, "--pq-range"), "--pq-range");
    const auto spectrum = mirror::particle_spectrum_wd(wd->A, wd->B, p_grid, cfg);

    if (out_opt.format == "csv") {
        std::string csv = "p,n_p,n_p_closed\n";
        for (size_t i = 0; i < spectrum.p_grid.size(); ++i)
            csv += fmt17(spectrum.p_grid[i]) + ',' + fmt17(spectrum.n_p[i]) + ',' +
                   fmt17(spectrum.n_p_closed[i]) + '\n';
        out_opt.write(csv);
        return exit_ok;
    }
    json j = meta_json(traj, cfg, "per_hbar");
    j["p"] = spectrum.p_grid;
    j["n_p"] = spectrum.n_p;
    j["n_p_closed"] = spectrum.n_p_closed;
    j["n_tot"] = spectrum.n_tot;
    j["n_tot_closed"] = spectrum.n_tot_closed;
    out_opt.write(j.dump(2) + "\n");
    return exit_ok;
}

// ---------------------------------------------------------------------------
// energy
// ---------------------------------------------------------------------------

int cmd_energy(const TrajOptions& traj_opt, const OutputOptions& out_opt, double rel_tol,
               double gate, double e2) {
    using namespace kinematics;
    const Trajectory traj = traj_opt.build();
    numerics::QuadratureConfig cfg;
    cfg.rel_tol = rel_tol;

    const double closed = e2 * total_energy_closed_form(traj);
    const double power = e2 * total_energy_power_route(traj, cfg);
    const double force = e2 * total_energy_force_route(traj, cfg);

    numerics::QuadratureConfig spec_cfg = cfg;
    spec_cfg.rel_tol = std::max(cfg.rel_tol, 1e-8);
    const double spectral = e2 * electron::total_energy_spectral(traj, spec_cfg);

    numerics::QuadratureConfig mirror_cfg = cfg;
    mirror_cfg.rel_tol = std::max(cfg.rel_tol, 1e-7);
    mirror_cfg.abs_tol = 1e-16;
    const double mirror_e = e2 * mirror::mirror_total_energy(traj, mirror_cfg);
    const double mirror_ref =
        std::holds_alternative<WalkerDavies>(traj)
            ? e2 * mirror::wd_right_side_energy_closed(std::get<WalkerDavies>(traj).A,
                                                       std::get<WalkerDavies>(traj).B)
            : closed;

    auto rel = [](double a, double b) { return std::abs(a - b) / std::abs(b); };
    json diffs;
    diffs["power_vs_closed"] = rel(power, closed);
    diffs["force_vs_closed"] = rel(force, closed);
    diffs["force_vs_power"] = rel(force, power);
    diffs["spectral_vs_closed"] = rel(spectral, closed);
    diffs["mirror_vs_reference"] = rel(mirror_e, mirror_ref);

    bool pass = true;
    for (const auto& [key, value] : diffs.items())
        if (value.get<double>() > gate) pass = false;

    json j = meta_json(traj, cfg, e2 == 1.0 ? "per_e2" : "scaled_by_e2");
    j["e2"] = e2;
    j["closed_form"] = closed;
    j["power_integral"] = power;
    j["force_integral"] = force;
    j["spectral_integral"] = spectral;
    j["mirror_double_integral"] = mirror_e;
    j["mirror_reference"] = mirror_ref;
    j["pairwise_relative_differences"] = diffs;
    j["gate"] = gate;
    j["gate_passed"] = pass;
    out_opt.write(j.dump(2) + "\n");
    return pass ? exit_ok : exit_gate;
}

// ---------------------------------------------------------------------------
// thermal
// ---------------------------------------------------------------------------

int cmd_thermal(const TrajOptions& traj_opt, const OutputOptions& out_opt, double theta,
                double rel_tol, double e2) {
    using namespace kinematics;
    const Trajectory traj = traj_opt.build();
    numerics::QuadratureConfig cfg;
    cfg.rel_tol = rel_tol;
    const auto fit = thermal::thermality_verdict(traj, theta, cfg);

    json refs = json::array();
    auto push_ref = [&refs](const thermal::TemperatureReference& r, const char* name) {
        refs.push_back({{"kind", name},
                        {"value", r.value},
                        {"scale", thermal::scale_name(r.scale)}});
    };
    if (auto* df = std::get_if<DaviesFulling>(&traj)) {
        if (!df->at_light_speed())
            push_ref(thermal::reference_temperature(thermal::ReferenceKind::df_electron,
                                                    df->kappa, df->s),
                     "df_electron");
        push_ref(thermal::reference_temperature(thermal::ReferenceKind::df_mirror, df->kappa),
                 "df_mirror");
    } else if (std::holds_alternative<WalkerDavies>(traj)) {
        const auto par = WdParametrization::from_walker_davies(std::get<WalkerDavies>(traj));
        push_ref(thermal::reference_temperature(thermal::ReferenceKind::wd_wien, par.kappa),
                 "wd_wien");
    } else if (auto* ua = std::get_if<UniformAcceleration>(&traj)) {
        push_ref(thermal::reference_temperature(thermal::ReferenceKind::uniform_uv, ua->kappa,
                                                theta),
                 "uniform_uv");
    }

    json j = meta_json(traj, cfg, "per_e2");
    j["e2"] = e2;
    j["theta"] = fit.theta;
    j["fit_window"] = {{"omega_min", fit.omega_min}, {"omega_max", fit.omega_max}};
    j["t_fit"] = e2 * fit.t_fit;
    j["c_fit"] = fit.c_fit;
    j["residual"] = fit.residual;
    j["t_ir"] = e2 * fit.t_ir;
    j["t_uv"] = e2 * fit.t_uv;
    j["omega_ir"] = fit.omega_ir;
    j["verdict"] = thermal::verdict_name(fit.verdict);
    j["scale"] = thermal::scale_name(fit.scale);
    j["references"] = refs;
    out_opt.write(j.dump(2) + "\n");
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceleration radiation toolkit: moving mirrors and point charges"};
    app.require_subcommand(1);
    // key=value file with a [subcommand] section, e.g.
    //   [energy]
    //   traj=df
    //   s=0.5
    // given as: accelrad --config FILE energy [flags]; flags take precedence
    app.set_config("--config", "", "key=value config file ([subcommand] sections)")
        ->configurable(false);
    app.allow_config_extras(false);
    app.set_version_flag("--version", std::string("accelrad ") + version);

    struct Common {
        TrajOptions traj;
        OutputOptions out;
        double rel_tol = 1e-10;
        double e2 = 1.0;
    };

    auto add_common = [](CLI::App* cmd, Common& c) {
        c.traj.attach(cmd);
        c.out.attach(cmd);
        cmd->add_option("--rel-tol", c.rel_tol, "quadrature relative tolerance")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--e2", c.e2, "prefactor e^2 applied to electron-side outputs")
            ->check(CLI::PositiveNumber);
    };

    // trajectory
    auto traj_cmd = std::make_shared<Common>();
    std::string t_range = "-5:5:101";
    {
        auto* cmd = app.add_subcommand("trajectory", "worldline kinematics table");
        add_common(cmd, *traj_cmd);
        cmd->add_option("--t-range", t_range,
                        "lo:hi:count, coordinate time (proper time for cw)");
    }

    // spectrum
    auto spec_cmd = std::make_shared<Common>();
    std::string spec_omega = "0.05:10:40", spec_theta = "0.05:3.0916:40";
    std::string spec_method = "closed";
    {
        auto* cmd = app.add_subcommand("spectrum", "photon spectral distribution dI/dOmega");
        add_common(cmd, *spec_cmd);
        cmd->add_option("--omega-range", spec_omega, "lo:hi:count (geometric)");
        cmd->add_option("--theta-range", spec_theta, "lo:hi:count in radians (linear)");
        cmd->add_option("--method", spec_method, "recipe, closed or both")
            ->check(CLI::IsMember({"recipe", "closed", "both"}));
    }

    // beta
    auto beta_cmd = std::make_shared<Common>();
    std::string beta_pq = "0.05:5:30", beta_side = "right";
    {
        auto* cmd = app.add_subcommand("beta", "mirror Bogolubov spectrum |beta_pq|^2");
        add_common(cmd, *beta_cmd);
        cmd->add_option("--pq-range", beta_pq, "lo:hi:count (geometric, both axes)");
        cmd->add_option("--side", beta_side, "right or double (Davies-Fulling only)")
            ->check(CLI::IsMember({"right", "double"}));
    }

    // particles
    auto part_cmd = std::make_shared<Common>();
    std::string part_p = "0.01:5:40";
    {
        auto* cmd = app.add_subcommand("particles", "Walker-Davies particle spectrum/count");
        add_common(cmd, *part_cmd);
        cmd->add_option("--pq-range", part_p, "p grid lo:hi:count (geometric)");
    }

    // energy
    auto energy_cmd = std::make_shared<Common>();
    double energy_gate = 1e-3;
    {
        auto* cmd = app.add_subcommand("energy", "total-energy consistency report (JSON)");
        add_common(cmd, *energy_cmd);
        cmd->add_option("--gate", energy_gate, "maximum allowed pairwise relative difference")
            ->check(CLI::PositiveNumber);
    }

    // thermal
    auto thermal_cmd = std::make_shared<Common>();
    double thermal_theta = 0.01;
    {
        auto* cmd = app.add_subcommand("thermal", "Planck fit and thermality verdict (JSON)");
        add_common(cmd, *thermal_cmd);
        cmd->add_option("--theta", thermal_theta, "observation angle in radians");
    }

    // duality-check
    auto dual_cmd = std::make_shared<Common>();
    std::string dual_omega = "0.05:10:30", dual_theta = "0.1:3.0416:30";
    double dual_gate = 1e-9;
    {
        auto* cmd = app.add_subcommand("duality-check",
                                       "recipe vs closed-form dI/dOmega comparison");
        add_common(cmd, *dual_cmd);
        cmd->add_option("--omega-range", dual_omega, "lo:hi:count (geometric)");
        cmd->add_option("--theta-range", dual_theta, "lo:hi:count in radians (linear)");
        cmd->add_option("--gate", dual_gate, "maximum allowed relative deviation")
            ->check(CLI::PositiveNumber);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
        app.exit(e);
        return exit_config;
    }

    try {
        if (app.got_subcommand("trajectory"))
            return cmd_trajectory(traj_cmd->traj, traj_cmd->out, t_range, traj_cmd->e2);
        if (app.got_subcommand("spectrum"))
            return cmd_spectrum(spec_cmd->traj, spec_cmd->out, spec_omega, spec_theta,
                                spec_method, spec_cmd->rel_tol, spec_cmd->e2);
        if (app.got_subcommand("beta"))
            return cmd_beta(beta_cmd->traj, beta_cmd->out, beta_pq, beta_side,
                            beta_cmd->rel_tol);
        if (app.got_subcommand("particles"))
            return cmd_particles(part_cmd->traj, part_cmd->out, part_p, part_cmd->rel_tol);
        if (app.got_subcommand("energy"))
            return cmd_energy(energy_cmd->traj, energy_cmd->out, energy_cmd->rel_tol,
                              energy_gate, energy_cmd->e2);
        if (app.got_subcommand("thermal"))
            return cmd_thermal(thermal_cmd->traj, thermal_cmd->out, thermal_theta,
                               thermal_cmd->rel_tol, thermal_cmd->e2);
        if (app.got_subcommand("duality-check"))
            return cmd_duality_check(dual_cmd->traj, dual_cmd->out, dual_omega, dual_theta,
                                     dual_cmd->rel_tol, dual_gate);
        std::cerr << "no subcommand given\n";
        return exit_config;
    } catch (const infinite_quantity_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_unsupported;
    } catch (const unsupported_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_unsupported;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
