// bhwave: spectral toolkit for Burgers-Hilbert traveling waves.
//
// Subcommands: wave, constants, spectrum, simulate, lifespan, frame.
// Every artifact embeds the run spec; CSV files carry it as a leading
// '# run_spec: {...}' comment line ahead of the documented header.

#include "bhwave/bounds.hpp"
#include "bhwave/dynamics.hpp"
#include "bhwave/frame.hpp"
#include "bhwave/report_io.hpp"
#include "bhwave/spectrum.hpp"
#include "bhwave/svg.hpp"
#include "bhwave/trig_field.hpp"
#include "bhwave/wave.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace bhwave;
using nlohmann::json;

namespace {

struct RunContext {
    std::string subcommand;
    json parameters;
    std::filesystem::path out_dir;
    std::uint64_t seed = 12345;
    std::vector<std::string> artifacts;

    json run_spec() const {
        json j;
        j["subcommand"] = subcommand;
        j["parameters"] = parameters;
        j["output_dir"] = out_dir.string();
        j["seed"] = seed;
        return j;
    }

    void write_json(const std::string& name, json payload) {
        payload["run_spec"] = run_spec();
        io::atomic_write(out_dir / name, payload.dump(2) + "\n");
        artifacts.push_back(name);
    }

    void write_csv(const std::string& name, const std::vector<std::string>& header,
                   const std::vector<std::vector<std::string>>& rows) {
        std::string body = "# run_spec: " + run_spec().dump() + "\n";
        body += io::make_csv(header, rows);
        io::atomic_write(out_dir / name, body);
        artifacts.push_back(name);
    }

    void write_svg(const std::string& name, const svg::PlotSpec& spec) {
        try {
            io::atomic_write(out_dir / name, svg::render(spec));
            artifacts.push_back(name);
        } catch (const std::invalid_argument&) {
            std::cerr << "notice: skipping " << name << " (empty table)\n";
        }
    }

    void finish() {
        json m;
        m["run_spec"] = run_spec();
        m["artifacts"] = artifacts;
        io::atomic_write(out_dir / "manifest.json", m.dump(2) + "\n");
    }
};

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(std::stod(tok));
    }
    return out;
}

json bound_report_json(const BoundReport& r) {
    return json{{"name", r.name},
                {"truncation", r.truncation},
                {"computed_value", r.computed_value},
                {"paper_bound", r.paper_bound},
                {"satisfied", r.satisfied},
                {"margin", r.margin}};
}

void check_eps_range(double eps) {
    if (std::abs(eps) > 0.55)
        throw CLI::ValidationError("--eps", "amplitude out of range (|eps| <= 0.55)");
}

// ---------------------------------------------------------------- wave ----

int run_wave(RunContext& ctx, double eps, int modes, const std::string& method,
             int order, double d_eps, double tol) {
    check_eps_range(eps);
    const WaveTaylor table = WaveTaylor::build(order);

    TravelingWave w;
    json extra;
    if (method == "taylor") {
        w = eval_taylor(table, eps, modes);
    } else if (method == "newton") {
        const TravelingWave seed = eval_taylor(table, std::min(std::abs(eps), 0.3) *
                                                          (eps < 0 ? -1.0 : 1.0),
                                               modes);
        const auto out = newton_refine(seed, eps, modes, {tol, 25});
        if (!out.converged) throw std::runtime_error("newton did not converge");
        w = out.wave;
        extra["newton_iterations"] = out.iterations;
    } else if (method == "continuation") {
        const auto res = continuation(std::abs(eps), d_eps, modes, tol);
        if (res.waves.empty()) throw std::runtime_error("continuation produced no waves");
        w = res.waves.back();
        extra["last_eps"] = res.last_eps;
        extra["reached_eps_max"] = res.reached_eps_max;
        extra["steps"] = res.waves.size();
    } else {
        throw CLI::ValidationError("--method", "unknown method " + method);
    }

    json jw = json::parse(wave_to_json(w));
    for (auto& [k, v] : extra.items()) jw[k] = v;
    ctx.write_json("wave.json", jw);

    std::vector<std::vector<std::string>> rows;
    for (int k = 1; k <= w.u.truncation(); ++k)
        rows.push_back({std::to_string(k), io::fmt(w.u.cos_coef(k))});
    ctx.write_csv("wave_coeffs.csv", {"k", "cos_coef"}, rows);

    std::vector<std::vector<std::string>> trows;
    for (int n = 1; n <= std::min(order, WaveTaylor::kExactOrder); ++n)
        for (int k = n % 2 == 0 ? 2 : 1; k <= n; k += 2) {
            std::ostringstream val;
            val << table.u_exact(n, k);
            trows.push_back({std::to_string(n), std::to_string(k), val.str()});
        }
    ctx.write_csv("taylor_table.csv", {"n", "k", "u_nk"}, trows);
    return 0;
}

// ----------------------------------------------------------- constants ----

int run_constants(RunContext& ctx, int nmax, int cn_max, int trials) {
    ctx.write_json("lemma_f_sinx.json", bound_report_json(op_norm_f_sinx(nmax)));
    ctx.write_json("lemma_f_sin2x.json", bound_report_json(op_norm_f_sin2x(nmax)));
    ctx.write_json("lemma_bilinear.json",
                   bound_report_json(bilinear_probe(std::min(nmax, 64), trials, ctx.seed)));

    std::vector<std::vector<std::string>> rows;
    int argmax = 1;
    double best = -1.0;
    for (int n = 1; n <= cn_max; ++n) {
        const double c = (n <= 32) ? cn_constant(n) : cn_constant_closed(n);
        if (c > best) {
            best = c;
            argmax = n;
        }
        rows.push_back({std::to_string(n), io::fmt(c)});
    }
    ctx.write_csv("cn_table.csv", {"n", "C_n"}, rows);

    const XstarResult xs = find_xstar();
    ctx.write_json("xstar.json", json{{"xstar", xs.xstar},
                                      {"ode_fold", xs.ode_fold},
                                      {"curve_max_diff", xs.curve_max_diff},
                                      {"cn_argmax", argmax},
                                      {"cn_max", best}});
    return 0;
}

// ------------------------------------------------------------ spectrum ----

int run_spectrum(RunContext& ctx, double eps, int modes, int matrix_n, int scan_M,
                 int report_M) {
    check_eps_range(eps);
    const WaveTaylor table = WaveTaylor::build(10);
    const auto out = newton_refine(eval_taylor(table, eps, modes), eps, modes, {});
    if (!out.converged) throw std::runtime_error("wave newton did not converge");
    if (matrix_n <= 0) matrix_n = 4 * modes;
    if (report_M <= 0) report_M = std::min(matrix_n / 2, 16);

    SpectrumReport rep = spectrum_report(out.wave, matrix_n, report_M);
    if (std::abs(eps) <= 0.1 && scan_M > 0) {
        const NonresScan scan = nonres_scan(eps, scan_M);
        rep.nonres_min = scan.min_value;
        for (int i = 0; i < 3; ++i) rep.nonres_witness[i] = scan.witness[i];
    }

    // kernel defect pair via the local branch model
    WaveFamily family(eps, modes);
    const OperatorMatrix A = assemble_L(out.wave, matrix_n);
    const KernelDefects kd =
        kernel_check(A, out.wave, family.du_deps(eps), family.dv_deps(eps));

    json j;
    j["eps"] = eps;
    j["c_eps"] = rep.c_eps;
    j["nonres_min"] = rep.nonres_min;
    j["nonres_witness"] = {rep.nonres_witness[0], rep.nonres_witness[1], rep.nonres_witness[2]};
    j["kernel_defects"] = {kd.translation, kd.branch};
    json lams = json::array();
    for (const auto& [n, lam] : rep.pairs.lam)
        lams.push_back(json{{"n", n},
                            {"re", lam.real()},
                            {"im", lam.imag()},
                            {"taylor_im", rep.taylor_pred.at(n).imag()},
                            {"remainder", rep.remainder.at(n)},
                            {"match_quality", rep.pairs.match_quality.at(n)},
                            {"ambiguous", rep.pairs.ambiguous.at(n)}});
    j["eigenvalues"] = lams;
    ctx.write_json("spectrum.json", j);

    std::vector<std::vector<std::string>> rows;
    for (const auto& [n, lam] : rep.pairs.lam)
        rows.push_back({std::to_string(n), io::fmt(lam.real()), io::fmt(lam.imag()),
                        io::fmt(rep.taylor_pred.at(n).imag()), io::fmt(rep.remainder.at(n))});
    ctx.write_csv("spectrum.csv", {"n", "re_lambda", "im_lambda", "taylor_pred_im", "remainder"},
                  rows);
    return 0;
}

// ------------------------------------------------------------ simulate ----

int run_simulate(RunContext& ctx, double eps, double delta, int N, double dt, double t_end,
                 const std::string& frame_name, int record_every) {
    check_eps_range(eps);
    SimConfig cfg;
    cfg.N = N;
    cfg.dt = dt;
    cfg.record_every = record_every;

    const int Nw = std::min(64, N / 4);
    WaveFamily family(eps, Nw);
    const TravelingWave w = family.wave(eps);
    if (frame_name == "comoving") {
        cfg.frame = Frame::comoving;
        cfg.comoving_speed = w.v;
    }

    TrigField f0 = w.u.truncated(cfg.cutoff());
    if (delta > 0.0) {
        TrigField p = lifespan_perturbation(family, eps, cfg.cutoff());
        p *= delta;
        f0 += p;
    }

    Simulator sim(f0, cfg);
    double a = 0.0, eps_t = eps;
    std::vector<std::vector<std::string>> rows;
    std::vector<double> ts, gh4s;
    const long total_steps = static_cast<long>(t_end / dt + 0.5);
    for (long s = 0; s <= total_steps; ++s) {
        if (s % record_every == 0 || s == total_steps) {
            sim.refresh_diagnostics();
            const auto& d = sim.state().diagnostics;
            double gh4 = 0.0;
            if (cfg.frame == Frame::lab) {
                const double a_pred = a + (sim.state().t == 0.0 ? 0.0 : -w.v * dt * record_every);
                const FrameState st = frame_fit(sim.state().f, eps_t, a_pred, family);
                if (st.status == FrameStatus::ok) {
                    a = a_pred + std::remainder(st.a - a_pred, 2 * 3.14159265358979324);
                    eps_t = st.eps;
                    gh4 = norm(st.g, NormKind::Hk, 4);
                }
            } else {
                const FrameState st = frame_fit(sim.state().f, eps_t, a, family);
                if (st.status == FrameStatus::ok) gh4 = norm(st.g, NormKind::Hk, 4);
            }
            rows.push_back({io::fmt(sim.state().t), io::fmt(d.l2), io::fmt(d.mean),
                            io::fmt(d.max_slope), io::fmt(d.tail_fraction), io::fmt(eps_t),
                            io::fmt(a), io::fmt(gh4)});
            ts.push_back(sim.state().t);
            gh4s.push_back(gh4);
        }
        if (s < total_steps) sim.step();
    }
    ctx.write_csv("simulate.csv",
                  {"t", "l2", "mean", "max_slope", "tail_fraction", "eps", "a", "g_h4"}, rows);

    svg::PlotSpec plot;
    plot.title = "perturbation H4 norm";
    plot.x_label = "t";
    plot.y_label = "||g||_H4";
    plot.series.push_back({"g_h4", ts, gh4s, false});
    ctx.write_svg("g_h4.svg", plot);
    return 0;
}

// ------------------------------------------------------------ lifespan ----

int run_lifespan(RunContext& ctx, const std::string& eps_list_str, const std::string& rule_name,
                 double coef, int N, double dt, int record_every, double t_max_mult) {
    const std::vector<double> eps_list = parse_list(eps_list_str);
    if (eps_list.empty()) throw CLI::ValidationError("--eps-list", "empty eps list");
    for (double e : eps_list) check_eps_range(e);

    SimConfig cfg;
    cfg.N = N;
    cfg.dt = dt;
    cfg.record_every = record_every;
    const DeltaRule rule = (rule_name == "B") ? DeltaRule::quadratic : DeltaRule::proportional;

    const SweepResult res = sweep_lifespan(eps_list, rule, coef, cfg, t_max_mult);

    std::vector<std::vector<std::string>> rows;
    std::vector<double> xs, ys;
    for (const auto& r : res.records) {
        rows.push_back({io::fmt(r.eps), io::fmt(r.delta), io::fmt(r.T_obs),
                        to_string(r.stop_reason)});
        if (r.T_obs > 0.0) {
            xs.push_back(1.0 / (r.eps * r.delta));
            ys.push_back(r.T_obs);
        }
        std::vector<std::vector<std::string>> srows;
        for (const auto& s : r.samples)
            srows.push_back({io::fmt(s.t), io::fmt(s.g_h4), io::fmt(s.eps), io::fmt(s.a)});
        char name[64];
        std::snprintf(name, sizeof(name), "run_eps_%g.csv", r.eps);
        ctx.write_csv(name, {"t", "g_h4", "eps", "a"}, srows);
    }
    ctx.write_csv("sweep_summary.csv", {"eps", "delta", "T_obs", "stop_reason"}, rows);

    json fit;
    fit["slope_inv_eps_delta"] = res.fit_rule_time.slope;
    fit["slope_stderr"] = res.fit_rule_time.slope_stderr;
    fit["intercept"] = res.fit_rule_time.intercept;
    fit["slope_eps_over_delta2"] = res.fit_rule_time2.slope;
    fit["valid"] = res.fit_rule_time.valid;
    json recs = json::array();
    for (const auto& r : res.records)
        recs.push_back(json{{"eps", r.eps},
                            {"delta", r.delta},
                            {"T_obs", r.T_obs},
                            {"stop_reason", to_string(r.stop_reason)},
                            {"T_4delta", r.T_4delta},
                            {"T_8delta", r.T_8delta},
                            {"max_dual_pairing", r.max_dual_pairing}});
    fit["records"] = recs;
    ctx.write_json("fit.json", fit);

    svg::PlotSpec plot;
    plot.title = "lifespan sweep";
    plot.x_label = "1/(eps delta)";
    plot.y_label = "T_obs";
    plot.log_x = true;
    plot.log_y = true;
    plot.series.push_back({"T_obs", xs, ys, true});
    if (res.fit_rule_time.valid) {
        plot.with_fit = true;
        plot.fit_slope = res.fit_rule_time.slope;
        // render works in log10; convert the natural-log fit intercept
        plot.fit_intercept = res.fit_rule_time.intercept / std::log(10.0);
    }
    ctx.write_svg("sweep.svg", plot);
    return 0;
}

// --------------------------------------------------------------- frame ----

int run_frame(RunContext& ctx, double eps, double a, double perturb, int modes) {
    check_eps_range(eps);
    WaveFamily family(eps, modes);
    TrigField f = family.wave(eps).u.translated(-a);  // u_eps(x + a)
    if (perturb != 0.0) {
        TrigField p(modes);
        p.set_cos(2, perturb);
        f += p;
    }
    const FrameState st = frame_fit(f, eps * 1.05, a + 0.01, family);
    if (st.status != FrameStatus::ok) throw std::runtime_error("frame_fit did not converge");
    json j;
    j["eps"] = st.eps;
    j["a"] = st.a;
    j["g_l2"] = norm(st.g, NormKind::L2);
    j["g_h2"] = norm(st.g, NormKind::Hk, 2);
    j["fit_residual"] = st.fit_residual;
    j["iterations"] = st.iterations;
    j["g"] = json::parse(to_json(st.g));
    ctx.write_json("frame.json", j);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bhwave: Burgers-Hilbert traveling waves, spectra and lifespans"};
    app.require_subcommand(1);

    std::string out_dir = "out";
    std::uint64_t seed = 12345;
    std::string config_path;
    app.add_option("--out", out_dir, "output directory")->capture_default_str();
    app.add_option("--seed", seed, "random seed")->capture_default_str();
    app.add_option("--config", config_path, "key=value config file (flags override)");

    // wave
    double eps = 0.1, d_eps = 0.005, tol = 1e-12;
    int modes = 64, order = 30;
    std::string method = "newton";
    auto* wave_cmd = app.add_subcommand("wave", "construct a traveling wave");
    wave_cmd->add_option("--eps", eps, "amplitude")->required();
    wave_cmd->add_option("--modes", modes, "cosine modes")->capture_default_str();
    wave_cmd->add_option("--method", method, "taylor|newton|continuation")
        ->capture_default_str();
    wave_cmd->add_option("--order", order, "series order")->capture_default_str();
    wave_cmd->add_option("--deps", d_eps, "continuation step")->capture_default_str();
    wave_cmd->add_option("--tol", tol, "newton tolerance")->capture_default_str();

    // constants
    int nmax = 200, cn_max = 500, trials = 20;
    auto* const_cmd = app.add_subcommand("constants", "verify the size-theorem constants");
    const_cmd->add_flag("--all", "run every check (default)");
    const_cmd->add_option("--nmax", nmax, "operator-norm truncation")->capture_default_str();
    const_cmd->add_option("--cn-max", cn_max, "C_n table size")->capture_default_str();
    const_cmd->add_option("--trials", trials, "bilinear probe trials")->capture_default_str();

    // spectrum
    double s_eps = 0.1;
    int s_modes = 64, matrix_n = 0, scan_M = 32, report_M = 0;
    auto* spec_cmd = app.add_subcommand("spectrum", "linearized spectrum report");
    spec_cmd->add_option("--eps", s_eps, "amplitude")->required();
    spec_cmd->add_option("--modes", s_modes, "wave truncation")->capture_default_str();
    spec_cmd->add_option("--matrix-n", matrix_n, "matrix half-size (default 4x modes)");
    spec_cmd->add_option("--scan-M", scan_M, "non-resonance scan window")->capture_default_str();
    spec_cmd->add_option("--report-M", report_M, "matched eigenvalue window");

    // simulate
    double sim_eps = 0.1, sim_delta = 0.0, sim_dt = 1e-3, sim_t = 10.0;
    int sim_n = 256, sim_rec = 10;
    std::string frame_name = "lab";
    auto* sim_cmd = app.add_subcommand("simulate", "evolve a perturbed wave");
    sim_cmd->add_option("--eps", sim_eps, "wave amplitude")->required();
    sim_cmd->add_option("--delta", sim_delta, "perturbation size")->capture_default_str();
    sim_cmd->add_option("--n", sim_n, "modes")->capture_default_str();
    sim_cmd->add_option("--dt", sim_dt, "time step")->capture_default_str();
    sim_cmd->add_option("--t", sim_t, "final time")->capture_default_str();
    sim_cmd->add_option("--frame", frame_name, "lab|comoving")->capture_default_str();
    sim_cmd->add_option("--record-every", sim_rec, "steps between records")
        ->capture_default_str();

    // lifespan
    std::string eps_list = "0.16,0.08,0.04", rule = "A";
    double coef = 0.05, t_max_mult = 5.0;
    int ls_n = 128, ls_rec = 10;
    double ls_dt = 2e-3;
    auto* ls_cmd = app.add_subcommand("lifespan", "perturbation lifespan sweep");
    ls_cmd->add_option("--eps-list", eps_list, "comma separated eps values")
        ->capture_default_str();
    ls_cmd->add_option("--delta-rule", rule, "A: delta = c eps, B: delta = c eps^2")
        ->capture_default_str();
    ls_cmd->add_option("--delta-coef", coef, "rule coefficient c")->capture_default_str();
    ls_cmd->add_option("--n", ls_n, "modes")->capture_default_str();
    ls_cmd->add_option("--dt", ls_dt, "time step")->capture_default_str();
    ls_cmd->add_option("--record-every", ls_rec, "steps between frame fits")
        ->capture_default_str();
    ls_cmd->add_option("--t-max-mult", t_max_mult, "t_max = mult/(eps delta)")
        ->capture_default_str();

    // frame
    double f_eps = 0.1, f_a = 0.3, f_pert = 1e-3;
    int f_modes = 64;
    auto* frame_cmd = app.add_subcommand("frame", "moving-frame decomposition demo");
    frame_cmd->add_option("--eps", f_eps, "amplitude")->capture_default_str();
    frame_cmd->add_option("--a", f_a, "translation")->capture_default_str();
    frame_cmd->add_option("--perturb", f_pert, "cos 2x perturbation")->capture_default_str();
    frame_cmd->add_option("--modes", f_modes, "wave truncation")->capture_default_str();

    // config file pre-pass: inject file pairs ahead of explicit flags, with
    // TakeLast everywhere so the command line wins
    std::vector<std::string> args(argv + 1, argv + argc);
    for (size_t i = 0; i + 1 < args.size(); ++i) {
        if (args[i] == "--config") {
            std::ifstream in(args[i + 1]);
            if (!in) {
                std::cerr << "error: cannot read config file " << args[i + 1] << "\n";
                return 1;
            }
            std::stringstream ss;
            ss << in.rdbuf();
            std::vector<std::string> injected;
            for (const auto& [k, v] : io::parse_config(ss.str())) {
                injected.push_back("--" + k);
                injected.push_back(v);
            }
            // insert right after the subcommand name so explicit flags,
            // which come later, win under the TakeLast policy
            static const char* kNames[] = {"wave",     "constants", "spectrum",
                                           "simulate", "lifespan",  "frame"};
            size_t at = args.size();
            for (size_t j = 0; j < args.size() && at == args.size(); ++j)
                for (const char* name : kNames)
                    if (args[j] == name) at = j + 1;
            if (at <= args.size())
                args.insert(args.begin() + at, injected.begin(), injected.end());
            break;
        }
    }
    for (auto* sub : app.get_subcommands({}))
        for (auto* opt : sub->get_options()) opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    for (auto* opt : app.get_options()) opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    std::vector<const char*> cargs;
    cargs.push_back(argv[0]);
    for (const auto& a : args) cargs.push_back(a.c_str());

    RunContext ctx;
    try {
        app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    ctx.out_dir = out_dir;
    ctx.seed = seed;

    try {
        int rc = 0;
        if (wave_cmd->parsed()) {
            ctx.subcommand = "wave";
            ctx.parameters = {{"eps", eps},     {"modes", modes}, {"method", method},
                              {"order", order}, {"deps", d_eps},  {"tol", tol}};
            rc = run_wave(ctx, eps, modes, method, order, d_eps, tol);
        } else if (const_cmd->parsed()) {
            ctx.subcommand = "constants";
            ctx.parameters = {{"nmax", nmax}, {"cn_max", cn_max}, {"trials", trials}};
            rc = run_constants(ctx, nmax, cn_max, trials);
        } else if (spec_cmd->parsed()) {
            ctx.subcommand = "spectrum";
            ctx.parameters = {{"eps", s_eps},
                              {"modes", s_modes},
                              {"matrix_n", matrix_n},
                              {"scan_M", scan_M},
                              {"report_M", report_M}};
            rc = run_spectrum(ctx, s_eps, s_modes, matrix_n, scan_M, report_M);
        } else if (sim_cmd->parsed()) {
            ctx.subcommand = "simulate";
            ctx.parameters = {{"eps", sim_eps}, {"delta", sim_delta},
                              {"n", sim_n},     {"dt", sim_dt},
                              {"t", sim_t},     {"frame", frame_name},
                              {"record_every", sim_rec}};
            rc = run_simulate(ctx, sim_eps, sim_delta, sim_n, sim_dt, sim_t, frame_name,
                              sim_rec);
        } else if (ls_cmd->parsed()) {
            ctx.subcommand = "lifespan";
            ctx.parameters = {{"eps_list", eps_list},   {"delta_rule", rule},
                              {"delta_coef", coef},     {"n", ls_n},
                              {"dt", ls_dt},            {"record_every", ls_rec},
                              {"t_max_mult", t_max_mult}};
            rc = run_lifespan(ctx, eps_list, rule, coef, ls_n, ls_dt, ls_rec, t_max_mult);
        } else if (frame_cmd->parsed()) {
            ctx.subcommand = "frame";
            ctx.parameters = {
                {"eps", f_eps}, {"a", f_a}, {"perturb", f_pert}, {"modes", f_modes}};
            rc = run_frame(ctx, f_eps, f_a, f_pert, f_modes);
        }
        ctx.finish();
        return rc;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        try {
            json diag;
            diag["error"] = e.what();
            diag["run_spec"] = ctx.run_spec();
            io::atomic_write(ctx.out_dir / "error.json", diag.dump(2) + "\n");
        } catch (...) {
        }
        return 2;
    }
}
