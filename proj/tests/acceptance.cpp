// Acceptance suite: runs the quantitative exit criteria end to end and
// prints one PASS/FAIL line per criterion. Exit code = number of failures.
// `acceptance --criterion k` runs a single criterion.

#include "bhwave/bounds.hpp"
#include "bhwave/dynamics.hpp"
#include "bhwave/frame.hpp"
#include "bhwave/spectrum.hpp"
#include "bhwave/trig_field.hpp"
#include "bhwave/wave.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <random>
#include <string>
#include <vector>

using namespace bhwave;

namespace {

int failures = 0;

struct Criterion {
    int id;
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
    void note(const std::string& what) {
        if (!detail.empty()) detail += "; ";
        detail += what;
    }
};

void report(const Criterion& c, const char* title, double seconds) {
    std::printf("[%s] criterion %d: %s (%.1fs)%s%s\n", c.ok ? "PASS" : "FAIL", c.id, title,
                seconds, c.detail.empty() ? "" : " -- ", c.detail.c_str());
    if (!c.ok) ++failures;
    std::fflush(stdout);
}

TravelingWave solve_wave(double eps, int N) {
    const WaveTaylor t = WaveTaylor::build(10);
    const NewtonOutcome out = newton_refine(eval_taylor(t, eps, N), eps, N, {1e-13, 25});
    if (!out.converged) throw std::runtime_error("wave solve failed");
    return out.wave;
}

char buf[256];
std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    std::snprintf(buf, sizeof(buf), f, a, b, c);
    return buf;
}

// 1. Exact low-order rational table values.
void criterion1() {
    Criterion c{1};
    const auto t0 = std::chrono::steady_clock::now();
    const WaveTaylor t = WaveTaylor::build(6);
    c.require(t.u_exact(2, 2) == Rational(-1, 2), "u_{2,2} != -1/2");
    c.require(t.u_exact(3, 3) == Rational(3, 8), "u_{3,3} != 3/8");
    c.require(t.v_exact(0) == Rational(-1), "v_0 != -1");
    c.require(t.v_exact(1) == Rational(0), "v_1 != 0");
    c.require(t.v_exact(2) == Rational(-1, 4), "v_2 != -1/4");
    const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.require(sec < 1.0, "runtime over 1 s");
    report(c, "taylor_table(6) rational values", sec);
}

// 2. Diagonal = Lambert series; radius estimate near 2/e.
void criterion2() {
    Criterion c{2};
    const auto t0 = std::chrono::steady_clock::now();
    const DiagonalSeries d = diagonal_series(60);
    for (int n = 1; n <= 30; ++n) {
        const double oracle = lambert_two_w_half_coeff(n);
        if (std::abs(d.diag[n - 1] - oracle) > 1e-10 * std::abs(oracle)) {
            c.require(false, fmt("diagonal mismatch at n=%g", n));
            break;
        }
    }
    const double two_over_e = 2.0 / std::exp(1.0);
    const double rel = std::abs(d.radius_estimate - two_over_e) / two_over_e;
    c.require(rel < 0.02, fmt("radius estimate %.6f off 2/e by %.3f%%", d.radius_estimate,
                              100.0 * rel));
    c.note(fmt("radius %.6f vs 2/e %.6f", d.radius_estimate, two_over_e));
    const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.require(sec < 1.0, "runtime over 1 s");
    report(c, "Lambert-W diagonal and 2/e radius", sec);
}

// 3. Lemma certification at N = 200 plus the C_n table.
void criterion3() {
    Criterion c{3};
    const auto t0 = std::chrono::steady_clock::now();

    const BoundReport r1 = op_norm_f_sinx(200);
    c.require(r1.computed_value <= std::sqrt(3.0),
              fmt("|T_sinx| = %.6f > sqrt3", r1.computed_value));
    const BoundReport r2 = op_norm_f_sin2x(200);
    c.require(r2.computed_value <= 0.5 * std::sqrt(17.0),
              fmt("|T_sin2x| = %.6f > 0.5 sqrt17", r2.computed_value));
    const BoundReport r3 = bilinear_probe(64, 20, 20240801);
    c.require(r3.computed_value <= kBilinearB,
              fmt("bilinear probe %.6f > B", r3.computed_value));
    c.note(fmt("norms %.4f, %.4f, probe %.4f", r1.computed_value, r2.computed_value,
               r3.computed_value));

    int argmax = 1;
    double best = -1.0;
    for (int n = 1; n <= 500; ++n) {
        const double v = (n <= 16) ? cn_constant(n) : cn_constant_closed(n);
        if (v > best) {
            best = v;
            argmax = n;
        }
    }
    c.require(argmax == 4, fmt("C_n argmax = %g, expected 4", argmax));

    // The stated closed form for C_4 is 2 pi^2/3 + 869/72; direct summation
    // of D_4 + 2 E_4 lands exactly one unit lower (2 pi^2/3 + 797/72), so
    // this clause documents the discrepancy rather than hiding it.
    const double c4 = cn_constant(4);
    const double c4_stated = 2.0 * M_PI * M_PI / 3.0 + 869.0 / 72.0;
    c.require(std::abs(c4 - c4_stated) <= 1e-9,
              fmt("C_4 = %.9f vs stated %.9f (diff %.6f)", c4, c4_stated, c4 - c4_stated));

    const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.require(sec < 30.0, "runtime over 30 s");
    report(c, "lemma constants at N = 200 and C_n table", sec);
}

// 4. x* root and ODE agreement.
void criterion4() {
    Criterion c{4};
    const auto t0 = std::chrono::steady_clock::now();
    const XstarResult xs = find_xstar();
    c.require(xs.xstar >= 0.22 && xs.xstar <= 0.24, fmt("x* = %.5f outside [0.22,0.24]", xs.xstar));
    c.require(xs.curve_max_diff <= 1e-6,
              fmt("ODE vs implicit curve diff %.2e > 1e-6", xs.curve_max_diff));
    c.note(fmt("x* = %.6f, fold %.6f, curve diff %.1e", xs.xstar, xs.ode_fold,
               xs.curve_max_diff));
    const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.require(sec < 5.0, "runtime over 5 s");
    report(c, "x* bisection and comparison ODE", sec);
}

// 5. Newton waves and continuation reach.
void criterion5() {
    Criterion c{5};
    const auto t0 = std::chrono::steady_clock::now();

    const WaveTaylor t30 = WaveTaylor::build(30);
    const TravelingWave taylor = eval_taylor(t30, 0.1, 64);
    // seed from the order-3 expansion so newton does real work
    const TravelingWave seed = eval_taylor(WaveTaylor::build(3), 0.1, 64);
    const NewtonOutcome out = newton_refine(seed, 0.1, 64, {1e-13, 25});
    c.require(out.converged, "newton did not converge");
    c.require(out.iterations >= 1 && out.iterations <= 5,
              fmt("unexpected iteration count %g", out.iterations));
    c.require(out.wave.residual_norm < 1e-12,
              fmt("residual %.2e >= 1e-12", out.wave.residual_norm));
    const double dist = norm(out.wave.u - taylor.u, NormKind::L2);
    c.require(dist < 1e-10, fmt("|newton - taylor30| = %.2e >= 1e-10", dist));

    const ContinuationResult cont = continuation(0.45, 0.005, 256, 1e-10);
    c.require(cont.last_eps >= 0.45 - 1e-12, fmt("continuation stopped at %.4f", cont.last_eps));
    c.note(fmt("residual %.1e, taylor dist %.1e, reached eps %.3f", out.wave.residual_norm,
               dist, cont.last_eps));
    const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.require(sec < 60.0, "runtime over 60 s");
    report(c, "newton waves and continuation", sec);
}

// 6. Spectrum: lambda_1 series, exact kato k = 2, remainder order.
void criterion6() {
    Criterion c{6};
    const auto t0 = std::chrono::steady_clock::now();

    const TravelingWave w1 = solve_wave(0.1, 64);
    const SpectrumReport rep1 = spectrum_report(w1, 256, 8);
    const std::complex<double> target(
        0.0, 1.0 - 0.01 / 2.0 - 11.0 * 1e-4 / 16.0 - 529.0 * 1e-6 / 384.0);
    const double dev = std::abs(rep1.pairs.lam.at(1) - target);
    c.require(dev <= 5e-7, fmt("lambda_1 deviation %.2e > 5e-7", dev));

    const WaveTaylor table = WaveTaylor::build(6);
    for (int n : {1, 2, 3}) {
        const auto k2 = kato_coefficient(n, 2, table);
        const double err = std::abs(k2 - std::complex<double>(0.0, -(n + 1) / 4.0));
        c.require(err < 1e-14, fmt("kato k=2 off by %.1e at n=%g", err, n));
    }

    const TravelingWave w2 = solve_wave(0.05, 64);
    const SpectrumReport rep2 = spectrum_report(w2, 256, 8);
    const double order = remainder_order(rep1, rep2, 1);
    c.require(order >= 5.5 && order <= 6.5, fmt("remainder order %.2f outside 6 +- 0.5", order));
    c.note(fmt("lambda_1 dev %.1e, remainder order %.2f", dev, order));

    const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.require(sec < 60.0, "runtime over 60 s");
    report(c, "matrix spectrum vs eigenvalue expansions", sec);
}

// 7. Non-resonance gap at eps = 0.05.
void criterion7() {
    Criterion c{7};
    const auto t0 = std::chrono::steady_clock::now();
    const double eps = 0.05;
    const NonresScan scan = nonres_scan(eps, 32);
    c.require(scan.min_value > eps * eps / 5.0,
              fmt("min %.3e <= eps^2/5 = %.3e", scan.min_value, eps * eps / 5.0));
    const double case2 = eps * eps / 4.0;
    c.require(std::abs(scan.min_value - case2) <= 0.2 * case2,
              fmt("witness value %.3e not within 20%% of eps^2/4", scan.min_value));
    c.note(fmt("min %.4e at (%g,%g,", scan.min_value, scan.witness[0], scan.witness[1]) +
           fmt("%g)", scan.witness[2]));
    const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.require(sec < 10.0, "runtime over 10 s");
    report(c, "non-resonance gap", sec);
}

// 8. Simulator correctness: fixed point, conservation, dt order.
void criterion8() {
    Criterion c{8};
    const auto t0 = std::chrono::steady_clock::now();

    const TravelingWave w = solve_wave(0.1, 64);
    SimConfig cfg;
    cfg.N = 256;
    cfg.dt = 1e-3;
    cfg.frame = Frame::comoving;
    cfg.comoving_speed = w.v;
    const TrigField f0 = w.u.truncated(cfg.cutoff());
    Simulator sim(f0, cfg);
    const long steps = std::lround(2.0 * M_PI / cfg.dt);
    const double l2_0 = norm(sim.state().f, NormKind::L2);
    for (long s = 0; s < steps; ++s) sim.step();
    const double err = norm(sim.state().f - f0, NormKind::L2);
    c.require(err < 1e-6, fmt("comoving error %.2e >= 1e-6", err));
    const double drift =
        std::abs(norm(sim.state().f, NormKind::L2) - l2_0) / (steps * cfg.dt);
    c.require(drift < 1e-9, fmt("L2 drift %.2e per unit time", drift));

    // dt order by successive refinement on a perturbed comoving run (the
    // unperturbed wave is exactly stationary, so its defect is dt-free)
    SimConfig base;
    base.N = 64;
    base.frame = Frame::comoving;
    const TravelingWave wc = solve_wave(0.3, base.cutoff());
    TrigField g0 = wc.u.truncated(base.cutoff());
    TrigField pert(base.cutoff());
    pert.set_cos(2, 0.02);
    pert.set_sin(3, 0.02);
    g0 += pert;
    auto evolve = [&](double dt) {
        SimConfig cf = base;
        cf.dt = dt;
        cf.comoving_speed = wc.v;
        Simulator s2(g0, cf);
        const long n = std::lround(1.0 / dt);
        for (long s = 0; s < n; ++s) s2.step();
        return s2.state().f;
    };
    const TrigField ra = evolve(4e-3), rb = evolve(2e-3), rc = evolve(1e-3);
    const double ratio = norm(ra - rb, NormKind::L2) / norm(rb - rc, NormKind::L2);
    c.require(ratio >= 12.0 && ratio <= 20.0, fmt("dt ratio %.2f outside [12,20]", ratio));
    c.note(fmt("fixed-point err %.1e, drift %.1e, dt ratio %.1f", err, drift, ratio));

    const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(c, "simulator fixed point and convergence", sec);
}

// 9. Frame decomposition recovery and stability.
void criterion9() {
    Criterion c{9};
    const auto t0 = std::chrono::steady_clock::now();

    WaveFamily family(0.1, 48);
    const TrigField f = family.wave(0.1).u.translated(-0.3);
    const FrameState st = frame_fit(f, 0.098, 0.28, family);
    c.require(st.status == FrameStatus::ok, "synthetic fit failed");
    c.require(std::abs(st.eps - 0.1) < 1e-10, fmt("eps err %.1e", std::abs(st.eps - 0.1)));
    c.require(std::abs(st.a - 0.3) < 1e-10, fmt("a err %.1e", std::abs(st.a - 0.3)));
    c.require(norm(st.g, NormKind::L2) < 1e-10, fmt("|g| = %.1e", norm(st.g, NormKind::L2)));

    std::mt19937_64 rng(424242);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> size_dist(1e-4, 4e-3);
    const TrigField u0 = family.wave(0.1).u;
    int stable = 0;
    for (int trial = 0; trial < 20; ++trial) {
        TrigField p(16);
        for (int k = 1; k <= 16; ++k) {
            p.set_cos(k, gauss(rng) / (k * k));
            p.set_sin(k, gauss(rng) / (k * k));
        }
        p *= size_dist(rng) / norm(p, NormKind::Hk, 2);
        const FrameState s2 = frame_fit(u0 + p, 0.1, 0.0, family);
        const double pert = norm(p, NormKind::Hk, 2);
        if (s2.status == FrameStatus::ok && norm(s2.g, NormKind::Hk, 2) <= 3.0 * pert &&
            std::abs(s2.eps - 0.1) <= 3.0 * pert)
            ++stable;
    }
    c.require(stable == 20, fmt("only %g/20 randomized cases satisfied the bound", stable));
    c.note(fmt("synthetic errs %.1e/%.1e, stable 20/20", std::abs(st.eps - 0.1),
               std::abs(st.a - 0.3)));

    const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(c, "moving-frame decomposition", sec);
}

// 10. Lifespan sweep: monotone T_obs, slope band, full logging.
void criterion10() {
    Criterion c{10};
    const auto t0 = std::chrono::steady_clock::now();

    SimConfig cfg;
    cfg.N = 128;
    cfg.dt = 2e-3;
    cfg.record_every = 10;
    const std::vector<double> eps_list = {0.16, 0.08, 0.04};
    const SweepResult res = sweep_lifespan(eps_list, DeltaRule::proportional, 1.0 / 20.0,
                                           cfg, 5.0);

    for (const auto& r : res.records)
        std::printf("    lifespan eps=%.3f delta=%.4f T_obs=%.1f stop=%s samples=%zu\n",
                    r.eps, r.delta, r.T_obs, to_string(r.stop_reason).c_str(),
                    r.samples.size());

    c.require(res.records.size() == 3, "missing runs");
    for (size_t i = 1; i < res.records.size(); ++i)
        c.require(res.records[i].T_obs > res.records[i - 1].T_obs,
                  fmt("T_obs not increasing: %.1f !> %.1f", res.records[i].T_obs,
                      res.records[i - 1].T_obs));
    c.require(res.fit_rule_time.valid, "fit invalid");
    c.require(res.fit_rule_time.slope >= 0.5 && res.fit_rule_time.slope <= 1.5,
              fmt("slope %.3f outside [0.5, 1.5]", res.fit_rule_time.slope));
    c.note(fmt("slope %.3f +- %.3f", res.fit_rule_time.slope, res.fit_rule_time.slope_stderr));

    const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.require(sec < 1200.0, "runtime over 20 min");
    report(c, "lifespan scaling sweep", sec);
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::strcmp(argv[i], "--criterion") == 0) only = std::atoi(argv[i + 1]);
    void (*runners[])() = {criterion1, criterion2, criterion3, criterion4, criterion5,
                           criterion6, criterion7, criterion8, criterion9, criterion10};
    try {
        if (only >= 1 && only <= 10) {
            runners[only - 1]();
        } else {
            for (auto* r : runners) r();
        }
    } catch (const std::exception& e) {
        std::printf("[FAIL] unhandled exception: %s\n", e.what());
        return 99;
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures;
}
