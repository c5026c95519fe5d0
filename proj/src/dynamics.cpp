#include "bhwave/dynamics.hpp"

#include "bhwave/fft.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace bhwave {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

double cfl_limit(int N, double max_abs_f) { return 0.5 / (N * (max_abs_f + 1.0)); }

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}
}  // namespace

TrigField rhs(const TrigField& f, const SimConfig& config) {
    const int K = config.cutoff();
    TrigField nl = derivative(multiply(f, f, false).truncated(K));
    nl *= 0.5;  // (f^2/2)_x = f f_x
    TrigField out = hilbert(f) + nl;
    if (config.frame == Frame::comoving) {
        TrigField adv = derivative(f);
        adv *= -config.comoving_speed;
        out += adv;
    }
    if (config.dealias) out = out.truncated(K);
    out.set_mean(0.0);
    return out;
}

Simulator::Simulator(const TrigField& f0, const SimConfig& config) : config_(config) {
    K_ = config_.cutoff();
    state_.f = f0.truncated(K_);
    state_.f.set_mean(0.0);
    state_.t = 0.0;
    grid_M_ = fft::nice_size(std::max(2 * config_.N, 3 * K_ + 2));
    const double lim = cfl_limit(config_.N, max_abs(to_grid(state_.f, grid_M_)));
    if (config_.dt > lim)
        throw std::invalid_argument("Simulator: dt violates the advective CFL bound " +
                                    std::to_string(lim));

    const size_t S = grid_M_ / 2 + 1;
    spec_.assign(S, 0.0);
    k1_.assign(S, 0.0);
    k2_.assign(S, 0.0);
    k3_.assign(S, 0.0);
    k4_.assign(S, 0.0);
    stage_.assign(S, 0.0);
    scratch_.assign(S, 0.0);
    grid_.assign(grid_M_, 0.0);
    for (int k = 1; k <= K_; ++k) spec_[k] = state_.f.hat(k);
    refresh_diagnostics();
}

void Simulator::rhs_spec(const Spectrum& c, Spectrum& out) {
    // aliasing-free quadratic term: state lives below the cutoff K_, so the
    // product of two K_-fields is exact on the grid for every kept mode
    std::copy(c.begin(), c.end(), scratch_.begin());
    fft::inverse_into(scratch_, grid_, grid_M_);
    for (int j = 0; j < grid_M_; ++j) grid_[j] *= grid_[j];
    fft::forward_into(grid_, scratch_, grid_M_);

    const double invM = 1.0 / grid_M_;
    const std::complex<double> I(0.0, 1.0);
    const double v = (config_.frame == Frame::comoving) ? config_.comoving_speed : 0.0;
    out[0] = 0.0;
    for (int k = 1; k <= K_; ++k) {
        // H f - v f_x + (f^2/2)_x in one pass
        out[k] = -I * c[k] - v * I * static_cast<double>(k) * c[k] +
                 0.5 * I * static_cast<double>(k) * scratch_[k] * invM;
    }
    for (size_t k = K_ + 1; k < out.size(); ++k) out[k] = 0.0;
}

void Simulator::sync_state() {
    for (int k = 1; k <= K_; ++k) {
        state_.f.set_cos(k, 2.0 * spec_[k].real());
        state_.f.set_sin(k, -2.0 * spec_[k].imag());
    }
    state_.f.set_mean(0.0);
}

void Simulator::step() {
    const double dt = config_.dt;
    rhs_spec(spec_, k1_);
    for (int k = 0; k <= K_; ++k) stage_[k] = spec_[k] + 0.5 * dt * k1_[k];
    rhs_spec(stage_, k2_);
    for (int k = 0; k <= K_; ++k) stage_[k] = spec_[k] + 0.5 * dt * k2_[k];
    rhs_spec(stage_, k3_);
    for (int k = 0; k <= K_; ++k) stage_[k] = spec_[k] + dt * k3_[k];
    rhs_spec(stage_, k4_);
    double sq = 0.0;
    for (int k = 1; k <= K_; ++k) {
        spec_[k] += dt / 6.0 * (k1_[k] + 2.0 * (k2_[k] + k3_[k]) + k4_[k]);
        sq += std::norm(spec_[k]);
    }
    spec_[0] = 0.0;
    state_.t += dt;
    if (!std::isfinite(sq))
        throw std::runtime_error("Simulator: non-finite coefficient (blow-up?)");
    sync_state();
}

void Simulator::refresh_diagnostics() {
    Diagnostics d;
    d.l2 = norm(state_.f, NormKind::L2);
    d.mean = state_.f.mean();
    const int K = config_.cutoff();
    double total = 0.0, tail = 0.0;
    const int split = (7 * K) / 8;
    for (int k = 1; k <= K; ++k) {
        const double e = state_.f.cos_coef(k) * state_.f.cos_coef(k) +
                         state_.f.sin_coef(k) * state_.f.sin_coef(k);
        total += e;
        if (k > split) tail += e;
    }
    d.tail_fraction = total > 0.0 ? std::sqrt(tail / total) : 0.0;
    d.max_slope = max_abs(to_grid(derivative(state_.f), grid_M_));
    d.max_abs = max_abs(to_grid(state_.f, grid_M_));
    state_.diagnostics = d;
}

bool Simulator::cfl_ok() const {
    return config_.dt <= cfl_limit(config_.N, state_.diagnostics.max_abs);
}

std::string to_string(StopReason r) {
    switch (r) {
        case StopReason::doubling: return "doubling";
        case StopReason::frame_fail: return "frame_fail";
        case StopReason::resolution: return "resolution";
        case StopReason::slope_blowup: return "slope_blowup";
        case StopReason::t_max: return "t_max";
    }
    return "?";
}

TrigField lifespan_perturbation(const WaveFamily& family, double eps, int N) {
    TrigField p(N);
    p.set_cos(2, 1.0);
    p.set_sin(3, 1.0);
    // remove the zero-eigenspace content, then normalize in H4
    const double yp = family.y_plus(p, eps);
    const double ym = family.y_minus(p, eps);
    p -= yp * family.phi_plus(eps);
    p -= ym * family.phi_minus(eps);
    p.set_mean(0.0);
    p *= 1.0 / norm(p, NormKind::Hk, 4);
    return p;
}

LifespanRecord lifespan_run(double eps, double delta, const SimConfig& config, double t_max) {
    if (delta > eps / 10.0)
        throw std::invalid_argument("lifespan_run: delta <= eps/10 required");

    LifespanRecord rec;
    rec.eps = eps;
    rec.delta = delta;

    const int Nw = std::min(64, config.N / 4);
    WaveFamily family(eps, Nw);
    const TravelingWave w0 = family.wave(eps);

    TrigField f0 = w0.u.truncated(config.cutoff());
    if (delta > 0.0) {
        TrigField p = lifespan_perturbation(family, eps, config.cutoff());
        p *= delta;
        f0 += p;
    }

    Simulator sim(f0, config);
    double a = 0.0, eps_t = eps;
    double t_prev = 0.0, g_prev = delta > 0.0 ? delta : 0.0;

    const double grow2 = 2.0 * delta, grow4 = 4.0 * delta, grow8 = 8.0 * delta;

    auto record = [&](double t, double gh4) {
        rec.samples.push_back({t, gh4, eps_t, a});
    };

    {
        const FrameState st = frame_fit(sim.state().f, eps_t, a, family);
        if (st.status != FrameStatus::ok) {
            rec.stop_reason = StopReason::frame_fail;
            return rec;
        }
        eps_t = st.eps;
        record(0.0, norm(st.g, NormKind::Hk, 4));
    }

    const long steps_per_fit = config.record_every;
    while (sim.state().t < t_max) {
        for (long s = 0; s < steps_per_fit && sim.state().t < t_max; ++s) {
            try {
                sim.step();
            } catch (const std::runtime_error&) {
                rec.stop_reason = StopReason::slope_blowup;
                rec.T_obs = sim.state().t;
                return rec;
            }
        }
        sim.refresh_diagnostics();
        const double t = sim.state().t;

        if (!sim.cfl_ok()) {
            rec.stop_reason = StopReason::slope_blowup;
            rec.T_obs = t;
            return rec;
        }
        if (sim.state().diagnostics.tail_fraction > 1e-3) {
            rec.stop_reason = StopReason::resolution;
            rec.T_obs = t;
            return rec;
        }

        // warm start: translation advances by roughly -v dt between fits
        const double a_pred = a - family.wave(eps_t).v * (t - t_prev);
        const FrameState st = frame_fit(sim.state().f, eps_t, a_pred, family);
        if (st.status != FrameStatus::ok) {
            rec.stop_reason = StopReason::frame_fail;
            rec.T_obs = t;
            return rec;
        }
        // keep the unwrapped angle for the next warm start
        a = a_pred + std::remainder(st.a - a_pred, kTwoPi);
        eps_t = st.eps;
        const double gh4 = norm(st.g, NormKind::Hk, 4);
        const double dual = std::max(std::abs(family.y_plus(st.g, eps_t)),
                                     std::abs(family.y_minus(st.g, eps_t)));
        rec.max_dual_pairing = std::max(rec.max_dual_pairing, dual);
        record(t, gh4);

        if (delta > 0.0) {
            if (rec.T_4delta == 0.0 && gh4 >= grow4) rec.T_4delta = t;
            if (rec.T_8delta == 0.0 && gh4 >= grow8) rec.T_8delta = t;
            if (gh4 >= grow2) {
                // linear interpolation to the crossing
                double tc = t;
                if (gh4 > g_prev && g_prev < grow2)
                    tc = t_prev + (t - t_prev) * (grow2 - g_prev) / (gh4 - g_prev);
                rec.stop_reason = StopReason::doubling;
                rec.T_obs = tc;
                return rec;
            }
        }
        t_prev = t;
        g_prev = gh4;
    }
    rec.stop_reason = StopReason::t_max;
    rec.T_obs = t_max;
    return rec;
}

namespace {

SweepFit fit_loglog(const std::vector<double>& xs, const std::vector<double>& ys) {
    SweepFit f;
    const size_t n = xs.size();
    if (n < 2) return f;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) return f;
    f.slope = (n * sxy - sx * sy) / denom;
    f.intercept = (sy - f.slope * sx) / n;
    if (n > 2) {
        double ss = 0.0;
        for (size_t i = 0; i < n; ++i) {
            const double r = ys[i] - (f.intercept + f.slope * xs[i]);
            ss += r * r;
        }
        f.slope_stderr = std::sqrt(ss / (n - 2) * n / denom);
    }
    f.valid = true;
    return f;
}

int worker_count(size_t jobs) {
    unsigned hw = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("BHWAVE_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap > 0) hw = std::min<unsigned>(hw, static_cast<unsigned>(cap));
    }
    if (hw == 0) hw = 1;
    return static_cast<int>(std::min<size_t>(hw, jobs));
}

}  // namespace

SweepResult sweep_lifespan(const std::vector<double>& eps_list, DeltaRule rule,
                           double coef, const SimConfig& config, double t_max_mult) {
    if (eps_list.empty()) throw std::invalid_argument("sweep_lifespan: empty eps list");
    if (eps_list.size() < 3)
        throw std::invalid_argument("sweep_lifespan: >= 3 eps values required");

    SweepResult res;
    res.records.resize(eps_list.size());
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    const int workers = worker_count(eps_list.size());
    auto run_one = [&](size_t i) {
        const double eps = eps_list[i];
        const double delta = (rule == DeltaRule::proportional) ? coef * eps : coef * eps * eps;
        const double t_max = t_max_mult / (eps * delta);
        res.records[i] = lifespan_run(eps, delta, config, t_max);
    };
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (size_t i = next.fetch_add(1); i < eps_list.size(); i = next.fetch_add(1))
                run_one(i);
        });
    for (auto& th : pool) th.join();

    std::vector<double> x1, x2, y;
    for (const auto& r : res.records) {
        if (r.T_obs <= 0.0) continue;
        x1.push_back(std::log(1.0 / (r.eps * r.delta)));
        x2.push_back(std::log(r.eps / (r.delta * r.delta)));
        y.push_back(std::log(r.T_obs));
    }
    if (y.size() >= 2) {
        res.fit_rule_time = fit_loglog(x1, y);
        res.fit_rule_time2 = fit_loglog(x2, y);
    }
    return res;
}

}  // namespace bhwave
