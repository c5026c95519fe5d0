#pragma once

#include "bhwave/frame.hpp"
#include "bhwave/trig_field.hpp"
#include "bhwave/wave.hpp"

#include <complex>
#include <string>
#include <vector>

namespace bhwave {

enum class Frame { lab, comoving };

struct SimConfig {
    int N = 256;             // nominal mode count; state lives below the 2/3 cutoff
    double dt = 1e-3;
    bool dealias = true;
    Frame frame = Frame::lab;
    double comoving_speed = 0.0;
    int record_every = 10;

    int cutoff() const { return dealias ? (2 * N) / 3 : N; }
};

struct Diagnostics {
    double l2 = 0.0;
    double mean = 0.0;
    double tail_fraction = 0.0;  // L2 fraction above 7/8 of the kept modes
    double max_slope = 0.0;      // max |f_x| on the grid
    double max_abs = 0.0;        // max |f|, drives the CFL check
};

struct SimState {
    double t = 0.0;
    TrigField f;
    Diagnostics diagnostics;
};

/// Hf + dealiased f f_x (written as (f^2/2)_x), mean forced to exactly zero;
/// in the comoving frame the advective shift -v f_x is added.
TrigField rhs(const TrigField& f, const SimConfig& config);

class Simulator {
  public:
    Simulator(const TrigField& f0, const SimConfig& config);

    /// One classical RK4 step. Throws on NaN/Inf (blow-up) and on a CFL
    /// violation against the current max |f|.
    void step();

    const SimState& state() const { return state_; }
    const SimConfig& config() const { return config_; }
    void refresh_diagnostics();

    /// True while dt respects the advective bound for the current max |f|.
    bool cfl_ok() const;

  private:
    using Spectrum = std::vector<std::complex<double>>;
    void rhs_spec(const Spectrum& c, Spectrum& out);
    void sync_state();
    SimConfig config_;
    SimState state_;
    int grid_M_ = 0;
    int K_ = 0;
    // preallocated hot-loop buffers (half-complex spectra and one grid)
    Spectrum spec_, k1_, k2_, k3_, k4_, stage_, scratch_;
    std::vector<double> grid_;
};

enum class StopReason { doubling, frame_fail, resolution, slope_blowup, t_max };

std::string to_string(StopReason r);

struct LifespanSample {
    double t = 0.0;
    double g_h4 = 0.0;
    double eps = 0.0;
    double a = 0.0;
};

struct LifespanRecord {
    double eps = 0.0;
    double delta = 0.0;
    double T_obs = 0.0;
    StopReason stop_reason = StopReason::t_max;
    std::vector<LifespanSample> samples;
    // first crossings of the alternative thresholds (0 if not reached)
    double T_4delta = 0.0;
    double T_8delta = 0.0;
    double max_dual_pairing = 0.0;  // drift monitor for the zero-mode exclusion
};

/// Perturbation direction used by lifespan runs: cos 2x + sin 3x purged of
/// the phi0^+- dual components and the mean, then H4-normalized.
TrigField lifespan_perturbation(const WaveFamily& family, double eps, int N);

/// Evolve u_eps + delta p and track the moving-frame decomposition; T_obs is
/// the first time ||g||_H4 >= 2 delta, else the stop reason says why the run
/// ended. Requires delta <= eps/10.
LifespanRecord lifespan_run(double eps, double delta, const SimConfig& config, double t_max);

struct SweepFit {
    bool valid = false;
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
};

enum class DeltaRule { proportional, quadratic };  // delta = c eps | c eps^2

struct SweepResult {
    std::vector<LifespanRecord> records;
    SweepFit fit_rule_time;   // log T vs log(1/(eps delta))
    SweepFit fit_rule_time2;  // log T vs log(eps/delta^2)
};

/// Run lifespan_run per eps (>= 3 values) across a worker pool capped by
/// BHWAVE_THREADS and fit the observed times against both theory axes.
SweepResult sweep_lifespan(const std::vector<double>& eps_list, DeltaRule rule,
                           double coef, const SimConfig& config, double t_max_mult);

}  // namespace bhwave
