#pragma once

#include "bhwave/trig_field.hpp"
#include "bhwave/wave.hpp"

#include <optional>

namespace bhwave {

/// Locally parametrized slice of the wave branch around a reference
/// amplitude: three Newton solves (eps_ref, eps_ref +/- h) give a quadratic
/// model of eps -> (u_eps, v_eps) that is accurate to ~1e-12 within
/// |eps - eps_ref| <= 2e-4 and refreshed automatically outside that window.
class WaveFamily {
  public:
    WaveFamily(double eps_ref, int N, double fd_step = 1e-4);

    TravelingWave wave(double eps) const;
    TrigField du_deps(double eps) const;
    double dv_deps(double eps) const;
    int truncation() const { return N_; }

    /// phi0^+ = d_eps u_eps, phi0^- = -u_eps' / eps.
    TrigField phi_plus(double eps) const;
    TrigField phi_minus(double eps) const;

    /// Dual pairings of the generalized zero eigenspace. The adjoint of the
    /// linearized operator is w -> -((u - v) w' + H w), whose generalized
    /// kernel is spanned (mod constants) by u_eps and the antiderivative of
    /// d_eps u_eps; these pair to zero with every nonzero-eigenvalue mode.
    /// Normalized so y_plus(phi_plus) = 1, y_minus(phi_minus) = 1.
    double y_plus(const TrigField& g, double eps) const;
    double y_minus(const TrigField& g, double eps) const;

  private:
    void rebuild(double eps_ref) const;
    mutable double eps_ref_;
    int N_;
    double h_;
    mutable TrigField u0_, u1_, u2_;  // value, first, second eps-derivative
    mutable double v0_ = 0.0, v1_ = 0.0, v2_ = 0.0;
};

enum class FrameStatus { ok, frame_fail };

struct FrameState {
    FrameStatus status = FrameStatus::frame_fail;
    double eps = 0.0;
    double a = 0.0;  // reported in [0, 2*pi)
    TrigField g;
    double fit_residual = 0.0;  // max |y^+|, |y^-| at the solution
    TrigField phi0_plus;
    TrigField phi0_minus;
    int iterations = 0;
};

/// Newton iteration on F(eps, a) = (y^+, y^-) of f(. - a) - u_eps.
/// Returns frame_fail after 30 iterations without convergence.
FrameState frame_fit(const TrigField& f, double eps_guess, double a_guess,
                     const WaveFamily& family);

}  // namespace bhwave
