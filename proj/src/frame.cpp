#include "bhwave/frame.hpp"

#include <cmath>
#include <stdexcept>

namespace bhwave {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

WaveFamily::WaveFamily(double eps_ref, int N, double fd_step)
    : eps_ref_(eps_ref), N_(N), h_(fd_step) {
    if (eps_ref == 0.0)
        throw std::invalid_argument("WaveFamily: eps_ref must be nonzero");
    rebuild(eps_ref);
}

void WaveFamily::rebuild(double eps_ref) const {
    const WaveTaylor table = WaveTaylor::build(10);
    NewtonOptions opt;
    opt.tol = 1e-13;

    auto solve = [&](double eps) -> TravelingWave {
        TravelingWave seed = eval_taylor(table, eps, N_);
        auto out = newton_refine(seed, eps, N_, opt);
        if (!out.converged)
            throw std::runtime_error("WaveFamily: wave solve failed at eps = " +
                                     std::to_string(eps));
        return out.wave;
    };

    const TravelingWave wc = solve(eps_ref);
    const TravelingWave wp = solve(eps_ref + h_);
    const TravelingWave wm = solve(eps_ref - h_);

    eps_ref_ = eps_ref;
    u0_ = wc.u;
    v0_ = wc.v;
    u1_ = (1.0 / (2.0 * h_)) * (wp.u - wm.u);
    v1_ = (wp.v - wm.v) / (2.0 * h_);
    u2_ = (1.0 / (h_ * h_)) * (wp.u + wm.u - 2.0 * TrigField(wc.u));
    v2_ = (wp.v + wm.v - 2.0 * wc.v) / (h_ * h_);
}

TravelingWave WaveFamily::wave(double eps) const {
    double d = eps - eps_ref_;
    if (std::abs(d) > 2e-4) {
        rebuild(eps);
        d = 0.0;
    }
    TravelingWave w;
    w.eps = eps;
    w.u = u0_ + d * TrigField(u1_) + (0.5 * d * d) * TrigField(u2_);
    w.v = v0_ + d * v1_ + 0.5 * d * d * v2_;
    w.source = WaveSource::newton;
    w.residual_norm = traveling_residual(w.u, w.v);
    return w;
}

TrigField WaveFamily::du_deps(double eps) const {
    double d = eps - eps_ref_;
    if (std::abs(d) > 2e-4) {
        rebuild(eps);
        d = 0.0;
    }
    return u1_ + d * TrigField(u2_);
}

double WaveFamily::dv_deps(double eps) const {
    const double d = eps - eps_ref_;
    return v1_ + d * v2_;
}

TrigField WaveFamily::phi_plus(double eps) const { return du_deps(eps); }

TrigField WaveFamily::phi_minus(double eps) const {
    return (-1.0 / eps) * derivative(wave(eps).u);
}

double WaveFamily::y_plus(const TrigField& g, double eps) const {
    // dual vector proportional to u_eps (even); parity splits the Gram matrix
    const TravelingWave w = wave(eps);
    const double denom = inner_l2(phi_plus(eps), w.u);
    return inner_l2(g, w.u) / denom;
}

double WaveFamily::y_minus(const TrigField& g, double eps) const {
    // dual vector proportional to the antiderivative of d_eps u_eps (odd)
    const TrigField dU = antiderivative(du_deps(eps));
    const double denom = inner_l2(phi_minus(eps), dU);
    return inner_l2(g, dU) / denom;
}

FrameState frame_fit(const TrigField& f, double eps_guess, double a_guess,
                     const WaveFamily& family) {
    FrameState st;
    double eps = eps_guess, a = a_guess;

    auto F = [&](double e, double aa, double& yp, double& ym) {
        const TrigField shifted = f.translated(aa);  // f(x - a)
        const TrigField diff = shifted - family.wave(e).u;
        yp = family.y_plus(diff, e);
        ym = family.y_minus(diff, e);
    };

    const double tol = 1e-13;
    double yp = 0.0, ym = 0.0;
    for (int it = 0; it < 30; ++it) {
        F(eps, a, yp, ym);
        const double r = std::max(std::abs(yp), std::abs(ym));
        if (r < tol) {
            st.status = FrameStatus::ok;
            st.iterations = it;
            break;
        }
        const double he = 1e-7 * std::max(1.0, std::abs(eps));
        const double ha = 1e-7;
        double yp_e, ym_e, yp_a, ym_a;
        F(eps + he, a, yp_e, ym_e);
        F(eps, a + ha, yp_a, ym_a);
        const double J00 = (yp_e - yp) / he, J01 = (yp_a - yp) / ha;
        const double J10 = (ym_e - ym) / he, J11 = (ym_a - ym) / ha;
        const double det = J00 * J11 - J01 * J10;
        if (!std::isfinite(det) || std::abs(det) < 1e-14) break;
        eps -= (yp * J11 - ym * J01) / det;
        a -= (ym * J00 - yp * J10) / det;
        if (!std::isfinite(eps) || !std::isfinite(a)) break;
    }

    if (st.status != FrameStatus::ok) {
        st.status = FrameStatus::frame_fail;
        return st;
    }

    st.eps = eps;
    st.a = std::fmod(a, kTwoPi);
    if (st.a < 0.0) st.a += kTwoPi;
    st.g = f.translated(a) - family.wave(eps).u;
    st.fit_residual = std::max(std::abs(yp), std::abs(ym));
    st.phi0_plus = family.phi_plus(eps);
    st.phi0_minus = family.phi_minus(eps);
    return st;
}

}  // namespace bhwave
