#include "bhwave/wave.hpp"

#include <nlohmann/json.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace bhwave {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

WaveTaylor WaveTaylor::build(int Nmax) {
    if (Nmax < 1) throw std::invalid_argument("WaveTaylor: Nmax >= 1 required");
    if (Nmax > 200) throw std::invalid_argument("WaveTaylor: Nmax > 200 rejected in double mode");

    WaveTaylor t;
    t.nmax_ = Nmax;
    const int nrat = std::min(Nmax, kExactOrder);

    t.u_rat_.assign(nrat + 1, {});
    t.v_rat_.assign(nrat + 1, Rational(0));
    for (int n = 0; n <= nrat; ++n) t.u_rat_[n].assign(n + 1, Rational(0));
    t.v_rat_[0] = Rational(-1);
    if (nrat >= 1) t.u_rat_[1][1] = Rational(1);

    auto urat = [&](int n, int k) -> Rational {
        if (n < 1 || k < 1 || k > n) return Rational(0);
        return t.u_rat_[n][k];
    };

    for (int n = 2; n <= nrat; ++n) {
        // speed coefficient from the sin(x) comparison
        Rational s(0);
        for (int m = 1; m <= n - 1; ++m)
            for (int l = 1; l <= std::min(m, n - m - 1); ++l)
                s += urat(m, l) * urat(n - m, 1 + l);
        t.v_rat_[n - 1] = s / 2;

        // u_{n,k} from the sin(kx) comparison, k = n, n-2, ..., 2
        for (int k = n; k >= 2; k -= 2) {
            Rational acc(0);
            for (int m = 1; m <= n - k; ++m) acc += t.v_rat_[m] * urat(n - m, k);
            acc *= k;
            Rational s1(0);
            for (int m = 1; m <= n - 1; ++m)
                for (int l = std::max(1, k - n + m); l <= std::min(m, k - 1); ++l)
                    s1 += urat(m, l) * urat(n - m, k - l);
            Rational s2(0);
            for (int m = 1; m <= n - 1; ++m)
                for (int l = 1; l <= std::min(m, n - m - k); ++l)
                    s2 += urat(m, l) * urat(n - m, k + l);
            t.u_rat_[n][k] = (acc - Rational(k, 4) * s1 - Rational(k, 2) * s2) / (k - 1);
        }
    }

    // double table for the full order, seeded from the exact part
    t.u_dbl_.assign(Nmax + 1, {});
    t.v_dbl_.assign(Nmax + 1, 0.0);
    for (int n = 0; n <= Nmax; ++n) t.u_dbl_[n].assign(n + 1, 0.0);
    for (int n = 0; n <= nrat; ++n) {
        t.v_dbl_[n] = static_cast<double>(t.v_rat_[n]);
        for (int k = 1; k <= n; ++k) t.u_dbl_[n][k] = static_cast<double>(t.u_rat_[n][k]);
    }
    auto udbl = [&](int n, int k) -> double {
        if (n < 1 || k < 1 || k > n) return 0.0;
        return t.u_dbl_[n][k];
    };
    for (int n = nrat + 1; n <= Nmax; ++n) {
        double s = 0.0;
        for (int m = 1; m <= n - 1; ++m)
            for (int l = 1; l <= std::min(m, n - m - 1); ++l)
                s += udbl(m, l) * udbl(n - m, 1 + l);
        t.v_dbl_[n - 1] = s / 2;
        for (int k = n; k >= 2; k -= 2) {
            double acc = 0.0;
            for (int m = 1; m <= n - k; ++m) acc += t.v_dbl_[m] * udbl(n - m, k);
            acc *= k;
            double s1 = 0.0;
            for (int m = 1; m <= n - 1; ++m)
                for (int l = std::max(1, k - n + m); l <= std::min(m, k - 1); ++l)
                    s1 += udbl(m, l) * udbl(n - m, k - l);
            double s2 = 0.0;
            for (int m = 1; m <= n - 1; ++m)
                for (int l = 1; l <= std::min(m, n - m - k); ++l)
                    s2 += udbl(m, l) * udbl(n - m, k + l);
            t.u_dbl_[n][k] = (acc - 0.25 * k * s1 - 0.5 * k * s2) / (k - 1);
        }
    }
    return t;
}

double WaveTaylor::u(int n, int k) const {
    if (n < 1 || n > nmax_ || k < 1 || k > n) return 0.0;
    return u_dbl_[n][k];
}

double WaveTaylor::v(int n) const {
    if (n < 0 || n > nmax_) return 0.0;
    return v_dbl_[n];
}

Rational WaveTaylor::u_exact(int n, int k) const {
    if (!has_exact(n)) throw std::out_of_range("WaveTaylor: exact entries end at order 40");
    if (k < 1 || k > n) return Rational(0);
    return u_rat_[n][k];
}

Rational WaveTaylor::v_exact(int n) const {
    if (!has_exact(n)) throw std::out_of_range("WaveTaylor: exact entries end at order 40");
    return v_rat_[n];
}

DiagonalSeries diagonal_series(int Nmax) {
    if (Nmax < 3) throw std::invalid_argument("diagonal_series: Nmax >= 3 required");
    DiagonalSeries out;
    // run the closed recurrence a little past Nmax so the ratio at Nmax exists
    const int top = Nmax + 1;
    std::vector<double> d(top + 1, 0.0);
    d[1] = 1.0;
    for (int n = 2; n <= top; ++n) {
        double s = 0.0;
        for (int k = 1; k <= n - 1; ++k) s += (n - k) * d[k] * d[n - k];
        d[n] = s / (2.0 * (1 - n));
    }
    out.diag.assign(d.begin() + 1, d.begin() + Nmax + 1);
    out.root_test.resize(Nmax);
    for (int n = 1; n <= Nmax; ++n)
        out.root_test[n - 1] = std::pow(std::abs(d[n]), -1.0 / n);

    const int n1 = Nmax, n0 = Nmax / 2;
    const double r1 = std::abs(d[n1] / d[n1 + 1]);
    const double r0 = std::abs(d[n0] / d[n0 + 1]);
    out.radius_estimate = (n1 * r1 - n0 * r0) / (n1 - n0);
    return out;
}

double lambert_two_w_half_coeff(int n) {
    // a_1 = 1, |a_{n+1}|/|a_n| = (1+1/n)^{n-1}/2, alternating signs
    double a = 1.0;
    for (int m = 1; m < n; ++m) a *= -std::pow(1.0 + 1.0 / m, m - 1) / 2.0;
    return a;
}

double traveling_residual(const TrigField& u, double v) {
    const TrigField up = derivative(u);
    TrigField r = hilbert(u) - v * TrigField(up) + multiply(u, up, false);
    return norm(r, NormKind::L2);
}

TravelingWave eval_taylor(const WaveTaylor& table, double eps, int N) {
    if (std::abs(eps) >= 0.5)
        throw std::invalid_argument("eval_taylor: |eps| < 0.5 required");
    TravelingWave w;
    w.eps = eps;
    w.source = WaveSource::taylor;
    w.u = TrigField(N);
    double vv = 0.0;
    double ep = 1.0;  // eps^0
    for (int n = 0; n <= table.order(); ++n) {
        vv += table.v(n) * ep;
        ep *= eps;
    }
    ep = eps;
    for (int n = 1; n <= table.order(); ++n) {
        for (int k = n; k >= 1; k -= 2) {
            if (k <= N) w.u.set_cos(k, w.u.cos_coef(k) + table.u(n, k) * ep);
        }
        ep *= eps;
    }
    w.v = vv;
    w.residual_norm = traveling_residual(w.u, w.v);
    return w;
}

namespace {

// Sine-mode residual r_k = a_k (1 + v k) - (k/2) (u^2)_k, k = 1..N.
Eigen::VectorXd wave_residual_vec(const TrigField& u, double v, int N) {
    const TrigField usq = multiply(u, u, false);
    Eigen::VectorXd r(N);
    for (int k = 1; k <= N; ++k)
        r(k - 1) = u.cos_coef(k) * (1.0 + v * k) - 0.5 * k * usq.cos_coef(k);
    return r;
}

}  // namespace

NewtonOutcome newton_refine(const TravelingWave& guess, double eps, int N,
                            const NewtonOptions& opt) {
    NewtonOutcome out;
    TrigField u = guess.u.truncated(N);
    u.set_cos(1, eps);
    double v = guess.v;

    for (int it = 0; it <= opt.max_iter; ++it) {
        Eigen::VectorXd r = wave_residual_vec(u, v, N);
        // converge in the same L2 norm that residual_norm reports
        const double rl2 = std::sqrt(kPi) * r.norm();
        if (rl2 < opt.tol) {
            out.converged = true;
            out.iterations = it;
            break;
        }
        if (it == opt.max_iter || !std::isfinite(rl2)) break;

        // J[k][j]: derivative of r_k wrt a_j (j = 2..N) and wrt v (last column).
        // Direction cos(jx) contributes delta_{kj}(1 + vk) - k * (u cos jx)_k.
        Eigen::MatrixXd J = Eigen::MatrixXd::Zero(N, N);
        for (int j = 2; j <= N; ++j) {
            for (int k = 1; k <= N; ++k) {
                double w = 0.0;
                if (k - j >= 1) w += u.cos_coef(k - j);
                if (j - k >= 1) w += u.cos_coef(j - k);
                if (k + j <= N) w += u.cos_coef(k + j);
                double val = -0.5 * k * w;
                if (k == j) val += 1.0 + v * k;
                J(k - 1, j - 2) = val;
            }
        }
        for (int k = 1; k <= N; ++k) J(k - 1, N - 1) = k * u.cos_coef(k);

        const Eigen::VectorXd dx = J.partialPivLu().solve(-r);
        for (int j = 2; j <= N; ++j) u.set_cos(j, u.cos_coef(j) + dx(j - 2));
        v += dx(N - 1);
    }

    out.wave.eps = eps;
    out.wave.u = u;
    out.wave.v = v;
    out.wave.source = WaveSource::newton;
    out.wave.residual_norm = traveling_residual(u, v);
    return out;
}

ContinuationResult continuation(double eps_max, double d_eps, int N, double tol) {
    if (!(d_eps > 0.0 && d_eps <= 0.02))
        throw std::invalid_argument("continuation: 0 < d_eps <= 0.02 required");
    if (eps_max <= 0.0) throw std::invalid_argument("continuation: eps_max > 0 required");

    ContinuationResult res;
    const WaveTaylor table = WaveTaylor::build(8);
    NewtonOptions opt;
    opt.tol = tol;

    TravelingWave prev;
    prev.u = TrigField(N);
    prev.v = -1.0;
    bool first = true;

    const int steps = static_cast<int>(std::floor(eps_max / d_eps + 1e-9));
    for (int i = 1; i <= steps; ++i) {
        const double eps = i * d_eps;
        TravelingWave seed = prev;
        if (first) seed = eval_taylor(table, eps, N);
        NewtonOutcome no = newton_refine(seed, eps, N, opt);
        if (!no.converged) {
            if (first) throw std::runtime_error("continuation: divergence at the first step");
            return res;
        }
        res.waves.push_back(no.wave);
        res.last_eps = eps;
        prev = no.wave;
        first = false;
    }
    res.reached_eps_max = true;
    return res;
}

std::string wave_to_json(const TravelingWave& w) {
    nlohmann::json j;
    j["eps"] = w.eps;
    j["v"] = w.v;
    j["residual_norm"] = w.residual_norm;
    j["source"] = (w.source == WaveSource::taylor) ? "taylor" : "newton";
    j["u"] = nlohmann::json::parse(to_json(w.u));
    return j.dump();
}

TravelingWave wave_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    TravelingWave w;
    w.eps = j.at("eps").get<double>();
    w.v = j.at("v").get<double>();
    w.residual_norm = j.at("residual_norm").get<double>();
    w.source = j.at("source").get<std::string>() == "taylor" ? WaveSource::taylor
                                                             : WaveSource::newton;
    w.u = field_from_json(j.at("u").dump());
    return w;
}

}  // namespace bhwave
