#pragma once

#include "bhwave/trig_field.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <vector>

namespace bhwave {

using Rational = boost::multiprecision::cpp_rational;

/// Triangular coefficient table u_{n,k} (1 <= k <= n) and speed sequence v_n
/// for the amplitude expansion of the traveling-wave branch. Entries are
/// exact rationals up to order 40 and doubles beyond.
class WaveTaylor {
  public:
    /// Fill the table up to order Nmax by the sin(kx) / sin(x) comparison
    /// recurrence. Rejects Nmax > 200 (double overflow territory) and Nmax < 1.
    static WaveTaylor build(int Nmax);

    static constexpr int kExactOrder = 40;

    int order() const { return nmax_; }
    double u(int n, int k) const;
    double v(int n) const;
    bool has_exact(int n) const { return n <= std::min(nmax_, kExactOrder); }
    Rational u_exact(int n, int k) const;  // valid for n <= min(order, 40)
    Rational v_exact(int n) const;

  private:
    int nmax_ = 0;
    std::vector<std::vector<Rational>> u_rat_;  // u_rat_[n][k], n <= 40
    std::vector<Rational> v_rat_;
    std::vector<std::vector<double>> u_dbl_;
    std::vector<double> v_dbl_;
};

struct DiagonalSeries {
    std::vector<double> diag;        // u_{n,n}, index n = 1..Nmax
    std::vector<double> root_test;   // |u_{n,n}|^{-1/n}
    double radius_estimate = 0.0;    // extrapolated ratio-test value at n = Nmax
};

/// Closed recurrence for the diagonal (1-n) u_{n,n} = (1/2) sum (n-k) u_k u_{n-k}.
/// The generating function is 2 W(x/2), so the estimate should approach 2/e.
/// The raw root test carries an O(log n / n) bias from the subexponential
/// prefactor, so radius_estimate uses the ratio test with 1/n Richardson
/// extrapolation between orders Nmax/2 and Nmax.
DiagonalSeries diagonal_series(int Nmax);

/// Taylor coefficient of x^n in 2 W(x/2): (-n)^{n-1} / (n! 2^{n-1}).
/// Independent reference series for the diagonal.
double lambert_two_w_half_coeff(int n);

enum class WaveSource { taylor, newton };

struct TravelingWave {
    double eps = 0.0;
    TrigField u;       // even, mean-zero cosine profile
    double v = -1.0;   // wave speed
    double residual_norm = 0.0;  // L2 norm of Hu - v u' + u u'
    WaveSource source = WaveSource::taylor;
};

/// L2 residual of the traveling-wave relation for any (u, v) pair.
double traveling_residual(const TrigField& u, double v);

/// Sum the series at amplitude eps into an N-mode field. |eps| < 0.5.
TravelingWave eval_taylor(const WaveTaylor& table, double eps, int N);

struct NewtonOptions {
    double tol = 1e-12;
    int max_iter = 25;
};

struct NewtonOutcome {
    bool converged = false;
    int iterations = 0;
    TravelingWave wave;
};

/// Solve the truncated sine-mode system with cos_coef[1] pinned to eps.
NewtonOutcome newton_refine(const TravelingWave& guess, double eps, int N,
                            const NewtonOptions& opt = {});

struct ContinuationResult {
    std::vector<TravelingWave> waves;
    double last_eps = 0.0;
    bool reached_eps_max = false;
};

/// March eps from 0 in steps d_eps (0 < d_eps <= 0.02), seeding each solve
/// with the previous wave; stops at eps_max or the first Newton divergence.
ContinuationResult continuation(double eps_max, double d_eps, int N, double tol);

std::string wave_to_json(const TravelingWave& w);
TravelingWave wave_from_json(const std::string& text);

}  // namespace bhwave
