#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bhwave/wave.hpp"

#include <cmath>

using namespace bhwave;

TEST_CASE("taylor table reproduces the low-order rationals") {
    const WaveTaylor t = WaveTaylor::build(6);
    CHECK(t.u_exact(2, 2) == Rational(-1, 2));
    CHECK(t.u_exact(3, 3) == Rational(3, 8));
    CHECK(t.u_exact(4, 4) == Rational(-1, 3));
    CHECK(t.u_exact(4, 2) == Rational(-1, 8));
    CHECK(t.v_exact(0) == Rational(-1));
    CHECK(t.v_exact(1) == Rational(0));
    CHECK(t.v_exact(2) == Rational(-1, 4));
    CHECK(t.v_exact(4) == Rational(-5, 32));
}

TEST_CASE("parity zeros: u_{n,k} = 0 for odd n-k, v odd = 0") {
    const WaveTaylor t = WaveTaylor::build(12);
    for (int n = 1; n <= 12; ++n)
        for (int k = 1; k <= n; ++k)
            if ((n - k) % 2 == 1) CHECK(t.u_exact(n, k) == Rational(0));
    for (int n = 1; n <= 11; n += 2) CHECK(t.v_exact(n) == Rational(0));
    CHECK(t.u_exact(3, 1) == Rational(0));
}

TEST_CASE("table bounds checking") {
    CHECK_THROWS_AS(WaveTaylor::build(0), std::invalid_argument);
    CHECK_THROWS_AS(WaveTaylor::build(201), std::invalid_argument);
    const WaveTaylor t = WaveTaylor::build(45);
    CHECK(t.has_exact(40));
    CHECK(!t.has_exact(41));
    CHECK(std::isfinite(t.u(45, 45)));
}

TEST_CASE("diagonal matches the 2 W(x/2) series") {
    const DiagonalSeries d = diagonal_series(30);
    CHECK(d.diag[1] == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(d.diag[2] == doctest::Approx(3.0 / 8.0).epsilon(1e-15));
    CHECK(d.diag[3] == doctest::Approx(-1.0 / 3.0).epsilon(1e-14));
    for (int n = 1; n <= 30; ++n) {
        const double oracle = lambert_two_w_half_coeff(n);
        CHECK(std::abs(d.diag[n - 1] - oracle) <= 1e-10 * std::abs(oracle));
    }
}

TEST_CASE("radius estimate approaches 2/e") {
    const double two_over_e = 2.0 / std::exp(1.0);
    const DiagonalSeries d = diagonal_series(60);
    CHECK(std::abs(d.radius_estimate - two_over_e) < 0.02 * two_over_e);
    // the raw root test is biased high by the subexponential prefactor
    CHECK(d.root_test[59] > two_over_e);
}

TEST_CASE("eval_taylor low order values") {
    const WaveTaylor t = WaveTaylor::build(12);

    const TravelingWave w0 = eval_taylor(t, 0.0, 16);
    CHECK(norm(w0.u, NormKind::L2) == 0.0);
    CHECK(w0.v == doctest::Approx(-1.0));

    const TravelingWave w = eval_taylor(WaveTaylor::build(3), 0.1, 16);
    CHECK(w.u.cos_coef(1) == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(w.u.cos_coef(2) == doctest::Approx(-0.005).epsilon(1e-13));
    CHECK(w.u.cos_coef(3) == doctest::Approx(0.000375).epsilon(1e-13));
    CHECK(w.v == doctest::Approx(-1.0025).epsilon(1e-15));

    // residual decays like |eps|^{Nmax+1}: two more orders gain ~eps^2
    const TravelingWave w12 = eval_taylor(t, 0.1, 32);
    CHECK(w12.residual_norm < 1e-11);
    const TravelingWave w14 = eval_taylor(WaveTaylor::build(14), 0.1, 32);
    CHECK(w14.residual_norm < w12.residual_norm / 30.0);

    CHECK_THROWS_AS(eval_taylor(t, 0.6, 16), std::invalid_argument);
}

TEST_CASE("newton refinement from a taylor seed") {
    const WaveTaylor t = WaveTaylor::build(3);
    const TravelingWave seed = eval_taylor(t, 0.1, 64);
    const NewtonOutcome out = newton_refine(seed, 0.1, 64, {});
    CHECK(out.converged);
    CHECK(out.iterations <= 5);
    CHECK(out.wave.residual_norm < 1e-12);
    CHECK(out.wave.u.cos_coef(1) == 0.1);

    // zero seed at eps = 0 stays at the trivial solution
    TravelingWave trivial;
    trivial.u = TrigField(16);
    trivial.v = -1.0;
    const NewtonOutcome z = newton_refine(trivial, 0.0, 16, {});
    CHECK(z.converged);
    CHECK(norm(z.wave.u, NormKind::L2) == 0.0);
    CHECK(z.wave.v == doctest::Approx(-1.0));
}

TEST_CASE("newton agrees with the order-30 series") {
    const WaveTaylor t = WaveTaylor::build(30);
    for (double eps : {0.05, 0.1, 0.15}) {
        const TravelingWave ts = eval_taylor(t, eps, 64);
        const NewtonOutcome nw = newton_refine(ts, eps, 64, {});
        REQUIRE(nw.converged);
        const TrigField diff = nw.wave.u - ts.u;
        CHECK(norm(diff, NormKind::L2) < 1e-10);
    }
}

TEST_CASE("scaling family and symmetry") {
    const WaveTaylor t = WaveTaylor::build(20);
    const NewtonOutcome out = newton_refine(eval_taylor(t, 0.12, 48), 0.12, 48, {});
    REQUIRE(out.converged);

    for (int n : {2, 3}) {
        const TrigField un = out.wave.u.fold_rescaled(n);
        CHECK(traveling_residual(un, out.wave.v / n) < 1e-12);
    }

    // u_{-eps}(x + pi) = u_eps(x)
    const TravelingWave plus = eval_taylor(t, 0.1, 40);
    const TravelingWave minus = eval_taylor(t, -0.1, 40);
    const TrigField shifted = minus.u.translated(-M_PI);
    const TrigField diff = shifted - plus.u;
    CHECK(norm(diff, NormKind::L2) < 1e-12);
    CHECK(minus.v == doctest::Approx(plus.v).epsilon(1e-14));
}

TEST_CASE("computed waves are even") {
    const WaveTaylor t = WaveTaylor::build(10);
    const NewtonOutcome out = newton_refine(eval_taylor(t, 0.2, 48), 0.2, 48, {});
    REQUIRE(out.converged);
    CHECK(out.wave.u.is_even(0.0));  // sine coefficients never touched
    CHECK(out.wave.u.mean() == 0.0);
}

TEST_CASE("continuation marches the branch") {
    const ContinuationResult res = continuation(0.2, 0.01, 64, 1e-11);
    CHECK(res.reached_eps_max);
    CHECK(res.waves.size() == 20);
    for (const auto& w : res.waves) CHECK(w.residual_norm < 1e-11);
    CHECK(res.last_eps == doctest::Approx(0.2));

    CHECK_THROWS_AS(continuation(0.2, 0.0, 32, 1e-10), std::invalid_argument);
    CHECK_THROWS_AS(continuation(0.2, 0.5, 32, 1e-10), std::invalid_argument);
}

TEST_CASE("wave json round trip") {
    const WaveTaylor t = WaveTaylor::build(8);
    const TravelingWave w = eval_taylor(t, 0.1, 16);
    const TravelingWave back = wave_from_json(wave_to_json(w));
    CHECK(back.eps == w.eps);
    CHECK(back.v == w.v);
    CHECK(back.residual_norm == w.residual_norm);
    CHECK(norm(back.u - w.u, NormKind::L2) == 0.0);
}
