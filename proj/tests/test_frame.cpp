#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bhwave/frame.hpp"
#include "bhwave/spectrum.hpp"

#include <cmath>
#include <random>

using namespace bhwave;

TEST_CASE("wave family reproduces newton waves locally") {
    WaveFamily family(0.1, 48);
    for (double eps : {0.1, 0.10005, 0.09985}) {
        const TravelingWave w = family.wave(eps);
        CHECK(w.residual_norm < 1e-11);
        CHECK(w.u.cos_coef(1) == doctest::Approx(eps).epsilon(1e-12));
    }
    // outside the trust window the family re-centers transparently
    const TravelingWave far = family.wave(0.13);
    CHECK(far.residual_norm < 1e-11);
}

TEST_CASE("dual pairings annihilate nonzero-eigenvalue eigenvectors") {
    const double eps = 0.1;
    WaveFamily family(eps, 32);
    const TravelingWave w = family.wave(eps);
    const OperatorMatrix A = assemble_L(w, 128);
    const EigenPairSet p = eigen_spectrum(A, w, 6);

    for (const auto& [n, vec] : p.vectors) {
        // rebuild a real field from the eigenvector pair (n, -n)
        TrigField e(A.N);
        for (int m = 1; m <= A.N; ++m) {
            const auto c = vec(A.index(m)) + std::conj(vec(A.index(-m)));
            e.set_cos(m, c.real());
            e.set_sin(m, -c.imag());
        }
        const double scale = std::max(1e-12, norm(e, NormKind::L2));
        CHECK(std::abs(family.y_plus(e, eps)) / scale < 1e-5);
        CHECK(std::abs(family.y_minus(e, eps)) / scale < 1e-5);
    }

    // normalization: the pairings are 1 on their own directions, 0 across
    CHECK(family.y_plus(family.phi_plus(eps), eps) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(family.y_minus(family.phi_minus(eps), eps) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(family.y_plus(family.phi_minus(eps), eps)) < 1e-14);
    CHECK(std::abs(family.y_minus(family.phi_plus(eps), eps)) < 1e-14);
}

TEST_CASE("frame_fit recovers exact members of the family") {
    WaveFamily family(0.1, 48);
    const TrigField f = family.wave(0.1).u.translated(-0.3);  // u_{0.1}(x + 0.3)
    const FrameState st = frame_fit(f, 0.098, 0.29, family);
    REQUIRE(st.status == FrameStatus::ok);
    CHECK(std::abs(st.eps - 0.1) < 1e-10);
    CHECK(std::abs(st.a - 0.3) < 1e-10);
    CHECK(norm(st.g, NormKind::L2) < 1e-10);
}

TEST_CASE("frame_fit resolves a small translation offset") {
    WaveFamily family(0.1, 48);
    const TrigField f = family.wave(0.1).u.translated(-(0.3 + 1e-4));
    const FrameState st = frame_fit(f, 0.1, 0.3, family);
    REQUIRE(st.status == FrameStatus::ok);
    CHECK(st.a == doctest::Approx(0.3001).epsilon(1e-9));
}

TEST_CASE("perturbed wave decomposes with small g") {
    WaveFamily family(0.1, 48);
    TrigField f = family.wave(0.1).u;
    TrigField p(48);
    p.set_cos(2, 1e-3);
    f += p;
    const FrameState st = frame_fit(f, 0.1, 0.0, family);
    REQUIRE(st.status == FrameStatus::ok);
    CHECK(std::abs(st.eps - 0.1) < 5e-3);
    CHECK(norm(st.g, NormKind::L2) < 3e-3);
    CHECK(std::abs(family.y_plus(st.g, st.eps)) < 1e-9);
    CHECK(std::abs(family.y_minus(st.g, st.eps)) < 1e-9);

    // reconstruction: f = u_eps(. + a) + g(. + a)
    const TrigField rebuilt =
        family.wave(st.eps).u.translated(-st.a) + st.g.translated(-st.a);
    CHECK(norm(rebuilt - f, NormKind::L2) < 1e-10);
}

TEST_CASE("frame_fit idempotence") {
    WaveFamily family(0.12, 48);
    TrigField p(48);
    p.set_cos(3, 2e-3);
    p.set_sin(2, -1e-3);
    const TrigField f = family.wave(0.12).u.translated(-0.8) + p.translated(-0.8);
    const FrameState st = frame_fit(f, 0.12, 0.8, family);
    REQUIRE(st.status == FrameStatus::ok);

    const TrigField f2 = family.wave(st.eps).u.translated(-st.a) + st.g.translated(-st.a);
    const FrameState st2 = frame_fit(f2, st.eps, st.a, family);
    REQUIRE(st2.status == FrameStatus::ok);
    CHECK(std::abs(st2.eps - st.eps) < 1e-10);
    CHECK(std::abs(st2.a - st.a) < 1e-10);
    CHECK(norm(st2.g - st.g, NormKind::L2) < 1e-10);
}

TEST_CASE("stability bound over randomized perturbations") {
    WaveFamily family(0.1, 48);
    const TrigField u0 = family.wave(0.1).u;
    std::mt19937_64 rng(99);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> size_dist(1e-4, 5e-3);

    for (int trial = 0; trial < 20; ++trial) {
        TrigField p(16);
        for (int k = 1; k <= 16; ++k) {
            p.set_cos(k, gauss(rng) / (k * k));
            p.set_sin(k, gauss(rng) / (k * k));
        }
        p.set_mean(0.0);
        const double target = size_dist(rng);
        p *= target / norm(p, NormKind::Hk, 2);
        const TrigField f = u0 + p;
        const FrameState st = frame_fit(f, 0.1, 0.0, family);
        REQUIRE(st.status == FrameStatus::ok);
        const double pert = norm(p, NormKind::Hk, 2);
        CHECK(norm(st.g, NormKind::Hk, 2) <= 3.0 * pert);
        CHECK(std::abs(st.eps - 0.1) <= 3.0 * pert);
    }
}
