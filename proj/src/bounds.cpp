#include "bhwave/bounds.hpp"

#include "bhwave/trig_field.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <random>
#include <stdexcept>

namespace bhwave {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kSqrt17 = 4.123105625617661;

BoundReport make_report(std::string name, int N, double value, double bound) {
    BoundReport r;
    r.name = std::move(name);
    r.truncation = N;
    r.computed_value = value;
    r.paper_bound = bound;
    r.satisfied = value <= bound + 1e-10;
    r.margin = bound - value;
    return r;
}

double largest_singular_value(const Eigen::MatrixXd& A) {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(A);
    return svd.singularValues()(0);
}

}  // namespace

BoundReport op_norm_f_sinx(int N) {
    if (N < 8) throw std::invalid_argument("op_norm_f_sinx: N >= 8 required");
    // f sin x - f' cos x = -(f cos x)'. On cos nx it produces
    // ((n+1) sin (n+1)x + (n-1) sin (n-1)x) / 2; rows are sin m, m = 1..N+1.
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(N + 1, N - 1);
    for (int n = 2; n <= N; ++n) {
        const double scale = 1.0 / (n - 1);
        A(n, n - 2) += 0.5 * (n + 1) * scale;
        A(n - 2, n - 2) += 0.5 * (n - 1) * scale;
    }
    return make_report("f_sinx", N, largest_singular_value(A), std::sqrt(3.0));
}

BoundReport op_norm_f_sin2x(int N) {
    if (N < 8) throw std::invalid_argument("op_norm_f_sin2x: N >= 8 required");
    // 2 f sin 2x - f' cos 2x = -(f cos 2x)'; couples modes n -> n +/- 2.
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(N + 2, N - 1);
    for (int n = 2; n <= N; ++n) {
        const double scale = 1.0 / (n - 1);
        A(n + 1, n - 2) += 0.5 * (n + 2) * scale;
        if (n - 2 >= 1) A(n - 3, n - 2) += 0.5 * (n - 2) * scale;
    }
    return make_report("f_sin2x", N, largest_singular_value(A), 0.5 * kSqrt17);
}

namespace {

// Matrix of f -> (f g)' from the X unit basis into the paper-normalized L2
// sine basis (rows 1..2N), for fixed g given by X-basis coordinates.
Eigen::MatrixXd bilinear_matrix(const Eigen::VectorXd& g_coords, int N) {
    TrigField g(N);
    for (int n = 2; n <= N; ++n) g.set_cos(n, g_coords(n - 2) / (n - 1));
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2 * N, N - 1);
    for (int n = 2; n <= N; ++n) {
        TrigField phi(N);
        phi.set_cos(n, 1.0 / (n - 1));
        const TrigField w = derivative(multiply(phi, g, false));
        for (int m = 1; m <= 2 * N && m <= w.truncation(); ++m)
            A(m - 1, n - 2) = w.sin_coef(m);
    }
    return A;
}

}  // namespace

BoundReport bilinear_probe(int N, int trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("bilinear_probe: trials >= 1 required");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    double best = 0.0;
    for (int t = 0; t < trials; ++t) {
        Eigen::VectorXd g(N - 1);
        for (int i = 0; i < N - 1; ++i) g(i) = gauss(rng);
        g.normalize();
        // alternate: fix one side, take the top right singular vector as the other
        for (int sweep = 0; sweep < 6; ++sweep) {
            const Eigen::MatrixXd A = bilinear_matrix(g, N);
            Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinV);
            best = std::max(best, svd.singularValues()(0));
            g = svd.matrixV().col(0);
            g.normalize();
        }
    }
    return make_report("bilinear", N, best, kBilinearB);
}

double cn_constant(int n) {
    if (n < 1) throw std::invalid_argument("cn_constant: n >= 1 required");
    const double nn = static_cast<double>(n) * n;
    double D = 0.0;
    for (int k = n - 3; k >= 1; --k) {
        const double a = k, b = n - k - 2;
        D += nn / (a * a * b * b);
    }
    // E_n summed small-terms-first, then the exact integral of the remainder
    constexpr long K = 1000000;
    double E = 0.0;
    for (long k = K; k >= 1; --k) {
        const double a = static_cast<double>(k), b = static_cast<double>(k) + n;
        E += nn / (a * a * b * b);
    }
    const double Kd = static_cast<double>(K);
    E += 1.0 / Kd + 1.0 / (Kd + n) - (2.0 / n) * std::log1p(n / Kd);
    return D + 2.0 * E;
}

double cn_constant_closed(int n) {
    if (n < 1) throw std::invalid_argument("cn_constant_closed: n >= 1 required");
    const double nn = static_cast<double>(n) * n;
    double D = 0.0;
    for (int k = n - 3; k >= 1; --k) {
        const double a = k, b = n - k - 2;
        D += nn / (a * a * b * b);
    }
    double harmonic = 0.0, sq = 0.0;
    for (int k = n; k >= 1; --k) {
        harmonic += 1.0 / k;
        sq += 1.0 / (static_cast<double>(k) * k);
    }
    const double E = kPi * kPi / 3.0 - sq - 2.0 * harmonic / n;
    return D + 2.0 * E;
}

double implicit_curve_constant(double x) {
    return x * std::sqrt(x * x + 2.5) + 2.5 * std::asinh(std::sqrt(0.4) * x);
}

double xstar_criterion(double x) {
    const double a = 2.0 * kBilinearB * x * x + 4.0 * x;
    return (8.0 * x + kSqrt17 * x * x - 4.0) + 2.0 * std::sqrt(a * implicit_curve_constant(x));
}

double implicit_curve_y(double x) {
    if (x == 0.0) return 0.0;
    const double a = 2.0 * kBilinearB * x * x + 4.0 * x;
    const double b = 8.0 * x + kSqrt17 * x * x - 4.0;
    const double c = implicit_curve_constant(x);
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) throw std::domain_error("implicit_curve_y: no real root (x past x*)");
    return 2.0 * c / (-b + std::sqrt(disc));  // stable small root as a -> 0
}

namespace {

double ode_numerator(double x, double y) {
    return std::sqrt(10.0 + 4.0 * x * x) + (8.0 + 2.0 * kSqrt17 * x) * y +
           4.0 * kBilinearB * x * y * y + 4.0 * y * y;
}

double ode_denominator(double x, double y) {
    return 4.0 - 8.0 * x - 8.0 * x * y - kSqrt17 * x * x -
           4.0 * kBilinearB * x * x * y;
}

}  // namespace

XstarResult find_xstar() {
    XstarResult res;

    double lo = 0.1, hi = 0.4;
    if (!(xstar_criterion(lo) < 0.0 && xstar_criterion(hi) > 0.0))
        throw std::runtime_error("find_xstar: no sign change on [0.1, 0.4]");
    while (hi - lo > 1e-9) {
        const double mid = 0.5 * (lo + hi);
        (xstar_criterion(mid) < 0.0 ? lo : hi) = mid;
    }
    res.xstar = 0.5 * (lo + hi);

    // Comparison ODE integrated in pseudo-time (dx/dt = denominator,
    // dy/dt = numerator), which stays regular through the fold where the
    // denominator vanishes; the fold abscissa must reproduce x*.
    double x = 0.0, y = 0.0;
    const double h = 1e-4;
    auto rk4 = [](double& x, double& y, double h) {
        const double k1x = ode_denominator(x, y), k1y = ode_numerator(x, y);
        const double k2x = ode_denominator(x + 0.5 * h * k1x, y + 0.5 * h * k1y);
        const double k2y = ode_numerator(x + 0.5 * h * k1x, y + 0.5 * h * k1y);
        const double k3x = ode_denominator(x + 0.5 * h * k2x, y + 0.5 * h * k2y);
        const double k3y = ode_numerator(x + 0.5 * h * k2x, y + 0.5 * h * k2y);
        const double k4x = ode_denominator(x + h * k3x, y + h * k3y);
        const double k4y = ode_numerator(x + h * k3x, y + h * k3y);
        x += h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
    };
    double maxdiff = 0.0;
    for (long it = 0; it < 2000000; ++it) {
        const double xp = x, yp = y;
        rk4(x, y, h);
        if (xp <= 0.2 && x > 0.0) maxdiff = std::max(maxdiff, std::abs(yp - implicit_curve_y(xp)));
        if (ode_denominator(x, y) <= 0.0) {
            double a = 0.0, b = h;
            for (int i = 0; i < 60; ++i) {
                const double m = 0.5 * (a + b);
                double xm = xp, ym = yp;
                rk4(xm, ym, m);
                (ode_denominator(xm, ym) <= 0.0 ? b : a) = m;
            }
            double xf = xp, yf = yp;
            rk4(xf, yf, 0.5 * (a + b));
            res.ode_fold = xf;
            break;
        }
    }
    res.curve_max_diff = maxdiff;
    return res;
}

}  // namespace bhwave
