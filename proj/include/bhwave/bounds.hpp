#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bhwave {

struct BoundReport {
    std::string name;
    int truncation = 0;
    double computed_value = 0.0;
    double paper_bound = 0.0;
    bool satisfied = false;  // computed_value <= paper_bound + 1e-10
    double margin = 0.0;     // paper_bound - computed_value
};

/// Largest singular value of f -> f sin x - f' cos x from the X unit basis
/// {cos nx/(n-1), 2 <= n <= N} into the (1/pi)-normalized L2. Bound sqrt(3).
BoundReport op_norm_f_sinx(int N);

/// Same for f -> 2 f sin 2x - f' cos 2x. Bound 0.5 sqrt(17).
BoundReport op_norm_f_sin2x(int N);

/// Randomized lower bound for ||(fg)'|| over X-unit pairs, refined by
/// alternating singular-vector maximization. Bound B = sqrt(pi^2/3 + 869/144).
BoundReport bilinear_probe(int N, int trials, std::uint64_t seed);

/// C_n = D_n + 2 E_n by direct summation; E_n truncated at 10^6 terms with
/// the integral tail added (accurate to ~1e-13).
double cn_constant(int n);

/// Exact tail-free evaluation via the telescoped partial fractions,
/// E_n = pi^2/3 - sum_{j<=n} 1/j^2 - 2 H_n / n. Used as the cross-check.
double cn_constant_closed(int n);

constexpr double kBilinearB = 3.0536192224831623;  // sqrt(pi^2/3 + 869/144)

struct XstarResult {
    double xstar = 0.0;          // bisection root of the closed-form criterion
    double ode_fold = 0.0;       // blow-up abscissa of the comparison ODE
    double curve_max_diff = 0.0; // max |y_ode - y_implicit| on [0, 0.2]
};

/// Root of R(x) = (8x + sqrt(17)x^2 - 4)
///              + 2 sqrt((2Bx^2+4x)(x sqrt(x^2+2.5) + 2.5 asinh(sqrt(0.4)x)))
/// on [0.1, 0.4] to 1e-8, cross-checked by integrating the comparison ODE
/// (desingularized in pseudo-time) until its denominator vanishes.
XstarResult find_xstar();

double xstar_criterion(double x);        // R(x)
double implicit_curve_y(double x);       // nonnegative root y(x); y(0) = 0
double implicit_curve_constant(double x);// x sqrt(x^2+2.5) + 2.5 asinh(sqrt(0.4) x)

}  // namespace bhwave
