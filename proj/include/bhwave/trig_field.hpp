#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace bhwave {

/// Real 2*pi-periodic function stored as a truncated trigonometric series
///
///   f(x) = mean + sum_{k=1}^{N} cos_coef[k] cos(kx) + sin_coef[k] sin(kx).
///
/// Coefficients beyond the truncation N are implicitly zero. Values are
/// immutable by convention: every operation returns a new field.
class TrigField {
  public:
    TrigField() : cos_(2, 0.0), sin_(2, 0.0) {}
    explicit TrigField(int N) : cos_(N + 1, 0.0), sin_(N + 1, 0.0) {}
    TrigField(double mean, std::vector<double> cos_coef, std::vector<double> sin_coef);

    int truncation() const { return static_cast<int>(cos_.size()) - 1; }
    double mean() const { return mean_; }
    double cos_coef(int k) const { return k <= truncation() ? cos_[k] : 0.0; }
    double sin_coef(int k) const { return k <= truncation() ? sin_[k] : 0.0; }

    void set_mean(double m) { mean_ = m; }
    void set_cos(int k, double v);
    void set_sin(int k, double v);

    /// Complex exponential coefficient \hat f(m), any integer m.
    std::complex<double> hat(int m) const;

    bool is_even(double tol = 0.0) const;
    bool is_odd(double tol = 0.0) const;
    bool is_mean_zero(double tol = 0.0) const { return std::abs(mean_) <= tol; }
    bool all_finite() const;

    /// Copy re-truncated to N (pad with zeros or drop tail).
    TrigField truncated(int N) const;

    /// f(x - a), computed exactly in coefficient space.
    TrigField translated(double a) const;

    /// f(n x) / n, the n-fold rescaling that maps solutions to solutions.
    TrigField fold_rescaled(int n) const;

    double eval(double x) const;

    TrigField& operator+=(const TrigField& g);
    TrigField& operator-=(const TrigField& g);
    TrigField& operator*=(double s);
    friend TrigField operator+(TrigField f, const TrigField& g) { return f += g; }
    friend TrigField operator-(TrigField f, const TrigField& g) { return f -= g; }
    friend TrigField operator*(double s, TrigField f) { return f *= s; }

  private:
    double mean_ = 0.0;
    std::vector<double> cos_;  // index 0 unused
    std::vector<double> sin_;
};

/// Fourier multiplier acting coefficient-wise in the exponential basis.
struct MultiplierOp {
    std::string name;
    std::function<std::complex<double>(int)> symbol;  // defined for all integers

    /// A multiplier maps real fields to real fields iff symbol(-k) == conj(symbol(k)).
    bool real_preserving(int N) const;
};

MultiplierOp hilbert_op();     // -i sgn k, zero on the mean
MultiplierOp derivative_op();  // i k
MultiplierOp lambda_op();      // |k|

enum class NormKind {
    L2_paper,  // (1/pi) integral normalization: ||sin nx|| = ||cos nx|| = 1
    L2,        // sqrt(int_0^{2pi} f^2 dx)
    Hk,        // sum (1+k^2)^s weights on the L2 convention
    HdotK,     // homogeneous variant, mean not measured
    Xnorm      // ||cos nx||_X = n - 1; even mean-zero fields with cos_coef[1] = 0
};

/// norm(f, kind[, k]) where k is the Sobolev index for Hk / HdotK.
double norm(const TrigField& f, NormKind kind, int k = 0);

/// Inner product int_0^{2pi} f g dx.
double inner_l2(const TrigField& f, const TrigField& g);

/// Throws std::invalid_argument if the symbol is not real-preserving.
TrigField apply_multiplier(const MultiplierOp& op, const TrigField& f);

TrigField derivative(const TrigField& f);
TrigField hilbert(const TrigField& f);

/// Antiderivative with zero mean; requires mean-zero input.
TrigField antiderivative(const TrigField& f);

/// Pointwise product via an aliasing-free grid (>= 3N+2 points).
/// With dealias set, modes above floor(2N/3) of the result are zeroed.
TrigField multiply(const TrigField& f, const TrigField& g, bool dealias);

/// Equispaced samples f(2*pi*j/M), j = 0..M-1.
std::vector<double> to_grid(const TrigField& f, int M);

struct GridInversion {
    TrigField field;
    bool aliasing_warning = false;  // set when M < 2N+1
};

/// Discrete trigonometric interpolation of samples, truncated at N.
GridInversion from_grid(const std::vector<double>& samples, int N);

/// JSON round-trip used by every downstream module and the CLI:
/// {"mean": x, "cos": [...], "sin": [...]} with 1-based arrays flattened.
std::string to_json(const TrigField& f);
TrigField field_from_json(const std::string& json_text);

}  // namespace bhwave
