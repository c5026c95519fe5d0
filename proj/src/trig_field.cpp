#include "bhwave/trig_field.hpp"

#include "bhwave/fft.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bhwave {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

int sgn(int m) { return (m > 0) - (m < 0); }
}  // namespace

TrigField::TrigField(double mean, std::vector<double> cos_coef, std::vector<double> sin_coef)
    : mean_(mean) {
    const size_t n = std::max(cos_coef.size(), sin_coef.size());
    cos_.assign(n + 1, 0.0);
    sin_.assign(n + 1, 0.0);
    for (size_t i = 0; i < cos_coef.size(); ++i) cos_[i + 1] = cos_coef[i];
    for (size_t i = 0; i < sin_coef.size(); ++i) sin_[i + 1] = sin_coef[i];
}

void TrigField::set_cos(int k, double v) {
    if (k < 1) throw std::out_of_range("set_cos: k must be >= 1");
    if (k > truncation()) {
        cos_.resize(k + 1, 0.0);
        sin_.resize(k + 1, 0.0);
    }
    cos_[k] = v;
}

void TrigField::set_sin(int k, double v) {
    if (k < 1) throw std::out_of_range("set_sin: k must be >= 1");
    if (k > truncation()) {
        cos_.resize(k + 1, 0.0);
        sin_.resize(k + 1, 0.0);
    }
    sin_[k] = v;
}

std::complex<double> TrigField::hat(int m) const {
    if (m == 0) return {mean_, 0.0};
    const int k = std::abs(m);
    if (k > truncation()) return {0.0, 0.0};
    return {cos_[k] / 2.0, -sgn(m) * sin_[k] / 2.0};
}

bool TrigField::is_even(double tol) const {
    for (int k = 1; k <= truncation(); ++k)
        if (std::abs(sin_[k]) > tol) return false;
    return true;
}

bool TrigField::is_odd(double tol) const {
    if (std::abs(mean_) > tol) return false;
    for (int k = 1; k <= truncation(); ++k)
        if (std::abs(cos_[k]) > tol) return false;
    return true;
}

bool TrigField::all_finite() const {
    if (!std::isfinite(mean_)) return false;
    for (int k = 1; k <= truncation(); ++k)
        if (!std::isfinite(cos_[k]) || !std::isfinite(sin_[k])) return false;
    return true;
}

TrigField TrigField::truncated(int N) const {
    TrigField out(N);
    out.mean_ = mean_;
    const int kmax = std::min(N, truncation());
    for (int k = 1; k <= kmax; ++k) {
        out.cos_[k] = cos_[k];
        out.sin_[k] = sin_[k];
    }
    return out;
}

TrigField TrigField::translated(double a) const {
    // f(x - a): cos k(x-a) = cos kx cos ka + sin kx sin ka. Translation is
    // exactly 2*pi-periodic; reducing first keeps k*a small enough that the
    // recurrence phases stay accurate for large unwrapped angles.
    const double ar = std::remainder(a, 2.0 * kPi);
    TrigField out(truncation());
    out.mean_ = mean_;
    const double c1 = std::cos(ar), s1 = std::sin(ar);
    double ck = 1.0, sk = 0.0;
    for (int k = 1; k <= truncation(); ++k) {
        const double cn = ck * c1 - sk * s1;
        const double sn = sk * c1 + ck * s1;
        ck = cn;
        sk = sn;
        out.cos_[k] = cos_[k] * ck - sin_[k] * sk;
        out.sin_[k] = sin_[k] * ck + cos_[k] * sk;
    }
    return out;
}

TrigField TrigField::fold_rescaled(int n) const {
    if (n < 1) throw std::invalid_argument("fold_rescaled: n >= 1");
    TrigField out(truncation() * n);
    out.mean_ = mean_ / n;
    for (int k = 1; k <= truncation(); ++k) {
        out.cos_[k * n] = cos_[k] / n;
        out.sin_[k * n] = sin_[k] / n;
    }
    return out;
}

double TrigField::eval(double x) const {
    double acc = mean_;
    for (int k = 1; k <= truncation(); ++k)
        acc += cos_[k] * std::cos(k * x) + sin_[k] * std::sin(k * x);
    return acc;
}

TrigField& TrigField::operator+=(const TrigField& g) {
    if (g.truncation() > truncation()) {
        cos_.resize(g.cos_.size(), 0.0);
        sin_.resize(g.sin_.size(), 0.0);
    }
    mean_ += g.mean_;
    for (int k = 1; k <= g.truncation(); ++k) {
        cos_[k] += g.cos_[k];
        sin_[k] += g.sin_[k];
    }
    return *this;
}

TrigField& TrigField::operator-=(const TrigField& g) {
    if (g.truncation() > truncation()) {
        cos_.resize(g.cos_.size(), 0.0);
        sin_.resize(g.sin_.size(), 0.0);
    }
    mean_ -= g.mean_;
    for (int k = 1; k <= g.truncation(); ++k) {
        cos_[k] -= g.cos_[k];
        sin_[k] -= g.sin_[k];
    }
    return *this;
}

TrigField& TrigField::operator*=(double s) {
    mean_ *= s;
    for (int k = 1; k <= truncation(); ++k) {
        cos_[k] *= s;
        sin_[k] *= s;
    }
    return *this;
}

bool MultiplierOp::real_preserving(int N) const {
    if (std::abs(symbol(0).imag()) > 0.0) return false;
    for (int k = 1; k <= N; ++k)
        if (std::abs(symbol(-k) - std::conj(symbol(k))) > 0.0) return false;
    return true;
}

MultiplierOp hilbert_op() {
    return {"H", [](int k) -> std::complex<double> {
                return {0.0, static_cast<double>(-sgn(k))};
            }};
}

MultiplierOp derivative_op() {
    return {"d/dx", [](int k) -> std::complex<double> { return {0.0, static_cast<double>(k)}; }};
}

MultiplierOp lambda_op() {
    return {"|D|", [](int k) -> std::complex<double> {
                return {static_cast<double>(std::abs(k)), 0.0};
            }};
}

TrigField apply_multiplier(const MultiplierOp& op, const TrigField& f) {
    const int N = f.truncation();
    if (!op.real_preserving(N))
        throw std::invalid_argument("apply_multiplier: symbol '" + op.name +
                                    "' is not real-preserving");
    TrigField out(N);
    out.set_mean(op.symbol(0).real() * f.mean());
    for (int k = 1; k <= N; ++k) {
        const std::complex<double> c = op.symbol(k) * f.hat(k);
        if (c != 0.0) {
            out.set_cos(k, 2.0 * c.real());
            out.set_sin(k, -2.0 * c.imag());
        }
    }
    return out;
}

TrigField derivative(const TrigField& f) { return apply_multiplier(derivative_op(), f); }
TrigField hilbert(const TrigField& f) { return apply_multiplier(hilbert_op(), f); }

TrigField antiderivative(const TrigField& f) {
    if (f.mean() != 0.0)
        throw std::invalid_argument("antiderivative: field must be mean-zero");
    const int N = f.truncation();
    TrigField out(N);
    for (int k = 1; k <= N; ++k) {
        out.set_cos(k, -f.sin_coef(k) / k);
        out.set_sin(k, f.cos_coef(k) / k);
    }
    return out;
}

double norm(const TrigField& f, NormKind kind, int s) {
    const int N = f.truncation();
    double acc = 0.0;
    switch (kind) {
        case NormKind::L2_paper:
            acc = 2.0 * f.mean() * f.mean();
            for (int k = 1; k <= N; ++k)
                acc += f.cos_coef(k) * f.cos_coef(k) + f.sin_coef(k) * f.sin_coef(k);
            return std::sqrt(acc);
        case NormKind::L2:
            acc = 2.0 * kPi * f.mean() * f.mean();
            for (int k = 1; k <= N; ++k)
                acc += kPi * (f.cos_coef(k) * f.cos_coef(k) + f.sin_coef(k) * f.sin_coef(k));
            return std::sqrt(acc);
        case NormKind::Hk:
            acc = 2.0 * kPi * f.mean() * f.mean();
            for (int k = 1; k <= N; ++k) {
                const double w = std::pow(1.0 + static_cast<double>(k) * k, s);
                acc += kPi * w * (f.cos_coef(k) * f.cos_coef(k) + f.sin_coef(k) * f.sin_coef(k));
            }
            return std::sqrt(acc);
        case NormKind::HdotK:
            for (int k = 1; k <= N; ++k) {
                const double w = std::pow(static_cast<double>(k), 2 * s);
                acc += kPi * w * (f.cos_coef(k) * f.cos_coef(k) + f.sin_coef(k) * f.sin_coef(k));
            }
            return std::sqrt(acc);
        case NormKind::Xnorm:
            if (!f.is_even(0.0) || f.mean() != 0.0 || f.cos_coef(1) != 0.0)
                throw std::invalid_argument(
                    "norm: Xnorm requires an even mean-zero field with cos_coef[1] = 0");
            for (int k = 2; k <= N; ++k) {
                const double w = static_cast<double>(k - 1) * (k - 1);
                acc += w * f.cos_coef(k) * f.cos_coef(k);
            }
            return std::sqrt(acc);
    }
    return 0.0;
}

double inner_l2(const TrigField& f, const TrigField& g) {
    double acc = 2.0 * kPi * f.mean() * g.mean();
    const int N = std::min(f.truncation(), g.truncation());
    for (int k = 1; k <= N; ++k)
        acc += kPi * (f.cos_coef(k) * g.cos_coef(k) + f.sin_coef(k) * g.sin_coef(k));
    return acc;
}

TrigField multiply(const TrigField& f, const TrigField& g, bool dealias) {
    const int N = std::max(f.truncation(), g.truncation());
    const int M = fft::nice_size(3 * N + 2);
    const auto fs = to_grid(f, M);
    const auto gs = to_grid(g, M);
    std::vector<double> prod(M);
    for (int j = 0; j < M; ++j) prod[j] = fs[j] * gs[j];
    TrigField out = from_grid(prod, N).field;
    if (dealias) {
        const int cutoff = (2 * N) / 3;
        for (int k = cutoff + 1; k <= N; ++k) {
            out.set_cos(k, 0.0);
            out.set_sin(k, 0.0);
        }
    }
    return out;
}

std::vector<double> to_grid(const TrigField& f, int M) {
    const int N = f.truncation();
    std::vector<std::complex<double>> spec(M / 2 + 1, 0.0);
    spec[0] = f.mean();
    for (int k = 1; k <= std::min(N, M / 2); ++k) spec[k] = f.hat(k);
    return fft::inverse(spec, M);
}

GridInversion from_grid(const std::vector<double>& samples, int N) {
    const int M = static_cast<int>(samples.size());
    const auto spec = fft::forward(samples);
    GridInversion gi;
    gi.field = TrigField(N);
    gi.field.set_mean(spec[0].real() / M);
    for (int k = 1; k <= std::min(N, M / 2); ++k) {
        gi.field.set_cos(k, 2.0 * spec[k].real() / M);
        gi.field.set_sin(k, -2.0 * spec[k].imag() / M);
    }
    gi.aliasing_warning = (M < 2 * N + 1);
    return gi;
}

std::string to_json(const TrigField& f) {
    nlohmann::json j;
    j["mean"] = f.mean();
    std::vector<double> c, s;
    for (int k = 1; k <= f.truncation(); ++k) {
        c.push_back(f.cos_coef(k));
        s.push_back(f.sin_coef(k));
    }
    j["cos"] = c;
    j["sin"] = s;
    return j.dump();
}

TrigField field_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    return TrigField(j.at("mean").get<double>(),
                     j.at("cos").get<std::vector<double>>(),
                     j.at("sin").get<std::vector<double>>());
}

}  // namespace bhwave
