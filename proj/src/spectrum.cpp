#include "bhwave/spectrum.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bhwave {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
const std::complex<double> kI(0.0, 1.0);

int sgn(int m) { return (m > 0) - (m < 0); }
}  // namespace

double OperatorMatrix::reality_defect() const {
    double worst = 0.0;
    for (int a = 0; a < dim(); ++a)
        for (int b = 0; b < dim(); ++b) {
            const int m = frequency(a), mp = frequency(b);
            const auto d = entries(index(-m), index(-mp)) - std::conj(entries(a, b));
            worst = std::max(worst, std::abs(d));
        }
    return worst;
}

OperatorMatrix assemble_L(const TravelingWave& wave, int N) {
    if (wave.residual_norm >= 1e-8)
        throw std::invalid_argument("assemble_L: wave residual too large");
    if (N < 4 * wave.u.truncation())
        throw std::invalid_argument("assemble_L: N >= 4 x wave truncation required");

    OperatorMatrix A;
    A.N = N;
    A.entries = Eigen::MatrixXcd::Zero(2 * N, 2 * N);
    const int Nw = wave.u.truncation();

    for (int mp = -N; mp <= N; ++mp) {
        if (mp == 0) continue;
        const int col = A.index(mp);
        A.entries(col, col) += kI * (-wave.v * mp - sgn(mp));
        for (int j = -Nw; j <= Nw; ++j) {
            if (j == 0) continue;
            const int m = mp + j;
            if (m == 0 || m < -N || m > N) continue;
            // (u e^{im'x})_x picks up i m uhat(m - m')
            A.entries(A.index(m), col) += kI * static_cast<double>(m) *
                                          (wave.u.cos_coef(std::abs(j)) / 2.0);
        }
    }
    return A;
}

double c_eps(const TravelingWave& wave) {
    const int M = std::max(8 * wave.u.truncation(), 2048);
    const auto samples = to_grid(wave.u, M);
    double acc = 0.0;
    for (double s : samples) {
        const double denom = s - wave.v;
        if (denom <= 0.0)
            throw std::domain_error("c_eps: u - v changes sign, wave outside regime");
        acc += 1.0 / denom;
    }
    return static_cast<double>(M) / acc;  // 2*pi / ((2*pi/M) sum)
}

EigenPairSet eigen_spectrum(const OperatorMatrix& A, const TravelingWave& wave, int M) {
    if (M > A.N / 2)
        throw std::invalid_argument("eigen_spectrum: M <= N/2 required");

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(A.entries, true);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigen_spectrum: eigensolver failed");
    const auto& vals = solver.eigenvalues();
    const auto& vecs = solver.eigenvectors();
    const double c = c_eps(wave);

    EigenPairSet out;
    std::vector<bool> used(vals.size(), false);

    std::vector<int> order;  // +-1, +-2, ... increasing |n|
    for (int n = 1; n <= M; ++n) {
        order.push_back(n);
        order.push_back(-n);
    }
    for (int n : order) {
        const std::complex<double> target = kI * (static_cast<double>(n) * c);
        int best = -1, second = -1;
        double bd = 1e300, sd = 1e300;
        for (int i = 0; i < vals.size(); ++i) {
            if (used[i]) continue;
            const double d = std::abs(vals(i) - target);
            if (d < bd) {
                second = best;
                sd = bd;
                best = i;
                bd = d;
            } else if (d < sd) {
                second = i;
                sd = d;
            }
        }
        used[best] = true;
        out.lam[n] = vals(best);
        out.vectors[n] = vecs.col(best);
        out.match_quality[n] = bd;
        out.ambiguous[n] = (second >= 0 && sd < 1e-6);
    }

    // the generalized kernel pair: two leftovers nearest zero
    int k0 = -1, k1 = -1;
    double d0 = 1e300, d1 = 1e300;
    for (int i = 0; i < vals.size(); ++i) {
        if (used[i]) continue;
        const double d = std::abs(vals(i));
        if (d < d0) {
            k1 = k0;
            d1 = d0;
            k0 = i;
            d0 = d;
        } else if (d < d1) {
            k1 = i;
            d1 = d;
        }
    }
    if (k0 >= 0) out.kernel_pair[0] = vals(k0);
    if (k1 >= 0) out.kernel_pair[1] = vals(k1);
    return out;
}

std::complex<double> lambda_taylor_closed(int n, double eps) {
    if (n == 0) throw std::invalid_argument("lambda_taylor_closed: n != 0 required");
    const int s = sgn(n);
    const double ns = static_cast<double>(n + s);
    const double e2 = eps * eps, e4 = e2 * e2, e6 = e4 * e2;
    double imag = n - e2 * ns / 4.0 - 11.0 * e4 * ns / 32.0;
    if (std::abs(n) == 1)
        imag -= 529.0 * e6 * s / 384.0;
    else
        imag -= 527.0 * e6 * ns / 768.0;
    return {0.0, imag};
}

namespace {

// Sparse frequency window: mode -> coefficient.
using ModeMap = std::map<int, std::complex<double>>;

// L^{(v)} g = ((u_v - v_v) g)'
ModeMap apply_L_order(const WaveTaylor& table, int v, const ModeMap& in) {
    ModeMap mult;
    for (const auto& [m, c] : in) {
        mult[m] += -table.v(v) * c;
        for (int k = 1; k <= v; ++k) {
            const double val = table.u(v, k) / 2.0;
            if (val != 0.0) {
                mult[m + k] += val * c;
                mult[m - k] += val * c;
            }
        }
    }
    ModeMap out;
    for (const auto& [m, c] : mult)
        if (m != 0 && c != 0.0) out[m] = kI * static_cast<double>(m) * c;
    return out;
}

// S_n^{(h)}: h = 0 is -P_n; h >= 1 divides h times by i(m - sgn m - n),
// killing the n + sgn n mode (reduced resolvent).
ModeMap apply_S_order(int n, int h, const ModeMap& in) {
    const int s = sgn(n);
    if (h == 0) {
        ModeMap out;
        auto it = in.find(n + s);
        if (it != in.end() && it->second != 0.0) out[n + s] = -it->second;
        return out;
    }
    ModeMap out;
    for (const auto& [m, c] : in) {
        if (m == n + s) continue;
        std::complex<double> val = c;
        for (int i = 0; i < h; ++i) val /= kI * static_cast<double>(m - sgn(m) - n);
        out[m] = val;
    }
    return out;
}

void compositions(int total, int parts, int minv, std::vector<int>& cur,
                  std::vector<std::vector<int>>& out) {
    if (parts == 1) {
        if (total >= minv) {
            cur.push_back(total);
            out.push_back(cur);
            cur.pop_back();
        }
        return;
    }
    for (int first = minv; first <= total - minv * (parts - 1); ++first) {
        cur.push_back(first);
        compositions(total - first, parts - 1, minv, cur, out);
        cur.pop_back();
    }
}

bool is_cyclic_representative(const std::vector<int>& h) {
    const int p = static_cast<int>(h.size());
    for (int r = 1; r < p; ++r) {
        std::vector<int> rot(h.begin() + r, h.end());
        rot.insert(rot.end(), h.begin(), h.begin() + r);
        if (rot < h) return false;
    }
    return true;
}

}  // namespace

std::complex<double> kato_coefficient(int n, int k, const WaveTaylor& table) {
    if (n == 0) throw std::invalid_argument("kato_coefficient: n != 0 required");
    if (k < 1 || k > 4) throw std::invalid_argument("kato_coefficient: 1 <= k <= 4 supported");
    if (table.order() < k) throw std::invalid_argument("kato_coefficient: table order too small");

    const int s = sgn(n);
    std::complex<double> total = 0.0;
    for (int p = 1; p <= k; ++p) {
        std::vector<std::vector<int>> vcomps, hcomps;
        std::vector<int> cur;
        compositions(k, p, 1, cur, vcomps);
        if (p == 1) {
            hcomps.push_back({0});
        } else {
            std::vector<std::vector<int>> all;
            compositions(p - 1, p, 0, cur, all);
            for (auto& h : all)
                if (h[0] == 0 && is_cyclic_representative(h)) hcomps.push_back(h);
        }
        const double sign = (p % 2 == 1) ? 1.0 : -1.0;
        for (const auto& v : vcomps) {
            for (const auto& h : hcomps) {
                ModeMap field;
                field[n + s] = 1.0;
                field = apply_L_order(table, v[0], field);
                for (int j = 1; j < p; ++j) {
                    field = apply_S_order(n, h[j], field);
                    field = apply_L_order(table, v[j], field);
                }
                auto it = field.find(n + s);
                if (it != field.end()) total += sign * it->second;
            }
        }
    }
    return total;
}

SpectrumReport spectrum_report(const TravelingWave& wave, int N, int M) {
    SpectrumReport rep;
    rep.eps = wave.eps;
    rep.N = N;
    const OperatorMatrix A = assemble_L(wave, N);
    rep.c_eps = c_eps(wave);
    rep.pairs = eigen_spectrum(A, wave, M);
    for (const auto& [n, lam] : rep.pairs.lam) {
        rep.taylor_pred[n] = lambda_taylor_closed(n, wave.eps);
        const double ns = static_cast<double>(n + sgn(n));
        rep.remainder[n] = std::abs(lam - ns * rep.c_eps * kI + kI * static_cast<double>(sgn(n)));
    }
    if (std::abs(wave.eps) <= 0.1) {
        const NonresScan scan = nonres_scan(wave.eps, std::min(M, 32));
        rep.nonres_min = scan.min_value;
        for (int i = 0; i < 3; ++i) rep.nonres_witness[i] = scan.witness[i];
    }
    return rep;
}

double remainder_order(const SpectrumReport& a, const SpectrumReport& b, int n) {
    const double ra = a.remainder.at(n), rb = b.remainder.at(n);
    return std::log(ra / rb) / std::log(a.eps / b.eps);
}

NonresScan nonres_scan(double eps, int M) {
    if (std::abs(eps) > 0.1)
        throw std::invalid_argument("nonres_scan: eps <= 0.1 required");
    if (M > 64) throw std::invalid_argument("nonres_scan: M <= 64 required");

    std::vector<std::complex<double>> lam(2 * M + 1);
    for (int n = -M; n <= M; ++n)
        if (n != 0) lam[n + M] = lambda_taylor_closed(n, eps);

    NonresScan out;
    out.min_value = 1e300;
    for (int m = -M; m <= M; ++m) {
        if (m == 0) continue;
        for (int n = -M; n <= M; ++n) {
            if (n == 0) continue;
            for (int l = -M; l <= M; ++l) {
                if (l == 0) continue;
                const double v = std::abs(lam[m + M] + lam[n + M] + lam[l + M]);
                if (v < out.min_value) {
                    out.min_value = v;
                    out.witness[0] = m;
                    out.witness[1] = n;
                    out.witness[2] = l;
                }
            }
        }
    }
    for (int n = 1; n <= M; ++n)
        out.exact_resonance_defect =
            std::max(out.exact_resonance_defect, std::abs(lam[n + M] + lam[-n + M]));
    return out;
}

namespace {

Eigen::VectorXcd embed(const OperatorMatrix& A, const TrigField& f) {
    Eigen::VectorXcd x = Eigen::VectorXcd::Zero(A.dim());
    for (int m = -A.N; m <= A.N; ++m) {
        if (m == 0) continue;
        x(A.index(m)) = f.hat(m);
    }
    return x;
}

}  // namespace

double matrix_apply_defect(const OperatorMatrix& A, const TrigField& x, const TrigField& y) {
    const Eigen::VectorXcd r = A.entries * embed(A, x) - embed(A, y);
    // ||f||_L2^2 = 2*pi sum |fhat(m)|^2 over the mean-zero modes
    return std::sqrt(2.0 * kPi) * r.norm();
}

KernelDefects kernel_check(const OperatorMatrix& A, const TravelingWave& wave,
                           const TrigField& du_deps, double dv_deps) {
    KernelDefects d;
    const TrigField up = derivative(wave.u);
    d.translation = matrix_apply_defect(A, up, TrigField(1));
    d.branch = matrix_apply_defect(A, du_deps, dv_deps * TrigField(up));
    return d;
}

}  // namespace bhwave
