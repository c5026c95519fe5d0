#pragma once

#include "bhwave/trig_field.hpp"
#include "bhwave/wave.hpp"

#include <Eigen/Dense>

#include <complex>
#include <map>
#include <vector>

namespace bhwave {

/// Truncated matrix of a linear operator over the mean-zero exponential
/// basis {e^{imx}, 1 <= |m| <= N}, with its index <-> frequency map.
struct OperatorMatrix {
    Eigen::MatrixXcd entries;
    int N = 0;

    int index(int m) const { return m < 0 ? m + N : N + m - 1; }
    int frequency(int idx) const { return idx < N ? idx - N : idx - N + 1; }
    int dim() const { return 2 * N; }

    /// Reality of the underlying operator: entry(-m,-m') = conj(entry(m,m')).
    double reality_defect() const;
};

/// Matrix of L g = -v g_x + Hg + (u g)_x around a computed wave.
/// Diagonal i(-v m - sgn m) plus the banded convolution from (u .)_x.
OperatorMatrix assemble_L(const TravelingWave& wave, int N);

/// Harmonic-mean frequency constant 2*pi (int dy/(u - v))^{-1} by trapezoid
/// quadrature on >= 8N points. Rejects waves with u - v not positive.
double c_eps(const TravelingWave& wave);

struct EigenPairSet {
    std::map<int, std::complex<double>> lam;      // n -> lambda_n, n != 0
    std::map<int, Eigen::VectorXcd> vectors;
    std::map<int, double> match_quality;          // |lambda_n - i n c|
    std::map<int, bool> ambiguous;                // second candidate within 1e-6
    std::complex<double> kernel_pair[2] = {0.0, 0.0};
};

/// Dense eigensolve plus nearest-target assignment against i n c_eps,
/// processed in increasing |n|; the two leftovers nearest 0 form the
/// generalized kernel pair.
EigenPairSet eigen_spectrum(const OperatorMatrix& A, const TravelingWave& wave, int M);

/// Closed sixth-order eigenvalue expansion; the |n| = 1 eps^6 coefficient
/// is 529/384 instead of the generic 527(n+s)/768.
std::complex<double> lambda_taylor_closed(int n, double eps);

/// Coefficient of eps^k in lambda_n(eps) by the trace expansion: enumerate
/// compositions (v_1..v_p) and cyclic-representative tuples (h_1..h_p),
/// act the operator string on e^{i(n+sgn n)x} and read off mode n + sgn n.
/// Supports 1 <= k <= 4.
std::complex<double> kato_coefficient(int n, int k, const WaveTaylor& table);

struct SpectrumReport {
    double eps = 0.0;
    int N = 0;  // matrix half-dimension
    double c_eps = 1.0;
    EigenPairSet pairs;
    std::map<int, std::complex<double>> taylor_pred;
    std::map<int, double> remainder;  // |lam_n - (n + sgn n) c i + i sgn n|
    double nonres_min = 0.0;
    int nonres_witness[3] = {0, 0, 0};
    double kernel_defects[2] = {0.0, 0.0};
};

/// Matrix spectrum with matched eigenvalues, sixth-order predictions and the
/// remainder list for |n| <= M.
SpectrumReport spectrum_report(const TravelingWave& wave, int N, int M);

/// Empirical decay order of the remainder for index n between two reports
/// at different eps (log-ratio slope).
double remainder_order(const SpectrumReport& a, const SpectrumReport& b, int n);

struct NonresScan {
    double min_value = 0.0;
    int witness[3] = {0, 0, 0};
    double exact_resonance_defect = 0.0;  // max |lambda_n + lambda_-n| over scanned n
};

/// Minimum of |lambda_m + lambda_n + lambda_l| over 1 <= |m|,|n|,|l| <= M
/// using the closed sixth-order values.
NonresScan nonres_scan(double eps, int M);

struct KernelDefects {
    double translation = 0.0;  // ||L u'||_L2
    double branch = 0.0;       // ||L d_eps u - (d_eps v) u'||_L2
};

/// Zero-eigenspace structure check: u' is annihilated, d_eps u maps to
/// (d_eps v) u'. Derivative fields are supplied by the caller.
KernelDefects kernel_check(const OperatorMatrix& A, const TravelingWave& wave,
                           const TrigField& du_deps, double dv_deps);

/// Apply the truncated matrix to a real field (embedded in the mode basis),
/// returning the L2 norm of A x - y for a real target y (y may be zero).
double matrix_apply_defect(const OperatorMatrix& A, const TrigField& x, const TrigField& y);

}  // namespace bhwave
