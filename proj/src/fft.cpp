#include "bhwave/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace bhwave::fft {

namespace {

// FFTW planning is not thread safe; execution via the array-execute API is.
std::mutex plan_mutex;

struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

PlanPair& plans_for(int M) {
    static std::map<int, PlanPair> cache;
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto it = cache.find(M);
    if (it != cache.end()) return it->second;
    std::vector<double> real(M);
    std::vector<std::complex<double>> cplx(M / 2 + 1);
    PlanPair p;
    p.fwd = fftw_plan_dft_r2c_1d(M, real.data(),
                                 reinterpret_cast<fftw_complex*>(cplx.data()),
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.bwd = fftw_plan_dft_c2r_1d(M, reinterpret_cast<fftw_complex*>(cplx.data()),
                                 real.data(), FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!p.fwd || !p.bwd) throw std::runtime_error("fftw plan creation failed");
    return cache.emplace(M, p).first->second;
}

}  // namespace

std::vector<std::complex<double>> forward(const std::vector<double>& samples) {
    const int M = static_cast<int>(samples.size());
    if (M < 2) throw std::invalid_argument("fft::forward: need at least 2 samples");
    auto& p = plans_for(M);
    std::vector<double> in(samples);
    std::vector<std::complex<double>> out(M / 2 + 1);
    fftw_execute_dft_r2c(p.fwd, in.data(), reinterpret_cast<fftw_complex*>(out.data()));
    return out;
}

std::vector<double> inverse(const std::vector<std::complex<double>>& spectrum, int M) {
    if (static_cast<int>(spectrum.size()) != M / 2 + 1)
        throw std::invalid_argument("fft::inverse: spectrum size does not match M");
    auto& p = plans_for(M);
    std::vector<std::complex<double>> in(spectrum);
    std::vector<double> out(M);
    fftw_execute_dft_c2r(p.bwd, reinterpret_cast<fftw_complex*>(in.data()), out.data());
    return out;
}

void forward_into(std::vector<double>& real, std::vector<std::complex<double>>& spec, int M) {
    auto& p = plans_for(M);
    fftw_execute_dft_r2c(p.fwd, real.data(), reinterpret_cast<fftw_complex*>(spec.data()));
}

void inverse_into(std::vector<std::complex<double>>& spec, std::vector<double>& real, int M) {
    auto& p = plans_for(M);
    fftw_execute_dft_c2r(p.bwd, reinterpret_cast<fftw_complex*>(spec.data()), real.data());
}

int nice_size(int m) {
    if (m < 4) return 4;
    for (int s = m;; ++s) {
        int r = s;
        while (r % 2 == 0) r /= 2;
        while (r % 3 == 0) r /= 3;
        if (r == 1 && s % 2 == 0) return s;
    }
}

}  // namespace bhwave::fft
