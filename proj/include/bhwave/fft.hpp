#pragma once

#include <vector>
#include <complex>

namespace bhwave::fft {

// Real-to-half-complex forward transform of M samples.
// F[k] = sum_j f[j] exp(-2*pi*i*j*k/M), k = 0..M/2.
std::vector<std::complex<double>> forward(const std::vector<double>& samples);

// Inverse of forward, normalized: returns M real samples for half-complex
// spectrum C with f[j] = sum_k C[k] exp(+2*pi*i*j*k/M) (hermitian extension).
std::vector<double> inverse(const std::vector<std::complex<double>>& spectrum, int M);

// Smallest grid size >= m that the transform handles fast (2^a * 3^b, even).
int nice_size(int m);

// Buffer-reusing variants for hot loops; buffers must have sizes M and M/2+1.
void forward_into(std::vector<double>& real, std::vector<std::complex<double>>& spec, int M);
void inverse_into(std::vector<std::complex<double>>& spec, std::vector<double>& real, int M);

}  // namespace bhwave::fft
