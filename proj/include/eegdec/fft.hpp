#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace eegdec {

// Real-input FFT helpers backed by FFTW (plans cached per size, guarded by a
// mutex; execution is thread-safe on distinct buffers).

// forward real-to-complex: n real samples -> n/2+1 bins
std::vector<std::complex<double>> rfft(const double* x, std::size_t n);
inline std::vector<std::complex<double>> rfft(const std::vector<double>& x) {
    return rfft(x.data(), x.size());
}

// inverse of rfft, normalized so irfft(rfft(x)) == x
std::vector<double> irfft(const std::vector<std::complex<double>>& spectrum, std::size_t n);

}  // namespace eegdec
