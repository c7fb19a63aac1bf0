#include "eegdec/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>

#include "eegdec/errors.hpp"

namespace eegdec {

namespace {

// FFTW planning is not thread-safe; executing a cached plan on fresh buffers
// via the *_dft variants is.
std::mutex plan_mutex;

struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan inv = nullptr;
};

PlanPair& plans_for(std::size_t n) {
    static std::map<std::size_t, PlanPair> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    std::vector<double> re(n);
    std::vector<fftw_complex> co(n / 2 + 1);
    PlanPair p;
    p.fwd = fftw_plan_dft_r2c_1d(static_cast<int>(n), re.data(), co.data(), FFTW_ESTIMATE);
    p.inv = fftw_plan_dft_c2r_1d(static_cast<int>(n), co.data(), re.data(), FFTW_ESTIMATE);
    return cache.emplace(n, p).first->second;
}

}  // namespace

std::vector<std::complex<double>> rfft(const double* x, std::size_t n) {
    if (n == 0) throw ShapeError("rfft: empty input");
    std::vector<double> in(x, x + n);
    std::vector<std::complex<double>> out(n / 2 + 1);
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(plan_mutex);
        plan = plans_for(n).fwd;
    }
    fftw_execute_dft_r2c(plan, in.data(), reinterpret_cast<fftw_complex*>(out.data()));
    return out;
}

std::vector<double> irfft(const std::vector<std::complex<double>>& spectrum, std::size_t n) {
    if (spectrum.size() != n / 2 + 1) {
        throw ShapeError("irfft: spectrum size does not match target length");
    }
    // c2r destroys its input, so work on a copy
    std::vector<std::complex<double>> in = spectrum;
    std::vector<double> out(n);
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(plan_mutex);
        plan = plans_for(n).inv;
    }
    fftw_execute_dft_c2r(plan, reinterpret_cast<fftw_complex*>(in.data()), out.data());
    const double inv_n = 1.0 / static_cast<double>(n);
    for (double& v : out) v *= inv_n;
    return out;
}

}  // namespace eegdec
