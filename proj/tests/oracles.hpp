#pragma once

// Independent reference implementations used to check the library. These are
// deliberately written as direct loops with no shared code with src/.

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "eegdec/rng.hpp"
#include "eegdec/tape.hpp"
#include "eegdec/tensor.hpp"

namespace oracles {

// 5-nested-loop valid convolution along time
inline eegdec::Tensor conv_temporal_oracle(const eegdec::Tensor& x, const eegdec::Tensor& w,
                                           const eegdec::Tensor& bias, std::size_t stride) {
    const std::size_t batch = x.extent(0), ci = x.extent(1), e_n = x.extent(2), t_in = x.extent(3);
    const std::size_t co = w.extent(0), k = w.extent(3);
    const std::size_t t_out = (t_in - k) / stride + 1;
    eegdec::Tensor out({batch, co, e_n, t_out});
    for (std::size_t b = 0; b < batch; ++b)
        for (std::size_t o = 0; o < co; ++o)
            for (std::size_t e = 0; e < e_n; ++e)
                for (std::size_t t = 0; t < t_out; ++t) {
                    double acc = bias[o];
                    for (std::size_t i = 0; i < ci; ++i)
                        for (std::size_t tau = 0; tau < k; ++tau)
                            acc += x[x.idx4(b, i, e, t * stride + tau)] * w[w.idx4(o, i, 0, tau)];
                    out[out.idx4(b, o, e, t)] = acc;
                }
    return out;
}

inline eegdec::Tensor conv_spatial_oracle(const eegdec::Tensor& x, const eegdec::Tensor& w,
                                          const eegdec::Tensor& bias) {
    const std::size_t batch = x.extent(0), ci = x.extent(1), e_n = x.extent(2), t_n = x.extent(3);
    const std::size_t co = w.extent(0);
    eegdec::Tensor out({batch, co, 1, t_n});
    for (std::size_t b = 0; b < batch; ++b)
        for (std::size_t o = 0; o < co; ++o)
            for (std::size_t t = 0; t < t_n; ++t) {
                double acc = bias[o];
                for (std::size_t i = 0; i < ci; ++i)
                    for (std::size_t e = 0; e < e_n; ++e)
                        acc += x[x.idx4(b, i, e, t)] * w[w.idx4(o, i, e, 0)];
                out[out.idx4(b, o, 0, t)] = acc;
            }
    return out;
}

inline double median_oracle(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    if (n % 2 == 1) return v[n / 2];
    return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// scalar readout with fixed random weights so every output entry feeds the loss
inline eegdec::Var weighted_sum(eegdec::Tape& tape, eegdec::Var v,
                                const std::vector<double>& weights) {
    const eegdec::Tensor& x = tape.value(v);
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * weights[i];
    return tape.record(eegdec::Tensor::scalar(s),
                       [v, weights](eegdec::Tape& t, const eegdec::Tensor& g) {
                           eegdec::Tensor& dx = t.grad(v);
                           for (std::size_t i = 0; i < dx.size(); ++i) dx[i] += g[0] * weights[i];
                       });
}

struct FdReport {
    std::size_t checked = 0;
    std::size_t failed = 0;
    double max_err = 0.0;  // worst |ad-fd| / (atol + rtol*max(|ad|,|fd|)), >1 means fail
    std::string worst;
    bool ok() const { return failed == 0 && checked > 0; }
};

// Central finite differences (h=1e-6 by default) against tape gradients.
// loss_fn must run a fresh forward pass; grad_fn must run forward+backward and
// leave gradients in the parameters. max_coords==0 checks every coordinate.
inline FdReport fd_check(const std::function<double()>& loss_fn,
                         const std::function<void()>& grad_fn,
                         const std::vector<eegdec::Parameter*>& params, double h = 1e-6,
                         double rtol = 1e-5, double atol = 1e-8, std::size_t max_coords = 0,
                         eegdec::Rng* rng = nullptr) {
    for (auto* p : params) p->zero_grad();
    grad_fn();
    std::vector<std::vector<double>> ad;
    ad.reserve(params.size());
    for (auto* p : params) {
        std::vector<double> g(p->size());
        for (std::size_t i = 0; i < p->size(); ++i) g[i] = p->grad[i];
        ad.push_back(std::move(g));
    }

    FdReport rep;
    for (std::size_t pi = 0; pi < params.size(); ++pi) {
        eegdec::Parameter* p = params[pi];
        std::vector<std::size_t> coords;
        if (max_coords == 0 || p->size() <= max_coords) {
            coords.resize(p->size());
            for (std::size_t i = 0; i < p->size(); ++i) coords[i] = i;
        } else {
            for (std::size_t i = 0; i < max_coords; ++i)
                coords.push_back(static_cast<std::size_t>(
                    rng->uniform_int(0, static_cast<std::int64_t>(p->size()) - 1)));
        }
        for (std::size_t i : coords) {
            const double saved = p->value[i];
            p->value[i] = saved + h;
            const double lp = loss_fn();
            p->value[i] = saved - h;
            const double lm = loss_fn();
            p->value[i] = saved;
            const double fd = (lp - lm) / (2.0 * h);
            const double a = ad[pi][i];
            const double tol = atol + rtol * std::max(std::abs(a), std::abs(fd));
            const double err = std::abs(a - fd) / tol;
            rep.checked += 1;
            if (err > rep.max_err) {
                rep.max_err = err;
                std::ostringstream os;
                os << (p->name.empty() ? "param" : p->name) << "[" << i << "] ad=" << a
                   << " fd=" << fd;
                rep.worst = os.str();
            }
            if (err > 1.0) rep.failed += 1;
        }
    }
    return rep;
}

inline eegdec::Tensor random_tensor(std::vector<std::size_t> shape, eegdec::Rng& rng,
                                    double scale = 1.0) {
    eegdec::Tensor t(std::move(shape));
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = rng.gaussian() * scale;
    return t;
}

inline std::vector<double> random_weights(std::size_t n, eegdec::Rng& rng) {
    std::vector<double> w(n);
    for (auto& v : w) v = rng.uniform(-1.0, 1.0);
    return w;
}

}  // namespace oracles
