#include "eegdec/ops.hpp"

#include <Eigen/Core>

#include <cmath>
#include <cstring>
#include <string>

#include "eegdec/errors.hpp"

namespace eegdec {

namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MapMat = Eigen::Map<RowMat>;
using MapConstMat = Eigen::Map<const RowMat>;

void require(bool cond, const std::string& msg) {
    if (!cond) throw ShapeError(msg);
}

// gathers one batch element into the [(e,t_out) x (i,k)] patch matrix
void im2col_temporal(const Tensor& x, std::size_t b, std::size_t k, std::size_t stride,
                     std::size_t t_out, RowMat& m) {
    const std::size_t ci = x.extent(1), e_n = x.extent(2);
    for (std::size_t e = 0; e < e_n; ++e) {
        for (std::size_t t = 0; t < t_out; ++t) {
            double* row = m.data() + (e * t_out + t) * m.cols();
            for (std::size_t i = 0; i < ci; ++i) {
                const double* src = x.data() + x.idx4(b, i, e, t * stride);
                std::memcpy(row + i * k, src, k * sizeof(double));
            }
        }
    }
}

}  // namespace

Var conv_temporal(Tape& tape, Var input, Parameter& kernels, Parameter& bias,
                  std::size_t stride_t) {
    const Tensor& x = tape.value(input);
    const Tensor& w = kernels.value;
    require(x.ndim() == 4, "conv_temporal: input must be 4D, got " + x.shape_str());
    require(w.ndim() == 4 && w.extent(2) == 1,
            "conv_temporal: kernels must be [out, in, 1, k], got " + w.shape_str());
    require(w.extent(1) == x.extent(1),
            "conv_temporal: kernel channels " + std::to_string(w.extent(1)) +
                " do not match input channels " + std::to_string(x.extent(1)));
    require(bias.value.size() == w.extent(0), "conv_temporal: bias/kernel count mismatch");
    if (stride_t == 0) throw ShapeError("conv_temporal: stride must be positive");

    const std::size_t batch = x.extent(0), ci = x.extent(1), e_n = x.extent(2), t_in = x.extent(3);
    const std::size_t co = w.extent(0), k = w.extent(3);
    if (k > t_in) {
        throw TooShortError("conv_temporal: kernel length " + std::to_string(k) +
                            " exceeds time extent " + std::to_string(t_in));
    }
    const std::size_t t_out = (t_in - k) / stride_t + 1;

    Tensor out({batch, co, e_n, t_out});
    // kernel as [(i,k) x o]
    RowMat wm(ci * k, co);
    for (std::size_t o = 0; o < co; ++o)
        for (std::size_t i = 0; i < ci; ++i)
            for (std::size_t t = 0; t < k; ++t) wm(i * k + t, o) = w[w.idx4(o, i, 0, t)];

    RowMat m(e_n * t_out, ci * k);
    RowMat prod(e_n * t_out, co);
    for (std::size_t b = 0; b < batch; ++b) {
        im2col_temporal(x, b, k, stride_t, t_out, m);
        prod.noalias() = m * wm;
        for (std::size_t o = 0; o < co; ++o) {
            const double bo = bias.value[o];
            for (std::size_t e = 0; e < e_n; ++e) {
                double* dst = out.data() + out.idx4(b, o, e, 0);
                for (std::size_t t = 0; t < t_out; ++t) dst[t] = prod(e * t_out + t, o) + bo;
            }
        }
    }

    Parameter* wp = &kernels;
    Parameter* bp = &bias;
    return tape.record(std::move(out), [input, wp, bp, stride_t, k,
                                        t_out](Tape& tape, const Tensor& g) {
        const Tensor& x = tape.value(input);
        const std::size_t batch = x.extent(0), ci = x.extent(1), e_n = x.extent(2);
        const std::size_t co = wp->value.extent(0);

        RowMat wm(ci * k, co);
        for (std::size_t o = 0; o < co; ++o)
            for (std::size_t i = 0; i < ci; ++i)
                for (std::size_t t = 0; t < k; ++t)
                    wm(i * k + t, o) = wp->value[wp->value.idx4(o, i, 0, t)];

        Tensor& dx = tape.grad(input);
        RowMat m(e_n * t_out, ci * k);
        RowMat gb(e_n * t_out, co);
        RowMat dwm = RowMat::Zero(ci * k, co);
        RowMat dm(e_n * t_out, ci * k);
        for (std::size_t b = 0; b < batch; ++b) {
            for (std::size_t o = 0; o < co; ++o) {
                const double* src = g.data() + g.idx4(b, o, 0, 0);
                for (std::size_t e = 0; e < e_n; ++e)
                    for (std::size_t t = 0; t < t_out; ++t)
                        gb(e * t_out + t, o) = src[e * t_out + t];
            }
            im2col_temporal(x, b, k, stride_t, t_out, m);
            dwm.noalias() += m.transpose() * gb;
            dm.noalias() = gb * wm.transpose();
            for (std::size_t e = 0; e < e_n; ++e) {
                for (std::size_t t = 0; t < t_out; ++t) {
                    const double* row = dm.data() + (e * t_out + t) * dm.cols();
                    for (std::size_t i = 0; i < ci; ++i) {
                        double* dst = dx.data() + dx.idx4(b, i, e, t * stride_t);
                        for (std::size_t tt = 0; tt < k; ++tt) dst[tt] += row[i * k + tt];
                    }
                }
            }
            for (std::size_t o = 0; o < co; ++o) {
                double s = 0.0;
                for (std::size_t r = 0; r < e_n * t_out; ++r) s += gb(r, o);
                bp->grad[o] += s;
            }
        }
        for (std::size_t o = 0; o < co; ++o)
            for (std::size_t i = 0; i < ci; ++i)
                for (std::size_t t = 0; t < k; ++t)
                    wp->grad[wp->grad.idx4(o, i, 0, t)] += dwm(i * k + t, o);
    });
}

Var conv_spatial(Tape& tape, Var input, Parameter& kernels, Parameter& bias) {
    const Tensor& x = tape.value(input);
    const Tensor& w = kernels.value;
    require(x.ndim() == 4, "conv_spatial: input must be 4D, got " + x.shape_str());
    require(w.ndim() == 4 && w.extent(3) == 1,
            "conv_spatial: kernels must be [out, in, electrodes, 1], got " + w.shape_str());
    require(w.extent(1) == x.extent(1), "conv_spatial: channel mismatch");
    if (w.extent(2) != x.extent(2)) {
        throw ShapeError("conv_spatial: kernel electrode extent " + std::to_string(w.extent(2)) +
                         " does not match input electrodes " + std::to_string(x.extent(2)));
    }
    require(bias.value.size() == w.extent(0), "conv_spatial: bias/kernel count mismatch");

    const std::size_t batch = x.extent(0), ci = x.extent(1), e_n = x.extent(2), t_n = x.extent(3);
    const std::size_t co = w.extent(0);

    Tensor out({batch, co, 1, t_n});
    // weights flatten to [co x (ci*e)] and each batch slab is [(ci*e) x t]
    MapConstMat wm(w.data(), co, ci * e_n);
    for (std::size_t b = 0; b < batch; ++b) {
        MapConstMat xb(x.data() + x.idx4(b, 0, 0, 0), ci * e_n, t_n);
        MapMat ob(out.data() + out.idx4(b, 0, 0, 0), co, t_n);
        ob.noalias() = wm * xb;
        for (std::size_t o = 0; o < co; ++o) ob.row(o).array() += bias.value[o];
    }

    Parameter* wp = &kernels;
    Parameter* bp = &bias;
    return tape.record(std::move(out), [input, wp, bp](Tape& tape, const Tensor& g) {
        const Tensor& x = tape.value(input);
        const std::size_t batch = x.extent(0), ci = x.extent(1), e_n = x.extent(2),
                          t_n = x.extent(3);
        const std::size_t co = wp->value.extent(0);
        Tensor& dx = tape.grad(input);
        MapConstMat wm(wp->value.data(), co, ci * e_n);
        MapMat dwm(wp->grad.data(), co, ci * e_n);
        for (std::size_t b = 0; b < batch; ++b) {
            MapConstMat xb(x.data() + x.idx4(b, 0, 0, 0), ci * e_n, t_n);
            MapConstMat gb(g.data() + g.idx4(b, 0, 0, 0), co, t_n);
            MapMat dxb(dx.data() + dx.idx4(b, 0, 0, 0), ci * e_n, t_n);
            dwm.noalias() += gb * xb.transpose();
            dxb.noalias() += wm.transpose() * gb;
            for (std::size_t o = 0; o < co; ++o) bp->grad[o] += gb.row(o).sum();
        }
    });
}

Var batch_norm(Tape& tape, Var input, Parameter& gamma, Parameter& beta,
               RunningStats& stats, Mode mode, double epsilon, double momentum) {
    const Tensor& x = tape.value(input);
    require(x.ndim() == 4, "batch_norm: input must be 4D, got " + x.shape_str());
    const std::size_t batch = x.extent(0), ch = x.extent(1), e_n = x.extent(2), t_n = x.extent(3);
    require(gamma.value.size() == ch && beta.value.size() == ch,
            "batch_norm: gamma/beta must have one entry per channel");

    const std::size_t per_ch = batch * e_n * t_n;
    Tensor out(x.shape());

    if (mode == Mode::eval) {
        if (!stats.initialized) {
            throw TrainingError("batch_norm: eval mode before any training batch");
        }
        Tensor scale({ch}), shift({ch});
        for (std::size_t c = 0; c < ch; ++c) {
            const double inv = 1.0 / std::sqrt(stats.var[c] + epsilon);
            scale[c] = gamma.value[c] * inv;
            shift[c] = beta.value[c] - stats.mean[c] * scale[c];
        }
        for (std::size_t b = 0; b < batch; ++b)
            for (std::size_t c = 0; c < ch; ++c) {
                const double* src = x.data() + x.idx4(b, c, 0, 0);
                double* dst = out.data() + out.idx4(b, c, 0, 0);
                for (std::size_t i = 0; i < e_n * t_n; ++i) dst[i] = src[i] * scale[c] + shift[c];
            }
        Parameter* gp = &gamma;
        Parameter* bp = &beta;
        Tensor scale_copy = scale;
        return tape.record(std::move(out),
                           [input, gp, bp, scale_copy, ch, e_n, t_n, batch,
                            mean = stats.mean, eps = epsilon,
                            var = stats.var](Tape& tape, const Tensor& g) {
                               Tensor& dx = tape.grad(input);
                               const Tensor& x = tape.value(input);
                               for (std::size_t b = 0; b < batch; ++b)
                                   for (std::size_t c = 0; c < ch; ++c) {
                                       const double inv = 1.0 / std::sqrt(var[c] + eps);
                                       const double* gsrc = g.data() + g.idx4(b, c, 0, 0);
                                       const double* xsrc = x.data() + x.idx4(b, c, 0, 0);
                                       double* dst = dx.data() + dx.idx4(b, c, 0, 0);
                                       double dg = 0.0, db = 0.0;
                                       for (std::size_t i = 0; i < e_n * t_n; ++i) {
                                           dst[i] += gsrc[i] * scale_copy[c];
                                           dg += gsrc[i] * (xsrc[i] - mean[c]) * inv;
                                           db += gsrc[i];
                                       }
                                       gp->grad[c] += dg;
                                       bp->grad[c] += db;
                                   }
                           });
    }

    // train mode: batch statistics per channel over batch x electrodes x time
    Tensor mu({ch}), var({ch}), inv_std({ch});
    for (std::size_t c = 0; c < ch; ++c) {
        double s = 0.0;
        for (std::size_t b = 0; b < batch; ++b) {
            const double* src = x.data() + x.idx4(b, c, 0, 0);
            for (std::size_t i = 0; i < e_n * t_n; ++i) s += src[i];
        }
        mu[c] = s / static_cast<double>(per_ch);
        double v = 0.0;
        for (std::size_t b = 0; b < batch; ++b) {
            const double* src = x.data() + x.idx4(b, c, 0, 0);
            for (std::size_t i = 0; i < e_n * t_n; ++i) {
                const double d = src[i] - mu[c];
                v += d * d;
            }
        }
        var[c] = v / static_cast<double>(per_ch);
        inv_std[c] = 1.0 / std::sqrt(var[c] + epsilon);
    }

    Tensor xhat(x.shape());
    for (std::size_t b = 0; b < batch; ++b)
        for (std::size_t c = 0; c < ch; ++c) {
            const double* src = x.data() + x.idx4(b, c, 0, 0);
            double* xh = xhat.data() + xhat.idx4(b, c, 0, 0);
            double* dst = out.data() + out.idx4(b, c, 0, 0);
            for (std::size_t i = 0; i < e_n * t_n; ++i) {
                xh[i] = (src[i] - mu[c]) * inv_std[c];
                dst[i] = gamma.value[c] * xh[i] + beta.value[c];
            }
        }

    if (!stats.initialized) {
        stats.mean = Tensor({ch});
        stats.var = Tensor({ch});
        stats.initialized = true;
        for (std::size_t c = 0; c < ch; ++c) {
            stats.mean[c] = mu[c];
            stats.var[c] = per_ch > 1 ? var[c] * per_ch / (per_ch - 1.0) : var[c];
        }
    } else {
        for (std::size_t c = 0; c < ch; ++c) {
            const double unbiased = per_ch > 1 ? var[c] * per_ch / (per_ch - 1.0) : var[c];
            stats.mean[c] = (1.0 - momentum) * stats.mean[c] + momentum * mu[c];
            stats.var[c] = (1.0 - momentum) * stats.var[c] + momentum * unbiased;
        }
    }

    if (!tape.grad_enabled()) return tape.record(std::move(out), nullptr);

    Parameter* gp = &gamma;
    Parameter* bp = &beta;
    Tensor gamma_copy = gamma.value;
    return tape.record(
        std::move(out),
        [input, gp, bp, xhat = std::move(xhat), inv_std = std::move(inv_std), gamma_copy, batch,
         ch, e_n, t_n, per_ch](Tape& tape, const Tensor& g) {
            Tensor& dx = tape.grad(input);
            const double inv_n = 1.0 / static_cast<double>(per_ch);
            for (std::size_t c = 0; c < ch; ++c) {
                double sum_g = 0.0, sum_gx = 0.0;
                for (std::size_t b = 0; b < batch; ++b) {
                    const double* gsrc = g.data() + g.idx4(b, c, 0, 0);
                    const double* xh = xhat.data() + xhat.idx4(b, c, 0, 0);
                    for (std::size_t i = 0; i < e_n * t_n; ++i) {
                        sum_g += gsrc[i];
                        sum_gx += gsrc[i] * xh[i];
                    }
                }
                gp->grad[c] += sum_gx;
                bp->grad[c] += sum_g;
                const double k1 = gamma_copy[c] * inv_std[c];
                const double mean_g = sum_g * inv_n;
                const double mean_gx = sum_gx * inv_n;
                for (std::size_t b = 0; b < batch; ++b) {
                    const double* gsrc = g.data() + g.idx4(b, c, 0, 0);
                    const double* xh = xhat.data() + xhat.idx4(b, c, 0, 0);
                    double* dst = dx.data() + dx.idx4(b, c, 0, 0);
                    for (std::size_t i = 0; i < e_n * t_n; ++i) {
                        dst[i] += k1 * (gsrc[i] - mean_g - xh[i] * mean_gx);
                    }
                }
            }
        });
}

Var elu(Tape& tape, Var input) {
    const Tensor& x = tape.value(input);
    Tensor out(x.shape());
    for (std::size_t i = 0; i < x.size(); ++i)
        out[i] = x[i] > 0.0 ? x[i] : std::expm1(x[i]);
    Tensor y = out;
    return tape.record(std::move(out), [input, y = std::move(y)](Tape& tape, const Tensor& g) {
        Tensor& dx = tape.grad(input);
        const Tensor& x = tape.value(input);
        for (std::size_t i = 0; i < g.size(); ++i)
            dx[i] += g[i] * (x[i] > 0.0 ? 1.0 : y[i] + 1.0);
    });
}

Var square(Tape& tape, Var input) {
    const Tensor& x = tape.value(input);
    Tensor out(x.shape());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] * x[i];
    return tape.record(std::move(out), [input](Tape& tape, const Tensor& g) {
        Tensor& dx = tape.grad(input);
        const Tensor& x = tape.value(input);
        for (std::size_t i = 0; i < g.size(); ++i) dx[i] += 2.0 * x[i] * g[i];
    });
}

Var safe_log(Tape& tape, Var input, double floor) {
    const Tensor& x = tape.value(input);
    Tensor out(x.shape());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::log(std::max(x[i], floor));
    return tape.record(std::move(out), [input, floor](Tape& tape, const Tensor& g) {
        Tensor& dx = tape.grad(input);
        const Tensor& x = tape.value(input);
        for (std::size_t i = 0; i < g.size(); ++i)
            if (x[i] > floor) dx[i] += g[i] / x[i];
    });
}

namespace {

std::size_t pooled_len(std::size_t t_in, std::size_t len, std::size_t stride,
                       const char* op_name) {
    if (len > t_in) {
        throw TooShortError(std::string(op_name) + ": pool length " + std::to_string(len) +
                            " exceeds time extent " + std::to_string(t_in));
    }
    if (stride == 0) throw ShapeError(std::string(op_name) + ": stride must be positive");
    return (t_in - len) / stride + 1;
}

}  // namespace

Var max_pool_t(Tape& tape, Var input, std::size_t pool_len, std::size_t stride_t) {
    const Tensor& x = tape.value(input);
    require(x.ndim() == 4, "max_pool_t: input must be 4D");
    const std::size_t batch = x.extent(0), ch = x.extent(1), e_n = x.extent(2), t_in = x.extent(3);
    const std::size_t t_out = pooled_len(t_in, pool_len, stride_t, "max_pool_t");

    Tensor out({batch, ch, e_n, t_out});
    std::vector<std::size_t> argmax(tape.grad_enabled() ? out.size() : 0);
    std::size_t oi = 0;
    for (std::size_t b = 0; b < batch; ++b)
        for (std::size_t c = 0; c < ch; ++c)
            for (std::size_t e = 0; e < e_n; ++e) {
                const double* src = x.data() + x.idx4(b, c, e, 0);
                for (std::size_t t = 0; t < t_out; ++t, ++oi) {
                    const std::size_t start = t * stride_t;
                    double best = src[start];
                    std::size_t best_i = start;
                    for (std::size_t j = 1; j < pool_len; ++j) {
                        if (src[start + j] > best) {
                            best = src[start + j];
                            best_i = start + j;
                        }
                    }
                    out[oi] = best;
                    if (!argmax.empty()) argmax[oi] = x.idx4(b, c, e, best_i);
                }
            }

    return tape.record(std::move(out),
                       [input, argmax = std::move(argmax)](Tape& tape, const Tensor& g) {
                           Tensor& dx = tape.grad(input);
                           for (std::size_t i = 0; i < g.size(); ++i) dx[argmax[i]] += g[i];
                       });
}

Var mean_pool_t(Tape& tape, Var input, std::size_t pool_len, std::size_t stride_t) {
    const Tensor& x = tape.value(input);
    require(x.ndim() == 4, "mean_pool_t: input must be 4D");
    const std::size_t batch = x.extent(0), ch = x.extent(1), e_n = x.extent(2), t_in = x.extent(3);
    const std::size_t t_out = pooled_len(t_in, pool_len, stride_t, "mean_pool_t");

    Tensor out({batch, ch, e_n, t_out});
    const double inv = 1.0 / static_cast<double>(pool_len);
    std::size_t oi = 0;
    for (std::size_t b = 0; b < batch; ++b)
        for (std::size_t c = 0; c < ch; ++c)
            for (std::size_t e = 0; e < e_n; ++e) {
                const double* src = x.data() + x.idx4(b, c, e, 0);
                for (std::size_t t = 0; t < t_out; ++t, ++oi) {
                    double s = 0.0;
                    for (std::size_t j = 0; j < pool_len; ++j) s += src[t * stride_t + j];
                    out[oi] = s * inv;
                }
            }

    return tape.record(std::move(out), [input, pool_len, stride_t, inv](Tape& tape,
                                                                        const Tensor& g) {
        Tensor& dx = tape.grad(input);
        const std::size_t batch = g.extent(0), ch = g.extent(1), e_n = g.extent(2),
                          t_out = g.extent(3);
        std::size_t oi = 0;
        for (std::size_t b = 0; b < batch; ++b)
            for (std::size_t c = 0; c < ch; ++c)
                for (std::size_t e = 0; e < e_n; ++e) {
                    double* dst = dx.data() + dx.idx4(b, c, e, 0);
                    for (std::size_t t = 0; t < t_out; ++t, ++oi) {
                        const double gv = g[oi] * inv;
                        for (std::size_t j = 0; j < pool_len; ++j) dst[t * stride_t + j] += gv;
                    }
                }
    });
}

Var dense(Tape& tape, Var input, Parameter& weights, Parameter& bias) {
    const Tensor& x = tape.value(input);
    const Tensor& w = weights.value;
    require(x.ndim() == 2, "dense: input must be [batch, features], got " + x.shape_str());
    require(w.ndim() == 2, "dense: weights must be [out, features]");
    if (w.extent(1) != x.extent(1)) {
        throw ShapeError("dense: weight feature extent " + std::to_string(w.extent(1)) +
                         " does not match input features " + std::to_string(x.extent(1)));
    }
    require(bias.value.size() == w.extent(0), "dense: bias size mismatch");

    const std::size_t batch = x.extent(0), f = x.extent(1), o_n = w.extent(0);
    Tensor out({batch, o_n});
    MapConstMat xm(x.data(), batch, f);
    MapConstMat wm(w.data(), o_n, f);
    MapMat om(out.data(), batch, o_n);
    om.noalias() = xm * wm.transpose();
    for (std::size_t o = 0; o < o_n; ++o) om.col(o).array() += bias.value[o];

    Parameter* wp = &weights;
    Parameter* bp = &bias;
    return tape.record(std::move(out), [input, wp, bp](Tape& tape, const Tensor& g) {
        const Tensor& x = tape.value(input);
        Tensor& dx = tape.grad(input);
        const std::size_t batch = x.extent(0), f = x.extent(1), o_n = g.extent(1);
        MapConstMat xm(x.data(), batch, f);
        MapConstMat gm(g.data(), batch, o_n);
        MapConstMat wm(wp->value.data(), o_n, f);
        MapMat dwm(wp->grad.data(), o_n, f);
        MapMat dxm(dx.data(), batch, f);
        dwm.noalias() += gm.transpose() * xm;
        dxm.noalias() += gm * wm;
        for (std::size_t o = 0; o < o_n; ++o) bp->grad[o] += gm.col(o).sum();
    });
}

Var log_softmax(Tape& tape, Var input) {
    const Tensor& x = tape.value(input);
    require(x.ndim() == 2, "log_softmax: input must be [batch, classes]");
    const std::size_t batch = x.extent(0), k = x.extent(1);

    Tensor out(x.shape());
    for (std::size_t b = 0; b < batch; ++b) {
        const double* src = x.data() + b * k;
        double* dst = out.data() + b * k;
        double m = src[0];
        for (std::size_t j = 1; j < k; ++j) m = std::max(m, src[j]);
        double s = 0.0;
        for (std::size_t j = 0; j < k; ++j) s += std::exp(src[j] - m);
        const double lse = m + std::log(s);
        for (std::size_t j = 0; j < k; ++j) dst[j] = src[j] - lse;
    }

    Tensor y = out;
    return tape.record(std::move(out), [input, y = std::move(y)](Tape& tape, const Tensor& g) {
        Tensor& dx = tape.grad(input);
        const std::size_t batch = g.extent(0), k = g.extent(1);
        for (std::size_t b = 0; b < batch; ++b) {
            double gs = 0.0;
            for (std::size_t j = 0; j < k; ++j) gs += g[b * k + j];
            for (std::size_t j = 0; j < k; ++j)
                dx[b * k + j] += g[b * k + j] - std::exp(y[b * k + j]) * gs;
        }
    });
}

Var nll_loss(Tape& tape, Var log_probs, const std::vector<int>& labels) {
    const Tensor& lp = tape.value(log_probs);
    require(lp.ndim() == 2, "nll_loss: log_probs must be [batch, classes]");
    const std::size_t batch = lp.extent(0), k = lp.extent(1);
    if (labels.size() != batch) {
        throw ShapeError("nll_loss: got " + std::to_string(labels.size()) + " labels for batch " +
                         std::to_string(batch));
    }
    for (int l : labels) {
        if (l < 0 || static_cast<std::size_t>(l) >= k) {
            throw DataError("nll_loss: label " + std::to_string(l) + " out of range [0, " +
                            std::to_string(k) + ")");
        }
    }

    double loss = 0.0;
    for (std::size_t b = 0; b < batch; ++b) loss -= lp[b * k + static_cast<std::size_t>(labels[b])];
    loss /= static_cast<double>(batch);

    return tape.record(Tensor::scalar(loss),
                       [log_probs, labels, k](Tape& tape, const Tensor& g) {
                           Tensor& dlp = tape.grad(log_probs);
                           const double gv = g[0] / static_cast<double>(labels.size());
                           for (std::size_t b = 0; b < labels.size(); ++b)
                               dlp[b * k + static_cast<std::size_t>(labels[b])] -= gv;
                       });
}

Var reshape(Tape& tape, Var input, std::vector<std::size_t> new_shape) {
    const Tensor& x = tape.value(input);
    Tensor out = x.reshaped(std::move(new_shape));
    return tape.record(std::move(out), [input](Tape& tape, const Tensor& g) {
        Tensor& dx = tape.grad(input);
        for (std::size_t i = 0; i < g.size(); ++i) dx[i] += g[i];
    });
}

Var sum(Tape& tape, Var input) {
    const Tensor& x = tape.value(input);
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i];
    return tape.record(Tensor::scalar(s), [input](Tape& tape, const Tensor& g) {
        Tensor& dx = tape.grad(input);
        for (std::size_t i = 0; i < dx.size(); ++i) dx[i] += g[0];
    });
}

}  // namespace eegdec
