#pragma once

#include <vector>

#include "eegdec/tape.hpp"
#include "eegdec/tensor.hpp"

namespace eegdec {

enum class Mode { train, eval };

// Per-channel statistics maintained by batch_norm across training batches.
struct RunningStats {
    Tensor mean;
    Tensor var;
    bool initialized = false;
};

// Valid (no padding) convolution along the time axis.
// input [batch, ch_in, electrodes, time], kernels [ch_out, ch_in, 1, k_t],
// bias [ch_out] -> [batch, ch_out, electrodes, time_out]
Var conv_temporal(Tape& tape, Var input, Parameter& kernels, Parameter& bias,
                  std::size_t stride_t);

// Weighted combination across the full electrode axis.
// input [batch, ch_in, electrodes, time], kernels [ch_out, ch_in, electrodes, 1],
// bias [ch_out] -> [batch, ch_out, 1, time]
Var conv_spatial(Tape& tape, Var input, Parameter& kernels, Parameter& bias);

// Normalizes per feature-map channel over batch x electrodes x time.
Var batch_norm(Tape& tape, Var input, Parameter& gamma, Parameter& beta,
               RunningStats& stats, Mode mode, double epsilon = 1e-5,
               double momentum = 0.1);

Var elu(Tape& tape, Var input);
Var square(Tape& tape, Var input);
// ln(max(x, floor)); total on x >= 0 after clamping
Var safe_log(Tape& tape, Var input, double floor = 1e-6);

// Windowed max/mean along time. Max backward routes the gradient to the
// first maximal index of each window.
Var max_pool_t(Tape& tape, Var input, std::size_t pool_len, std::size_t stride_t);
Var mean_pool_t(Tape& tape, Var input, std::size_t pool_len, std::size_t stride_t);

// input [batch, features], weights [out, features], bias [out] -> [batch, out]
Var dense(Tape& tape, Var input, Parameter& weights, Parameter& bias);

// Row-wise log softmax on [batch, classes].
Var log_softmax(Tape& tape, Var input);

// Mean negative log likelihood of the true labels. labels in [0, classes).
Var nll_loss(Tape& tape, Var log_probs, const std::vector<int>& labels);

Var reshape(Tape& tape, Var input, std::vector<std::size_t> new_shape);
Var sum(Tape& tape, Var input);

}  // namespace eegdec
