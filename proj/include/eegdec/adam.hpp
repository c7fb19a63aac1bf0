#pragma once

#include <vector>

#include "eegdec/tape.hpp"

namespace eegdec {

struct AdamConfig {
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

// Bias-corrected Adam update on every parameter. Gradients are consumed
// (zeroed) and step_count advances by one.
void adam_step(const std::vector<Parameter*>& params, const AdamConfig& cfg);

}  // namespace eegdec
