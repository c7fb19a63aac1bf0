#pragma once

#include <string>
#include <vector>

#include "eegdec/kvconfig.hpp"

namespace eegdec {

// Everything needed to construct a network. Serializes to the flat key=value
// grammar so search trials, CLI runs and manifests stay diffable.
struct ArchitectureConfig {
    std::string kind = "deep";  // deep | shallow | linear
    int input_len = 601;        // samples; must equal the derived receptive field
    int n_electrodes = 21;

    // per conv/pool block
    std::vector<int> filters = {25, 50, 100, 200};
    std::vector<int> kernel_lens = {10, 10, 10, 10};
    std::vector<int> conv_strides = {3, 3, 3, 3};
    std::vector<int> pool_lens = {3, 3, 3, 3};
    std::vector<int> pool_strides = {1, 1, 1, 1};

    std::string pool_type = "max";         // max | mean
    std::string conv_nonlin = "elu";       // elu | square | identity
    std::string pool_nonlin = "identity";  // safe_log | identity

    int final_filter_len = 1;

    static ArchitectureConfig deep_default();
    static ArchitectureConfig shallow_default();
    static ArchitectureConfig linear_default();
    static ArchitectureConfig default_for(const std::string& kind);

    KvMap to_kv() const;
    static ArchitectureConfig from_kv(const KvMap& kv);

    void validate() const;
    bool operator==(const ArchitectureConfig&) const = default;
};

// input samples feeding one network output, computed over the layer stack
int receptive_field(const ArchitectureConfig& cfg);
// distance in input samples between adjacent network outputs
int temporal_output_jump(const ArchitectureConfig& cfg);

}  // namespace eegdec
