#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eegdec/kvconfig.hpp"
#include "eegdec/recording.hpp"

namespace eegdec {

// Class-difference signature injected multiplicatively in the frequency
// domain. With all gains at 1.0 the two classes are indistinguishable.
// Because power scales as amplitude squared, the expected class log-ratio of
// band power at an injected cell is 2*ln(gain).
struct SignatureConfig {
    double sample_rate_hz = 100.0;
    double delta_theta_gain = 3.0;                       // pathological amplitude gain
    double dt_lo_hz = 0.0;
    double dt_hi_hz = 8.0;
    std::vector<std::string> target_electrodes = {"T3", "T4"};
    double beta_gain = 0.5;                              // broad attenuation
    double beta_lo_hz = 14.0;
    double beta_hi_hz = 50.0;
    double alpha_amp = 1.0;                              // occipital 10 Hz bump, both classes
    double background_rms_uv = 30.0;

    KvMap to_kv() const;
    static SignatureConfig from_kv(const KvMap& kv);
};

struct SynthDataset {
    std::vector<Recording> recordings;  // interleaved normal/pathological
    SignatureConfig signature;
};

// Deterministic given seed. Both classes share 1/f background noise plus a
// 10 Hz occipital alpha bump; the pathological class additionally gets the
// configured spectral gains. Samples are rounded to float32 so they survive
// a container round trip bit-exactly.
SynthDataset synth_dataset(std::size_t n_per_class, double duration_s, std::uint64_t seed,
                           const SignatureConfig& cfg = {});

// subject-disjoint split: first train_fraction of subjects per class train,
// the rest eval
void split_dataset(const std::vector<Recording>& recordings, double train_fraction,
                   std::vector<const Recording*>& train, std::vector<const Recording*>& eval_set);

}  // namespace eegdec
