#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eegdec/recording.hpp"

namespace eegdec {

// the standard 10-20 clinical montage of 21 channels
const std::vector<std::string>& standard_electrodes();

struct PreprocessConfig {
    std::vector<std::string> electrode_subset = standard_electrodes();
    double skip_head_seconds = 60.0;
    double max_keep_seconds = 1200.0;
    double clip_uv = 800.0;
    double target_rate_hz = 100.0;
};

// Electrode selection, head removal, duration cap, amplitude clip, resample;
// applied in that order. Applying it twice removes the head twice.
Recording preprocess(const Recording& rec, const PreprocessConfig& cfg = {});

// Rational-ratio polyphase resampler with a Kaiser(beta=8) windowed-sinc
// anti-aliasing lowpass at min(from, to)/2. Output length round(n*to/from).
std::vector<double> resample(const std::vector<double>& x, double from_hz, double to_hz);

struct Crop {
    std::size_t recording_index = 0;
    std::size_t start = 0;
    std::size_t length = 0;
};

// Starts at 0, stride, 2*stride, ...; a final crop ending at the last sample
// is always included so the union covers every sample.
std::vector<Crop> generate_crops(std::size_t n_samples, std::size_t crop_len, std::size_t stride,
                                 std::size_t recording_index = 0);

// truncates a preprocessed recording to its first `minutes` minutes
// (0 = keep everything); shorter recordings are kept as they are
Recording limit_minutes(const Recording& rec, double minutes);

}  // namespace eegdec
