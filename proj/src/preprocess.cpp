#include "eegdec/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "eegdec/errors.hpp"

namespace eegdec {

const std::vector<std::string>& standard_electrodes() {
    static const std::vector<std::string> names = {
        "Fp1", "Fp2", "F7", "F3", "Fz", "F4", "F8", "T3", "C3", "Cz", "C4",
        "T4",  "T5",  "P3", "Pz", "P4", "T6", "O1", "O2", "A1", "A2"};
    return names;
}

namespace {

double bessel_i0(double x) {
    // series expansion; converges fast for the beta range we use
    double sum = 1.0, term = 1.0;
    const double q = x * x / 4.0;
    for (int k = 1; k < 64; ++k) {
        term *= q / (static_cast<double>(k) * k);
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return sum;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
    while (b) {
        const std::uint64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace

std::vector<double> resample(const std::vector<double>& x, double from_hz, double to_hz) {
    if (from_hz <= 0 || to_hz <= 0) throw DataError("resample: rates must be positive");
    if (from_hz == to_hz) return x;
    if (x.empty()) return {};

    // reduce the ratio to integers (rates up to 3 decimal places)
    const auto from_i = static_cast<std::uint64_t>(std::llround(from_hz * 1000.0));
    const auto to_i = static_cast<std::uint64_t>(std::llround(to_hz * 1000.0));
    const std::uint64_t g = gcd_u64(from_i, to_i);
    const std::size_t up = static_cast<std::size_t>(to_i / g);    // L
    const std::size_t down = static_cast<std::size_t>(from_i / g);  // M

    const std::size_t n_in = x.size();
    const std::size_t n_out =
        static_cast<std::size_t>(std::llround(static_cast<double>(n_in) * to_hz / from_hz));
    if (n_out == 0) return {};

    // windowed-sinc prototype at the upsampled rate from_hz * up
    const std::size_t ratio = std::max(up, down);
    const std::size_t zero_crossings = 16;
    const std::size_t half = zero_crossings * ratio;
    const std::size_t n_taps = 2 * half + 1;
    const double beta = 8.0;
    const double cutoff_scale = 0.98;  // keeps the transition band inside Nyquist
    const double fc = cutoff_scale / static_cast<double>(ratio);  // as fraction of pi

    std::vector<double> h(n_taps);
    const double i0b = bessel_i0(beta);
    for (std::size_t i = 0; i < n_taps; ++i) {
        const double t = static_cast<double>(i) - static_cast<double>(half);
        const double sinc = t == 0.0 ? 1.0 : std::sin(M_PI * fc * t) / (M_PI * fc * t);
        const double frac = t / static_cast<double>(half);
        const double win = bessel_i0(beta * std::sqrt(std::max(0.0, 1.0 - frac * frac))) / i0b;
        h[i] = fc * sinc * win * static_cast<double>(up);
    }

    std::vector<double> y(n_out, 0.0);
    const std::int64_t center = static_cast<std::int64_t>(half);
    for (std::size_t j = 0; j < n_out; ++j) {
        // upsampled-domain position of output sample j, shifted by group delay
        const std::int64_t pos = static_cast<std::int64_t>(j) * static_cast<std::int64_t>(down) +
                                 center;
        double acc = 0.0;
        // only taps hitting nonzero (stuffed) samples contribute:
        // pos - m must be a multiple of `up`
        const std::int64_t m0 = pos % static_cast<std::int64_t>(up);
        for (std::int64_t m = m0; m < static_cast<std::int64_t>(n_taps);
             m += static_cast<std::int64_t>(up)) {
            const std::int64_t src = (pos - m) / static_cast<std::int64_t>(up);
            if (src < 0 || src >= static_cast<std::int64_t>(n_in)) continue;
            acc += h[static_cast<std::size_t>(m)] * x[static_cast<std::size_t>(src)];
        }
        y[j] = acc;
    }
    return y;
}

Recording preprocess(const Recording& rec, const PreprocessConfig& cfg) {
    rec.validate();

    // step 1: electrode subset in configured order
    std::vector<int> rows;
    rows.reserve(cfg.electrode_subset.size());
    for (const auto& name : cfg.electrode_subset) {
        const int idx = rec.electrode_index(name);
        if (idx < 0) throw DataError("preprocess: electrode " + name + " missing from recording");
        rows.push_back(idx);
    }

    // step 2: drop the artifact-prone head
    const auto skip = static_cast<std::size_t>(std::llround(cfg.skip_head_seconds * rec.sample_rate_hz));
    if (rec.n_samples <= skip) {
        throw TooShortError("preprocess: recording shorter than " +
                            std::to_string(cfg.skip_head_seconds) + " s head removal");
    }

    // step 3: cap the duration
    const auto cap = static_cast<std::size_t>(std::llround(cfg.max_keep_seconds * rec.sample_rate_hz));
    const std::size_t keep = std::min(rec.n_samples - skip, cap);

    Recording out;
    out.electrode_labels = cfg.electrode_subset;
    out.label = rec.label;
    out.report_text = rec.report_text;
    out.subject_id = rec.subject_id;

    std::vector<double> channel(keep);
    for (std::size_t e = 0; e < rows.size(); ++e) {
        const double* src = rec.row(static_cast<std::size_t>(rows[e]));
        for (std::size_t t = 0; t < keep; ++t) {
            // step 4: clip
            channel[t] = std::clamp(src[skip + t], -cfg.clip_uv, cfg.clip_uv);
        }
        // step 5: resample
        std::vector<double> res = resample(channel, rec.sample_rate_hz, cfg.target_rate_hz);
        if (e == 0) {
            out.n_samples = res.size();
            out.sample_rate_hz = cfg.target_rate_hz;
            out.samples.resize(rows.size() * res.size());
        }
        std::copy(res.begin(), res.end(), out.row(e));
    }
    return out;
}

std::vector<Crop> generate_crops(std::size_t n_samples, std::size_t crop_len, std::size_t stride,
                                 std::size_t recording_index) {
    if (crop_len == 0 || stride == 0) throw DataError("generate_crops: zero crop length or stride");
    if (crop_len > n_samples) {
        throw TooShortError("generate_crops: crop length " + std::to_string(crop_len) +
                            " exceeds recording length " + std::to_string(n_samples));
    }
    std::vector<Crop> crops;
    const std::size_t last_start = n_samples - crop_len;
    for (std::size_t s = 0;; s += stride) {
        if (s >= last_start) {
            crops.push_back({recording_index, last_start, crop_len});
            break;
        }
        crops.push_back({recording_index, s, crop_len});
    }
    return crops;
}

Recording limit_minutes(const Recording& rec, double minutes) {
    if (minutes <= 0) return rec;
    const auto keep = static_cast<std::size_t>(std::llround(minutes * 60.0 * rec.sample_rate_hz));
    if (keep >= rec.n_samples) return rec;
    Recording out = rec;
    out.n_samples = keep;
    out.samples.resize(rec.n_electrodes() * keep);
    for (std::size_t e = 0; e < rec.n_electrodes(); ++e) {
        std::copy(rec.row(e), rec.row(e) + keep, out.row(e));
    }
    return out;
}

}  // namespace eegdec
