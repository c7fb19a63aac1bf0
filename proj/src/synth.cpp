#include "eegdec/synth.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <iterator>

#include "eegdec/errors.hpp"
#include "eegdec/fft.hpp"
#include "eegdec/preprocess.hpp"
#include "eegdec/rng.hpp"

namespace eegdec {

KvMap SignatureConfig::to_kv() const {
    KvMap kv;
    kv["sample_rate_hz"] = format_full(sample_rate_hz);
    kv["delta_theta_gain"] = format_full(delta_theta_gain);
    kv["dt_lo_hz"] = format_full(dt_lo_hz);
    kv["dt_hi_hz"] = format_full(dt_hi_hz);
    std::string joined;
    for (std::size_t i = 0; i < target_electrodes.size(); ++i) {
        if (i) joined += ",";
        joined += target_electrodes[i];
    }
    kv["target_electrodes"] = joined;
    kv["beta_gain"] = format_full(beta_gain);
    kv["beta_lo_hz"] = format_full(beta_lo_hz);
    kv["beta_hi_hz"] = format_full(beta_hi_hz);
    kv["alpha_amp"] = format_full(alpha_amp);
    kv["background_rms_uv"] = format_full(background_rms_uv);
    return kv;
}

SignatureConfig SignatureConfig::from_kv(const KvMap& kv) {
    SignatureConfig c;
    c.sample_rate_hz = kv_get_double(kv, "sample_rate_hz", c.sample_rate_hz);
    c.delta_theta_gain = kv_get_double(kv, "delta_theta_gain", c.delta_theta_gain);
    c.dt_lo_hz = kv_get_double(kv, "dt_lo_hz", c.dt_lo_hz);
    c.dt_hi_hz = kv_get_double(kv, "dt_hi_hz", c.dt_hi_hz);
    c.beta_gain = kv_get_double(kv, "beta_gain", c.beta_gain);
    c.beta_lo_hz = kv_get_double(kv, "beta_lo_hz", c.beta_lo_hz);
    c.beta_hi_hz = kv_get_double(kv, "beta_hi_hz", c.beta_hi_hz);
    c.alpha_amp = kv_get_double(kv, "alpha_amp", c.alpha_amp);
    c.background_rms_uv = kv_get_double(kv, "background_rms_uv", c.background_rms_uv);
    const std::string targets = kv_get(kv, "target_electrodes", "T3,T4");
    c.target_electrodes.clear();
    std::string cur;
    for (char ch : targets + ",") {
        if (ch == ',') {
            if (!cur.empty()) c.target_electrodes.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    return c;
}

namespace {

const char* kNormalReports[] = {
    "Normal EEG.",
    "Normal EEG in wakefulness.",
    "Normal awake and drowsy record.",
    "Well organized posterior rhythm, normal study.",
};

const char* kPathologicalReports[] = {
    "Diffuse slowing over the temporal regions.",
    "Excess theta activity during wakefulness.",
    "Intermittent left temporal delta slowing.",
    "Background disorganization with bilateral temporal slowing.",
    "Focal slowing noted over the right temporal region.",
};

// amplitude envelope per frequency for one electrode, normal class
double base_envelope(double f, bool occipital, const SignatureConfig& cfg) {
    if (f <= 0.0) return 0.0;  // no DC component
    double env = 1.0 / std::sqrt(std::max(f, 0.5));
    if (occipital) {
        const double d = f - 10.0;
        env += cfg.alpha_amp * 0.35 * std::exp(-0.5 * d * d);
    }
    return env;
}

}  // namespace

SynthDataset synth_dataset(std::size_t n_per_class, double duration_s, std::uint64_t seed,
                           const SignatureConfig& cfg) {
    if (n_per_class == 0) throw DataError("synth_dataset: need at least one recording per class");
    if (duration_s <= 0) throw DataError("synth_dataset: duration must be positive");

    const auto& electrodes = standard_electrodes();
    const std::size_t n_samples =
        static_cast<std::size_t>(std::llround(duration_s * cfg.sample_rate_hz));
    const std::size_t n_bins = n_samples / 2 + 1;

    // per-electrode normalization from the normal-class envelope, shared by
    // both classes so the injected ratio is preserved exactly
    std::vector<double> scale(electrodes.size());
    for (std::size_t e = 0; e < electrodes.size(); ++e) {
        const bool occ = electrodes[e] == "O1" || electrodes[e] == "O2";
        double power = 0.0;
        for (std::size_t k = 0; k < n_bins; ++k) {
            const double f = static_cast<double>(k) * cfg.sample_rate_hz /
                             static_cast<double>(n_samples);
            const double env = base_envelope(f, occ, cfg);
            const bool interior = k != 0 && !(n_samples % 2 == 0 && k == n_bins - 1);
            power += (interior ? 2.0 : 1.0) * env * env;
        }
        const double rms = std::sqrt(power) / static_cast<double>(n_samples);
        scale[e] = rms > 0 ? cfg.background_rms_uv / rms : 1.0;
    }

    SynthDataset ds;
    ds.signature = cfg;
    ds.recordings.reserve(2 * n_per_class);

    for (std::size_t i = 0; i < 2 * n_per_class; ++i) {
        const bool pathological = (i % 2) == 1;
        Rng rng = Rng::fork(seed, i);

        Recording rec;
        rec.electrode_labels = electrodes;
        rec.sample_rate_hz = cfg.sample_rate_hz;
        rec.n_samples = n_samples;
        rec.samples.resize(electrodes.size() * n_samples);
        rec.label = pathological ? Label::pathological : Label::normal;
        char sid[32];
        std::snprintf(sid, sizeof(sid), "s%04zu", i);
        rec.subject_id = sid;
        if (pathological) {
            rec.report_text = kPathologicalReports[rng.uniform_int(
                0, std::size(kPathologicalReports) - 1)];
        } else {
            rec.report_text = kNormalReports[rng.uniform_int(0, std::size(kNormalReports) - 1)];
        }

        std::vector<std::complex<double>> spectrum(n_bins);
        for (std::size_t e = 0; e < electrodes.size(); ++e) {
            const bool occ = electrodes[e] == "O1" || electrodes[e] == "O2";
            const bool target = std::find(cfg.target_electrodes.begin(),
                                          cfg.target_electrodes.end(),
                                          electrodes[e]) != cfg.target_electrodes.end();
            for (std::size_t k = 0; k < n_bins; ++k) {
                const double f = static_cast<double>(k) * cfg.sample_rate_hz /
                                 static_cast<double>(n_samples);
                double env = base_envelope(f, occ, cfg) * scale[e];
                if (pathological) {
                    if (target && f >= cfg.dt_lo_hz && f < cfg.dt_hi_hz) env *= cfg.delta_theta_gain;
                    if (f >= cfg.beta_lo_hz && f < cfg.beta_hi_hz) env *= cfg.beta_gain;
                }
                const bool edge = k == 0 || (n_samples % 2 == 0 && k == n_bins - 1);
                if (edge) {
                    spectrum[k] = {env * rng.gaussian(), 0.0};
                } else {
                    spectrum[k] = {env * rng.gaussian() * M_SQRT1_2,
                                   env * rng.gaussian() * M_SQRT1_2};
                }
            }
            std::vector<double> x = irfft(spectrum, n_samples);
            double* dst = rec.row(e);
            for (std::size_t t = 0; t < n_samples; ++t) {
                // float32 rounding keeps container round trips bit-exact
                dst[t] = static_cast<double>(static_cast<float>(x[t]));
            }
        }
        ds.recordings.push_back(std::move(rec));
    }
    return ds;
}

void split_dataset(const std::vector<Recording>& recordings, double train_fraction,
                   std::vector<const Recording*>& train, std::vector<const Recording*>& eval_set) {
    train.clear();
    eval_set.clear();
    std::size_t n_normal = 0, n_patho = 0;
    for (const auto& r : recordings) {
        if (r.label == Label::pathological)
            ++n_patho;
        else
            ++n_normal;
    }
    const auto train_n = static_cast<std::size_t>(std::llround(train_fraction * n_normal));
    const auto train_p = static_cast<std::size_t>(std::llround(train_fraction * n_patho));
    std::size_t seen_n = 0, seen_p = 0;
    for (const auto& r : recordings) {
        if (r.label == Label::pathological) {
            (seen_p++ < train_p ? train : eval_set).push_back(&r);
        } else {
            (seen_n++ < train_n ? train : eval_set).push_back(&r);
        }
    }
}

}  // namespace eegdec
