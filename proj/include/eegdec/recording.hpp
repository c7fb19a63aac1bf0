#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace eegdec {

enum class Label : std::uint8_t { normal = 0, pathological = 1, unlabeled = 255 };

// One multichannel EEG session. Samples are microvolts, electrode-major
// ([electrode][time] flattened).
struct Recording {
    std::vector<std::string> electrode_labels;
    double sample_rate_hz = 0.0;
    std::size_t n_samples = 0;
    std::vector<double> samples;
    Label label = Label::unlabeled;
    std::string report_text;
    std::string subject_id;

    std::size_t n_electrodes() const { return electrode_labels.size(); }
    double duration_s() const {
        return sample_rate_hz > 0 ? static_cast<double>(n_samples) / sample_rate_hz : 0.0;
    }
    double* row(std::size_t e) { return samples.data() + e * n_samples; }
    const double* row(std::size_t e) const { return samples.data() + e * n_samples; }
    int electrode_index(const std::string& name) const;  // -1 when absent
    void validate() const;
};

// Binary container ("EEGREC01", little-endian, float32 samples). The
// subject id is not part of the payload; load_recording derives it from the
// file name stem.
Recording load_recording(const std::string& path);
void save_recording(const Recording& rec, const std::string& path);

struct ManifestEntry {
    std::string path;  // relative to the manifest's directory
    std::string split; // "train" or "eval"
};

// plain-text sidecar: one "path<TAB>split" per line
std::vector<ManifestEntry> load_manifest(const std::string& manifest_path);
void save_manifest(const std::vector<ManifestEntry>& entries, const std::string& manifest_path);

// loads every recording of one split ("" loads all), resolving paths
// relative to the manifest location
std::vector<Recording> load_split(const std::string& manifest_path, const std::string& split);

}  // namespace eegdec
