#include "eegdec/recording.hpp"

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "eegdec/errors.hpp"

namespace eegdec {

namespace {

constexpr char kMagic[8] = {'E', 'E', 'G', 'R', 'E', 'C', '0', '1'};
constexpr std::uint32_t kVersion = 1;

void write_u32(std::ostream& os, std::uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
    os.write(reinterpret_cast<const char*>(b), 4);
}

void write_u64(std::ostream& os, std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
    os.write(reinterpret_cast<const char*>(b), 8);
}

void write_f64(std::ostream& os, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    write_u64(os, bits);
}

std::uint32_t read_u32(std::istream& is, const std::string& what) {
    unsigned char b[4];
    if (!is.read(reinterpret_cast<char*>(b), 4)) throw FormatError("truncated file reading " + what);
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | b[i];
    return v;
}

std::uint64_t read_u64(std::istream& is, const std::string& what) {
    unsigned char b[8];
    if (!is.read(reinterpret_cast<char*>(b), 8)) throw FormatError("truncated file reading " + what);
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
    return v;
}

double read_f64(std::istream& is, const std::string& what) {
    const std::uint64_t bits = read_u64(is, what);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

}  // namespace

int Recording::electrode_index(const std::string& name) const {
    for (std::size_t i = 0; i < electrode_labels.size(); ++i)
        if (electrode_labels[i] == name) return static_cast<int>(i);
    return -1;
}

void Recording::validate() const {
    if (sample_rate_hz <= 0) throw DataError("recording has non-positive sample rate");
    if (samples.size() != n_electrodes() * n_samples) {
        throw DataError("recording sample matrix does not match electrode count");
    }
    for (double v : samples) {
        if (!std::isfinite(v)) throw DataError("recording contains non-finite samples");
    }
}

void save_recording(const Recording& rec, const std::string& path) {
    rec.validate();
    std::ofstream os(path, std::ios::binary);
    if (!os) throw FormatError("cannot open for writing: " + path);

    os.write(kMagic, 8);
    write_u32(os, kVersion);
    write_u32(os, static_cast<std::uint32_t>(rec.n_electrodes()));
    write_u64(os, rec.n_samples);
    write_f64(os, rec.sample_rate_hz);
    for (const auto& label : rec.electrode_labels) {
        os.write(label.c_str(), static_cast<std::streamsize>(label.size()) + 1);
    }
    os.put(static_cast<char>(rec.label));
    write_u32(os, static_cast<std::uint32_t>(rec.report_text.size()));
    os.write(rec.report_text.data(), static_cast<std::streamsize>(rec.report_text.size()));

    std::vector<float> buf(rec.samples.size());
    for (std::size_t i = 0; i < rec.samples.size(); ++i) buf[i] = static_cast<float>(rec.samples[i]);
    os.write(reinterpret_cast<const char*>(buf.data()),
             static_cast<std::streamsize>(buf.size() * sizeof(float)));
    if (!os) throw FormatError("write failed: " + path);
}

Recording load_recording(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw FormatError("cannot open recording: " + path);

    char magic[8];
    if (!is.read(magic, 8) || std::memcmp(magic, kMagic, 8) != 0) {
        throw FormatError("bad magic bytes in " + path);
    }
    const std::uint32_t version = read_u32(is, "version");
    if (version != kVersion) {
        throw FormatError("unsupported container version " + std::to_string(version) + " in " + path);
    }

    Recording rec;
    const std::uint32_t n_el = read_u32(is, "electrode count");
    rec.n_samples = read_u64(is, "sample count");
    rec.sample_rate_hz = read_f64(is, "sample rate");
    rec.electrode_labels.resize(n_el);
    for (std::uint32_t e = 0; e < n_el; ++e) {
        std::string label;
        char c;
        while (is.get(c) && c != '\0') label.push_back(c);
        if (!is) throw FormatError("truncated electrode labels in " + path);
        rec.electrode_labels[e] = std::move(label);
    }
    int lb = is.get();
    if (lb == EOF) throw FormatError("truncated label byte in " + path);
    if (lb != 0 && lb != 1 && lb != 255) {
        throw FormatError("invalid class label byte " + std::to_string(lb) + " in " + path);
    }
    rec.label = static_cast<Label>(lb);
    const std::uint32_t report_len = read_u32(is, "report length");
    rec.report_text.resize(report_len);
    if (report_len > 0 && !is.read(rec.report_text.data(), report_len)) {
        throw FormatError("truncated report text in " + path);
    }

    const std::size_t total = static_cast<std::size_t>(n_el) * rec.n_samples;
    std::vector<float> buf(total);
    if (total > 0 &&
        !is.read(reinterpret_cast<char*>(buf.data()),
                 static_cast<std::streamsize>(total * sizeof(float)))) {
        throw FormatError("truncated sample payload in " + path);
    }
    rec.samples.resize(total);
    for (std::size_t i = 0; i < total; ++i) rec.samples[i] = static_cast<double>(buf[i]);

    rec.subject_id = std::filesystem::path(path).stem().string();
    return rec;
}

std::vector<ManifestEntry> load_manifest(const std::string& manifest_path) {
    std::ifstream is(manifest_path);
    if (!is) throw FormatError("cannot open manifest: " + manifest_path);
    std::vector<ManifestEntry> entries;
    std::string line;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos) throw FormatError("manifest line missing tab: " + line);
        ManifestEntry e{line.substr(0, tab), line.substr(tab + 1)};
        if (e.split != "train" && e.split != "eval") {
            throw FormatError("manifest split must be train or eval, got: " + e.split);
        }
        entries.push_back(std::move(e));
    }
    return entries;
}

void save_manifest(const std::vector<ManifestEntry>& entries, const std::string& manifest_path) {
    std::ofstream os(manifest_path);
    if (!os) throw FormatError("cannot write manifest: " + manifest_path);
    for (const auto& e : entries) os << e.path << "\t" << e.split << "\n";
}

std::vector<Recording> load_split(const std::string& manifest_path, const std::string& split) {
    const auto entries = load_manifest(manifest_path);
    const auto base = std::filesystem::path(manifest_path).parent_path();
    std::vector<Recording> out;
    for (const auto& e : entries) {
        if (!split.empty() && e.split != split) continue;
        out.push_back(load_recording((base / e.path).string()));
    }
    return out;
}

}  // namespace eegdec
