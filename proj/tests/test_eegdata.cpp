#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>

#include "eegdec/errors.hpp"
#include "eegdec/fft.hpp"
#include "eegdec/preprocess.hpp"
#include "eegdec/recording.hpp"
#include "eegdec/rng.hpp"
#include "eegdec/synth.hpp"

using namespace eegdec;

namespace {

std::filesystem::path temp_dir() {
    auto p = std::filesystem::temp_directory_path() / "eegdec_test";
    std::filesystem::create_directories(p);
    return p;
}

Recording make_recording(std::size_t n_el, std::size_t n_samples, double rate, Rng& rng) {
    Recording r;
    for (std::size_t e = 0; e < n_el; ++e) r.electrode_labels.push_back("E" + std::to_string(e));
    r.sample_rate_hz = rate;
    r.n_samples = n_samples;
    r.samples.resize(n_el * n_samples);
    for (auto& v : r.samples) v = static_cast<double>(static_cast<float>(rng.gaussian() * 50.0));
    r.label = Label::pathological;
    r.report_text = "test report";
    return r;
}

double tone_amplitude(const std::vector<double>& x, double rate, double freq) {
    // amplitude of a single tone estimated from the peak FFT bin
    auto spec = rfft(x);
    const double bin_hz = rate / static_cast<double>(x.size());
    const auto k = static_cast<std::size_t>(std::llround(freq / bin_hz));
    return 2.0 * std::abs(spec[k]) / static_cast<double>(x.size());
}

}  // namespace

TEST_CASE("recording container round trip") {
    Rng rng(5);
    auto dir = temp_dir();

    SUBCASE("small recording round trips bitwise") {
        Recording r = make_recording(2, 10, 250.0, rng);
        const auto path = (dir / "tiny.eegrec").string();
        r.subject_id = "tiny";
        save_recording(r, path);
        Recording back = load_recording(path);
        CHECK(back.electrode_labels == r.electrode_labels);
        CHECK(back.sample_rate_hz == r.sample_rate_hz);
        CHECK(back.n_samples == r.n_samples);
        CHECK(back.label == r.label);
        CHECK(back.report_text == r.report_text);
        CHECK(back.subject_id == "tiny");
        for (std::size_t i = 0; i < r.samples.size(); ++i) CHECK(back.samples[i] == r.samples[i]);
    }

    SUBCASE("wrong magic is a format error") {
        const auto path = (dir / "bad.eegrec").string();
        std::ofstream os(path, std::ios::binary);
        os << "NOTAMAGIC and some trailing bytes";
        os.close();
        CHECK_THROWS_AS(load_recording(path), FormatError);
    }

    SUBCASE("truncated payload is a format error") {
        Recording r = make_recording(3, 100, 100.0, rng);
        const auto path = (dir / "trunc.eegrec").string();
        save_recording(r, path);
        const auto full = std::filesystem::file_size(path);
        std::filesystem::resize_file(path, full - 37);
        CHECK_THROWS_AS(load_recording(path), FormatError);
    }

    SUBCASE("property: random recordings round trip") {
        for (int it = 0; it < 10; ++it) {
            const std::size_t n_el = 1 + rng.uniform_int(0, 20);
            const std::size_t n_s = 1 + rng.uniform_int(0, 999);
            Recording r = make_recording(n_el, n_s, 250.0, rng);
            r.label = static_cast<Label>(rng.uniform_int(0, 1));
            const auto path = (dir / "prop.eegrec").string();
            r.subject_id = "prop";
            save_recording(r, path);
            Recording back = load_recording(path);
            CHECK(back.samples == r.samples);
            CHECK(back.electrode_labels == r.electrode_labels);
            CHECK(back.label == r.label);
        }
    }
}

TEST_CASE("manifest round trip and split loading") {
    auto dir = temp_dir() / "manifest";
    std::filesystem::create_directories(dir);
    Rng rng(6);
    Recording a = make_recording(2, 20, 100.0, rng);
    Recording b = make_recording(2, 20, 100.0, rng);
    b.label = Label::normal;
    save_recording(a, (dir / "a.eegrec").string());
    save_recording(b, (dir / "b.eegrec").string());
    save_manifest({{"a.eegrec", "train"}, {"b.eegrec", "eval"}}, (dir / "manifest.tsv").string());

    auto entries = load_manifest((dir / "manifest.tsv").string());
    REQUIRE(entries.size() == 2);
    CHECK(entries[0].path == "a.eegrec");
    CHECK(entries[1].split == "eval");

    auto train = load_split((dir / "manifest.tsv").string(), "train");
    REQUIRE(train.size() == 1);
    CHECK(train[0].subject_id == "a");
    auto all = load_split((dir / "manifest.tsv").string(), "");
    CHECK(all.size() == 2);
}

TEST_CASE("resampler") {
    SUBCASE("identity when rates match") {
        std::vector<double> x = {1, 2, 3, 4, 5};
        auto y = resample(x, 100.0, 100.0);
        CHECK(y == x);
    }

    SUBCASE("5 Hz sine 250->100 keeps amplitude within 1%") {
        const double rate = 250.0;
        const std::size_t n = 2500;  // 10 s
        std::vector<double> x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = std::sin(2.0 * M_PI * 5.0 * i / rate);
        auto y = resample(x, rate, 100.0);
        CHECK(y.size() == 1000);
        const double amp = tone_amplitude(y, 100.0, 5.0);
        CHECK(std::abs(amp - 1.0) < 0.01);
    }

    SUBCASE("60 Hz tone 250->100 attenuated at least 40 dB") {
        const double rate = 250.0;
        const std::size_t n = 2500;
        std::vector<double> x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = std::sin(2.0 * M_PI * 60.0 * i / rate);
        auto y = resample(x, rate, 100.0);
        // steady state only; the filter edge transient is excluded
        std::vector<double> mid(y.begin() + 100, y.end() - 100);
        // 60 Hz aliases to 40 Hz after decimation
        const double leak = tone_amplitude(mid, 100.0, 40.0);
        CHECK(20.0 * std::log10(std::max(leak, 1e-30)) < -40.0);
    }

    SUBCASE("passband below 0.8 Nyquist has < 1% amplitude error") {
        const double rate = 250.0;
        const std::size_t n = 5000;
        for (double freq : {2.0, 10.0, 25.0, 39.0}) {
            std::vector<double> x(n);
            for (std::size_t i = 0; i < n; ++i) x[i] = std::sin(2.0 * M_PI * freq * i / rate);
            auto y = resample(x, rate, 100.0);
            const double amp = tone_amplitude(y, 100.0, freq);
            INFO("freq ", freq);
            CHECK(std::abs(amp - 1.0) < 0.01);
        }
    }

    SUBCASE("output length is round(n*to/from)") {
        Rng rng(9);
        std::vector<double> x(777);
        for (auto& v : x) v = rng.gaussian();
        CHECK(resample(x, 250.0, 100.0).size() == 311);  // round(777*0.4)
        CHECK(resample(x, 100.0, 250.0).size() == 1943);
    }
}

TEST_CASE("preprocess pipeline") {
    Rng rng(17);

    SUBCASE("25 min at 250 Hz becomes exactly 20 min at 100 Hz") {
        Recording r;
        r.electrode_labels = standard_electrodes();
        r.sample_rate_hz = 250.0;
        r.n_samples = static_cast<std::size_t>(25 * 60 * 250);
        r.samples.resize(r.n_electrodes() * r.n_samples);
        for (auto& v : r.samples) v = rng.gaussian() * 20.0;
        Recording out = preprocess(r);
        CHECK(out.sample_rate_hz == 100.0);
        CHECK(out.n_samples == 120000);
        CHECK(out.n_electrodes() == 21);
        CHECK(out.electrode_labels == standard_electrodes());
    }

    SUBCASE("clipping bounds amplitudes at +-800") {
        Recording r;
        r.electrode_labels = standard_electrodes();
        r.sample_rate_hz = 100.0;
        r.n_samples = 100 * 70;  // 70 s
        r.samples.assign(r.n_electrodes() * r.n_samples, 1000.0);
        Recording out = preprocess(r);
        double peak = 0.0;
        for (double v : out.samples) peak = std::max(peak, std::abs(v));
        // constant 1000 clips to 800 exactly; resampling is identity at 100 Hz
        CHECK(peak == doctest::Approx(800.0));
    }

    SUBCASE("already conforming recording only loses its head") {
        Recording r;
        r.electrode_labels = standard_electrodes();
        r.sample_rate_hz = 100.0;
        r.n_samples = 100 * 600;  // 10 min
        r.samples.assign(r.n_electrodes() * r.n_samples, 42.0);
        Recording out = preprocess(r);
        CHECK(out.n_samples == 100 * 540);
        for (double v : out.samples) CHECK(v == doctest::Approx(42.0));
        // applying the pipeline twice removes another minute
        Recording again = preprocess(out);
        CHECK(again.n_samples == 100 * 480);
    }

    SUBCASE("missing electrode errors") {
        Recording r;
        r.electrode_labels = {"Fp1", "Fp2"};
        r.sample_rate_hz = 100.0;
        r.n_samples = 100 * 120;
        r.samples.assign(2 * r.n_samples, 0.0);
        CHECK_THROWS_AS(preprocess(r), DataError);
    }

    SUBCASE("too-short recording errors") {
        Recording r;
        r.electrode_labels = standard_electrodes();
        r.sample_rate_hz = 100.0;
        r.n_samples = 100 * 30;  // 30 s < 60 s head
        r.samples.assign(r.n_electrodes() * r.n_samples, 0.0);
        CHECK_THROWS_AS(preprocess(r), TooShortError);
    }

    SUBCASE("clipping preserves order") {
        Rng rng2(77);
        for (int i = 0; i < 200; ++i) {
            const double x = rng2.uniform(-2000.0, 2000.0);
            const double y = rng2.uniform(-2000.0, 2000.0);
            const double cx = std::clamp(x, -800.0, 800.0);
            const double cy = std::clamp(y, -800.0, 800.0);
            if (x <= y) CHECK(cx <= cy);
        }
    }
}

TEST_CASE("crop generation") {
    SUBCASE("exact fit gives one crop") {
        auto crops = generate_crops(600, 600, 60);
        REQUIRE(crops.size() == 1);
        CHECK(crops[0].start == 0);
    }
    SUBCASE("two touching crops") {
        auto crops = generate_crops(1200, 600, 600);
        REQUIRE(crops.size() == 2);
        CHECK(crops[0].start == 0);
        CHECK(crops[1].start == 600);
    }
    SUBCASE("final crop aligns with the last sample") {
        auto crops = generate_crops(1000, 600, 60);
        std::vector<std::size_t> starts;
        for (const auto& c : crops) starts.push_back(c.start);
        CHECK(starts == std::vector<std::size_t>{0, 60, 120, 180, 240, 300, 360, 400});
    }
    SUBCASE("union covers every sample for strides up to the crop length") {
        Rng rng(123);
        for (int it = 0; it < 30; ++it) {
            const std::size_t crop = 5 + rng.uniform_int(0, 20);
            const std::size_t len = crop + rng.uniform_int(0, 100);
            const std::size_t stride = 1 + rng.uniform_int(0, static_cast<std::int64_t>(crop) - 1);
            auto crops = generate_crops(len, crop, stride);
            std::vector<bool> covered(len, false);
            for (const auto& c : crops) {
                CHECK(c.start + c.length <= len);
                for (std::size_t i = c.start; i < c.start + c.length; ++i) covered[i] = true;
            }
            CHECK(std::all_of(covered.begin(), covered.end(), [](bool b) { return b; }));
        }
    }
    SUBCASE("crop longer than recording errors") {
        CHECK_THROWS_AS(generate_crops(100, 200, 10), TooShortError);
    }
}

TEST_CASE("synthetic dataset") {
    SUBCASE("deterministic given seed") {
        auto a = synth_dataset(2, 10.0, 99);
        auto b = synth_dataset(2, 10.0, 99);
        REQUIRE(a.recordings.size() == b.recordings.size());
        for (std::size_t i = 0; i < a.recordings.size(); ++i) {
            CHECK(a.recordings[i].samples == b.recordings[i].samples);
            CHECK(a.recordings[i].report_text == b.recordings[i].report_text);
        }
        auto c = synth_dataset(2, 10.0, 100);
        CHECK(a.recordings[0].samples != c.recordings[0].samples);
    }

    SUBCASE("classes alternate and subjects are unique") {
        auto ds = synth_dataset(3, 5.0, 1);
        REQUIRE(ds.recordings.size() == 6);
        CHECK(ds.recordings[0].label == Label::normal);
        CHECK(ds.recordings[1].label == Label::pathological);
        CHECK(ds.recordings[0].subject_id != ds.recordings[2].subject_id);
    }

    SUBCASE("pathological class has more low-frequency power at T3") {
        auto ds = synth_dataset(8, 30.0, 7);
        const int t3 = ds.recordings[0].electrode_index("T3");
        REQUIRE(t3 >= 0);
        auto band_power = [&](const Recording& r, double lo, double hi) {
            auto spec = rfft(r.row(static_cast<std::size_t>(t3)), r.n_samples);
            const double bin_hz = r.sample_rate_hz / static_cast<double>(r.n_samples);
            double p = 0.0;
            for (std::size_t k = 0; k < spec.size(); ++k) {
                const double f = k * bin_hz;
                if (f >= lo && f < hi) p += std::norm(spec[k]);
            }
            return p;
        };
        std::vector<double> lp_normal, lp_patho;
        for (const auto& r : ds.recordings) {
            const double lp = std::log(band_power(r, 0.5, 8.0));
            (r.label == Label::pathological ? lp_patho : lp_normal).push_back(lp);
        }
        std::sort(lp_normal.begin(), lp_normal.end());
        std::sort(lp_patho.begin(), lp_patho.end());
        CHECK(lp_patho[lp_patho.size() / 2] > lp_normal[lp_normal.size() / 2]);
    }

    SUBCASE("unit gains make classes statistically identical in construction") {
        SignatureConfig cfg;
        cfg.delta_theta_gain = 1.0;
        cfg.beta_gain = 1.0;
        auto ds = synth_dataset(4, 10.0, 3, cfg);
        // rms should be indistinguishable across classes
        double rms[2] = {0, 0};
        int count[2] = {0, 0};
        for (const auto& r : ds.recordings) {
            double s = 0;
            for (double v : r.samples) s += v * v;
            const int c = r.label == Label::pathological ? 1 : 0;
            rms[c] += std::sqrt(s / r.samples.size());
            count[c] += 1;
        }
        const double mean0 = rms[0] / count[0], mean1 = rms[1] / count[1];
        CHECK(std::abs(mean0 - mean1) / mean0 < 0.1);
    }

    SUBCASE("subject-disjoint split keeps class balance") {
        auto ds = synth_dataset(10, 5.0, 2);
        std::vector<const Recording*> train, eval_set;
        split_dataset(ds.recordings, 0.7, train, eval_set);
        CHECK(train.size() == 14);
        CHECK(eval_set.size() == 6);
        int patho = 0;
        for (auto* r : train) patho += r->label == Label::pathological;
        CHECK(patho == 7);
    }
}
