#include "helpers.hpp"

#include <random>

#include "fixtures.hpp"
#include "pcg/error.hpp"
#include "pcg/preprocess.hpp"

using namespace pcg;

namespace {

double correlation(std::span<const double> a, std::span<const double> b) {
    double ab = 0.0, aa = 0.0, bb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ab += a[i] * b[i];
        aa += a[i] * a[i];
        bb += b[i] * b[i];
    }
    return ab / std::sqrt(aa * bb);
}

double rms(std::span<const double> x, std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += x[i] * x[i];
    return std::sqrt(s / static_cast<double>(hi - lo));
}

// Squared magnitude of the digital Butterworth responses after the bilinear
// transform with prewarping, in terms of w = tan(pi f / fs).
double prewarp(double f, double fs) { return std::tan(std::numbers::pi * f / fs); }

}  // namespace

TEST_SUITE("preprocess") {
    TEST_CASE("butterworth magnitude matches the closed form") {
        const double fs = 1000.0;
        for (int order : {1, 2, 4, 5}) {
            const auto lp = design_butterworth({order, FilterKind::lowpass, {60.0}}, fs);
            const auto hp = design_butterworth({order, FilterKind::highpass, {60.0}}, fs);
            const auto bp = design_butterworth({order, FilterKind::bandpass, {25.0, 120.0}}, fs);
            const double wc = prewarp(60.0, fs), wl = prewarp(25.0, fs), wh = prewarp(120.0, fs);
            for (double f = 1.0; f < 500.0; f += 7.3) {
                const double w = prewarp(f, fs);
                const double lp2 = 1.0 / (1.0 + std::pow(w / wc, 2 * order));
                const double hp2 = 1.0 / (1.0 + std::pow(wc / w, 2 * order));
                const double q = (w * w - wl * wh) / (w * (wh - wl));
                const double bp2 = 1.0 / (1.0 + std::pow(q, 2 * order));
                CHECK(std::norm(frequency_response(lp, f, fs)) == doctest::Approx(lp2).epsilon(1e-9));
                CHECK(std::norm(frequency_response(hp, f, fs)) == doctest::Approx(hp2).epsilon(1e-9));
                CHECK(std::norm(frequency_response(bp, f, fs)) == doctest::Approx(bp2).epsilon(1e-9));
            }
            CHECK(std::abs(frequency_response(lp, 0.0, fs)) == doctest::Approx(1.0));
            CHECK(std::abs(frequency_response(hp, 0.0, fs)) < 1e-12);
        }
    }

    TEST_CASE("butterworth design errors") {
        CHECK_THROWS_AS(design_butterworth({2, FilterKind::lowpass, {600.0}}, 1000.0), Error);
        CHECK_THROWS_AS(design_butterworth({0, FilterKind::lowpass, {60.0}}, 1000.0), Error);
        CHECK_THROWS_AS(design_butterworth({2, FilterKind::bandpass, {120.0, 25.0}}, 1000.0), Error);
        CHECK_THROWS_AS(design_butterworth({2, FilterKind::bandpass, {25.0}}, 1000.0), Error);
    }

    TEST_CASE("zero-phase filtering of signals") {
        const Signal dc(std::vector<double>(3000, 2.0), 1000.0);
        const auto low = butterworth(dc, {2, FilterKind::lowpass, {20.0}});
        CHECK(low.samples()[1500] == doctest::Approx(2.0).epsilon(1e-6));
        const auto high = butterworth(dc, {2, FilterKind::highpass, {20.0}});
        CHECK(std::fabs(high.samples()[1500]) < 1e-6);

        const Signal in_band(testing::tone(60.0, 1000.0, 4000), 1000.0);
        const auto band = butterworth(in_band, {2, FilterKind::bandpass, {25.0, 120.0}});
        CHECK(rms(band.samples(), 500, 3500) == doctest::Approx(rms(in_band.samples(), 500, 3500)).epsilon(0.05));
        // No phase shift: the output stays aligned with the input.
        CHECK(correlation(band.samples().subspan(500, 3000), in_band.samples().subspan(500, 3000)) > 0.999);
        CHECK(band.log().back().rfind("butterworth(", 0) == 0);

        const Signal out_band(testing::tone(300.0, 1000.0, 4000), 1000.0);
        CHECK(rms(butterworth(out_band, {4, FilterKind::bandpass, {25.0, 120.0}}).samples(), 500, 3500) < 0.01);
    }

    TEST_CASE("resample lengths and identity") {
        const Signal sig(std::vector<double>(333, 1.0), 333.0);
        const auto up = resample(sig, 1000.0);
        CHECK(up.size() == 1000);
        CHECK(up.fs() == 1000.0);
        const Signal tone(testing::tone(5.0, 1000.0, 777), 1000.0);
        CHECK(resample(tone, 1000.0).data() == tone.data());
        CHECK_THROWS_AS(resample(tone, 0.0), Error);
    }

    TEST_CASE("resample preserves a band-limited tone") {
        const Signal x(testing::tone(50.0, 1000.0, 4000), 1000.0);
        const auto y = resample(x, 333.0);
        const auto ref = testing::tone(50.0, 333.0, y.size());
        CHECK(correlation(y.samples().subspan(50, y.size() - 100), std::span<const double>(ref).subspan(50, y.size() - 100)) >
              0.999);
    }

    TEST_CASE("resample matches polyphase reference outputs") {
        auto check = [](double target, const std::vector<double>& want) {
            const auto got = resample_samples(fixtures::resample_input, 1000.0, target);
            REQUIRE(got.size() == want.size());
            for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-9));
        };
        check(3000.0, fixtures::resample_up3);
        check(500.0, fixtures::resample_down2);
        check(2000.0 / 3.0, fixtures::resample_2_3);
    }

    TEST_CASE("hilbert envelope") {
        const auto env = hilbert_envelope(Signal(testing::tone(37.0, 2000.0, 4000), 2000.0));
        for (std::size_t i = 400; i < 3600; ++i) REQUIRE(env.samples()[i] == doctest::Approx(1.0).epsilon(0.02));
        const auto zero = hilbert_envelope(Signal(std::vector<double>(100, 0.0), 100.0));
        for (double v : zero.samples()) CHECK(v == 0.0);

        // AM tone: the envelope recovers the modulation.
        std::vector<double> am(8000), mod(8000);
        for (std::size_t i = 0; i < am.size(); ++i) {
            const double t = static_cast<double>(i) / 4000.0;
            mod[i] = 1.0 + 0.5 * std::sin(2.0 * std::numbers::pi * 3.0 * t);
            am[i] = mod[i] * std::sin(2.0 * std::numbers::pi * 200.0 * t);
        }
        const auto amenv = hilbert_envelope(Signal(am, 4000.0));
        for (std::size_t i = 800; i < 7200; ++i) REQUIRE(std::fabs(amenv.samples()[i] - mod[i]) <= 0.03 * mod[i]);
    }

    TEST_CASE("homomorphic envelope is smooth, positive and scale equivariant") {
        std::vector<double> x(4000);
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double t = static_cast<double>(i) / 1000.0;
            x[i] = std::exp(-std::pow((std::fmod(t, 0.5) - 0.25) / 0.02, 2)) * std::sin(2.0 * std::numbers::pi * 50.0 * t);
        }
        const Signal sig(x, 1000.0);
        const auto env = homomorphic_envelope(sig);
        const auto env3 = homomorphic_envelope(Signal(std::vector<double>(x.begin(), x.end()), 1000.0).derive(
            [&] {
                auto y = x;
                for (auto& v : y) v *= 3.0;
                return y;
            }(),
            "scaled"));
        for (std::size_t i = 0; i < x.size(); ++i) {
            REQUIRE(env.samples()[i] > 0.0);
            REQUIRE(env3.samples()[i] == doctest::Approx(3.0 * env.samples()[i]).epsilon(1e-9));
        }
        // Peaks of the envelope fall on the burst centres.
        std::size_t best = 1000;
        for (std::size_t i = 1000; i < 1500; ++i) {
            if (env.samples()[i] > env.samples()[best]) best = i;
        }
        CHECK(std::fabs(static_cast<double>(best) - 1250.0) <= 5.0);
    }

    TEST_CASE("wavelet denoising") {
        std::mt19937_64 rng(2);
        std::normal_distribution<double> noise(0.0, 0.3);
        const auto clean = testing::tone(8.0, 1000.0, 4096);
        auto noisy = clean;
        for (auto& v : noisy) v += noise(rng);
        const Signal sig(noisy, 1000.0);

        const auto same = wavelet_denoise(sig, 5, "db6", 0.0);
        for (std::size_t i = 0; i < noisy.size(); ++i) REQUIRE(std::fabs(same.samples()[i] - noisy[i]) < 1e-8);

        auto snr = [&](std::span<const double> y) {
            double s = 0.0, e = 0.0;
            for (std::size_t i = 0; i < y.size(); ++i) {
                s += clean[i] * clean[i];
                e += (y[i] - clean[i]) * (y[i] - clean[i]);
            }
            return 10.0 * std::log10(s / e);
        };
        const auto den = wavelet_denoise(sig, 5);
        CHECK(snr(den.samples()) >= snr(noisy) + 3.0);
        CHECK_THROWS_AS(wavelet_denoise(sig, 5, "db6", -1.0), Error);
    }

    TEST_CASE("savgol reproduces polynomials up to its degree") {
        std::vector<double> cubic(60);
        for (std::size_t i = 0; i < cubic.size(); ++i) {
            const double t = static_cast<double>(i) / 10.0;
            cubic[i] = 1.0 - 2.0 * t + 0.5 * t * t - 0.1 * t * t * t;
        }
        for (int window : {5, 10, 11}) {
            const auto y = savgol_smooth(cubic, window, 3);
            for (std::size_t i = 0; i < y.size(); ++i) REQUIRE(y[i] == doctest::Approx(cubic[i]).epsilon(1e-9));
        }
        CHECK_THROWS_AS(savgol_smooth(cubic, 3, 3), Error);
        const auto smoothed = savgol_smooth_levels(Signal(cubic, 100.0), 2, "db2", 5, 2);
        CHECK(smoothed.size() == cubic.size());
    }
}
