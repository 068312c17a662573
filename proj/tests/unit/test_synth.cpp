#include "helpers.hpp"

#include "pcg/error.hpp"
#include "pcg/synth.hpp"

using namespace pcg;

TEST_SUITE("synth") {
    TEST_CASE("default recording") {
        const auto out = generate(SynthConfig{});
        CHECK(out.signal.size() == 60000);
        CHECK(out.signal.fs() == 1000.0);
        const auto s1 = out.labels.times(LabelKind::S1).size();
        CHECK(std::fabs(static_cast<double>(s1) - 138.0) <= 2.0);
        CHECK(out.segments.size() == out.labels.size());
        for (std::size_t i = 1; i < out.labels.size(); ++i) {
            CHECK(out.labels.entries[i].kind != out.labels.entries[i - 1].kind);
            CHECK(out.labels.entries[i].time_s > out.labels.entries[i - 1].time_s);
        }
    }

    TEST_CASE("noise-free output equals the clean construction") {
        const auto out = generate(SynthConfig{});
        CHECK(out.signal.data() == out.clean.data());
    }

    TEST_CASE("noise level follows the SNR") {
        SynthConfig c;
        c.snr_db = 10.0;
        const auto out = generate(c);
        double s = 0.0, n = 0.0;
        for (std::size_t i = 0; i < out.signal.size(); ++i) {
            s += out.clean.samples()[i] * out.clean.samples()[i];
            const double e = out.signal.samples()[i] - out.clean.samples()[i];
            n += e * e;
        }
        CHECK(10.0 * std::log10(s / n) == doctest::Approx(10.0).epsilon(0.02));
    }

    TEST_CASE("seeded determinism") {
        SynthConfig c;
        c.snr_db = 5.0;
        c.seed = 99;
        const auto a = generate(c), b = generate(c);
        CHECK(a.signal == b.signal);
        CHECK(a.labels == b.labels);
        c.seed = 100;
        CHECK_FALSE(generate(c).signal == a.signal);
    }

    TEST_CASE("inconsistent configurations") {
        SynthConfig c;
        c.s1_s2_ms = {300.0, 0.0};
        CHECK_THROWS_WITH_AS(generate(c), doctest::Contains("inconsistent durations"), Error);
        SynthConfig d;
        d.s1_freq_hz = 600.0;
        CHECK_THROWS_AS(generate(d), Error);
        SynthConfig e;
        e.fs = 0.0;
        CHECK_THROWS_AS(generate(e), Error);
    }
}
