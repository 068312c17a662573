#include "helpers.hpp"

#include <random>

#include "pcg/error.hpp"
#include "pcg/features.hpp"
#include "pcg/segment.hpp"
#include "support/oracles.hpp"

using namespace pcg;

namespace {

constexpr double kFs = 1000.0;

// Window over samples [first, last] of x with envelope env (defaults to |x|).
struct Fixture {
    std::vector<double> x, env;
    EventWindow window(double start_s, double end_s) const {
        return make_window(x, env, kFs, {start_s, 0.5 * (start_s + end_s), end_s, EventKind::S1});
    }
};

Fixture with_envelope(std::vector<double> env) {
    Fixture f;
    f.x = env;
    f.env = std::move(env);
    return f;
}

std::vector<double> triangle(std::size_t n, std::size_t centre, int half_width) {
    std::vector<double> y(n, 0.0);
    for (int k = -half_width; k <= half_width; ++k) {
        y[static_cast<std::size_t>(static_cast<int>(centre) + k)] = 1.0 - std::abs(k) / static_cast<double>(half_width);
    }
    return y;
}

std::vector<double> gabor(std::size_t n, double centre, double sigma, double freq, double amp = 1.0) {
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = (static_cast<double>(i) - centre) / kFs;
        y[i] = amp * std::exp(-0.5 * t * t / (sigma * sigma)) * std::cos(2.0 * std::numbers::pi * freq * t);
    }
    return y;
}

}  // namespace

TEST_SUITE("features") {
    TEST_CASE("windows") {
        const auto f = with_envelope(std::vector<double>(1000, 1.0));
        const auto w = f.window(0.1, 0.2);
        CHECK(w.first == 100);
        CHECK(w.last == 200);
        CHECK(f.window(0.9, 1.5).last == 999);
        CHECK_THROWS_AS(f.window(0.2, 0.2), Error);
        CHECK_THROWS_AS(f.window(2.0, 3.0), Error);
    }

    TEST_CASE("time delta and ramp times") {
        const auto f = with_envelope(triangle(1000, 500, 40));
        CHECK(time_delta(f.window(0.4, 0.5)) == doctest::Approx(100.0));
        const auto sym = ramp_time(f.window(0.45, 0.55));
        CHECK(sym.onset_ms == doctest::Approx(sym.exit_ms));

        std::vector<double> bump(1000);
        for (std::size_t i = 0; i < bump.size(); ++i) bump[i] = std::exp(-std::pow((static_cast<double>(i) - 400.0) / 30.0, 2));
        const auto g = with_envelope(bump);
        const auto w = g.window(0.0, 1.0);
        const auto r = ramp_time(w);
        CHECK(r.onset_ms + r.exit_ms == doctest::Approx(time_delta(w)));
        CHECK(r.onset_ms / r.exit_ms == doctest::Approx(2.0 / 3.0).epsilon(0.01));
    }

    TEST_CASE("peak spread") {
        // Strictly positive envelope: the whole window is needed for all of the area.
        auto lifted = triangle(1000, 500, 40);
        for (auto& v : lifted) v += 0.1;
        const auto w = with_envelope(lifted).window(0.4, 0.6);
        CHECK(peak_spread(w, 1.0) == doctest::Approx(200.0));
        const auto u = with_envelope(std::vector<double>(1000, 2.0));
        CHECK(std::fabs(peak_spread(u.window(0.1, 0.3), 0.5) - 100.0) <= 1.0);
    }

    TEST_CASE("peak width agrees with the boundary search") {
        const auto f = with_envelope(triangle(1000, 500, 40));
        const auto w = f.window(0.4, 0.6);
        CHECK(peak_width(w, 0.5) == doctest::Approx(40.0));
        CHECK(peak_width(w, 1.0) == doctest::Approx(0.0));

        DetectionSet d;
        d.peaks_s = {0.5};
        const auto seg = peaks_to_boundaries(Signal(f.env, kFs), d, 0.6).events.at(0);
        CHECK(peak_width(w, 0.6) == doctest::Approx((seg.end_s - seg.start_s) * 1000.0));
    }

    TEST_CASE("peak centroid") {
        const auto f = with_envelope(triangle(1000, 500, 40));
        CHECK(std::fabs(peak_centroid(f.window(0.45, 0.55)) - 50.0) <= 1.0);
        std::vector<double> first(1000, 0.0);
        first[300] = 5.0;
        const auto g = with_envelope(first);
        CHECK(peak_centroid(g.window(0.3, 0.4)) == 0.0);
        const auto z = with_envelope(std::vector<double>(1000, 0.0));
        CHECK_THROWS_AS(peak_centroid(z.window(0.3, 0.4)), Error);
    }

    TEST_CASE("zero crossing rate") {
        Fixture f;
        f.x = {1, -1, 1, -1};
        f.env = {1, 1, 1, 1};
        CHECK(zero_crossing_rate(f.window(0.0, 0.003)) == doctest::Approx(0.75));
        f.x = {1, 0, 0, 1, 0, -1};
        f.env.assign(6, 1.0);
        CHECK(zero_crossing_rate(f.window(0.0, 0.005)) == doctest::Approx(1.0 / 6.0));
        const auto c = with_envelope(std::vector<double>(100, 3.0));
        CHECK(zero_crossing_rate(c.window(0.0, 0.05)) == 0.0);
    }

    TEST_CASE("spectral features") {
        Fixture f;
        f.x = testing::tone(50.0, kFs, 1000);
        f.env.assign(1000, 1.0);
        const auto w = f.window(0.2, 0.6);
        const double bin = kFs / (4.0 * 401.0);
        CHECK(std::fabs(max_frequency(w) - 50.0) <= bin);
        CHECK(std::fabs(spectral_centroid(w) - 50.0) <= 2.0 * bin);
        const auto dc = with_envelope(std::vector<double>(1000, 1.0));
        CHECK(max_frequency(dc.window(0.2, 0.6)) == 0.0);
        const auto zero = with_envelope(std::vector<double>(1000, 0.0));
        CHECK_THROWS_AS(spectral_centroid(zero.window(0.2, 0.6)), Error);
        CHECK_THROWS_AS(max_frequency(f.window(0.2, 0.202)), Error);

        Spectrum single{{0.0, 0.0, 1.0, 0.0, 0.0}, 10.0};
        CHECK(max_frequency(single) == 20.0);
        CHECK(spectral_spread(single) == 0.0);
        CHECK(spectral_width(single, 0.6) == doctest::Approx(2.0 * (1.0 - 0.6) * 10.0));
        CHECK(spectral_centroid(single) == 20.0);

        Spectrum symmetric{{0.0, 1.0, 2.0, 3.0, 2.0, 1.0, 0.0}, 5.0};
        CHECK(spectral_centroid(symmetric) == 15.0);
    }

    TEST_CASE("cwt features") {
        CwtFeatureConfig cfg;
        Fixture f;
        f.x = gabor(1000, 500.0, 0.02, 80.0);
        f.env.assign(1000, 1.0);
        const auto w = f.window(0.35, 0.65);
        const auto m = cwt_max(w, cfg);
        CHECK(m.pseudofrequency_hz == doctest::Approx(80.0).epsilon(0.08));
        CHECK(m.time_ms == doctest::Approx(150.0).epsilon(0.05));
        CHECK(cwt_peak_distance(w, cfg) == 0.0);

        auto scaled = f;
        for (auto& v : scaled.x) v *= 9.0;
        const auto ms = cwt_max(scaled.window(0.35, 0.65), cfg);
        CHECK(ms.scale == m.scale);
        CHECK(ms.time_ms == m.time_ms);

        // Impulse in the middle of the window.
        Fixture imp;
        imp.x.assign(1000, 0.0);
        imp.x[500] = 1.0;
        imp.env.assign(1000, 1.0);
        CHECK(std::fabs(cwt_max(imp.window(0.4, 0.6), cfg).time_ms - 100.0) <= 2.0);

        CHECK_THROWS_AS(cwt_max(f.window(0.5, 0.51), cfg), Error);
    }

    TEST_CASE("cwt peak distance of two atoms") {
        CwtFeatureConfig cfg;
        cfg.f_low_hz = 100.0;
        cfg.f_high_hz = 250.0;
        cfg.scale_count = 8;
        auto pair = gabor(1000, 480.0, 0.004, 180.0);
        const auto second = gabor(1000, 520.0, 0.004, 180.0);
        for (std::size_t i = 0; i < pair.size(); ++i) pair[i] += second[i];
        Fixture f;
        f.x = pair;
        f.env.assign(1000, 1.0);
        CHECK(cwt_peak_distance(f.window(0.43, 0.57), cfg) == doctest::Approx(40.0));
        // Different heights: order in time does not matter.
        auto a = gabor(1000, 480.0, 0.004, 180.0, 1.0), b = gabor(1000, 520.0, 0.004, 180.0, 0.7);
        auto c = gabor(1000, 480.0, 0.004, 180.0, 0.7), d = gabor(1000, 520.0, 0.004, 180.0, 1.0);
        Fixture ab, cd;
        for (std::size_t i = 0; i < 1000; ++i) {
            ab.x.push_back(a[i] + b[i]);
            cd.x.push_back(c[i] + d[i]);
        }
        ab.env.assign(1000, 1.0);
        cd.env.assign(1000, 1.0);
        CHECK(cwt_peak_distance(ab.window(0.43, 0.57), cfg) == doctest::Approx(cwt_peak_distance(cd.window(0.43, 0.57), cfg)));
    }

    TEST_CASE("grid maxima") {
        const std::vector<std::vector<double>> g{{0, 1, 0, 0}, {0, 0, 0, 3}, {2, 0, 0, 0}};
        const auto m = grid_maxima(g);
        REQUIRE(m.size() == 3);
        CHECK(m[0] == std::pair<std::size_t, std::size_t>{1, 3});
        CHECK(m[1] == std::pair<std::size_t, std::size_t>{2, 0});
        CHECK(m[2] == std::pair<std::size_t, std::size_t>{0, 1});
        CHECK(grid_maxima({{1, 1}, {1, 1}}).empty());
    }

    TEST_CASE("dwt features") {
        CHECK(dwt_intensity(std::vector<double>(10, 0.0)) == 0.0);
        CHECK(dwt_intensity(std::vector<double>(10, -0.3)) == doctest::Approx(0.3));
        CHECK(dwt_entropy(std::vector<double>(10, 0.0)) == 0.0);
        CHECK(dwt_entropy(std::vector<double>{1.0}) == 0.0);
        CHECK(dwt_entropy(std::vector<double>{0.5, 0.5}) == doctest::Approx(1.0));
        // Coefficients above 1 make the sum negative: flagged by the sign.
        CHECK(dwt_entropy(std::vector<double>{2.0}) == doctest::Approx(-std::sqrt(8.0)));
        CHECK_THROWS_AS(dwt_intensity(std::vector<double>{}), Error);

        const auto f = with_envelope(gabor(1000, 500.0, 0.01, 40.0));
        CHECK(dwt_intensity(f.window(0.0, 0.5), {4, 5, "db6"}) > 0.0);
        CHECK_THROWS_AS(dwt_intensity(f.window(0.0, 0.5), {6, 5, "db6"}), Error);
        CHECK_THROWS_AS(dwt_intensity(f.window(0.0, 0.5), {0, 5, "db6"}), Error);
    }

    TEST_CASE("Katz fractal dimension") {
        CHECK_OUTCOME(checks::katz_straight_line());
        CHECK_OUTCOME(checks::katz_vs_transcription());
        CHECK_THROWS_AS(katz_fd(std::vector<double>{1.0, 2.0}), Error);
        std::mt19937_64 rng(2);
        std::normal_distribution<double> g;
        std::vector<double> noise(500);
        for (auto& v : noise) v = g(rng);
        CHECK(katz_fd(noise) > 1.0);
    }

    TEST_CASE("largest Lyapunov exponent") {
        const auto sine = testing::tone(13.0, kFs, 800);
        CHECK(std::fabs(lyapunov_max(sine)) < 0.05);
        std::mt19937_64 rng(3);
        std::normal_distribution<double> g;
        std::vector<double> noise(800);
        for (auto& v : noise) v = g(rng);
        CHECK(lyapunov_max(noise) > lyapunov_max(sine));
        CHECK(lyapunov_max(noise) == lyapunov_max(noise));
        CHECK(lyapunov_max(sine) == doctest::Approx(oracle::lyapunov(sine, 4, 10)).epsilon(1e-9));
        CHECK_THROWS_AS(lyapunov_max(std::vector<double>(11, 1.0)), Error);
        CHECK_THROWS_AS(lyapunov_max(std::vector<double>(40, 1.0)), Error);
    }

    TEST_CASE("groups and tables") {
        FeatureGroup g;
        g.add("time_delta").add("katz_fd").add("peak_width", {{"fraction", "0.5"}}, "width50");
        CHECK_THROWS_AS(g.add("time_delta"), Error);
        CHECK_THROWS_AS(g.add("bogus"), Error);
        CHECK_THROWS_AS(g.add("peak_width", {{"fraction", "2"}}, "w2"), Error);
        CHECK_THROWS_AS(g.add("dwt_entropy", {{"level", "9"}}, "e9"), Error);
        CHECK(default_feature_group().features.size() == 18);

        const auto f = with_envelope(gabor(2000, 1000.0, 0.02, 40.0));
        const Signal sig(f.x, kFs);
        const auto none = run_group(g, SegmentSet{}, sig, sig);
        CHECK(none.event_count == 0);
        CHECK(none.columns.at(0).values.empty());

        SegmentSet events;
        events.events = {{0.9, 0.95, 1.0, EventKind::S1}, {1.2, 1.2005, 1.201, EventKind::S2}, {1.5, 1.55, 1.6, EventKind::S1}};
        const auto t = run_group(g, events, sig, sig);
        CHECK(t.column("time_delta").values.size() == 3);
        CHECK(t.column("time_delta").missing[1].empty());
        CHECK(std::isnan(t.column("katz_fd").values[1]));
        CHECK_FALSE(t.column("katz_fd").missing[1].empty());
        CHECK(t.column("katz_fd").missing[0].empty());
        CHECK(t.column("width50").values[0] > 0.0);
        const auto table = to_table(t, events);
        CHECK(table.names.front() == "kind");
        CHECK(table.row_count() == 3);
    }

    TEST_CASE("derived regions") {
        SegmentSet segs;
        segs.events = {{0.00, 0.02, 0.05, EventKind::S1}, {0.20, 0.22, 0.25, EventKind::S2},
                       {0.45, 0.47, 0.50, EventKind::S1}, {0.65, 0.67, 0.70, EventKind::S2},
                       {0.90, 0.92, 0.95, EventKind::S1}, {1.35, 1.37, 1.40, EventKind::S1},
                       {1.55, 1.57, 1.60, EventKind::S2}};
        const auto sys = derive_regions(segs, EventKind::systole);
        REQUIRE(sys.size() == 3);
        CHECK(sys.events[0].start_s == 0.05);
        CHECK(sys.events[0].end_s == 0.20);
        const auto dia = derive_regions(segs, EventKind::diastole);
        CHECK(dia.size() == 2);  // no S2 between the S1 at 0.90 and the one at 1.35
        const auto cyc = derive_regions(segs, EventKind::cycle);
        REQUIRE(cyc.size() == 3);
        CHECK(cyc.events[0].end_s - cyc.events[0].start_s == doctest::Approx(0.45));
        CHECK(cyc.events[2].end_s - cyc.events[2].start_s == doctest::Approx(0.45));
        CHECK(derive_regions(segs, EventKind::S2).size() == 3);
        CHECK_THROWS_AS(derive_regions(segs, EventKind::unknown), Error);
    }

    TEST_CASE("every feature equals its direct definition on random events") {
        CHECK_OUTCOME(checks::features_vs_definitions(100));
    }
}
