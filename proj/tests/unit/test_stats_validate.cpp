#include "helpers.hpp"

#include <random>

#include "pcg/error.hpp"
#include "pcg/io.hpp"
#include "pcg/stats.hpp"
#include "pcg/validate.hpp"

using namespace pcg;

TEST_SUITE("stats") {
    TEST_CASE("summary arithmetic") {
        const auto s = summarize("x", std::vector<double>{3.0, 1.0, 2.0});
        CHECK(s.mean == 2.0);
        CHECK(s.std == doctest::Approx(std::sqrt(2.0 / 3.0)));
        CHECK(s.median == 2.0);
        CHECK(s.iqr == 1.0);
        CHECK(s.min == 1.0);
        CHECK(s.max == 3.0);
        CHECK(s.count == 3);

        const auto empty = summarize("y", std::vector<double>{}, 4);
        CHECK(empty.count == 0);
        CHECK(empty.missing_count == 4);
        CHECK(std::isnan(empty.mean));
        const auto t = summary_table({s, empty});
        CHECK(format_csv(t).find("NA") != std::string::npos);
    }

    TEST_CASE("quantiles interpolate between ranks") {
        const std::vector<double> v{1.0, 2.0, 4.0, 8.0};
        CHECK(quantile_sorted(v, 0.0) == 1.0);
        CHECK(quantile_sorted(v, 1.0) == 8.0);
        CHECK(quantile_sorted(v, 0.5) == 3.0);
        CHECK(quantile_sorted(v, 0.25) == doctest::Approx(1.75));
    }

    TEST_CASE("matches the sort-based oracle") { CHECK_OUTCOME(checks::stats_vs_sorted()); }
}

TEST_SUITE("validate") {
    TEST_CASE("identity and uniform shift") {
        const std::vector<double> labels{0.5, 0.93, 1.36, 1.79};
        const auto same = match(labels, labels, 30.0);
        CHECK(same.tp == 4);
        CHECK(same.fp == 0);
        const auto m = metrics(std::vector<MatchResult>{same}, 30.0);
        CHECK(m.f1 == 1.0);
        CHECK(m.mae_mean_ms == 0.0);

        std::vector<double> shifted;
        for (double t : labels) shifted.push_back(t + 0.003);
        const auto r = metrics(std::vector<MatchResult>{match(shifted, labels, 30.0)}, 30.0);
        CHECK(r.tp == 4);
        CHECK(r.mae_mean_ms == doctest::Approx(3.0));
        CHECK(r.mae_std_ms == doctest::Approx(0.0).epsilon(1e-9));
    }

    TEST_CASE("one label, two detections") {
        const auto r = match(std::vector<double>{0.995, 1.01}, std::vector<double>{1.0}, 30.0);
        CHECK(r.tp == 1);
        CHECK(r.fp == 1);
        CHECK(r.pairs.size() == 1);
        CHECK(r.abs_errors_ms.size() == 2);
    }

    TEST_CASE("greedy matching reaches the optimum") { CHECK_OUTCOME(checks::match_vs_optimal()); }

    TEST_CASE("metrics from counts") {
        const auto r = metrics_from_counts(97, 3, 100, 30.0);
        CHECK(r.ppv == doctest::Approx(0.97));
        CHECK(r.tpr == doctest::Approx(0.97));
        CHECK(r.f1 == doctest::Approx(0.97));
        CHECK_THROWS_AS(metrics_from_counts(0, 0, 10, 30.0), Error);
        CHECK_THROWS_AS(metrics(std::vector<MatchResult>{match({}, std::vector<double>{1.0}, 30.0)}, 30.0), Error);
        CHECK_OUTCOME(checks::count_arithmetic());
    }

    TEST_CASE("score versus tolerance") {
        CHECK_OUTCOME(checks::f1_monotone_in_tolerance());
        std::vector<double> labels, jittered;
        std::mt19937_64 rng(4);
        std::uniform_real_distribution<double> u(-0.0195, 0.0195);
        for (int i = 0; i < 200; ++i) {
            labels.push_back(0.5 + 0.43 * i);
            jittered.push_back(labels.back() + (i == 17 ? 0.020 : u(rng)));
        }
        const auto grid = default_tolerance_grid();
        const auto perfect = score_vs_tolerance(labels, labels, grid);
        for (double f : perfect.f1) CHECK(f == 1.0);
        CHECK(perfect.threshold_ms == 5.0);

        const auto curve = score_vs_tolerance(jittered, labels, grid);
        for (std::size_t k = 0; k < grid.size(); ++k) {
            if (grid[k] < 20.0) CHECK(curve.f1[k] < 1.0);
            if (grid[k] >= 20.0) CHECK(curve.f1[k] == 1.0);
        }
        CHECK(curve_table(curve).row_count() == grid.size());
    }

    TEST_CASE("Bland-Altman differences") {
        const std::vector<double> labels{0.5, 0.93, 1.36, 1.79, 2.22, 2.65};
        const auto same = bland_altman_diffs(labels, labels);
        for (const auto& p : same.points) CHECK(p.second == doctest::Approx(0.0).epsilon(1e-9));

        std::vector<double> lagged, alternating;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            lagged.push_back(labels[i] + 0.012);
            alternating.push_back(labels[i] + (i % 2 ? -0.005 : 0.005));
        }
        for (const auto& p : bland_altman_diffs(lagged, labels).points) CHECK(std::fabs(p.second) < 1e-9);
        const auto alt = bland_altman_diffs(alternating, labels);
        REQUIRE(alt.points.size() == 5);
        for (std::size_t i = 0; i < alt.points.size(); ++i) {
            CHECK(alt.points[i].second == doctest::Approx(i % 2 ? -10.0 : 10.0).epsilon(1e-9));
        }
        CHECK(alt.upper_ms == doctest::Approx(alt.mean_ms + 1.96 * alt.std_ms));
        CHECK_THROWS_AS(bland_altman_diffs(std::vector<double>{1.0}, std::vector<double>{1.0}), Error);
    }
}
