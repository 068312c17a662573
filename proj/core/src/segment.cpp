#include "pcg/segment.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pcg/curve.hpp"
#include "pcg/diagnostics.hpp"
#include "pcg/error.hpp"

namespace pcg {
namespace {

DetectionSet from_indices(const Signal& env, std::vector<std::size_t> idx) {
    std::sort(idx.begin(), idx.end());
    DetectionSet det;
    det.sample_period_s = 1.0 / env.fs();
    for (auto i : idx) det.peaks_s.push_back(static_cast<double>(i) / env.fs());
    det.kinds.assign(det.peaks_s.size(), EventKind::unknown);
    return det;
}

void check_envelope(const Signal& env) {
    for (double v : env.samples()) {
        if (v < 0.0) throw Error("envelope must be non-negative");
    }
}

}  // namespace

DetectionSet naive_detect(const Signal& env, double min_distance_s, double height) {
    check_envelope(env);
    if (min_distance_s < 0.0) throw Error("minimum peak distance must be non-negative");
    const auto y = env.samples();
    const double peak = *std::max_element(y.begin(), y.end());
    if (!(peak > 0.0)) return from_indices(env, {});
    const double threshold = height * peak;

    std::vector<std::size_t> candidates;
    for (auto i : local_maxima(y)) {
        if (y[i] >= threshold) candidates.push_back(i);
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [&](std::size_t a, std::size_t b) { return y[a] > y[b]; });
    const double min_gap = min_distance_s * env.fs() - 1e-9;
    std::vector<std::size_t> kept;
    for (auto c : candidates) {
        const bool clear = std::all_of(kept.begin(), kept.end(), [&](std::size_t k) {
            return std::abs(static_cast<double>(c) - static_cast<double>(k)) >= min_gap;
        });
        if (clear) kept.push_back(c);
    }
    return from_indices(env, std::move(kept));
}

DetectionSet adaptive_detect(const Signal& env, double drop_fraction) {
    check_envelope(env);
    if (!(drop_fraction > 0.0 && drop_fraction < 1.0)) throw Error("drop fraction must lie in (0, 1)");
    const auto y = env.samples();
    const auto maxima = local_maxima(y, true);
    std::vector<bool> is_candidate(y.size(), false);
    for (auto i : maxima) {
        if (y[i] > 0.0) is_candidate[i] = true;
    }
    std::vector<std::size_t> confirmed;
    bool have_pending = false;
    std::size_t pending = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (is_candidate[i] && (!have_pending || y[i] > y[pending])) {
            pending = i;
            have_pending = true;
        }
        if (have_pending && y[i] < drop_fraction * y[pending]) {
            confirmed.push_back(pending);
            have_pending = false;
        }
    }
    if (have_pending) confirmed.push_back(pending);
    return from_indices(env, std::move(confirmed));
}

DetectionSet sort_peaks(const DetectionSet& det) {
    const std::size_t n = det.peaks_s.size();
    if (n < 3) throw Error("insufficient peaks to sort");
    for (std::size_t i = 1; i < n; ++i) {
        if (!(det.peaks_s[i] > det.peaks_s[i - 1])) throw Error("peak times must be strictly increasing");
    }
    const double tie = std::max(det.sample_period_s, 1e-9);
    std::vector<double> delay(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k) delay[k] = det.peaks_s[k + 1] - det.peaks_s[k];

    std::vector<int> s1_votes(n, 0), s2_votes(n, 0);
    for (std::size_t k = 0; k < delay.size(); ++k) {
        const double ref = k == 0 ? delay[1] : delay[k - 1];
        if (std::abs(delay[k] - ref) <= tie) continue;
        if (delay[k] < ref) {
            ++s1_votes[k];
            ++s2_votes[k + 1];
        } else {
            ++s2_votes[k];
            ++s1_votes[k + 1];
        }
    }
    DetectionSet out = det;
    out.kinds.assign(n, EventKind::unknown);
    for (std::size_t i = 0; i < n; ++i) {
        if (s1_votes[i] > s2_votes[i]) {
            out.kinds[i] = EventKind::S1;
        } else if (s2_votes[i] > s1_votes[i]) {
            out.kinds[i] = EventKind::S2;
        }
    }
    // Split votes follow the alternation from the nearest decided peak,
    // preferring the earlier side.
    const auto decided = out.kinds;
    auto flip = [](EventKind k, std::size_t steps) {
        if (steps % 2 == 0) return k;
        return k == EventKind::S1 ? EventKind::S2 : EventKind::S1;
    };
    std::size_t unknown = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (decided[i] != EventKind::unknown) continue;
        if (s1_votes[i] > 0) {
            for (std::size_t d = 1; d <= std::max(i, n - 1 - i); ++d) {
                if (d <= i && decided[i - d] != EventKind::unknown) {
                    out.kinds[i] = flip(decided[i - d], d);
                    break;
                }
                if (i + d < n && decided[i + d] != EventKind::unknown) {
                    out.kinds[i] = flip(decided[i + d], d);
                    break;
                }
            }
        }
        if (out.kinds[i] == EventKind::unknown) ++unknown;
    }
    if (unknown == n) {
        out.warnings.push_back("all inter-peak delays are equal; S1/S2 order is ambiguous");
    } else if (unknown > 0) {
        out.warnings.push_back(std::to_string(unknown) + " of " + std::to_string(n) +
                               " peaks received no S1/S2 majority");
    }
    for (const auto& w : out.warnings) warn("sort_peaks: " + w);
    return out;
}

SegmentSet peaks_to_boundaries(const Signal& env, const DetectionSet& det, double level_fraction) {
    if (!(level_fraction > 0.0 && level_fraction <= 1.0)) throw Error("level fraction must lie in (0, 1]");
    if (!det.kinds.empty() && det.kinds.size() != det.peaks_s.size()) {
        throw Error("detection kinds do not match peaks");
    }
    const auto y = env.samples();
    const double fs = env.fs();
    const double last_t = static_cast<double>(y.size() - 1) / fs;
    SegmentSet out;
    for (std::size_t k = 0; k < det.peaks_s.size(); ++k) {
        const double t = det.peaks_s[k];
        if (t < -1e-9 || t > last_t + 1e-9) {
            throw Error("peak at " + format_number(t) + " s lies outside the envelope");
        }
        const auto idx = static_cast<std::size_t>(std::clamp(std::llround(t * fs), 0LL, static_cast<long long>(y.size() - 1)));
        const double level = level_fraction * y[idx];
        double start = crossing_before(y, idx, level) / fs;
        double end = crossing_after(y, idx, level) / fs;
        if (k > 0) start = std::max(start, 0.5 * (det.peaks_s[k - 1] + t));
        if (k + 1 < det.peaks_s.size()) end = std::min(end, 0.5 * (t + det.peaks_s[k + 1]));
        start = std::clamp(start, 0.0, t);
        end = std::clamp(end, t, std::max(t, last_t));
        out.events.push_back({start, t, end, det.kinds.empty() ? EventKind::unknown : det.kinds[k]});
    }
    return out;
}

}  // namespace pcg
