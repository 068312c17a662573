#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hsmm_internal.hpp"
#include "pcg/curve.hpp"
#include "pcg/error.hpp"

namespace pcg {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double half_width(LabelKind kind, double s1_hw, double s2_hw) { return kind == LabelKind::S1 ? s1_hw : s2_hw; }

int state_index(HsmmState s) { return static_cast<int>(s); }

std::size_t complete_cycles(const LabelSet& labels) {
    std::size_t count = 0;
    const auto& e = labels.entries;
    for (std::size_t i = 0; i + 2 < e.size(); ++i) {
        if (e[i].kind == LabelKind::S1 && e[i + 1].kind == LabelKind::S2 && e[i + 2].kind == LabelKind::S1) ++count;
    }
    return count;
}

// Extent of a labelled sound on each side of its label, as used by label_frames.
struct Extent {
    double left;
    double right;
};

std::vector<Extent> sound_extents(const LabelSet& labels, double s1_hw, double s2_hw) {
    const auto& e = labels.entries;
    std::vector<Extent> out(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
        const double hw = half_width(e[i].kind, s1_hw, s2_hw);
        out[i].left = i > 0 ? std::min(hw, 0.5 * (e[i].time_s - e[i - 1].time_s)) : hw;
        out[i].right = i + 1 < e.size() ? std::min(hw, 0.5 * (e[i + 1].time_s - e[i].time_s)) : hw;
    }
    return out;
}

void standardize(Envelograms& env, const HsmmFeatureConfig& fc) {
    if (env.channels.size() != fc.norm_mean.size() || env.channels.size() != fc.norm_std.size()) {
        throw Error("model normalization does not match the envelogram channel count");
    }
    for (std::size_t c = 0; c < env.channels.size(); ++c) {
        for (auto& v : env.channels[c]) v = (v - fc.norm_mean[c]) / fc.norm_std[c];
    }
}

}  // namespace

std::string_view to_string(HsmmState state) {
    switch (state) {
        case HsmmState::S1: return "S1";
        case HsmmState::systole: return "systole";
        case HsmmState::S2: return "S2";
        case HsmmState::diastole: return "diastole";
    }
    return "S1";
}

std::vector<int> label_frames(const LabelSet& labels, std::size_t frames, double feature_rate, double s1_half_width_s,
                              double s2_half_width_s) {
    std::vector<int> out(frames, -1);
    const auto& e = labels.entries;
    if (e.empty()) return out;
    const int s1 = state_index(HsmmState::S1), s2 = state_index(HsmmState::S2);
    const int sys = state_index(HsmmState::systole), dia = state_index(HsmmState::diastole);
    auto sound = [&](LabelKind k) { return k == LabelKind::S1 ? s1 : s2; };
    auto after = [&](LabelKind k) { return k == LabelKind::S1 ? sys : dia; };
    auto before = [&](LabelKind k) { return k == LabelKind::S1 ? dia : sys; };

    for (std::size_t t = 0; t < frames; ++t) {
        const double tau = (static_cast<double>(t) + 0.5) / feature_rate;
        const auto it = std::upper_bound(e.begin(), e.end(), tau, [](double v, const Label& l) { return v < l.time_s; });
        const Label* prev = it == e.begin() ? nullptr : &*(it - 1);
        const Label* next = it == e.end() ? nullptr : &*it;
        const double mid = prev && next ? 0.5 * (prev->time_s + next->time_s) : 0.0;
        const bool in_prev = prev && tau - prev->time_s <= half_width(prev->kind, s1_half_width_s, s2_half_width_s) &&
                             (!next || tau < mid);
        const bool in_next = next && next->time_s - tau <= half_width(next->kind, s1_half_width_s, s2_half_width_s) &&
                             (!prev || tau >= mid);
        if (in_prev) {
            out[t] = sound(prev->kind);
        } else if (in_next) {
            out[t] = sound(next->kind);
        } else if (prev && next) {
            if (prev->kind != next->kind) out[t] = after(prev->kind);
        } else if (next) {
            out[t] = before(next->kind);
        } else {
            out[t] = after(prev->kind);
        }
    }
    return out;
}

HsmmModel train(std::span<const Signal> signals, std::span<const LabelSet> labels, const HsmmTrainConfig& config) {
    if (signals.empty()) throw Error("hsmm training needs at least one recording");
    if (signals.size() != labels.size()) {
        throw Error("hsmm training got " + std::to_string(signals.size()) + " recordings but " +
                    std::to_string(labels.size()) + " label sets");
    }
    for (std::size_t r = 0; r < labels.size(); ++r) {
        if (labels[r].empty()) throw Error("recording " + std::to_string(r) + ": missing labels");
        const auto cycles = complete_cycles(labels[r]);
        if (cycles < 3) {
            throw Error("recording " + std::to_string(r) + ": labels contain " + std::to_string(cycles) +
                        " complete S1-S2-S1 cycles, at least 3 are required");
        }
    }

    std::vector<std::vector<double>> rows;
    std::vector<int> targets;
    std::vector<std::string> names;
    for (std::size_t r = 0; r < signals.size(); ++r) {
        const auto env = extract_envelograms(signals[r], config.envelograms, true);
        names = env.names;
        const auto states = label_frames(labels[r], env.frames(), env.feature_rate, config.s1_half_width_s,
                                         config.s2_half_width_s);
        for (std::size_t t = 0; t < states.size(); ++t) {
            if (states[t] < 0) continue;
            rows.push_back(env.frame(t));
            targets.push_back(states[t]);
        }
    }
    if (rows.empty()) throw Error("hsmm training: no labelled frames");

    HsmmModel model;
    auto& fc = model.feature_config;
    fc.envelograms = config.envelograms;
    fc.channel_names = names;
    fc.rate_band = config.rate_band;
    fc.rate_significance = config.rate_significance;
    const std::size_t dims = rows.front().size();
    fc.norm_mean.assign(dims, 0.0);
    fc.norm_std.assign(dims, 0.0);
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < dims; ++c) fc.norm_mean[c] += row[c];
    }
    for (auto& m : fc.norm_mean) m /= static_cast<double>(rows.size());
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < dims; ++c) fc.norm_std[c] += (row[c] - fc.norm_mean[c]) * (row[c] - fc.norm_mean[c]);
    }
    for (std::size_t c = 0; c < dims; ++c) {
        fc.norm_std[c] = std::sqrt(fc.norm_std[c] / static_cast<double>(rows.size()));
        if (!(fc.norm_std[c] > 0.0)) throw Error("degenerate channel '" + names[c] + "' in training frames");
    }
    for (auto& row : rows) {
        for (std::size_t c = 0; c < dims; ++c) row[c] = (row[c] - fc.norm_mean[c]) / fc.norm_std[c];
    }

    model.state_priors.assign(kHsmmStates, 0.0);
    for (int s : targets) model.state_priors[static_cast<std::size_t>(s)] += 1.0;
    for (std::size_t s = 0; s < kHsmmStates; ++s) {
        if (model.state_priors[s] == 0.0) {
            throw Error("hsmm training: no frames labelled " + std::string(to_string(static_cast<HsmmState>(s))));
        }
        model.state_priors[s] /= static_cast<double>(targets.size());
    }
    model.lr = fit_logistic(rows, targets, kHsmmStates, config.logistic).model;

    std::array<std::vector<double>, kHsmmStates> samples;
    for (const auto& set : labels) {
        const auto ext = sound_extents(set, config.s1_half_width_s, config.s2_half_width_s);
        const auto& e = set.entries;
        for (std::size_t i = 0; i < e.size(); ++i) {
            const int sound = e[i].kind == LabelKind::S1 ? state_index(HsmmState::S1) : state_index(HsmmState::S2);
            samples[static_cast<std::size_t>(sound)].push_back(ext[i].left + ext[i].right);
            if (i + 1 < e.size() && e[i].kind != e[i + 1].kind) {
                const int gap = e[i].kind == LabelKind::S1 ? state_index(HsmmState::systole)
                                                           : state_index(HsmmState::diastole);
                const double d = (e[i + 1].time_s - ext[i + 1].left) - (e[i].time_s + ext[i].right);
                samples[static_cast<std::size_t>(gap)].push_back(std::max(d, 0.0));
            }
        }
    }
    for (std::size_t s = 0; s < kHsmmStates; ++s) {
        const auto& v = samples[s];
        if (v.empty()) throw Error("hsmm training: no duration samples for " + std::string(to_string(static_cast<HsmmState>(s))));
        double mean = 0.0;
        for (double d : v) mean += d;
        mean /= static_cast<double>(v.size());
        double ss = 0.0;
        for (double d : v) ss += (d - mean) * (d - mean);
        model.durations[s] = {mean, std::max(std::sqrt(ss / static_cast<double>(v.size())), config.min_duration_std_s)};
    }
    return model;
}

HsmmDecoding decode_states(const HsmmModel& model, const Signal& sig) {
    const auto& fc = model.feature_config;
    if (model.lr.classes() != kHsmmStates || model.state_priors.size() != kHsmmStates) {
        throw Error("hsmm model must have exactly 4 states");
    }
    const auto rec = detail::prepare_recording(sig, fc.envelograms);
    auto env = detail::envelograms_from(rec, fc.envelograms, true);
    standardize(env, fc);
    if (env.channels.size() != model.lr.features()) throw Error("hsmm model feature count mismatch");

    HsmmDecoding out;
    out.rates = detail::rates_from(rec.homomorphic, rec.filtered.fs(), fc.rate_band, fc.rate_significance);
    const double rate = env.feature_rate;
    const std::size_t frames = env.frames();

    std::array<DurationParam, kHsmmStates> dur = model.durations;
    const double beat = 60.0 / out.rates.heart_rate_bpm;
    const double sounds = 0.5 * (dur[0].mean_s + dur[2].mean_s);
    dur[1].mean_s = std::max(out.rates.systole_fraction * beat - sounds, 1.0 / rate);
    dur[3].mean_s = std::max((1.0 - out.rates.systole_fraction) * beat - sounds, 1.0 / rate);

    std::array<std::vector<double>, kHsmmStates> log_dur;
    for (std::size_t j = 0; j < kHsmmStates; ++j) {
        const auto& d = dur[j];
        if (!(d.std_s > 0.0)) throw Error("duration std must be positive");
        const int lo = std::max(1, static_cast<int>(std::ceil((d.mean_s - 3.0 * d.std_s) * rate - 1e-9)));
        const int hi = std::max(lo, static_cast<int>(std::floor((d.mean_s + 3.0 * d.std_s) * rate + 1e-9)));
        out.duration_bounds[j] = {lo, hi};
        std::vector<double> lp(static_cast<std::size_t>(hi + 1), kNegInf);
        double norm = 0.0;
        for (int k = lo; k <= hi; ++k) {
            const double z = (k / rate - d.mean_s) / d.std_s;
            norm += std::exp(-0.5 * z * z);
        }
        for (int k = lo; k <= hi; ++k) {
            const double z = (k / rate - d.mean_s) / d.std_s;
            lp[static_cast<std::size_t>(k)] = -0.5 * z * z - std::log(norm);
        }
        log_dur[j] = std::move(lp);
    }

    // Prefix sums of per-frame log emissions.
    std::array<std::vector<double>, kHsmmStates> cum;
    for (auto& c : cum) c.assign(frames + 1, 0.0);
    for (std::size_t t = 0; t < frames; ++t) {
        const auto p = predict_proba(model.lr, env.frame(t));
        for (std::size_t j = 0; j < kHsmmStates; ++j) {
            const double e = std::log(std::max(p[j], 1e-300)) - std::log(model.state_priors[j]);
            cum[j][t + 1] = cum[j][t] + e;
        }
    }
    auto emit = [&](std::size_t j, std::size_t s, std::size_t t) { return cum[j][t + 1] - cum[j][s]; };
    auto prev_of = [](std::size_t j) { return (j + kHsmmStates - 1) % kHsmmStates; };
    const double log_init = -std::log(static_cast<double>(kHsmmStates));

    // best[t][j]: score of the best path whose segment in state j ends at t.
    std::vector<std::array<double, kHsmmStates>> best(frames);
    std::vector<std::array<int, kHsmmStates>> length(frames);
    for (std::size_t t = 0; t < frames; ++t) {
        for (std::size_t j = 0; j < kHsmmStates; ++j) {
            double top = kNegInf;
            int arg = 0;
            const int hi = out.duration_bounds[j].second;
            // A first segment may be cut by the start of the recording.
            if (t + 1 <= static_cast<std::size_t>(hi)) {
                top = log_init + emit(j, 0, t);
                arg = static_cast<int>(t + 1);
            }
            for (int d = out.duration_bounds[j].first; d <= hi; ++d) {
                if (static_cast<std::size_t>(d) >= t + 1) break;
                const std::size_t s = t + 1 - static_cast<std::size_t>(d);
                const double v = best[s - 1][prev_of(j)] + log_dur[j][static_cast<std::size_t>(d)] + emit(j, s, t);
                if (v > top) {
                    top = v;
                    arg = d;
                }
            }
            best[t][j] = top;
            length[t][j] = arg;
        }
    }

    // The last segment may be cut by the end of the recording.
    double final_score = kNegInf;
    std::size_t final_state = 0;
    int final_len = 0;
    const std::size_t last = frames - 1;
    for (std::size_t j = 0; j < kHsmmStates; ++j) {
        const int hi = out.duration_bounds[j].second;
        for (int d = 1; d <= hi && static_cast<std::size_t>(d) <= frames; ++d) {
            const std::size_t s = frames - static_cast<std::size_t>(d);
            const double v = s == 0 ? log_init + emit(j, 0, last) : best[s - 1][prev_of(j)] + emit(j, s, last);
            if (v > final_score) {
                final_score = v;
                final_state = j;
                final_len = d;
            }
        }
    }
    if (!std::isfinite(final_score)) throw Error("decoding infeasible");

    out.states.assign(frames, -1);
    std::ptrdiff_t end = static_cast<std::ptrdiff_t>(last);
    std::size_t j = final_state;
    int d = final_len;
    while (end >= 0) {
        const std::ptrdiff_t start = end - d + 1;
        for (std::ptrdiff_t t = start; t <= end; ++t) out.states[static_cast<std::size_t>(t)] = static_cast<int>(j);
        end = start - 1;
        if (end < 0) break;
        j = prev_of(j);
        d = length[static_cast<std::size_t>(end)][j];
        if (d <= 0) throw Error("decoding infeasible");
    }

    const double fs = rec.filtered.fs();
    const auto& hom = rec.homomorphic;
    for (std::size_t t = 0; t < frames;) {
        std::size_t u = t;
        while (u + 1 < frames && out.states[u + 1] == out.states[t]) ++u;
        const int s = out.states[t];
        if (s == state_index(HsmmState::S1) || s == state_index(HsmmState::S2)) {
            const double start = static_cast<double>(t) / rate;
            const double stop = std::min(static_cast<double>(u + 1) / rate, sig.duration_s());
            const auto lo = std::min(hom.size() - 1, static_cast<std::size_t>(std::llround(start * fs)));
            const auto hi = std::clamp(static_cast<std::size_t>(std::llround(stop * fs)), lo + 1, hom.size());
            const auto peak = lo + argmax(std::span<const double>(hom).subspan(lo, hi - lo));
            const double peak_s = std::clamp(static_cast<double>(peak) / fs, start, stop);
            out.events.events.push_back({start, peak_s, stop, s == 0 ? EventKind::S1 : EventKind::S2});
        }
        t = u + 1;
    }
    return out;
}

SegmentSet decode(const HsmmModel& model, const Signal& sig) { return decode_states(model, sig).events; }

}  // namespace pcg
