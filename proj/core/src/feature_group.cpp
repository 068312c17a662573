#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "pcg/error.hpp"
#include "pcg/features.hpp"
#include "pcg/preprocess.hpp"
#include "pcg/wavelet.hpp"

namespace pcg {
namespace {

struct Parsed {
    std::string feature;
    double fraction = 0.6;
    CwtFeatureConfig cwt;
    DwtFeatureConfig dwt;
    LyapunovConfig lyapunov;
};

double parse_double(const std::string& feature, const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used == text.size() && std::isfinite(v)) return v;
    } catch (const std::exception&) {
    }
    throw Error(feature + ": parameter '" + key + "' is not a number: '" + text + "'");
}

int parse_int(const std::string& feature, const std::string& key, const std::string& text) {
    const double v = parse_double(feature, key, text);
    if (v != std::floor(v) || std::abs(v) > 1e9) {
        throw Error(feature + ": parameter '" + key + "' must be an integer");
    }
    return static_cast<int>(v);
}

Parsed parse(const std::string& feature, const Params& params) {
    const auto& names = feature_names();
    if (std::find(names.begin(), names.end(), feature) == names.end()) {
        throw Error("unknown feature '" + feature + "'");
    }
    Parsed p;
    p.feature = feature;
    const bool fractional = feature == "peak_spread" || feature == "peak_width" || feature == "spectral_spread" ||
                            feature == "spectral_width";
    const bool cwt_based = feature.rfind("cwt_", 0) == 0;
    const bool dwt_based = feature.rfind("dwt_", 0) == 0;
    for (const auto& [key, value] : params) {
        if (fractional && key == "fraction") {
            p.fraction = parse_double(feature, key, value);
            if (!(p.fraction > 0.0 && p.fraction <= 1.0)) throw Error(feature + ": fraction must lie in (0, 1]");
        } else if (cwt_based && key == "f_low") {
            p.cwt.f_low_hz = parse_double(feature, key, value);
        } else if (cwt_based && key == "f_high") {
            p.cwt.f_high_hz = parse_double(feature, key, value);
        } else if (cwt_based && key == "scales") {
            const int n = parse_int(feature, key, value);
            if (n < 2) throw Error(feature + ": at least 2 scales are needed");
            p.cwt.scale_count = static_cast<std::size_t>(n);
        } else if (dwt_based && key == "level") {
            p.dwt.level = parse_int(feature, key, value);
        } else if (dwt_based && key == "depth") {
            p.dwt.depth = parse_int(feature, key, value);
        } else if (dwt_based && key == "wavelet") {
            wavelet_by_name(value);
            p.dwt.wavelet = value;
        } else if (feature == "lyapunov_max" && key == "dim") {
            p.lyapunov.embedding_dim = parse_int(feature, key, value);
        } else if (feature == "lyapunov_max" && key == "delay") {
            p.lyapunov.delay = parse_int(feature, key, value);
        } else if (feature == "lyapunov_max" && key == "min_separation") {
            p.lyapunov.min_separation = parse_int(feature, key, value);
        } else if (feature == "lyapunov_max" && key == "steps") {
            p.lyapunov.steps = parse_int(feature, key, value);
        } else {
            throw Error(feature + ": unknown parameter '" + key + "'");
        }
    }
    if (dwt_based && (p.dwt.level < 1 || p.dwt.level > p.dwt.depth)) {
        throw Error(feature + ": level must lie in 1..depth");
    }
    if (cwt_based) p.cwt.scales(1000.0);
    if (feature == "lyapunov_max" && (p.lyapunov.embedding_dim < 1 || p.lyapunov.steps < 2 ||
                                      p.lyapunov.delay < 0 || p.lyapunov.min_separation < 0)) {
        throw Error(feature + ": invalid parameters");
    }
    return p;
}

// Upsampled DWT levels of one recording, shared by every event.
class DwtCache {
public:
    explicit DwtCache(const Signal& sig) : sig_(sig) {}

    std::span<const double> level(const DwtFeatureConfig& cfg) {
        const std::string key = cfg.wavelet + "/" + std::to_string(cfg.depth) + "/" + std::to_string(cfg.level);
        auto it = levels_.find(key);
        if (it == levels_.end()) {
            const auto res = dwt(sig_.samples(), sig_.fs(), cfg.wavelet, cfg.depth);
            it = levels_.emplace(key, upsample_level_to_signal(res, cfg.level)).first;
        }
        return it->second;
    }

private:
    const Signal& sig_;
    std::map<std::string, std::vector<double>> levels_;
};

double compute(const Parsed& p, const EventWindow& w, DwtCache& cache) {
    const auto& f = p.feature;
    if (f == "time_delta") return time_delta(w);
    if (f == "onset_time") return ramp_time(w).onset_ms;
    if (f == "exit_time") return ramp_time(w).exit_ms;
    if (f == "peak_spread") return peak_spread(w, p.fraction);
    if (f == "peak_width") return peak_width(w, p.fraction);
    if (f == "peak_centroid") return peak_centroid(w);
    if (f == "zero_cross_rate") return zero_crossing_rate(w);
    if (f == "max_freq") return max_frequency(w);
    if (f == "spectral_spread") return spectral_spread(w, p.fraction);
    if (f == "spectral_width") return spectral_width(w, p.fraction);
    if (f == "spectral_centroid") return spectral_centroid(w);
    if (f == "cwt_max_freq") return cwt_max(w, p.cwt).pseudofrequency_hz;
    if (f == "cwt_max_time") return cwt_max(w, p.cwt).time_ms;
    if (f == "cwt_peak_distance") return cwt_peak_distance(w, p.cwt);
    if (f == "dwt_intensity" || f == "dwt_entropy") {
        const auto level = cache.level(p.dwt).subspan(w.first, w.size());
        return f == "dwt_intensity" ? dwt_intensity(level) : dwt_entropy(level);
    }
    if (f == "katz_fd") return katz_fd(w);
    return lyapunov_max(w, p.lyapunov);
}

}  // namespace

const std::vector<std::string>& feature_names() {
    static const std::vector<std::string> names{
        "time_delta",      "onset_time",        "exit_time",      "peak_spread",  "peak_width",
        "peak_centroid",   "zero_cross_rate",   "max_freq",       "spectral_spread", "spectral_width",
        "spectral_centroid", "cwt_max_freq",    "cwt_max_time",   "cwt_peak_distance", "dwt_intensity",
        "dwt_entropy",     "katz_fd",           "lyapunov_max",
    };
    return names;
}

FeatureGroup& FeatureGroup::add(std::string feature, Params params, std::string label) {
    parse(feature, params);
    if (label.empty()) label = feature;
    for (const auto& f : features) {
        if (f.label == label) throw Error("duplicate feature label '" + label + "'");
    }
    features.push_back({std::move(label), std::move(feature), std::move(params)});
    return *this;
}

FeatureGroup default_feature_group() {
    FeatureGroup g;
    for (const auto& name : feature_names()) g.add(name);
    return g;
}

const FeatureColumn& FeatureTable::column(std::string_view name) const {
    for (const auto& c : columns) {
        if (c.name == name) return c;
    }
    throw Error("no feature column '" + std::string(name) + "'");
}

Table to_table(const FeatureTable& table, const SegmentSet& events) {
    if (events.size() != table.event_count) throw Error("event count does not match the feature table");
    Table t;
    std::vector<std::string> kinds;
    std::vector<double> start, peak, end;
    for (const auto& e : events.events) {
        kinds.emplace_back(to_string(e.kind));
        start.push_back(e.start_s);
        peak.push_back(e.peak_s);
        end.push_back(e.end_s);
    }
    t.add_column("kind", kinds);
    t.add_column("start_s", start);
    t.add_column("peak_s", peak);
    t.add_column("end_s", end);
    for (const auto& c : table.columns) {
        std::vector<Cell> cells;
        cells.reserve(c.values.size());
        for (std::size_t i = 0; i < c.values.size(); ++i) {
            if (c.missing[i].empty()) {
                cells.emplace_back(c.values[i]);
            } else {
                cells.emplace_back(Missing{c.missing[i]});
            }
        }
        t.add_column(c.name, std::move(cells));
    }
    return t;
}

FeatureTable run_group(const FeatureGroup& group, const SegmentSet& events, const Signal& sig) {
    return run_group(group, events, sig, hilbert_envelope(sig));
}

FeatureTable run_group(const FeatureGroup& group, const SegmentSet& events, const Signal& sig,
                       const Signal& envelope) {
    if (envelope.size() != sig.size()) throw Error("envelope and signal lengths differ");
    std::vector<Parsed> parsed;
    for (const auto& f : group.features) parsed.push_back(parse(f.feature, f.params));

    FeatureTable table;
    table.event_count = events.size();
    for (const auto& f : group.features) {
        table.columns.push_back({f.label, std::vector<double>(events.size(), std::numeric_limits<double>::quiet_NaN()),
                                 std::vector<std::string>(events.size())});
    }
    DwtCache cache(sig);
    for (std::size_t e = 0; e < events.size(); ++e) {
        EventWindow w;
        try {
            w = make_window(sig.samples(), envelope.samples(), sig.fs(), events.events[e]);
        } catch (const Error& err) {
            for (auto& c : table.columns) c.missing[e] = err.what();
            continue;
        }
        for (std::size_t f = 0; f < parsed.size(); ++f) {
            auto& col = table.columns[f];
            try {
                const double v = compute(parsed[f], w, cache);
                if (std::isfinite(v)) {
                    col.values[e] = v;
                } else {
                    col.missing[e] = "non-finite result";
                }
            } catch (const Error& err) {
                col.missing[e] = err.what();
            }
        }
    }
    return table;
}

}  // namespace pcg
