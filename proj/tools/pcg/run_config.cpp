#include "run_config.hpp"

#include <json.hpp>

#include <set>

#include "pcg/error.hpp"
#include "pcg/preprocess.hpp"

namespace pcgcli {
namespace {

using nlohmann::json;
using pcg::ParseError;

std::string join(const std::string& where, const std::string& key) { return where.empty() ? key : where + "." + key; }

void only(const json& obj, const std::string& where, std::initializer_list<const char*> keys) {
    if (!obj.is_object()) throw ParseError("config: '" + where + "' must be an object");
    const std::set<std::string> ok(keys.begin(), keys.end());
    for (const auto& [k, v] : obj.items()) {
        if (!ok.count(k)) throw ParseError("config: unknown field '" + join(where, k) + "'");
    }
}

double num(const json& obj, const std::string& where, const char* key, double fallback) {
    const auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    if (!it->is_number()) throw ParseError("config: '" + join(where, key) + "' must be a number");
    return it->get<double>();
}

std::string str(const json& obj, const std::string& where, const char* key) {
    const auto& v = obj.at(key);
    if (!v.is_string()) throw ParseError("config: '" + join(where, key) + "' must be a string");
    return v.get<std::string>();
}

pcg::MeanStd mean_std(const json& obj, const std::string& where, const char* key, pcg::MeanStd fallback) {
    const auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    if (!it->is_array() || it->size() != 2 || !(*it)[0].is_number() || !(*it)[1].is_number()) {
        throw ParseError("config: '" + join(where, key) + "' must be a pair of numbers");
    }
    return {(*it)[0].get<double>(), (*it)[1].get<double>()};
}

pcg::Params params_of(const json& obj, const std::string& where) {
    pcg::Params out;
    if (!obj.is_object()) throw ParseError("config: '" + where + "' must be an object");
    for (const auto& [k, v] : obj.items()) {
        if (v.is_number()) {
            out.emplace_back(k, pcg::format_number(v.get<double>()));
        } else if (v.is_string()) {
            out.emplace_back(k, v.get<std::string>());
        } else {
            throw ParseError("config: '" + join(where, k) + "' must be a number or string");
        }
    }
    return out;
}

}  // namespace

pcg::SampleEncoding parse_encoding(const std::string& text) {
    if (text == "int8") return pcg::SampleEncoding::int8;
    if (text == "int16_le") return pcg::SampleEncoding::int16_le;
    if (text == "float32_le") return pcg::SampleEncoding::float32_le;
    throw ParseError("unknown raw encoding '" + text + "' (int8, int16_le, float32_le)");
}

pcg::EventKind parse_region(const std::string& text) {
    const auto kind = pcg::parse_event_kind(text);
    if (!kind || *kind == pcg::EventKind::unknown) {
        throw ParseError("unknown region '" + text + "' (S1, S2, systole, diastole, cycle)");
    }
    return *kind;
}

pcg::Pipeline RunConfig::build_pipeline() const {
    std::vector<pcg::PipelineStep> steps;
    for (const auto& s : pipeline) steps.push_back(pcg::make_step(s.name, s.params));
    return pcg::Pipeline(std::move(steps));
}

RunConfig parse_run_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("config is not valid JSON: ") + e.what());
    }
    only(doc, "", {"pipeline", "segmentation", "features", "validate", "raw", "synth", "train"});
    RunConfig cfg;

    if (doc.contains("pipeline")) {
        const auto& p = doc["pipeline"];
        if (!p.is_array()) throw ParseError("config: 'pipeline' must be an array");
        for (std::size_t i = 0; i < p.size(); ++i) {
            const std::string where = "pipeline[" + std::to_string(i) + "]";
            only(p[i], where, {"step", "params"});
            if (!p[i].contains("step")) throw ParseError("config: missing field '" + where + ".step'");
            StepSpec s{str(p[i], where, "step"), {}};
            if (p[i].contains("params")) s.params = params_of(p[i]["params"], where + ".params");
            try {
                pcg::make_step(s.name, s.params);
            } catch (const pcg::Error& e) {
                throw ParseError("config: " + where + ": " + e.what());
            }
            cfg.pipeline.push_back(std::move(s));
        }
    }

    if (doc.contains("segmentation")) {
        const auto& s = doc["segmentation"];
        only(s, "segmentation", {"method", "model", "detector"});
        if (s.contains("method")) {
            const auto m = pcg::parse_segment_method(str(s, "segmentation", "method"));
            if (!m) throw ParseError("config: 'segmentation.method' must be naive, adaptive or hsmm");
            cfg.method = m;
        }
        if (s.contains("model")) cfg.model = str(s, "segmentation", "model");
        if (s.contains("detector")) {
            const auto& d = s["detector"];
            const std::string w = "segmentation.detector";
            only(d, w, {"lpf_cutoff_hz", "min_distance_s", "height", "drop_fraction", "boundary_level"});
            auto& dc = cfg.detector;
            dc.lpf_cutoff_hz = num(d, w, "lpf_cutoff_hz", dc.lpf_cutoff_hz);
            dc.min_distance_s = num(d, w, "min_distance_s", dc.min_distance_s);
            dc.height = num(d, w, "height", dc.height);
            dc.drop_fraction = num(d, w, "drop_fraction", dc.drop_fraction);
            dc.boundary_level = num(d, w, "boundary_level", dc.boundary_level);
        }
    }

    if (doc.contains("features")) {
        const auto& f = doc["features"];
        only(f, "features", {"region", "group"});
        if (f.contains("region")) cfg.region = parse_region(str(f, "features", "region"));
        if (f.contains("group")) {
            const auto& g = f["group"];
            if (!g.is_array()) throw ParseError("config: 'features.group' must be an array");
            pcg::FeatureGroup group;
            for (std::size_t i = 0; i < g.size(); ++i) {
                const std::string where = "features.group[" + std::to_string(i) + "]";
                only(g[i], where, {"feature", "label", "params"});
                if (!g[i].contains("feature")) throw ParseError("config: missing field '" + where + ".feature'");
                pcg::Params params;
                if (g[i].contains("params")) params = params_of(g[i]["params"], where + ".params");
                std::string label = g[i].contains("label") ? str(g[i], where, "label") : std::string();
                try {
                    group.add(str(g[i], where, "feature"), std::move(params), std::move(label));
                } catch (const pcg::Error& e) {
                    throw ParseError("config: " + where + ": " + e.what());
                }
            }
            cfg.group = std::move(group);
        }
    }

    if (doc.contains("validate")) {
        const auto& v = doc["validate"];
        only(v, "validate", {"tolerance_ms"});
        cfg.tolerance_ms = num(v, "validate", "tolerance_ms", cfg.tolerance_ms);
    }

    if (doc.contains("raw")) {
        const auto& r = doc["raw"];
        only(r, "raw", {"fs", "encoding"});
        if (!r.contains("fs")) throw ParseError("config: missing field 'raw.fs'");
        pcg::RawFormatSpec spec;
        spec.fs = num(r, "raw", "fs", 0.0);
        if (r.contains("encoding")) spec.sample_encoding = parse_encoding(str(r, "raw", "encoding"));
        cfg.raw = spec;
    }

    if (doc.contains("synth")) {
        const auto& s = doc["synth"];
        const std::string w = "synth";
        only(s, w, {"fs", "duration_s", "heart_rate_bpm", "s1_s2_ms", "s2_s1_ms", "s1_freq_hz", "s1_amplitude",
                    "s1_sigma_ms", "s2_freq_hz", "s2_amplitude", "s2_sigma_ms", "snr_db", "seed"});
        auto& c = cfg.synth;
        c.fs = num(s, w, "fs", c.fs);
        c.duration_s = num(s, w, "duration_s", c.duration_s);
        c.heart_rate_bpm = mean_std(s, w, "heart_rate_bpm", c.heart_rate_bpm);
        c.s1_s2_ms = mean_std(s, w, "s1_s2_ms", c.s1_s2_ms);
        c.s2_s1_ms = mean_std(s, w, "s2_s1_ms", c.s2_s1_ms);
        c.s1_freq_hz = num(s, w, "s1_freq_hz", c.s1_freq_hz);
        c.s1_amplitude = num(s, w, "s1_amplitude", c.s1_amplitude);
        c.s1_sigma_ms = num(s, w, "s1_sigma_ms", c.s1_sigma_ms);
        c.s2_freq_hz = num(s, w, "s2_freq_hz", c.s2_freq_hz);
        c.s2_amplitude = num(s, w, "s2_amplitude", c.s2_amplitude);
        c.s2_sigma_ms = num(s, w, "s2_sigma_ms", c.s2_sigma_ms);
        if (s.contains("snr_db")) {
            if (s["snr_db"].is_string() && s["snr_db"].get<std::string>() == "inf") {
                c.snr_db = std::numeric_limits<double>::infinity();
            } else {
                c.snr_db = num(s, w, "snr_db", c.snr_db);
            }
        }
        if (s.contains("seed")) {
            if (!s["seed"].is_number_unsigned()) throw ParseError("config: 'synth.seed' must be a non-negative integer");
            c.seed = s["seed"].get<std::uint64_t>();
        }
    }

    if (doc.contains("train")) {
        const auto& t = doc["train"];
        const std::string w = "train";
        only(t, w, {"seed", "s1_half_width_s", "s2_half_width_s", "min_duration_std_s", "heart_rate_band_bpm", "l2"});
        auto& c = cfg.train;
        c.s1_half_width_s = num(t, w, "s1_half_width_s", c.s1_half_width_s);
        c.s2_half_width_s = num(t, w, "s2_half_width_s", c.s2_half_width_s);
        c.min_duration_std_s = num(t, w, "min_duration_std_s", c.min_duration_std_s);
        c.logistic.l2 = num(t, w, "l2", c.logistic.l2);
        if (t.contains("heart_rate_band_bpm")) {
            const auto band = mean_std(t, w, "heart_rate_band_bpm", {});
            c.rate_band = {band.mean, band.std};
        }
        if (t.contains("seed")) {
            if (!t["seed"].is_number_unsigned()) throw ParseError("config: 'train.seed' must be a non-negative integer");
            c.logistic.seed = t["seed"].get<std::uint64_t>();
        }
    }
    return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    try {
        return parse_run_config(pcg::read_file(path));
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

}  // namespace pcgcli
