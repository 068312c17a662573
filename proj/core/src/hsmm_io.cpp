#include <json.hpp>

#include <cmath>
#include <set>

#include "pcg/error.hpp"
#include "pcg/hsmm.hpp"

namespace pcg {
namespace {

using json = nlohmann::ordered_json;

constexpr const char* kVersion = "1";

// Tracks the key path during parsing so truncated files can name the field
// being read when the input ran out.
class KeyTracker : public nlohmann::json_sax<json> {
public:
    bool null() override { return value(); }
    bool boolean(bool) override { return value(); }
    bool number_integer(number_integer_t) override { return value(); }
    bool number_unsigned(number_unsigned_t) override { return value(); }
    bool number_float(number_float_t, const string_t&) override { return value(); }
    bool string(string_t&) override { return value(); }
    bool binary(binary_t&) override { return value(); }
    bool start_object(std::size_t) override {
        stack_.push_back({true, ""});
        return true;
    }
    bool key(string_t& k) override {
        stack_.back().key = k;
        return true;
    }
    bool end_object() override { return pop(); }
    bool start_array(std::size_t) override {
        stack_.push_back({false, ""});
        return true;
    }
    bool end_array() override { return pop(); }
    bool parse_error(std::size_t position, const std::string&, const nlohmann::detail::exception&) override {
        std::string path;
        for (const auto& f : stack_) {
            if (!f.object || f.key.empty()) continue;
            if (!path.empty()) path += '.';
            path += f.key;
        }
        throw ParseError("model file is truncated or malformed at byte " + std::to_string(position) +
                         (path.empty() ? std::string() : " while reading field '" + path + "'"));
    }

private:
    struct Frame {
        bool object;
        std::string key;
    };
    bool value() { return true; }
    bool pop() {
        if (!stack_.empty()) stack_.pop_back();
        return true;
    }
    std::vector<Frame> stack_;
};

const json& field(const json& obj, const std::string& key, const std::string& where) {
    const std::string name = where.empty() ? key : where + "." + key;
    if (!obj.is_object()) throw ParseError("model field '" + where + "' must be an object");
    const auto it = obj.find(key);
    if (it == obj.end()) throw ParseError("model is missing field '" + name + "'");
    return *it;
}

void only_fields(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [k, v] : obj.items()) {
        if (!ok.count(k)) {
            throw ParseError("model has unknown field '" + (where.empty() ? k : where + "." + k) + "'");
        }
    }
}

double number(const json& obj, const std::string& key, const std::string& where) {
    const auto& v = field(obj, key, where);
    if (!v.is_number()) throw ParseError("model field '" + where + "." + key + "' must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ParseError("model field '" + where + "." + key + "' is not finite");
    return d;
}

int integer(const json& obj, const std::string& key, const std::string& where) {
    const auto& v = field(obj, key, where);
    if (!v.is_number_integer()) throw ParseError("model field '" + where + "." + key + "' must be an integer");
    return v.get<int>();
}

std::string text(const json& obj, const std::string& key, const std::string& where) {
    const auto& v = field(obj, key, where);
    if (!v.is_string()) throw ParseError("model field '" + where + "." + key + "' must be a string");
    return v.get<std::string>();
}

std::vector<double> numbers(const json& v, const std::string& name) {
    if (!v.is_array()) throw ParseError("model field '" + name + "' must be an array");
    std::vector<double> out;
    for (const auto& x : v) {
        if (!x.is_number()) throw ParseError("model field '" + name + "' must hold numbers");
        out.push_back(x.get<double>());
        if (!std::isfinite(out.back())) throw ParseError("model field '" + name + "' holds a non-finite value");
    }
    return out;
}

}  // namespace

std::string model_to_json(const HsmmModel& m) {
    const auto& fc = m.feature_config;
    const auto& ec = fc.envelograms;
    json doc;
    doc["version"] = m.version;
    doc["states"] = m.states;
    doc["lr_weights"] = {{"weights", m.lr.weights}, {"bias", m.lr.bias}, {"state_priors", m.state_priors}};
    json durations = json::array();
    for (std::size_t s = 0; s < kHsmmStates; ++s) {
        durations.push_back({{"state", m.states[s]}, {"mean_s", m.durations[s].mean_s}, {"std_s", m.durations[s].std_s}});
    }
    doc["duration_params"] = durations;
    doc["feature_config"] = {
        {"channels", fc.channel_names},
        {"processing_fs", ec.processing_fs},
        {"feature_rate", ec.feature_rate},
        {"prefilter", {{"order", ec.prefilter_order}, {"low_hz", ec.prefilter_low_hz}, {"high_hz", ec.prefilter_high_hz}}},
        {"homomorphic_cutoff_hz", ec.homomorphic_cutoff_hz},
        {"band_power", {{"low_hz", ec.band_low_hz}, {"high_hz", ec.band_high_hz}, {"window_s", ec.band_window_s}}},
        {"dwt", {{"wavelet", ec.dwt_wavelet}, {"level", ec.dwt_level}}},
        {"norm_mean", fc.norm_mean},
        {"norm_std", fc.norm_std},
        {"hr_band_bpm", {fc.rate_band.min_bpm, fc.rate_band.max_bpm}},
        {"rate_significance", fc.rate_significance},
    };
    return doc.dump(2) + "\n";
}

HsmmModel model_from_json(std::string_view text_in) {
    KeyTracker tracker;
    json doc = json::parse(text_in.begin(), text_in.end(), nullptr, false);
    if (doc.is_discarded()) {
        json::sax_parse(text_in.begin(), text_in.end(), &tracker);
        throw ParseError("model file is not valid JSON");
    }
    if (!doc.is_object()) throw ParseError("model file must hold a JSON object");
    const std::string version = text(doc, "version", "");
    if (version != kVersion) {
        throw ParseError("unsupported model version '" + version + "' (expected '" + kVersion + "')");
    }
    only_fields(doc, {"version", "states", "lr_weights", "duration_params", "feature_config"}, "");

    HsmmModel m;
    m.version = version;
    const auto& states = field(doc, "states", "");
    if (!states.is_array() || states.size() != kHsmmStates) throw ParseError("model field 'states' must list 4 states");
    for (std::size_t s = 0; s < kHsmmStates; ++s) {
        if (!states[s].is_string() || states[s].get<std::string>() != m.states[s]) {
            throw ParseError("model field 'states' must be [S1, systole, S2, diastole]");
        }
    }

    const auto& lr = field(doc, "lr_weights", "");
    only_fields(lr, {"weights", "bias", "state_priors"}, "lr_weights");
    const auto& weights = field(lr, "weights", "lr_weights");
    if (!weights.is_array() || weights.size() != kHsmmStates) {
        throw ParseError("model field 'lr_weights.weights' must have 4 rows");
    }
    for (const auto& row : weights) m.lr.weights.push_back(numbers(row, "lr_weights.weights"));
    m.lr.bias = numbers(field(lr, "bias", "lr_weights"), "lr_weights.bias");
    m.state_priors = numbers(field(lr, "state_priors", "lr_weights"), "lr_weights.state_priors");
    if (m.lr.bias.size() != kHsmmStates || m.state_priors.size() != kHsmmStates) {
        throw ParseError("model fields 'lr_weights.bias' and 'lr_weights.state_priors' need 4 entries");
    }
    for (double p : m.state_priors) {
        if (!(p > 0.0)) throw ParseError("model state priors must be positive");
    }

    const auto& durations = field(doc, "duration_params", "");
    if (!durations.is_array() || durations.size() != kHsmmStates) {
        throw ParseError("model field 'duration_params' must have 4 entries");
    }
    for (std::size_t s = 0; s < kHsmmStates; ++s) {
        const std::string where = "duration_params[" + std::to_string(s) + "]";
        only_fields(durations[s], {"state", "mean_s", "std_s"}, where);
        if (text(durations[s], "state", where) != m.states[s]) {
            throw ParseError("model field '" + where + ".state' must be " + m.states[s]);
        }
        m.durations[s] = {number(durations[s], "mean_s", where), number(durations[s], "std_s", where)};
        if (!(m.durations[s].std_s > 0.0)) throw ParseError("model field '" + where + ".std_s' must be positive");
    }

    const std::string fw = "feature_config";
    const auto& fcj = field(doc, "feature_config", "");
    only_fields(fcj, {"channels", "processing_fs", "feature_rate", "prefilter", "homomorphic_cutoff_hz", "band_power",
                      "dwt", "norm_mean", "norm_std", "hr_band_bpm", "rate_significance"},
                fw);
    auto& fc = m.feature_config;
    auto& ec = fc.envelograms;
    const auto& channels = field(fcj, "channels", fw);
    if (!channels.is_array()) throw ParseError("model field 'feature_config.channels' must be an array");
    for (const auto& c : channels) {
        if (!c.is_string()) throw ParseError("model field 'feature_config.channels' must hold strings");
        fc.channel_names.push_back(c.get<std::string>());
    }
    ec.processing_fs = number(fcj, "processing_fs", fw);
    ec.feature_rate = number(fcj, "feature_rate", fw);
    const auto& pre = field(fcj, "prefilter", fw);
    only_fields(pre, {"order", "low_hz", "high_hz"}, fw + ".prefilter");
    ec.prefilter_order = integer(pre, "order", fw + ".prefilter");
    ec.prefilter_low_hz = number(pre, "low_hz", fw + ".prefilter");
    ec.prefilter_high_hz = number(pre, "high_hz", fw + ".prefilter");
    ec.homomorphic_cutoff_hz = number(fcj, "homomorphic_cutoff_hz", fw);
    const auto& band = field(fcj, "band_power", fw);
    only_fields(band, {"low_hz", "high_hz", "window_s"}, fw + ".band_power");
    ec.band_low_hz = number(band, "low_hz", fw + ".band_power");
    ec.band_high_hz = number(band, "high_hz", fw + ".band_power");
    ec.band_window_s = number(band, "window_s", fw + ".band_power");
    const auto& dwt_cfg = field(fcj, "dwt", fw);
    only_fields(dwt_cfg, {"wavelet", "level"}, fw + ".dwt");
    ec.dwt_wavelet = text(dwt_cfg, "wavelet", fw + ".dwt");
    ec.dwt_level = integer(dwt_cfg, "level", fw + ".dwt");
    fc.norm_mean = numbers(field(fcj, "norm_mean", fw), fw + ".norm_mean");
    fc.norm_std = numbers(field(fcj, "norm_std", fw), fw + ".norm_std");
    const auto band_bpm = numbers(field(fcj, "hr_band_bpm", fw), fw + ".hr_band_bpm");
    if (band_bpm.size() != 2) throw ParseError("model field 'feature_config.hr_band_bpm' needs 2 entries");
    fc.rate_band = {band_bpm[0], band_bpm[1]};
    fc.rate_significance = number(fcj, "rate_significance", fw);

    const std::size_t dims = fc.channel_names.size();
    for (const auto& row : m.lr.weights) {
        if (row.size() != dims) throw ParseError("model weight rows must match the channel count");
    }
    if (fc.norm_mean.size() != dims || fc.norm_std.size() != dims) {
        throw ParseError("model normalization constants must match the channel count");
    }
    for (double s : fc.norm_std) {
        if (!(s > 0.0)) throw ParseError("model normalization std must be positive");
    }
    return m;
}

void save_model(const HsmmModel& model, const std::filesystem::path& path) {
    write_file(path, model_to_json(model));
}

HsmmModel load_model(const std::filesystem::path& path) {
    try {
        return model_from_json(read_file(path));
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

}  // namespace pcg
