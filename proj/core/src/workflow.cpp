#include "pcg/workflow.hpp"

#include <algorithm>
#include <cctype>

#include "pcg/error.hpp"
#include "pcg/preprocess.hpp"
#include "pcg/segment.hpp"

namespace pcg {

std::string_view to_string(SegmentMethod method) {
    switch (method) {
        case SegmentMethod::naive: return "naive";
        case SegmentMethod::adaptive: return "adaptive";
        case SegmentMethod::hsmm: return "hsmm";
    }
    return "naive";
}

std::optional<SegmentMethod> parse_segment_method(std::string_view text) {
    for (auto m : {SegmentMethod::naive, SegmentMethod::adaptive, SegmentMethod::hsmm}) {
        if (text == to_string(m)) return m;
    }
    return std::nullopt;
}

SegmentSet segment_recording(const Signal& sig, SegmentMethod method, const HsmmModel* model,
                             const DetectorConfig& config) {
    if (method == SegmentMethod::hsmm) {
        if (!model) throw Error("hsmm segmentation needs a model");
        return decode(*model, sig);
    }
    const Signal env = homomorphic_envelope(sig, config.lpf_cutoff_hz);
    DetectionSet det;
    if (method == SegmentMethod::naive) {
        det = naive_detect(env, config.min_distance_s, config.height);
        det.kinds.assign(det.peaks_s.size(), EventKind::S1);
    } else {
        det = adaptive_detect(env, config.drop_fraction);
        if (det.peaks_s.size() >= 3) det = sort_peaks(det);
    }
    return peaks_to_boundaries(env, det, config.boundary_level);
}

Signal load_signal(const std::filesystem::path& path, const std::optional<RawFormatSpec>& raw) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext == ".wav") return read_wav(path);
    if (!raw) throw UnsupportedFormat(path.string() + ": not a .wav file and no raw format given");
    return read_raw(path, *raw);
}

}  // namespace pcg
