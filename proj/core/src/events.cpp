#include "pcg/events.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <string>

namespace pcg {
namespace {

constexpr std::array<std::pair<EventKind, std::string_view>, 6> kNames{{
    {EventKind::S1, "S1"},
    {EventKind::S2, "S2"},
    {EventKind::systole, "systole"},
    {EventKind::diastole, "diastole"},
    {EventKind::cycle, "cycle"},
    {EventKind::unknown, "unknown"},
}};

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

}  // namespace

std::string_view to_string(EventKind kind) {
    for (const auto& [k, name] : kNames) {
        if (k == kind) return name;
    }
    return "unknown";
}

std::optional<EventKind> parse_event_kind(std::string_view text) {
    const auto needle = lower(text);
    for (const auto& [k, name] : kNames) {
        if (lower(name) == needle) return k;
    }
    return std::nullopt;
}

SegmentSet SegmentSet::of_kind(EventKind kind) const {
    SegmentSet out;
    std::copy_if(events.begin(), events.end(), std::back_inserter(out.events),
                 [kind](const SegmentEvent& e) { return e.kind == kind; });
    return out;
}

std::vector<double> SegmentSet::peak_times(EventKind kind) const {
    std::vector<double> out;
    for (const auto& e : events) {
        if (e.kind == kind) out.push_back(e.peak_s);
    }
    return out;
}

std::vector<double> SegmentSet::center_times(EventKind kind) const {
    std::vector<double> out;
    for (const auto& e : events) {
        if (e.kind == kind) out.push_back(e.center_s());
    }
    return out;
}

}  // namespace pcg
