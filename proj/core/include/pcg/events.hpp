#pragma once

#include <optional>
#include <string_view>
#include <vector>

namespace pcg {

enum class EventKind { S1, S2, systole, diastole, cycle, unknown };

std::string_view to_string(EventKind kind);
/// Accepts the names produced by to_string; returns nullopt otherwise.
std::optional<EventKind> parse_event_kind(std::string_view text);

/// One detected or derived region: start <= peak <= end, in seconds.
struct SegmentEvent {
    double start_s = 0.0;
    double peak_s = 0.0;
    double end_s = 0.0;
    EventKind kind = EventKind::unknown;

    double center_s() const noexcept { return 0.5 * (start_s + end_s); }
    bool operator==(const SegmentEvent&) const = default;
};

/// Time-sorted list of events.
struct SegmentSet {
    std::vector<SegmentEvent> events;

    SegmentSet of_kind(EventKind kind) const;
    std::vector<double> peak_times(EventKind kind) const;
    std::vector<double> center_times(EventKind kind) const;
    std::size_t size() const noexcept { return events.size(); }
    bool empty() const noexcept { return events.empty(); }

    bool operator==(const SegmentSet&) const = default;
};

}  // namespace pcg
