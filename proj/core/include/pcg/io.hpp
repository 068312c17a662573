#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "pcg/events.hpp"
#include "pcg/signal.hpp"
#include "pcg/table.hpp"

namespace pcg {

enum class LabelKind { S1, S2 };

struct Label {
    double time_s = 0.0;
    LabelKind kind = LabelKind::S1;
    bool operator==(const Label&) const = default;
};

/// Ground-truth heart sound annotations, sorted by time.
struct LabelSet {
    std::vector<Label> entries;

    std::vector<double> times(LabelKind kind) const;
    std::size_t size() const noexcept { return entries.size(); }
    bool empty() const noexcept { return entries.empty(); }
    bool operator==(const LabelSet&) const = default;
};

std::string_view to_string(LabelKind kind);

enum class SampleEncoding { int8, int16_le, float32_le };

struct RawFormatSpec {
    double fs = 0.0;
    SampleEncoding sample_encoding = SampleEncoding::int16_le;
    int channel = 0;
};

/// Reads channel 0 of a RIFF/WAVE file. Integer PCM is scaled by 2^(bits-1);
/// 8-bit data is unsigned with offset 128 as the format requires.
Signal read_wav(const std::filesystem::path& path);
Signal decode_wav(std::string_view bytes);

enum class WavEncoding { pcm16, float32 };
void write_wav(const std::filesystem::path& path, const Signal& sig,
               WavEncoding encoding = WavEncoding::float32);

Signal read_raw(const std::filesystem::path& path, const RawFormatSpec& spec);
Signal decode_raw(std::string_view bytes, const RawFormatSpec& spec);

/// A row the lenient annotation parser could not use.
struct AnnotationIssue {
    std::size_t line = 0;
    std::string message;
};

struct AnnotationParse {
    LabelSet labels;
    std::vector<AnnotationIssue> issues;
};

/// Parses "Location;Value" text. Never throws on row-level problems; they are
/// collected in `issues`. Throws ParseError only if the header lacks a column.
AnnotationParse parse_annotations(std::string_view text);

/// Strict variant: the first row issue is raised as ParseError with its line.
LabelSet read_annotations(const std::filesystem::path& path);

void write_annotations(const std::filesystem::path& path, const LabelSet& labels);

/// Comma separated, header row of names, numbers with 6 significant digits,
/// missing cells as "NA".
std::string format_csv(const Table& table);
void write_table(const std::filesystem::path& path, const Table& table);

/// Segment CSV with columns time_s, kind, start_s, end_s.
Table segments_table(const SegmentSet& segs);
SegmentSet read_segments(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace pcg
