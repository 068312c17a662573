#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>

#include "pcg/error.hpp"
#include "pcg/io.hpp"

namespace pcg {
namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
    return s;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.push_back(trim(line.substr(start, pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::string lower(std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

void replace_all(std::string& s, std::string_view from, std::string_view to) {
    for (auto pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size())) {
        s.replace(pos, from.size(), to);
    }
}

// Folds typeset variants such as "s1", "S₁", "S_1", "S_{1}", "S<sub>1</sub>".
std::optional<LabelKind> normalize_value(std::string_view raw) {
    std::string v = lower(trim(raw));
    replace_all(v, "\xE2\x82\x81", "1");
    replace_all(v, "\xE2\x82\x82", "2");
    replace_all(v, "<sub>", "");
    replace_all(v, "</sub>", "");
    std::string compact;
    for (char c : v) {
        if (c == '_' || c == '{' || c == '}' || c == '$' || std::isspace(static_cast<unsigned char>(c))) continue;
        compact.push_back(c);
    }
    if (compact == "s1") return LabelKind::S1;
    if (compact == "s2") return LabelKind::S2;
    return std::nullopt;
}

std::optional<double> parse_seconds(std::string_view field) {
    std::string s(field);
    std::replace(s.begin(), s.end(), ',', '.');
    if (s.empty()) return std::nullopt;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

}  // namespace

std::string_view to_string(LabelKind kind) { return kind == LabelKind::S1 ? "S1" : "S2"; }

std::vector<double> LabelSet::times(LabelKind kind) const {
    std::vector<double> out;
    for (const auto& e : entries) {
        if (e.kind == kind) out.push_back(e.time_s);
    }
    return out;
}

AnnotationParse parse_annotations(std::string_view text) {
    if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
    AnnotationParse result;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    std::optional<std::size_t> loc_col;
    std::optional<std::size_t> val_col;
    bool have_header = false;
    while (pos <= text.size()) {
        auto eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (trim(line).empty()) continue;
        const auto fields = split(line, ';');
        if (!have_header) {
            for (std::size_t i = 0; i < fields.size(); ++i) {
                const auto name = lower(fields[i]);
                if (name == "location" && !loc_col) loc_col = i;
                if (name == "value" && !val_col) val_col = i;
            }
            if (!loc_col) throw ParseError("annotations: header has no 'Location' column");
            if (!val_col) throw ParseError("annotations: header has no 'Value' column");
            have_header = true;
            continue;
        }
        const std::size_t needed = std::max(*loc_col, *val_col) + 1;
        if (fields.size() < needed) {
            result.issues.push_back({line_no, "expected " + std::to_string(needed) + " fields, found " +
                                                  std::to_string(fields.size())});
            continue;
        }
        const auto kind = normalize_value(fields[*val_col]);
        if (!kind) continue;
        const auto t = parse_seconds(fields[*loc_col]);
        if (!t) {
            result.issues.push_back({line_no, "unparsable Location '" + std::string(fields[*loc_col]) + "'"});
            continue;
        }
        if (*t < 0.0) {
            result.issues.push_back({line_no, "negative Location '" + std::string(fields[*loc_col]) + "'"});
            continue;
        }
        result.labels.entries.push_back({*t, *kind});
    }
    if (!have_header) throw ParseError("annotations: missing header row 'Location;Value'");
    std::stable_sort(result.labels.entries.begin(), result.labels.entries.end(),
                     [](const Label& a, const Label& b) { return a.time_s < b.time_s; });
    return result;
}

LabelSet read_annotations(const std::filesystem::path& path) {
    AnnotationParse parsed;
    try {
        parsed = parse_annotations(read_file(path));
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    if (!parsed.issues.empty()) {
        const auto& issue = parsed.issues.front();
        throw ParseError(path.string() + ":" + std::to_string(issue.line) + ": " + issue.message);
    }
    return parsed.labels;
}

void write_annotations(const std::filesystem::path& path, const LabelSet& labels) {
    std::string out = "Location;Value\n";
    char buf[64];
    for (const auto& e : labels.entries) {
        std::snprintf(buf, sizeof buf, "%.6f;%s\n", e.time_s, e.kind == LabelKind::S1 ? "S1" : "S2");
        out += buf;
    }
    write_file(path, out);
}

}  // namespace pcg
