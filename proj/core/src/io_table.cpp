#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "pcg/error.hpp"
#include "pcg/io.hpp"

namespace pcg {
namespace {

std::string quote(std::string_view s) {
    if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string format_cell(const Cell& cell) {
    if (const auto* d = std::get_if<double>(&cell)) {
        if (std::isnan(*d)) return "NA";
        if (std::isinf(*d)) return *d > 0 ? "inf" : "-inf";
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6g", *d);
        return buf;
    }
    if (const auto* s = std::get_if<std::string>(&cell)) return quote(*s);
    return "NA";
}

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(std::move(cur));
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(std::move(cur));
    return out;
}

double parse_number(const std::string& s, const std::string& where) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) throw ParseError(where + ": not a number '" + s + "'");
    return v;
}

}  // namespace

std::string format_csv(const Table& table) {
    const std::size_t rows = table.row_count();
    std::string out;
    for (std::size_t c = 0; c < table.names.size(); ++c) {
        if (c) out += ',';
        out += quote(table.names[c]);
    }
    out += '\n';
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            if (c) out += ',';
            out += format_cell(table.columns[c][r]);
        }
        out += '\n';
    }
    return out;
}

void write_table(const std::filesystem::path& path, const Table& table) {
    write_file(path, format_csv(table));
}

Table segments_table(const SegmentSet& segs) {
    std::vector<double> time, start, end;
    std::vector<std::string> kind;
    for (const auto& e : segs.events) {
        time.push_back(e.peak_s);
        kind.emplace_back(to_string(e.kind));
        start.push_back(e.start_s);
        end.push_back(e.end_s);
    }
    Table t;
    t.add_column("time_s", time);
    t.add_column("kind", kind);
    t.add_column("start_s", start);
    t.add_column("end_s", end);
    return t;
}

SegmentSet read_segments(const std::filesystem::path& path) {
    const std::string text = read_file(path);
    SegmentSet out;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    std::vector<std::string> header;
    int col_time = -1, col_kind = -1, col_start = -1, col_end = -1;
    while (pos < text.size()) {
        auto eol = text.find('\n', pos);
        if (eol == std::string::npos) eol = text.size();
        const std::string_view line(text.data() + pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (line.empty() || line == "\r") continue;
        auto fields = split_csv_line(line);
        const std::string where = path.string() + ":" + std::to_string(line_no);
        if (header.empty()) {
            header = fields;
            for (std::size_t i = 0; i < header.size(); ++i) {
                if (header[i] == "time_s") col_time = static_cast<int>(i);
                if (header[i] == "kind") col_kind = static_cast<int>(i);
                if (header[i] == "start_s") col_start = static_cast<int>(i);
                if (header[i] == "end_s") col_end = static_cast<int>(i);
            }
            if (col_time < 0) throw ParseError(where + ": missing column 'time_s'");
            continue;
        }
        if (fields.size() != header.size()) {
            throw ParseError(where + ": expected " + std::to_string(header.size()) + " fields");
        }
        SegmentEvent e;
        e.peak_s = parse_number(fields[col_time], where);
        e.start_s = col_start >= 0 ? parse_number(fields[col_start], where) : e.peak_s;
        e.end_s = col_end >= 0 ? parse_number(fields[col_end], where) : e.peak_s;
        if (col_kind >= 0) {
            const auto k = parse_event_kind(fields[col_kind]);
            if (!k) throw ParseError(where + ": unknown kind '" + fields[col_kind] + "'");
            e.kind = *k;
        }
        out.events.push_back(e);
    }
    if (header.empty()) throw ParseError(path.string() + ": empty segment file");
    return out;
}

}  // namespace pcg
