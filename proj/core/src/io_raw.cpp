#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>

#include "pcg/error.hpp"
#include "pcg/io.hpp"

namespace pcg {
namespace {

std::size_t width_of(SampleEncoding e) {
    switch (e) {
        case SampleEncoding::int8: return 1;
        case SampleEncoding::int16_le: return 2;
        case SampleEncoding::float32_le: return 4;
    }
    return 1;
}

const char* name_of(SampleEncoding e) {
    switch (e) {
        case SampleEncoding::int8: return "int8";
        case SampleEncoding::int16_le: return "int16_le";
        case SampleEncoding::float32_le: return "float32_le";
    }
    return "?";
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path.string() + "' for reading");
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + path.string() + "' for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw Error("write to '" + path.string() + "' failed");
}

Signal decode_raw(std::string_view bytes, const RawFormatSpec& spec) {
    if (!(spec.fs > 0.0) || !std::isfinite(spec.fs)) {
        throw Error("raw: sampling rate must be positive, got " + format_number(spec.fs));
    }
    if (spec.channel != 0) throw Error("raw: only single-channel data (channel 0) is supported");
    if (bytes.empty()) throw ParseError("raw: empty input");
    const std::size_t width = width_of(spec.sample_encoding);
    if (bytes.size() % width != 0) {
        const std::size_t offset = bytes.size() - bytes.size() % width;
        throw ParseError("raw: truncated sample at byte offset " + std::to_string(offset) + " (" +
                         std::to_string(bytes.size()) + " bytes is not a multiple of " +
                         std::to_string(width) + ")");
    }
    const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
    const std::size_t n = bytes.size() / width;
    std::vector<double> samples(n);
    for (std::size_t i = 0; i < n; ++i) {
        const unsigned char* s = p + i * width;
        switch (spec.sample_encoding) {
            case SampleEncoding::int8:
                samples[i] = static_cast<std::int8_t>(s[0]) / 128.0;
                break;
            case SampleEncoding::int16_le:
                samples[i] = static_cast<std::int16_t>(s[0] | (s[1] << 8)) / 32768.0;
                break;
            case SampleEncoding::float32_le: {
                const std::uint32_t u = static_cast<std::uint32_t>(s[0]) | (static_cast<std::uint32_t>(s[1]) << 8) |
                                        (static_cast<std::uint32_t>(s[2]) << 16) |
                                        (static_cast<std::uint32_t>(s[3]) << 24);
                float f;
                std::memcpy(&f, &u, sizeof f);
                if (!std::isfinite(f)) {
                    throw ParseError("raw: non-finite sample at byte offset " + std::to_string(i * width));
                }
                samples[i] = f;
                break;
            }
        }
    }
    return Signal(std::move(samples), spec.fs,
                  {format_step("read_raw", {{"fs", format_number(spec.fs)},
                                            {"encoding", name_of(spec.sample_encoding)}})});
}

Signal read_raw(const std::filesystem::path& path, const RawFormatSpec& spec) {
    try {
        return decode_raw(read_file(path), spec);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

}  // namespace pcg
