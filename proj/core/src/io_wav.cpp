#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <string>

#include "pcg/diagnostics.hpp"
#include "pcg/error.hpp"
#include "pcg/io.hpp"

namespace pcg {
namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint32_t le32(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t le16(const unsigned char* p) {
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

struct Format {
    std::uint16_t tag = 0;
    std::uint16_t channels = 0;
    std::uint32_t rate = 0;
    std::uint16_t block_align = 0;
    std::uint16_t bits = 0;
};

Format parse_fmt(const unsigned char* p, std::uint32_t size) {
    if (size < 16) throw ParseError("wav: fmt chunk too short (" + std::to_string(size) + " bytes)");
    Format f;
    f.tag = le16(p);
    f.channels = le16(p + 2);
    f.rate = le32(p + 4);
    f.block_align = le16(p + 12);
    f.bits = le16(p + 14);
    if (f.tag == kFormatExtensible) {
        if (size < 40) throw ParseError("wav: extensible fmt chunk too short");
        // The sub-format GUID starts at offset 24; its first two bytes hold the real tag.
        f.tag = le16(p + 24);
    }
    if (f.tag != kFormatPcm && f.tag != kFormatFloat) {
        throw UnsupportedFormat("wav: unsupported codec tag " + std::to_string(f.tag));
    }
    if (f.channels == 0) throw ParseError("wav: zero channels");
    if (f.rate == 0) throw ParseError("wav: zero sample rate");
    const bool int_ok = f.tag == kFormatPcm && (f.bits == 8 || f.bits == 16 || f.bits == 24 || f.bits == 32);
    const bool float_ok = f.tag == kFormatFloat && (f.bits == 32 || f.bits == 64);
    if (!int_ok && !float_ok) {
        throw UnsupportedFormat("wav: unsupported bit depth " + std::to_string(f.bits));
    }
    const auto expected_align = static_cast<std::uint16_t>(f.channels * (f.bits / 8));
    if (f.block_align != expected_align) {
        throw ParseError("wav: block align " + std::to_string(f.block_align) + " does not match " +
                         std::to_string(f.channels) + " channels of " + std::to_string(f.bits) + " bits");
    }
    return f;
}

double decode_sample(const unsigned char* p, const Format& f) {
    if (f.tag == kFormatFloat) {
        if (f.bits == 32) {
            std::uint32_t u = le32(p);
            float v;
            std::memcpy(&v, &u, sizeof v);
            return v;
        }
        std::uint64_t u = static_cast<std::uint64_t>(le32(p)) | (static_cast<std::uint64_t>(le32(p + 4)) << 32);
        double v;
        std::memcpy(&v, &u, sizeof v);
        return v;
    }
    switch (f.bits) {
        case 8:
            return (static_cast<int>(p[0]) - 128) / 128.0;
        case 16:
            return static_cast<std::int16_t>(le16(p)) / 32768.0;
        case 24: {
            std::int32_t v = static_cast<std::int32_t>(p[0] | (p[1] << 8) | (p[2] << 16));
            if (v & 0x800000) v -= 0x1000000;
            return v / 8388608.0;
        }
        default:
            return static_cast<std::int32_t>(le32(p)) / 2147483648.0;
    }
}

void put16(std::string& out, std::uint16_t v) {
    out.push_back(static_cast<char>(v & 0xFF));
    out.push_back(static_cast<char>(v >> 8));
}

void put32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

}  // namespace

Signal decode_wav(std::string_view bytes) {
    const auto* data = reinterpret_cast<const unsigned char*>(bytes.data());
    const std::size_t size = bytes.size();
    if (size < 12 || std::memcmp(data, "RIFF", 4) != 0 || std::memcmp(data + 8, "WAVE", 4) != 0) {
        throw ParseError("wav: missing RIFF/WAVE header");
    }
    Format fmt;
    bool have_fmt = false;
    std::size_t pos = 12;
    while (pos + 8 <= size) {
        const unsigned char* chunk = data + pos;
        const std::uint32_t chunk_size = le32(chunk + 4);
        const std::size_t body = pos + 8;
        if (std::memcmp(chunk, "fmt ", 4) == 0) {
            if (body + chunk_size > size) throw ParseError("wav: truncated fmt chunk");
            fmt = parse_fmt(data + body, chunk_size);
            have_fmt = true;
        } else if (std::memcmp(chunk, "data", 4) == 0) {
            if (!have_fmt) throw ParseError("wav: data chunk before fmt chunk");
            std::size_t available = size - body;
            std::size_t length = chunk_size;
            if (length > available) {
                warn("wav: data chunk declares " + std::to_string(chunk_size) + " bytes but only " +
                     std::to_string(available) + " remain; reading what is present");
                length = available;
            }
            const std::size_t frames = length / fmt.block_align;
            if (frames == 0) throw ParseError("wav: data chunk holds no complete frame");
            if (fmt.channels > 1) {
                warn("wav: " + std::to_string(fmt.channels) + " channels present; using channel 0");
            }
            std::vector<double> samples(frames);
            for (std::size_t i = 0; i < frames; ++i) {
                samples[i] = decode_sample(data + body + i * fmt.block_align, fmt);
                if (!std::isfinite(samples[i])) {
                    throw ParseError("wav: non-finite sample at frame " + std::to_string(i));
                }
            }
            return Signal(std::move(samples), static_cast<double>(fmt.rate),
                          {format_step("read_wav", {{"fs", std::to_string(fmt.rate)},
                                                    {"bits", std::to_string(fmt.bits)}})});
        }
        pos = body + chunk_size + (chunk_size & 1u);
    }
    throw ParseError(have_fmt ? "wav: no data chunk" : "wav: no fmt chunk");
}

Signal read_wav(const std::filesystem::path& path) {
    try {
        return decode_wav(read_file(path));
    } catch (const UnsupportedFormat& e) {
        throw UnsupportedFormat(path.string() + ": " + e.what());
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void write_wav(const std::filesystem::path& path, const Signal& sig, WavEncoding encoding) {
    const double rounded_fs = std::round(sig.fs());
    if (std::abs(rounded_fs - sig.fs()) > 1e-9 || rounded_fs > 4294967295.0) {
        throw Error("write_wav: sample rate " + format_number(sig.fs()) + " is not a 32-bit integer");
    }
    const std::uint16_t bits = encoding == WavEncoding::pcm16 ? 16 : 32;
    const std::uint16_t tag = encoding == WavEncoding::pcm16 ? kFormatPcm : kFormatFloat;
    const std::uint16_t align = bits / 8;
    const auto data_bytes = static_cast<std::uint32_t>(sig.size() * align);
    const auto rate = static_cast<std::uint32_t>(rounded_fs);

    std::string out;
    out.reserve(44 + data_bytes);
    out += "RIFF";
    put32(out, 36 + data_bytes);
    out += "WAVEfmt ";
    put32(out, 16);
    put16(out, tag);
    put16(out, 1);
    put32(out, rate);
    put32(out, rate * align);
    put16(out, align);
    put16(out, bits);
    out += "data";
    put32(out, data_bytes);
    for (double x : sig.samples()) {
        if (encoding == WavEncoding::pcm16) {
            const double q = std::clamp(std::round(x * 32768.0), -32768.0, 32767.0);
            put16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(q)));
        } else {
            const float f = static_cast<float>(x);
            std::uint32_t u;
            std::memcpy(&u, &f, sizeof u);
            put32(out, u);
        }
    }
    write_file(path, out);
}

}  // namespace pcg
