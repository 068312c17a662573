#pragma once

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numbers>
#include <string>
#include <vector>

#include "pcg/diagnostics.hpp"
#include "support/checks.hpp"

#define CHECK_OUTCOME(expr)                                                    \
    do {                                                                       \
        const auto outcome_ = (expr);                                          \
        std::string joined_;                                                   \
        for (const auto& f_ : outcome_.failures) joined_ += f_ + "\n";          \
        CHECK_MESSAGE(outcome_.failures.empty(), joined_);                     \
    } while (false)

namespace testing {

inline std::vector<double> tone(double freq, double fs, std::size_t n, double amp = 1.0, double phase = 0.0) {
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = amp * std::sin(2.0 * std::numbers::pi * freq * static_cast<double>(i) / fs + phase);
    }
    return x;
}

// Fresh directory under the system temp dir, removed on destruction.
struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const std::string& name) : path(std::filesystem::temp_directory_path() / ("pcg_test_" + name)) {
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::filesystem::path operator/(const std::string& leaf) const { return path / leaf; }
};

// Collects warnings for the lifetime of the object.
struct WarningCapture {
    std::vector<std::string> messages;
    WarningCapture() {
        pcg::set_warning_sink([this](const std::string& m) { messages.push_back(m); });
    }
    ~WarningCapture() { pcg::set_warning_sink([](const std::string&) {}); }
};

}  // namespace testing
