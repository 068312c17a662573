#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pcg {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text or binary (WAV headers, CSV rows, model files).
class ParseError : public Error {
public:
    using Error::Error;
};

/// Well-formed input in an encoding the readers do not handle.
class UnsupportedFormat : public Error {
public:
    using Error::Error;
};

/// A pipeline step failed; carries the zero-based index of the step.
class PipelineError : public Error {
public:
    PipelineError(std::size_t step_index, const std::string& step_name, const std::string& what)
        : Error("pipeline step " + std::to_string(step_index) + " (" + step_name + "): " + what),
          step_index_(step_index) {}

    std::size_t step_index() const noexcept { return step_index_; }

private:
    std::size_t step_index_;
};

}  // namespace pcg
