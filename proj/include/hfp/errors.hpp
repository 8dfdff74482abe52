#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hfp {

// Error hierarchy. The CLI maps the three branches to stable exit codes:
// Error (and anything not listed below) -> 1, ParseError -> 2,
// ResourceError -> 3.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Input file could not be read as the documented format.
struct ParseError : Error {
    ParseError(std::string source_, int line_, const std::string& message)
        : Error(source_ + ":" + std::to_string(line_) + ": " + message),
          source(std::move(source_)),
          line(line_) {}
    std::string source;
    int line;
};

/// A configured cap was hit before the computation finished.
struct ResourceError : Error {
    using Error::Error;
};

struct MalformedInput : Error {
    using Error::Error;
};
struct DisconnectedGraph : Error {
    using Error::Error;
};
struct InvalidWeight : Error {
    using Error::Error;
};
struct SingularForm : Error {
    using Error::Error;
};
struct LengthMismatch : Error {
    using Error::Error;
};
struct IndexOutOfRange : Error {
    using Error::Error;
};

/// A certificate listed a push at a vertex that was not sitting at -m_v.
struct IllegalPush : Error {
    IllegalPush(std::size_t step_, int vertex_, const std::string& message)
        : Error("illegal push at step " + std::to_string(step_) + ", vertex " +
                std::to_string(vertex_) + ": " + message),
          step(step_),
          vertex(vertex_) {}
    std::size_t step;  // 1-based position in the certificate
    int vertex;
};

struct StepLimitExceeded : ResourceError {
    using ResourceError::ResourceError;
};
struct StateCapExceeded : ResourceError {
    using ResourceError::ResourceError;
};
struct NotStabilized : ResourceError {
    using ResourceError::ResourceError;
};
struct UnstableResult : ResourceError {
    using ResourceError::ResourceError;
};

struct GradingMismatch : Error {
    using Error::Error;
};

struct InvalidN : Error {
    using Error::Error;
};
struct InvalidIndex : Error {
    using Error::Error;
};

}  // namespace hfp
