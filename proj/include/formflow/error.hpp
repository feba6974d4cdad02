#pragma once

#include <stdexcept>
#include <string>

namespace formflow {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed expression or scenario text. `offset` is a byte offset into the
// parsed text (expression errors) or a line number (scenario errors).
struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t offset)
        : Error(msg + " (at offset " + std::to_string(offset) + ")"), offset(offset) {}
    std::size_t offset;
};

// Unbound variable or a numeric domain violation during evaluation.
struct EvalError : Error {
    using Error::Error;
};

// Mismatched chart dimensions or degrees between operands.
struct DimensionError : Error {
    using Error::Error;
};

// A documented operation precondition failed; carries the offending sample.
struct PreconditionError : Error {
    PreconditionError(const std::string& msg, const std::string& where)
        : Error(msg + " [at " + where + "]"), where(where) {}
    std::string where;
};

// Trajectory left the declared domain box.
struct EscapeError : Error {
    EscapeError(const std::string& msg, double exitTime)
        : Error(msg + " (exit time " + std::to_string(exitTime) + ")"), exitTime(exitTime) {}
    double exitTime;
};

// Interpolated 2-form too ill-conditioned to invert.
struct DegenerateFormError : Error {
    using Error::Error;
};

}  // namespace formflow
