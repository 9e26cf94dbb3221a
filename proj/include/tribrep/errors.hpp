#pragma once

#include <stdexcept>
#include <string>

namespace tribrep {

// Raised when working precision is insufficient to certify a result
// (interval too wide to decide a comparison, floor, or nearest-integer
// distance).  Callers may retry at higher precision; the CLI maps an
// unrecovered PrecisionError to exit code 2.
struct PrecisionError : std::runtime_error {
    explicit PrecisionError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when the mathematics comes out differently than the verified
// pipeline expects (a search finds an unexpected solution, a certified
// bound fails to close, ...).  CLI exit code 1.
struct UnexpectedOutcome : std::runtime_error {
    explicit UnexpectedOutcome(const std::string& what) : std::runtime_error(what) {}
};

} // namespace tribrep
