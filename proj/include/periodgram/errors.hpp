#pragma once

#include <stdexcept>
#include <string>

namespace periodgram {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// User-facing input that failed validation (CLI exit code 2).
struct BadInput : Error {
    using Error::Error;
};

// A contiguity matrix denominator vanished at the given lattice point.
struct PoleError : Error {
    int matrix_index;
    std::string factor;
    PoleError(int i, const std::string& fac, const std::string& at)
        : Error("M" + std::to_string(i) + " has a pole (" + fac + " vanishes) at " + at),
          matrix_index(i), factor(fac) {}
};

struct PathNotFound : Error {
    using Error::Error;
};

struct NonConvergence : Error {
    using Error::Error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct ShapeError : Error {
    using Error::Error;
};

struct SizeLimit : Error {
    using Error::Error;
};

struct ExactLimitExceeded : Error {
    using Error::Error;
};

struct PrecisionExhausted : Error {
    using Error::Error;
};

struct DegenerateBasis : Error {
    using Error::Error;
};

struct SingularMatrix : Error {
    using Error::Error;
};

struct NoClosedForm : Error {
    using Error::Error;
};

struct AllZero : Error {
    using Error::Error;
};

}  // namespace periodgram
