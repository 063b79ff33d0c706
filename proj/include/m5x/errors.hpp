#pragma once

#include <stdexcept>
#include <string>

namespace m5x {

// Base class for everything this library throws on bad input.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct NegativeWeight : Error {
    using Error::Error;
};

struct BadNormalization : Error {
    using Error::Error;
};

struct DeadPattern : Error {
    using Error::Error;
};

struct ZeroColumn : Error {
    using Error::Error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct BadIndex : Error {
    using Error::Error;
};

struct IndexCoverage : Error {
    using Error::Error;
};

struct DegenerateProb : Error {
    using Error::Error;
};

struct EmptyInput : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

struct ValidationError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

// Violations of conditions that valid inputs cannot reach.
struct InternalError : std::logic_error {
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace m5x
