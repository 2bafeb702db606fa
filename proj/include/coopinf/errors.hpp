#pragma once

#include <stdexcept>
#include <string>

namespace coopinf {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Rejected input values: negative or non-finite entries, probabilities
/// outside [0,1], malformed permutations, invalid labels.
class InvalidValueError : public Error {
public:
    using Error::Error;
};

/// Shape mismatches: incompatible matrix dimensions, non-square input where
/// a square matrix is required, index out of range.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Mathematically undefined requests: no positive diagonal, zero transmission
/// denominator, unteachable concept, infeasible maximum-likelihood fit,
/// dimension beyond the exact-permanent cap.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Malformed matrix files (CSV or JSON).
class ParseError : public Error {
public:
    using Error::Error;
};

/// Unreadable or unwritable paths.
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace coopinf
