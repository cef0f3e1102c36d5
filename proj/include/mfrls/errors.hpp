#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mfrls {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A value lies outside its admissible domain (forgetting factor, cutoff, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Not enough history to build a regressor at the requested time index.
class IndexOutOfRange : public Error {
public:
    using Error::Error;
};

/// The information matrix could not be inverted, even after jitter.
class SingularInformation : public Error {
public:
    SingularInformation(const std::string& what, std::size_t step)
        : Error(what + " (step " + std::to_string(step) + ")"), step_(step) {}
    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

/// The forgetting map produced a matrix that is not positive semidefinite.
class MapDegeneracy : public Error {
public:
    using Error::Error;
};

/// A forgetting scheme was used where its kind is not supported.
class KindMismatch : public Error {
public:
    using Error::Error;
};

/// A batch problem has a rank-deficient normal matrix.
class RankDeficiency : public Error {
public:
    using Error::Error;
};

/// Mismatched sequence lengths or vector sizes.
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// A metric's denominator vanished (constant output, zero-norm truth).
class DegenerateMetric : public Error {
public:
    using Error::Error;
};

/// Malformed input file or config.
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace mfrls
