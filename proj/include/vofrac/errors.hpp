#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace vofrac {

/// Base class of all engine errors. `code()` is the stable machine-readable
/// identifier the CLI prints as `E:<code>: message`.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

/// Gamma/digamma evaluated at a non-positive integer.
class PoleError : public Error {
public:
    explicit PoleError(const std::string& m) : Error("pole", m) {}
};

/// Evaluation outside a function's domain (ln of non-positive argument,
/// sampled data queried off its grid, degenerate operator intervals, ...).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& m) : Error("domain", m) {}
};

/// An order field whose range leaves a single band [n-1, n) or mixes signs.
class BandCrossingError : public Error {
public:
    explicit BandCrossingError(const std::string& m) : Error("band", m) {}
};

/// Non-integrable kernel exponent (beta >= 1).
class ExponentError : public Error {
public:
    explicit ExponentError(const std::string& m) : Error("exponent", m) {}
};

/// Order too close to an integer from below: Gamma(n - d) blows up.
class PoleGuardError : public Error {
public:
    explicit PoleGuardError(const std::string& m) : Error("pole_guard", m) {}
};

/// Grid too small for the requested finite-difference stencil.
class ResolutionError : public Error {
public:
    explicit ResolutionError(const std::string& m) : Error("resolution", m) {}
};

/// Regularization-parameter fit with a numerically zero coefficient column.
class SingularCalibrationError : public Error {
public:
    explicit SingularCalibrationError(const std::string& m)
        : Error("singular_calibration", m) {}
};

/// Vanishing diagonal weight in the marching solve.
class ZeroPivotError : public Error {
public:
    explicit ZeroPivotError(const std::string& m) : Error("zero_pivot", m) {}
};

/// Malformed CSV input.
class FormatError : public Error {
public:
    explicit FormatError(const std::string& m) : Error("format", m) {}
};

/// CSV abscissae are not uniformly spaced.
class NonUniformGridError : public Error {
public:
    explicit NonUniformGridError(const std::string& m)
        : Error("nonuniform_grid", m) {}
};

/// Expression-text rejection, with the byte offset of the failure and the
/// token classes that would have been accepted there.
class ParseError : public Error {
public:
    ParseError(std::size_t offset, std::vector<std::string> expected,
               const std::string& m)
        : Error("parse", m), offset_(offset), expected_(std::move(expected)) {}

    std::size_t offset() const noexcept { return offset_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

}  // namespace vofrac
