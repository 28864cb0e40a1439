#pragma once

#include <cstddef>
#include <vector>

namespace vofrac {

/// Uniform samples of a real function on [a, b]. Spacing is implied by the
/// endpoints and the sample count; nodes are a + (b-a)*i/(n-1) so both
/// endpoints are hit exactly.
class GridFunction {
public:
    /// Validates a < b, at least two samples, all values finite.
    GridFunction(double a, double b, std::vector<double> values);

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    std::size_t n_points() const noexcept { return values_.size(); }
    double h() const noexcept {
        return (b_ - a_) / static_cast<double>(values_.size() - 1);
    }
    double node(std::size_t i) const noexcept {
        return a_ + (b_ - a_) * static_cast<double>(i) /
                        static_cast<double>(values_.size() - 1);
    }
    const std::vector<double>& values() const noexcept { return values_; }
    double value(std::size_t i) const { return values_[i]; }

    /// Linear interpolation; throws DomainError outside [a, b] (with a tiny
    /// rounding slack at the ends).
    double interpolate(double t) const;

    /// Linear interpolation clamped to the endpoint values outside [a, b].
    double interpolate_clamped(double t) const;

private:
    double a_;
    double b_;
    std::vector<double> values_;
};

}  // namespace vofrac
