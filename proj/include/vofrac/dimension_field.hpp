#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "vofrac/expression.hpp"
#include "vofrac/grid_function.hpp"

namespace vofrac {

/// The order function d(t) (or d(x) along the spatial axis): the fractional
/// order evaluated at the integration variable. Carries its sampled range
/// [d_min, d_max]; whether that range fits a single band [n-1, n) is checked
/// by order_index(), not at construction.
class DimensionField {
public:
    enum class Kind { constant, expression, tabulated };

    static DimensionField constant(double d);

    /// Expression payload. The range is found by sampling `samples`
    /// equispaced points of [lo, hi] plus the endpoints (10x the default
    /// grid resolution unless overridden).
    static DimensionField from_expression(Expression e, double lo, double hi,
                                          std::size_t samples = 40971);
    static DimensionField from_expression(std::string_view src, double lo,
                                          double hi,
                                          std::size_t samples = 40971);

    /// Tabulated payload: strictly increasing abscissae, linear
    /// interpolation, clamped to the end values outside the table.
    static DimensionField tabulated(std::vector<double> ts,
                                    std::vector<double> ds);

    Kind kind() const noexcept { return kind_; }
    double d_min() const noexcept { return d_min_; }
    double d_max() const noexcept { return d_max_; }
    bool is_constant() const noexcept { return kind_ == Kind::constant; }

    /// d evaluated at the axis coordinate `v`.
    double eval(double v, Axis axis = Axis::time,
                std::optional<double> parameter = {}) const;

    /// a0 + a1 * d(.), preserving the payload kind; the range transforms
    /// exactly, no resampling.
    DimensionField affine(double a0, double a1) const;

    /// A short payload description for config echoes.
    std::string describe() const;

private:
    DimensionField() = default;

    struct Table {
        std::vector<double> ts;
        std::vector<double> ds;
    };

    Kind kind_ = Kind::constant;
    double constant_ = 0.0;
    std::shared_ptr<const Expression> expr_;
    std::shared_ptr<const Table> table_;
    double d_min_ = 0.0;
    double d_max_ = 0.0;
};

/// The outer-derivative count n for a field: n - 1 <= d < n for d >= 0,
/// n = 0 when d stays negative. Throws BandCrossingError when the sampled
/// range spans an integer or mixes signs.
int order_index(const DimensionField& field);

}  // namespace vofrac
