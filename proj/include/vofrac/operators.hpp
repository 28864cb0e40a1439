#pragma once

#include <span>
#include <string>
#include <vector>

#include "vofrac/dimension_field.hpp"
#include "vofrac/function_spec.hpp"
#include "vofrac/quadrature.hpp"

namespace vofrac {

enum class Side { left, right, symmetric };

/// Which operator to apply and where. `a` and `b` bound the admissible
/// evaluation points; the one-sided integrals themselves run over [a, t]
/// (left) or [t, b] (right). `parameter` optionally fixes the off-axis
/// variable for expressions that use both t and x.
struct OperatorSpec {
    Side side = Side::left;
    Axis axis = Axis::time;
    double a = 0.0;
    double b = 1.0;
    DimensionField d_field = DimensionField::constant(0.5);
    QuadratureConfig cfg;
    std::optional<double> parameter;

    void validate() const;
};

enum class Trust { interior, boundary };

struct EvalResult {
    double t = 0.0;      // evaluation point (the spatial coordinate for axis=space)
    double value = 0.0;
    Trust trust = Trust::interior;
    std::string scheme_id;
};

/// Classical left-sided operator of constant order d over [a, t]: the
/// weakly singular convolution followed by n outer derivatives, with exact
/// dispatch to the plain m-th derivative (identity for m = 0) when d is an
/// integer m >= 0 within 1e-14. d < 0 is the fractional integral of
/// order |d|.
EvalResult rl_left(const FunctionSpec& f, double d, double a, double t,
                   const QuadratureConfig& cfg);

/// Right-sided mirror over [t, b] with the (-1)^n prefactor.
EvalResult rl_right(const FunctionSpec& f, double d, double b, double t,
                    const QuadratureConfig& cfg);

/// Variable-order left operator: order, kernel exponent and gamma factor all
/// evaluate the field at the integration variable. Coincides with rl_left
/// when the field is constant (same code path).
EvalResult gfd_left(const FunctionSpec& f, const OperatorSpec& spec, double t);

EvalResult gfd_right(const FunctionSpec& f, const OperatorSpec& spec, double t);

/// Arithmetic mean of the left and right results at t.
EvalResult gfd_symmetric(const FunctionSpec& f, const OperatorSpec& spec,
                         double t);

/// Componentwise 1-D operator along a spatial coordinate; numerics identical
/// to the temporal entry points with the integration variable bound to x.
EvalResult gfd_spatial(const FunctionSpec& f_of_x, const OperatorSpec& spec,
                       double x);

/// Batched evaluation; results are identical to pointwise calls.
std::vector<EvalResult> evaluate_grid(const FunctionSpec& f,
                                      const OperatorSpec& spec,
                                      std::span<const double> points);

}  // namespace vofrac
