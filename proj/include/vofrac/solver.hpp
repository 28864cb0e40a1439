#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "vofrac/dimension_field.hpp"
#include "vofrac/function_spec.hpp"
#include "vofrac/grid_function.hpp"
#include "vofrac/quadrature.hpp"

namespace vofrac {

/// The order as a function of the unknown solution value.
class OrderMap {
public:
    /// d = d0 + kappa * f
    static OrderMap affine(double d0, double kappa);

    /// Linear interpolation over (f, d) pairs with strictly increasing f,
    /// clamped to the end values outside the table.
    static OrderMap tabulated(std::vector<double> f_values,
                              std::vector<double> d_values);

    double eval(double f_value) const;

private:
    OrderMap() = default;
    bool affine_ = true;
    double d0_ = 0.5;
    double kappa_ = 0.0;
    std::vector<double> fs_;
    std::vector<double> ds_;
};

/// The model problem D^{d(f)} f = g on [a, b] with homogeneous left
/// boundary f(a) = 0. The initial guess fixes the solution grid; the order
/// stays inside `clamp` (a subinterval of (0, 1)) for every iterate, which
/// keeps the marching system in band 1 and away from the Gamma pole.
struct ModelProblem {
    FunctionSpec g = FunctionSpec::polynomial({0.0});
    OrderMap d_of_f = OrderMap::affine(0.5, 0.0);
    std::pair<double, double> clamp{0.05, 0.95};
    double a = 0.0;
    double b = 1.0;
    GridFunction initial_guess{0.0, 1.0, {0.0, 0.0}};
    QuadratureConfig cfg;  // freeze rule is always midpoint in the solver

    void validate() const;
    double clamped_order(double f_value) const;
};

struct ForwardResult {
    GridFunction values;
    std::size_t trust_begin;  // indices below this sit in the left boundary layer
};

/// D^{d(f)} f on the problem grid, using the current d(f(t)) as a tabulated
/// order field: product-integration weights composed with the backward
/// first difference (the same composition march_linear inverts).
ForwardResult apply_forward(const GridFunction& f, const ModelProblem& p);

/// Solves the linear problem D^{d} u = g for a fixed order field by forward
/// substitution over the causal (lower triangular) weight structure, with
/// u(a) = 0. g carries the grid.
GridFunction march_linear(const DimensionField& d_field, const GridFunction& g,
                          const QuadratureConfig& cfg = {});

struct SolveReport {
    GridFunction solution{0.0, 1.0, {0.0, 0.0}};
    std::vector<double> residuals;  // sup |f_{k+1} - f_k| per iteration
    int iterations = 0;
    bool converged = false;
    GridFunction d_final{0.0, 1.0, {0.0, 0.0}};
};

/// Damped fixed-point iteration: freeze d at the current iterate, solve the
/// linear problem by marching, relax with weight omega. Non-convergence is
/// reported through the flag, not an exception.
SolveReport solve_fixed_point(const ModelProblem& p, double tol, int max_iter,
                              double omega = 0.5);

}  // namespace vofrac
