#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "vofrac/dimension_field.hpp"
#include "vofrac/function_spec.hpp"
#include "vofrac/grid_function.hpp"

namespace vofrac {

/// Where the slowly varying factors (f/Gamma and the kernel exponent) are
/// frozen within each product-integration subinterval.
enum class FreezeRule { midpoint, left };

/// Finite-difference stencil for the outer n-th derivative.
enum class OuterStencil { central2, central4 };

struct QuadratureConfig {
    std::size_t n_points = 4097;
    FreezeRule freeze_rule = FreezeRule::midpoint;
    OuterStencil outer_stencil = OuterStencil::central2;
    double outer_step_factor = 1.0;  // outer step = factor * inner step
    double pole_guard = 1e-9;        // reject n - d(node) below this

    /// Throws DomainError on an invalid configuration.
    void validate() const;
};

/// Exact integral of the power-law weight (t - t')^{-beta} over
/// [lower, upper], upper <= t, beta < 1:
///   [(t-lower)^{1-beta} - (t-upper)^{1-beta}] / (1-beta).
/// Throws ExponentError for beta >= 1 (non-integrable singularity).
double kernel_moment(double t, double lower, double upper, double beta);

/// Mirror moment for the right-sided kernel (t' - t)^{-beta} over
/// [lower, upper] with t <= lower < upper.
double kernel_moment_right(double t, double lower, double upper, double beta);

/// Product integration of the weakly singular convolution
///   integral_a^t f(t') / [Gamma(n - d(t')) (t - t')^{d(t')-n+1}] dt'
/// over cfg.n_points - 1 equal subintervals of [a, t]; within each, the
/// exponent and the f/Gamma factor are held at the node picked by
/// freeze_rule while the power-law weight is integrated exactly, so the
/// integrable singularity at t' = t is never sampled.
double singular_convolve(const FunctionSpec& f, const DimensionField& d,
                         double a, double t, int n,
                         const QuadratureConfig& cfg,
                         Axis axis = Axis::time,
                         std::optional<double> parameter = {});

/// Right-sided analogue over [t, b] with kernel (t' - t)^{d(t')-n+1}.
double singular_convolve_right(const FunctionSpec& f, const DimensionField& d,
                               double b, double t, int n,
                               const QuadratureConfig& cfg,
                               Axis axis = Axis::time,
                               std::optional<double> parameter = {});

/// Result of a grid derivative: values plus the inclusive index range where
/// the full centered stencil had support.
struct DerivedGrid {
    GridFunction grid;
    std::size_t trust_begin;
    std::size_t trust_end;  // inclusive
};

/// n-th derivative of a sampled function by applying the configured
/// first-derivative stencil n times. Interior points use the centered
/// stencil, boundary points one-sided stencils of matching order; the trust
/// region shrinks by the stencil radius per application. n = 0 returns the
/// input unchanged. Throws ResolutionError when the grid is too small.
DerivedGrid outer_derivative(const GridFunction& g, int n,
                             const QuadratureConfig& cfg);

/// Fornberg weights: coefficients w_i such that sum_i w_i f(nodes[i])
/// approximates the m-th derivative of f at x0.
std::vector<double> fd_weights(double x0, std::span<const double> nodes, int m);

/// Offsets (in units of the step) and coefficients (to be divided by
/// step^n) of the centered first-derivative stencil composed n times.
struct ComposedStencil {
    std::vector<int> offsets;
    std::vector<double> coeffs;  // divide by step^n
    int radius;                  // max |offset|
};
ComposedStencil composed_central_stencil(OuterStencil stencil, int n);

}  // namespace vofrac
