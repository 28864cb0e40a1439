#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "vofrac/dimension_field.hpp"
#include "vofrac/function_spec.hpp"
#include "vofrac/operators.hpp"

namespace vofrac {

/// The near-integer order deviation: d = 1 - eps (below-one branch) or
/// d = 1 + eps (above-one branch), with the regularization sign choice a
/// and the regularization parameter alpha.
struct EpsilonField {
    /// Validates sup |eps| < 0.5 over the field's sampled range and
    /// sign_a in {-1, +1}.
    EpsilonField(DimensionField eps_field, int sign = -1, double alpha_v = 1.0);

    DimensionField eps;
    int sign_a;
    double alpha;

    double eval(double t) const { return eps.eval(t); }
};

/// Order 1 - eps approximated through ordinary derivatives:
///   f'(t) + sign_a * d/dt[ alpha eps f / Gamma(1 + eps) ].
/// Inner derivatives are centered second-order differences.
double approx_below_one(const FunctionSpec& f, const EpsilonField& e, double t);

/// Order 1 + eps approximated through ordinary derivatives:
///   d/dt[ f / Gamma(1 - eps) ] + sign_a * d/dt[ alpha eps f / Gamma(1 - eps) ].
double approx_above_one(const FunctionSpec& f, const EpsilonField& e, double t);

/// The logarithmic form of the below-one branch with alpha pinned to ln t0:
///   f'(t) + d/dt[ ln(t0) eps f / Gamma(1 + eps) ].
/// Meaningful for t near t0. Throws DomainError for t0 <= 0; for t0 <= 1
/// (alpha <= 0) the optional flag is set instead of failing.
double approx_log_form(const FunctionSpec& f, const EpsilonField& e, double t,
                       double t0, bool* alpha_nonpositive = nullptr);

/// Covariant-derivative shape of the above-one branch: value = A f' - B f
/// with A = Gamma(1-eps)^{-1} + a eps and
/// B = Gamma(1-eps)^{-2} (1 + a eps) dGamma/dt - a deps/dt, where
/// dGamma(1-eps)/dt = -Gamma(1-eps) psi(1-eps) deps/dt by the chain rule.
struct CovariantResult {
    double A;
    double B;
    double value;
};
CovariantResult covariant_form(const FunctionSpec& f, const EpsilonField& e,
                               double t);

enum class ApproxBranch { below, above };

/// Side-by-side evaluation of an approximation formula against the direct
/// operator on a window grid.
struct ApproxComparison {
    std::vector<double> t_grid;
    std::vector<double> approx;
    std::vector<double> direct;
    std::vector<double> abs_err;
    double max_rel_err = 0.0;
    double alpha_used = 0.0;
};

struct CalibrationResult {
    double alpha;
    ApproxComparison report;
};

/// Least-squares fit of alpha on a 33-point grid over the window: the
/// approximation is affine in alpha, so the optimum is closed-form. The
/// reference column is the direct left operator with order 1 -/+ eps built
/// from the field. `spec` supplies the operator interval and quadrature
/// configuration. Throws SingularCalibrationError when the alpha column is
/// numerically zero (e.g. eps identically 0).
CalibrationResult calibrate_alpha(const FunctionSpec& f, const EpsilonField& e,
                                  std::pair<double, double> window,
                                  ApproxBranch which, const OperatorSpec& spec);

/// Same fit against caller-provided reference values on the window grid
/// (33 points); used for self-consistency checks with manufactured data.
CalibrationResult calibrate_alpha_against(const FunctionSpec& f,
                                          const EpsilonField& e,
                                          std::pair<double, double> window,
                                          ApproxBranch which,
                                          std::span<const double> reference);

/// Comparison report at a fixed alpha (no fitting), direct side as in
/// calibrate_alpha.
ApproxComparison compare_approx(const FunctionSpec& f, const EpsilonField& e,
                                std::pair<double, double> window,
                                ApproxBranch which, const OperatorSpec& spec,
                                std::optional<double> alpha = {});

/// The 33-point inclusive window grid used by calibration and comparison.
std::vector<double> window_grid(std::pair<double, double> window);

}  // namespace vofrac
