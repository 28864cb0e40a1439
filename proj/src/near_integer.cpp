#include "vofrac/near_integer.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "vofrac/errors.hpp"
#include "vofrac/special_functions.hpp"

namespace vofrac {

namespace {

double fd_step(double t) {
    return std::cbrt(std::numeric_limits<double>::epsilon()) *
           std::max(1.0, std::abs(t));
}

template <typename Fn>
double central2(Fn&& fn, double t) {
    const double h = fd_step(t);
    const double hi = t + h;
    const double lo = t - h;
    // Dividing by the actual node separation removes the rounding of t +/- h.
    return (fn(hi) - fn(lo)) / (hi - lo);
}

// alpha-independent and alpha-linear parts of each approximation:
//   approx(t; alpha) = base(t) + alpha * slope(t).
double below_base(const FunctionSpec& f, double t) {
    return central2([&](double s) { return f.eval(s); }, t);
}

double below_slope(const FunctionSpec& f, const EpsilonField& e, double t) {
    auto w = [&](double s) {
        const double eps = e.eval(s);
        return eps * f.eval(s) / gamma(1.0 + eps);
    };
    return e.sign_a * central2(w, t);
}

double above_base(const FunctionSpec& f, const EpsilonField& e, double t) {
    auto w = [&](double s) { return f.eval(s) / gamma(1.0 - e.eval(s)); };
    return central2(w, t);
}

double above_slope(const FunctionSpec& f, const EpsilonField& e, double t) {
    auto w = [&](double s) {
        const double eps = e.eval(s);
        return eps * f.eval(s) / gamma(1.0 - eps);
    };
    return e.sign_a * central2(w, t);
}

double branch_base(const FunctionSpec& f, const EpsilonField& e,
                   ApproxBranch which, double t) {
    return which == ApproxBranch::below ? below_base(f, t)
                                        : above_base(f, e, t);
}

double branch_slope(const FunctionSpec& f, const EpsilonField& e,
                    ApproxBranch which, double t) {
    return which == ApproxBranch::below ? below_slope(f, e, t)
                                        : above_slope(f, e, t);
}

ApproxComparison build_report(const FunctionSpec& f, const EpsilonField& e,
                              ApproxBranch which,
                              std::span<const double> grid,
                              std::span<const double> direct, double alpha) {
    ApproxComparison rep;
    rep.t_grid.assign(grid.begin(), grid.end());
    rep.direct.assign(direct.begin(), direct.end());
    rep.alpha_used = alpha;
    rep.approx.resize(grid.size());
    rep.abs_err.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        rep.approx[i] = branch_base(f, e, which, grid[i]) +
                        alpha * branch_slope(f, e, which, grid[i]);
        rep.abs_err[i] = std::abs(rep.approx[i] - direct[i]);
        const double scale = std::max(std::abs(direct[i]), 1e-300);
        rep.max_rel_err = std::max(rep.max_rel_err, rep.abs_err[i] / scale);
    }
    return rep;
}

std::vector<double> direct_column(const FunctionSpec& f, const EpsilonField& e,
                                  ApproxBranch which, const OperatorSpec& spec,
                                  std::span<const double> grid) {
    OperatorSpec direct = spec;
    direct.side = Side::left;
    direct.d_field = which == ApproxBranch::below ? e.eps.affine(1.0, -1.0)
                                                  : e.eps.affine(1.0, 1.0);
    std::vector<double> out;
    out.reserve(grid.size());
    for (double t : grid) out.push_back(gfd_left(f, direct, t).value);
    return out;
}

CalibrationResult fit_alpha(const FunctionSpec& f, const EpsilonField& e,
                            ApproxBranch which, std::span<const double> grid,
                            std::span<const double> reference) {
    double ss = 0.0;   // sum of slope^2
    double sy = 0.0;   // sum of slope * (reference - base)
    double ref2 = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double s = branch_slope(f, e, which, grid[i]);
        const double r = reference[i] - branch_base(f, e, which, grid[i]);
        ss += s * s;
        sy += s * r;
        ref2 += reference[i] * reference[i];
    }
    if (ss <= 1e-24 * std::max(1.0, ref2)) {
        throw SingularCalibrationError(
            "regularization parameter unidentifiable: the alpha coefficient "
            "column is numerically zero");
    }
    const double alpha = sy / ss;
    return CalibrationResult{
        alpha, build_report(f, e, which, grid, reference, alpha)};
}

}  // namespace

EpsilonField::EpsilonField(DimensionField eps_field, int sign, double alpha_v)
    : eps(std::move(eps_field)), sign_a(sign), alpha(alpha_v) {
    if (sign_a != 1 && sign_a != -1) {
        throw DomainError("sign_a must be +1 or -1");
    }
    if (!std::isfinite(alpha)) {
        throw DomainError("alpha must be finite");
    }
    const double sup = std::max(std::abs(eps.d_min()), std::abs(eps.d_max()));
    if (!(sup < 0.5)) {
        throw DomainError("sup |eps| = " + std::to_string(sup) +
                          " violates the near-integer requirement (< 0.5)");
    }
}

double approx_below_one(const FunctionSpec& f, const EpsilonField& e,
                        double t) {
    return below_base(f, t) + e.alpha * below_slope(f, e, t);
}

double approx_above_one(const FunctionSpec& f, const EpsilonField& e,
                        double t) {
    return above_base(f, e, t) + e.alpha * above_slope(f, e, t);
}

double approx_log_form(const FunctionSpec& f, const EpsilonField& e, double t,
                       double t0, bool* alpha_nonpositive) {
    if (!(t0 > 0.0)) {
        throw DomainError("log-form reference time t0 must be positive");
    }
    const double alpha = std::log(t0);
    if (alpha_nonpositive) *alpha_nonpositive = alpha <= 0.0;
    // f' + d/dt[alpha eps f / Gamma(1+eps)] with no sign selection.
    auto w = [&](double s) {
        const double eps = e.eval(s);
        return alpha * eps * f.eval(s) / gamma(1.0 + eps);
    };
    return below_base(f, t) + central2(w, t);
}

CovariantResult covariant_form(const FunctionSpec& f, const EpsilonField& e,
                               double t) {
    const double a = static_cast<double>(e.sign_a);
    const double eps = e.eval(t);
    const double deps = central2([&](double s) { return e.eval(s); }, t);
    const double g = gamma(1.0 - eps);
    const double dgamma_dt = -g * digamma(1.0 - eps) * deps;
    const double A = 1.0 / g + a * eps;
    const double B = (1.0 + a * eps) / (g * g) * dgamma_dt - a * deps;
    const double fp = below_base(f, t);
    return CovariantResult{A, B, A * fp - B * f.eval(t)};
}

std::vector<double> window_grid(std::pair<double, double> window) {
    constexpr std::size_t kPoints = 33;
    if (!(window.first < window.second)) {
        throw DomainError("window needs lo < hi");
    }
    std::vector<double> grid(kPoints);
    for (std::size_t i = 0; i < kPoints; ++i) {
        grid[i] = window.first + (window.second - window.first) *
                                     static_cast<double>(i) /
                                     static_cast<double>(kPoints - 1);
    }
    return grid;
}

CalibrationResult calibrate_alpha(const FunctionSpec& f, const EpsilonField& e,
                                  std::pair<double, double> window,
                                  ApproxBranch which,
                                  const OperatorSpec& spec) {
    spec.validate();
    if (!(spec.a < window.first && window.second < spec.b)) {
        throw DomainError("calibration window must lie strictly inside (a, b)");
    }
    const auto grid = window_grid(window);
    const auto direct = direct_column(f, e, which, spec, grid);
    return fit_alpha(f, e, which, grid, direct);
}

CalibrationResult calibrate_alpha_against(const FunctionSpec& f,
                                          const EpsilonField& e,
                                          std::pair<double, double> window,
                                          ApproxBranch which,
                                          std::span<const double> reference) {
    const auto grid = window_grid(window);
    if (reference.size() != grid.size()) {
        throw DomainError("reference column must match the 33-point window grid");
    }
    return fit_alpha(f, e, which, grid, reference);
}

ApproxComparison compare_approx(const FunctionSpec& f, const EpsilonField& e,
                                std::pair<double, double> window,
                                ApproxBranch which, const OperatorSpec& spec,
                                std::optional<double> alpha) {
    if (!alpha) return calibrate_alpha(f, e, window, which, spec).report;
    spec.validate();
    if (!(spec.a < window.first && window.second < spec.b)) {
        throw DomainError("comparison window must lie strictly inside (a, b)");
    }
    const auto grid = window_grid(window);
    const auto direct = direct_column(f, e, which, spec, grid);
    return build_report(f, e, which, grid, direct, *alpha);
}

}  // namespace vofrac
