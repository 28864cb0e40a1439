#include "vofrac/operators.hpp"

#include <cmath>
#include <string>

#include "vofrac/errors.hpp"

namespace vofrac {

namespace {

constexpr double kIntegerSnap = 1e-14;

enum class OpSide { left, right };

std::string stencil_name(OuterStencil s) {
    return s == OuterStencil::central2 ? "c2" : "c4";
}

std::string freeze_name(FreezeRule r) {
    return r == FreezeRule::midpoint ? "mid" : "left";
}

std::string scheme_tag(OpSide side, Axis axis, const std::string& band,
                       const QuadratureConfig& cfg) {
    std::string s = side == OpSide::left ? "left" : "right";
    if (axis == Axis::space) s += "/x";
    return s + "|" + band + "|" + freeze_name(cfg.freeze_rule) + "|" +
           stencil_name(cfg.outer_stencil) + "|N=" +
           std::to_string(cfg.n_points);
}

// m-th derivative of f at t with the configured centered stencil composed
// m times.
double plain_derivative(const FunctionSpec& f, double t, int m, double step,
                        const QuadratureConfig& cfg, Axis axis,
                        std::optional<double> parameter) {
    if (m == 0) return f.eval(t, axis, parameter);
    const ComposedStencil cs =
        composed_central_stencil(cfg.outer_stencil, m);
    double acc = 0.0;
    for (std::size_t i = 0; i < cs.offsets.size(); ++i) {
        acc += cs.coeffs[i] * f.eval(t + cs.offsets[i] * step, axis, parameter);
    }
    return acc / std::pow(step, m);
}

EvalResult eval_one_sided(const FunctionSpec& f, const DimensionField& d,
                          double edge, double t, const QuadratureConfig& cfg,
                          OpSide side, Axis axis,
                          std::optional<double> parameter) {
    cfg.validate();
    const double len = side == OpSide::left ? t - edge : edge - t;
    if (len < 0.0) {
        throw DomainError("evaluation point " + std::to_string(t) +
                          " lies outside the operator interval");
    }
    if (len == 0.0) {
        // Degenerate endpoint: the integral is empty. The d < 0 limit is 0;
        // for d >= 0 no finite limit exists in this scheme.
        if (d.d_max() < 0.0) {
            return EvalResult{t, 0.0, Trust::boundary,
                              scheme_tag(side, axis, "empty", cfg)};
        }
        throw DomainError("operator with nonnegative order undefined at the "
                          "degenerate endpoint t = " + std::to_string(t));
    }

    const double h_ref = len / static_cast<double>(cfg.n_points - 1);
    const double step = cfg.outer_step_factor * h_ref;

    // Exact integer order: bypass the singular kernel entirely.
    if (d.is_constant()) {
        const double dv = d.d_min();
        const double rounded = std::round(dv);
        if (rounded >= 0.0 && std::abs(dv - rounded) <= kIntegerSnap) {
            const int m = static_cast<int>(rounded);
            double value = plain_derivative(f, t, m, step, cfg, axis, parameter);
            if (side == OpSide::right && m % 2 == 1) value = -value;
            if (!std::isfinite(value)) {
                throw DomainError("non-finite operator value at t = " +
                                  std::to_string(t));
            }
            return EvalResult{t, value, Trust::interior,
                              scheme_tag(side, axis,
                                         "int=" + std::to_string(m), cfg)};
        }
        // Only non-negative integers are Gamma hazards; negative integer
        // orders keep n - d >= 1 and integrate cleanly.
        if (rounded >= 0.0 && std::abs(dv - rounded) < cfg.pole_guard) {
            throw PoleGuardError("order " + std::to_string(dv) + " within " +
                                 std::to_string(cfg.pole_guard) +
                                 " of an integer");
        }
    }

    const int n = order_index(d);
    double value = 0.0;
    if (n == 0) {
        value = side == OpSide::left
                    ? singular_convolve(f, d, edge, t, 0, cfg, axis, parameter)
                    : singular_convolve_right(f, d, edge, t, 0, cfg, axis,
                                              parameter);
    } else {
        const ComposedStencil cs =
            composed_central_stencil(cfg.outer_stencil, n);
        if (static_cast<double>(cs.radius) * step >= len) {
            throw ResolutionError("outer stencil wider than the integration "
                                  "interval; increase n_points");
        }
        double acc = 0.0;
        for (std::size_t i = 0; i < cs.offsets.size(); ++i) {
            const double s = t + cs.offsets[i] * step;
            const double inner =
                side == OpSide::left
                    ? singular_convolve(f, d, edge, s, n, cfg, axis, parameter)
                    : singular_convolve_right(f, d, edge, s, n, cfg, axis,
                                              parameter);
            acc += cs.coeffs[i] * inner;
        }
        value = acc / std::pow(step, n);
        if (side == OpSide::right && n % 2 == 1) value = -value;
    }
    if (!std::isfinite(value)) {
        throw DomainError("non-finite operator value at t = " +
                          std::to_string(t));
    }
    return EvalResult{t, value, Trust::interior,
                      scheme_tag(side, axis, "n=" + std::to_string(n), cfg)};
}

EvalResult eval_symmetric(const FunctionSpec& f, const OperatorSpec& spec,
                          double t, Axis axis) {
    if (!(t > spec.a && t < spec.b)) {
        throw DomainError("symmetric operator needs t strictly inside (a, b)");
    }
    const EvalResult lhs = eval_one_sided(f, spec.d_field, spec.a, t, spec.cfg,
                                          OpSide::left, axis, spec.parameter);
    const EvalResult rhs = eval_one_sided(f, spec.d_field, spec.b, t, spec.cfg,
                                          OpSide::right, axis, spec.parameter);
    const Trust trust = lhs.trust == Trust::interior &&
                                rhs.trust == Trust::interior
                            ? Trust::interior
                            : Trust::boundary;
    return EvalResult{t, 0.5 * (lhs.value + rhs.value), trust,
                      "sym(" + lhs.scheme_id + ";" + rhs.scheme_id + ")"};
}

}  // namespace

void OperatorSpec::validate() const {
    if (!(a < b)) {
        throw DomainError("operator interval needs a < b");
    }
    cfg.validate();
}

EvalResult rl_left(const FunctionSpec& f, double d, double a, double t,
                   const QuadratureConfig& cfg) {
    return eval_one_sided(f, DimensionField::constant(d), a, t, cfg,
                          OpSide::left, Axis::time, {});
}

EvalResult rl_right(const FunctionSpec& f, double d, double b, double t,
                    const QuadratureConfig& cfg) {
    return eval_one_sided(f, DimensionField::constant(d), b, t, cfg,
                          OpSide::right, Axis::time, {});
}

EvalResult gfd_left(const FunctionSpec& f, const OperatorSpec& spec, double t) {
    spec.validate();
    if (spec.side != Side::left) {
        throw DomainError("gfd_left requires spec.side = left");
    }
    if (!(t > spec.a) || !(t <= spec.b)) {
        if (t == spec.a) {
            return eval_one_sided(f, spec.d_field, spec.a, t, spec.cfg,
                                  OpSide::left, spec.axis, spec.parameter);
        }
        throw DomainError("left operator needs t in (a, b]");
    }
    return eval_one_sided(f, spec.d_field, spec.a, t, spec.cfg, OpSide::left,
                          spec.axis, spec.parameter);
}

EvalResult gfd_right(const FunctionSpec& f, const OperatorSpec& spec,
                     double t) {
    spec.validate();
    if (spec.side != Side::right) {
        throw DomainError("gfd_right requires spec.side = right");
    }
    if (!(t >= spec.a) || !(t < spec.b)) {
        if (t == spec.b) {
            return eval_one_sided(f, spec.d_field, spec.b, t, spec.cfg,
                                  OpSide::right, spec.axis, spec.parameter);
        }
        throw DomainError("right operator needs t in [a, b)");
    }
    return eval_one_sided(f, spec.d_field, spec.b, t, spec.cfg, OpSide::right,
                          spec.axis, spec.parameter);
}

EvalResult gfd_symmetric(const FunctionSpec& f, const OperatorSpec& spec,
                         double t) {
    spec.validate();
    if (spec.side != Side::symmetric) {
        throw DomainError("gfd_symmetric requires spec.side = symmetric");
    }
    return eval_symmetric(f, spec, t, spec.axis);
}

EvalResult gfd_spatial(const FunctionSpec& f_of_x, const OperatorSpec& spec,
                       double x) {
    spec.validate();
    if (spec.axis != Axis::space) {
        throw DomainError("gfd_spatial requires spec.axis = space");
    }
    switch (spec.side) {
        case Side::left:
            if (x == spec.a || (x > spec.a && x <= spec.b)) {
                return eval_one_sided(f_of_x, spec.d_field, spec.a, x, spec.cfg,
                                      OpSide::left, Axis::space,
                                      spec.parameter);
            }
            throw DomainError("left operator needs x in (a, b]");
        case Side::right:
            if (x == spec.b || (x >= spec.a && x < spec.b)) {
                return eval_one_sided(f_of_x, spec.d_field, spec.b, x, spec.cfg,
                                      OpSide::right, Axis::space,
                                      spec.parameter);
            }
            throw DomainError("right operator needs x in [a, b)");
        case Side::symmetric:
            return eval_symmetric(f_of_x, spec, x, Axis::space);
    }
    throw DomainError("corrupt operator spec");
}

std::vector<EvalResult> evaluate_grid(const FunctionSpec& f,
                                      const OperatorSpec& spec,
                                      std::span<const double> points) {
    std::vector<EvalResult> out;
    out.reserve(points.size());
    for (double t : points) {
        if (spec.axis == Axis::space) {
            out.push_back(gfd_spatial(f, spec, t));
            continue;
        }
        switch (spec.side) {
            case Side::left: out.push_back(gfd_left(f, spec, t)); break;
            case Side::right: out.push_back(gfd_right(f, spec, t)); break;
            case Side::symmetric:
                out.push_back(gfd_symmetric(f, spec, t));
                break;
        }
    }
    return out;
}

}  // namespace vofrac
