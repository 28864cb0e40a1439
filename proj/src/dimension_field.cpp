#include "vofrac/dimension_field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vofrac/errors.hpp"

namespace vofrac {

DimensionField DimensionField::constant(double d) {
    if (!std::isfinite(d)) throw DomainError("order must be finite");
    DimensionField f;
    f.kind_ = Kind::constant;
    f.constant_ = d;
    f.d_min_ = f.d_max_ = d;
    return f;
}

DimensionField DimensionField::from_expression(Expression e, double lo,
                                               double hi,
                                               std::size_t samples) {
    if (!(lo < hi)) throw DomainError("expression field needs lo < hi");
    DimensionField f;
    f.kind_ = Kind::expression;
    f.expr_ = std::make_shared<Expression>(std::move(e));
    // Dense range scan; continuity of d makes this sufficient at the
    // documented resolution. Both variable names bind to the sampled
    // coordinate so the same payload works on either axis.
    samples = std::max<std::size_t>(samples, 3);
    double mn = f.expr_->eval(EvalVars{lo, lo});
    double mx = mn;
    for (std::size_t i = 1; i < samples; ++i) {
        const double t =
            lo + (hi - lo) * static_cast<double>(i) /
                     static_cast<double>(samples - 1);
        const double d = f.expr_->eval(EvalVars{t, t});
        if (!std::isfinite(d)) {
            throw DomainError("order expression non-finite at t = " +
                              std::to_string(t));
        }
        mn = std::min(mn, d);
        mx = std::max(mx, d);
    }
    f.d_min_ = mn;
    f.d_max_ = mx;
    return f;
}

DimensionField DimensionField::from_expression(std::string_view src, double lo,
                                               double hi,
                                               std::size_t samples) {
    return from_expression(Expression::parse(src), lo, hi, samples);
}

DimensionField DimensionField::tabulated(std::vector<double> ts,
                                         std::vector<double> ds) {
    if (ts.size() != ds.size() || ts.size() < 2) {
        throw DomainError("tabulated order needs matching arrays of >= 2 points");
    }
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        if (!(ts[i] < ts[i + 1])) {
            throw DomainError("tabulated order abscissae must be strictly increasing");
        }
    }
    DimensionField f;
    f.kind_ = Kind::tabulated;
    auto table = std::make_shared<Table>();
    table->ts = std::move(ts);
    table->ds = std::move(ds);
    // Linear interpolation with endpoint clamping never leaves the hull of
    // the node values.
    f.d_min_ = *std::min_element(table->ds.begin(), table->ds.end());
    f.d_max_ = *std::max_element(table->ds.begin(), table->ds.end());
    if (!std::isfinite(f.d_min_) || !std::isfinite(f.d_max_)) {
        throw DomainError("tabulated order contains non-finite value");
    }
    f.table_ = std::move(table);
    return f;
}

double DimensionField::eval(double v, Axis axis,
                            std::optional<double> parameter) const {
    switch (kind_) {
        case Kind::constant:
            return constant_;
        case Kind::expression:
            return expr_->eval(bind_axis(axis, v, parameter));
        case Kind::tabulated: {
            const auto& ts = table_->ts;
            const auto& ds = table_->ds;
            if (v <= ts.front()) return ds.front();
            if (v >= ts.back()) return ds.back();
            const auto it = std::upper_bound(ts.begin(), ts.end(), v);
            const std::size_t i = static_cast<std::size_t>(it - ts.begin()) - 1;
            const double theta = (v - ts[i]) / (ts[i + 1] - ts[i]);
            return ds[i] + theta * (ds[i + 1] - ds[i]);
        }
    }
    throw DomainError("corrupt dimension field");
}

DimensionField DimensionField::affine(double a0, double a1) const {
    DimensionField f;
    f.kind_ = kind_;
    const double lo = a0 + a1 * d_min_;
    const double hi = a0 + a1 * d_max_;
    f.d_min_ = std::min(lo, hi);
    f.d_max_ = std::max(lo, hi);
    switch (kind_) {
        case Kind::constant:
            f.constant_ = a0 + a1 * constant_;
            break;
        case Kind::expression:
            f.expr_ = std::make_shared<Expression>(
                Expression::affine(a0, a1, *expr_));
            break;
        case Kind::tabulated: {
            auto table = std::make_shared<Table>(*table_);
            for (double& d : table->ds) d = a0 + a1 * d;
            f.table_ = std::move(table);
            break;
        }
    }
    return f;
}

std::string DimensionField::describe() const {
    switch (kind_) {
        case Kind::constant:
            return "const " + std::to_string(constant_);
        case Kind::expression:
            return expr_->text();
        case Kind::tabulated:
            return "tabulated[" + std::to_string(table_->ts.size()) + "]";
    }
    return "?";
}

int order_index(const DimensionField& field) {
    const double lo = field.d_min();
    const double hi = field.d_max();
    if (hi < 0.0) return 0;  // pure integral band
    if (lo < 0.0) {
        throw BandCrossingError(
            "order range [" + std::to_string(lo) + ", " + std::to_string(hi) +
            "] mixes signs");
    }
    const int n = static_cast<int>(std::floor(lo)) + 1;
    if (!(hi < static_cast<double>(n))) {
        throw BandCrossingError(
            "order range [" + std::to_string(lo) + ", " + std::to_string(hi) +
            "] spans the integer " + std::to_string(n));
    }
    return n;
}

}  // namespace vofrac
