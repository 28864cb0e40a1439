#include "vofrac/function_spec.hpp"

#include <cmath>

#include "vofrac/errors.hpp"

namespace vofrac {

FunctionSpec FunctionSpec::power(double p) {
    FunctionSpec f;
    f.kind_ = Kind::catalog;
    f.catalog_ = Catalog::power;
    f.param_ = p;
    return f;
}

FunctionSpec FunctionSpec::polynomial(std::vector<double> coeffs) {
    if (coeffs.empty()) throw DomainError("polynomial needs coefficients");
    FunctionSpec f;
    f.kind_ = Kind::catalog;
    f.catalog_ = Catalog::polynomial;
    f.coeffs_ = std::move(coeffs);
    return f;
}

FunctionSpec FunctionSpec::exponential(double scale) {
    FunctionSpec f;
    f.kind_ = Kind::catalog;
    f.catalog_ = Catalog::exponential;
    f.param_ = scale;
    return f;
}

FunctionSpec FunctionSpec::sine(double scale) {
    FunctionSpec f;
    f.kind_ = Kind::catalog;
    f.catalog_ = Catalog::sine;
    f.param_ = scale;
    return f;
}

FunctionSpec FunctionSpec::cosine(double scale) {
    FunctionSpec f;
    f.kind_ = Kind::catalog;
    f.catalog_ = Catalog::cosine;
    f.param_ = scale;
    return f;
}

FunctionSpec FunctionSpec::from_expression(Expression e) {
    FunctionSpec f;
    f.kind_ = Kind::expression;
    f.expr_ = std::make_shared<Expression>(std::move(e));
    return f;
}

FunctionSpec FunctionSpec::from_expression(std::string_view src) {
    return from_expression(Expression::parse(src));
}

FunctionSpec FunctionSpec::sampled(GridFunction g) {
    FunctionSpec f;
    f.kind_ = Kind::sampled;
    f.samples_ = std::make_shared<GridFunction>(std::move(g));
    return f;
}

double FunctionSpec::eval(double v, Axis axis,
                          std::optional<double> parameter) const {
    switch (kind_) {
        case Kind::catalog:
            switch (catalog_) {
                case Catalog::power: {
                    const double r = std::pow(v, param_);
                    if (!std::isfinite(r)) {
                        throw DomainError("power function undefined at " +
                                          std::to_string(v));
                    }
                    return r;
                }
                case Catalog::polynomial: {
                    double acc = 0.0;
                    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
                        acc = acc * v + *it;
                    }
                    return acc;
                }
                case Catalog::exponential:
                    return std::exp(param_ * v);
                case Catalog::sine:
                    return std::sin(param_ * v);
                case Catalog::cosine:
                    return std::cos(param_ * v);
            }
            break;
        case Kind::expression:
            return expr_->eval(bind_axis(axis, v, parameter));
        case Kind::sampled:
            return samples_->interpolate(v);
    }
    throw DomainError("corrupt function spec");
}

std::string FunctionSpec::describe() const {
    switch (kind_) {
        case Kind::catalog:
            switch (catalog_) {
                case Catalog::power:
                    return "v^" + std::to_string(param_);
                case Catalog::polynomial:
                    return "poly[" + std::to_string(coeffs_.size()) + "]";
                case Catalog::exponential:
                    return "exp(" + std::to_string(param_) + " v)";
                case Catalog::sine:
                    return "sin(" + std::to_string(param_) + " v)";
                case Catalog::cosine:
                    return "cos(" + std::to_string(param_) + " v)";
            }
            break;
        case Kind::expression:
            return expr_->text();
        case Kind::sampled:
            return "sampled[" + std::to_string(samples_->n_points()) + "]";
    }
    return "?";
}

}  // namespace vofrac
