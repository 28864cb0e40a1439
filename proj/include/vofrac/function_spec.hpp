#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "vofrac/expression.hpp"
#include "vofrac/grid_function.hpp"

namespace vofrac {

/// The function an operator acts on: a catalog entry, a parsed expression,
/// or sampled data. Sampled payloads evaluate by linear interpolation on
/// their own grid and refuse points outside it.
class FunctionSpec {
public:
    enum class Kind { catalog, expression, sampled };

    static FunctionSpec power(double p);                        // v^p
    static FunctionSpec polynomial(std::vector<double> coeffs);  // c0 + c1 v + ...
    static FunctionSpec exponential(double scale);               // exp(scale v)
    static FunctionSpec sine(double scale);                      // sin(scale v)
    static FunctionSpec cosine(double scale);                    // cos(scale v)
    static FunctionSpec from_expression(Expression e);
    static FunctionSpec from_expression(std::string_view src);
    static FunctionSpec sampled(GridFunction g);

    Kind kind() const noexcept { return kind_; }

    double eval(double v, Axis axis = Axis::time,
                std::optional<double> parameter = {}) const;

    std::string describe() const;

private:
    enum class Catalog { power, polynomial, exponential, sine, cosine };

    FunctionSpec() = default;

    Kind kind_ = Kind::catalog;
    Catalog catalog_ = Catalog::power;
    double param_ = 0.0;
    std::vector<double> coeffs_;
    std::shared_ptr<const Expression> expr_;
    std::shared_ptr<const GridFunction> samples_;
};

}  // namespace vofrac
