#include "vofrac/grid_function.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vofrac/errors.hpp"

namespace vofrac {

GridFunction::GridFunction(double a, double b, std::vector<double> values)
    : a_(a), b_(b), values_(std::move(values)) {
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
        throw DomainError("grid requires finite a < b, got [" +
                          std::to_string(a) + ", " + std::to_string(b) + "]");
    }
    if (values_.size() < 2) {
        throw DomainError("grid requires at least 2 points");
    }
    for (double v : values_) {
        if (!std::isfinite(v)) {
            throw DomainError("grid contains non-finite value");
        }
    }
}

double GridFunction::interpolate(double t) const {
    const double slack = 1e-12 * (b_ - a_);
    if (t < a_ - slack || t > b_ + slack) {
        throw DomainError("evaluation at " + std::to_string(t) +
                          " outside sampled range [" + std::to_string(a_) +
                          ", " + std::to_string(b_) + "]");
    }
    return interpolate_clamped(t);
}

double GridFunction::interpolate_clamped(double t) const {
    if (t <= a_) return values_.front();
    if (t >= b_) return values_.back();
    const double pos = (t - a_) / h();
    std::size_t i = static_cast<std::size_t>(pos);
    i = std::min(i, values_.size() - 2);
    const double theta = (t - node(i)) / h();
    return values_[i] + theta * (values_[i + 1] - values_[i]);
}

}  // namespace vofrac
