#include "vofrac/quadrature.hpp"

#include <cmath>
#include <map>
#include <string>

#include "vofrac/errors.hpp"
#include "vofrac/special_functions.hpp"

namespace vofrac {

void QuadratureConfig::validate() const {
    if (n_points < 9) {
        throw DomainError("n_points must be >= 9, got " +
                          std::to_string(n_points));
    }
    if (!(pole_guard > 0.0) || !(pole_guard < 0.5)) {
        throw DomainError("pole guard must lie in (0, 0.5)");
    }
    if (!(outer_step_factor > 0.0)) {
        throw DomainError("outer step factor must be positive");
    }
}

double kernel_moment(double t, double lower, double upper, double beta) {
    if (beta >= 1.0) {
        throw ExponentError("kernel exponent beta = " + std::to_string(beta) +
                            " is not integrable (needs beta < 1)");
    }
    if (!(lower < upper) || !(upper <= t)) {
        throw DomainError("kernel moment needs lower < upper <= t");
    }
    const double gamma_exp = 1.0 - beta;
    const double head = std::pow(t - lower, gamma_exp);
    const double tail = upper == t ? 0.0 : std::pow(t - upper, gamma_exp);
    return (head - tail) / gamma_exp;
}

double kernel_moment_right(double t, double lower, double upper, double beta) {
    if (beta >= 1.0) {
        throw ExponentError("kernel exponent beta = " + std::to_string(beta) +
                            " is not integrable (needs beta < 1)");
    }
    if (!(lower < upper) || !(t <= lower)) {
        throw DomainError("right kernel moment needs t <= lower < upper");
    }
    const double gamma_exp = 1.0 - beta;
    const double head = std::pow(upper - t, gamma_exp);
    const double tail = lower == t ? 0.0 : std::pow(lower - t, gamma_exp);
    return (head - tail) / gamma_exp;
}

namespace {

enum class KernelSide { left, right };

// Shared product-integration loop. For the left side the integral runs over
// [lo, hi] = [a, t] with weight (t - t')^{-beta}; for the right side over
// [lo, hi] = [t, b] with weight (t' - t)^{-beta}.
double convolve_impl(const FunctionSpec& f, const DimensionField& d,
                     double lo, double hi, double t, int n,
                     const QuadratureConfig& cfg, KernelSide side, Axis axis,
                     std::optional<double> parameter) {
    cfg.validate();
    if (!(lo < hi)) {
        throw DomainError("empty integration interval [" + std::to_string(lo) +
                          ", " + std::to_string(hi) + "]");
    }
    if (n < 0) throw DomainError("negative band index");
    // The band must match the field the caller passed.
    if (n == 0) {
        if (!(d.d_max() < 0.0)) {
            throw BandCrossingError("band 0 requires a negative order range");
        }
    } else if (!(d.d_min() >= n - 1 && d.d_max() < n)) {
        throw BandCrossingError(
            "order range [" + std::to_string(d.d_min()) + ", " +
            std::to_string(d.d_max()) + "] does not fit band " +
            std::to_string(n));
    }

    const std::size_t cells = cfg.n_points - 1;
    const double width = hi - lo;
    const double nd = static_cast<double>(n);

    double acc = 0.0;
    for (std::size_t j = 0; j < cells; ++j) {
        const double t0 = lo + width * static_cast<double>(j) /
                                   static_cast<double>(cells);
        const double t1 = lo + width * static_cast<double>(j + 1) /
                                   static_cast<double>(cells);
        const double star = cfg.freeze_rule == FreezeRule::midpoint
                                ? 0.5 * (t0 + t1)
                                : t0;
        const double d_star = d.eval(star, axis, parameter);
        const double gap = nd - d_star;
        if (gap < cfg.pole_guard) {
            throw PoleGuardError(
                "order " + std::to_string(d_star) + " within " +
                std::to_string(cfg.pole_guard) + " of the band edge " +
                std::to_string(n) + " at node " + std::to_string(star));
        }
        const double beta = d_star - nd + 1.0;
        const double moment = side == KernelSide::left
                                  ? kernel_moment(t, t0, t1, beta)
                                  : kernel_moment_right(t, t0, t1, beta);
        acc += f.eval(star, axis, parameter) / gamma(gap) * moment;
    }
    return acc;
}

}  // namespace

double singular_convolve(const FunctionSpec& f, const DimensionField& d,
                         double a, double t, int n,
                         const QuadratureConfig& cfg, Axis axis,
                         std::optional<double> parameter) {
    return convolve_impl(f, d, a, t, t, n, cfg, KernelSide::left, axis,
                         parameter);
}

double singular_convolve_right(const FunctionSpec& f, const DimensionField& d,
                               double b, double t, int n,
                               const QuadratureConfig& cfg, Axis axis,
                               std::optional<double> parameter) {
    return convolve_impl(f, d, t, b, t, n, cfg, KernelSide::right, axis,
                         parameter);
}

std::vector<double> fd_weights(double x0, std::span<const double> nodes,
                               int m) {
    // Fornberg's recursion for finite-difference weights on arbitrary nodes.
    const int nn = static_cast<int>(nodes.size());
    std::vector<std::vector<double>> w(
        static_cast<std::size_t>(nn),
        std::vector<double>(static_cast<std::size_t>(m) + 1, 0.0));
    double c1 = 1.0;
    double c4 = nodes[0] - x0;
    w[0][0] = 1.0;
    for (int i = 1; i < nn; ++i) {
        const int mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = nodes[static_cast<std::size_t>(i)] - x0;
        for (int j = 0; j < i; ++j) {
            const double c3 = nodes[static_cast<std::size_t>(i)] -
                              nodes[static_cast<std::size_t>(j)];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) {
                    w[i][k] = c1 *
                              (k * w[i - 1][k - 1] - c5 * w[i - 1][k]) / c2;
                }
                w[i][0] = -c1 * c5 * w[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k) {
                w[j][k] = (c4 * w[j][k] - k * w[j][k - 1]) / c3;
            }
            w[j][0] = c4 * w[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> out(static_cast<std::size_t>(nn));
    for (int i = 0; i < nn; ++i) out[static_cast<std::size_t>(i)] = w[i][m];
    return out;
}

ComposedStencil composed_central_stencil(OuterStencil stencil, int n) {
    // Base first-derivative stencil in offset -> coefficient form.
    std::map<int, double> base;
    if (stencil == OuterStencil::central2) {
        base = {{-1, -0.5}, {1, 0.5}};
    } else {
        base = {{-2, 1.0 / 12.0}, {-1, -8.0 / 12.0}, {1, 8.0 / 12.0},
                {2, -1.0 / 12.0}};
    }
    std::map<int, double> acc = {{0, 1.0}};
    for (int k = 0; k < n; ++k) {
        std::map<int, double> next;
        for (const auto& [off_a, c_a] : acc) {
            for (const auto& [off_b, c_b] : base) {
                next[off_a + off_b] += c_a * c_b;
            }
        }
        acc = std::move(next);
    }
    ComposedStencil out;
    out.radius = 0;
    for (const auto& [off, c] : acc) {
        if (c == 0.0) continue;
        out.offsets.push_back(off);
        out.coeffs.push_back(c);
        out.radius = std::max(out.radius, std::abs(off));
    }
    return out;
}

namespace {

// One pass of the first-derivative stencil over the whole grid. Boundary
// rows fall back to one-sided stencils of the same order.
std::vector<double> derivative_pass(const GridFunction& base,
                                    std::span<const double> vals,
                                    OuterStencil stencil) {
    const std::size_t n = vals.size();
    const double h = base.h();
    const int radius = stencil == OuterStencil::central2 ? 1 : 2;
    const int width = stencil == OuterStencil::central2 ? 3 : 5;
    std::vector<double> out(n, 0.0);

    std::vector<double> offsets(static_cast<std::size_t>(width));
    for (std::size_t i = 0; i < n; ++i) {
        long first = static_cast<long>(i) - radius;
        first = std::max(first, 0L);
        first = std::min(first, static_cast<long>(n) - width);
        for (int k = 0; k < width; ++k) {
            offsets[static_cast<std::size_t>(k)] =
                static_cast<double>(first + k - static_cast<long>(i)) * h;
        }
        const auto w = fd_weights(0.0, offsets, 1);
        double acc = 0.0;
        for (int k = 0; k < width; ++k) {
            acc += w[static_cast<std::size_t>(k)] *
                   vals[static_cast<std::size_t>(first + k)];
        }
        out[i] = acc;
    }
    return out;
}

}  // namespace

DerivedGrid outer_derivative(const GridFunction& g, int n,
                             const QuadratureConfig& cfg) {
    if (n < 0) throw DomainError("derivative order must be >= 0");
    if (n == 0) {
        return DerivedGrid{g, 0, g.n_points() - 1};
    }
    const int radius = cfg.outer_stencil == OuterStencil::central2 ? 1 : 2;
    const std::size_t needed =
        std::max<std::size_t>(2 * static_cast<std::size_t>(n * radius) + 5,
                              static_cast<std::size_t>(2 * n + 5));
    if (g.n_points() < needed) {
        throw ResolutionError("grid of " + std::to_string(g.n_points()) +
                              " points is too small for derivative order " +
                              std::to_string(n) + " (needs >= " +
                              std::to_string(needed) + ")");
    }
    std::vector<double> vals = g.values();
    for (int k = 0; k < n; ++k) {
        vals = derivative_pass(g, vals, cfg.outer_stencil);
    }
    const std::size_t margin = static_cast<std::size_t>(n * radius);
    return DerivedGrid{GridFunction(g.a(), g.b(), std::move(vals)), margin,
                       g.n_points() - 1 - margin};
}

}  // namespace vofrac
