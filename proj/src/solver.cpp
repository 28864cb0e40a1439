#include "vofrac/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vofrac/errors.hpp"
#include "vofrac/special_functions.hpp"

namespace vofrac {

OrderMap OrderMap::affine(double d0, double kappa) {
    OrderMap m;
    m.affine_ = true;
    m.d0_ = d0;
    m.kappa_ = kappa;
    return m;
}

OrderMap OrderMap::tabulated(std::vector<double> f_values,
                             std::vector<double> d_values) {
    if (f_values.size() != d_values.size() || f_values.size() < 2) {
        throw DomainError("order map needs matching arrays of >= 2 points");
    }
    for (std::size_t i = 0; i + 1 < f_values.size(); ++i) {
        if (!(f_values[i] < f_values[i + 1])) {
            throw DomainError("order map abscissae must be strictly increasing");
        }
    }
    OrderMap m;
    m.affine_ = false;
    m.fs_ = std::move(f_values);
    m.ds_ = std::move(d_values);
    return m;
}

double OrderMap::eval(double f_value) const {
    if (affine_) return d0_ + kappa_ * f_value;
    if (f_value <= fs_.front()) return ds_.front();
    if (f_value >= fs_.back()) return ds_.back();
    const auto it = std::upper_bound(fs_.begin(), fs_.end(), f_value);
    const std::size_t i = static_cast<std::size_t>(it - fs_.begin()) - 1;
    const double theta = (f_value - fs_[i]) / (fs_[i + 1] - fs_[i]);
    return ds_[i] + theta * (ds_[i + 1] - ds_[i]);
}

void ModelProblem::validate() const {
    if (!(a < b)) throw DomainError("problem interval needs a < b");
    if (!(0.0 < clamp.first && clamp.first < clamp.second &&
          clamp.second < 1.0)) {
        throw DomainError("order clamp must satisfy 0 < lo < hi < 1");
    }
    if (initial_guess.a() != a || initial_guess.b() != b) {
        throw DomainError("initial guess grid must cover exactly [a, b]");
    }
    if (initial_guess.n_points() < 9) {
        throw ResolutionError("solver grid needs at least 9 points");
    }
    cfg.validate();
}

double ModelProblem::clamped_order(double f_value) const {
    return std::clamp(d_of_f.eval(f_value), clamp.first, clamp.second);
}

namespace {

// Frozen per-cell data of the band-1 product-integration weights on a
// uniform grid: w_{i,j} = moment(t_i, t_j, t_{j+1}, beta_j) * inv_gamma_j.
struct CellData {
    std::vector<double> beta;       // d at the cell midpoint
    std::vector<double> inv_gamma;  // 1 / Gamma(1 - beta)
};

CellData freeze_cells(const GridFunction& grid, const DimensionField& d_field,
                      double pole_guard) {
    const std::size_t cells = grid.n_points() - 1;
    CellData out;
    out.beta.resize(cells);
    out.inv_gamma.resize(cells);
    for (std::size_t j = 0; j < cells; ++j) {
        const double mid = 0.5 * (grid.node(j) + grid.node(j + 1));
        const double d = d_field.eval(mid);
        const double gap = 1.0 - d;
        if (gap < pole_guard) {
            throw PoleGuardError("order " + std::to_string(d) +
                                 " too close to 1 at t = " +
                                 std::to_string(mid));
        }
        out.beta[j] = d;
        out.inv_gamma[j] = 1.0 / gamma(gap);
    }
    return out;
}

double weight(const GridFunction& grid, const CellData& cells, std::size_t i,
              std::size_t j) {
    return kernel_moment(grid.node(i), grid.node(j), grid.node(j + 1),
                         cells.beta[j]) *
           cells.inv_gamma[j];
}

void check_band_one(const DimensionField& d_field) {
    if (order_index(d_field) != 1) {
        throw BandCrossingError("marching requires the order in band 1, got "
                                "range [" + std::to_string(d_field.d_min()) +
                                ", " + std::to_string(d_field.d_max()) + "]");
    }
}

}  // namespace

ForwardResult apply_forward(const GridFunction& f, const ModelProblem& p) {
    p.validate();
    if (f.n_points() != p.initial_guess.n_points() || f.a() != p.a ||
        f.b() != p.b) {
        throw DomainError("input must live on the problem grid");
    }
    const std::size_t n = f.n_points();
    std::vector<double> d_nodes(n);
    for (std::size_t i = 0; i < n; ++i) {
        d_nodes[i] = p.clamped_order(f.value(i));
    }
    std::vector<double> nodes(n);
    for (std::size_t i = 0; i < n; ++i) nodes[i] = f.node(i);
    const auto d_field = DimensionField::tabulated(nodes, std::move(d_nodes));
    check_band_one(d_field);
    const auto cells = freeze_cells(f, d_field, p.cfg.pole_guard);

    const double h = f.h();
    std::vector<double> out(n, 0.0);
    double prev_inner = 0.0;
    std::vector<double> mid(n - 1);
    for (std::size_t j = 0; j + 1 < n; ++j) {
        mid[j] = 0.5 * (f.value(j) + f.value(j + 1));
    }
    for (std::size_t i = 1; i < n; ++i) {
        double inner = 0.0;
        for (std::size_t j = 0; j < i; ++j) {
            inner += weight(f, cells, i, j) * mid[j];
        }
        out[i] = (inner - prev_inner) / h;
        prev_inner = inner;
    }
    out[0] = out[1];  // padding; index 0 has no backward difference
    const std::size_t trust = std::max<std::size_t>(1, n / 10);
    return ForwardResult{GridFunction(f.a(), f.b(), std::move(out)), trust};
}

GridFunction march_linear(const DimensionField& d_field, const GridFunction& g,
                          const QuadratureConfig& cfg) {
    cfg.validate();
    check_band_one(d_field);
    const auto cells = freeze_cells(g, d_field, cfg.pole_guard);
    const std::size_t n = g.n_points();
    const double h = g.h();

    std::vector<double> u(n, 0.0);  // u(a) = 0 anchors the march
    double inner_target = 0.0;      // I_i accumulated from g
    for (std::size_t i = 1; i < n; ++i) {
        inner_target += h * g.value(i);
        // Row i: sum_{j<i} w_{ij} (u_j + u_{j+1}) / 2 = I_i, pivot on u_i.
        double acc = 0.0;
        for (std::size_t j = 0; j + 1 < i; ++j) {
            acc += weight(g, cells, i, j) * 0.5 * (u[j] + u[j + 1]);
        }
        const double pivot = 0.5 * weight(g, cells, i, i - 1);
        if (!(std::abs(pivot) > 1e-300)) {
            throw ZeroPivotError("vanishing diagonal weight at row " +
                                 std::to_string(i));
        }
        acc += pivot * u[i - 1];
        u[i] = (inner_target - acc) / pivot;
    }
    return GridFunction(g.a(), g.b(), std::move(u));
}

SolveReport solve_fixed_point(const ModelProblem& p, double tol, int max_iter,
                              double omega) {
    p.validate();
    if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
    if (max_iter < 1) throw DomainError("max_iter must be >= 1");
    if (!(omega > 0.0) || omega > 1.0) {
        throw DomainError("relaxation weight must lie in (0, 1]");
    }

    const std::size_t n = p.initial_guess.n_points();
    std::vector<double> nodes(n);
    std::vector<double> g_vals(n);
    for (std::size_t i = 0; i < n; ++i) {
        nodes[i] = p.initial_guess.node(i);
        g_vals[i] = p.g.eval(nodes[i]);
    }
    const GridFunction g_grid(p.a, p.b, std::move(g_vals));

    std::vector<double> f_cur = p.initial_guess.values();
    SolveReport report;
    for (int iter = 1; iter <= max_iter; ++iter) {
        std::vector<double> d_nodes(n);
        for (std::size_t i = 0; i < n; ++i) {
            d_nodes[i] = p.clamped_order(f_cur[i]);
        }
        auto d_field = DimensionField::tabulated(nodes, std::move(d_nodes));
        const GridFunction u = march_linear(d_field, g_grid, p.cfg);

        double residual = 0.0;
        std::vector<double> f_next(n);
        for (std::size_t i = 0; i < n; ++i) {
            f_next[i] = (1.0 - omega) * f_cur[i] + omega * u.value(i);
            residual = std::max(residual, std::abs(f_next[i] - f_cur[i]));
        }
        report.residuals.push_back(residual);
        report.iterations = iter;
        f_cur = std::move(f_next);
        if (residual <= tol) {
            report.converged = true;
            break;
        }
    }

    std::vector<double> d_nodes(n);
    for (std::size_t i = 0; i < n; ++i) d_nodes[i] = p.clamped_order(f_cur[i]);
    report.d_final = GridFunction(p.a, p.b, std::move(d_nodes));
    report.solution = GridFunction(p.a, p.b, std::move(f_cur));
    return report;
}

}  // namespace vofrac
