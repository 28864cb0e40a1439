#include "vofrac/cli_app.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "vofrac/csv_io.hpp"
#include "vofrac/errors.hpp"
#include "vofrac/near_integer.hpp"
#include "vofrac/operators.hpp"
#include "vofrac/solver.hpp"

namespace vofrac::cli {

namespace {

using nlohmann::ordered_json;
using Meta = std::vector<std::pair<std::string, std::string>>;

// ---------------------------------------------------------------------------
// concurrency

unsigned thread_cap() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    const char* env = std::getenv("VOFRAC_THREADS");
    if (!env || !*env) return hw;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 0) {
        throw DomainError("VOFRAC_THREADS must be a nonnegative integer");
    }
    return v == 0 ? hw : static_cast<unsigned>(v);
}

// Index-parallel map; results land in caller-owned slots, so output order
// never depends on scheduling.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
    const unsigned threads =
        std::min<unsigned>(thread_cap(), std::max<std::size_t>(count, 1));
    if (threads <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

// ---------------------------------------------------------------------------
// shared options

struct CommonOpts {
    std::string func;
    std::string dim = "0.5";
    double a = 0.0;
    std::optional<double> b;
    std::optional<double> t;
    std::vector<double> t_range;  // lo hi n
    std::string side = "left";
    std::size_t n_points = 4097;
    std::string freeze = "midpoint";
    std::string stencil = "central2";
    double outer_step_factor = 1.0;
    double pole_guard = 1e-9;
    std::string out;
    std::string format = "csv";
    int sign = -1;
    std::optional<double> alpha;
    bool strict = false;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool needs_func) {
    auto* func = cmd->add_option(
        "--func", o.func, "function text (expression grammar) or @file.csv");
    if (needs_func) func->required();
    cmd->add_option("--dim", o.dim, "order expression or constant");
    cmd->add_option("--a", o.a, "interval start");
    cmd->add_option("--b", o.b, "interval end");
    cmd->add_option("--t", o.t, "evaluation point");
    cmd->add_option("--t-range", o.t_range,
                    "lo hi n: inclusive evaluation grid")
        ->expected(3);
    cmd->add_option("--side", o.side, "left|right|sym")
        ->check(CLI::IsMember({"left", "right", "sym"}));
    cmd->add_option("--n-points", o.n_points, "quadrature resolution");
    cmd->add_option("--freeze", o.freeze, "midpoint|left frozen-exponent node")
        ->check(CLI::IsMember({"midpoint", "left"}));
    cmd->add_option("--stencil", o.stencil, "central2|central4 outer stencil")
        ->check(CLI::IsMember({"central2", "central4"}));
    cmd->add_option("--outer-step-factor", o.outer_step_factor,
                    "outer step as a multiple of the inner step");
    cmd->add_option("--delta", o.pole_guard, "pole-guard distance");
    cmd->add_option("--out", o.out, "write output here instead of stdout");
    cmd->add_option("--format", o.format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--sign", o.sign, "regularization sign (+1 or -1)")
        ->check(CLI::IsMember({-1, 1}));
    cmd->add_option("--alpha", o.alpha, "regularization parameter");
    cmd->add_flag("--strict", o.strict,
                  "exit 3 when the solver does not converge");
}

QuadratureConfig make_cfg(const CommonOpts& o) {
    QuadratureConfig cfg;
    cfg.n_points = o.n_points;
    cfg.freeze_rule =
        o.freeze == "midpoint" ? FreezeRule::midpoint : FreezeRule::left;
    cfg.outer_stencil = o.stencil == "central2" ? OuterStencil::central2
                                                : OuterStencil::central4;
    cfg.outer_step_factor = o.outer_step_factor;
    cfg.pole_guard = o.pole_guard;
    cfg.validate();
    return cfg;
}

FunctionSpec make_function(const std::string& text) {
    if (!text.empty() && text[0] == '@') {
        return FunctionSpec::sampled(ingest_csv_file(text.substr(1)));
    }
    return FunctionSpec::from_expression(text);
}

DimensionField make_field(const std::string& text, double lo, double hi,
                          std::size_t n_points) {
    Expression e = Expression::parse(text);
    if (!e.references_t() && !e.references_x()) {
        return DimensionField::constant(e.eval(EvalVars{}));
    }
    return DimensionField::from_expression(std::move(e), lo, hi,
                                           10 * n_points + 1);
}

std::vector<double> evaluation_points(const CommonOpts& o) {
    if (o.t && !o.t_range.empty()) {
        throw DomainError("give either --t or --t-range, not both");
    }
    if (o.t) return {*o.t};
    if (o.t_range.size() == 3) {
        const double lo = o.t_range[0];
        const double hi = o.t_range[1];
        const auto count = static_cast<std::size_t>(o.t_range[2]);
        if (!(lo < hi) || count < 2) {
            throw DomainError("--t-range needs lo < hi and n >= 2");
        }
        std::vector<double> pts(count);
        for (std::size_t i = 0; i < count; ++i) {
            pts[i] = lo + (hi - lo) * static_cast<double>(i) /
                              static_cast<double>(count - 1);
        }
        return pts;
    }
    throw DomainError("an evaluation point is required (--t or --t-range)");
}

// ---------------------------------------------------------------------------
// output plumbing

void write_output(const CommonOpts& o, const std::string& payload) {
    if (o.out.empty()) {
        std::cout << payload;
        std::cout.flush();
        return;
    }
    std::ofstream file(o.out, std::ios::binary);
    if (!file) throw DomainError("cannot open output file '" + o.out + "'");
    file << payload;
}

std::string meta_csv(const Meta& meta) {
    std::string s;
    for (const auto& [k, v] : meta) s += "# " + k + "=" + v + "\n";
    return s;
}

ordered_json meta_json(const Meta& meta) {
    ordered_json j = ordered_json::object();
    for (const auto& [k, v] : meta) {
        // numbers stay numbers in JSON where they parse cleanly
        try {
            std::size_t used = 0;
            const long long integral = std::stoll(v, &used);
            if (used == v.size()) {
                j[k] = integral;
                continue;
            }
        } catch (const std::exception&) {
        }
        try {
            std::size_t used = 0;
            const double num = std::stod(v, &used);
            if (used == v.size()) {
                j[k] = num;
                continue;
            }
        } catch (const std::exception&) {
        }
        j[k] = v;
    }
    return j;
}

Meta base_meta(const std::string& command, const CommonOpts& o) {
    Meta m;
    m.emplace_back("command", command);
    if (!o.func.empty()) m.emplace_back("func", o.func);
    m.emplace_back("dim", o.dim);
    m.emplace_back("a", format_double(o.a));
    if (o.b) m.emplace_back("b", format_double(*o.b));
    m.emplace_back("side", o.side);
    m.emplace_back("n_points", std::to_string(o.n_points));
    m.emplace_back("freeze", o.freeze);
    m.emplace_back("stencil", o.stencil);
    m.emplace_back("outer_step_factor", format_double(o.outer_step_factor));
    m.emplace_back("pole_guard", format_double(o.pole_guard));
    m.emplace_back("sign", std::to_string(o.sign));
    if (o.alpha) m.emplace_back("alpha", format_double(*o.alpha));
    m.emplace_back("format", o.format);
    return m;
}

std::string trust_name(Trust t) {
    return t == Trust::interior ? "interior" : "boundary";
}

std::string results_payload(const CommonOpts& o, const Meta& meta,
                            const std::vector<EvalResult>& rows) {
    if (o.format == "json") {
        ordered_json j;
        j["config"] = meta_json(meta);
        j["results"] = ordered_json::array();
        for (const auto& r : rows) {
            j["results"].push_back({{"t", r.t},
                                    {"value", r.value},
                                    {"trust", trust_name(r.trust)},
                                    {"scheme_id", r.scheme_id}});
        }
        return j.dump(2) + "\n";
    }
    std::string s = meta_csv(meta);
    s += "t,value,trust\n";
    for (const auto& r : rows) {
        s += format_double(r.t) + "," + format_double(r.value) + "," +
             trust_name(r.trust) + "\n";
    }
    return s;
}

ordered_json grid_json(const GridFunction& g) {
    return ordered_json{{"a", g.a()},
                        {"b", g.b()},
                        {"n_points", g.n_points()},
                        {"values", g.values()}};
}

ordered_json report_json(const ApproxComparison& rep) {
    return ordered_json{{"t_grid", rep.t_grid},       {"approx", rep.approx},
                        {"direct", rep.direct},       {"abs_err", rep.abs_err},
                        {"max_rel_err", rep.max_rel_err},
                        {"alpha_used", rep.alpha_used}};
}

std::string comparison_payload(const CommonOpts& o, const Meta& meta,
                               const ApproxComparison& rep,
                               std::optional<double> fitted_alpha) {
    if (o.format == "json") {
        ordered_json j;
        j["config"] = meta_json(meta);
        if (fitted_alpha) j["alpha"] = *fitted_alpha;
        j["report"] = report_json(rep);
        return j.dump(2) + "\n";
    }
    std::string s = meta_csv(meta);
    if (fitted_alpha) s += "# alpha=" + format_double(*fitted_alpha) + "\n";
    s += "# alpha_used=" + format_double(rep.alpha_used) + "\n";
    s += "# max_rel_err=" + format_double(rep.max_rel_err) + "\n";
    s += "t,approx,direct,abs_err\n";
    for (std::size_t i = 0; i < rep.t_grid.size(); ++i) {
        s += format_double(rep.t_grid[i]) + "," + format_double(rep.approx[i]) +
             "," + format_double(rep.direct[i]) + "," +
             format_double(rep.abs_err[i]) + "\n";
    }
    return s;
}

// ---------------------------------------------------------------------------
// commands

Side parse_side(const std::string& side) {
    if (side == "left") return Side::left;
    if (side == "right") return Side::right;
    return Side::symmetric;
}

double effective_b(const CommonOpts& o, const std::vector<double>& points) {
    if (o.b) return *o.b;
    if (o.side != "left") {
        throw DomainError("--b is required for side=" + o.side);
    }
    // The left operator never looks past t, so the largest evaluation point
    // serves as the interval end.
    double hi = points.front();
    for (double p : points) hi = std::max(hi, p);
    if (!(hi > o.a)) throw DomainError("evaluation points must exceed a");
    return hi;
}

int cmd_differint(const CommonOpts& o, const std::string& label = "differint") {
    const auto points = evaluation_points(o);
    const auto cfg = make_cfg(o);
    const auto f = make_function(o.func);
    OperatorSpec spec;
    spec.side = parse_side(o.side);
    spec.a = o.a;
    spec.b = effective_b(o, points);
    spec.cfg = cfg;
    spec.d_field = make_field(o.dim, spec.a, spec.b, o.n_points);

    std::vector<EvalResult> rows(points.size());
    parallel_for(points.size(), [&](std::size_t i) {
        switch (spec.side) {
            case Side::left: rows[i] = gfd_left(f, spec, points[i]); break;
            case Side::right: rows[i] = gfd_right(f, spec, points[i]); break;
            case Side::symmetric:
                rows[i] = gfd_symmetric(f, spec, points[i]);
                break;
        }
    });

    Meta meta = base_meta(label, o);
    meta.emplace_back("b_effective", format_double(spec.b));
    write_output(o, results_payload(o, meta, rows));
    return 0;
}

struct WindowOpts {
    std::vector<double> window;  // lo hi
    std::string which = "below";
};

void add_window(CLI::App* cmd, WindowOpts& w) {
    cmd->add_option("--window", w.window, "lo hi comparison window")
        ->expected(2)
        ->required();
    cmd->add_option("--which", w.which, "below|above near-integer branch")
        ->check(CLI::IsMember({"below", "above"}))
        ->required();
}

struct ComparisonSetup {
    OperatorSpec spec;
    EpsilonField eps;
    ApproxBranch which;
    std::pair<double, double> window;
};

ComparisonSetup comparison_setup(const CommonOpts& o, const WindowOpts& w,
                                 const FunctionSpec& /*f*/) {
    const double lo = w.window[0];
    const double hi = w.window[1];
    if (!(lo < hi)) throw DomainError("--window needs lo < hi");
    OperatorSpec spec;
    spec.side = Side::left;
    spec.a = o.a;
    spec.b = o.b ? *o.b : hi + 0.25 * (hi - lo);
    spec.cfg = make_cfg(o);
    const auto d_field = make_field(o.dim, spec.a, spec.b, o.n_points);
    const ApproxBranch which =
        w.which == "below" ? ApproxBranch::below : ApproxBranch::above;
    // eps = 1 - d (below) or d - 1 (above).
    DimensionField eps_field = which == ApproxBranch::below
                                   ? d_field.affine(1.0, -1.0)
                                   : d_field.affine(-1.0, 1.0);
    spec.d_field = d_field;
    return ComparisonSetup{std::move(spec),
                           EpsilonField(std::move(eps_field), o.sign,
                                        o.alpha.value_or(1.0)),
                           which,
                           {lo, hi}};
}

int cmd_compare(const CommonOpts& o, const WindowOpts& w) {
    const auto f = make_function(o.func);
    auto setup = comparison_setup(o, w, f);
    const auto rep = compare_approx(f, setup.eps, setup.window, setup.which,
                                    setup.spec, o.alpha);
    Meta meta = base_meta("compare", o);
    meta.emplace_back("which", w.which);
    meta.emplace_back("window_lo", format_double(setup.window.first));
    meta.emplace_back("window_hi", format_double(setup.window.second));
    meta.emplace_back("b_effective", format_double(setup.spec.b));
    write_output(o, comparison_payload(o, meta, rep, std::nullopt));
    return 0;
}

int cmd_calibrate(const CommonOpts& o, const WindowOpts& w) {
    const auto f = make_function(o.func);
    auto setup = comparison_setup(o, w, f);
    const auto fit =
        calibrate_alpha(f, setup.eps, setup.window, setup.which, setup.spec);
    Meta meta = base_meta("calibrate", o);
    meta.emplace_back("which", w.which);
    meta.emplace_back("window_lo", format_double(setup.window.first));
    meta.emplace_back("window_hi", format_double(setup.window.second));
    meta.emplace_back("b_effective", format_double(setup.spec.b));
    write_output(o, comparison_payload(o, meta, fit.report, fit.alpha));
    return 0;
}

struct SweepOpts {
    std::string axis = "t";
    std::vector<double> eps_list;
    std::vector<std::size_t> n_points_list;
    WindowOpts window;
};

int cmd_sweep(const CommonOpts& o, const SweepOpts& s) {
    if (s.axis == "t") {
        // identical row shape to differint, threaded over the range
        return cmd_differint(o, "sweep");
    }
    if (s.axis == "eps") {
        if (s.eps_list.empty()) {
            throw DomainError("sweep --axis eps needs --eps-list");
        }
        if (s.window.window.size() != 2) {
            throw DomainError("sweep --axis eps needs --window");
        }
        std::vector<double> eps_axis = s.eps_list;
        std::sort(eps_axis.begin(), eps_axis.end());
        const auto f = make_function(o.func);
        const ApproxBranch which = s.window.which == "below"
                                       ? ApproxBranch::below
                                       : ApproxBranch::above;
        const double lo = s.window.window[0];
        const double hi = s.window.window[1];
        OperatorSpec spec;
        spec.side = Side::left;
        spec.a = o.a;
        spec.b = o.b ? *o.b : hi + 0.25 * (hi - lo);
        spec.cfg = make_cfg(o);

        struct Row {
            double eps, alpha_used, max_rel_err;
        };
        std::vector<Row> rows(eps_axis.size());
        parallel_for(eps_axis.size(), [&](std::size_t i) {
            const double eps_v = eps_axis[i];
            EpsilonField e(DimensionField::constant(eps_v), o.sign,
                           o.alpha.value_or(1.0));
            OperatorSpec local = spec;
            local.d_field = DimensionField::constant(
                which == ApproxBranch::below ? 1.0 - eps_v : 1.0 + eps_v);
            const auto rep =
                compare_approx(f, e, {lo, hi}, which, local, o.alpha);
            rows[i] = Row{eps_v, rep.alpha_used, rep.max_rel_err};
        });

        Meta meta = base_meta("sweep", o);
        meta.emplace_back("axis", "eps");
        meta.emplace_back("which", s.window.which);
        meta.emplace_back("window_lo", format_double(lo));
        meta.emplace_back("window_hi", format_double(hi));
        if (o.format == "json") {
            ordered_json j;
            j["config"] = meta_json(meta);
            j["rows"] = ordered_json::array();
            for (const auto& r : rows) {
                j["rows"].push_back({{"eps", r.eps},
                                     {"alpha_used", r.alpha_used},
                                     {"max_rel_err", r.max_rel_err}});
            }
            write_output(o, j.dump(2) + "\n");
        } else {
            std::string body = meta_csv(meta) + "eps,alpha_used,max_rel_err\n";
            for (const auto& r : rows) {
                body += format_double(r.eps) + "," +
                        format_double(r.alpha_used) + "," +
                        format_double(r.max_rel_err) + "\n";
            }
            write_output(o, body);
        }
        return 0;
    }
    if (s.axis == "n-points") {
        if (s.n_points_list.empty()) {
            throw DomainError("sweep --axis n-points needs --n-points-list");
        }
        if (!o.t) throw DomainError("sweep --axis n-points needs --t");
        std::vector<std::size_t> n_axis = s.n_points_list;
        std::sort(n_axis.begin(), n_axis.end());
        const auto f = make_function(o.func);
        struct Row {
            std::size_t n;
            double value;
        };
        std::vector<Row> rows(n_axis.size());
        parallel_for(n_axis.size(), [&](std::size_t i) {
            CommonOpts local = o;
            local.n_points = n_axis[i];
            const auto cfg = make_cfg(local);
            OperatorSpec spec;
            spec.side = parse_side(o.side);
            spec.a = o.a;
            spec.b = effective_b(o, {*o.t});
            spec.cfg = cfg;
            spec.d_field = make_field(o.dim, spec.a, spec.b, local.n_points);
            EvalResult r;
            switch (spec.side) {
                case Side::left: r = gfd_left(f, spec, *o.t); break;
                case Side::right: r = gfd_right(f, spec, *o.t); break;
                case Side::symmetric: r = gfd_symmetric(f, spec, *o.t); break;
            }
            rows[i] = Row{n_axis[i], r.value};
        });
        Meta meta = base_meta("sweep", o);
        meta.emplace_back("axis", "n-points");
        meta.emplace_back("t", format_double(*o.t));
        if (o.format == "json") {
            ordered_json j;
            j["config"] = meta_json(meta);
            j["rows"] = ordered_json::array();
            for (const auto& r : rows) {
                j["rows"].push_back({{"n_points", r.n}, {"value", r.value}});
            }
            write_output(o, j.dump(2) + "\n");
        } else {
            std::string body = meta_csv(meta) + "n_points,value\n";
            for (const auto& r : rows) {
                body += std::to_string(r.n) + "," + format_double(r.value) +
                        "\n";
            }
            write_output(o, body);
        }
        return 0;
    }
    throw DomainError("unknown sweep axis '" + s.axis + "'");
}

struct SolveOpts {
    double d0 = 0.5;
    double kappa = 0.0;
    std::vector<double> clamp = {0.05, 0.95};
    double omega = 0.5;
    double tol = 1e-8;
    int max_iter = 50;
    std::string init;
};

int cmd_solve(const CommonOpts& o, const SolveOpts& s, bool* nonconverged) {
    if (!o.b) throw DomainError("solve needs --b");
    ModelProblem p;
    p.g = make_function(o.func);
    p.d_of_f = OrderMap::affine(s.d0, s.kappa);
    if (s.clamp.size() != 2) throw DomainError("--clamp needs lo hi");
    p.clamp = {s.clamp[0], s.clamp[1]};
    p.a = o.a;
    p.b = *o.b;
    if (!s.init.empty()) {
        if (s.init[0] != '@') {
            throw DomainError("--init expects @file.csv");
        }
        p.initial_guess = ingest_csv_file(s.init.substr(1));
    } else {
        p.initial_guess = GridFunction(
            p.a, p.b, std::vector<double>(o.n_points, 0.0));
    }
    p.cfg = make_cfg(o);
    p.validate();

    const auto rep = solve_fixed_point(p, s.tol, s.max_iter, s.omega);
    *nonconverged = !rep.converged;

    Meta meta = base_meta("solve", o);
    meta.emplace_back("d0", format_double(s.d0));
    meta.emplace_back("kappa", format_double(s.kappa));
    meta.emplace_back("clamp_lo", format_double(p.clamp.first));
    meta.emplace_back("clamp_hi", format_double(p.clamp.second));
    meta.emplace_back("omega", format_double(s.omega));
    meta.emplace_back("tol", format_double(s.tol));
    meta.emplace_back("max_iter", std::to_string(s.max_iter));

    if (o.format == "json") {
        ordered_json j;
        j["config"] = meta_json(meta);
        j["converged"] = rep.converged;
        j["iterations"] = rep.iterations;
        j["residuals"] = rep.residuals;
        j["solution"] = grid_json(rep.solution);
        j["d_final"] = grid_json(rep.d_final);
        write_output(o, j.dump(2) + "\n");
    } else {
        Meta solve_meta = meta;
        solve_meta.emplace_back("converged", rep.converged ? "true" : "false");
        solve_meta.emplace_back("iterations", std::to_string(rep.iterations));
        std::string residuals;
        for (std::size_t i = 0; i < rep.residuals.size(); ++i) {
            if (i) residuals += ";";
            residuals += format_double(rep.residuals[i]);
        }
        solve_meta.emplace_back("residuals", residuals);
        std::ostringstream body;
        emit_grid_csv(body, rep.solution, solve_meta);
        write_output(o, body.str());
    }
    return 0;
}

int dispatch(int argc, const char* const* argv) {
    CLI::App app{
        "vofrac: variable-order fractional differintegrals, near-integer "
        "approximations, and nonlinear order-coupled solves"};
    app.require_subcommand(1);

    CommonOpts differint_opts;
    auto* differint =
        app.add_subcommand("differint",
                           "evaluate a fractional derivative or integral");
    add_common(differint, differint_opts, true);

    CommonOpts compare_opts;
    WindowOpts compare_window;
    auto* compare = app.add_subcommand(
        "compare", "near-integer approximation vs the direct operator");
    add_common(compare, compare_opts, true);
    add_window(compare, compare_window);

    CommonOpts calibrate_opts;
    WindowOpts calibrate_window;
    auto* calibrate = app.add_subcommand(
        "calibrate", "fit the regularization parameter on a window");
    add_common(calibrate, calibrate_opts, true);
    add_window(calibrate, calibrate_window);

    CommonOpts sweep_opts;
    SweepOpts sweep_extra;
    auto* sweep =
        app.add_subcommand("sweep", "vary one axis and emit long-format rows");
    add_common(sweep, sweep_opts, true);
    sweep->add_option("--axis", sweep_extra.axis, "t|eps|n-points")
        ->check(CLI::IsMember({"t", "eps", "n-points"}));
    sweep->add_option("--eps-list", sweep_extra.eps_list,
                      "epsilon values for --axis eps");
    sweep->add_option("--n-points-list", sweep_extra.n_points_list,
                      "resolutions for --axis n-points");
    sweep->add_option("--window", sweep_extra.window.window,
                      "lo hi window for --axis eps")
        ->expected(2);
    sweep->add_option("--which", sweep_extra.window.which,
                      "below|above branch for --axis eps")
        ->check(CLI::IsMember({"below", "above"}));

    CommonOpts solve_opts;
    SolveOpts solve_extra;
    auto* solve = app.add_subcommand(
        "solve", "solve D^{d(f)} f = g with the damped fixed-point iteration");
    add_common(solve, solve_opts, true);
    solve->add_option("--d0", solve_extra.d0, "order-map constant term");
    solve->add_option("--kappa", solve_extra.kappa, "order-map slope in f");
    solve->add_option("--clamp", solve_extra.clamp, "lo hi order clamp")
        ->expected(2);
    solve->add_option("--omega", solve_extra.omega, "relaxation weight");
    solve->add_option("--tol", solve_extra.tol, "sup-norm stopping tolerance");
    solve->add_option("--max-iter", solve_extra.max_iter, "iteration cap");
    solve->add_option("--init", solve_extra.init, "@file.csv initial guess");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            // --help and friends
            return app.exit(e);
        }
        std::cerr << "E:cli: " << e.what() << "\n";
        return 1;
    }

    const CommonOpts* active = nullptr;
    if (differint->parsed()) active = &differint_opts;
    if (compare->parsed()) active = &compare_opts;
    if (calibrate->parsed()) active = &calibrate_opts;
    if (sweep->parsed()) active = &sweep_opts;
    if (solve->parsed()) active = &solve_opts;

    bool nonconverged = false;
    try {
        if (differint->parsed()) return cmd_differint(differint_opts);
        if (compare->parsed()) return cmd_compare(compare_opts, compare_window);
        if (calibrate->parsed()) {
            return cmd_calibrate(calibrate_opts, calibrate_window);
        }
        if (sweep->parsed()) return cmd_sweep(sweep_opts, sweep_extra);
        if (solve->parsed()) {
            const int rc = cmd_solve(solve_opts, solve_extra, &nonconverged);
            if (rc == 0 && nonconverged && solve_opts.strict) {
                std::cerr << "E:nonconvergence: solver stopped at max_iter "
                             "without reaching the tolerance\n";
                return 3;
            }
            return rc;
        }
    } catch (const ParseError& e) {
        std::cerr << "E:" << e.code() << ": " << e.what() << "\n";
        return 1;
    } catch (const FormatError& e) {
        std::cerr << "E:" << e.code() << ": " << e.what() << "\n";
        return 1;
    } catch (const NonUniformGridError& e) {
        std::cerr << "E:" << e.code() << ": " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "E:" << e.code() << ": " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "E:internal: " << e.what() << "\n";
        return 2;
    }
    std::cerr << "E:cli: no subcommand given\n";
    (void)active;
    return 1;
}

}  // namespace

int run(int argc, const char* const* argv) { return dispatch(argc, argv); }

}  // namespace vofrac::cli
