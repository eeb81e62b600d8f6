#include "cgkit/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace cgkit {

std::string_view status_name(SolveStatus s) {
    switch (s) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::iteration_cap: return "iteration-cap";
    case SolveStatus::line_search_failure: return "line-search-failure";
    case SolveStatus::error: return "error";
    }
    return "unknown";
}

std::optional<SolveStatus> parse_status(std::string_view name) {
    for (auto s : {SolveStatus::converged, SolveStatus::iteration_cap,
                   SolveStatus::line_search_failure, SolveStatus::error}) {
        if (status_name(s) == name) return s;
    }
    return std::nullopt;
}

void SolverConfig::validate() const {
    method.validate();
    wolfe.validate();
    if (!(gtol >= 0.0) || !(step_rtol >= 0.0)) throw InvalidArgument("solver: tolerances must be >= 0");
    if (!(gtol > 0.0 || step_rtol > 0.0)) {
        throw InvalidArgument("solver: one of gtol or step_rtol must be positive");
    }
    if (max_iter < 1) throw InvalidArgument("solver: max_iter must be at least 1");
}

double initial_alpha(std::size_t k, const Vector& g, const Vector& d,
                     std::optional<std::pair<double, double>> prev_alpha_and_slope,
                     double alpha_max) {
    if (k <= 1 || !prev_alpha_and_slope) return std::min(1.0 / (1.0 + norm_inf(g)), alpha_max);
    const auto [alpha_prev, slope_prev] = *prev_alpha_and_slope;
    const double guess = alpha_prev * slope_prev / dot(g, d);
    if (!std::isfinite(guess)) return std::min(1.0 / (1.0 + norm_inf(g)), alpha_max);
    return std::clamp(guess, 1e-12, alpha_max);
}

namespace {

struct Step {
    Vector d;
    BetaOutcome outcome;
    LineSearchResult ls;
    bool retry;
};

} // namespace

SolveReport minimize(const Objective& obj, const Vector& x0, const SolverConfig& config) {
    config.validate();
    if (x0.size() != obj.dim()) {
        throw DimensionError("minimize: start point has dimension " + std::to_string(x0.size()) +
                             ", objective expects " + std::to_string(obj.dim()));
    }

    SolveReport report;
    const auto started = std::chrono::steady_clock::now();

    Vector x = x0;
    double f = obj.value(x);
    ++report.fevals;
    if (!std::isfinite(f)) throw InvalidStartError("minimize: objective is not finite at x0");
    std::optional<Vector> g_start;
    try {
        g_start.emplace(obj.gradient(x));
    } catch (const EvaluationError&) {
        ++report.gevals;
        throw InvalidStartError("minimize: gradient is not finite at x0");
    }
    ++report.gevals;
    Vector g = std::move(*g_start);

    std::optional<DirectionState> state;
    std::optional<std::pair<double, double>> prev_alpha_and_slope;
    Diagnostics& diag = report.diagnostics;

    auto search = [&](const Vector& d, double alpha0) {
        LineSearchResult ls = line_search(obj, x, f, g, d, alpha0, config.wolfe);
        report.fevals += ls.fevals;
        report.gevals += ls.gevals;
        return ls;
    };

    for (;;) {
        const double gg = dot(g, g);
        if ((config.gtol > 0.0 && norm_inf(g) <= config.gtol) || gg == 0.0) {
            report.status = SolveStatus::converged;
            break;
        }
        if (report.iters >= config.max_iter) {
            report.status = SolveStatus::iteration_cap;
            break;
        }
        const std::size_t k = report.iters + 1;

        DirectionResult dir = direction(g, state ? &*state : nullptr, config.method, config.safeguard);
        std::optional<Step> step;
        try {
            const double alpha0 =
                initial_alpha(k, g, dir.d, prev_alpha_and_slope, config.wolfe.alpha_max);
            LineSearchResult ls = search(dir.d, alpha0);
            step.emplace(Step{std::move(dir.d), dir.outcome, std::move(ls), false});
        } catch (const LineSearchError& e) {
            report.fevals += e.fevals;
            report.gevals += e.gevals;
        }
        if (!step) {
            // One steepest-descent retry with a fresh trial step.
            ++diag.line_search_retries;
            Vector sd = negate(g);
            try {
                const double alpha0 = initial_alpha(1, g, sd, std::nullopt, config.wolfe.alpha_max);
                LineSearchResult ls = search(sd, alpha0);
                step.emplace(Step{std::move(sd), BetaOutcome::restart(), std::move(ls), true});
            } catch (const LineSearchError& e) {
                report.fevals += e.fevals;
                report.gevals += e.gevals;
                report.status = SolveStatus::line_search_failure;
                break;
            }
        }

        const Vector& d = step->d;
        const double alpha = step->ls.alpha;
        const double gtd = dot(g, d);
        const double dd = dot(d, d);
        Vector x_new = axpy(alpha, d, x);

        if (config.on_iteration) {
            config.on_iteration(IterationView{k, x, f, g, d, state ? &*state : nullptr,
                                              step->outcome, step->retry, alpha, x_new,
                                              step->ls.f_new, step->ls.g_new});
        }

        const double zterm = gtd * gtd / dd;
        diag.zoutendijk_partial_sum += zterm;
        diag.min_descent_ratio = std::min(diag.min_descent_ratio, -gtd / gg);
        if (step->outcome.restarted && k > 1) ++diag.restarts;

        if (config.collect_trace) {
            report.trace.push_back(TraceRecord{k, f, norm_inf(g), std::sqrt(gg), alpha,
                                               step->outcome.beta, step->outcome.branch,
                                               step->outcome.restarted, gtd, step->ls.f_new,
                                               dot(step->ls.g_new, d), std::sqrt(dd), zterm});
        }

        bool small_step = false;
        if (config.step_rtol > 0.0) {
            const double xnorm = norm2(x);
            small_step = xnorm > 0.0 && norm2(sub(x_new, x)) / xnorm < config.step_rtol;
        }

        Vector s = scale(alpha, d);
        prev_alpha_and_slope = std::pair{alpha, gtd};
        state.emplace(DirectionState{std::move(g), step->d, std::move(s), alpha, k + 1});
        x = std::move(x_new);
        f = step->ls.f_new;
        g = std::move(step->ls.g_new);
        ++report.iters;

        if (small_step) {
            report.status = SolveStatus::converged;
            break;
        }
    }

    report.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    report.f_final = f;
    report.gnorm_final = norm_inf(g);
    report.x_final = std::move(x);
    return report;
}

} // namespace cgkit
