#pragma once

#include "cgkit/core.hpp"
#include "cgkit/directions.hpp"
#include "cgkit/linesearch.hpp"

#include <functional>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

namespace cgkit {

enum class SolveStatus { converged, iteration_cap, line_search_failure, error };

std::string_view status_name(SolveStatus s);
std::optional<SolveStatus> parse_status(std::string_view name);

/// Data available once an iteration's step has been accepted. All references
/// are valid only for the duration of the callback.
struct IterationView {
    std::size_t k;                 ///< 1-based iteration index
    const Vector& x;               ///< x_k
    double f;                      ///< f(x_k)
    const Vector& g;               ///< g_k
    const Vector& d;               ///< d_k
    const DirectionState* state;   ///< state that produced d_k (null on the first iteration)
    const BetaOutcome& outcome;
    bool line_search_retry;        ///< d_k is the steepest-descent retry after a failed search
    double alpha;
    const Vector& x_new;
    double f_new;
    const Vector& g_new;
};

struct SolverConfig {
    MethodSpec method{};
    WolfeParams wolfe{};
    SafeguardParams safeguard{};
    /// Stop when ||g||_inf <= gtol. Zero disables the test.
    double gtol = 1e-6;
    /// Stop when ||x_{k+1} - x_k|| / ||x_k|| < step_rtol. Zero disables the test.
    double step_rtol = 0.0;
    std::size_t max_iter = 50000;
    bool collect_trace = false;
    std::function<void(const IterationView&)> on_iteration;

    void validate() const;
};

struct TraceRecord {
    std::size_t k;
    double f;
    double gnorm_inf;
    double gnorm2;
    double alpha;
    double beta;
    Branch branch;
    bool restarted;
    double gtd;              ///< g_k^T d_k
    double f_new;
    double gtd_new;          ///< g_{k+1}^T d_k
    double dnorm2;
    double zoutendijk_term;  ///< (g_k^T d_k)^2 / ||d_k||^2
};

struct Diagnostics {
    double zoutendijk_partial_sum = 0.0;
    /// min over k of -g_k^T d_k / ||g_k||^2; +inf before the first step.
    double min_descent_ratio = std::numeric_limits<double>::infinity();
    std::size_t restarts = 0;
    std::size_t line_search_retries = 0;
};

struct SolveReport {
    SolveStatus status = SolveStatus::iteration_cap;
    std::size_t iters = 0;
    std::size_t fevals = 0;
    std::size_t gevals = 0;
    double wall_time = 0.0;
    double f_final = 0.0;
    double gnorm_final = 0.0;  ///< infinity norm
    Vector x_final{1};
    Diagnostics diagnostics{};
    std::vector<TraceRecord> trace;
};

class InvalidStartError : public Error {
public:
    using Error::Error;
};

/// Trial step for the line search at iteration k.
///
/// First iteration: 1 / (1 + ||g||_inf). Afterwards the previous step scaled
/// by the ratio of directional derivatives, clamped to [1e-12, alpha_max].
double initial_alpha(std::size_t k, const Vector& g, const Vector& d,
                     std::optional<std::pair<double, double>> prev_alpha_and_slope,
                     double alpha_max = 1e10);

/// Nonlinear conjugate gradient minimization of obj from x0.
SolveReport minimize(const Objective& obj, const Vector& x0, const SolverConfig& config);

} // namespace cgkit
