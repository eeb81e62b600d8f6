#pragma once

#include "cgkit/problems.hpp"
#include "cgkit/solver.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cgkit {

struct RunRecord {
    std::string problem;
    std::string method;
    SolveStatus status = SolveStatus::error;
    std::size_t iters = 0;
    std::size_t fevals = 0;
    std::size_t gevals = 0;
    double wall_time = 0.0;
    double f_final = 0.0;
    double gnorm_final = 0.0;

    bool solved() const noexcept { return status == SolveStatus::converged; }
    friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

struct GridOptions {
    SolverConfig solver{};   ///< method field is overwritten per cell
    std::size_t jobs = 1;
    bool omit_timing = false;  ///< record wall_time as 0 for byte-stable output
};

/// Runs every (problem, method) pair. Records come back sorted by
/// (problem, method). An objective that throws marks its cell as `error`.
std::vector<RunRecord> run_grid(const std::vector<ProblemEntry>& problems,
                                const std::vector<MethodSpec>& methods,
                                const GridOptions& options = {});

enum class Metric { iters, fevals, gevals, time };

std::string_view metric_name(Metric m);
std::optional<Metric> parse_metric(std::string_view name);

/// Dolan-More performance profile.
///
/// ratio[p][s] = cost[p][s] / min_s cost[p][s] for solved cells and r_max for
/// failures. Tied minima all get ratio 1. Problems nobody solved are dropped
/// and listed in `dropped`.
struct ProfileTable {
    std::vector<std::string> solvers;
    std::vector<std::string> problems;
    std::vector<std::vector<std::optional<double>>> cost;  ///< nullopt marks a failure
    std::vector<std::vector<double>> ratio;
    double r_max = 4.0;
    std::vector<std::string> dropped;

    /// P_s(t): fraction of problems with ratio[p][s] <= t.
    double value(std::size_t solver, double t) const;
    /// Distinct finite ratios in increasing order (always starts at 1).
    std::vector<double> breakpoints() const;
};

class EmptyTableError : public Error {
public:
    using Error::Error;
};

ProfileTable profile_from_costs(std::vector<std::string> solvers, std::vector<std::string> problems,
                                std::vector<std::vector<std::optional<double>>> cost);

/// Builds the cost matrix from run records; solvers and problems keep first
/// appearance order. Missing cells count as failures.
ProfileTable profile(const std::vector<RunRecord>& records, Metric metric);

} // namespace cgkit
