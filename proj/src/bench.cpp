#include "cgkit/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <thread>

namespace cgkit {

namespace {

RunRecord run_cell(const ProblemEntry& problem, const MethodSpec& method, const GridOptions& options) {
    RunRecord rec;
    rec.problem = problem.name;
    rec.method = std::string(method_name(method.kind));
    SolverConfig config = options.solver;
    config.method = method;
    try {
        const SolveReport report = minimize(*problem.objective, problem.x0, config);
        rec.status = report.status;
        rec.iters = report.iters;
        rec.fevals = report.fevals;
        rec.gevals = report.gevals;
        rec.wall_time = report.wall_time;
        rec.f_final = report.f_final;
        rec.gnorm_final = report.gnorm_final;
    } catch (const std::exception&) {
        rec.status = SolveStatus::error;
        rec.f_final = std::numeric_limits<double>::quiet_NaN();
        rec.gnorm_final = std::numeric_limits<double>::quiet_NaN();
    }
    if (options.omit_timing) rec.wall_time = 0.0;
    return rec;
}

double metric_cost(const RunRecord& r, Metric m) {
    switch (m) {
    case Metric::iters: return std::max<double>(static_cast<double>(r.iters), 1.0);
    case Metric::fevals: return std::max<double>(static_cast<double>(r.fevals), 1.0);
    case Metric::gevals: return std::max<double>(static_cast<double>(r.gevals), 1.0);
    case Metric::time: return std::max(r.wall_time, 1e-6);
    }
    return 1.0;
}

} // namespace

std::vector<RunRecord> run_grid(const std::vector<ProblemEntry>& problems,
                                const std::vector<MethodSpec>& methods, const GridOptions& options) {
    if (problems.empty() || methods.empty()) throw InvalidArgument("run_grid: empty problem or method list");
    options.solver.validate();

    const std::size_t cells = problems.size() * methods.size();
    std::vector<RunRecord> records(cells);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < cells; i = next++) {
            records[i] = run_cell(problems[i / methods.size()], methods[i % methods.size()], options);
        }
    };

    const std::size_t jobs = std::clamp<std::size_t>(options.jobs, 1, cells);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    }

    std::stable_sort(records.begin(), records.end(), [](const RunRecord& a, const RunRecord& b) {
        return std::tie(a.problem, a.method) < std::tie(b.problem, b.method);
    });
    return records;
}

std::string_view metric_name(Metric m) {
    switch (m) {
    case Metric::iters: return "iters";
    case Metric::fevals: return "fevals";
    case Metric::gevals: return "gevals";
    case Metric::time: return "time";
    }
    return "unknown";
}

std::optional<Metric> parse_metric(std::string_view name) {
    for (auto m : {Metric::iters, Metric::fevals, Metric::gevals, Metric::time}) {
        if (metric_name(m) == name) return m;
    }
    return std::nullopt;
}

double ProfileTable::value(std::size_t solver, double t) const {
    if (problems.empty()) return 0.0;
    std::size_t hits = 0;
    for (const auto& row : ratio) {
        if (row[solver] <= t) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(problems.size());
}

std::vector<double> ProfileTable::breakpoints() const {
    std::vector<double> out{1.0};
    for (std::size_t p = 0; p < ratio.size(); ++p) {
        for (std::size_t s = 0; s < solvers.size(); ++s) {
            if (cost[p][s]) out.push_back(ratio[p][s]);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

ProfileTable profile_from_costs(std::vector<std::string> solvers, std::vector<std::string> problems,
                                std::vector<std::vector<std::optional<double>>> cost) {
    if (solvers.empty() || problems.empty()) throw EmptyTableError("profile: empty table");
    if (cost.size() != problems.size()) throw DimensionError("profile: cost rows != problem count");

    ProfileTable table;
    table.solvers = std::move(solvers);
    double largest = 1.0;
    for (std::size_t p = 0; p < problems.size(); ++p) {
        auto& row = cost[p];
        if (row.size() != table.solvers.size()) throw DimensionError("profile: cost row has wrong width");
        double best = std::numeric_limits<double>::infinity();
        for (const auto& c : row) {
            if (c) {
                if (!(*c > 0.0) || !std::isfinite(*c)) throw InvalidArgument("profile: costs must be positive");
                best = std::min(best, *c);
            }
        }
        if (!std::isfinite(best)) {
            table.dropped.push_back(std::move(problems[p]));
            continue;
        }
        std::vector<double> ratios(row.size(), 0.0);
        for (std::size_t s = 0; s < row.size(); ++s) {
            if (row[s]) {
                ratios[s] = *row[s] == best ? 1.0 : *row[s] / best;
                largest = std::max(largest, ratios[s]);
            }
        }
        table.problems.push_back(std::move(problems[p]));
        table.cost.push_back(std::move(row));
        table.ratio.push_back(std::move(ratios));
    }

    if (table.problems.empty()) throw EmptyTableError("profile: no solver converged on any problem");

    table.r_max = std::max(2.0 * largest, 4.0);
    for (std::size_t p = 0; p < table.ratio.size(); ++p) {
        for (std::size_t s = 0; s < table.solvers.size(); ++s) {
            if (!table.cost[p][s]) table.ratio[p][s] = table.r_max;
        }
    }
    return table;
}

ProfileTable profile(const std::vector<RunRecord>& records, Metric metric) {
    if (records.empty()) throw EmptyTableError("profile: no run records");

    std::vector<std::string> solvers;
    std::vector<std::string> problems;
    std::map<std::string, std::size_t> solver_index;
    std::map<std::string, std::size_t> problem_index;
    for (const auto& r : records) {
        if (solver_index.emplace(r.method, solvers.size()).second) solvers.push_back(r.method);
        if (problem_index.emplace(r.problem, problems.size()).second) problems.push_back(r.problem);
    }

    std::vector<std::vector<std::optional<double>>> cost(
        problems.size(), std::vector<std::optional<double>>(solvers.size()));
    std::vector<std::vector<bool>> seen(problems.size(), std::vector<bool>(solvers.size(), false));
    for (const auto& r : records) {
        const std::size_t p = problem_index[r.problem];
        const std::size_t s = solver_index[r.method];
        if (seen[p][s]) {
            throw InvalidArgument("profile: duplicate record for " + r.problem + "/" + r.method);
        }
        seen[p][s] = true;
        if (r.solved()) cost[p][s] = metric_cost(r, metric);
    }
    return profile_from_costs(std::move(solvers), std::move(problems), std::move(cost));
}

} // namespace cgkit
