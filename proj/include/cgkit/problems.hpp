#pragma once

#include "cgkit/core.hpp"
#include "cgkit/image.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cgkit {

/// Objective built from a pair of callables over raw spans.
class FunctionObjective final : public Objective {
public:
    using ValueFn = std::function<double(std::span<const double>)>;
    using GradientFn = std::function<void(std::span<const double>, std::span<double>)>;

    FunctionObjective(std::string name, std::size_t n, ValueFn value, GradientFn gradient)
        : name_(std::move(name)), n_(n), value_(std::move(value)), gradient_(std::move(gradient)) {}

    std::size_t dim() const override { return n_; }
    std::string name() const override { return name_; }

protected:
    double do_value(std::span<const double> x) const override { return value_(x); }
    void do_gradient(std::span<const double> x, std::span<double> out) const override {
        gradient_(x, out);
    }

private:
    std::string name_;
    std::size_t n_;
    ValueFn value_;
    GradientFn gradient_;
};

struct ProblemEntry {
    std::string name;
    std::shared_ptr<const Objective> objective;
    Vector x0;
    std::optional<double> f_star;
    std::optional<Vector> x_star;
    bool strictly_convex_quadratic = false;
};

/// Built-in suite: fifteen smooth unconstrained test functions in the
/// CUTEst style plus the heat-conduction least-squares problem.
std::vector<ProblemEntry> catalog();

/// Case-insensitive lookup by name; "rosenbrock" aliases "rosenbr".
std::optional<ProblemEntry> find_problem(std::string_view name);

// Individual constructors, exposed for tests and custom grids.
ProblemEntry rosenbr();
ProblemEntry srosenbr(std::size_t n = 1000);
ProblemEntry woods(std::size_t n = 100);
ProblemEntry powellsg(std::size_t n = 100);
ProblemEntry tridia(std::size_t n = 500);
ProblemEntry dixmaana(std::size_t n = 300);
ProblemEntry engval1(std::size_t n = 500);
ProblemEntry liarwhd(std::size_t n = 500);
ProblemEntry edensch(std::size_t n = 500);
ProblemEntry quartc(std::size_t n = 500);
ProblemEntry cosine(std::size_t n = 500);
ProblemEntry dqdrtic(std::size_t n = 500);
ProblemEntry nondia(std::size_t n = 500);
ProblemEntry beale();
ProblemEntry himmelbg();
ProblemEntry heat();

/// Four-temperature heat conduction model on a symmetric 5x4 plate, as the
/// sum of squares of its nonlinear balance residuals.
std::shared_ptr<const Objective> heat_objective();

/// Published minimizer of the heat-conduction objective.
inline const Vector kHeatReferenceSolution{4.8521, 6.0545, 6.4042, 8.1383};

/// f(x) = 0.5 ||x||^2 style quadratic: 0.5 sum_i q_i x_i^2.
std::shared_ptr<const Objective> diagonal_quadratic(std::vector<double> q);

struct DenoiseSpec {
    ImageGray noisy;
    double lambda = 0.08;
    double eps_smooth = 1e-3;

    void validate() const;
};

/// 0.5 ||x - b||^2 + lambda * sum over 4-neighbour pairs of phi(x_i - x_j),
/// phi(u) = sqrt(u^2 + eps^2) - eps.
std::shared_ptr<const Objective> denoise_objective(const DenoiseSpec& spec);

} // namespace cgkit
