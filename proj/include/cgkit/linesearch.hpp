#pragma once

#include "cgkit/core.hpp"

#include <cstddef>

namespace cgkit {

enum class WolfeMode { strong, weak };

struct WolfeParams {
    double delta = 0.01;  ///< sufficient-decrease constant
    double sigma = 0.1;   ///< curvature constant
    WolfeMode mode = WolfeMode::strong;
    std::size_t max_evals = 60;
    double alpha_max = 1e10;

    /// Throws InvalidArgument unless 0 < delta < 1/2, delta < sigma < 1,
    /// max_evals >= 10 and alpha_max > 0.
    void validate() const;
};

struct LineSearchResult {
    double alpha;
    double f_new;
    Vector g_new;
    std::size_t fevals;
    std::size_t gevals;
};

class NotDescentError : public Error {
public:
    using Error::Error;
};

/// Raised when the evaluation budget runs out before an acceptable step is
/// found. Carries the evaluations consumed so callers can keep exact counts.
class LineSearchError : public Error {
public:
    LineSearchError(const std::string& what, std::size_t fevals, std::size_t gevals)
        : Error(what), fevals(fevals), gevals(gevals) {}
    std::size_t fevals;
    std::size_t gevals;
};

struct WolfeCheck {
    bool armijo_ok;
    bool curvature_ok;
    bool both() const noexcept { return armijo_ok && curvature_ok; }
};

/// Evaluates the sufficient-decrease and curvature conditions for a trial
/// step from its scalar summaries. Both boundaries are inclusive.
WolfeCheck check_wolfe(double f0, double g0d, double alpha, double f_new, double gnew_d,
                       const WolfeParams& params);

/// Finds alpha satisfying the (strong or weak) Wolfe conditions along d.
///
/// Bracketing phase doubles the trial step from alpha_init; the zoom phase
/// shrinks the bracket with safeguarded cubic interpolation, falling back to
/// bisection. A trial where f or g is non-finite counts as a sufficient
/// decrease failure. Every trial costs one value and one gradient evaluation.
LineSearchResult line_search(const Objective& obj, const Vector& x, double f0, const Vector& g0,
                             const Vector& d, double alpha_init, const WolfeParams& params);

} // namespace cgkit
