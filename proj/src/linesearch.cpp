#include "cgkit/linesearch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace cgkit {

void WolfeParams::validate() const {
    if (!(delta > 0.0 && delta < 0.5)) throw InvalidArgument("wolfe: delta must lie in (0, 1/2)");
    if (!(sigma > delta && sigma < 1.0)) throw InvalidArgument("wolfe: sigma must lie in (delta, 1)");
    if (max_evals < 10) throw InvalidArgument("wolfe: max_evals must be at least 10");
    if (!(alpha_max > 0.0)) throw InvalidArgument("wolfe: alpha_max must be positive");
}

WolfeCheck check_wolfe(double f0, double g0d, double alpha, double f_new, double gnew_d,
                       const WolfeParams& params) {
    WolfeCheck out{};
    out.armijo_ok = f_new <= f0 + params.delta * alpha * g0d;
    if (params.mode == WolfeMode::strong) {
        out.curvature_ok = std::abs(gnew_d) <= params.sigma * std::abs(g0d);
    } else {
        out.curvature_ok = gnew_d >= params.sigma * g0d;
    }
    return out;
}

namespace {

struct Trial {
    double alpha = 0.0;
    double f = 0.0;
    double gd = 0.0;
    std::optional<Vector> g;
    bool finite = true;
};

/// Minimizer of the cubic interpolating (a, fa, da) and (b, fb, db).
/// Returns NaN when the cubic has no real minimizer.
double cubic_minimizer(double a, double fa, double da, double b, double fb, double db) {
    const double d1 = da + db - 3.0 * (fa - fb) / (a - b);
    const double disc = d1 * d1 - da * db;
    if (!(disc >= 0.0)) return std::nan("");
    const double d2 = std::copysign(std::sqrt(disc), b - a);
    const double denom = db - da + 2.0 * d2;
    if (denom == 0.0) return std::nan("");
    return b - (b - a) * (db + d2 - d1) / denom;
}

class Searcher {
public:
    Searcher(const Objective& obj, const Vector& x, double f0, double g0d, const Vector& d,
             const WolfeParams& params)
        : obj_(obj), x_(x), d_(d), f0_(f0), g0d_(g0d), params_(params) {}

    LineSearchResult run(double alpha_init) {
        Trial prev;
        prev.alpha = 0.0;
        prev.f = f0_;
        prev.gd = g0d_;

        double alpha = std::min(alpha_init, params_.alpha_max);
        for (bool first = true;; first = false) {
            Trial cur = evaluate(alpha);
            if (!cur.finite || !armijo(cur) || (!first && cur.f >= prev.f)) {
                return zoom(std::move(prev), std::move(cur));
            }
            if (curvature(cur)) return accept(std::move(cur));
            if (cur.gd >= 0.0) return zoom(std::move(cur), std::move(prev));
            if (alpha >= params_.alpha_max) fail("step reached alpha_max without satisfying curvature");
            prev = std::move(cur);
            alpha = std::min(2.0 * alpha, params_.alpha_max);
        }
    }

private:
    // A decrease rounded away in f0 + delta*alpha*g0d is not a decrease.
    bool armijo(const Trial& t) const {
        return t.f < f0_ && check_wolfe(f0_, g0d_, t.alpha, t.f, t.gd, params_).armijo_ok;
    }
    bool curvature(const Trial& t) const {
        return check_wolfe(f0_, g0d_, t.alpha, t.f, t.gd, params_).curvature_ok;
    }

    [[noreturn]] void fail(const std::string& why) const {
        throw LineSearchError("line search failed: " + why, fevals_, gevals_);
    }

    Trial evaluate(double alpha) {
        if (fevals_ >= params_.max_evals) fail("evaluation budget exhausted");
        Trial t;
        t.alpha = alpha;
        std::optional<Vector> xt;
        try {
            xt.emplace(axpy(alpha, d_, x_));
        } catch (const EvaluationError&) {
            t.finite = false;
            ++fevals_;
            return t;
        }
        ++fevals_;
        t.f = obj_.value(*xt);
        if (!std::isfinite(t.f)) {
            t.finite = false;
            return t;
        }
        ++gevals_;
        try {
            t.g.emplace(obj_.gradient(*xt));
        } catch (const EvaluationError&) {
            t.finite = false;
            return t;
        }
        t.gd = dot(*t.g, d_);
        return t;
    }

    // lo satisfies sufficient decrease and has the lowest f seen so far;
    // lo.gd * (hi.alpha - lo.alpha) < 0.
    LineSearchResult zoom(Trial lo, Trial hi) {
        for (;;) {
            const double left = std::min(lo.alpha, hi.alpha);
            const double right = std::max(lo.alpha, hi.alpha);
            const double width = right - left;
            if (!(width > 4.0 * std::numeric_limits<double>::epsilon() * right)) {
                fail("bracket collapsed");
            }

            double trial = std::nan("");
            if (hi.finite) trial = cubic_minimizer(lo.alpha, lo.f, lo.gd, hi.alpha, hi.f, hi.gd);
            const double margin = 0.1 * width;
            if (!std::isfinite(trial) || trial < left + margin || trial > right - margin) {
                trial = 0.5 * (lo.alpha + hi.alpha);
            }

            Trial t = evaluate(trial);
            if (!t.finite || !armijo(t) || t.f >= lo.f) {
                hi = std::move(t);
                continue;
            }
            if (curvature(t)) return accept(std::move(t));
            if (t.gd * (hi.alpha - lo.alpha) >= 0.0) hi = std::move(lo);
            lo = std::move(t);
        }
    }

    LineSearchResult accept(Trial t) {
        return LineSearchResult{t.alpha, t.f, std::move(*t.g), fevals_, gevals_};
    }

    const Objective& obj_;
    const Vector& x_;
    const Vector& d_;
    double f0_;
    double g0d_;
    const WolfeParams& params_;
    std::size_t fevals_ = 0;
    std::size_t gevals_ = 0;
};

} // namespace

LineSearchResult line_search(const Objective& obj, const Vector& x, double f0, const Vector& g0,
                             const Vector& d, double alpha_init, const WolfeParams& params) {
    params.validate();
    const double g0d = dot(g0, d);
    if (!(g0d < 0.0)) throw NotDescentError("line search: direction is not a descent direction");
    if (!(alpha_init > 0.0)) throw InvalidArgument("line search: initial step must be positive");
    return Searcher(obj, x, f0, g0d, d, params).run(alpha_init);
}

} // namespace cgkit
