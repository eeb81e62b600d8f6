#include "cgkit/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cgkit {

namespace {

void require_finite(const std::vector<double>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i])) {
            throw EvaluationError("non-finite vector component at index " + std::to_string(i));
        }
    }
}

void require_same_length(const Vector& a, const Vector& b, const char* op) {
    if (a.size() != b.size()) {
        throw DimensionError(std::string(op) + ": length mismatch (" + std::to_string(a.size()) +
                             " vs " + std::to_string(b.size()) + ")");
    }
}

} // namespace

Vector::Vector(std::size_t n, double fill) : data_(n, fill) { require_finite(data_); }

Vector::Vector(std::vector<double> values) : data_(std::move(values)) { require_finite(data_); }

Vector::Vector(std::initializer_list<double> values) : data_(values) { require_finite(data_); }

double dot(const Vector& a, const Vector& b) {
    require_same_length(a, b, "dot");
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double norm2(const Vector& a) { return std::sqrt(dot(a, a)); }

double norm_inf(const Vector& a) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
}

Vector axpy(double alpha, const Vector& x, const Vector& y) {
    require_same_length(x, y, "axpy");
    std::vector<double> out(y.raw());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += alpha * x[i];
    return Vector(std::move(out));
}

Vector scale(double alpha, const Vector& x) {
    std::vector<double> out(x.raw());
    for (double& v : out) v *= alpha;
    return Vector(std::move(out));
}

Vector sub(const Vector& a, const Vector& b) {
    require_same_length(a, b, "sub");
    std::vector<double> out(a.raw());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b[i];
    return Vector(std::move(out));
}

Vector negate(const Vector& a) { return scale(-1.0, a); }

double Objective::value(const Vector& x) const {
    if (x.size() != dim()) {
        throw DimensionError(name() + ": expected dimension " + std::to_string(dim()) + ", got " +
                             std::to_string(x.size()));
    }
    return do_value(x.values());
}

Vector Objective::gradient(const Vector& x) const {
    if (x.size() != dim()) {
        throw DimensionError(name() + ": expected dimension " + std::to_string(dim()) + ", got " +
                             std::to_string(x.size()));
    }
    std::vector<double> out(dim(), 0.0);
    do_gradient(x.values(), out);
    return Vector(std::move(out));
}

Vector fd_gradient(const Objective& obj, const Vector& x, double h) {
    if (!(h > 0.0)) throw InvalidArgument("fd_gradient: step must be positive");
    std::vector<double> probe(x.raw());
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double xi = probe[i];
        const double step = h * std::max(1.0, std::abs(xi));
        probe[i] = xi + step;
        const double fp = obj.value(Vector(probe));
        probe[i] = xi - step;
        const double fm = obj.value(Vector(probe));
        probe[i] = xi;
        if (!std::isfinite(fp) || !std::isfinite(fm)) {
            throw EvaluationError(obj.name() + ": non-finite value at finite-difference probe " +
                                  std::to_string(i));
        }
        out[i] = (fp - fm) / (2.0 * step);
    }
    return Vector(std::move(out));
}

double relative_max_error(const Vector& analytic, const Vector& reference) {
    require_same_length(analytic, reference, "relative_max_error");
    double worst = 0.0;
    for (std::size_t i = 0; i < analytic.size(); ++i) {
        worst = std::max(worst, std::abs(analytic[i] - reference[i]));
    }
    return worst / (1.0 + norm2(analytic));
}

} // namespace cgkit
