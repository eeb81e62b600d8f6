#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cgkit {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operand lengths disagree.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// An objective produced a non-finite value or gradient.
class EvaluationError : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

// ---------------------------------------------------------------------------
// Vector
// ---------------------------------------------------------------------------

/// Dense vector of finite doubles with a fixed length.
///
/// Every constructor rejects NaN/Inf components with an EvaluationError, so a
/// Vector that exists is always finite.
class Vector {
public:
    explicit Vector(std::size_t n, double fill = 0.0);
    explicit Vector(std::vector<double> values);
    Vector(std::initializer_list<double> values);

    std::size_t size() const noexcept { return data_.size(); }
    double operator[](std::size_t i) const { return data_[i]; }
    std::span<const double> values() const noexcept { return data_; }
    const std::vector<double>& raw() const noexcept { return data_; }

    auto begin() const noexcept { return data_.begin(); }
    auto end() const noexcept { return data_.end(); }

    friend bool operator==(const Vector&, const Vector&) = default;

private:
    std::vector<double> data_;
};

double dot(const Vector& a, const Vector& b);
double norm2(const Vector& a);
double norm_inf(const Vector& a);

/// y + alpha * x
Vector axpy(double alpha, const Vector& x, const Vector& y);
/// alpha * x
Vector scale(double alpha, const Vector& x);
/// a - b
Vector sub(const Vector& a, const Vector& b);
/// -a
Vector negate(const Vector& a);

// ---------------------------------------------------------------------------
// Objective
// ---------------------------------------------------------------------------

/// Smooth scalar function on R^n together with its analytic gradient.
///
/// Implementations override do_value/do_gradient; the public entry points
/// check dimensions and finiteness. Objectives must be immutable once built so
/// that concurrent solves can share them.
class Objective {
public:
    virtual ~Objective() = default;

    virtual std::size_t dim() const = 0;
    virtual std::string name() const = 0;

    /// f(x). May return a non-finite value; callers decide what that means.
    double value(const Vector& x) const;
    /// grad f(x). Throws EvaluationError if any component is non-finite.
    Vector gradient(const Vector& x) const;

protected:
    virtual double do_value(std::span<const double> x) const = 0;
    /// Writes the gradient into `out` (already sized to dim()).
    virtual void do_gradient(std::span<const double> x, std::span<double> out) const = 0;
};

/// Per-solve evaluation counters.
struct EvalCounter {
    std::size_t fevals = 0;
    std::size_t gevals = 0;
};

/// Routes calls to an objective while counting them.
class CountingEvaluator {
public:
    explicit CountingEvaluator(const Objective& obj) : obj_(obj) {}

    double value(const Vector& x) {
        ++counter_.fevals;
        return obj_.value(x);
    }
    Vector gradient(const Vector& x) {
        ++counter_.gevals;
        return obj_.gradient(x);
    }

    const Objective& objective() const noexcept { return obj_; }
    const EvalCounter& counter() const noexcept { return counter_; }

private:
    const Objective& obj_;
    EvalCounter counter_;
};

/// Central-difference gradient with per-coordinate step h * max(1, |x_i|).
///
/// Throws EvaluationError if f is non-finite at any probe point.
Vector fd_gradient(const Objective& obj, const Vector& x, double h = 1e-6);

/// max_i |a_i - b_i| / (1 + ||a||_2)
double relative_max_error(const Vector& analytic, const Vector& reference);

} // namespace cgkit
