#pragma once

#include "cgkit/core.hpp"

#include <atomic>
#include <cstdint>
#include <random>
#include <vector>

namespace cgkit::testing {

inline Vector random_vector(std::mt19937_64& rng, std::size_t n, double lo = -2.0, double hi = 2.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> v(n);
    for (double& x : v) x = dist(rng);
    return Vector(std::move(v));
}

/// Forwards to another objective and counts every call made through it.
class CountingObjective final : public Objective {
public:
    explicit CountingObjective(const Objective& inner) : inner_(inner) {}

    std::size_t dim() const override { return inner_.dim(); }
    std::string name() const override { return inner_.name(); }

    std::size_t value_calls() const { return values_.load(); }
    std::size_t gradient_calls() const { return gradients_.load(); }

protected:
    double do_value(std::span<const double> x) const override {
        ++values_;
        return inner_.value(Vector(std::vector<double>(x.begin(), x.end())));
    }
    void do_gradient(std::span<const double> x, std::span<double> out) const override {
        ++gradients_;
        const Vector g = inner_.gradient(Vector(std::vector<double>(x.begin(), x.end())));
        std::copy(g.begin(), g.end(), out.begin());
    }

private:
    const Objective& inner_;
    mutable std::atomic<std::size_t> values_{0};
    mutable std::atomic<std::size_t> gradients_{0};
};

} // namespace cgkit::testing
