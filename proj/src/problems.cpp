#include "cgkit/problems.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace cgkit {

namespace {

using Span = std::span<const double>;
using Out = std::span<double>;

ProblemEntry make_entry(std::string name, std::size_t n, FunctionObjective::ValueFn value,
                        FunctionObjective::GradientFn gradient, Vector x0,
                        std::optional<double> f_star = std::nullopt,
                        std::optional<Vector> x_star = std::nullopt) {
    auto obj = std::make_shared<FunctionObjective>(name, n, std::move(value), std::move(gradient));
    return ProblemEntry{std::move(name), std::move(obj), std::move(x0), f_star, std::move(x_star)};
}

Vector filled(std::size_t n, double v) { return Vector(n, v); }

Vector periodic(std::size_t n, std::initializer_list<double> pattern) {
    std::vector<double> out(n);
    const std::vector<double> p(pattern);
    for (std::size_t i = 0; i < n; ++i) out[i] = p[i % p.size()];
    return Vector(std::move(out));
}

void require_multiple(std::size_t n, std::size_t block, const char* what) {
    if (n == 0 || n % block != 0) {
        throw InvalidArgument(std::string(what) + ": dimension must be a positive multiple of " +
                              std::to_string(block));
    }
}

double sq(double v) { return v * v; }

} // namespace

ProblemEntry rosenbr() {
    return make_entry(
        "rosenbr", 2,
        [](Span x) { return 100.0 * sq(x[1] - x[0] * x[0]) + sq(1.0 - x[0]); },
        [](Span x, Out g) {
            const double r = x[1] - x[0] * x[0];
            g[0] = -400.0 * x[0] * r - 2.0 * (1.0 - x[0]);
            g[1] = 200.0 * r;
        },
        Vector{-1.2, 1.0}, 0.0, Vector{1.0, 1.0});
}

ProblemEntry srosenbr(std::size_t n) {
    require_multiple(n, 2, "srosenbr");
    return make_entry(
        "srosenbr", n,
        [](Span x) {
            double f = 0.0;
            for (std::size_t i = 0; i + 1 < x.size(); i += 2) {
                f += 100.0 * sq(x[i + 1] - x[i] * x[i]) + sq(1.0 - x[i]);
            }
            return f;
        },
        [](Span x, Out g) {
            for (std::size_t i = 0; i + 1 < x.size(); i += 2) {
                const double r = x[i + 1] - x[i] * x[i];
                g[i] = -400.0 * x[i] * r - 2.0 * (1.0 - x[i]);
                g[i + 1] = 200.0 * r;
            }
        },
        periodic(n, {-1.2, 1.0}), 0.0, filled(n, 1.0));
}

ProblemEntry woods(std::size_t n) {
    require_multiple(n, 4, "woods");
    return make_entry(
        "woods", n,
        [](Span x) {
            double f = 0.0;
            for (std::size_t i = 0; i + 3 < x.size(); i += 4) {
                const double a = x[i], b = x[i + 1], c = x[i + 2], d = x[i + 3];
                f += 100.0 * sq(b - a * a) + sq(1.0 - a) + 90.0 * sq(d - c * c) + sq(1.0 - c) +
                     10.0 * sq(b + d - 2.0) + 0.1 * sq(b - d);
            }
            return f;
        },
        [](Span x, Out g) {
            for (std::size_t i = 0; i + 3 < x.size(); i += 4) {
                const double a = x[i], b = x[i + 1], c = x[i + 2], d = x[i + 3];
                g[i] = -400.0 * a * (b - a * a) - 2.0 * (1.0 - a);
                g[i + 1] = 200.0 * (b - a * a) + 20.0 * (b + d - 2.0) + 0.2 * (b - d);
                g[i + 2] = -360.0 * c * (d - c * c) - 2.0 * (1.0 - c);
                g[i + 3] = 180.0 * (d - c * c) + 20.0 * (b + d - 2.0) - 0.2 * (b - d);
            }
        },
        periodic(n, {-3.0, -1.0, -3.0, -1.0}), 0.0, filled(n, 1.0));
}

ProblemEntry powellsg(std::size_t n) {
    require_multiple(n, 4, "powellsg");
    return make_entry(
        "powellsg", n,
        [](Span x) {
            double f = 0.0;
            for (std::size_t i = 0; i + 3 < x.size(); i += 4) {
                const double a = x[i], b = x[i + 1], c = x[i + 2], d = x[i + 3];
                f += sq(a + 10.0 * b) + 5.0 * sq(c - d) + std::pow(b - 2.0 * c, 4) +
                     10.0 * std::pow(a - d, 4);
            }
            return f;
        },
        [](Span x, Out g) {
            for (std::size_t i = 0; i + 3 < x.size(); i += 4) {
                const double a = x[i], b = x[i + 1], c = x[i + 2], d = x[i + 3];
                const double bc3 = std::pow(b - 2.0 * c, 3);
                const double ad3 = std::pow(a - d, 3);
                g[i] = 2.0 * (a + 10.0 * b) + 40.0 * ad3;
                g[i + 1] = 20.0 * (a + 10.0 * b) + 4.0 * bc3;
                g[i + 2] = 10.0 * (c - d) - 8.0 * bc3;
                g[i + 3] = -10.0 * (c - d) - 40.0 * ad3;
            }
        },
        periodic(n, {3.0, -1.0, 0.0, 1.0}), 0.0, filled(n, 0.0));
}

ProblemEntry tridia(std::size_t n) {
    // (x_1 - 1)^2 + sum_{i>=2} i (2 x_i - x_{i-1})^2
    std::vector<double> xs(n);
    xs[0] = 1.0;
    for (std::size_t i = 1; i < n; ++i) xs[i] = xs[i - 1] / 2.0;
    auto entry = make_entry(
        "tridia", n,
        [](Span x) {
            double f = sq(x[0] - 1.0);
            for (std::size_t i = 1; i < x.size(); ++i) {
                f += static_cast<double>(i + 1) * sq(2.0 * x[i] - x[i - 1]);
            }
            return f;
        },
        [](Span x, Out g) {
            std::fill(g.begin(), g.end(), 0.0);
            g[0] = 2.0 * (x[0] - 1.0);
            for (std::size_t i = 1; i < x.size(); ++i) {
                const double r = static_cast<double>(i + 1) * (2.0 * x[i] - x[i - 1]);
                g[i] += 4.0 * r;
                g[i - 1] -= 2.0 * r;
            }
        },
        filled(n, 1.0), 0.0, Vector(std::move(xs)));
    entry.strictly_convex_quadratic = true;
    return entry;
}

ProblemEntry dixmaana(std::size_t n) {
    require_multiple(n, 3, "dixmaana");
    const std::size_t m = n / 3;
    constexpr double gamma = 0.125;
    constexpr double delta = 0.125;
    return make_entry(
        "dixmaana", n,
        [m](Span x) {
            double f = 1.0;
            for (double v : x) f += v * v;
            for (std::size_t i = 0; i < 2 * m; ++i) f += gamma * x[i] * x[i] * std::pow(x[i + m], 4);
            for (std::size_t i = 0; i < m; ++i) f += delta * x[i] * x[i + 2 * m];
            return f;
        },
        [m](Span x, Out g) {
            for (std::size_t i = 0; i < x.size(); ++i) g[i] = 2.0 * x[i];
            for (std::size_t i = 0; i < 2 * m; ++i) {
                const double u = x[i + m];
                g[i] += 2.0 * gamma * x[i] * std::pow(u, 4);
                g[i + m] += 4.0 * gamma * x[i] * x[i] * u * u * u;
            }
            for (std::size_t i = 0; i < m; ++i) {
                g[i] += delta * x[i + 2 * m];
                g[i + 2 * m] += delta * x[i];
            }
        },
        filled(n, 2.0), 1.0);
}

ProblemEntry engval1(std::size_t n) {
    return make_entry(
        "engval1", n,
        [](Span x) {
            long double f = 0.0L;
            for (std::size_t i = 0; i + 1 < x.size(); ++i) {
                const long double a = x[i], b = x[i + 1];
                const long double q = a * a + b * b;
                f += q * q - 4.0L * a + 3.0L;
            }
            return static_cast<double>(f);
        },
        [](Span x, Out g) {
            std::fill(g.begin(), g.end(), 0.0);
            for (std::size_t i = 0; i + 1 < x.size(); ++i) {
                const double q = x[i] * x[i] + x[i + 1] * x[i + 1];
                g[i] += 4.0 * q * x[i] - 4.0;
                g[i + 1] += 4.0 * q * x[i + 1];
            }
        },
        filled(n, 2.0));
}

ProblemEntry liarwhd(std::size_t n) {
    return make_entry(
        "liarwhd", n,
        [](Span x) {
            double f = 0.0;
            for (double v : x) f += 4.0 * sq(v * v - x[0]) + sq(v - 1.0);
            return f;
        },
        [](Span x, Out g) {
            double g0 = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                const double r = x[i] * x[i] - x[0];
                g[i] = 16.0 * r * x[i] + 2.0 * (x[i] - 1.0);
                g0 -= 8.0 * r;
            }
            g[0] += g0;
        },
        filled(n, 4.0), 0.0, filled(n, 1.0));
}

ProblemEntry edensch(std::size_t n) {
    return make_entry(
        "edensch", n,
        [](Span x) {
            long double f = 16.0L;
            for (std::size_t i = 0; i + 1 < x.size(); ++i) {
                const long double a = x[i], b = x[i + 1];
                const long double t = a - 2.0L;
                const long double u = a * b - 2.0L * b;
                f += t * t * t * t + u * u + (b + 1.0L) * (b + 1.0L);
            }
            return static_cast<double>(f);
        },
        [](Span x, Out g) {
            std::fill(g.begin(), g.end(), 0.0);
            for (std::size_t i = 0; i + 1 < x.size(); ++i) {
                const double r = x[i] * x[i + 1] - 2.0 * x[i + 1];
                g[i] += 4.0 * std::pow(x[i] - 2.0, 3) + 2.0 * r * x[i + 1];
                g[i + 1] += 2.0 * r * (x[i] - 2.0) + 2.0 * (x[i + 1] + 1.0);
            }
        },
        filled(n, 0.0));
}

ProblemEntry quartc(std::size_t n) {
    std::vector<double> xs(n);
    for (std::size_t i = 0; i < n; ++i) xs[i] = static_cast<double>(i + 1);
    return make_entry(
        "quartc", n,
        [](Span x) {
            double f = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) f += std::pow(x[i] - static_cast<double>(i + 1), 4);
            return f;
        },
        [](Span x, Out g) {
            for (std::size_t i = 0; i < x.size(); ++i) {
                g[i] = 4.0 * std::pow(x[i] - static_cast<double>(i + 1), 3);
            }
        },
        filled(n, 2.0), 0.0, Vector(std::move(xs)));
}

ProblemEntry cosine(std::size_t n) {
    return make_entry(
        "cosine", n,
        [](Span x) {
            double f = 0.0;
            for (std::size_t i = 0; i + 1 < x.size(); ++i) f += std::cos(-0.5 * x[i + 1] + x[i] * x[i]);
            return f;
        },
        [](Span x, Out g) {
            std::fill(g.begin(), g.end(), 0.0);
            for (std::size_t i = 0; i + 1 < x.size(); ++i) {
                const double s = std::sin(-0.5 * x[i + 1] + x[i] * x[i]);
                g[i] -= 2.0 * x[i] * s;
                g[i + 1] += 0.5 * s;
            }
        },
        filled(n, 1.0));
}

ProblemEntry dqdrtic(std::size_t n) {
    if (n < 3) throw InvalidArgument("dqdrtic: dimension must be >= 3");
    auto entry = make_entry(
        "dqdrtic", n,
        [](Span x) {
            double f = 0.0;
            for (std::size_t i = 0; i + 2 < x.size(); ++i) {
                f += x[i] * x[i] + 100.0 * x[i + 1] * x[i + 1] + 100.0 * x[i + 2] * x[i + 2];
            }
            return f;
        },
        [](Span x, Out g) {
            std::fill(g.begin(), g.end(), 0.0);
            for (std::size_t i = 0; i + 2 < x.size(); ++i) {
                g[i] += 2.0 * x[i];
                g[i + 1] += 200.0 * x[i + 1];
                g[i + 2] += 200.0 * x[i + 2];
            }
        },
        filled(n, 3.0), 0.0, filled(n, 0.0));
    entry.strictly_convex_quadratic = true;
    return entry;
}

ProblemEntry nondia(std::size_t n) {
    if (n < 2) throw InvalidArgument("nondia: dimension must be >= 2");
    return make_entry(
        "nondia", n,
        [](Span x) {
            double f = sq(x[0] - 1.0);
            for (std::size_t i = 1; i < x.size(); ++i) f += 100.0 * sq(x[0] - x[i] * x[i]);
            return f;
        },
        [](Span x, Out g) {
            g[0] = 2.0 * (x[0] - 1.0);
            for (std::size_t i = 1; i < x.size(); ++i) {
                const double r = x[0] - x[i] * x[i];
                g[0] += 200.0 * r;
                g[i] = -400.0 * r * x[i];
            }
        },
        filled(n, -1.0), 0.0, filled(n, 1.0));
}

ProblemEntry beale() {
    return make_entry(
        "beale", 2,
        [](Span x) {
            const double a = x[0], b = x[1];
            return sq(1.5 - a + a * b) + sq(2.25 - a + a * b * b) + sq(2.625 - a + a * b * b * b);
        },
        [](Span x, Out g) {
            const double a = x[0], b = x[1];
            const double t1 = 1.5 - a + a * b;
            const double t2 = 2.25 - a + a * b * b;
            const double t3 = 2.625 - a + a * b * b * b;
            g[0] = 2.0 * t1 * (b - 1.0) + 2.0 * t2 * (b * b - 1.0) + 2.0 * t3 * (b * b * b - 1.0);
            g[1] = 2.0 * t1 * a + 4.0 * t2 * a * b + 6.0 * t3 * a * b * b;
        },
        Vector{1.0, 1.0}, 0.0, Vector{3.0, 0.5});
}

ProblemEntry himmelbg() {
    return make_entry(
        "himmelbg", 2,
        [](Span x) { return (2.0 * x[0] * x[0] + 3.0 * x[1] * x[1]) * std::exp(-x[0] - x[1]); },
        [](Span x, Out g) {
            const double e = std::exp(-x[0] - x[1]);
            const double q = 2.0 * x[0] * x[0] + 3.0 * x[1] * x[1];
            g[0] = e * (4.0 * x[0] - q);
            g[1] = e * (6.0 * x[1] - q);
        },
        Vector{0.5, 0.5}, 0.0, Vector{0.0, 0.0});
}

namespace {

// Residuals of the four balance equations and their (constant-pattern) Jacobian.
void heat_residuals(Span x, double r[4]) {
    auto source = [](double m) { return 20.0 - 1.5 * m + m * m / 20.0; };
    r[0] = 2.0 * (x[1] + x[2] - 4.0 * x[0]) + source(x[0]);
    r[1] = 2.0 * (x[0] - 3.0 * x[2] + x[3]) + source(x[2]);
    r[2] = 2.0 * (2.0 * x[0] + x[3] - 4.0 * x[1]) + source(x[1]);
    r[3] = 2.0 * (x[1] + 2.0 * x[2] - 3.0 * x[3]) + source(x[3]);
}

} // namespace

std::shared_ptr<const Objective> heat_objective() {
    return std::make_shared<FunctionObjective>(
        "heat", 4,
        [](Span x) {
            double r[4];
            heat_residuals(x, r);
            return r[0] * r[0] + r[1] * r[1] + r[2] * r[2] + r[3] * r[3];
        },
        [](Span x, Out g) {
            double r[4];
            heat_residuals(x, r);
            auto dsource = [](double m) { return -1.5 + m / 10.0; };
            // J^T r, row by row of the Jacobian.
            g[0] = 2.0 * ((-8.0 + dsource(x[0])) * r[0] + 2.0 * r[1] + 4.0 * r[2]);
            g[1] = 2.0 * (2.0 * r[0] + (-8.0 + dsource(x[1])) * r[2] + 2.0 * r[3]);
            g[2] = 2.0 * (2.0 * r[0] + (-6.0 + dsource(x[2])) * r[1] + 4.0 * r[3]);
            g[3] = 2.0 * (2.0 * r[1] + 2.0 * r[2] + (-6.0 + dsource(x[3])) * r[3]);
        });
}

ProblemEntry heat() {
    return ProblemEntry{"heat", heat_objective(), Vector(4, 0.0), 0.0, std::nullopt};
}

std::vector<ProblemEntry> catalog() {
    std::vector<ProblemEntry> out;
    out.push_back(rosenbr());
    out.push_back(srosenbr());
    out.push_back(woods());
    out.push_back(powellsg());
    out.push_back(tridia());
    out.push_back(dixmaana());
    out.push_back(engval1());
    out.push_back(liarwhd());
    out.push_back(edensch());
    out.push_back(quartc());
    out.push_back(cosine());
    out.push_back(dqdrtic());
    out.push_back(nondia());
    out.push_back(beale());
    out.push_back(himmelbg());
    out.push_back(heat());
    return out;
}

std::optional<ProblemEntry> find_problem(std::string_view name) {
    std::string key(name);
    std::transform(key.begin(), key.end(), key.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (key == "rosenbrock") key = "rosenbr";
    for (auto& entry : catalog()) {
        if (entry.name == key) return std::move(entry);
    }
    return std::nullopt;
}

std::shared_ptr<const Objective> diagonal_quadratic(std::vector<double> q) {
    const std::size_t n = q.size();
    return std::make_shared<FunctionObjective>(
        "diag-quadratic", n,
        [q](Span x) {
            double f = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) f += 0.5 * q[i] * x[i] * x[i];
            return f;
        },
        [q](Span x, Out g) {
            for (std::size_t i = 0; i < x.size(); ++i) g[i] = q[i] * x[i];
        });
}

void DenoiseSpec::validate() const {
    if (noisy.size() == 0) throw InvalidArgument("denoise: empty image");
    if (!(lambda > 0.0)) throw InvalidArgument("denoise: lambda must be > 0");
    if (!(eps_smooth > 0.0)) throw InvalidArgument("denoise: eps_smooth must be > 0");
}

std::shared_ptr<const Objective> denoise_objective(const DenoiseSpec& spec) {
    spec.validate();
    const std::size_t w = spec.noisy.width;
    const std::size_t h = spec.noisy.height;
    const double lambda = spec.lambda;
    const double eps = spec.eps_smooth;
    auto b = std::make_shared<const std::vector<double>>(spec.noisy.pixels);

    auto for_each_edge = [w, h](auto&& visit) {
        for (std::size_t r = 0; r < h; ++r) {
            for (std::size_t c = 0; c < w; ++c) {
                const std::size_t i = r * w + c;
                if (c + 1 < w) visit(i, i + 1);
                if (r + 1 < h) visit(i, i + w);
            }
        }
    };

    return std::make_shared<FunctionObjective>(
        "denoise", w * h,
        [b, lambda, eps, for_each_edge](Span x) {
            double fit = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) fit += sq(x[i] - (*b)[i]);
            double reg = 0.0;
            for_each_edge([&](std::size_t i, std::size_t j) {
                const double u = x[i] - x[j];
                reg += std::sqrt(u * u + eps * eps) - eps;
            });
            return 0.5 * fit + lambda * reg;
        },
        [b, lambda, eps, for_each_edge](Span x, Out g) {
            for (std::size_t i = 0; i < x.size(); ++i) g[i] = x[i] - (*b)[i];
            for_each_edge([&](std::size_t i, std::size_t j) {
                const double u = x[i] - x[j];
                const double t = lambda * u / std::sqrt(u * u + eps * eps);
                g[i] += t;
                g[j] -= t;
            });
        });
}

} // namespace cgkit
