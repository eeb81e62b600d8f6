#include "cgkit/directions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

namespace cgkit {

namespace {

constexpr std::array<std::pair<Method, std::string_view>, 11> kMethodNames{{
    {Method::azhs, "azhs"},
    {Method::azhs3, "azhs3"},
    {Method::azprp, "azprp"},
    {Method::hs, "hs"},
    {Method::hs_plus, "hs+"},
    {Method::prp, "prp"},
    {Method::prp_plus, "prp+"},
    {Method::fr, "fr"},
    {Method::dl, "dl"},
    {Method::dl_plus, "dl+"},
    {Method::hz, "hz"},
}};

bool tiny(double denom) { return !(std::abs(denom) >= kDenominatorFloor); }

// Quantities shared by the HS-family formulas.
struct Pieces {
    Vector y;
    double dty;
};

std::optional<Pieces> hs_pieces(const Vector& g, const DirectionState& state) {
    Vector y = sub(g, state.g_prev);
    const double dty = dot(state.d_prev, y);
    if (tiny(dty)) return std::nullopt;
    return Pieces{std::move(y), dty};
}

// -(1/alpha_{k-1}) mu g^T s / d^T y, the term shared by every AZHS case.
double azhs_tail(const Vector& g, const DirectionState& state, double mu_k, double dty) {
    return -(1.0 / state.alpha_prev) * mu_k * dot(g, state.s_prev) / dty;
}

} // namespace

std::string_view method_name(Method m) {
    for (const auto& [kind, name] : kMethodNames) {
        if (kind == m) return name;
    }
    return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
    for (const auto& [kind, known] : kMethodNames) {
        if (known == name) return kind;
    }
    if (name == "hsplus") return Method::hs_plus;
    if (name == "prpplus") return Method::prp_plus;
    if (name == "dlplus") return Method::dl_plus;
    return std::nullopt;
}

void MethodSpec::validate() const {
    if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidArgument("method: t must be >= 0");
    if (!(eta > 0.0) || !std::isfinite(eta)) throw InvalidArgument("method: eta must be > 0");
}

std::string_view branch_name(Branch b) {
    switch (b) {
    case Branch::restart: return "restart";
    case Branch::safeguard_restart: return "safeguard-restart";
    case Branch::azhs_case1: return "azhs-case1";
    case Branch::azhs_case2: return "azhs-case2";
    case Branch::azhs3_case_a: return "azhs3-caseA";
    case Branch::azhs3_case_b: return "azhs3-caseB";
    case Branch::azhs3_case_c: return "azhs3-caseC";
    case Branch::azprp_positive: return "azprp-positive";
    case Branch::azprp_zero: return "azprp-zero";
    case Branch::hs: return "hs";
    case Branch::hs_plus: return "hs+";
    case Branch::prp: return "prp";
    case Branch::prp_plus: return "prp+";
    case Branch::fr: return "fr";
    case Branch::dl: return "dl";
    case Branch::dl_plus: return "dl+";
    case Branch::hz: return "hz";
    case Branch::hz_truncated: return "hz-truncated";
    }
    return "unknown";
}

std::optional<double> mu(const Vector& s_prev, const Vector& y) {
    const double ny = norm2(y);
    if (!(ny > 0.0)) return std::nullopt;
    return norm2(s_prev) / ny;
}

BetaOutcome beta_azhs(const Vector& g, const DirectionState& state) {
    auto pieces = hs_pieces(g, state);
    if (!pieces) return BetaOutcome::restart();
    const auto mu_k = mu(state.s_prev, pieces->y);
    if (!mu_k) return BetaOutcome::restart();

    const double gg = dot(g, g);
    const double scaled_overlap = *mu_k * std::abs(dot(g, state.g_prev));
    const double tail = azhs_tail(g, state, *mu_k, pieces->dty);
    if (gg > scaled_overlap) {
        return {(gg - scaled_overlap) / pieces->dty + tail, Branch::azhs_case1, false};
    }
    return {tail, Branch::azhs_case2, false};
}

BetaOutcome beta_azhs3(const Vector& g, const DirectionState& state) {
    auto pieces = hs_pieces(g, state);
    if (!pieces) return BetaOutcome::restart();
    const auto mu_k = mu(state.s_prev, pieces->y);
    if (!mu_k) return BetaOutcome::restart();

    const double gg = dot(g, g);
    const double overlap = std::abs(dot(g, state.g_prev));
    if (gg > overlap) {
        return {(gg - overlap) / pieces->dty, Branch::azhs3_case_a, false};
    }
    const double tail = azhs_tail(g, state, *mu_k, pieces->dty);
    if (gg > *mu_k * overlap) {
        return {(gg - *mu_k * overlap) / pieces->dty + tail, Branch::azhs3_case_b, false};
    }
    return {tail, Branch::azhs3_case_c, false};
}

BetaOutcome beta_azprp(const Vector& g, const DirectionState& state) {
    const double gpgp = dot(state.g_prev, state.g_prev);
    if (tiny(gpgp)) return BetaOutcome::restart();
    const auto mu_k = mu(state.s_prev, sub(g, state.g_prev));
    if (!mu_k) return BetaOutcome::restart();

    const double gg = dot(g, g);
    const double scaled_overlap = *mu_k * std::abs(dot(g, state.g_prev));
    if (gg > scaled_overlap) return {(gg - scaled_overlap) / gpgp, Branch::azprp_positive, false};
    return {0.0, Branch::azprp_zero, false};
}

BetaOutcome beta_classical(Method kind, const Vector& g, const DirectionState& state) {
    switch (kind) {
    case Method::hs:
    case Method::hs_plus: {
        auto pieces = hs_pieces(g, state);
        if (!pieces) return BetaOutcome::restart();
        const double b = dot(g, pieces->y) / pieces->dty;
        if (kind == Method::hs) return {b, Branch::hs, false};
        return {std::max(b, 0.0), Branch::hs_plus, false};
    }
    case Method::fr:
    case Method::prp:
    case Method::prp_plus: {
        const double gpgp = dot(state.g_prev, state.g_prev);
        if (tiny(gpgp)) return BetaOutcome::restart();
        if (kind == Method::fr) return {dot(g, g) / gpgp, Branch::fr, false};
        const double b = dot(g, sub(g, state.g_prev)) / gpgp;
        if (kind == Method::prp) return {b, Branch::prp, false};
        return {std::max(b, 0.0), Branch::prp_plus, false};
    }
    default:
        throw InvalidArgument("beta_classical: not a classical method: " +
                              std::string(method_name(kind)));
    }
}

BetaOutcome beta_dl(const Vector& g, const DirectionState& state, double t, bool plus) {
    auto pieces = hs_pieces(g, state);
    if (!pieces) return BetaOutcome::restart();
    const double hs = dot(g, pieces->y) / pieces->dty;
    const double tail = t * dot(g, state.s_prev) / pieces->dty;
    if (plus) return {std::max(hs, 0.0) - tail, Branch::dl_plus, false};
    return {hs - tail, Branch::dl, false};
}

BetaOutcome beta_hz(const Vector& g, const DirectionState& state, double eta) {
    auto pieces = hs_pieces(g, state);
    if (!pieces) return BetaOutcome::restart();
    const double dnorm = norm2(state.d_prev);
    if (!(dnorm > 0.0)) return BetaOutcome::restart();

    const double yy = dot(pieces->y, pieces->y);
    const double beta_n =
        (dot(pieces->y, g) - 2.0 * yy / pieces->dty * dot(state.d_prev, g)) / pieces->dty;
    const double eta_k = -1.0 / (dnorm * std::min(eta, norm2(state.g_prev)));
    if (beta_n < eta_k) return {eta_k, Branch::hz_truncated, false};
    return {beta_n, Branch::hz, false};
}

BetaOutcome beta(const MethodSpec& spec, const Vector& g, const DirectionState& state) {
    switch (spec.kind) {
    case Method::azhs: return beta_azhs(g, state);
    case Method::azhs3: return beta_azhs3(g, state);
    case Method::azprp: return beta_azprp(g, state);
    case Method::dl: return beta_dl(g, state, spec.t, false);
    case Method::dl_plus: return beta_dl(g, state, spec.t, true);
    case Method::hz: return beta_hz(g, state, spec.eta);
    default: return beta_classical(spec.kind, g, state);
    }
}

DirectionResult direction(const Vector& g, const DirectionState* state, const MethodSpec& spec,
                          const SafeguardParams& safeguard) {
    const double gg = dot(g, g);
    if (!(gg > 0.0)) throw InvalidArgument("direction: zero gradient, already converged");

    if (state == nullptr || state->k < 2) return {negate(g), BetaOutcome::restart()};

    BetaOutcome outcome = beta(spec, g, *state);
    if (outcome.restarted) return {negate(g), outcome};
    if (!std::isfinite(outcome.beta)) {
        return {negate(g), BetaOutcome::restart(Branch::safeguard_restart)};
    }

    std::optional<Vector> d;
    try {
        d.emplace(axpy(outcome.beta, state->d_prev, negate(g)));
    } catch (const EvaluationError&) {
        return {negate(g), BetaOutcome::restart(Branch::safeguard_restart)};
    }
    if (!(dot(g, *d) <= -safeguard.c_min * gg)) {
        return {negate(g), BetaOutcome::restart(Branch::safeguard_restart)};
    }
    return {std::move(*d), outcome};
}

} // namespace cgkit
