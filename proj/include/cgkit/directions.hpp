#pragma once

#include "cgkit/core.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace cgkit {

enum class Method { azhs, azhs3, azprp, hs, hs_plus, prp, prp_plus, fr, dl, dl_plus, hz };

/// Lower-case command-line name of a method, e.g. "azhs", "prp+".
std::string_view method_name(Method m);
/// Accepts the names produced by method_name plus "hsplus"/"prpplus"/"dlplus".
std::optional<Method> parse_method(std::string_view name);

struct MethodSpec {
    Method kind = Method::azhs;
    double t = 0.1;     ///< Dai-Liao parameter, DL and DL+ only
    double eta = 0.01;  ///< Hager-Zhang truncation constant

    void validate() const;
};

/// Everything carried over from iteration k-1.
struct DirectionState {
    Vector g_prev;
    Vector d_prev;
    Vector s_prev;  ///< alpha_prev * d_prev
    double alpha_prev;
    std::size_t k;  ///< index of the iteration the state feeds (k >= 2)
};

enum class Branch {
    restart,
    safeguard_restart,
    azhs_case1,
    azhs_case2,
    azhs3_case_a,
    azhs3_case_b,
    azhs3_case_c,
    azprp_positive,
    azprp_zero,
    hs,
    hs_plus,
    prp,
    prp_plus,
    fr,
    dl,
    dl_plus,
    hz,
    hz_truncated,
};

std::string_view branch_name(Branch b);

struct BetaOutcome {
    double beta = 0.0;
    Branch branch = Branch::restart;
    bool restarted = false;

    static BetaOutcome restart(Branch why = Branch::restart) { return {0.0, why, true}; }
};

/// |d^T y| below this triggers a restart.
inline constexpr double kDenominatorFloor = 1e-30;

struct SafeguardParams {
    /// Directions with g^T d > -c_min ||g||^2 are replaced by -g.
    double c_min = 1e-10;
};

/// ||s|| / ||y||, or nullopt when y == 0.
std::optional<double> mu(const Vector& s_prev, const Vector& y);

BetaOutcome beta_azhs(const Vector& g, const DirectionState& state);
BetaOutcome beta_azhs3(const Vector& g, const DirectionState& state);
BetaOutcome beta_azprp(const Vector& g, const DirectionState& state);
/// HS, HS+, PRP, PRP+ and FR.
BetaOutcome beta_classical(Method kind, const Vector& g, const DirectionState& state);
BetaOutcome beta_dl(const Vector& g, const DirectionState& state, double t, bool plus);
BetaOutcome beta_hz(const Vector& g, const DirectionState& state, double eta);

/// Dispatches on spec.kind.
BetaOutcome beta(const MethodSpec& spec, const Vector& g, const DirectionState& state);

struct DirectionResult {
    Vector d;
    BetaOutcome outcome;
};

/// d = -g + beta d_prev, or d = -g on the first iteration, when the beta
/// formula asks for a restart, or when the safeguard trips.
///
/// Throws InvalidArgument when g == 0 (the caller should already have
/// stopped).
DirectionResult direction(const Vector& g, const DirectionState* state, const MethodSpec& spec,
                          const SafeguardParams& safeguard = {});

} // namespace cgkit
