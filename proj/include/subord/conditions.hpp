#pragma once

#include "subord/geometry.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace subord {

/// The first-order functionals psi(p, zp') whose membership in P[D, E] is shown
/// to force p into P[A, B] under a closed-form condition on beta.
enum class Family {
    LinearDeriv,           ///< 1 + beta zp'/p^k
    SquaredDeriv,          ///< 1 + beta (zp')^2/p^k
    PlusOverPSquared,      ///< p + beta zp'/p^2
    ConvexComboDeriv,      ///< (1 - alpha) p + alpha p^2 + beta zp'
    ConvexComboDerivOverP, ///< (1 - alpha) p + alpha p^2 + beta zp'/p
    Reciprocal,            ///< 1/p - beta zp'/p^k
    BriotBouquet,          ///< p + zp'/(beta p + gamma)^2
    CorollaryLinear,       ///< p + beta zp'
    CorollarySquare,       ///< p^2 + beta zp'
    CorollaryOverP,        ///< p + beta zp'/p
};

inline constexpr std::array<Family, 10> kAllFamilies = {
    Family::LinearDeriv,     Family::SquaredDeriv,          Family::PlusOverPSquared,
    Family::ConvexComboDeriv, Family::ConvexComboDerivOverP, Family::Reciprocal,
    Family::BriotBouquet,    Family::CorollaryLinear,       Family::CorollarySquare,
    Family::CorollaryOverP,
};

/// Stable kebab-case name used on the command line and in JSON.
std::string_view family_name(Family family) noexcept;
std::optional<Family> parse_family(std::string_view name) noexcept;

/// True when the family's exponent k is a free parameter.
bool family_uses_k(Family family) noexcept;

/// True for every family whose condition is affine in |beta| (all but Briot-Bouquet).
constexpr bool is_affine(Family family) noexcept { return family != Family::BriotBouquet; }

/// Outer pair (A, B) is the conclusion class, inner pair (D, E) the hypothesis class.
struct TheoremParams {
    JanowskiPair outer;
    JanowskiPair inner;
    Complex beta{1.0, 0.0};
    double alpha = 0.0;
    double gamma = 0.0;
    int k = 0;
};

/// Throws ParameterError naming the violated constraint.
void validate(Family family, const TheoremParams& params);

/// a |beta| >= b.
struct AffineCondition {
    double a;
    double b;

    double margin(double abs_beta) const noexcept { return a * abs_beta - b; }
    bool holds(double abs_beta) const noexcept { return a * abs_beta >= b; }
    std::string description() const;
};

/// Affine form of the family's sufficient condition. Beta is ignored.
/// Throws ParameterError for Briot-Bouquet or for parameters outside the family's constraints.
AffineCondition condition_coeffs(Family family, const TheoremParams& params);

struct ConditionCheck {
    bool holds;
    double margin; ///< a|beta| - b for affine families; LHS - RHS for Briot-Bouquet
};

ConditionCheck check_condition(Family family, const TheoremParams& params);

/// Smallest |beta| satisfying the condition, or nullopt when no beta does.
/// Beta in params is ignored.
std::optional<double> min_beta(Family family, const TheoremParams& params);

/// LHS - RHS of the Briot-Bouquet inequality for real beta, gamma.
double briot_bouquet_slack(const JanowskiPair& outer, const JanowskiPair& inner, double beta, double gamma) noexcept;

struct BbGrid {
    double beta_min;
    double beta_max;
    int n_beta;
    double gamma_min;
    double gamma_max;
    int n_gamma;
};

struct BbCell {
    double beta;
    double gamma;
    bool feasible;
    double slack;
};

/// Cell-centre evaluation of the Briot-Bouquet condition. Cells with beta*gamma <= 0
/// are reported infeasible with NaN slack. Row-major in beta.
std::vector<BbCell> feasible_region_bb(const JanowskiPair& outer, const JanowskiPair& inner, const BbGrid& grid);

} // namespace subord
