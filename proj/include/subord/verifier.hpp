#pragma once

#include "subord/analytic.hpp"
#include "subord/conditions.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace subord {

inline constexpr double kPsiPoleGuard = 1e-9;

/// psi(r, s) of the family, with r = p(z) and s = z p'(z).
/// Throws PoleError when the family's denominator (a power of r, or
/// (beta r + gamma)^2) has modulus below kPsiPoleGuard.
Complex psi_eval(Family family, const TheoremParams& params, Complex r, Complex s);

/// Non-throwing psi_eval; empty when the pole guard trips.
std::optional<Complex> try_psi_eval(Family family, const TheoremParams& params, Complex r, Complex s) noexcept;

/// The analytic denominator Q(r) with psi = P(r, s)/Q(r): r^k, r^2, r, (beta r + gamma)^2 or 1.
Complex psi_denominator(Family family, const TheoremParams& params, Complex r) noexcept;

std::vector<double> default_m_grid();

struct AdmissibilityOptions {
    int n_theta = 256;
    std::vector<double> m_values = default_m_grid();
    double tolerance = 1e-9;
    bool explore = false; ///< skip the check_condition precondition
    unsigned threads = 0;
};

struct AdmissibilityReport {
    double min_chi;
    double argmin_theta;
    double argmin_m;
    bool pass;
    int n_theta;
    std::vector<double> m_values;
    double tolerance;
    std::size_t total_points;
    std::size_t guarded_points;
};

/// Sweeps the boundary data (theta, m) of the outer pair and reports the smallest
/// chi(psi(r, s), inner). pass means min_chi >= 1 - tolerance with at most 1% of the
/// grid lost to pole guards.
AdmissibilityReport admissibility_check(Family family, const TheoremParams& params,
                                        const AdmissibilityOptions& options = {});

/// The lower bound phi(m) for chi from the family's admissibility argument.
double phi_value(Family family, const TheoremParams& params, double m);

/// True iff phi is nondecreasing on m_grid (slack 1e-12). m_grid must be strictly
/// increasing and start at or above 1.
bool phi_check(Family family, const TheoremParams& params, std::span<const double> m_grid);

/// splitmix64 of (seed, index): the per-sample seed used by implication trials.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

struct TrialOptions {
    int samples = 100;
    int degree = 8;       ///< maximal degree of the Schwarz function / perturbation
    int truncation = 12;  ///< series order of composed samples
    int leading_order = 1;
    std::uint64_t seed = 1;
    int grid = kDefaultMembershipGrid;
    double radius = kDefaultMembershipRadius;
    double eps_hypothesis = 1e-3;
    double eps_conclusion = 1e-3;
    bool explore = false;
    unsigned threads = 0;
};

struct SampleOutcome {
    bool skipped;
    double hypothesis_margin;
    double conclusion_margin;
    Complex hypothesis_witness;
    Complex conclusion_witness;
};

/// Hypothesis margin of z -> psi(p(z), zp'(z)) against the inner pair and conclusion
/// margin of p against the outer pair on the same circle. The sample is skipped when a
/// pole guard trips on the circle or the winding of Q(p)(D - E psi) is unresolved by the
/// grid. A nonzero winding means psi leaves the inner region inside the circle, so the
/// hypothesis margin is capped at 0.
SampleOutcome evaluate_sample(Family family, const TheoremParams& params, const AnalyticFn& p,
                              int grid = kDefaultMembershipGrid, double radius = kDefaultMembershipRadius);

struct Violation {
    std::uint64_t seed;
    Complex witness;
    double hypothesis_margin;
    double conclusion_margin;
    std::vector<Complex> coefficients;
};

struct SampleVerdict {
    int n_total = 0;
    int n_hypothesis_true = 0;
    int n_violations = 0;
    int skipped = 0;
    std::vector<Violation> violations;
};

/// Draws random p (Janowski compositions over a wider pair, or raw perturbations of 1)
/// and counts samples whose hypothesis margin exceeds eps_hypothesis while the
/// conclusion margin is below -eps_conclusion.
SampleVerdict implication_trial(Family family, const TheoremParams& params, const TrialOptions& options = {});

/// Draws one trial sample; exposed for replay of reported seeds.
AnalyticFn draw_trial_sample(const JanowskiPair& outer, const TrialOptions& options, std::uint64_t sample_seed);

enum class StarlikeVariant { A, B, C, I, II };

std::string_view variant_name(StarlikeVariant variant) noexcept;
std::optional<StarlikeVariant> parse_variant(std::string_view name) noexcept;

/// Family and exponent whose condition governs the variant.
std::pair<Family, int> variant_family(StarlikeVariant variant) noexcept;

/// The variant's functional of P = zf'/f and Q = 1 + zf''/f'.
Complex starlike_functional(StarlikeVariant variant, Complex beta, double alpha, Complex P, Complex Q) noexcept;

struct StarlikeOptions {
    int grid = kDefaultMembershipGrid;
    double radius = kDefaultMembershipRadius;
    bool explore = false;
};

struct StarlikeResult {
    double hypothesis_margin;
    double conclusion_margin;
    Complex hypothesis_witness;
    Complex conclusion_witness;
    bool condition_holds;
    double condition_margin;
};

/// Membership margins of the variant's functional against (D, E) and of zf'/f against
/// (A, B), both evaluated pointwise from the polynomial f on the sampling circle.
StarlikeResult starlike_sufficiency_check(const AnalyticFn& f, StarlikeVariant variant, const TheoremParams& params,
                                          const StarlikeOptions& options = {});

} // namespace subord
