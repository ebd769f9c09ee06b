#include "subord/conditions.hpp"

#include "subord/errors.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace subord {

namespace {

struct FamilyInfo {
    Family family;
    std::string_view name;
    bool uses_k;
    bool needs_nonzero_beta;
    bool needs_negative_e;
};

// Per-family constraint flags.
constexpr std::array<FamilyInfo, 10> kInfo = {{
    {Family::LinearDeriv, "linear-deriv", true, true, false},
    {Family::SquaredDeriv, "squared-deriv", true, true, true},
    {Family::PlusOverPSquared, "plus-over-p2", false, false, false},
    {Family::ConvexComboDeriv, "convex-combo", false, true, true},
    {Family::ConvexComboDerivOverP, "convex-combo-over-p", false, false, true},
    {Family::Reciprocal, "reciprocal", true, false, true},
    {Family::BriotBouquet, "briot-bouquet", false, false, false},
    {Family::CorollaryLinear, "cor-linear", false, true, true},
    {Family::CorollarySquare, "cor-square", false, true, true},
    {Family::CorollaryOverP, "cor-over-p", false, true, true},
}};

const FamilyInfo& info(Family family) noexcept { return kInfo[static_cast<std::size_t>(family)]; }

[[noreturn]] void fail(Family family, const std::string& what) {
    throw ParameterError(std::string(family_name(family)) + " requires " + what);
}

// Shorthand for the recurring pieces of every inequality.
struct Terms {
    double A, B, D, E;
    double aA, aB, aE; // |A|, |B|, |E|
    double AB;         // A - B
    double DE;         // D - E
    double G;          // 1 + |A|
    double H;          // 1 + |B|

    explicit Terms(const TheoremParams& p)
        : A(p.outer.upper()), B(p.outer.lower()), D(p.inner.upper()), E(p.inner.lower()),
          aA(std::abs(A)), aB(std::abs(B)), aE(std::abs(E)), AB(A - B), DE(D - E), G(1.0 + aA), H(1.0 + aB) {}
};

void validate_shape(Family family, const TheoremParams& params, bool check_beta) {
    const auto& fi = info(family);
    const double D = params.inner.upper();
    const double E = params.inner.lower();

    if (fi.uses_k && params.k < 0) {
        fail(family, "k >= 0");
    }
    if ((family == Family::ConvexComboDeriv || family == Family::ConvexComboDerivOverP) &&
        params.k != 0 && params.k != 1) {
        fail(family, "k in {0, 1}");
    }
    if (fi.needs_negative_e && !(E < 0.0 && 0.0 < D)) {
        fail(family, "-1 <= E < 0 < D <= 1");
    }
    if ((family == Family::ConvexComboDeriv || family == Family::ConvexComboDerivOverP) &&
        !(params.alpha >= 0.0 && params.alpha <= 1.0)) {
        fail(family, "0 <= alpha <= 1");
    }
    if (family == Family::BriotBouquet) {
        if (params.beta.imag() != 0.0) {
            fail(family, "real beta");
        }
        if (!std::isfinite(params.gamma) || !(params.beta.real() * params.gamma > 0.0)) {
            fail(family, "beta * gamma > 0");
        }
        return;
    }
    if (!std::isfinite(params.beta.real()) || !std::isfinite(params.beta.imag())) {
        fail(family, "finite beta");
    }
    if (check_beta && fi.needs_nonzero_beta && params.beta == Complex{}) {
        fail(family, "beta != 0");
    }
}

AffineCondition affine(Family family, const TheoremParams& params) {
    const Terms t(params);
    const double alpha = params.alpha;
    const int k = params.k;

    switch (family) {
    case Family::LinearDeriv:
        if (k <= 2) {
            return {t.AB - t.aE * t.AB, t.DE * std::pow(t.G, k) * std::pow(t.H, 2 - k)};
        }
        return {t.AB * std::pow(1.0 - t.aB, k - 2) - t.aE * t.AB * std::pow(t.H, k - 2), t.DE * std::pow(t.G, k)};

    case Family::SquaredDeriv: {
        const double AB2 = t.AB * t.AB;
        if (k < 4) {
            return {AB2 - t.aE * AB2, t.DE * std::pow(t.G, k) * std::pow(t.H, 4 - k)};
        }
        return {AB2 * std::pow(1.0 - t.aB, k - 4) - t.aE * AB2 * std::pow(t.H, k - 4), t.DE * std::pow(t.G, k)};
    }

    case Family::PlusOverPSquared: {
        const double G2 = t.G * t.G;
        return {t.AB * (1.0 - t.aB) - t.aE * t.AB * t.H,
                t.AB * G2 + G2 * (t.DE + std::abs(t.D * t.B - t.E * t.A))};
    }

    case Family::ConvexComboDeriv:
        return {t.AB * (1.0 - t.aE),
                t.AB * (t.H + alpha * t.G) + t.H * (t.D * t.H - t.E * (1.0 - alpha) * t.G) -
                    t.E * alpha * t.G * t.G};

    case Family::ConvexComboDerivOverP: {
        // alpha (1+|A|)^2 (1-|B|)^{-1}; the term is absent when alpha = 0.
        double inv = 0.0;
        if (alpha != 0.0) {
            inv = t.aB < 1.0 ? 1.0 / (1.0 - t.aB) : std::numeric_limits<double>::infinity();
        }
        const double G = t.G;
        return {t.AB * (1.0 - t.aE),
                t.AB * (G + alpha * G * G * inv) + G * (t.D * t.H - t.E * (1.0 - alpha) * G) -
                    t.E * alpha * G * G * G * inv};
    }

    case Family::Reciprocal: {
        const double tail = t.D * t.G - t.E * t.H; // D(1+|A|) - E(1+|B|)
        if (k == 0) {
            return {t.AB * (1.0 - t.aA) - t.aE * t.AB * t.G, t.AB * t.H * t.H + t.H * t.H * tail};
        }
        if (k <= 2) {
            const double F = std::pow(t.G, k - 1) * std::pow(t.H, 2 - k);
            return {t.AB * (1.0 - t.aE), t.AB * F + F * tail};
        }
        const double F = std::pow(t.G, k - 1);
        return {t.AB * std::pow(1.0 - t.aB, k - 2) - t.aE * t.AB * std::pow(t.H, k - 2), t.AB * F + F * tail};
    }

    case Family::CorollaryLinear:
        return {t.AB * (1.0 - t.aE), t.AB * t.H + t.DE + std::abs(2.0 * t.B * t.D - t.E * (t.A + t.B)) +
                                         std::abs(t.D * t.B * t.B - t.E * t.A * t.B)};

    case Family::CorollarySquare:
        return {t.AB * (1.0 - t.aE), t.AB * (t.H + t.G) + t.D * t.H * t.H - t.E * t.G * t.G};

    case Family::CorollaryOverP:
        return {t.AB * (1.0 - t.aE), t.AB * t.G + t.DE + std::abs(t.D * (t.B + t.A) - 2.0 * t.E * t.A) +
                                         std::abs(t.D * t.B * t.A - t.E * t.A * t.A)};

    case Family::BriotBouquet:
        break;
    }
    throw ParameterError("briot-bouquet has no affine form in |beta|");
}

} // namespace

std::string_view family_name(Family family) noexcept { return info(family).name; }

std::optional<Family> parse_family(std::string_view name) noexcept {
    for (const auto& fi : kInfo) {
        if (fi.name == name) {
            return fi.family;
        }
    }
    return std::nullopt;
}

bool family_uses_k(Family family) noexcept { return info(family).uses_k; }

void validate(Family family, const TheoremParams& params) { validate_shape(family, params, true); }

std::string AffineCondition::description() const {
    std::ostringstream os;
    os.precision(17);
    os << a << " * |beta| >= " << b;
    return os.str();
}

AffineCondition condition_coeffs(Family family, const TheoremParams& params) {
    if (family == Family::BriotBouquet) {
        throw ParameterError("briot-bouquet has no affine form in |beta|");
    }
    validate_shape(family, params, false);
    return affine(family, params);
}

double briot_bouquet_slack(const JanowskiPair& outer, const JanowskiPair& inner, double beta, double gamma) noexcept {
    const double A = outer.upper();
    const double B = outer.lower();
    const double D = inner.upper();
    const double E = inner.lower();
    const double w = beta * (1.0 + std::abs(A)) + gamma * (1.0 + std::abs(B));
    const double w2 = w * w;
    const double lhs = (A - B) * ((1.0 - std::abs(B)) - w2);
    const double rhs = w2 * (D - E + std::abs(D * B - E * A)) + std::abs(E) * (A - B) * (1.0 + std::abs(B));
    return lhs - rhs;
}

ConditionCheck check_condition(Family family, const TheoremParams& params) {
    validate(family, params);
    if (family == Family::BriotBouquet) {
        const double slack = briot_bouquet_slack(params.outer, params.inner, params.beta.real(), params.gamma);
        return {slack >= 0.0, slack};
    }
    const auto cond = affine(family, params);
    const double ab = std::abs(params.beta);
    return {cond.holds(ab), cond.margin(ab)};
}

std::optional<double> min_beta(Family family, const TheoremParams& params) {
    const auto cond = condition_coeffs(family, params);
    if (!std::isfinite(cond.b)) {
        return std::nullopt;
    }
    if (cond.a > 0.0) {
        double t = std::max(cond.b, 0.0) / cond.a;
        // The quotient may round below the exact root; step up until the condition holds.
        while (!cond.holds(t)) {
            t = std::nextafter(t, std::numeric_limits<double>::infinity());
        }
        return t;
    }
    if (cond.b > 0.0) {
        return std::nullopt;
    }
    // a <= 0 and b <= 0: every sufficiently small |beta| qualifies.
    return 0.0;
}

std::vector<BbCell> feasible_region_bb(const JanowskiPair& outer, const JanowskiPair& inner, const BbGrid& grid) {
    if (grid.n_beta < 1 || grid.n_gamma < 1) {
        throw std::invalid_argument("feasible_region_bb: grid needs at least one cell per axis");
    }
    if (!std::isfinite(grid.beta_min) || !std::isfinite(grid.beta_max) || !std::isfinite(grid.gamma_min) ||
        !std::isfinite(grid.gamma_max)) {
        throw std::invalid_argument("feasible_region_bb: grid bounds must be finite");
    }
    std::vector<BbCell> cells;
    cells.reserve(static_cast<std::size_t>(grid.n_beta) * static_cast<std::size_t>(grid.n_gamma));
    const double db = (grid.beta_max - grid.beta_min) / grid.n_beta;
    const double dg = (grid.gamma_max - grid.gamma_min) / grid.n_gamma;
    for (int i = 0; i < grid.n_beta; ++i) {
        const double beta = grid.beta_min + (i + 0.5) * db;
        for (int j = 0; j < grid.n_gamma; ++j) {
            const double gamma = grid.gamma_min + (j + 0.5) * dg;
            if (!(beta * gamma > 0.0)) {
                cells.push_back({beta, gamma, false, std::numeric_limits<double>::quiet_NaN()});
                continue;
            }
            const double slack = briot_bouquet_slack(outer, inner, beta, gamma);
            cells.push_back({beta, gamma, slack >= 0.0, slack});
        }
    }
    return cells;
}

} // namespace subord
