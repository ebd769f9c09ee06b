#include "subord/verifier.hpp"

#include "subord/errors.hpp"
#include "subord/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace subord {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Complex ipow(Complex z, int k) noexcept {
    Complex out{1.0, 0.0};
    for (int i = 0; i < k; ++i) {
        out *= z;
    }
    return out;
}

void require_condition(Family family, const TheoremParams& params, bool explore) {
    validate(family, params);
    if (!explore && !check_condition(family, params).holds) {
        throw ParameterError(std::string(family_name(family)) +
                             " condition does not hold for these parameters (enable exploration to proceed)");
    }
}

} // namespace

Complex psi_denominator(Family family, const TheoremParams& params, Complex r) noexcept {
    switch (family) {
    case Family::LinearDeriv:
    case Family::SquaredDeriv:
        return ipow(r, params.k);
    case Family::PlusOverPSquared:
        return r * r;
    case Family::ConvexComboDerivOverP:
    case Family::CorollaryOverP:
        return r;
    case Family::Reciprocal:
        return ipow(r, std::max(params.k, 1));
    case Family::BriotBouquet: {
        const Complex w = params.beta.real() * r + params.gamma;
        return w * w;
    }
    case Family::ConvexComboDeriv:
    case Family::CorollaryLinear:
    case Family::CorollarySquare:
        break;
    }
    return 1.0;
}

std::optional<Complex> try_psi_eval(Family family, const TheoremParams& params, Complex r, Complex s) noexcept {
    const Complex den = psi_denominator(family, params, r);
    if (!(std::abs(den) >= kPsiPoleGuard)) {
        return std::nullopt;
    }
    const Complex beta = params.beta;
    const double alpha = params.alpha;
    switch (family) {
    case Family::LinearDeriv:
        return 1.0 + beta * s / den;
    case Family::SquaredDeriv:
        return 1.0 + beta * s * s / den;
    case Family::PlusOverPSquared:
        return r + beta * s / den;
    case Family::ConvexComboDeriv:
        return (1.0 - alpha) * r + alpha * r * r + beta * s;
    case Family::ConvexComboDerivOverP:
        return (1.0 - alpha) * r + alpha * r * r + beta * s / den;
    case Family::Reciprocal:
        return 1.0 / r - beta * s / ipow(r, params.k);
    case Family::BriotBouquet:
        return r + s / den;
    case Family::CorollaryLinear:
        return r + beta * s;
    case Family::CorollarySquare:
        return r * r + beta * s;
    case Family::CorollaryOverP:
        return r + beta * s / den;
    }
    return std::nullopt;
}

Complex psi_eval(Family family, const TheoremParams& params, Complex r, Complex s) {
    if (auto v = try_psi_eval(family, params, r, s)) {
        return *v;
    }
    throw PoleError("psi_eval: denominator below the pole guard");
}

std::vector<double> default_m_grid() { return {1.0, 1.25, 1.5, 2.0, 3.0, 4.0, 6.0, 8.0}; }

AdmissibilityReport admissibility_check(Family family, const TheoremParams& params,
                                        const AdmissibilityOptions& options) {
    require_condition(family, params, options.explore);
    if (options.n_theta < 64) {
        throw std::invalid_argument("admissibility_check: n_theta must be >= 64");
    }
    const auto& ms = options.m_values;
    if (std::any_of(ms.begin(), ms.end(), [](double m) { return !(m >= 1.0) || !std::isfinite(m); })) {
        throw std::invalid_argument("admissibility_check: every m must be finite and >= 1");
    }
    if (std::find(ms.begin(), ms.end(), 1.0) == ms.end()) {
        throw std::invalid_argument("admissibility_check: m grid must contain 1");
    }

    struct Row {
        double min_chi = kInf;
        double argmin_m = 1.0;
        std::size_t guarded = 0;
    };

    const auto thetas = midpoint_angles(options.n_theta);
    std::vector<Row> rows(thetas.size());
    parallel_for(thetas.size(), options.threads, [&](std::size_t i) {
        Row row;
        for (double m : ms) {
            BoundaryPoint bp;
            try {
                bp = boundary_data(thetas[i], m, params.outer);
            } catch (const PoleError&) {
                ++row.guarded;
                continue;
            }
            const auto psi = try_psi_eval(family, params, bp.r, bp.s);
            if (!psi) {
                ++row.guarded;
                continue;
            }
            // psi = D/E sits at the pole of chi: infinitely far outside the inner region.
            const double c = try_chi(*psi, params.inner).value_or(kInf);
            if (c < row.min_chi) {
                row.min_chi = c;
                row.argmin_m = m;
            }
        }
        rows[i] = row;
    });

    AdmissibilityReport rep{};
    rep.min_chi = kInf;
    rep.argmin_theta = thetas.front();
    rep.argmin_m = 1.0;
    rep.n_theta = options.n_theta;
    rep.m_values = ms;
    rep.tolerance = options.tolerance;
    rep.total_points = thetas.size() * ms.size();
    rep.guarded_points = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        rep.guarded_points += rows[i].guarded;
        if (rows[i].min_chi < rep.min_chi) {
            rep.min_chi = rows[i].min_chi;
            rep.argmin_theta = thetas[i];
            rep.argmin_m = rows[i].argmin_m;
        }
    }
    const bool few_guarded = rep.guarded_points * 100 <= rep.total_points;
    rep.pass = few_guarded && rep.min_chi >= 1.0 - options.tolerance;
    return rep;
}

double phi_value(Family family, const TheoremParams& params, double m) {
    const double A = params.outer.upper();
    const double B = params.outer.lower();
    const double D = params.inner.upper();
    const double E = params.inner.lower();
    const double aA = std::abs(A);
    const double aB = std::abs(B);
    const double aE = std::abs(E);
    const double AB = A - B;
    const double DE = D - E;
    const double G = 1.0 + aA;
    const double H = 1.0 + aB;
    const double bm = std::abs(params.beta);
    const double alpha = params.alpha;
    const int k = params.k;

    switch (family) {
    case Family::LinearDeriv:
        if (k <= 2) {
            return bm * m * AB / (DE * std::pow(G, k) * std::pow(H, 2 - k) + m * aE * bm * AB);
        }
        return bm * m * AB * std::pow(1.0 - aB, k - 2) / (DE * std::pow(G, k) + m * aE * bm * AB * std::pow(H, k - 2));

    case Family::SquaredDeriv: {
        const double m2 = m * m;
        const double AB2 = AB * AB;
        if (k < 4) {
            return bm * m2 * AB2 / (DE * std::pow(G, k) * std::pow(H, 4 - k) + m2 * aE * bm * AB2);
        }
        return bm * m2 * AB2 * std::pow(1.0 - aB, k - 4) /
               (std::pow(G, k) * DE + m2 * aE * bm * AB2 * std::pow(H, k - 4));
    }

    case Family::PlusOverPSquared:
        return AB * (bm * m * (1.0 - aB) - G * G) /
               (G * G * (DE + std::abs(D * B - E * A)) + m * aE * bm * AB * H);

    case Family::ConvexComboDeriv:
        return AB * (bm * m - H - alpha * G) /
               (H * (D * H - E * (1.0 - alpha) * G) - E * alpha * G * G + m * aE * bm * AB);

    case Family::ConvexComboDerivOverP: {
        if (alpha != 0.0 && !(aB < 1.0)) {
            return -kInf;
        }
        const double inv = alpha != 0.0 ? 1.0 / (1.0 - aB) : 0.0;
        return AB * (bm * m - G - alpha * G * G * inv) /
               (G * (D * H - E * (1.0 - alpha) * G) - E * alpha * G * G * G * inv + m * aE * bm * AB);
    }

    case Family::Reciprocal: {
        const double tail = D * G - E * H;
        if (k == 0) {
            return AB * (bm * m * (1.0 - aA) - H * H) / (H * H * tail + m * aE * bm * AB * G);
        }
        if (k <= 2) {
            const double F = std::pow(G, k - 1) * std::pow(H, 2 - k);
            return AB * (bm * m - F) / (F * tail + m * aE * bm * AB);
        }
        const double F = std::pow(G, k - 1);
        return AB * (bm * m * std::pow(1.0 - aB, k - 2) - F) / (F * tail + m * aE * bm * AB * std::pow(H, k - 2));
    }

    case Family::BriotBouquet: {
        const double w = std::abs(params.beta.real()) * G + std::abs(params.gamma) * H;
        const double w2 = w * w;
        return AB * (m * (1.0 - aB) - w2) / (w2 * (DE + std::abs(D * B - E * A)) + m * aE * AB * H);
    }

    case Family::CorollaryLinear:
        return AB * (bm * m - H) /
               (DE + std::abs(2.0 * B * D - E * (A + B)) + std::abs(D * B * B - E * A * B) + m * aE * bm * AB);

    case Family::CorollarySquare:
        return AB * (bm * m - H - G) / (D * H * H - E * G * G + m * aE * bm * AB);

    case Family::CorollaryOverP:
        return AB * (bm * m - G) /
               (DE + std::abs(D * (B + A) - 2.0 * E * A) + std::abs(D * B * A - E * A * A) + m * aE * bm * AB);
    }
    return std::numeric_limits<double>::quiet_NaN();
}

bool phi_check(Family family, const TheoremParams& params, std::span<const double> m_grid) {
    if (m_grid.empty() || !(m_grid.front() >= 1.0)) {
        throw std::invalid_argument("phi_check: m grid must start at or above 1");
    }
    for (std::size_t i = 1; i < m_grid.size(); ++i) {
        if (!(m_grid[i] > m_grid[i - 1])) {
            throw std::invalid_argument("phi_check: m grid must be strictly increasing");
        }
    }
    double prev = phi_value(family, params, m_grid.front());
    for (std::size_t i = 1; i < m_grid.size(); ++i) {
        const double cur = phi_value(family, params, m_grid[i]);
        if (!(cur >= prev - 1e-12)) {
            return false;
        }
        prev = cur;
    }
    return true;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

SampleOutcome evaluate_sample(Family family, const TheoremParams& params, const AnalyticFn& p, int grid,
                              double radius) {
    if (grid < 64 || !(radius > 0.0 && radius < 1.0)) {
        throw std::invalid_argument("evaluate_sample: requires grid >= 64 and 0 < radius < 1");
    }
    SampleOutcome out{false, 0.0, 0.0, {}, {}};
    const double D = params.inner.upper();
    const double E = params.inner.lower();

    double hyp_worst = -1.0;
    double conc_worst = -1.0;
    double winding = 0.0;
    Complex first_m{};
    Complex prev_m{};
    for (int k = 0; k < grid; ++k) {
        const Complex z = std::polar(radius, kTwoPi * k / grid);
        const auto [value, zderiv] = eval_with_derivative(p, z);
        const auto psi = try_psi_eval(family, params, value, zderiv);
        if (!psi) {
            out.skipped = true;
            return out;
        }
        // Q(p) (D - E psi) is analytic in the disk; a zero inside means psi leaves the
        // inner region there, which the circle alone cannot see.
        const Complex mz = psi_denominator(family, params, value) * (D - E * *psi);
        if (k == 0) {
            first_m = mz;
        } else {
            const double step = std::arg(mz / prev_m);
            if (std::abs(step) > std::numbers::pi / 2) {
                out.skipped = true;
                return out;
            }
            winding += step;
        }
        prev_m = mz;

        const double hc = try_chi(*psi, params.inner).value_or(kInf);
        if (hc > hyp_worst) {
            hyp_worst = hc;
            out.hypothesis_witness = z;
        }
        const double cc = try_chi(value, params.outer).value_or(kInf);
        if (cc > conc_worst) {
            conc_worst = cc;
            out.conclusion_witness = z;
        }
    }
    const double closing = std::arg(first_m / prev_m);
    if (std::abs(closing) > std::numbers::pi / 2) {
        out.skipped = true;
        return out;
    }
    winding += closing;
    out.hypothesis_margin = 1.0 - hyp_worst;
    if (std::abs(winding) > std::numbers::pi) {
        out.hypothesis_margin = std::min(out.hypothesis_margin, 0.0);
    }
    out.conclusion_margin = 1.0 - conc_worst;
    return out;
}

AnalyticFn draw_trial_sample(const JanowskiPair& outer, const TrialOptions& options, std::uint64_t sample_seed) {
    std::mt19937_64 rng(sample_seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int lo = options.leading_order;
    const int deg = std::min(options.degree, lo + static_cast<int>(unit(rng) * (options.degree - lo + 1)));

    if (unit(rng) < 0.5) {
        // Member of a Janowski class containing P[A, B].
        const double upper = outer.upper() + unit(rng) * (1.0 - outer.upper());
        const double lower = outer.lower() - unit(rng) * (1.0 + outer.lower());
        auto omega = sample_schwarz(deg, lo, rng());
        // Log-uniform shrink so that large |beta| still admits hypothesis-true samples.
        const double shrink = std::pow(10.0, -2.0 * unit(rng));
        std::vector<Complex> w = omega.series.coefficients();
        for (auto& c : w) {
            c *= shrink;
        }
        omega = SchwarzFn{AnalyticFn(std::move(w), lo), omega.sup_bound * shrink};
        return compose_janowski(omega, JanowskiPair(upper, lower), options.truncation).series;
    }

    // Raw perturbation of the constant 1, not tied to any class.
    std::vector<Complex> c(static_cast<std::size_t>(deg) + 1);
    c[0] = 1.0;
    const double amplitude = 2.0 * std::pow(10.0, -3.0 * unit(rng));
    for (int j = lo; j <= deg; ++j) {
        const double rad = std::sqrt(unit(rng));
        c[static_cast<std::size_t>(j)] = amplitude * std::polar(rad, kTwoPi * unit(rng));
    }
    return AnalyticFn(std::move(c), lo);
}

SampleVerdict implication_trial(Family family, const TheoremParams& params, const TrialOptions& options) {
    require_condition(family, params, options.explore);
    if (options.samples < 0 || options.leading_order < 1 || options.degree < options.leading_order ||
        options.truncation < options.degree) {
        throw std::invalid_argument(
            "implication_trial: requires samples >= 0 and 1 <= leading_order <= degree <= truncation");
    }

    struct Slot {
        SampleOutcome outcome;
        std::uint64_t seed;
        std::vector<Complex> coefficients;
    };
    std::vector<Slot> slots(static_cast<std::size_t>(options.samples));
    parallel_for(slots.size(), options.threads, [&](std::size_t i) {
        const std::uint64_t s = derive_seed(options.seed, i);
        const auto p = draw_trial_sample(params.outer, options, s);
        slots[i].seed = s;
        slots[i].outcome = evaluate_sample(family, params, p, options.grid, options.radius);
        if (!slots[i].outcome.skipped && slots[i].outcome.hypothesis_margin > options.eps_hypothesis &&
            slots[i].outcome.conclusion_margin < -options.eps_conclusion) {
            slots[i].coefficients = p.coefficients();
        }
    });

    SampleVerdict verdict;
    verdict.n_total = options.samples;
    for (auto& slot : slots) {
        const auto& o = slot.outcome;
        if (o.skipped) {
            ++verdict.skipped;
            continue;
        }
        if (o.hypothesis_margin > options.eps_hypothesis) {
            ++verdict.n_hypothesis_true;
            if (o.conclusion_margin < -options.eps_conclusion) {
                ++verdict.n_violations;
                verdict.violations.push_back(
                    {slot.seed, o.conclusion_witness, o.hypothesis_margin, o.conclusion_margin,
                     std::move(slot.coefficients)});
            }
        }
    }
    return verdict;
}

std::string_view variant_name(StarlikeVariant variant) noexcept {
    switch (variant) {
    case StarlikeVariant::A:
        return "a";
    case StarlikeVariant::B:
        return "b";
    case StarlikeVariant::C:
        return "c";
    case StarlikeVariant::I:
        return "i";
    case StarlikeVariant::II:
        return "ii";
    }
    return "?";
}

std::optional<StarlikeVariant> parse_variant(std::string_view name) noexcept {
    for (auto v : {StarlikeVariant::A, StarlikeVariant::B, StarlikeVariant::C, StarlikeVariant::I,
                   StarlikeVariant::II}) {
        if (variant_name(v) == name) {
            return v;
        }
    }
    return std::nullopt;
}

std::pair<Family, int> variant_family(StarlikeVariant variant) noexcept {
    switch (variant) {
    case StarlikeVariant::A:
        return {Family::SquaredDeriv, 2};
    case StarlikeVariant::B:
        return {Family::PlusOverPSquared, 0};
    case StarlikeVariant::C:
        return {Family::ConvexComboDeriv, 0};
    case StarlikeVariant::I:
        return {Family::Reciprocal, 1};
    case StarlikeVariant::II:
        return {Family::Reciprocal, 2};
    }
    return {Family::LinearDeriv, 0};
}

Complex starlike_functional(StarlikeVariant variant, Complex beta, double alpha, Complex P, Complex Q) noexcept {
    const Complex log_deriv = Q - P; // zP'/P
    switch (variant) {
    case StarlikeVariant::A:
        return P + beta * log_deriv * log_deriv;
    case StarlikeVariant::B:
        return P + beta * log_deriv / P;
    case StarlikeVariant::C:
        return (1.0 - alpha + beta) * P + (alpha - beta) * P * P + beta * (Q - 1.0);
    case StarlikeVariant::I:
        return (1.0 - beta * P * log_deriv) / P;
    case StarlikeVariant::II:
        return (1.0 - beta * log_deriv) / P;
    }
    return {};
}

StarlikeResult starlike_sufficiency_check(const AnalyticFn& f, StarlikeVariant variant, const TheoremParams& params,
                                          const StarlikeOptions& options) {
    if (f.coefficient(1) == Complex{}) {
        throw PoleError("starlike_sufficiency_check: f'(0) vanishes");
    }
    if (f.coefficient(0) != Complex{} || std::abs(f.coefficient(1) - 1.0) > 1e-12) {
        throw std::invalid_argument("starlike_sufficiency_check: requires f(0) = 0 and f'(0) = 1");
    }
    const auto [family, k] = variant_family(variant);
    TheoremParams tp = params;
    tp.k = k;
    require_condition(family, tp, options.explore);
    const auto cond = check_condition(family, tp);

    // f, f', f'' in one Horner pass.
    const auto& a = f.coefficients();
    struct Derivs {
        Complex P;
        Complex Q;
    };
    auto derivs = [&a](Complex z) {
        Complex v = a.back();
        Complex d1{};
        Complex d2{};
        for (std::size_t j = a.size() - 1; j-- > 0;) {
            d2 = d2 * z + d1;
            d1 = d1 * z + v;
            v = v * z + a[j];
        }
        d2 *= 2.0;
        if (std::abs(v) < kPsiPoleGuard || std::abs(d1) < kPsiPoleGuard) {
            throw PoleError("starlike_sufficiency_check: f or f' vanishes on the sampling circle");
        }
        return Derivs{z * d1 / v, 1.0 + z * d2 / d1};
    };

    const auto hyp = sampled_margin(
        [&](Complex z) {
            const auto d = derivs(z);
            return starlike_functional(variant, tp.beta, tp.alpha, d.P, d.Q);
        },
        tp.inner, options.grid, options.radius);
    const auto conc = sampled_margin([&](Complex z) { return derivs(z).P; }, tp.outer, options.grid, options.radius);
    return {hyp.margin, conc.margin, hyp.witness, conc.witness, cond.holds, cond.margin};
}

} // namespace subord
