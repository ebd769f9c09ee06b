#include "subord/analytic.hpp"

#include "subord/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace subord {

AnalyticFn::AnalyticFn(std::vector<Complex> coefficients, int leading_order)
    : coeffs_(std::move(coefficients)), leading_order_(leading_order) {
    if (coeffs_.empty()) {
        coeffs_.push_back(0.0);
    }
    if (leading_order_ < 1) {
        throw std::invalid_argument("AnalyticFn: leading order must be >= 1");
    }
    const int upto = std::min<int>(leading_order_, static_cast<int>(coeffs_.size()));
    for (int j = 1; j < upto; ++j) {
        if (coeffs_[static_cast<std::size_t>(j)] != Complex{}) {
            throw std::invalid_argument("AnalyticFn: coefficients below the leading order must vanish");
        }
    }
}

Complex AnalyticFn::coefficient(int j) const noexcept {
    if (j < 0 || j >= static_cast<int>(coeffs_.size())) {
        return {};
    }
    return coeffs_[static_cast<std::size_t>(j)];
}

Complex AnalyticFn::operator()(Complex z) const noexcept {
    Complex v{};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        v = v * z + *it;
    }
    return v;
}

ValueAndDerivative eval_with_derivative(const AnalyticFn& p, Complex z) noexcept {
    const auto& c = p.coefficients();
    Complex v = c.back();
    Complex d{};
    for (std::size_t j = c.size() - 1; j-- > 0;) {
        d = d * z + v;
        v = v * z + c[j];
    }
    return {v, z * d};
}

namespace {

double boundary_sup(const AnalyticFn& fn, int grid) {
    double sup = 0.0;
    for (int k = 0; k < grid; ++k) {
        sup = std::max(sup, std::abs(fn(std::polar(1.0, kTwoPi * k / grid))));
    }
    return sup;
}

} // namespace

SchwarzFn sample_schwarz(int degree, int leading_order, std::uint64_t seed) {
    if (leading_order < 1 || degree < leading_order) {
        throw std::invalid_argument("sample_schwarz: requires 1 <= leading_order <= degree");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    std::vector<Complex> w(static_cast<std::size_t>(degree) + 1);
    for (int j = leading_order; j <= degree; ++j) {
        const double rad = std::sqrt(unit(rng));
        const double ang = kTwoPi * unit(rng);
        w[static_cast<std::size_t>(j)] = std::polar(rad, ang);
    }

    const double sup = boundary_sup(AnalyticFn(w, leading_order), kSchwarzCertGrid);
    if (sup > 0.0) {
        const double scale = kSchwarzTarget / sup;
        for (auto& c : w) {
            c *= scale;
        }
    }
    AnalyticFn series(std::move(w), leading_order);
    const double bound = boundary_sup(series, kSchwarzCertGrid);
    return {std::move(series), bound};
}

double Composition::tail_bound() const noexcept {
    const double s = sup_bound;
    if (s <= 0.0) {
        return 0.0;
    }
    if (s >= 1.0) {
        return std::numeric_limits<double>::infinity();
    }
    return coefficient_bound * std::pow(s, truncation() + 1) / (1.0 - s);
}

double Composition::tail_bound_at(double radius) const noexcept {
    if (sup_bound <= 0.0) {
        return 0.0;
    }
    if (!(radius < 1.0)) {
        return std::numeric_limits<double>::infinity();
    }
    return coefficient_bound * std::pow(radius, truncation() + 1) / (1.0 - radius);
}

bool Composition::truncation_warning() const noexcept { return tail_bound() > kCompositionTailWarn; }

std::vector<Complex> series_divide(std::span<const Complex> num, std::span<const Complex> den, int order) {
    if (den.empty() || den[0] == Complex{}) {
        throw PoleError("series_divide: denominator has zero constant term");
    }
    std::vector<Complex> out(static_cast<std::size_t>(order) + 1);
    const int den_deg = static_cast<int>(den.size()) - 1;
    for (int n = 0; n <= order; ++n) {
        Complex acc = n < static_cast<int>(num.size()) ? num[static_cast<std::size_t>(n)] : Complex{};
        for (int j = 1; j <= std::min(n, den_deg); ++j) {
            acc -= den[static_cast<std::size_t>(j)] * out[static_cast<std::size_t>(n - j)];
        }
        out[static_cast<std::size_t>(n)] = acc / den[0];
    }
    return out;
}

Composition compose_janowski(const SchwarzFn& omega, const JanowskiPair& pair, int truncation) {
    const auto& w = omega.series.coefficients();
    if (truncation < omega.series.degree()) {
        throw std::invalid_argument("compose_janowski: truncation must be >= deg omega");
    }
    std::vector<Complex> num(w.size());
    std::vector<Complex> den(w.size());
    for (std::size_t j = 0; j < w.size(); ++j) {
        num[j] = pair.upper() * w[j];
        den[j] = pair.lower() * w[j];
    }
    num[0] += 1.0;
    den[0] += 1.0;

    auto coeffs = series_divide(num, den, truncation);

    const double s = omega.sup_bound;
    const double lower_sup = std::abs(pair.lower()) * s;
    const double coeff_bound = lower_sup < 1.0 ? pair.width() * s / (1.0 - lower_sup)
                                               : std::numeric_limits<double>::infinity();
    return {AnalyticFn(std::move(coeffs), omega.series.leading_order()), coeff_bound, s};
}

MarginResult sampled_margin(const std::function<Complex(Complex)>& fn, const JanowskiPair& pair, int grid,
                            double radius) {
    if (grid < 64) {
        throw std::invalid_argument("membership grid must have at least 64 points");
    }
    if (!(radius > 0.0 && radius < 1.0)) {
        throw std::invalid_argument("membership radius must lie in (0, 1)");
    }
    double worst = -1.0;
    Complex witness{};
    for (int k = 0; k < grid; ++k) {
        const Complex z = std::polar(radius, kTwoPi * k / grid);
        const double c = chi(fn(z), pair);
        if (c > worst) {
            worst = c;
            witness = z;
        }
    }
    return {1.0 - worst, witness};
}

MarginResult membership_margin(const AnalyticFn& p, const JanowskiPair& pair, int grid, double radius) {
    return sampled_margin([&p](Complex z) { return p(z); }, pair, grid, radius);
}

AnalyticFn integrate_to_starlike(const AnalyticFn& p, int truncation) {
    if (std::abs(p.coefficient(0) - 1.0) > 1e-12) {
        throw std::invalid_argument("integrate_to_starlike: requires p(0) = 1");
    }
    if (truncation < 0) {
        throw std::invalid_argument("integrate_to_starlike: truncation must be >= 0");
    }
    // a[k] is the coefficient of z^k; k a_{k+1} = sum_{j=1}^{k} c_j a_{k+1-j}.
    std::vector<Complex> a(static_cast<std::size_t>(truncation) + 2);
    a[1] = 1.0;
    for (int k = 1; k <= truncation; ++k) {
        Complex acc{};
        for (int j = 1; j <= k; ++j) {
            acc += p.coefficient(j) * a[static_cast<std::size_t>(k + 1 - j)];
        }
        a[static_cast<std::size_t>(k + 1)] = acc / static_cast<double>(k);
    }
    return AnalyticFn(std::move(a), 1);
}

AnalyticFn starlike_ratio_series(const AnalyticFn& f, int order) {
    if (f.coefficient(0) != Complex{}) {
        throw std::invalid_argument("starlike_ratio_series: requires f(0) = 0");
    }
    if (f.coefficient(1) == Complex{}) {
        throw PoleError("starlike_ratio_series: f'(0) vanishes");
    }
    // z f'/f = (sum k a_k z^{k-1}) / (sum a_k z^{k-1})
    std::vector<Complex> num(static_cast<std::size_t>(order) + 1);
    std::vector<Complex> den(static_cast<std::size_t>(order) + 1);
    for (int k = 1; k <= order + 1; ++k) {
        num[static_cast<std::size_t>(k - 1)] = static_cast<double>(k) * f.coefficient(k);
        den[static_cast<std::size_t>(k - 1)] = f.coefficient(k);
    }
    return AnalyticFn(series_divide(num, den, order), 1);
}

} // namespace subord
