#pragma once

#include "subord/geometry.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace subord {

/// Finite power series p(z) = sum_j c_j z^j on the closed unit disk.
///
/// leading_order n records membership in H[c_0, n]: the coefficients
/// c_1 .. c_{n-1} are zero. The constructor enforces this.
class AnalyticFn {
public:
    explicit AnalyticFn(std::vector<Complex> coefficients, int leading_order = 1);

    const std::vector<Complex>& coefficients() const noexcept { return coeffs_; }
    int leading_order() const noexcept { return leading_order_; }
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }

    /// c_j, or zero past the stored degree.
    Complex coefficient(int j) const noexcept;

    Complex operator()(Complex z) const noexcept;

private:
    std::vector<Complex> coeffs_;
    int leading_order_;
};

struct ValueAndDerivative {
    Complex value;
    Complex zderiv; ///< z p'(z)
};

/// p(z) and z p'(z) by a single Horner pass.
ValueAndDerivative eval_with_derivative(const AnalyticFn& p, Complex z) noexcept;

/// Polynomial Schwarz function omega(z) = sum_{j >= n} w_j z^j with omega(0) = 0.
struct SchwarzFn {
    AnalyticFn series;
    double sup_bound; ///< max |omega| over the 4096-point certification grid on |z| = 1
};

inline constexpr int kSchwarzCertGrid = 4096;
inline constexpr double kSchwarzTarget = 0.999;

/// Draws w_n .. w_degree uniformly from the unit disk and rescales so the sampled
/// boundary supremum equals 0.999. Deterministic in seed.
SchwarzFn sample_schwarz(int degree, int leading_order, std::uint64_t seed);

/// Truncated series of q o omega for q(z) = (1 + upper z)/(1 + lower z).
struct Composition {
    AnalyticFn series;
    /// Bound on every Taylor coefficient of q o omega - 1 (Cauchy estimate on |z| = 1);
    /// infinite when |lower| * sup_bound >= 1.
    double coefficient_bound;
    double sup_bound;

    int truncation() const noexcept { return series.degree(); }

    /// Geometric tail estimate with ratio sup_bound.
    double tail_bound() const noexcept;

    /// Bound on |q o omega - truncated series| over |z| <= radius < 1.
    double tail_bound_at(double radius) const noexcept;

    /// Set when tail_bound() exceeds kCompositionTailWarn.
    bool truncation_warning() const noexcept;
};

inline constexpr double kCompositionTailWarn = 1e-8;

/// Series of (1 + upper omega)/(1 + lower omega) up to z^truncation by series division.
/// Throws std::invalid_argument when truncation < deg omega.
Composition compose_janowski(const SchwarzFn& omega, const JanowskiPair& pair, int truncation);

struct MarginResult {
    double margin;   ///< 1 - max chi over the sampling circle
    Complex witness; ///< sample point attaining the maximum
};

inline constexpr int kDefaultMembershipGrid = 2048;
inline constexpr double kDefaultMembershipRadius = 0.999;

/// 1 - max_k chi(p(z_k), pair) over z_k = radius e^{2 pi i k / grid}.
/// Positive certifies sampled membership in P[upper, lower]; negative witnesses a violation.
MarginResult membership_margin(const AnalyticFn& p, const JanowskiPair& pair,
                               int grid = kDefaultMembershipGrid,
                               double radius = kDefaultMembershipRadius);

/// Same sweep for an arbitrary pointwise function of z.
MarginResult sampled_margin(const std::function<Complex(Complex)>& fn, const JanowskiPair& pair,
                            int grid = kDefaultMembershipGrid,
                            double radius = kDefaultMembershipRadius);

/// Coefficients of num/den up to z^order. den[0] must be nonzero.
std::vector<Complex> series_divide(std::span<const Complex> num, std::span<const Complex> den, int order);

/// Normalized f(z) = z + a_2 z^2 + ... + a_{truncation+1} z^{truncation+1} solving z f' = p f
/// coefficientwise, so that z f'/f reproduces p through z^truncation.
/// Throws std::invalid_argument unless p(0) = 1.
AnalyticFn integrate_to_starlike(const AnalyticFn& p, int truncation);

/// Series of z f'(z)/f(z) up to z^order for f with f(0) = 0 and f'(0) != 0.
AnalyticFn starlike_ratio_series(const AnalyticFn& f, int order);

} // namespace subord
