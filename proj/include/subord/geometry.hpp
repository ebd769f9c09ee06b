#pragma once

#include <complex>
#include <numbers>
#include <optional>
#include <variant>
#include <vector>

namespace subord {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Denominators smaller than this are treated as exact zeros by the Moebius map
// and the membership functional.
inline constexpr double kMapPoleEps = 1e-14;

// Angular half-width excluded around the pole of q when |lower| = 1.
inline constexpr double kDefaultAngleGuard = 1e-6;

/// Coefficient pair (upper, lower) of the Janowski function
/// q(z) = (1 + upper z) / (1 + lower z), with -1 <= lower < upper <= 1.
class JanowskiPair {
public:
    JanowskiPair(double upper, double lower);

    double upper() const noexcept { return upper_; }
    double lower() const noexcept { return lower_; }

    /// upper - lower, always positive.
    double width() const noexcept { return upper_ - lower_; }

    friend bool operator==(const JanowskiPair&, const JanowskiPair&) = default;

private:
    double upper_;
    double lower_;
};

/// q(z) = (1 + upper z)/(1 + lower z). Throws PoleError when 1 + lower z = 0.
Complex janowski_map(Complex z, const JanowskiPair& pair);

/// chi(w) = |(w - 1)/(upper - lower w)|; strictly below one exactly on the open
/// image q(D). Throws PoleError when upper - lower w vanishes.
double chi(Complex w, const JanowskiPair& pair);

/// Non-throwing chi; empty when |upper - lower w| < pole_eps.
std::optional<double> try_chi(Complex w, const JanowskiPair& pair, double pole_eps = kMapPoleEps) noexcept;

/// Boundary data of the admissibility condition at zeta = e^{i theta}:
/// r = q(zeta), s = m zeta q'(zeta) and the lower bound (1 - B^2)/(1 + B^2 + 2B cos theta)
/// that Re(t/s + 1) must dominate.
struct BoundaryPoint {
    double theta;
    double m;
    Complex r;
    Complex s;
    double curvature_bound;
};

/// Throws std::invalid_argument if theta is outside (0, 2 pi) or m < 1, and
/// PoleError if theta falls within angle_guard of the pole of q (|lower| = 1).
BoundaryPoint boundary_data(double theta, double m, const JanowskiPair& pair,
                            double angle_guard = kDefaultAngleGuard);

struct Disk {
    Complex center;
    double radius;
};

/// Open half-plane Re w > re_min.
struct HalfPlane {
    double re_min;
};

using Region = std::variant<Disk, HalfPlane>;

/// Closed-form description of q(D): a disk when |lower| < 1, a half-plane when lower = -1.
Region region_descriptor(const JanowskiPair& pair);

/// Strict (open) membership test against a region descriptor.
bool region_contains(const Region& region, Complex w);

/// Midpoints of a uniform partition of (0, 2 pi) into n cells.
std::vector<double> midpoint_angles(int n);

} // namespace subord
