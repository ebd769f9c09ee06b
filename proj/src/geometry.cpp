#include "subord/geometry.hpp"

#include "subord/errors.hpp"

#include <cmath>
#include <sstream>

namespace subord {

JanowskiPair::JanowskiPair(double upper, double lower) : upper_(upper), lower_(lower) {
    if (!std::isfinite(upper) || !std::isfinite(lower) || !(-1.0 <= lower && lower < upper && upper <= 1.0)) {
        std::ostringstream os;
        os << "Janowski pair requires -1 <= lower < upper <= 1 (got upper=" << upper << ", lower=" << lower << ")";
        throw ParameterError(os.str());
    }
}

Complex janowski_map(Complex z, const JanowskiPair& pair) {
    const Complex den = 1.0 + pair.lower() * z;
    if (std::abs(den) < kMapPoleEps) {
        throw PoleError("janowski_map: 1 + lower*z vanishes");
    }
    return (1.0 + pair.upper() * z) / den;
}

std::optional<double> try_chi(Complex w, const JanowskiPair& pair, double pole_eps) noexcept {
    const Complex den = pair.upper() - pair.lower() * w;
    const double den_abs = std::abs(den);
    if (!(den_abs >= pole_eps)) {
        return std::nullopt;
    }
    return std::abs(w - 1.0) / den_abs;
}

double chi(Complex w, const JanowskiPair& pair) {
    if (auto v = try_chi(w, pair)) {
        return *v;
    }
    throw PoleError("chi: upper - lower*w vanishes");
}

BoundaryPoint boundary_data(double theta, double m, const JanowskiPair& pair, double angle_guard) {
    if (!(theta > 0.0 && theta < kTwoPi)) {
        throw std::invalid_argument("boundary_data: theta must lie strictly inside (0, 2*pi)");
    }
    if (!(m >= 1.0)) {
        throw std::invalid_argument("boundary_data: admissibility multiplier m must be >= 1");
    }
    const double a = pair.upper();
    const double b = pair.lower();
    // The only pole of q on the circle is zeta = -1/b, i.e. theta = 0 for b = -1.
    if (b == -1.0 && (theta < angle_guard || kTwoPi - theta < angle_guard)) {
        throw PoleError("boundary_data: theta within the guard band of the pole of q");
    }

    const Complex zeta = std::polar(1.0, theta);
    const Complex den = 1.0 + b * zeta;
    if (std::abs(den) < kMapPoleEps) {
        throw PoleError("boundary_data: 1 + lower*e^{i theta} vanishes");
    }

    BoundaryPoint pt;
    pt.theta = theta;
    pt.m = m;
    pt.r = (1.0 + a * zeta) / den;
    pt.s = m * (a - b) * zeta / (den * den);
    pt.curvature_bound = (1.0 - b * b) / (1.0 + b * b + 2.0 * b * std::cos(theta));
    return pt;
}

Region region_descriptor(const JanowskiPair& pair) {
    const double a = pair.upper();
    const double b = pair.lower();
    if (b == -1.0) {
        return HalfPlane{(1.0 - a) / 2.0};
    }
    const double d = 1.0 - b * b;
    return Disk{Complex((1.0 - a * b) / d, 0.0), (a - b) / d};
}

bool region_contains(const Region& region, Complex w) {
    if (const auto* disk = std::get_if<Disk>(&region)) {
        return std::abs(w - disk->center) < disk->radius;
    }
    return w.real() > std::get<HalfPlane>(region).re_min;
}

std::vector<double> midpoint_angles(int n) {
    if (n <= 0) {
        throw std::invalid_argument("midpoint_angles: n must be positive");
    }
    std::vector<double> out(static_cast<std::size_t>(n));
    const double step = kTwoPi / n;
    for (int j = 0; j < n; ++j) {
        out[static_cast<std::size_t>(j)] = (j + 0.5) * step;
    }
    return out;
}

} // namespace subord
