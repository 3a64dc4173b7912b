#include "attenuo/phantom.hpp"

#include <cmath>

namespace attenuo {

namespace {
constexpr double kPi = 3.14159265358979323846;

void check_geometry(const BallPhantom& phantom, const DetectorGeometry& det) {
    if (phantom.R <= 0.0) throw DomainError("phantom: R must be positive");
    if (det.c0 <= 0.0) throw DomainError("detector: c0 must be positive");
    if (det.R0 < phantom.R) throw DomainError("detector: exterior detection needs R0 >= R");
}
} // namespace

std::pair<double, double> p0_support(const BallPhantom& phantom, const DetectorGeometry& det) {
    check_geometry(phantom, det);
    return {(det.R0 - phantom.R) / det.c0, (det.R0 + phantom.R) / det.c0};
}

double p0_ball_value(const BallPhantom& phantom, const DetectorGeometry& det, double t) {
    const auto [t_min, t_max] = p0_support(phantom, det);
    const double ramp = phantom.A * det.c0 * det.c0 * (det.R0 - det.c0 * t) / (2.0 * det.R0);
    const double eps = 1e-12 * (1.0 + std::abs(t_max));
    if (std::abs(t - t_min) < eps || std::abs(t - t_max) < eps)
        return 0.5 * ramp;  // jump midpoint convention
    if (t < t_min || t > t_max) return 0.0;
    return ramp;
}

SampledSignal p0_ball(const BallPhantom& phantom, const DetectorGeometry& det,
                      const GridPair& grid) {
    SampledSignal sig{grid, std::vector<double>(grid.n)};
    for (int k = 0; k < grid.n; ++k)
        sig.values[k] = p0_ball_value(phantom, det, grid.t(k));
    return sig;
}

namespace {

// Spherical integral over S^2 of the ball indicator at x0 + (c0 t) s,
// latitude-band quadrature in u = cos(theta) (the indicator only depends on
// the polar angle against the detector direction). Within the single band the
// in/out boundary falls into, the covered fraction is resolved exactly, so the
// result varies smoothly with t and survives finite differencing.
double sphere_integral(const BallPhantom& phantom, const DetectorGeometry& det,
                       double t, int n_nodes) {
    const double rr = det.c0 * t;  // sphere radius around the detector
    if (rr == 0.0) return 0.0;
    // inside the ball iff R0^2 + rr^2 + 2 R0 rr u <= R^2, i.e. u <= u_star
    const double u_star = (phantom.R * phantom.R - det.R0 * det.R0 - rr * rr) /
                          (2.0 * det.R0 * rr);
    double acc = 0.0;
    const double h = 2.0 / n_nodes;
    for (int i = 0; i < n_nodes; ++i) {
        const double lo = -1.0 + i * h;
        const double hi = lo + h;
        if (u_star >= hi) acc += h;
        else if (u_star > lo) acc += u_star - lo;
    }
    return 2.0 * kPi * acc;  // azimuthal symmetry; d(solid angle) = 2 pi du
}

double spherical_mean_term(const BallPhantom& phantom, const DetectorGeometry& det,
                           double t, int n_nodes) {
    if (t <= 0.0) return 0.0;
    return det.c0 * det.c0 * t / (4.0 * kPi) * phantom.A *
           sphere_integral(phantom, det, t, n_nodes);
}

} // namespace

double p0_oracle(const BallPhantom& phantom, const DetectorGeometry& det, double t,
                 int n_nodes) {
    check_geometry(phantom, det);
    if (t <= 0.0) throw DomainError("p0_oracle: t must be positive");
    const double h = 1e-4 / det.c0;
    return (spherical_mean_term(phantom, det, t + h, n_nodes) -
            spherical_mean_term(phantom, det, t - h, n_nodes)) / (2.0 * h);
}

} // namespace attenuo
