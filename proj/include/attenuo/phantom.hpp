#ifndef ATTENUO_PHANTOM_HPP
#define ATTENUO_PHANTOM_HPP

#include <utility>

#include "attenuo/spectral.hpp"

namespace attenuo {

struct BallPhantom {
    double R = 1.0;  // cm, > 0
    double A = 1.0;  // amplitude
};

struct DetectorGeometry {
    double R0 = 0.0; // cm, distance |x0| from the ball center
    double c0 = 1.0; // cm*MHz
};

// supp(p0) = [(R0 - R)/c0, (R0 + R)/c0]; requires R0 > R.
std::pair<double, double> p0_support(const BallPhantom& phantom, const DetectorGeometry& det);

// Analytic N-wave: p0(t) = A c0^2 (R0 - c0 t) / (2 R0) on the support, else 0,
// half-values at the jump endpoints. Validated against p0_oracle (tests).
SampledSignal p0_ball(const BallPhantom& phantom, const DetectorGeometry& det,
                      const GridPair& grid);

double p0_ball_value(const BallPhantom& phantom, const DetectorGeometry& det, double t);

// Brute-force oracle: central finite difference of c0^2 t / (4 pi) times the
// spherical integral of the ball indicator (latitude-band quadrature).
double p0_oracle(const BallPhantom& phantom, const DetectorGeometry& det, double t,
                 int n_nodes = 20000);

} // namespace attenuo

#endif
