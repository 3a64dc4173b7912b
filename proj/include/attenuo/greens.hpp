#ifndef ATTENUO_GREENS_HPP
#define ATTENUO_GREENS_HPP

#include "attenuo/laws.hpp"
#include "attenuo/spectral.hpp"

namespace attenuo {

struct KernelSample {
    AttenuationModel model;
    double r = 0.0;
    SampledSignal values;       // K(r, .) with time measured relative to 0
    double imag_residue = 0.0;
};

// K(r, t) = (2 pi)^{-1/2} F^{-1}{ e^{-alpha*(.) r} }(t); with the transform's
// own (2 pi)^{-1/2} this makes alpha* == 0 a unit-mass delta.
KernelSample kernel_K(const AttenuationModel& model, double r, const GridPair& grid);

struct AttenuatedGreen {
    SampledSignal values;       // K(r,.) / (4 pi r)
    double retarded_offset;     // add r / c0 to the time axis for absolute time
};

AttenuatedGreen attenuated_green(const AttenuationModel& model, double r,
                                 const GridPair& grid, double c0);

// Convolution kernel of the D* operator: (2 pi)^{-1/2} F^{-1}{ alpha* }.
SampledSignal dstar_kernel(const AttenuationModel& model, const GridPair& grid);

struct CausalityReport {
    AttenuationModel model;
    double r = 0.0;
    double fraction = 0.0;
    int guard = 0;
    Causality verdict = Causality::Unknown;
    Causality expected = Causality::Unknown;
};

inline constexpr double kCausalityThreshold = 1e-3;

CausalityReport causality_report(const AttenuationModel& model, double r,
                                 const GridPair& grid, int guard);

// Chen-Holm spectral Green function g^(k, t) (includes the (2 pi)^{-3/2} factor).
double chen_holm_spectral_green(const ChenHolm& params, double k_abs, double t);

// Radial 3D inverse transform of the spectral Green function, reduced to a
// 1-D sine-transform quadrature (composite Simpson; self-convergence checked
// by doubling n_quad).
double chen_holm_radial_green(const ChenHolm& params, double r, double t,
                              double k_max, int n_quad);

} // namespace attenuo

#endif
