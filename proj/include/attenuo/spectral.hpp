#ifndef ATTENUO_SPECTRAL_HPP
#define ATTENUO_SPECTRAL_HPP

#include <complex>
#include <vector>

#include "attenuo/errors.hpp"
#include "attenuo/laws.hpp"

namespace attenuo {

// Matched frequency/time grids with the paper's Fourier convention:
//   F{f}(w)    = (2 pi)^{-1/2} int e^{+i w t} f(t) dt
//   F^{-1}{g}(t) = (2 pi)^{-1/2} int e^{-i w t} g(w) dw
// omega_j = (j - n/2) * delta_omega (0 sits at j = n/2; the j = 0 endpoint is
// the unpaired sample slightly below -omega_max).
// t_k = k * delta_t on [0, 2 pi / delta_omega); indices n/2..n-1 are read as
// negative times t_k - 2 pi / delta_omega for causality metrics.
struct GridPair {
    int n = 0;
    double omega_max = 0.0;
    double delta_omega = 0.0;
    double delta_t = 0.0;

    double omega(int j) const { return (j - n / 2) * delta_omega; }
    double t(int k) const { return k * delta_t; }
    // Signed time of sample k with the upper half of the window read as negative.
    double t_signed(int k) const {
        return (k < n / 2) ? t(k) : t(k) - 2.0 * 3.14159265358979323846 / delta_omega;
    }
    std::vector<double> omega_samples() const;
    std::vector<double> t_samples() const;
};

GridPair make_grids(int n, double omega_max);
GridPair paper_grid();  // n = 512, omega_max = 80

struct SampledSignal {
    GridPair grid;
    std::vector<double> values;
};

struct SampledSpectrum {
    GridPair grid;
    std::vector<cplx> values;
    bool hermitian = false;
};

struct InverseResult {
    SampledSignal signal;
    double imag_residue = 0.0;  // max|Im| / max|Re| of the raw transform
};

// Forces v(-w) = conj(v(w)) by pairwise averaging; v(0) and the unpaired
// endpoint are forced real.
void hermitian_symmetrize(SampledSpectrum& spec);

// Discrete version of the inverse transform above. For Hermitian-flagged input
// the imaginary residue must stay below 1e-8 relative or NumericalError is thrown.
InverseResult inverse_fourier(const SampledSpectrum& spec);

// Full complex output, no Hermitian bookkeeping (internal workhorse).
std::vector<cplx> inverse_fourier_complex(const GridPair& grid, const std::vector<cplx>& values);

SampledSpectrum forward_fourier(const SampledSignal& sig);

// Discrete Hilbert transform: multiply the forward transform by -i sgn(omega).
SampledSignal hilbert(const SampledSignal& sig);

// Energy fraction strictly before t = -guard * delta_t.
double pre_arrival_fraction(const SampledSignal& sig, int guard);

// Normalized mismatch between Im alpha* and the Hilbert transform of Re alpha*
// along the frequency axis, modulo a fitted linear (pure-delay) term;
// restricted to the inner 80% of the band and normalized by |Im alpha*|.
double kramers_kronig_residual(const AttenuationModel& model, const GridPair& grid,
                               bool taper = false);

} // namespace attenuo

#endif
