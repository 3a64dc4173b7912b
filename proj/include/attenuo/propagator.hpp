#ifndef ATTENUO_PROPAGATOR_HPP
#define ATTENUO_PROPAGATOR_HPP

#include <Eigen/Dense>
#include <optional>

#include "attenuo/laws.hpp"
#include "attenuo/spectral.hpp"

namespace attenuo {

// F{M}(omega, t') = (2 pi)^{-1/2} i w e^{-alpha*(w) c0 t' + i w t'} / (-alpha*(w) c0 + i w).
// At omega = 0 the 0/0 is resolved by the small-omega class of the law:
// Superlinear -> (2 pi)^{-1/2}, Sublinear -> 0, Linear -> symmetric-neighbor
// average at +-neighbor_delta.
cplx mhat_entry(const AttenuationModel& model, double c0, double omega, double t_prime,
                double neighbor_delta = 1e-6);

// Inverse transform of the mhat column at fixed t'.
SampledSignal m_time_kernel(const AttenuationModel& model, double c0, double t_prime,
                            const GridPair& grid);

struct PropagatorMatrix {
    AttenuationModel model;
    double c0 = 0.0;
    GridPair grid;
    double t_min = 0.0, t_max = 0.0;
    int n_cols = 0;
    double dt_prime = 0.0;
    Eigen::MatrixXcd entries;  // grid.n x n_cols, quadrature weight dt' included

    double t_prime(int j) const { return t_min + (j + 0.5) * dt_prime; }
    std::vector<double> t_prime_samples() const;
};

// Columns at midpoints of [t_min, t_max]; default n_cols makes dt' ~ grid delta_t.
PropagatorMatrix build_matrix(const AttenuationModel& model, double c0, const GridPair& grid,
                              std::pair<double, double> support,
                              std::optional<int> n_cols = std::nullopt);

struct ForwardResult {
    SampledSpectrum spectrum;  // F{p_att}
    SampledSignal signal;      // p_att(t)
};

// p0_cols holds p0 sampled at the matrix column midpoints.
ForwardResult forward_apply(const PropagatorMatrix& matrix, const std::vector<double>& p0_cols);

struct SvdReport {
    std::vector<double> singular_values;  // descending
    int n_cut = 0;                        // #{sigma_i >= 1e-3 sigma_1}
    double L = 0.0;                       // detector distance, metadata
    int rows = 0, cols = 0;
    std::string model;
};

SvdReport svd_analyze(const PropagatorMatrix& matrix, double L = 0.0);

struct InvertResult {
    std::vector<double> p0_cols;  // minimum-norm LS solution at the column midpoints
    int rank_used = 0;
    double residual_norm = 0.0;
    double amplification = 0.0;   // sigma_1 / sigma_rank
    double imag_residue = 0.0;
};

InvertResult invert_truncated(const PropagatorMatrix& matrix, const SampledSpectrum& p_att_spectrum,
                              std::optional<int> rank = std::nullopt);

// Thread cap from ATTENUO_THREADS (>= 1); defaults to hardware concurrency.
int thread_budget();

} // namespace attenuo

#endif
