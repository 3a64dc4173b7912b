#include "attenuo/propagator.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <cstdlib>
#include <thread>

namespace attenuo {

namespace {
constexpr double kSqrt2Pi = 2.50662827463100050242;

cplx mhat_raw(const AttenuationModel& model, double c0, double omega, double t_prime) {
    const cplx as = eval_alpha_star(model, omega);
    const cplx iw(0.0, omega);
    const cplx den = -as * c0 + iw;
    if (std::abs(den) < 1e-12)
        throw NumericalError("mhat_entry: alpha*(w) c0 ~ i w (Lemma hypothesis violated)");
    return iw * std::exp(-as * c0 * t_prime + iw * t_prime) / (den * kSqrt2Pi);
}
} // namespace

cplx mhat_entry(const AttenuationModel& model, double c0, double omega, double t_prime,
                double neighbor_delta) {
    if (t_prime < 0.0) throw DomainError("mhat_entry: t_prime must be >= 0");
    if (c0 <= 0.0) throw DomainError("mhat_entry: c0 must be positive");
    if (omega != 0.0) return mhat_raw(model, c0, omega, t_prime);
    switch (small_omega_class(model)) {
        case SmallOmegaClass::Superlinear:
            return cplx(1.0 / kSqrt2Pi, 0.0);
        case SmallOmegaClass::Sublinear:
            return cplx(0.0, 0.0);
        case SmallOmegaClass::Linear:
        default:
            return 0.5 * (mhat_raw(model, c0, neighbor_delta, t_prime) +
                          mhat_raw(model, c0, -neighbor_delta, t_prime));
    }
}

SampledSignal m_time_kernel(const AttenuationModel& model, double c0, double t_prime,
                            const GridPair& grid) {
    SampledSpectrum spec;
    spec.grid = grid;
    spec.values.resize(grid.n);
    for (int j = 0; j < grid.n; ++j)
        spec.values[j] = mhat_entry(model, c0, grid.omega(j), t_prime, grid.delta_omega);
    hermitian_symmetrize(spec);
    return inverse_fourier(spec).signal;
}

std::vector<double> PropagatorMatrix::t_prime_samples() const {
    std::vector<double> ts(n_cols);
    for (int j = 0; j < n_cols; ++j) ts[j] = t_prime(j);
    return ts;
}

int thread_budget() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    if (const char* env = std::getenv("ATTENUO_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1) return std::min(cap, hw);
    }
    return hw;
}

PropagatorMatrix build_matrix(const AttenuationModel& model, double c0, const GridPair& grid,
                              std::pair<double, double> support,
                              std::optional<int> n_cols) {
    validate_model(model);
    const auto [t_min, t_max] = support;
    if (!(t_max > t_min) || t_min < 0.0)
        throw DomainError("build_matrix: need t_max > t_min >= 0");
    int cols = n_cols.value_or(
        std::max(2, static_cast<int>(std::lround((t_max - t_min) / grid.delta_t))));
    if (cols < 2) throw DomainError("build_matrix: n_cols must be >= 2");

    PropagatorMatrix mat;
    mat.model = model;
    mat.c0 = c0;
    mat.grid = grid;
    mat.t_min = t_min;
    mat.t_max = t_max;
    mat.n_cols = cols;
    mat.dt_prime = (t_max - t_min) / cols;
    mat.entries.resize(grid.n, cols);

    // alpha* depends on omega only; evaluate once per row.
    std::vector<cplx> alpha(grid.n);
    for (int i = 0; i < grid.n; ++i)
        alpha[i] = eval_alpha_star(model, grid.omega(i));

    const int n = grid.n;
    auto fill_cols = [&](int j0, int j1) {
        for (int j = j0; j < j1; ++j) {
            const double tp = mat.t_prime(j);
            for (int i = 0; i < n; ++i) {
                const double w = grid.omega(i);
                cplx entry;
                if (w == 0.0) {
                    entry = mhat_entry(model, c0, 0.0, tp, grid.delta_omega);
                } else {
                    const cplx iw(0.0, w);
                    const cplx den = -alpha[i] * c0 + iw;
                    if (std::abs(den) < 1e-12)
                        throw NumericalError("build_matrix: vanishing denominator");
                    entry = iw * std::exp(-alpha[i] * c0 * tp + iw * tp) / (den * kSqrt2Pi);
                }
                mat.entries(i, j) = entry * mat.dt_prime;
            }
        }
    };

    const int budget = std::min(thread_budget(), cols);
    if (budget <= 1) {
        fill_cols(0, cols);
    } else {
        std::vector<std::thread> workers;
        const int chunk = (cols + budget - 1) / budget;
        for (int b = 0; b < budget; ++b) {
            const int j0 = b * chunk;
            const int j1 = std::min(cols, j0 + chunk);
            if (j0 >= j1) break;
            workers.emplace_back(fill_cols, j0, j1);
        }
        for (auto& w : workers) w.join();
    }
    return mat;
}

ForwardResult forward_apply(const PropagatorMatrix& matrix, const std::vector<double>& p0_cols) {
    if (static_cast<int>(p0_cols.size()) != matrix.n_cols)
        throw DomainError("forward_apply: p0 sample count must match matrix columns");
    Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(p0_cols.data(), matrix.n_cols);
    Eigen::VectorXcd y = matrix.entries * x.cast<cplx>();
    ForwardResult res;
    res.spectrum.grid = matrix.grid;
    res.spectrum.values.assign(y.data(), y.data() + y.size());
    hermitian_symmetrize(res.spectrum);  // exact up to roundoff for real p0
    res.signal = inverse_fourier(res.spectrum).signal;
    return res;
}

SvdReport svd_analyze(const PropagatorMatrix& matrix, double L) {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(matrix.entries);
    const auto& sv = svd.singularValues();
    if (!sv.allFinite())
        throw NumericalError("svd_analyze: SVD produced non-finite singular values");
    SvdReport rep;
    rep.singular_values.assign(sv.data(), sv.data() + sv.size());
    const double cutoff = 1e-3 * rep.singular_values.front();
    rep.n_cut = 0;
    for (double s : rep.singular_values)
        if (s >= cutoff) ++rep.n_cut;
    rep.L = L;
    rep.rows = static_cast<int>(matrix.entries.rows());
    rep.cols = static_cast<int>(matrix.entries.cols());
    rep.model = model_name(matrix.model);
    return rep;
}

InvertResult invert_truncated(const PropagatorMatrix& matrix,
                              const SampledSpectrum& p_att_spectrum,
                              std::optional<int> rank) {
    if (p_att_spectrum.grid.n != matrix.grid.n)
        throw DomainError("invert_truncated: spectrum grid mismatch");
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(matrix.entries,
                                        Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double cutoff = 1e-3 * sv(0);
    int n_cut = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) >= cutoff) ++n_cut;
    const int r = rank.value_or(n_cut);
    if (r < 1 || r > sv.size())
        throw DomainError("invert_truncated: rank out of range");

    Eigen::VectorXcd b = Eigen::Map<const Eigen::VectorXcd>(
        p_att_spectrum.values.data(), matrix.grid.n);
    Eigen::VectorXcd coeff = svd.matrixU().leftCols(r).adjoint() * b;
    for (int i = 0; i < r; ++i) coeff(i) /= sv(i);
    Eigen::VectorXcd x = svd.matrixV().leftCols(r) * coeff;

    InvertResult res;
    res.rank_used = r;
    res.amplification = sv(0) / sv(r - 1);
    res.residual_norm = (matrix.entries * x - b).norm();
    res.p0_cols.resize(matrix.n_cols);
    double max_re = 0.0, max_im = 0.0;
    for (int j = 0; j < matrix.n_cols; ++j) {
        res.p0_cols[j] = x(j).real();
        max_re = std::max(max_re, std::abs(x(j).real()));
        max_im = std::max(max_im, std::abs(x(j).imag()));
    }
    res.imag_residue = (max_re > 0.0) ? max_im / max_re : max_im;
    return res;
}

} // namespace attenuo
