#include "attenuo/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <mutex>

namespace attenuo {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrt2Pi = 2.50662827463100050242;

// FFTW plan creation is not thread safe; execution on distinct arrays is.
std::mutex& fftw_mutex() {
    static std::mutex m;
    return m;
}

// out_k = sum_j e^{-2 pi i j k / n} in_j  (FFTW_FORWARD), unnormalized.
void fft_forward(const std::vector<cplx>& in, std::vector<cplx>& out) {
    const int n = static_cast<int>(in.size());
    out.resize(n);
    std::lock_guard<std::mutex> lock(fftw_mutex());
    fftw_plan plan = fftw_plan_dft_1d(
        n,
        reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data())),
        reinterpret_cast<fftw_complex*>(out.data()),
        FFTW_FORWARD, FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
}

void fft_backward(const std::vector<cplx>& in, std::vector<cplx>& out) {
    const int n = static_cast<int>(in.size());
    out.resize(n);
    std::lock_guard<std::mutex> lock(fftw_mutex());
    fftw_plan plan = fftw_plan_dft_1d(
        n,
        reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data())),
        reinterpret_cast<fftw_complex*>(out.data()),
        FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

} // namespace

std::vector<double> GridPair::omega_samples() const {
    std::vector<double> w(n);
    for (int j = 0; j < n; ++j) w[j] = omega(j);
    return w;
}

std::vector<double> GridPair::t_samples() const {
    std::vector<double> ts(n);
    for (int k = 0; k < n; ++k) ts[k] = t(k);
    return ts;
}

GridPair make_grids(int n, double omega_max) {
    if (!is_power_of_two(n) || n < 8)
        throw DomainError("make_grids: n must be a power of two >= 8");
    if (omega_max <= 0.0)
        throw DomainError("make_grids: omega_max must be positive");
    GridPair g;
    g.n = n;
    g.omega_max = omega_max;
    g.delta_omega = 2.0 * omega_max / (n - 1);
    g.delta_t = 2.0 * kPi / (n * g.delta_omega);
    return g;
}

GridPair paper_grid() { return make_grids(512, 80.0); }

void hermitian_symmetrize(SampledSpectrum& spec) {
    const int n = spec.grid.n;
    auto& v = spec.values;
    // omega(j) = -omega(n - j) for j = 1..n/2-1; j = 0 is the unpaired endpoint.
    for (int j = 1; j < n / 2; ++j) {
        const cplx avg = 0.5 * (v[j] + std::conj(v[n - j]));
        v[j] = avg;
        v[n - j] = std::conj(avg);
    }
    v[0] = cplx(v[0].real(), 0.0);
    v[n / 2] = cplx(v[n / 2].real(), 0.0);
    spec.hermitian = true;
}

std::vector<cplx> inverse_fourier_complex(const GridPair& grid, const std::vector<cplx>& values) {
    const int n = grid.n;
    if (static_cast<int>(values.size()) != n)
        throw DomainError("inverse_fourier: size mismatch");
    // f(t_k) = (dw / sqrt(2 pi)) (-1)^k sum_j e^{-2 pi i j k / n} v_j
    // (the (-1)^k carries the omega-grid offset of n/2 bins).
    std::vector<cplx> out;
    fft_forward(values, out);
    const double scale = grid.delta_omega / kSqrt2Pi;
    for (int k = 0; k < n; ++k)
        out[k] *= ((k & 1) ? -scale : scale);
    return out;
}

InverseResult inverse_fourier(const SampledSpectrum& spec) {
    auto raw = inverse_fourier_complex(spec.grid, spec.values);
    double max_re = 0.0, max_im = 0.0;
    for (const auto& z : raw) {
        max_re = std::max(max_re, std::abs(z.real()));
        max_im = std::max(max_im, std::abs(z.imag()));
    }
    InverseResult res;
    res.imag_residue = (max_re > 0.0) ? max_im / max_re : max_im;
    if (spec.hermitian && res.imag_residue > 1e-8)
        throw NumericalError("inverse_fourier: imaginary residue " +
                             std::to_string(res.imag_residue) + " on Hermitian input");
    res.signal.grid = spec.grid;
    res.signal.values.resize(raw.size());
    for (size_t k = 0; k < raw.size(); ++k) res.signal.values[k] = raw[k].real();
    return res;
}

SampledSpectrum forward_fourier(const SampledSignal& sig) {
    const int n = sig.grid.n;
    if (static_cast<int>(sig.values.size()) != n)
        throw DomainError("forward_fourier: size mismatch");
    // fhat_j = (dt / sqrt(2 pi)) sum_k e^{+2 pi i j k / n} (-1)^k f_k
    std::vector<cplx> in(n);
    for (int k = 0; k < n; ++k)
        in[k] = ((k & 1) ? -sig.values[k] : sig.values[k]);
    std::vector<cplx> out;
    fft_backward(in, out);
    SampledSpectrum spec;
    spec.grid = sig.grid;
    spec.values.resize(n);
    const double scale = sig.grid.delta_t / kSqrt2Pi;
    for (int j = 0; j < n; ++j) spec.values[j] = scale * out[j];
    spec.hermitian = true;  // real input
    return spec;
}

SampledSignal hilbert(const SampledSignal& sig) {
    SampledSpectrum spec = forward_fourier(sig);
    const int n = sig.grid.n;
    for (int j = 0; j < n; ++j) {
        const double w = sig.grid.omega(j);
        const double sgn = (w > 0.0) - (w < 0.0);
        spec.values[j] *= cplx(0.0, -sgn);
    }
    // The unpaired endpoint bin (j = 0) has no positive-frequency partner; the
    // multiplier would leave a purely imaginary leftover there, so drop it.
    spec.values[0] = cplx(0.0, 0.0);
    spec.hermitian = true;
    return inverse_fourier(spec).signal;
}

double pre_arrival_fraction(const SampledSignal& sig, int guard) {
    if (guard < 0) throw DomainError("pre_arrival_fraction: guard must be >= 0");
    const int n = sig.grid.n;
    double total = 0.0, pre = 0.0;
    for (int k = 0; k < n; ++k) {
        const double e = sig.values[k] * sig.values[k];
        total += e;
        if (k >= n / 2 && k <= n - 1 - guard) pre += e;  // t_signed < -guard * dt
    }
    if (total == 0.0) return 0.0;
    return pre / total;
}

double kramers_kronig_residual(const AttenuationModel& model, const GridPair& grid,
                               bool taper) {
    const int n = grid.n;
    // Treat Re alpha* sampled along omega as a "signal" and Hilbert-transform it
    // along the frequency axis; for a causality-compatible law the result
    // reproduces Im alpha* (dispersion from attenuation).
    SampledSignal re_part{grid, std::vector<double>(n)};
    std::vector<double> im_part(n);
    for (int j = 0; j < n; ++j) {
        const cplx a = eval_alpha_star(model, grid.omega(j));
        re_part.values[j] = a.real();
        im_part[j] = a.imag();
    }
    if (taper) {
        for (int j = 0; j < n; ++j) {
            const double x = std::abs(grid.omega(j)) / grid.omega_max;
            const double win = (x < 0.8) ? 1.0 : 0.5 * (1.0 + std::cos(kPi * (x - 0.8) / 0.2));
            re_part.values[j] *= win;
            im_part[j] *= win;
        }
    }
    const SampledSignal h = hilbert(re_part);
    // With the e^{+i w t} forward convention a causal kernel has
    // Im alpha* = -H{Re alpha*} up to a linear term a*w (a pure time delay has
    // Im proportional to w with zero Re partner; the dispersion relation only
    // determines alpha* modulo that subtraction). Fit and remove the drift,
    // then compare on the inner 80% of the band.
    double sw2 = 0.0, swd = 0.0;
    for (int j = 0; j < n; ++j) {
        const double w = grid.omega(j);
        if (std::abs(w) > 0.8 * grid.omega_max) continue;
        swd += w * (im_part[j] + h.values[j]);
        sw2 += w * w;
    }
    const double drift = (sw2 > 0.0) ? swd / sw2 : 0.0;
    double num = 0.0, den = 0.0;
    for (int j = 0; j < n; ++j) {
        const double w = grid.omega(j);
        if (std::abs(w) > 0.8 * grid.omega_max) continue;
        const double diff = im_part[j] + h.values[j] - drift * w;
        num += diff * diff;
        den += im_part[j] * im_part[j];
    }
    if (den == 0.0) return (num == 0.0) ? 0.0 : 1.0;
    return std::sqrt(num / den);
}

} // namespace attenuo
