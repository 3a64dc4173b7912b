#include "attenuo/greens.hpp"

#include <cmath>

namespace attenuo {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrt2Pi = 2.50662827463100050242;
} // namespace

KernelSample kernel_K(const AttenuationModel& model, double r, const GridPair& grid) {
    validate_model(model);
    if (r < 0.0) throw DomainError("kernel_K: r must be >= 0");
    SampledSpectrum spec;
    spec.grid = grid;
    spec.values.resize(grid.n);
    for (int j = 0; j < grid.n; ++j)
        spec.values[j] = std::exp(-eval_alpha_star(model, grid.omega(j)) * r) / kSqrt2Pi;
    hermitian_symmetrize(spec);  // exact by the law symmetry invariant
    InverseResult inv = inverse_fourier(spec);
    KernelSample ks;
    ks.model = model;
    ks.r = r;
    ks.values = std::move(inv.signal);
    ks.imag_residue = inv.imag_residue;
    return ks;
}

AttenuatedGreen attenuated_green(const AttenuationModel& model, double r,
                                 const GridPair& grid, double c0) {
    if (r <= 0.0) throw DomainError("attenuated_green: G0 is singular at r = 0");
    if (c0 <= 0.0) throw DomainError("attenuated_green: c0 must be positive");
    KernelSample ks = kernel_K(model, r, grid);
    AttenuatedGreen g;
    g.values = std::move(ks.values);
    const double scale = 1.0 / (4.0 * kPi * r);
    for (auto& v : g.values.values) v *= scale;
    g.retarded_offset = r / c0;
    return g;
}

SampledSignal dstar_kernel(const AttenuationModel& model, const GridPair& grid) {
    validate_model(model);
    SampledSpectrum spec;
    spec.grid = grid;
    spec.values.resize(grid.n);
    for (int j = 0; j < grid.n; ++j)
        spec.values[j] = eval_alpha_star(model, grid.omega(j)) / kSqrt2Pi;
    hermitian_symmetrize(spec);
    return inverse_fourier(spec).signal;
}

CausalityReport causality_report(const AttenuationModel& model, double r,
                                 const GridPair& grid, int guard) {
    if (r <= 0.0) throw DomainError("causality_report: r must be positive");
    CausalityReport rep;
    rep.model = model;
    rep.r = r;
    rep.guard = guard;
    rep.fraction = pre_arrival_fraction(kernel_K(model, r, grid).values, guard);
    rep.verdict = (rep.fraction <= kCausalityThreshold) ? Causality::Causal
                                                        : Causality::NonCausal;
    rep.expected = expected_causality(model);
    return rep;
}

double chen_holm_spectral_green(const ChenHolm& params, double k_abs, double t) {
    validate_model(AttenuationModel{params});
    if (k_abs < 0.0) throw DomainError("chen_holm_spectral_green: |k| must be >= 0");
    if (t <= 0.0) return 0.0;  // Heaviside factor
    const double c0 = params.c0;
    const double A = -params.alpha1 * c0 * std::pow(k_abs, params.gamma);
    const double B2 = c0 * c0 * (k_abs * k_abs -
                      params.alpha1 * params.alpha1 * std::pow(k_abs, 2.0 * params.gamma));
    double osc;  // sin(B t) / B, continued as sinh for B^2 < 0
    if (B2 > 0.0) {
        const double B = std::sqrt(B2);
        osc = std::sin(B * t) / B;
    } else if (B2 < 0.0) {
        const double Bi = std::sqrt(-B2);
        osc = std::sinh(Bi * t) / Bi;
    } else {
        osc = t;
    }
    const double pref = c0 * c0 / std::pow(2.0 * kPi, 1.5);
    return pref * std::exp(A * t) * osc;
}

namespace {

// Composite Simpson of k sin(k r) g^(k, t) over [0, k_max] with n intervals.
double radial_quadrature(const ChenHolm& params, double r, double t,
                         double k_max, int n) {
    if (n % 2 != 0) ++n;
    const double h = k_max / n;
    auto f = [&](double k) { return k * std::sin(k * r) * chen_holm_spectral_green(params, k, t); };
    double s = f(0.0) + f(k_max);
    for (int i = 1; i < n; ++i) s += f(i * h) * ((i % 2) ? 4.0 : 2.0);
    return s * h / 3.0;
}

} // namespace

double chen_holm_radial_green(const ChenHolm& params, double r, double t,
                              double k_max, int n_quad) {
    if (r <= 0.0) throw DomainError("chen_holm_radial_green: r must be positive");
    if (k_max <= 0.0) throw DomainError("chen_holm_radial_green: k_max must be positive");
    if (n_quad < 64) throw DomainError("chen_holm_radial_green: n_quad must be >= 64");
    if (t <= 0.0) return 0.0;
    // Radial reduction of the 3D inverse transform:
    //   G(r, t) = sqrt(2 / pi) (1 / r) int_0^kmax k sin(k r) g^(k, t) dk,
    // which with the (2 pi)^{-3/2} inside g^ equals H(t) c0^2 / (2 pi^2 r) times
    // the bare oscillator integral.
    const double pref = std::sqrt(2.0 / kPi) / r;
    const double coarse = pref * radial_quadrature(params, r, t, k_max, n_quad);
    const double fine = pref * radial_quadrature(params, r, t, k_max, 2 * n_quad);
    const double denom = std::max(std::abs(fine), 1e-12);
    if (std::abs(fine - coarse) / denom > 1e-4)
        throw ConvergenceError("chen_holm_radial_green: quadrature did not converge");
    return fine;
}

} // namespace attenuo
