#ifndef ATTENUO_LAWS_HPP
#define ATTENUO_LAWS_HPP

#include <complex>
#include <variant>
#include <vector>
#include <string>

#include "attenuo/errors.hpp"

namespace attenuo {

using cplx = std::complex<double>;

// Principal square root on C \ R_-, Re(result) >= 0.
// A strictly negative real argument is rejected (branch cut).
cplx principal_sqrt(cplx z);

// Principal power z^p on C \ R_-; z = 0 maps to 0 for p > 0.
cplx principal_pow(cplx z, double p);

// ---------------------------------------------------------------------------
// Attenuation model parameterizations. Units library-wide: length cm,
// frequency MHz, time 1/MHz, speed cm*MHz.
// ---------------------------------------------------------------------------

struct PowerLaw {
    double gamma;   // > 0, not an integer
    double alpha0;  // > 0, coefficient of the attenuation law alpha0*|w|^gamma
};

struct PowerLawGamma1 {
    double alpha0;  // > 0
    double omega0;  // != 0, reference frequency in the log term
};

struct PowerLawPlus {
    double gamma;   // > 0, not an integer
    double alpha0;  // > 0
    double alpha1;  // any sign (negative allowed at construction, flagged in scans)
};

struct Szabo {
    double gamma;   // > 0, not an integer
    double alpha0;  // > 0
    double c0;      // > 0
};

struct ThermoViscous {
    double tau0;    // > 0
    double c0;      // > 0
};

struct Relaxation {
    double kappa;   // > 0
    double tau;     // > 0
};

struct Nsw {
    double c0;      // > 0
    double rho0;    // > 0
    std::vector<Relaxation> relaxations;  // nonempty
};

struct GreenleafPatch {
    int gamma;      // 1 or 2
    double alpha0;  // > 0
    double omega0;  // kept for interface parity with the gamma=1 literature; unused
};

struct ChenHolm {
    double gamma;   // in (0,2)
    double alpha1;  // in (0,1)
    double c0;      // > 0
};

struct Ksb {
    double gamma;   // in (1,2]
    double alpha0;  // > 0
    double tau0;    // > 0
    double c0;      // > 0
};

using AttenuationModel = std::variant<PowerLaw, PowerLawGamma1, PowerLawPlus, Szabo,
                                      ThermoViscous, Nsw, GreenleafPatch, ChenHolm, Ksb>;

// Throws DomainError on any parameter-domain violation.
void validate_model(const AttenuationModel& model);

// Short stable identifier ("power_law", "szabo", ...), used in reports.
std::string model_name(const AttenuationModel& model);

// alpha*(omega) on the real axis. omega = 0 returns exactly 0 for every law.
// ChenHolm has no alpha* and raises DomainError.
cplx eval_alpha_star(const AttenuationModel& model, double omega);

// Re(alpha*), the attenuation law.
double attenuation_law(const AttenuationModel& model, double omega);

// Same closed forms evaluated at complex z with Im z >= 0 (holomorphic extension).
cplx eval_alpha_star_halfplane(const AttenuationModel& model, cplx z);

enum class ScanClass { LikelyCausal, LikelyNonCausal };

struct SignScanReport {
    double min_re;
    cplx argmin_point;
    ScanClass classification;
    bool negative_alpha1_flag;  // PowerLawPlus with alpha1 < 0
};

// Samples Re alpha*(z) on a polar grid in the closed upper half plane.
// Heuristic diagnostic for the half-plane sign condition; not a proof.
SignScanReport halfplane_sign_scan(const AttenuationModel& model,
                                   const std::vector<double>& radii,
                                   const std::vector<double>& angles);

struct NswDerived {
    double c0_tilde;
    std::vector<double> tau_tilde;
    bool causal_hypothesis;  // tau_tilde_m < tau_m for all m
};

NswDerived nsw_derive(double c0, double rho0, const std::vector<Relaxation>& relaxations);

// Leading behaviour of alpha* as omega -> 0; drives the omega = 0 rule of the
// propagator kernel.
enum class SmallOmegaClass {
    Superlinear,  // alpha* = o(omega)
    Linear,       // alpha* ~ const * omega
    Sublinear     // alpha* dominates omega
};

SmallOmegaClass small_omega_class(const AttenuationModel& model);

enum class Causality { Causal, NonCausal, Unknown };

// Theorem-expected causality of the kernel K for this law.
Causality expected_causality(const AttenuationModel& model);

} // namespace attenuo

#endif
