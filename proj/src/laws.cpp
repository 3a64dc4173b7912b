#include "attenuo/laws.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace attenuo {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool on_negative_real_axis(cplx z) {
    return z.imag() == 0.0 && z.real() < 0.0;
}

bool is_integer(double x) {
    return std::abs(x - std::round(x)) < 1e-12;
}

// Signed tilde-alpha0 of Eq. (ta0): alpha0 / cos(pi gamma / 2).
double tilde_alpha0(double gamma, double alpha0) {
    const double c = std::cos(kPi * gamma / 2.0);
    if (std::abs(c) < 1e-12)
        throw DomainError("power law: gamma too close to an odd integer");
    return alpha0 / c;
}

} // namespace

cplx principal_sqrt(cplx z) {
    if (on_negative_real_axis(z))
        throw DomainError("principal_sqrt: argument on the negative real axis");
    cplx w = std::sqrt(z);        // std::sqrt is the principal branch, Re >= 0
    if (w.real() < 0.0) w = -w;   // guard against -0.0 artifacts
    return w;
}

cplx principal_pow(cplx z, double p) {
    if (z == cplx(0.0, 0.0)) {
        if (p > 0.0) return {0.0, 0.0};
        throw DomainError("principal_pow: 0 to a nonpositive power");
    }
    if (on_negative_real_axis(z))
        throw DomainError("principal_pow: argument on the negative real axis");
    return std::exp(p * std::log(z));
}

void validate_model(const AttenuationModel& model) {
    std::visit([](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, PowerLaw>) {
            if (m.gamma <= 0.0 || is_integer(m.gamma))
                throw DomainError("PowerLaw: gamma must be positive and non-integer");
            if (m.alpha0 <= 0.0) throw DomainError("PowerLaw: alpha0 must be positive");
        } else if constexpr (std::is_same_v<T, PowerLawGamma1>) {
            if (m.alpha0 <= 0.0) throw DomainError("PowerLawGamma1: alpha0 must be positive");
            if (m.omega0 == 0.0) throw DomainError("PowerLawGamma1: omega0 must be nonzero");
        } else if constexpr (std::is_same_v<T, PowerLawPlus>) {
            if (m.gamma <= 0.0 || is_integer(m.gamma))
                throw DomainError("PowerLawPlus: gamma must be positive and non-integer");
            if (m.alpha0 <= 0.0) throw DomainError("PowerLawPlus: alpha0 must be positive");
        } else if constexpr (std::is_same_v<T, Szabo>) {
            if (m.gamma <= 0.0 || is_integer(m.gamma))
                throw DomainError("Szabo: gamma must be positive and non-integer");
            if (m.alpha0 <= 0.0) throw DomainError("Szabo: alpha0 must be positive");
            if (m.c0 <= 0.0) throw DomainError("Szabo: c0 must be positive");
        } else if constexpr (std::is_same_v<T, ThermoViscous>) {
            if (m.tau0 <= 0.0) throw DomainError("ThermoViscous: tau0 must be positive");
            if (m.c0 <= 0.0) throw DomainError("ThermoViscous: c0 must be positive");
        } else if constexpr (std::is_same_v<T, Nsw>) {
            if (m.c0 <= 0.0) throw DomainError("Nsw: c0 must be positive");
            if (m.rho0 <= 0.0) throw DomainError("Nsw: rho0 must be positive");
            if (m.relaxations.empty()) throw DomainError("Nsw: needs at least one relaxation");
            for (const auto& rel : m.relaxations) {
                if (rel.kappa <= 0.0) throw DomainError("Nsw: kappa must be positive");
                if (rel.tau <= 0.0) throw DomainError("Nsw: tau must be positive");
            }
        } else if constexpr (std::is_same_v<T, GreenleafPatch>) {
            if (m.gamma != 1 && m.gamma != 2)
                throw DomainError("GreenleafPatch: gamma must be 1 or 2");
            if (m.alpha0 <= 0.0) throw DomainError("GreenleafPatch: alpha0 must be positive");
        } else if constexpr (std::is_same_v<T, ChenHolm>) {
            if (m.gamma <= 0.0 || m.gamma >= 2.0)
                throw DomainError("ChenHolm: gamma must be in (0,2)");
            if (m.alpha1 <= 0.0 || m.alpha1 >= 1.0)
                throw DomainError("ChenHolm: alpha1 must be in (0,1)");
            if (m.c0 <= 0.0) throw DomainError("ChenHolm: c0 must be positive");
        } else if constexpr (std::is_same_v<T, Ksb>) {
            if (m.gamma <= 1.0 || m.gamma > 2.0)
                throw DomainError("Ksb: gamma must be in (1,2]");
            if (m.alpha0 <= 0.0) throw DomainError("Ksb: alpha0 must be positive");
            if (m.tau0 <= 0.0) throw DomainError("Ksb: tau0 must be positive");
            if (m.c0 <= 0.0) throw DomainError("Ksb: c0 must be positive");
        }
    }, model);
}

std::string model_name(const AttenuationModel& model) {
    return std::visit([](const auto& m) -> std::string {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, PowerLaw>) return "power_law";
        else if constexpr (std::is_same_v<T, PowerLawGamma1>) return "power_law_gamma1";
        else if constexpr (std::is_same_v<T, PowerLawPlus>) return "power_law_plus";
        else if constexpr (std::is_same_v<T, Szabo>) return "szabo";
        else if constexpr (std::is_same_v<T, ThermoViscous>) return "thermo_viscous";
        else if constexpr (std::is_same_v<T, Nsw>) return "nsw";
        else if constexpr (std::is_same_v<T, GreenleafPatch>) return "greenleaf_patch";
        else if constexpr (std::is_same_v<T, ChenHolm>) return "chen_holm";
        else return "ksb";
    }, model);
}

namespace {

// Shared real-axis / half-plane evaluation. On the real axis z = -i w with w
// real; in the upper half plane z = -i zeta keeps -i zeta off the negative
// real cut whenever Im(zeta) >= 0 and zeta != negative imaginary.
//
// All closed forms below are written in terms of mi = -i * argument.

cplx alpha_star_at(const PowerLaw& m, cplx mi) {
    return tilde_alpha0(m.gamma, m.alpha0) * principal_pow(mi, m.gamma);
}

cplx alpha_star_at(const PowerLawPlus& m, cplx mi) {
    return tilde_alpha0(m.gamma, m.alpha0) * principal_pow(mi, m.gamma) + m.alpha1 * mi;
}

cplx alpha_star_at(const Szabo& m, cplx mi) {
    const double at = tilde_alpha0(m.gamma, m.alpha0);
    const cplx arg = mi * mi + 2.0 * at * m.c0 * principal_pow(mi, m.gamma + 1.0);
    cplx root;
    try {
        root = principal_sqrt(arg);
    } catch (const DomainError&) {
        throw NumericalError("szabo: interior root hit the branch cut");
    }
    return root / m.c0 - mi / m.c0;  // -mi = i*omega on the real axis
}

cplx alpha_star_at(const ThermoViscous& m, cplx mi) {
    cplx root;
    try {
        root = principal_sqrt(1.0 + m.tau0 * mi);
    } catch (const DomainError&) {
        throw NumericalError("thermo_viscous: interior root hit the branch cut");
    }
    return mi / (m.c0 * root) - mi / m.c0;
}

cplx alpha_star_at(const Nsw& m, cplx mi) {
    const NswDerived d = nsw_derive(m.c0, m.rho0, m.relaxations);
    const auto N = static_cast<double>(m.relaxations.size());
    cplx s(0.0, 0.0);
    for (size_t i = 0; i < m.relaxations.size(); ++i)
        s += (1.0 + d.tau_tilde[i] * mi) / (1.0 + m.relaxations[i].tau * mi);
    cplx root;
    try {
        root = principal_sqrt(s / N);
    } catch (const DomainError&) {
        throw NumericalError("nsw: interior root hit the branch cut");
    }
    return (mi / m.c0) * ((m.c0 / d.c0_tilde) * root - 1.0);
}

cplx alpha_star_at(const Ksb& m, cplx mi) {
    cplx root;
    try {
        root = principal_sqrt(1.0 + principal_pow(m.tau0 * mi, m.gamma - 1.0));
    } catch (const DomainError&) {
        throw NumericalError("ksb: interior root hit the branch cut");
    }
    return m.alpha0 * mi / (m.c0 * root);
}

} // namespace

cplx eval_alpha_star(const AttenuationModel& model, double omega) {
    if (std::holds_alternative<ChenHolm>(model))
        throw DomainError("eval_alpha_star: ChenHolm is a wave-number law; use chen_holm_*");
    if (omega == 0.0) return {0.0, 0.0};
    const cplx mi(0.0, -omega);  // -i * omega
    return std::visit([&](const auto& m) -> cplx {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, PowerLawGamma1>) {
            return cplx(m.alpha0 * std::abs(omega),
                        (2.0 / kPi) * m.alpha0 * omega * std::log(std::abs(omega / m.omega0)));
        } else if constexpr (std::is_same_v<T, GreenleafPatch>) {
            return cplx(m.alpha0 * std::pow(std::abs(omega), m.gamma), 0.0);
        } else if constexpr (std::is_same_v<T, ChenHolm>) {
            return cplx(0.0, 0.0);  // unreachable
        } else {
            return alpha_star_at(m, mi);
        }
    }, model);
}

double attenuation_law(const AttenuationModel& model, double omega) {
    return eval_alpha_star(model, omega).real();
}

cplx eval_alpha_star_halfplane(const AttenuationModel& model, cplx z) {
    if (std::holds_alternative<ChenHolm>(model))
        throw DomainError("eval_alpha_star_halfplane: ChenHolm is a wave-number law");
    if (z.imag() < 0.0)
        throw DomainError("eval_alpha_star_halfplane: Im z must be >= 0");
    if (z == cplx(0.0, 0.0)) return {0.0, 0.0};
    const cplx mi = cplx(0.0, -1.0) * z;
    return std::visit([&](const auto& m) -> cplx {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, PowerLawGamma1>) {
            // Half-plane extension of Eq. (alphagamma1): alpha0 z + i (2 alpha0 / pi) z log(z / w0).
            const cplx lg = std::log(z / m.omega0);
            return m.alpha0 * z + cplx(0.0, 1.0) * (2.0 * m.alpha0 / kPi) * z * lg;
        } else if constexpr (std::is_same_v<T, GreenleafPatch>) {
            // |omega|^gamma has no holomorphic extension; evaluate the literal
            // modulus form as the paper's proofs do on the imaginary axis.
            return cplx(m.alpha0 * std::pow(std::abs(z), static_cast<double>(m.gamma)), 0.0);
        } else if constexpr (std::is_same_v<T, ChenHolm>) {
            return cplx(0.0, 0.0);  // unreachable
        } else {
            return alpha_star_at(m, mi);
        }
    }, model);
}

SignScanReport halfplane_sign_scan(const AttenuationModel& model,
                                   const std::vector<double>& radii,
                                   const std::vector<double>& angles) {
    validate_model(model);
    SignScanReport rep{};
    rep.min_re = std::numeric_limits<double>::infinity();
    rep.negative_alpha1_flag = false;
    if (const auto* plp = std::get_if<PowerLawPlus>(&model))
        rep.negative_alpha1_flag = plp->alpha1 < 0.0;
    double scale = 0.0;
    for (double rho : radii) {
        if (rho <= 0.0) throw DomainError("halfplane_sign_scan: radii must be positive");
        for (double theta : angles) {
            if (theta < 0.0 || theta > kPi)
                throw DomainError("halfplane_sign_scan: angles must lie in [0, pi]");
            const cplx z = rho * cplx(std::cos(theta), std::sin(theta));
            cplx val;
            try {
                val = eval_alpha_star_halfplane(model, z);
            } catch (const std::runtime_error&) {
                continue;  // skip branch-cut grid points
            }
            scale = std::max(scale, std::abs(val));
            if (val.real() < rep.min_re) {
                rep.min_re = val.real();
                rep.argmin_point = z;
            }
        }
    }
    const double tol_scan = 1e-10 * (1.0 + scale);
    rep.classification = (rep.min_re >= -tol_scan) ? ScanClass::LikelyCausal
                                                   : ScanClass::LikelyNonCausal;
    return rep;
}

NswDerived nsw_derive(double c0, double rho0, const std::vector<Relaxation>& relaxations) {
    if (c0 <= 0.0 || rho0 <= 0.0 || relaxations.empty())
        throw DomainError("nsw_derive: invalid inputs");
    double ssum = 0.0;
    for (const auto& rel : relaxations) {
        if (rel.kappa <= 0.0 || rel.tau <= 0.0)
            throw DomainError("nsw_derive: kappa and tau must be positive");
        ssum += c0 * c0 * rho0 * rel.kappa;
    }
    NswDerived d;
    d.c0_tilde = c0 / std::sqrt(1.0 + ssum);
    const auto N = static_cast<double>(relaxations.size());
    d.causal_hypothesis = true;
    for (const auto& rel : relaxations) {
        const double tt = rel.tau * (1.0 - N * d.c0_tilde * d.c0_tilde * rho0 * rel.kappa);
        d.tau_tilde.push_back(tt);
        if (!(tt < rel.tau)) d.causal_hypothesis = false;
    }
    return d;
}

SmallOmegaClass small_omega_class(const AttenuationModel& model) {
    return std::visit([](const auto& m) -> SmallOmegaClass {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, PowerLaw>) {
            return m.gamma > 1.0 ? SmallOmegaClass::Superlinear : SmallOmegaClass::Sublinear;
        } else if constexpr (std::is_same_v<T, PowerLawGamma1>) {
            // omega log omega dominates omega.
            return SmallOmegaClass::Sublinear;
        } else if constexpr (std::is_same_v<T, PowerLawPlus>) {
            if (m.alpha1 != 0.0) return SmallOmegaClass::Linear;
            return m.gamma > 1.0 ? SmallOmegaClass::Superlinear : SmallOmegaClass::Sublinear;
        } else if constexpr (std::is_same_v<T, Szabo>) {
            return m.gamma > 1.0 ? SmallOmegaClass::Superlinear : SmallOmegaClass::Sublinear;
        } else if constexpr (std::is_same_v<T, ThermoViscous>) {
            return SmallOmegaClass::Superlinear;  // ~ tau0 w^2 / (2 c0)
        } else if constexpr (std::is_same_v<T, Nsw>) {
            return SmallOmegaClass::Linear;       // ~ (-i w / c0)(c0 / c0_tilde - 1)
        } else if constexpr (std::is_same_v<T, GreenleafPatch>) {
            return m.gamma == 2 ? SmallOmegaClass::Superlinear : SmallOmegaClass::Linear;
        } else if constexpr (std::is_same_v<T, ChenHolm>) {
            throw DomainError("small_omega_class: ChenHolm has no alpha*");
        } else {
            return SmallOmegaClass::Linear;       // Ksb: ~ (alpha0 / c0)(-i w)
        }
    }, model);
}

Causality expected_causality(const AttenuationModel& model) {
    return std::visit([](const auto& m) -> Causality {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, PowerLaw>) {
            return (m.gamma < 1.0) ? Causality::Causal : Causality::NonCausal;
        } else if constexpr (std::is_same_v<T, PowerLawGamma1>) {
            return Causality::NonCausal;
        } else if constexpr (std::is_same_v<T, PowerLawPlus>) {
            if (m.gamma > 1.0) return Causality::NonCausal;
            return (m.alpha1 >= 0.0) ? Causality::Causal : Causality::NonCausal;
        } else if constexpr (std::is_same_v<T, Szabo>) {
            return (m.gamma < 1.0) ? Causality::Causal : Causality::NonCausal;
        } else if constexpr (std::is_same_v<T, ThermoViscous>) {
            return Causality::NonCausal;
        } else if constexpr (std::is_same_v<T, Nsw>) {
            const NswDerived d = nsw_derive(m.c0, m.rho0, m.relaxations);
            return d.causal_hypothesis ? Causality::Causal : Causality::Unknown;
        } else if constexpr (std::is_same_v<T, GreenleafPatch>) {
            return Causality::NonCausal;
        } else if constexpr (std::is_same_v<T, ChenHolm>) {
            return Causality::Unknown;  // kernel K is not defined via alpha*
        } else {
            return Causality::Causal;   // Ksb, Theorem (thcaus01)
        }
    }, model);
}

} // namespace attenuo
