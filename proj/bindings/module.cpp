// Python bindings for the main operations: grids, attenuation laws, kernels,
// causality reports, phantom, and the propagator matrix pipeline.

#include <pybind11/pybind11.h>
#include <pybind11/complex.h>
#include <pybind11/stl.h>

#include "attenuo/greens.hpp"
#include "attenuo/laws.hpp"
#include "attenuo/phantom.hpp"
#include "attenuo/propagator.hpp"
#include "attenuo/spectral.hpp"

namespace py = pybind11;
using namespace attenuo;

namespace {

// pybind11's stl.h variant caster would otherwise try to unpack the model
// union; keep it opaque behind a holder type.
struct Model {
    AttenuationModel m;
};

std::string causality_str(Causality c) {
    switch (c) {
        case Causality::Causal: return "Causal";
        case Causality::NonCausal: return "NonCausal";
        default: return "Unknown";
    }
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "attenuated photoacoustics core";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_ArithmeticError);

    py::class_<GridPair>(m, "GridPair")
        .def_readonly("n", &GridPair::n)
        .def_readonly("omega_max", &GridPair::omega_max)
        .def_readonly("delta_omega", &GridPair::delta_omega)
        .def_readonly("delta_t", &GridPair::delta_t)
        .def("omega", &GridPair::omega)
        .def("t", &GridPair::t)
        .def("t_signed", &GridPair::t_signed)
        .def("omega_samples", &GridPair::omega_samples)
        .def("t_samples", &GridPair::t_samples);
    m.def("make_grids", &make_grids, py::arg("n"), py::arg("omega_max"));
    m.def("paper_grid", &paper_grid);

    py::class_<Model>(m, "AttenuationModel")
        .def("__repr__", [](const Model& mo) {
            return "<AttenuationModel " + model_name(mo.m) + ">";
        });

    m.def("power_law", [](double gamma, double alpha0) {
        Model mo{PowerLaw{gamma, alpha0}};
        validate_model(mo.m);
        return mo;
    }, py::arg("gamma"), py::arg("alpha0"));
    m.def("power_law_gamma1", [](double alpha0, double omega0) {
        Model mo{PowerLawGamma1{alpha0, omega0}};
        validate_model(mo.m);
        return mo;
    }, py::arg("alpha0"), py::arg("omega0") = 1.0);
    m.def("power_law_plus", [](double gamma, double alpha0, double alpha1) {
        Model mo{PowerLawPlus{gamma, alpha0, alpha1}};
        validate_model(mo.m);
        return mo;
    }, py::arg("gamma"), py::arg("alpha0"), py::arg("alpha1"));
    m.def("szabo", [](double gamma, double alpha0, double c0) {
        Model mo{Szabo{gamma, alpha0, c0}};
        validate_model(mo.m);
        return mo;
    }, py::arg("gamma"), py::arg("alpha0"), py::arg("c0"));
    m.def("thermo_viscous", [](double tau0, double c0) {
        Model mo{ThermoViscous{tau0, c0}};
        validate_model(mo.m);
        return mo;
    }, py::arg("tau0"), py::arg("c0"));
    m.def("nsw", [](double c0, double rho0, const std::vector<double>& kappa,
                    const std::vector<double>& tau) {
        if (kappa.size() != tau.size())
            throw DomainError("nsw: kappa and tau need equal lengths");
        Nsw raw{c0, rho0, {}};
        for (size_t i = 0; i < kappa.size(); ++i) raw.relaxations.push_back({kappa[i], tau[i]});
        Model mo{raw};
        validate_model(mo.m);
        return mo;
    }, py::arg("c0"), py::arg("rho0"), py::arg("kappa"), py::arg("tau"));
    m.def("greenleaf_patch", [](int gamma, double alpha0, double omega0) {
        Model mo{GreenleafPatch{gamma, alpha0, omega0}};
        validate_model(mo.m);
        return mo;
    }, py::arg("gamma"), py::arg("alpha0"), py::arg("omega0") = 1.0);
    m.def("chen_holm", [](double gamma, double alpha1, double c0) {
        Model mo{ChenHolm{gamma, alpha1, c0}};
        validate_model(mo.m);
        return mo;
    }, py::arg("gamma"), py::arg("alpha1"), py::arg("c0"));
    m.def("ksb", [](double gamma, double alpha0, double tau0, double c0) {
        Model mo{Ksb{gamma, alpha0, tau0, c0}};
        validate_model(mo.m);
        return mo;
    }, py::arg("gamma"), py::arg("alpha0"), py::arg("tau0"), py::arg("c0"));

    m.def("model_name", [](const Model& mo) { return model_name(mo.m); });
    m.def("eval_alpha_star", [](const Model& mo, double w) { return eval_alpha_star(mo.m, w); },
          py::arg("model"), py::arg("omega"));
    m.def("attenuation_law", [](const Model& mo, double w) { return attenuation_law(mo.m, w); },
          py::arg("model"), py::arg("omega"));
    m.def("eval_alpha_star_halfplane",
          [](const Model& mo, cplx z) { return eval_alpha_star_halfplane(mo.m, z); },
          py::arg("model"), py::arg("z"));
    m.def("expected_causality", [](const Model& mo) {
        return causality_str(expected_causality(mo.m));
    });
    m.def("kramers_kronig_residual",
          [](const Model& mo, const GridPair& g, bool taper) {
              return kramers_kronig_residual(mo.m, g, taper);
          },
          py::arg("model"), py::arg("grid"), py::arg("taper") = false);

    m.def("kernel", [](const Model& mo, double r, const GridPair& grid) {
        KernelSample ks = kernel_K(mo.m, r, grid);
        return py::make_tuple(ks.values.values, ks.imag_residue);
    }, py::arg("model"), py::arg("r"), py::arg("grid"),
       "Returns (values over t-grid, imaginary residue).");

    m.def("causality_report", [](const Model& mo, double r,
                                 const GridPair& grid, int guard) {
        const CausalityReport rep = causality_report(mo.m, r, grid, guard);
        py::dict d;
        d["law"] = model_name(mo.m);
        d["r"] = rep.r;
        d["guard"] = rep.guard;
        d["pre_arrival_fraction"] = rep.fraction;
        d["verdict"] = causality_str(rep.verdict);
        d["expected"] = causality_str(rep.expected);
        return d;
    }, py::arg("model"), py::arg("r"), py::arg("grid"), py::arg("guard") = 2);

    m.def("p0_ball", [](double R, double A, double R0, double c0, const GridPair& grid) {
        return p0_ball(BallPhantom{R, A}, DetectorGeometry{R0, c0}, grid).values;
    }, py::arg("R"), py::arg("A"), py::arg("R0"), py::arg("c0"), py::arg("grid"));
    m.def("p0_support", [](double R, double R0, double c0) {
        return p0_support(BallPhantom{R, 1.0}, DetectorGeometry{R0, c0});
    }, py::arg("R"), py::arg("R0"), py::arg("c0"));

    py::class_<PropagatorMatrix>(m, "PropagatorMatrix")
        .def_readonly("n_cols", &PropagatorMatrix::n_cols)
        .def_readonly("dt_prime", &PropagatorMatrix::dt_prime)
        .def("t_prime", &PropagatorMatrix::t_prime)
        .def("t_prime_samples", &PropagatorMatrix::t_prime_samples);
    m.def("build_matrix", [](const Model& mo, double c0, const GridPair& grid,
                             std::pair<double, double> support, int n_cols) {
        return build_matrix(mo.m, c0, grid, support,
                            n_cols > 0 ? std::optional<int>(n_cols) : std::nullopt);
    }, py::arg("model"), py::arg("c0"), py::arg("grid"), py::arg("support"),
       py::arg("n_cols") = 0);

    m.def("svd_analyze", [](const PropagatorMatrix& mat, double L) {
        const SvdReport rep = svd_analyze(mat, L);
        py::dict d;
        d["singular_values"] = rep.singular_values;
        d["n_cut"] = rep.n_cut;
        d["L"] = rep.L;
        d["rows"] = rep.rows;
        d["cols"] = rep.cols;
        d["model"] = rep.model;
        return d;
    }, py::arg("matrix"), py::arg("L") = 0.0);

    m.def("forward_apply", [](const PropagatorMatrix& mat, const std::vector<double>& p0) {
        const ForwardResult res = forward_apply(mat, p0);
        return py::make_tuple(res.spectrum.values, res.signal.values);
    }, py::arg("matrix"), py::arg("p0_cols"),
       "Returns (spectrum over omega-grid, signal over t-grid).");

    m.def("forward_invert", [](const PropagatorMatrix& mat, const std::vector<double>& p0,
                               int rank) {
        const ForwardResult fwd = forward_apply(mat, p0);
        const InvertResult inv = invert_truncated(
            mat, fwd.spectrum, rank > 0 ? std::optional<int>(rank) : std::nullopt);
        py::dict d;
        d["p0_reconstructed"] = inv.p0_cols;
        d["rank_used"] = inv.rank_used;
        d["residual_norm"] = inv.residual_norm;
        d["amplification"] = inv.amplification;
        return d;
    }, py::arg("matrix"), py::arg("p0_cols"), py::arg("rank") = 0);

    m.def("thread_budget", &thread_budget);
}
