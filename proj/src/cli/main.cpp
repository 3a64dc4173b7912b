// attenuo: figure-ready data files and machine-readable reports for the
// attenuated photoacoustics experiments (kernels, law comparison, SVD
// ill-conditioning, forward/invert round trips).

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>

#include "attenuo/greens.hpp"
#include "attenuo/laws.hpp"
#include "attenuo/phantom.hpp"
#include "attenuo/propagator.hpp"
#include "attenuo/spectral.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace attenuo;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr const char* kSchemaVersion = "1";

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// All file writes go through a temp file plus rename so readers never observe
// partial output.
void atomic_write(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string());
        out << content;
    }
    fs::rename(tmp, path);
}

void write_csv(const fs::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns) {
    std::ostringstream out;
    for (size_t c = 0; c < header.size(); ++c)
        out << header[c] << (c + 1 < header.size() ? "," : "\n");
    const size_t rows = columns.empty() ? 0 : columns.front().size();
    for (size_t r = 0; r < rows; ++r)
        for (size_t c = 0; c < columns.size(); ++c)
            out << fmt17(columns[c][r]) << (c + 1 < columns.size() ? "," : "\n");
    atomic_write(path, out.str());
}

void write_json(const fs::path& path, json j) {
    j["schema_version"] = kSchemaVersion;
    atomic_write(path, j.dump(2) + "\n");
}

void write_plot_script(const fs::path& dir) {
    atomic_write(dir / "plot.py",
        "#!/usr/bin/env python3\n"
        "\"\"\"Plot every CSV in this directory: first column as x, the rest as y.\"\"\"\n"
        "import csv, glob, sys\n"
        "import matplotlib.pyplot as plt\n"
        "for name in sorted(glob.glob('*.csv')):\n"
        "    with open(name) as fh:\n"
        "        rows = list(csv.reader(fh))\n"
        "    head, data = rows[0], [[float(v) for v in r] for r in rows[1:]]\n"
        "    cols = list(zip(*data))\n"
        "    plt.figure()\n"
        "    for i in range(1, len(cols)):\n"
        "        plt.plot(cols[0], cols[i], label=head[i])\n"
        "    plt.xlabel(head[0]); plt.legend(); plt.title(name)\n"
        "    plt.savefig(name.replace('.csv', '.png'), dpi=120)\n");
}

std::string causality_str(Causality c) {
    switch (c) {
        case Causality::Causal: return "Causal";
        case Causality::NonCausal: return "NonCausal";
        default: return "Unknown";
    }
}

struct LawOptions {
    std::string law;
    double gamma = 0.5;
    double alpha0 = 0.1581;
    double alpha1 = 0.0;
    double tau0 = 1e-4;
    double c0 = 1.0;
    double omega0 = 1.0;
    double rho0 = 1.0;
    std::vector<double> nsw_tau{0.1, 0.05};
    std::vector<double> nsw_kappa{0.2, 0.1};
};

AttenuationModel resolve_law(const LawOptions& o) {
    if (o.law == "power_law") return PowerLaw{o.gamma, o.alpha0};
    if (o.law == "power_law_gamma1") return PowerLawGamma1{o.alpha0, o.omega0};
    if (o.law == "power_law_plus") return PowerLawPlus{o.gamma, o.alpha0, o.alpha1};
    if (o.law == "szabo") return Szabo{o.gamma, o.alpha0, o.c0};
    if (o.law == "thermo_viscous") return ThermoViscous{o.tau0, o.c0};
    if (o.law == "greenleaf_patch")
        return GreenleafPatch{static_cast<int>(std::lround(o.gamma)), o.alpha0, o.omega0};
    if (o.law == "ksb") return Ksb{o.gamma, o.alpha0, o.tau0, o.c0};
    if (o.law == "nsw") {
        if (o.nsw_tau.size() != o.nsw_kappa.size())
            throw DomainError("nsw: --nsw-tau and --nsw-kappa need equal lengths");
        Nsw m{o.c0, o.rho0, {}};
        for (size_t i = 0; i < o.nsw_tau.size(); ++i)
            m.relaxations.push_back({o.nsw_kappa[i], o.nsw_tau[i]});
        return m;
    }
    throw DomainError("unknown law: " + o.law);
}

// ---------------------------------------------------------------------------
// kernel
// ---------------------------------------------------------------------------

struct KernelConfig {
    LawOptions law;
    std::string preset;
    double r = 0.25;
    int n = 512;
    double omega_max = 80.0;
    int guard = 2;
    std::string out = ".";
    bool plot_script = false;
};

void apply_kernel_preset(KernelConfig& cfg) {
    // Figs. 1-2: power / Szabo law panels; Fig. 3: thermo-viscous and KSB.
    const std::vector<std::pair<double, double>> panels{
        {0.5, 0.1581}, {1.5, 0.0316}, {2.7, 0.0071}, {3.3, 0.0027}};
    auto& o = cfg.law;
    const std::string& p = cfg.preset;
    if (p.empty()) return;
    if (p.size() == 5 && (p.rfind("fig1", 0) == 0 || p.rfind("fig2", 0) == 0)) {
        const int idx = p[4] - 'a';
        if (idx < 0 || idx > 3) throw DomainError("unknown preset: " + p);
        o.law = (p[3] == '1') ? "power_law" : "szabo";
        o.gamma = panels[idx].first;
        o.alpha0 = panels[idx].second;
        o.c0 = 1.0;
    } else if (p == "fig3a") {
        o.law = "thermo_viscous";
        o.tau0 = 1e-5;
        o.c0 = 1.0;
    } else if (p == "fig3b") {
        // The figure caption's alpha_1 is Eq. (powlaw2)'s alpha_0.
        o.law = "ksb";
        o.gamma = 2.0;
        o.alpha0 = 1.0;
        o.tau0 = 1e-5;
        o.c0 = 1.0;
    } else {
        throw DomainError("unknown preset: " + p);
    }
    cfg.r = 0.25;
}

int run_kernel(const KernelConfig& cfg_in) {
    KernelConfig cfg = cfg_in;
    apply_kernel_preset(cfg);
    const AttenuationModel model = resolve_law(cfg.law);
    const GridPair grid = make_grids(cfg.n, cfg.omega_max);
    const KernelSample ks = kernel_K(model, cfg.r, grid);
    const CausalityReport rep = causality_report(model, cfg.r, grid, cfg.guard);

    std::vector<double> ts(grid.n);
    for (int k = 0; k < grid.n; ++k) ts[k] = grid.t_signed(k);
    // Emit in ascending signed time for plotting.
    std::vector<double> t_sorted, k_sorted;
    for (int k = grid.n / 2; k < grid.n; ++k) {
        t_sorted.push_back(ts[k]);
        k_sorted.push_back(ks.values.values[k]);
    }
    for (int k = 0; k < grid.n / 2; ++k) {
        t_sorted.push_back(ts[k]);
        k_sorted.push_back(ks.values.values[k]);
    }
    const fs::path dir(cfg.out);
    write_csv(dir / "kernel.csv", {"t", "K"}, {t_sorted, k_sorted});
    write_json(dir / "kernel_report.json", json{
        {"command", "kernel"},
        {"law", model_name(model)},
        {"preset", cfg.preset},
        {"r", cfg.r},
        {"grid", {{"n", grid.n}, {"omega_max", grid.omega_max}}},
        {"guard", cfg.guard},
        {"pre_arrival_fraction", rep.fraction},
        {"verdict", causality_str(rep.verdict)},
        {"expected", causality_str(rep.expected)},
    });
    if (cfg.plot_script) write_plot_script(dir);
    return 0;
}

// ---------------------------------------------------------------------------
// lawcompare
// ---------------------------------------------------------------------------

struct LawCompareConfig {
    std::string preset;
    double gamma = 1.5;
    double tau0 = 1e-6;
    double c0 = 1.0;
    double band_lo = 0.0, band_hi = 60.0;
    int samples = 601;
    std::string out = ".";
    bool plot_script = false;
};

int run_lawcompare(const LawCompareConfig& cfg_in) {
    LawCompareConfig cfg = cfg_in;
    if (cfg.preset == "fig4-liquid") cfg.tau0 = 1e-6;
    else if (cfg.preset == "fig4-gas") cfg.tau0 = 1e-4;
    else if (!cfg.preset.empty()) throw DomainError("unknown preset: " + cfg.preset);
    // Fig. (fig:comp): alpha0 := 2 c0 tau0 / |cos(pi gamma / 2)|, compared with
    // the power law |tau0 w|^gamma; c0 cancels in alpha_ksb / the asymptote.
    const double alpha0 = 2.0 * cfg.c0 * cfg.tau0 / std::abs(std::cos(kPi * cfg.gamma / 2.0));
    const Ksb ksb{cfg.gamma, alpha0, cfg.tau0, cfg.c0};
    std::vector<double> ws(cfg.samples), a_ksb(cfg.samples), a_pl(cfg.samples);
    for (int i = 0; i < cfg.samples; ++i) {
        const double w = cfg.band_lo + (cfg.band_hi - cfg.band_lo) * i / (cfg.samples - 1);
        ws[i] = w;
        a_ksb[i] = attenuation_law(AttenuationModel{ksb}, w);
        a_pl[i] = std::pow(std::abs(cfg.tau0 * w), cfg.gamma);
    }
    const fs::path dir(cfg.out);
    write_csv(dir / "lawcompare.csv", {"omega", "alpha_ksb", "alpha_pl"}, {ws, a_ksb, a_pl});
    write_json(dir / "lawcompare_report.json", json{
        {"command", "lawcompare"},
        {"preset", cfg.preset},
        {"gamma", cfg.gamma},
        {"alpha0", alpha0},
        {"tau0", cfg.tau0},
        {"band", {cfg.band_lo, cfg.band_hi}},
    });
    if (cfg.plot_script) write_plot_script(dir);
    return 0;
}

// ---------------------------------------------------------------------------
// svd / forward-invert shared setup
// ---------------------------------------------------------------------------

struct SvdConfig {
    LawOptions law;
    std::string preset;
    std::vector<double> L{0.0, 2.0, 4.0};
    double R = 1.0;
    int n = 512;
    double omega_max = 80.0;
    std::string out = ".";
    bool plot_script = false;
};

void apply_svd_preset(LawOptions& o, const std::string& preset) {
    if (preset.empty()) return;
    if (preset == "castor") {
        o.law = "ksb"; o.gamma = 1.66; o.alpha0 = 6.0; o.tau0 = 1e-4; o.c0 = 0.15;
    } else if (preset == "ex-gamma1.1") {
        o.law = "ksb"; o.gamma = 1.1; o.alpha0 = 6.0; o.tau0 = 1e-4; o.c0 = 0.15;
    } else if (preset == "ex-gamma2") {
        o.law = "ksb"; o.gamma = 2.0; o.alpha0 = 6.0; o.tau0 = 1e-4; o.c0 = 0.15;
    } else if (preset == "ex-powerlaw0.66") {
        // alpha* = 4e-2 (-i w)^0.66: the preset pins the complex coefficient, so
        // the attenuation-law coefficient is 4e-2 cos(0.33 pi).
        o.law = "power_law"; o.gamma = 0.66;
        o.alpha0 = 4e-2 * std::cos(kPi * 0.33); o.c0 = 0.15;
    } else {
        throw DomainError("unknown preset: " + preset);
    }
}

struct SvdRun {
    double L;
    PropagatorMatrix matrix;
    SvdReport report;
};

SvdRun run_one_L(const AttenuationModel& model, const LawOptions& law, double L,
                 double R, const GridPair& grid) {
    const BallPhantom ball{R, 1.0};
    const DetectorGeometry det{R + L, law.c0};
    const auto support = p0_support(ball, det);
    SvdRun run{L, build_matrix(model, law.c0, grid, support), {}};
    run.report = svd_analyze(run.matrix, L);
    return run;
}

int run_svd(const SvdConfig& cfg_in) {
    SvdConfig cfg = cfg_in;
    apply_svd_preset(cfg.law, cfg.preset);
    const AttenuationModel model = resolve_law(cfg.law);
    const GridPair grid = make_grids(cfg.n, cfg.omega_max);
    const fs::path dir(cfg.out);

    // Independent L values may run concurrently, capped by ATTENUO_THREADS.
    std::vector<std::future<SvdRun>> futures;
    const int budget = thread_budget();
    std::vector<SvdRun> runs;
    for (size_t i = 0; i < cfg.L.size(); ++i) {
        const auto policy = (budget > 1) ? std::launch::async : std::launch::deferred;
        futures.push_back(std::async(policy, run_one_L, model, cfg.law, cfg.L[i], cfg.R, grid));
    }
    for (auto& f : futures) runs.push_back(f.get());

    json summary{{"command", "svd"}, {"preset", cfg.preset}, {"law", model_name(model)},
                 {"R", cfg.R}, {"results", json::array()}};
    for (const auto& run : runs) {
        std::ostringstream tag;
        tag << "L" << run.L;
        std::vector<double> idx(run.report.singular_values.size());
        for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<double>(i + 1);
        write_csv(dir / ("sigma_" + tag.str() + ".csv"), {"index", "sigma"},
                  {idx, run.report.singular_values});
        // |F{M}| heat map, one row per omega sample.
        std::ostringstream hm;
        hm << "omega";
        for (int j = 0; j < run.matrix.n_cols; ++j) hm << ",t" << j;
        hm << "\n";
        for (int i = 0; i < grid.n; ++i) {
            hm << fmt17(grid.omega(i));
            for (int j = 0; j < run.matrix.n_cols; ++j)
                hm << "," << fmt17(std::abs(run.matrix.entries(i, j)));
            hm << "\n";
        }
        atomic_write(dir / ("mhat_abs_" + tag.str() + ".csv"), hm.str());
        summary["results"].push_back(json{{"L", run.L}, {"n_cut", run.report.n_cut},
                                          {"sigma_max", run.report.singular_values.front()},
                                          {"cols", run.report.cols}});
    }
    write_json(dir / "svd_report.json", summary);
    if (cfg.plot_script) write_plot_script(dir);
    return 0;
}

// ---------------------------------------------------------------------------
// forward-invert
// ---------------------------------------------------------------------------

struct ForwardInvertConfig {
    LawOptions law;
    std::string preset;
    double L = 0.0;
    double R = 1.0;
    int n = 512;
    double omega_max = 80.0;
    int rank = 0;  // 0: use n_cut
    bool zero_attenuation = false;
    std::string out = ".";
    bool plot_script = false;
};

int run_forward_invert(const ForwardInvertConfig& cfg_in) {
    ForwardInvertConfig cfg = cfg_in;
    apply_svd_preset(cfg.law, cfg.preset);
    AttenuationModel model = resolve_law(cfg.law);
    if (cfg.zero_attenuation) {
        // Degenerate stub: a power-law-plus with vanishing coefficients is not
        // constructible (alpha0 > 0), so emulate alpha* ~ 0 with a tiny alpha0.
        model = PowerLaw{0.5, 1e-30};
    }
    const GridPair grid = make_grids(cfg.n, cfg.omega_max);
    const BallPhantom ball{cfg.R, 1.0};
    const DetectorGeometry det{cfg.R + cfg.L, cfg.law.c0};
    const auto support = p0_support(ball, det);
    const PropagatorMatrix matrix = build_matrix(model, cfg.law.c0, grid, support);

    std::vector<double> p0_cols(matrix.n_cols);
    for (int j = 0; j < matrix.n_cols; ++j)
        p0_cols[j] = p0_ball_value(ball, det, matrix.t_prime(j));
    const ForwardResult fwd = forward_apply(matrix, p0_cols);
    const std::optional<int> rank =
        (cfg.rank > 0) ? std::optional<int>(cfg.rank) : std::nullopt;
    const InvertResult inv = invert_truncated(matrix, fwd.spectrum, rank);

    double err2 = 0.0, norm2 = 0.0;
    for (int j = 0; j < matrix.n_cols; ++j) {
        const double d = inv.p0_cols[j] - p0_cols[j];
        err2 += d * d;
        norm2 += p0_cols[j] * p0_cols[j];
    }
    const double round_trip = std::sqrt(err2 / norm2);

    const fs::path dir(cfg.out);
    write_csv(dir / "p0.csv", {"t", "p0"}, {matrix.t_prime_samples(), p0_cols});
    write_csv(dir / "p_att.csv", {"t", "p_att"}, {grid.t_samples(), fwd.signal.values});
    write_csv(dir / "p0_reconstructed.csv", {"t", "p0_rec"},
              {matrix.t_prime_samples(), inv.p0_cols});
    write_json(dir / "forward_invert_report.json", json{
        {"command", "forward-invert"},
        {"preset", cfg.preset},
        {"law", model_name(model)},
        {"L", cfg.L},
        {"round_trip_rel_l2", round_trip},
        {"rank_used", inv.rank_used},
        {"sigma_ratio", inv.amplification},
        {"residual_norm", inv.residual_norm},
    });
    if (cfg.plot_script) write_plot_script(dir);
    return 0;
}

void add_law_options(CLI::App* cmd, LawOptions& o) {
    cmd->add_option("--law", o.law,
                    "power_law|power_law_gamma1|power_law_plus|szabo|thermo_viscous|"
                    "nsw|greenleaf_patch|ksb");
    cmd->add_option("--gamma", o.gamma);
    cmd->add_option("--alpha0", o.alpha0);
    cmd->add_option("--alpha1", o.alpha1);
    cmd->add_option("--tau0", o.tau0);
    cmd->add_option("--c0", o.c0);
    cmd->add_option("--omega0", o.omega0);
    cmd->add_option("--rho0", o.rho0);
    cmd->add_option("--nsw-tau", o.nsw_tau)->delimiter(',');
    cmd->add_option("--nsw-kappa", o.nsw_kappa)->delimiter(',');
}

std::pair<int, double> parse_grid_opt(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) throw DomainError("--grid expects n,omega_max");
    return {std::stoi(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"attenuated photoacoustics experiments"};
    app.require_subcommand(1);

    KernelConfig kc;
    std::string kernel_grid;
    auto* kernel = app.add_subcommand("kernel", "attenuation kernel K(r, .)");
    kernel->add_option("--preset", kc.preset, "fig1a..fig1d, fig2a..fig2d, fig3a, fig3b");
    add_law_options(kernel, kc.law);
    kernel->add_option("--r", kc.r);
    kernel->add_option("--guard", kc.guard);
    kernel->add_option("--grid", kernel_grid, "n,omega_max");
    kernel->add_option("--out", kc.out);
    kernel->add_flag("--plot-script", kc.plot_script);

    LawCompareConfig lc;
    auto* lawcompare = app.add_subcommand("lawcompare", "KSB vs power law");
    lawcompare->add_option("--preset", lc.preset, "fig4-liquid, fig4-gas");
    lawcompare->add_option("--gamma", lc.gamma);
    lawcompare->add_option("--tau0", lc.tau0);
    lawcompare->add_option("--c0", lc.c0);
    lawcompare->add_option("--band-lo", lc.band_lo);
    lawcompare->add_option("--band-hi", lc.band_hi);
    lawcompare->add_option("--samples", lc.samples);
    lawcompare->add_option("--out", lc.out);
    lawcompare->add_flag("--plot-script", lc.plot_script);

    SvdConfig sc;
    std::string svd_grid;
    auto* svd = app.add_subcommand("svd", "singular value analysis of F{M}");
    svd->add_option("--preset", sc.preset, "castor, ex-gamma1.1, ex-gamma2, ex-powerlaw0.66");
    add_law_options(svd, sc.law);
    svd->add_option("--L", sc.L, "detector distances, cm")->delimiter(',');
    svd->add_option("--R", sc.R);
    svd->add_option("--grid", svd_grid, "n,omega_max");
    svd->add_option("--out", sc.out);
    svd->add_flag("--plot-script", sc.plot_script);

    ForwardInvertConfig fc;
    std::string fi_grid;
    auto* fi = app.add_subcommand("forward-invert", "p0 -> p_att -> truncated-SVD p0");
    fi->add_option("--preset", fc.preset, "castor, ex-gamma1.1, ex-gamma2, ex-powerlaw0.66");
    add_law_options(fi, fc.law);
    fi->add_option("--L", fc.L);
    fi->add_option("--R", fc.R);
    fi->add_option("--rank", fc.rank);
    fi->add_flag("--zero-attenuation", fc.zero_attenuation);
    fi->add_option("--grid", fi_grid, "n,omega_max");
    fi->add_option("--out", fc.out);
    fi->add_flag("--plot-script", fc.plot_script);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return (app.exit(e) == 0) ? 0 : 2;
    }

    try {
        if (!kernel_grid.empty()) std::tie(kc.n, kc.omega_max) = parse_grid_opt(kernel_grid);
        if (!svd_grid.empty()) std::tie(sc.n, sc.omega_max) = parse_grid_opt(svd_grid);
        if (!fi_grid.empty()) std::tie(fc.n, fc.omega_max) = parse_grid_opt(fi_grid);
        if (kernel->parsed()) return run_kernel(kc);
        if (lawcompare->parsed()) return run_lawcompare(lc);
        if (svd->parsed()) return run_svd(sc);
        if (fi->parsed()) return run_forward_invert(fc);
    } catch (const DomainError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const ConvergenceError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
