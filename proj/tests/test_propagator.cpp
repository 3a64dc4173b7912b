#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "attenuo/greens.hpp"
#include "attenuo/phantom.hpp"
#include "attenuo/propagator.hpp"

using namespace attenuo;

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrt2Pi = 2.50662827463100050242;

double rel_l2(const std::vector<double>& a, const std::vector<double>& b) {
    double err = 0.0, norm = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        err += (a[i] - b[i]) * (a[i] - b[i]);
        norm += b[i] * b[i];
    }
    return std::sqrt(err / norm);
}
} // namespace

TEST_CASE("mhat entry formula and domain checks") {
    const AttenuationModel m = Ksb{1.66, 6.0, 1e-4, 0.15};
    const double c0 = 0.15;
    for (double w : {0.5, 10.0, -40.0}) {
        for (double tp : {0.0, 1.0, 10.0}) {
            const cplx as = eval_alpha_star(m, w);
            const cplx iw(0.0, w);
            const cplx want = iw * std::exp(-as * c0 * tp + iw * tp) /
                              ((-as * c0 + iw) * kSqrt2Pi);
            CHECK(std::abs(mhat_entry(m, c0, w, tp) - want) <= 1e-14 * std::abs(want));
        }
    }
    CHECK_THROWS_AS(mhat_entry(m, c0, 1.0, -0.1), DomainError);
    CHECK_THROWS_AS(mhat_entry(m, -1.0, 1.0, 0.1), DomainError);
}

TEST_CASE("omega = 0 rule follows the small-omega class") {
    // Superlinear: limit 1 / sqrt(2 pi)
    CHECK(std::abs(mhat_entry(AttenuationModel{PowerLaw{1.5, 0.0316}}, 1.0, 0.0, 1.0) -
                   cplx(1.0 / kSqrt2Pi, 0.0)) <= 1e-15);
    // Sublinear: limit 0
    CHECK(mhat_entry(AttenuationModel{PowerLaw{0.5, 0.1581}}, 1.0, 0.0, 1.0) ==
          cplx(0.0, 0.0));
    // Linear (Ksb): alpha* ~ (alpha0 / c0)(-i w), so the limit is
    // 1 / ((1 + alpha0) sqrt(2 pi)); the neighbor average must land close.
    const double a0 = 6.0;
    const cplx got = mhat_entry(AttenuationModel{Ksb{1.66, a0, 1e-4, 0.15}}, 0.15, 0.0, 2.0);
    const double want = 1.0 / ((1.0 + a0) * kSqrt2Pi);
    CHECK(std::abs(got - cplx(want, 0.0)) <= 1e-3 * want);
}

TEST_CASE("mhat at t' = 0 equals F^(., infinity) / c0") {
    // Fhat(w, r') = int_0^{r'} F{dK/dt(r'', . - r''/c0)} dr''
    //             = (-i w / sqrt(2 pi)) (1 - e^{-(a* - i w / c0) r'}) / (a* - i w / c0),
    // whose r' -> infinity limit is (-i w) / (sqrt(2 pi) (a* - i w / c0)).
    for (const AttenuationModel& m :
         {AttenuationModel{Ksb{1.66, 6.0, 1e-4, 0.15}},
          AttenuationModel{Nsw{1.0, 1.0, {{0.2, 0.1}, {0.1, 0.05}}}},
          AttenuationModel{PowerLaw{0.5, 0.1581}}}) {
        CAPTURE(model_name(m));
        const double c0 = std::holds_alternative<Ksb>(m) ? 0.15 : 1.0;
        for (double w : {0.25, 3.0, 40.0, -7.5}) {
            const cplx as = eval_alpha_star(m, w);
            const cplx f_inf = cplx(0.0, -w) / (kSqrt2Pi * (as - cplx(0.0, w) / c0));
            const cplx lhs = mhat_entry(m, c0, w, 0.0);
            CHECK(std::abs(lhs - f_inf / c0) <= 1e-14 * std::abs(lhs));
        }
    }
}

TEST_CASE("m_time_kernel of the causal KSB law sits at t >= t'") {
    // KSB's linear dispersion term delays the bulk to (1 + alpha0) t'; pick a
    // time window long enough that the delayed kernel does not wrap around.
    // The omega = 0 neighbor average also leaves an O(delta_omega^2) DC floor
    // when (1 + alpha0) t' delta_omega is not small, so refine the grid too.
    const GridPair g = make_grids(16384, 80.0);
    const AttenuationModel m = Ksb{1.5, 6.0, 1e-4, 1.0};
    for (double tp : {0.0, 1.0, 5.0}) {
        const SampledSignal sig = m_time_kernel(m, 1.0, tp, g);
        double pre = 0.0, total = 0.0;
        for (int k = 0; k < g.n; ++k) {
            const double e = sig.values[k] * sig.values[k];
            total += e;
            if (g.t_signed(k) < tp - 2.0 * g.delta_t) pre += e;
        }
        CAPTURE(tp);
        CHECK(pre / total <= 1e-3);
    }
}

TEST_CASE("build_matrix geometry, weights, and determinism across thread budgets") {
    const AttenuationModel m = Ksb{1.66, 6.0, 1e-4, 0.15};
    const GridPair g = paper_grid();
    const std::pair<double, double> support{2.0 / 0.15, 4.0 / 0.15};

    setenv("ATTENUO_THREADS", "1", 1);
    CHECK(thread_budget() == 1);
    const PropagatorMatrix serial = build_matrix(m, 0.15, g, support);
    setenv("ATTENUO_THREADS", "4", 1);
    const PropagatorMatrix parallel = build_matrix(m, 0.15, g, support);
    unsetenv("ATTENUO_THREADS");

    CHECK(serial.n_cols == parallel.n_cols);
    CHECK(serial.n_cols ==
          std::max(2, static_cast<int>(std::lround((support.second - support.first) / g.delta_t))));
    CHECK(serial.dt_prime ==
          doctest::Approx((support.second - support.first) / serial.n_cols));
    CHECK(serial.t_prime(0) == doctest::Approx(support.first + 0.5 * serial.dt_prime));
    for (int j = 0; j < serial.n_cols; ++j)
        for (int i = 0; i < g.n; ++i)
            CHECK(serial.entries(i, j) == parallel.entries(i, j));  // bitwise identical
    // entry = mhat * dt'
    const cplx want = mhat_entry(m, 0.15, g.omega(100), serial.t_prime(3)) * serial.dt_prime;
    CHECK(std::abs(serial.entries(100, 3) - want) <= 1e-14 * std::abs(want));

    CHECK_THROWS_AS(build_matrix(m, 0.15, g, {3.0, 2.0}), DomainError);
    CHECK_THROWS_AS(build_matrix(m, 0.15, g, {-1.0, 2.0}), DomainError);
    CHECK_THROWS_AS(build_matrix(m, 0.15, g, {2.0, 3.0}, 1), DomainError);
}

TEST_CASE("forward_apply equals the per-column time-domain superposition") {
    const AttenuationModel m = Ksb{1.66, 6.0, 1e-4, 0.15};
    const GridPair g = paper_grid();
    const BallPhantom ball{1.0, 1.0};
    const DetectorGeometry det{3.0, 0.15};
    const PropagatorMatrix mat = build_matrix(m, 0.15, g, p0_support(ball, det),
                                              40 /* keep the double loop cheap */);
    std::vector<double> p0(mat.n_cols);
    for (int j = 0; j < mat.n_cols; ++j) p0[j] = p0_ball_value(ball, det, mat.t_prime(j));
    const ForwardResult fwd = forward_apply(mat, p0);

    // Direct quadrature: p_att(t) = sum_j M(t, t'_j) p0(t'_j) dt' with each
    // column's time kernel obtained independently.
    std::vector<double> direct(g.n, 0.0);
    for (int j = 0; j < mat.n_cols; ++j) {
        const SampledSignal col = m_time_kernel(m, 0.15, mat.t_prime(j), g);
        for (int k = 0; k < g.n; ++k)
            direct[k] += col.values[k] * p0[j] * mat.dt_prime;
    }
    CHECK(rel_l2(fwd.signal.values, direct) <= 1e-3);
    CHECK_THROWS_AS(forward_apply(mat, std::vector<double>(3, 0.0)), DomainError);
}

TEST_CASE("svd_analyze counts singular values above the 1e-3 cutoff") {
    PropagatorMatrix mat;
    mat.model = PowerLaw{0.5, 0.1};
    mat.c0 = 1.0;
    mat.grid = make_grids(8, 10.0);
    mat.t_min = 0.0; mat.t_max = 1.0; mat.n_cols = 3; mat.dt_prime = 1.0 / 3.0;
    mat.entries = Eigen::MatrixXcd::Zero(8, 3);
    mat.entries(0, 0) = 1.0;
    mat.entries(1, 1) = 0.5;
    mat.entries(2, 2) = 1e-5;
    const SvdReport rep = svd_analyze(mat, 2.0);
    CHECK(rep.n_cut == 2);
    CHECK(rep.singular_values.size() == 3);
    CHECK(rep.singular_values[0] == doctest::Approx(1.0));
    CHECK(rep.L == 2.0);
    CHECK(rep.rows == 8);
    CHECK(rep.cols == 3);
}

TEST_CASE("truncated inversion recovers p0 in the well-conditioned regime") {
    // Zero-attenuation stub: the propagator is a pure Fourier phase matrix and
    // the full pipeline must round-trip the N-wave.
    const AttenuationModel stub = PowerLaw{0.5, 1e-30};
    const GridPair g = paper_grid();
    const BallPhantom ball{1.0, 1.0};
    const DetectorGeometry det{2.0, 1.0};
    const PropagatorMatrix mat = build_matrix(stub, 1.0, g, p0_support(ball, det));
    std::vector<double> p0(mat.n_cols);
    for (int j = 0; j < mat.n_cols; ++j) p0[j] = p0_ball_value(ball, det, mat.t_prime(j));
    const ForwardResult fwd = forward_apply(mat, p0);
    const InvertResult inv = invert_truncated(mat, fwd.spectrum);
    CHECK(rel_l2(inv.p0_cols, p0) <= 1e-3);
    CHECK(inv.rank_used >= 1);
    CHECK(inv.amplification >= 1.0);

    CHECK_THROWS_AS(invert_truncated(mat, fwd.spectrum, 0), DomainError);
    CHECK_THROWS_AS(invert_truncated(mat, fwd.spectrum, mat.n_cols + 1), DomainError);
}

TEST_CASE("thread_budget respects ATTENUO_THREADS") {
    setenv("ATTENUO_THREADS", "2", 1);
    CHECK(thread_budget() <= 2);
    CHECK(thread_budget() >= 1);
    setenv("ATTENUO_THREADS", "garbage", 1);
    CHECK(thread_budget() >= 1);  // falls back to hardware
    unsetenv("ATTENUO_THREADS");
    CHECK(thread_budget() >= 1);
}
