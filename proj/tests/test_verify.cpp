#include <gtest/gtest.h>

#include <vector>

#include "hirota/oracles.hpp"
#include "hirota/verify.hpp"

using namespace hirota;

namespace {

constexpr double kEps = 0.01;

template <typename Fn>
std::pair<ComplexField, ComplexField> fields(const GridSpec& g, Fn&& fn) {
    ComplexField u(g), v(g);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.nt; ++j) std::tie(u(i, j), v(i, j)) = fn(g.x(i), g.t(j));
    return {u, v};
}

template <typename Fn>
ConvergenceStudy pde_study(Fn&& fn, double h0 = 0.05) {
    return refinement_study(
        [&](double h) {
            const auto [u, v] = fields(centred_grid(0.0, 0.0, 1.0, 0.5, h), fn);
            return pde_residual(u, v, kEps);
        },
        h0);
}

template <typename Fn>
ConvergenceStudy zc_study(Fn&& fn, double h0 = 0.05) {
    return refinement_study(
        [&](double h) {
            const auto [u, v] = fields(centred_grid(0.0, 0.0, 1.0, 0.5, h), fn);
            return zero_curvature_residual(u, v, kEps, {0.05, 0.1});
        },
        h0);
}

} // namespace

TEST(PdeResidual, SeedConverges) {
    const SeedParams p{1, 0.7, kEps, 0, {}};
    const ConvergenceStudy st = pde_study([&](double x, double t) { return seed_potentials(p, x, t); });
    EXPECT_GE(st.order(), 1.8);
    EXPECT_LE(st.reports.back().max_abs, 1e-3);
}

TEST(PdeResidual, PerturbedAmplitudeDoesNotConverge) {
    const SeedParams p{1, 0.7, kEps, 0, {}};
    const ConvergenceStudy st = pde_study([&](double x, double t) {
        auto [u, v] = seed_potentials(p, x, t);
        return std::pair{1.01 * u, v};
    });
    EXPECT_LT(st.order(), 0.5);
    EXPECT_GT(st.reports.back().max_abs, 1e-3);
}

TEST(ZeroCurvature, OracleConvergesMixedDoesNot) {
    const ConvergenceStudy good = zc_study([](double x, double t) { return oracles::first_order(1, 1, kEps, 1, x, t); });
    EXPECT_GE(good.order(), 1.8);
    const ConvergenceStudy mixed = zc_study([](double x, double t) {
        return std::pair{oracles::first_order(1, 1, kEps, 1, x, t).first, oracles::first_order(1, 1, kEps, 0, x, t).second};
    });
    EXPECT_LT(mixed.order(), 0.5);
    EXPECT_GT(mixed.reports.back().max_abs, 1e-2);
}

TEST(Residuals, GridTooSmall) {
    const GridSpec g{0, 1, 6, 0, 1, 3};
    ComplexField u(g), v(g);
    EXPECT_THROW(pde_residual(u, v, kEps), GridError);
    EXPECT_THROW(zero_curvature_residual(u, v, kEps, {0, 1}), GridError);
    const GridSpec g2{0, 1, 7, 0, 2, 3};
    EXPECT_THROW(pde_residual(ComplexField(g), ComplexField(g2), kEps), GridError);
    EXPECT_NO_THROW(pde_residual(ComplexField(g2), ComplexField(g2), kEps));
}

TEST(Richardson, Slopes) {
    EXPECT_DOUBLE_EQ(richardson_slope(4.0, 1.0), 2.0);
    EXPECT_EQ(richardson_slope(1.0, 0.0), 0.0);
    EXPECT_THROW(refinement_study([](double) { return ResidualReport{}; }, 0.1, 1), InvalidParams);
    const ConvergenceStudy st = refinement_study(
        [](double h) {
            ResidualReport r;
            r.max_abs = h * h * h;
            return r;
        },
        0.1, 4);
    ASSERT_EQ(st.slopes.size(), 3u);
    EXPECT_NEAR(st.order(), 3.0, 1e-12);
}

TEST(LaxResidual, ArbitrationSelectsImaginaryReading) {
    for (const SeedParams& p : {SeedParams{1, 1, kEps, 1, {}}, SeedParams{1, 0, kEps, 10, {{1, 1}}}}) {
        const PhaseArbitration a = arbitrate_phase_reading(p);
        ASSERT_TRUE(a.selected.has_value());
        EXPECT_EQ(*a.selected, PhaseReading::imaginary);
        EXPECT_GE(a.order_imaginary, 1.8);
        EXPECT_LT(a.order_real, 1.8);
    }
}

TEST(LaxResidual, AlphaOnlyBranchIsAnEigenfunction) {
    SeedOptions opt;
    opt.branch = SeedBranch::alpha_only;
    const SeedParams p{1, 1, kEps, 1, {}};
    const ConvergenceStudy st = refinement_study(
        [&](double h) { return lax_ode_residual(p, 1e-2, centred_grid(0.3, 0.4, 0.5, 0.5, h), opt); }, 0.1);
    EXPECT_GE(st.order(), 1.8);
}

TEST(LaxResidual, WrongSpectralParameterDoesNotConverge) {
    const SeedParams p{1, 1, kEps, 1, {}};
    const ConvergenceStudy st = refinement_study(
        [&](double h) { return lax_ode_residual(p, 1e-2, centred_grid(0.3, 0.4, 0.5, 0.5, h), {}, 2.0); }, 0.1);
    EXPECT_LT(st.order(), 0.5);
    EXPECT_GT(st.reports.back().max_abs, 1e-2);
}

TEST(Peaks, FirstOrderRogueWave) {
    const GridSpec g{-5, 5, 101, -3, 3, 61};
    const RealField m = modulus(sample(g, [](double x, double t) { return oracles::first_order_rw(1, 0, kEps, x, t).first; }));
    const PeakSet s = peak_metrics(m, 2.0);
    ASSERT_EQ(s.size(), 1u);
    EXPECT_NEAR(s.peaks[0].height, 3.0, 1e-12);
    EXPECT_NEAR(s.peaks[0].x, 0.0, 1e-12);
    EXPECT_NEAR(s.peaks[0].t, 0.0, 1e-12);
}

TEST(Peaks, ConstantFieldHasNone) {
    RealField m(GridSpec{0, 1, 11, 0, 1, 11});
    for (auto& c : m.data()) c = 5.0;
    EXPECT_EQ(peak_metrics(m, 2.0).size(), 0u);
}

TEST(Peaks, OrderedAndDeduplicated) {
    const GridSpec g{-10, 10, 201, -5, 5, 101};
    RealField m(g);
    auto bump = [](double x, double t, double x0, double t0, double a) {
        return a * std::exp(-4.0 * ((x - x0) * (x - x0) + (t - t0) * (t - t0)));
    };
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.nt; ++j) {
            const double x = g.x(i), t = g.t(j);
            m(i, j) = 1.0 + bump(x, t, -4, 1, 2.0) + bump(x, t, 3, -2, 4.0) + bump(x, t, 3.5, -2, 0.5) + bump(x, t, 6, 3, 1.5);
        }
    const PeakSet s = peak_metrics(m, 2.0);
    ASSERT_EQ(s.size(), 3u);
    EXPECT_GT(s.peaks[0].height, s.peaks[1].height);
    EXPECT_GT(s.peaks[1].height, s.peaks[2].height);
    EXPECT_NEAR(s.peaks[0].x, 3.0, 0.15);
    EXPECT_NEAR(s.peaks[1].x, -4.0, 1e-9);
    EXPECT_NEAR(s.peaks[2].x, 6.0, 1e-9);
}

TEST(Soliton, SyntheticDarkDip) {
    std::vector<double> xs, ys;
    for (int k = 0; k <= 400; ++k) {
        const double x = -10.0 + 0.05 * k;
        xs.push_back(x);
        ys.push_back(1.0 - 0.5 / std::pow(std::cosh(x - 3.0), 2));
    }
    const SolitonMetrics s = locate_soliton(xs, ys, 1.0);
    EXPECT_EQ(s.kind, SolitonKind::dark);
    EXPECT_NEAR(s.depth, 0.5, 1e-3);
    EXPECT_NEAR(s.position, 3.0, 1e-3);
}

TEST(Soliton, VelocityFromTwoSlices) {
    std::vector<double> xs, a, b;
    for (int k = 0; k <= 400; ++k) {
        const double x = -10.0 + 0.05 * k;
        xs.push_back(x);
        a.push_back(1.0 + 0.8 / std::pow(std::cosh(x + 2.0), 2));
        b.push_back(1.0 + 0.8 / std::pow(std::cosh(x - 1.0), 2));
    }
    const auto [sa, sb] = soliton_metrics(xs, a, -1.0, b, 2.0, 1.0);
    EXPECT_EQ(sa.kind, SolitonKind::bright);
    EXPECT_NEAR(sa.velocity, 1.0, 1e-3);
    EXPECT_EQ(sa.velocity, sb.velocity);
    EXPECT_THROW(soliton_metrics(xs, a, 1.0, b, 1.0, 1.0), InvalidParams);
}

TEST(Soliton, PlaneWaveHasNone) {
    std::vector<double> xs, ys;
    for (int k = 0; k < 50; ++k) {
        xs.push_back(k * 0.1);
        ys.push_back(1.0);
    }
    try {
        (void)locate_soliton(xs, ys, 1.0);
        FAIL() << "expected an error";
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("no soliton found"), std::string::npos);
    }
}
