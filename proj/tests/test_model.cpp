#include <gtest/gtest.h>

#include "hirota/model.hpp"
#include "hirota/verify.hpp"

using namespace hirota;

namespace {

constexpr double kEps = 0.01;

double vec_dev(const CVec3& a, const CVec3& b) { return norm(a - b); }

CVec3 coeff0(const JetVec3& j) { return CVec3{{j[0].coeff(0), j[1].coeff(0), j[2].coeff(0)}}; }

} // namespace

TEST(SeedParams, Validation) {
    EXPECT_NO_THROW((SeedParams{1, 0, kEps, 0, {}}.validate()));
    EXPECT_THROW((SeedParams{0, 0, kEps, 0, {}}.validate()), InvalidParams);
    EXPECT_THROW((SeedParams{1, 0, 0.0, 0, {}}.validate()), InvalidParams);
    EXPECT_THROW((SeedParams{1, NAN, kEps, 0, {}}.validate()), InvalidParams);
}

TEST(SeedPotentials, Examples) {
    const auto [u, v] = seed_potentials({1, 0, kEps, 0, {}}, 3.0, 0.0);
    EXPECT_EQ(u, Complex(1));
    EXPECT_EQ(v, Complex(0));
    const SeedParams p{1, 1.5, kEps, 0, {}};
    for (double t : {-2.0, 0.3, 7.0}) {
        const auto [a, b] = seed_potentials(p, 0.0, t);
        EXPECT_NEAR(std::abs(a - std::polar(1.0, 13.0 / 4.0 * t)), 0.0, 1e-15);
        EXPECT_NEAR(std::abs(b) - 1.5, 0.0, 1e-15);
        EXPECT_NEAR(std::abs(a) - 1.0, 0.0, 1e-15);
    }
}

TEST(Zeta1, Examples) {
    EXPECT_NEAR(std::abs(zeta1({1, 0, kEps, 0, {}}) - Complex(0, 0.08)), 0.0, 1e-17);
    EXPECT_NEAR(std::abs(zeta1({1, 1, kEps, 0, {}}) - Complex(0, 0.08 * std::sqrt(2.0))), 0.0, 1e-17);
    EXPECT_EQ(zeta1({2, 3, kEps, 0, {}}).real(), 0.0);
    EXPECT_NE(zeta1({2, 3, kEps, 0, {}}).imag(), 0.0);
}

TEST(LaxU, Entries) {
    const Complex zeta{0.3, -0.2};
    const CMat3 U0 = CMat3::diag(-2.0 * kI, kI, kI) / Complex(12.0 * kEps);
    EXPECT_LE(norm_max(lax_U(0.0, 0.0, zeta, kEps) - zeta * U0), 1e-14);
    EXPECT_NEAR(std::abs(lax_U(0.0, 0.0, 1.0, kEps)(0, 0) - Complex(0, -1.0 / (6.0 * kEps))), 0.0, 1e-12);
    const Complex u{0.4, 0.7}, v{-1.1, 0.2};
    const CMat3 U = lax_U(u, v, zeta, kEps);
    EXPECT_EQ(U(1, 0), std::conj(u));
    EXPECT_EQ(U(2, 0), std::conj(v));
    EXPECT_EQ(U(0, 1), -u);
    EXPECT_EQ(U(0, 2), -v);
    EXPECT_EQ(U(1, 2), Complex(0));
}

TEST(LaxV, ZeroFields) {
    const Complex zeta{0.3, -0.2};
    const CMat3 U0 = CMat3::diag(-2.0 * kI, kI, kI) / Complex(12.0 * kEps);
    const CMat3 expect = zeta * zeta * zeta * U0 / Complex(16.0 * kEps) + zeta * zeta * U0 / Complex(8.0 * kEps);
    EXPECT_LE(norm_max(lax_V(LaxInput{}, zeta, kEps) - expect), 1e-9);
}

TEST(LaxV, PlaneWaveSeedAuxiliaries) {
    // With u_x = 0: e1 = e2 = e5 = 0, e3 = 2 e u, e4 = 2 e v; V3 reduces accordingly.
    const SeedParams p{1.0, 1.5, kEps, 0, {}};
    const LaxInput li = seed_lax_input(p, 0.0, 0.4);
    const double e = p.background2();
    const CMat3 V = lax_V(li, 0.0, kEps);
    EXPECT_NEAR(std::abs(V(0, 0) - Complex(0, 0.5 * e)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(V(0, 1) - kEps * 2.0 * e * li.u), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(V(0, 2) - kEps * 2.0 * e * li.v), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(V(1, 0) + kEps * std::conj(2.0 * e * li.u)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(V(1, 2) + 0.5 * kI * li.v * std::conj(li.u)), 0.0, 1e-14);
}

TEST(LaxV, V3CrossEntry) {
    const LaxInput li{{0.3, 0.1}, {-0.2, 0.5}, {0.7, -0.4}, {0.1, 0.9}, {1.0, 0.2}, {-0.3, 0.6}};
    const Complex e5 = std::conj(li.u) * li.vx - li.v * std::conj(li.ux);
    const CMat3 V = lax_V(li, 0.0, kEps);
    EXPECT_NEAR(std::abs(V(1, 2) - (kEps * e5 - 0.5 * kI * li.v * std::conj(li.u))), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(V(2, 1) - (-kEps * std::conj(e5) - 0.5 * kI * li.u * std::conj(li.v))), 0.0, 1e-15);
}

TEST(Phi0ClosedForm, OriginFixture) {
    const CVec3 r = phi0_closed_form({1, 0, kEps, 0, {}}, 0.0, 0.0);
    EXPECT_NEAR(std::abs(r[0] - 2.5 * Complex(-1, 1)), 0.0, 1e-13);
    EXPECT_NEAR(std::abs(r[1] + 2.5 * Complex(-1, 1)), 0.0, 1e-13);
    EXPECT_EQ(r[2], Complex(0));
}

TEST(Phi0ClosedForm, AlphaEntersWithOppositeSigns) {
    const SeedParams p0{0.8, 1.3, kEps, 0, {}};
    SeedParams p1 = p0;
    p1.alpha = 1.0;
    const double x = 0.7, t = -0.4;
    const CVec3 d = phi0_closed_form(p1, x, t) - phi0_closed_form(p0, x, t);
    EXPECT_EQ(d[0], Complex(0));
    EXPECT_NEAR(std::abs(d[1] / d[2] + p0.d2 / p0.d1), 0.0, 1e-14);
}

TEST(Phi0ClosedForm, SatisfiesLaxPairAtZeta1) {
    const SeedParams p{1.0, 0.5, kEps, 0.3, {}};
    auto resid = [&](double h) {
        const double x = 0.2, t = 0.3;
        const CVec3 phi = phi0_closed_form(p, x, t);
        const auto [u, v] = seed_potentials(p, x, t);
        const CVec3 px = (1.0 / (2 * h)) * (phi0_closed_form(p, x + h, t) - phi0_closed_form(p, x - h, t));
        const CVec3 pt = (1.0 / (2 * h)) * (phi0_closed_form(p, x, t + h) - phi0_closed_form(p, x, t - h));
        return std::max(norm(px - lax_U(u, v, zeta1(p), kEps) * phi),
                        norm(pt - lax_V(seed_lax_input(p, x, t), zeta1(p), kEps) * phi));
    };
    const double r1 = resid(0.02), r2 = resid(0.01);
    EXPECT_GT(std::log2(r1 / r2), 1.9);
}

TEST(SpectralSeedJet, ZerothCoefficientMatchesClosedFormUpToOneConstant) {
    for (double alpha : {0.0, 1.0}) {
        const SeedParams p{1.0, 1.5, kEps, alpha, {{2.0, -1.0}}};
        SeedOptions opt;
        opt.normalize = false;
        std::optional<Complex> c;
        for (double x : {-2.0, -1.0, 0.0, 1.0, 2.0})
            for (double t : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
                const CVec3 a = coeff0(spectral_seed_jet(p, x, t, 8, opt));
                const CVec3 b = phi0_closed_form(p, x, t);
                if (!c) c = a[0] / b[0];
                EXPECT_LE(vec_dev(a, *c * b), 1e-8 * norm(a)) << "alpha=" << alpha << " x=" << x << " t=" << t;
            }
    }
}

TEST(SpectralSeedJet, ProportionalComponentsWithoutAlpha) {
    const SeedParams p{0.6, 1.7, kEps, 0.0, {}};
    const JetVec3 j = spectral_seed_jet(p, 0.4, -0.3, 12);
    for (int k = 0; k <= 8; ++k)
        EXPECT_NEAR(std::abs(j[1].coeff(k) * p.d2 - j[2].coeff(k) * p.d1), 0.0, 1e-12 * j[1].max_abs()) << k;
}

TEST(SpectralSeedJet, EvenInF) {
    for (const SeedParams& p : {SeedParams{1, 0, kEps, 10, {}}, SeedParams{1, 1, kEps, 1, {{10, 0}}},
                                SeedParams{1, 1.5, kEps, 0, {{0, 10}, {3, 4}}}}) {
        for (double x : {-4.0, -2.0, 0.0, 2.0, 4.0})
            for (double t : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
                const JetVec3 j = spectral_seed_jet(p, x, t, 16);
                double odd = 0, even = 0;
                for (std::size_t i = 0; i < 3; ++i)
                    for (int k = 0; k <= 12; ++k) (k % 2 ? odd : even) = std::max(k % 2 ? odd : even, std::abs(j[i].coeff(k)));
                EXPECT_LE(odd, 1e-10 * even) << "x=" << x << " t=" << t;
                for (std::size_t i = 0; i < 3; ++i) EXPECT_GE(j[i].valuation(), 0);
            }
    }
}

TEST(SpectralSeedJet, AdditiveShiftBreaksEvenness) {
    SeedOptions opt;
    opt.placement = ShiftPlacement::additive;
    const SeedParams with_shift{1, 1.5, kEps, 0, {{10, 0}}};
    const SeedParams no_shift{1, 1.5, kEps, 0, {}};
    auto ratio = [&](const SeedParams& p) {
        const JetVec3 j = spectral_seed_jet(p, 0.5, 0.5, 12, opt);
        double odd = 0, even = 0;
        for (std::size_t i = 0; i < 3; ++i)
            for (int k = 0; k <= 8; ++k) (k % 2 ? odd : even) = std::max(k % 2 ? odd : even, std::abs(j[i].coeff(k)));
        return odd / even;
    };
    EXPECT_LE(ratio(no_shift), 1e-10);
    EXPECT_GT(ratio(with_shift), 1e-3);
}

TEST(SpectralSeedJet, NormalizationIsACommonPositiveScale) {
    const SeedParams p{1, 1, kEps, 1.0, {{1, 1}}};
    SeedOptions raw;
    raw.normalize = false;
    const JetVec3 a = spectral_seed_jet(p, 3.0, 1.0, 10), b = spectral_seed_jet(p, 3.0, 1.0, 10, raw);
    const Complex c = a[0].coeff(0) / b[0].coeff(0);
    EXPECT_NEAR(c.imag(), 0.0, 1e-12 * std::abs(c));
    EXPECT_GT(c.real(), 0.0);
    for (std::size_t i = 0; i < 3; ++i)
        for (int k = 0; k <= 6; ++k) EXPECT_NEAR(std::abs(a[i].coeff(k) - c * b[i].coeff(k)), 0.0, 1e-12 * a[i].max_abs());
}

TEST(SpectralSeedJet, RejectsTinyTruncation) {
    EXPECT_THROW(spectral_seed_jet({1, 0, kEps, 0, {}}, 0, 0, 1), DegenerateExpansion);
}

TEST(SpectralSeedValue, AgreesWithJetSum) {
    const SeedParams p{1, 1, kEps, 0.5, {{2, 1}}};
    const double f = 0.05;
    SeedOptions raw;
    raw.normalize = false;
    const JetVec3 j = spectral_seed_jet(p, 0.3, 0.2, 20, raw);
    const CVec3 v = spectral_seed_value(p, 0.3, 0.2, f, raw);
    for (std::size_t i = 0; i < 3; ++i) {
        Complex s{};
        for (int k = 0; k <= 16; ++k) s += j[i].coeff(k) * std::pow(f, k);
        EXPECT_NEAR(std::abs(s - v[i]), 0.0, 1e-10 * norm(v));
    }
}
