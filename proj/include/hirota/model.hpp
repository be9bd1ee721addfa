#pragma once

// Plane-wave seed, Lax pair and the jet-valued spectral seed solution of the
// coupled Hirota equations
//
//   i u_t + u_xx/2 + (|u|^2+|v|^2) u + i eps [u_xxx + (6|u|^2+3|v|^2) u_x + 3 u v* v_x] = 0,
//   i v_t + v_xx/2 + (|u|^2+|v|^2) v + i eps [v_xxx + (6|v|^2+3|u|^2) v_x + 3 v u* u_x] = 0.

#include <cmath>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hirota/errors.hpp"
#include "hirota/numerics/complex.hpp"
#include "hirota/numerics/laurent_jet.hpp"
#include "hirota/numerics/mat3.hpp"

namespace hirota {

/// Shift parameter s_k = m_k + i n_k of the spectral seed.
struct Shift {
    double m = 0.0;
    double n = 0.0;
    Complex value() const noexcept { return {m, n}; }
    friend bool operator==(const Shift&, const Shift&) = default;
};

/// Free parameters selecting the localized-wave family.
struct SeedParams {
    double d1 = 1.0;
    double d2 = 0.0;
    double eps = 0.01;
    double alpha = 0.0;
    std::vector<Shift> s;

    double background2() const noexcept { return d1 * d1 + d2 * d2; }

    void validate() const {
        if (!std::isfinite(d1) || !std::isfinite(d2) || !std::isfinite(eps) || !std::isfinite(alpha))
            throw InvalidParams("seed parameters must be finite");
        if (!(background2() > 0.0)) throw InvalidParams("d1^2 + d2^2 must be positive");
        if (eps == 0.0) throw InvalidParams("eps must be nonzero");
        for (const auto& sk : s)
            if (!std::isfinite(sk.m) || !std::isfinite(sk.n)) throw InvalidParams("shift parameters must be finite");
    }

    friend bool operator==(const SeedParams&, const SeedParams&) = default;
};

/// Field values and x-derivatives at one point, as consumed by the t-part of the Lax pair.
struct LaxInput {
    Complex u, v;
    Complex ux, vx;
    Complex uxx, vxx;
};

/// How the gauge phase of the plane-wave seed enters the first component
/// versus the other two: exp(+-i theta/2) or exp(+-theta/2). Only the
/// imaginary reading produces an eigenfunction; the other is kept so the
/// Lax residual check can demonstrate that.
enum class PhaseReading { imaginary, real };

/// Where the shifts s_k enter the exponent of the seed.
///  - in_bracket: M2 = i/(128 eps^2) S (16 eps x + (zeta(zeta+2) - 32 eps^2 e) t - sum s_k f^2k),
///    which keeps the seed even in f;
///  - additive:   M2 = i/(128 eps^2) S (...) + sum s_k f^2k, which breaks evenness
///    whenever some s_k != 0.
enum class ShiftPlacement { in_bracket, additive };

std::string_view to_string(PhaseReading r) noexcept;
std::string_view to_string(ShiftPlacement p) noexcept;

inline std::string_view to_string(PhaseReading r) noexcept {
    return r == PhaseReading::imaginary ? "imaginary" : "real";
}
inline std::string_view to_string(ShiftPlacement p) noexcept {
    return p == ShiftPlacement::in_bracket ? "in_bracket" : "additive";
}

/// Which part of the seed to keep. `alpha_only` drops the C1/C2 terms and
/// leaves the exp(M3) column, itself a separate solution of the Lax pair.
enum class SeedBranch { full, alpha_only };

struct SeedOptions {
    PhaseReading reading = PhaseReading::imaginary;
    ShiftPlacement placement = ShiftPlacement::in_bracket;
    SeedBranch branch = SeedBranch::full;
    /// Divide all components by a common positive scale so that large |x|, |t|
    /// do not overflow. The Darboux update is invariant under it.
    bool normalize = true;
};

/// u0 = d1 e^{i theta}, v0 = d2 e^{i theta}, theta = (d1^2 + d2^2) t.
inline std::pair<Complex, Complex> seed_potentials(const SeedParams& p, double /*x*/, double t) {
    const Complex ph = std::polar(1.0, p.background2() * t);
    return {p.d1 * ph, p.d2 * ph};
}

/// The repeated spectral point 8 i eps sqrt(d1^2 + d2^2).
inline Complex zeta1(const SeedParams& p) { return Complex{0.0, 8.0 * p.eps * std::sqrt(p.background2())}; }

/// x-part of the Lax pair, U = zeta U0 + U1.
inline CMat3 lax_U(Complex u, Complex v, Complex zeta, double eps) {
    const Complex w = zeta / (12.0 * eps);
    CMat3 m;
    m(0, 0) = -2.0 * kI * w;
    m(1, 1) = kI * w;
    m(2, 2) = kI * w;
    m(0, 1) = -u;
    m(0, 2) = -v;
    m(1, 0) = std::conj(u);
    m(2, 0) = std::conj(v);
    return m;
}

/// t-part of the Lax pair, V = zeta^3 V0 + zeta^2 V1 + zeta V2 + V3.
inline CMat3 lax_V(const LaxInput& li, Complex zeta, double eps) {
    using std::conj;
    const Complex u = li.u, v = li.v, ux = li.ux, vx = li.vx;
    const double au2 = std::norm(u), av2 = std::norm(v);
    const double e = au2 + av2;
    const Complex e1 = u * conj(ux) - conj(u) * ux;
    const Complex e2 = v * conj(vx) - conj(v) * vx;
    const Complex e3 = li.uxx + 2.0 * e * u;
    const Complex e4 = li.vxx + 2.0 * e * v;
    const Complex e5 = conj(u) * vx - v * conj(ux);

    const CMat3 U0 = CMat3::diag(-2.0 * kI, kI, kI) / Complex(12.0 * eps);
    CMat3 U1;
    U1(0, 1) = -u;
    U1(0, 2) = -v;
    U1(1, 0) = conj(u);
    U1(2, 0) = conj(v);
    const CMat3 V0 = U0 / Complex(16.0 * eps);
    const CMat3 V1 = U0 / Complex(8.0 * eps) + U1 / Complex(16.0 * eps);

    CMat3 V2;
    V2(0, 0) = kI * e;
    V2(0, 1) = -u / (2.0 * eps) - kI * ux;
    V2(0, 2) = -v / (2.0 * eps) - kI * vx;
    V2(1, 0) = conj(u) / (2.0 * eps) - kI * conj(ux);
    V2(1, 1) = -kI * au2;
    V2(1, 2) = -kI * v * conj(u);
    V2(2, 0) = conj(v) / (2.0 * eps) - kI * conj(vx);
    V2(2, 1) = -kI * u * conj(v);
    V2(2, 2) = -kI * av2;
    V2 *= Complex(0.25);

    CMat3 V3;
    V3(0, 0) = eps * (e1 + e2) + 0.5 * kI * e;
    V3(0, 1) = eps * e3 - 0.5 * kI * ux;
    V3(0, 2) = eps * e4 - 0.5 * kI * vx;
    V3(1, 0) = -eps * conj(e3) - 0.5 * kI * conj(ux);
    V3(1, 1) = -eps * e1 - 0.5 * kI * au2;
    V3(1, 2) = eps * e5 - 0.5 * kI * v * conj(u);
    V3(2, 0) = -eps * conj(e4) - 0.5 * kI * conj(vx);
    V3(2, 1) = -eps * conj(e5) - 0.5 * kI * u * conj(v);
    V3(2, 2) = -eps * e2 - 0.5 * kI * av2;

    return zeta * zeta * zeta * V0 + zeta * zeta * V1 + zeta * V2 + V3;
}

/// Lax input of the plane-wave seed (u_x = u_xx = 0).
inline LaxInput seed_lax_input(const SeedParams& p, double x, double t) {
    const auto [u, v] = seed_potentials(p, x, t);
    return {u, v, {}, {}, {}, {}};
}

namespace detail {

// Shared assembly of the seed eigenfunction for scalar (Complex) or jet
// arithmetic. `shift` is sum s_k f^2k in the same arithmetic.
template <typename S>
Vec3<S> assemble_seed(const SeedParams& p, double x, double t, const S& zeta, const S& shift, const SeedOptions& opt,
                      S (*sqrt_fn)(const S&), S (*exp_fn)(const S&), Complex (*lead)(const S&)) {
    const double eps = p.eps;
    const double e = p.background2();
    const double r = std::sqrt(e);
    const double theta = e * t;

    const S root = sqrt_fn(zeta * zeta + Complex(64.0 * eps * eps * e));
    const S c1 = sqrt_fn(zeta - root) / root;
    const S c2 = sqrt_fn(zeta + root) / root;

    const S zz2 = zeta * (zeta + Complex(2.0));
    const S lin = Complex(16.0 * eps * x) + zz2 * Complex(t);
    const S m1 = zeta * lin * Complex(0.0, -1.0 / (384.0 * eps * eps));
    const S m3 = zeta * lin * Complex(0.0, 1.0 / (192.0 * eps * eps));
    S bracket = Complex(16.0 * eps * x) + (zz2 - Complex(32.0 * eps * eps * e)) * Complex(t);
    if (opt.placement == ShiftPlacement::in_bracket) bracket = bracket - shift;
    S m2 = root * bracket * Complex(0.0, 1.0 / (128.0 * eps * eps));
    if (opt.placement == ShiftPlacement::additive) m2 = m2 + shift;

    // Common real scale taken out of every exponential.
    double log_scale = 0.0;
    if (opt.normalize) {
        log_scale = lead(m1).real();
        if (p.alpha != 0.0) log_scale = std::max(log_scale, lead(m3).real());
    }
    const Complex shift_out{log_scale, 0.0};
    const S ep = exp_fn(m1 + m2 - shift_out);
    const S em = exp_fn(m1 - m2 - shift_out);

    const Complex half = opt.reading == PhaseReading::imaginary ? std::polar(1.0, 0.5 * theta) : Complex(std::exp(0.5 * theta));
    const Complex inv_half = 1.0 / half;

    const bool keep_c = opt.branch == SeedBranch::full;
    const S a = keep_c ? (c1 * ep - c2 * em) * half : zeta * Complex(0.0);
    const S b = keep_c ? (c2 * ep - c1 * em) * inv_half : zeta * Complex(0.0);
    S phi = b * Complex(p.d1 / r);
    S chi = b * Complex(p.d2 / r);
    if (p.alpha != 0.0) {
        const S e3 = exp_fn(m3 - shift_out);
        phi = phi + e3 * Complex(p.d2 * p.alpha);
        chi = chi - e3 * Complex(p.d1 * p.alpha);
    }
    return Vec3<S>{{a, phi, chi}};
}

inline Jet jet_sqrt(const Jet& a) { return sqrt(a); }
inline Jet jet_exp(const Jet& a) { return exp(a); }
inline Complex jet_lead0(const Jet& a) { return a.coeff(0); }
inline Complex c_sqrt(const Complex& a) { return std::sqrt(a); }
inline Complex c_exp(const Complex& a) { return std::exp(a); }
inline Complex c_lead(const Complex& a) { return a; }

} // namespace detail

/// Spectral seed Phi_1(f) with zeta = zeta1 (1 + f^2), as jets in f of order K.
/// Every component has non-negative valuation; odd coefficients vanish up to
/// roundoff when the shifts sit in the bracket.
inline JetVec3 spectral_seed_jet(const SeedParams& p, double x, double t, int K, const SeedOptions& opt = {}) {
    p.validate();
    if (K < 2) throw DegenerateExpansion("spectral seed needs truncation order K >= 2");
    const Jet f = Jet::variable(K);
    const Jet f2 = f * f;
    const Jet zeta = (f2 + Complex(1.0)) * zeta1(p);
    Jet shift(K);
    Jet fpow = f2;
    for (const auto& sk : p.s) {
        shift += fpow * sk.value();
        fpow = fpow * f2;
    }
    JetVec3 phi =
        detail::assemble_seed<Jet>(p, x, t, zeta, shift, opt, &detail::jet_sqrt, &detail::jet_exp, &detail::jet_lead0);
    for (std::size_t i = 0; i < 3; ++i)
        if (phi[i].valuation() < 0)
            throw DegenerateExpansion("spectral seed component kept a pole after cancellation");
    return phi;
}

/// The same eigenfunction evaluated in plain complex arithmetic at a fixed
/// expansion value f (zeta = zeta1 (1 + f^2)).
inline CVec3 spectral_seed_value(const SeedParams& p, double x, double t, double f, const SeedOptions& opt = {}) {
    p.validate();
    const Complex zeta = zeta1(p) * (1.0 + f * f);
    Complex shift{};
    double fp = f * f;
    for (const auto& sk : p.s) {
        shift += sk.value() * fp;
        fp *= f * f;
    }
    return detail::assemble_seed<Complex>(p, x, t, zeta, shift, opt, &detail::c_sqrt, &detail::c_exp, &detail::c_lead);
}

/// Seed eigenfunction at an arbitrary spectral parameter, with an explicit
/// complex shift in place of the f-series. Used by classical (distinct-zeta) chains.
inline CVec3 eigenfunction_at(const SeedParams& p, Complex zeta, double x, double t, Complex shift = {},
                              const SeedOptions& opt = {}) {
    p.validate();
    return detail::assemble_seed<Complex>(p, x, t, zeta, shift, opt, &detail::c_sqrt, &detail::c_exp, &detail::c_lead);
}

/// Closed-form zeroth expansion coefficient of the spectral seed. The phases
/// xi_1..3 have the form a x + (b i + c t-coefficient) t with t multiplying the
/// whole bracket.
inline CVec3 phi0_closed_form(const SeedParams& p, double x, double t) {
    p.validate();
    const double eps = p.eps;
    const double e = p.background2();
    const double r = std::sqrt(e);
    const double d1 = p.d1, d2 = p.d2;
    const Complex xi1{r * x / 3.0 - e * (4.0 / 3.0) * eps * r * t, e * (5.0 / 6.0) * t};
    const Complex xi2{r * x / 3.0 - e * (4.0 / 3.0) * eps * r * t, -e * (1.0 / 6.0) * t};
    const Complex xi3{-2.0 * r * x / 3.0 + e * (8.0 / 3.0) * eps * r * t, -e * (2.0 / 3.0) * t};
    const Complex poly_base = 2.0 * r * (x - 6.0 * eps * e * t) + 2.0 * kI * e * t;
    const Complex im1{-1.0, 1.0};
    const double se = std::sqrt(eps);
    CVec3 out;
    out[0] = im1 / (4.0 * se * std::pow(e, 0.25)) * (poly_base + 1.0) * std::exp(xi1);
    const Complex common = im1 / (4.0 * se * std::pow(e, 0.75)) * (poly_base - 1.0) * std::exp(xi2);
    out[1] = d1 * common + d2 * p.alpha * std::exp(xi3);
    out[2] = d2 * common - d1 * p.alpha * std::exp(xi3);
    return out;
}

} // namespace hirota
