#pragma once

// Generalized Darboux transformation at a repeated spectral point.
//
// The seed eigenfunction is expanded as Phi(g) = sum_k P_k g^k with
// zeta = zeta1 (1 + g), g = f^2. One step uses P_0 as the kernel vector,
// multiplies the series by T(zeta) = zeta I - H Lambda H^-1 and drops the
// vanishing g^0 coefficient:
//
//     Q_0 = T1 P_0 (= 0),   Q_k = zeta1 P_{k-1} + T1 P_k,   P <- (Q_1, Q_2, ...).

#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "hirota/errors.hpp"
#include "hirota/model.hpp"
#include "hirota/numerics/complex.hpp"
#include "hirota/numerics/mat3.hpp"

namespace hirota {

/// One Darboux step: the matrices built from the kernel vector and the
/// potentials it produces.
struct DarbouxStep {
    Complex zeta;
    CVec3 phi;
    CMat3 H;
    CMat3 Lambda;
    CMat3 A;  ///< H Lambda H^-1
    CMat3 T1; ///< zeta I - A, evaluated at the step's own spectral point
    Complex u_after;
    Complex v_after;
    double kernel_ratio = 0.0; ///< |T1 P_0| / |Q_1| (jet chains only)
    bool via_projector = false;
};

struct DTChain {
    std::vector<DarbouxStep> steps;
    int N = 0;
    SeedParams params;
    double x = 0.0;
    double t = 0.0;
};

/// Below this |phi_0| / |phi| the matrix H is too ill-conditioned to invert
/// and A is taken from the projector form instead.
inline constexpr double kProjectorSwitch = 1e-4;

/// H, Lambda, A and T1 for kernel vector `phi` at spectral point `zeta`.
///
/// det H = conj(phi_0) |phi|^2, so H is singular wherever phi_0 vanishes even
/// though A is not: the second and third columns of H span the orthogonal
/// complement of phi, which gives A = conj(zeta) I + (zeta - conj(zeta)) phi phi^+ / |phi|^2.
/// That form is used when |phi_0| / |phi| < kProjectorSwitch. Throws
/// SingularMatrix only when phi itself vanishes.
inline DarbouxStep darboux_matrix(const CVec3& phi, Complex zeta) {
    DarbouxStep s;
    s.zeta = zeta;
    s.phi = phi;
    const Complex a = phi[0], b = phi[1], c = phi[2];
    s.H(0, 0) = a;
    s.H(0, 1) = std::conj(b);
    s.H(0, 2) = std::conj(c);
    s.H(1, 0) = b;
    s.H(1, 1) = -std::conj(a);
    s.H(2, 0) = c;
    s.H(2, 2) = -std::conj(a);
    s.Lambda = CMat3::diag(zeta, std::conj(zeta), std::conj(zeta));
    const double n2 = norm2(phi);
    if (!(n2 > 0.0) || !std::isfinite(n2)) throw SingularMatrix("Darboux kernel vector vanishes or is not finite", 0.0);
    if (std::abs(a) >= kProjectorSwitch * std::sqrt(n2)) {
        s.A = s.H * s.Lambda * inverse(s.H);
    } else {
        s.via_projector = true;
        CMat3 P;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) P(i, j) = phi[i] * std::conj(phi[j]) / n2;
        s.A = std::conj(zeta) * CMat3::identity() + (zeta - std::conj(zeta)) * P;
    }
    s.T1 = zeta * CMat3::identity() - s.A;
    return s;
}

/// Potential update for one step with kernel vector `phi` at spectral point `zeta`.
inline std::pair<Complex, Complex> dt_update(Complex u, Complex v, const CVec3& phi, Complex zeta, double eps) {
    const double n2 = norm2(phi);
    if (!(n2 > 0.0) || !std::isfinite(n2)) throw DegenerateExpansion("Darboux kernel vector has zero or non-finite norm");
    const Complex k = kI * (zeta - std::conj(zeta)) / (4.0 * eps * n2);
    return {u + k * phi[0] * std::conj(phi[1]), v + k * phi[0] * std::conj(phi[2])};
}

inline constexpr double kKernelTolerance = 1e-8;
inline constexpr double kEvennessTolerance = 1e-10;

struct GdtOptions {
    SeedOptions seed{};
    double kernel_tol = kKernelTolerance;
    double even_tol = kEvennessTolerance;
    /// Truncation order of the f-expansion; 0 selects 4N + 4.
    int truncation = 0;
    /// Retry once with four more orders when a kernel check fails.
    bool retry = true;
    /// Constant factor applied to the seed eigenfunction; outputs do not depend on it.
    Complex seed_scale{1.0, 0.0};
};

struct GdtResult {
    Complex u;
    Complex v;
    DTChain chain;
    int truncation = 0;
    bool retried = false;
};

namespace detail {

inline std::string point_tag(double x, double t) {
    std::ostringstream os;
    os.precision(17);
    os << " at (x, t) = (" << x << ", " << t << ")";
    return os.str();
}

// Largest odd-power coefficient relative to the largest even-power one over
// powers 0..max_power, all three components together.
inline double odd_even_ratio(const JetVec3& phi, int max_power) {
    double odd = 0.0, even = 0.0;
    for (std::size_t i = 0; i < 3; ++i)
        for (int k = 0; k <= max_power; ++k) {
            const double a = std::abs(phi[i].coeff(k));
            (k % 2 ? odd : even) = std::max(k % 2 ? odd : even, a);
        }
    return even > 0.0 ? odd / even : std::numeric_limits<double>::infinity();
}

inline GdtResult gdt_attempt(const SeedParams& p, int N, double x, double t, int K, const GdtOptions& opt) {
    JetVec3 phi = spectral_seed_jet(p, x, t, K, opt.seed);
    if (opt.seed_scale != Complex(1.0)) phi *= opt.seed_scale;
    const double odd = odd_even_ratio(phi, 2 * N + 1);
    if (odd > opt.even_tol)
        throw SeriesCorruption("spectral seed is not even in f (odd/even coefficient ratio " + std::to_string(odd) + ")",
                               0, odd);

    // P_0 .. P_N in g = f^2; the last one only feeds the final kernel check.
    std::vector<CVec3> P(static_cast<std::size_t>(N) + 1);
    for (int k = 0; k <= N; ++k)
        for (std::size_t i = 0; i < 3; ++i) P[static_cast<std::size_t>(k)][i] = phi[i].coeff(2 * k);

    const Complex z1 = zeta1(p);
    auto [u, v] = seed_potentials(p, x, t);
    GdtResult res;
    res.truncation = K;
    res.chain.N = N;
    res.chain.params = p;
    res.chain.x = x;
    res.chain.t = t;
    for (int l = 1; l <= N; ++l) {
        DarbouxStep st = darboux_matrix(P[0], z1);
        std::tie(u, v) = dt_update(u, v, P[0], z1, p.eps);
        st.u_after = u;
        st.v_after = v;

        std::vector<CVec3> Q(P.size() - 1);
        for (std::size_t k = 1; k < P.size(); ++k) Q[k - 1] = z1 * P[k - 1] + st.T1 * P[k];
        const double q0 = norm(st.T1 * P[0]);
        const double q1 = norm(Q[0]);
        st.kernel_ratio = q1 > 0.0 ? q0 / q1 : std::numeric_limits<double>::infinity();
        if (!(st.kernel_ratio <= opt.kernel_tol))
            throw SeriesCorruption("vanishing coefficient of Darboux step " + std::to_string(l) +
                                       " is not small (ratio " + std::to_string(st.kernel_ratio) + ")",
                                   l, st.kernel_ratio);
        res.chain.steps.push_back(st);
        P = std::move(Q);
    }
    res.u = u;
    res.v = v;
    return res;
}

} // namespace detail

/// Nth-order solution at one point by the generalized Darboux transformation.
/// N = 0 returns the seed. On a failed kernel check the expansion is redone
/// once with a higher truncation; a second failure is reported with the
/// point coordinates.
inline GdtResult gdt_point(const SeedParams& p, int N, double x, double t, const GdtOptions& opt = {}) {
    p.validate();
    if (N < 0) throw InvalidParams("order N must be non-negative");
    if (N == 0) {
        GdtResult r;
        std::tie(r.u, r.v) = seed_potentials(p, x, t);
        r.chain.params = p;
        r.chain.x = x;
        r.chain.t = t;
        return r;
    }
    const int K = opt.truncation > 0 ? opt.truncation : 4 * N + 4;
    if (K < 2 * N + 4) throw InvalidParams("truncation order too small for the requested N");
    try {
        return detail::gdt_attempt(p, N, x, t, K, opt);
    } catch (const SingularMatrix& e) {
        throw SingularMatrix(e.what() + detail::point_tag(x, t), e.abs_det());
    } catch (const SeriesCorruption& first) {
        if (!opt.retry) throw SeriesCorruption(first.what() + detail::point_tag(x, t), first.step(), first.ratio());
        try {
            GdtResult r = detail::gdt_attempt(p, N, x, t, K + 4, opt);
            r.retried = true;
            return r;
        } catch (const SingularMatrix& e) {
            throw SingularMatrix(e.what() + detail::point_tag(x, t), e.abs_det());
        } catch (const SeriesCorruption& second) {
            throw SeriesCorruption(std::string(second.what()) + " after retry with K = " + std::to_string(K + 4) +
                                       detail::point_tag(x, t),
                                   second.step(), second.ratio());
        }
    }
}

/// Spectral data for a classical chain: a spectral point and a seed
/// eigenfunction evaluated there.
struct SpectralDatum {
    Complex zeta;
    CVec3 phi;
};

/// Classical N-fold transformation with distinct spectral points. The l-th
/// eigenfunction is first carried through the previous l-1 transformations,
/// Phi_l[l-1] = T[l-1](zeta_l) ... T[1](zeta_l) Phi_l.
inline GdtResult classical_chain(Complex u0, Complex v0, double eps, const std::vector<SpectralDatum>& data) {
    GdtResult res;
    Complex u = u0, v = v0;
    for (const auto& d : data) {
        CVec3 w = d.phi;
        for (const auto& prev : res.chain.steps) w = (d.zeta * CMat3::identity() - prev.A) * w;
        DarbouxStep st = darboux_matrix(w, d.zeta);
        std::tie(u, v) = dt_update(u, v, w, d.zeta, eps);
        st.u_after = u;
        st.v_after = v;
        res.chain.steps.push_back(st);
    }
    res.u = u;
    res.v = v;
    res.chain.N = static_cast<int>(data.size());
    return res;
}

/// A distinct spectral point together with the seed eigenfunction there as a
/// function of (x, t).
struct ClassicalSpec {
    Complex zeta;
    std::function<CVec3(double, double)> phi;
};

/// Classical chain at a point, starting from the plane-wave seed of `p`.
inline GdtResult classical_chain(const SeedParams& p, const std::vector<ClassicalSpec>& specs, double x, double t) {
    p.validate();
    std::vector<SpectralDatum> data;
    data.reserve(specs.size());
    for (const auto& s : specs) {
        if (s.zeta.imag() == 0.0) throw InvalidParams("classical chain needs spectral points off the real axis");
        data.push_back({s.zeta, s.phi(x, t)});
    }
    const auto [u0, v0] = seed_potentials(p, x, t);
    GdtResult r = classical_chain(u0, v0, p.eps, data);
    r.chain.params = p;
    r.chain.x = x;
    r.chain.t = t;
    return r;
}

} // namespace hirota
