#pragma once

// Finite-difference residuals of the field equations, the zero-curvature
// condition and the Lax pair, refinement studies, and peak / soliton metrics.
//
// Stencils are second-order central: first and second derivatives on three
// points, u_xxx on five with weights (-1/2, 1, 0, -1, 1/2) / h^3.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hirota/errors.hpp"
#include "hirota/field.hpp"
#include "hirota/model.hpp"
#include "hirota/numerics/complex.hpp"
#include "hirota/numerics/mat3.hpp"

namespace hirota {

struct ResidualReport {
    double max_abs = 0.0;
    double rms = 0.0;
    double hx = 0.0;
    double ht = 0.0;
    int stencil_order = 2;
    /// Per-part maxima: the two field equations, or the x and t halves of the Lax pair.
    std::array<double, 2> part_max{};
    std::size_t points = 0;
};

namespace detail {

struct Accumulator {
    double max_abs = 0.0, sum2 = 0.0;
    std::array<double, 2> part{};
    std::size_t n = 0;

    void add(double a, double b) {
        part[0] = std::max(part[0], a);
        part[1] = std::max(part[1], b);
        max_abs = std::max({max_abs, a, b});
        sum2 += a * a + b * b;
        n += 2;
    }
    ResidualReport report(const GridSpec& g) const {
        ResidualReport r;
        r.max_abs = max_abs;
        r.rms = n ? std::sqrt(sum2 / static_cast<double>(n)) : 0.0;
        r.hx = g.hx();
        r.ht = g.ht();
        r.part_max = part;
        r.points = n / 2;
        return r;
    }
};

inline void require_size(const GridSpec& g, int min_x, int min_t, const char* what) {
    if (g.nx < min_x || g.nt < min_t)
        throw GridError(std::string(what) + " needs at least " + std::to_string(min_x) + " points in x and " +
                        std::to_string(min_t) + " in t");
}

inline void require_same(const ComplexField& u, const ComplexField& v) {
    if (!(u.spec() == v.spec())) throw GridError("u and v fields live on different grids");
}

template <typename F>
Complex dx1(const F& f, int i, int j, double h) {
    return (f(i + 1, j) - f(i - 1, j)) / (2.0 * h);
}
template <typename F>
Complex dx2(const F& f, int i, int j, double h) {
    return (f(i + 1, j) - 2.0 * f(i, j) + f(i - 1, j)) / (h * h);
}
template <typename F>
Complex dx3(const F& f, int i, int j, double h) {
    return (-0.5 * f(i - 2, j) + f(i - 1, j) - f(i + 1, j) + 0.5 * f(i + 2, j)) / (h * h * h);
}
template <typename F>
Complex dt1(const F& f, int i, int j, double h) {
    return (f(i, j + 1) - f(i, j - 1)) / (2.0 * h);
}

} // namespace detail

/// Residuals of both field equations on interior nodes.
inline ResidualReport pde_residual(const ComplexField& u, const ComplexField& v, double eps) {
    detail::require_same(u, v);
    const GridSpec& g = u.spec();
    detail::require_size(g, 7, 3, "PDE residual");
    const double hx = g.hx(), ht = g.ht();
    detail::Accumulator acc;
    for (int i = 2; i < g.nx - 2; ++i)
        for (int j = 1; j < g.nt - 1; ++j) {
            const Complex a = u(i, j), b = v(i, j);
            const double na = std::norm(a), nb = std::norm(b);
            const Complex ax = detail::dx1(u, i, j, hx), bx = detail::dx1(v, i, j, hx);
            const Complex r1 = kI * detail::dt1(u, i, j, ht) + 0.5 * detail::dx2(u, i, j, hx) + (na + nb) * a +
                               kI * eps * (detail::dx3(u, i, j, hx) + (6.0 * na + 3.0 * nb) * ax + 3.0 * a * std::conj(b) * bx);
            const Complex r2 = kI * detail::dt1(v, i, j, ht) + 0.5 * detail::dx2(v, i, j, hx) + (na + nb) * b +
                               kI * eps * (detail::dx3(v, i, j, hx) + (6.0 * nb + 3.0 * na) * bx + 3.0 * b * std::conj(a) * ax);
            acc.add(std::abs(r1), std::abs(r2));
        }
    return acc.report(g);
}

/// Max-entry norm of U_t - V_x + UV - VU with x-derivatives of the potentials
/// taken by finite differences.
inline ResidualReport zero_curvature_residual(const ComplexField& u, const ComplexField& v, double eps, Complex zeta) {
    detail::require_same(u, v);
    const GridSpec& g = u.spec();
    detail::require_size(g, 7, 3, "zero-curvature residual");
    const double hx = g.hx(), ht = g.ht();
    auto V_at = [&](int i, int j) {
        LaxInput li{u(i, j), v(i, j), detail::dx1(u, i, j, hx), detail::dx1(v, i, j, hx), detail::dx2(u, i, j, hx),
                    detail::dx2(v, i, j, hx)};
        return lax_V(li, zeta, eps);
    };
    detail::Accumulator acc;
    for (int i = 2; i < g.nx - 2; ++i)
        for (int j = 1; j < g.nt - 1; ++j) {
            const CMat3 U = lax_U(u(i, j), v(i, j), zeta, eps);
            const CMat3 Ut = (lax_U(u(i, j + 1), v(i, j + 1), zeta, eps) - lax_U(u(i, j - 1), v(i, j - 1), zeta, eps)) /
                             Complex(2.0 * ht);
            const CMat3 V = V_at(i, j);
            const CMat3 Vx = (V_at(i + 1, j) - V_at(i - 1, j)) / Complex(2.0 * hx);
            const double r = norm_max(Ut - Vx + U * V - V * U);
            acc.add(r, r);
        }
    return acc.report(g);
}

/// Lax residual of the seed eigenfunction at fixed expansion value f0:
/// max |Phi_x - U Phi| (part 0) and |Phi_t - V Phi| (part 1) relative to max |Phi|
/// on the grid. U and V are taken at `zeta_factor` times the eigenfunction's
/// own spectral parameter; any factor other than 1 is a deliberate mismatch.
inline ResidualReport lax_ode_residual(const SeedParams& p, double f0, const GridSpec& g, SeedOptions opt = {},
                                       double zeta_factor = 1.0) {
    g.validate();
    detail::require_size(g, 3, 3, "Lax residual");
    opt.normalize = false;
    const Complex zeta = zeta1(p) * (1.0 + f0 * f0);
    Complex shift{};
    double fp = f0 * f0;
    for (const auto& sk : p.s) {
        shift += sk.value() * fp;
        fp *= f0 * f0;
    }
    Field<CVec3> phi(g);
    double scale = 0.0;
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.nt; ++j) {
            phi(i, j) = eigenfunction_at(p, zeta, g.x(i), g.t(j), shift, opt);
            scale = std::max(scale, norm(phi(i, j)));
        }
    if (!(scale > 0.0) || !std::isfinite(scale)) throw GridError("eigenfunction vanishes or overflows on the grid");
    const Complex zl = zeta_factor * zeta;
    const double hx = g.hx(), ht = g.ht();
    detail::Accumulator acc;
    for (int i = 1; i < g.nx - 1; ++i)
        for (int j = 1; j < g.nt - 1; ++j) {
            const double x = g.x(i), t = g.t(j);
            const auto [u, v] = seed_potentials(p, x, t);
            const CVec3 px = (1.0 / (2.0 * hx)) * (phi(i + 1, j) - phi(i - 1, j));
            const CVec3 pt = (1.0 / (2.0 * ht)) * (phi(i, j + 1) - phi(i, j - 1));
            const CVec3 rx = px - lax_U(u, v, zl, p.eps) * phi(i, j);
            const CVec3 rt = pt - lax_V(seed_lax_input(p, x, t), zl, p.eps) * phi(i, j);
            acc.add(norm(rx) / scale, norm(rt) / scale);
        }
    return acc.report(g);
}

/// Residual norms at successively halved spacings and the observed orders
/// log2(r_k / r_{k+1}).
struct ConvergenceStudy {
    std::vector<double> h;
    std::vector<ResidualReport> reports;
    std::vector<double> slopes;

    /// Smallest successive slope; the conservative order estimate.
    double order() const {
        if (slopes.empty()) return 0.0;
        return *std::min_element(slopes.begin(), slopes.end());
    }
};

inline double richardson_slope(double coarse, double fine) {
    if (!(coarse > 0.0) || !(fine > 0.0)) return fine == 0.0 && coarse == 0.0 ? INFINITY : 0.0;
    return std::log2(coarse / fine);
}

/// Runs `residual(h)` for h0, h0/2, ... (`levels` values).
template <typename Fn>
ConvergenceStudy refinement_study(Fn&& residual, double h0, int levels = 3) {
    if (levels < 2) throw InvalidParams("a refinement study needs at least two levels");
    ConvergenceStudy s;
    double h = h0;
    for (int k = 0; k < levels; ++k, h *= 0.5) {
        s.h.push_back(h);
        s.reports.push_back(residual(h));
    }
    for (int k = 0; k + 1 < levels; ++k)
        s.slopes.push_back(richardson_slope(s.reports[k].max_abs, s.reports[k + 1].max_abs));
    return s;
}

inline constexpr double kMinConvergenceOrder = 1.8;

/// Outcome of running the Lax residual study for both phase readings.
struct PhaseArbitration {
    std::optional<PhaseReading> selected;
    double order_imaginary = 0.0;
    double order_real = 0.0;
};

/// Lax-residual refinement on a small patch at f0 for both phase readings; a
/// reading is selected only when exactly one of them converges.
inline PhaseArbitration arbitrate_phase_reading(const SeedParams& p, double f0 = 1e-2, double h0 = 0.1) {
    auto study = [&](PhaseReading reading) {
        SeedOptions opt;
        opt.reading = reading;
        return refinement_study([&](double h) { return lax_ode_residual(p, f0, centred_grid(0.3, 0.4, 0.5, 0.5, h), opt); },
                                h0)
            .order();
    };
    PhaseArbitration a;
    a.order_imaginary = study(PhaseReading::imaginary);
    a.order_real = study(PhaseReading::real);
    const bool ok_i = a.order_imaginary >= kMinConvergenceOrder;
    const bool ok_r = a.order_real >= kMinConvergenceOrder;
    if (ok_i != ok_r) a.selected = ok_i ? PhaseReading::imaginary : PhaseReading::real;
    return a;
}

// --- phenomenology ---------------------------------------------------------

struct Peak {
    double x, t, height;
    int i, j;
};

struct PeakSet {
    std::vector<Peak> peaks; ///< sorted by height, highest first
    std::size_t size() const noexcept { return peaks.size(); }
};

inline constexpr double kPeakThresholdFactor = 2.0;
inline constexpr double kPeakRadius = 1.0;

/// Strict 8-neighbour local maxima above `threshold`, greedily kept from the
/// highest down unless within (radius_x, radius_t) of an already kept one.
inline PeakSet peak_metrics(const RealField& m, double threshold, double radius_x = kPeakRadius,
                            double radius_t = kPeakRadius) {
    const GridSpec& g = m.spec();
    std::vector<Peak> cand;
    for (int i = 1; i < g.nx - 1; ++i)
        for (int j = 1; j < g.nt - 1; ++j) {
            const double c = m(i, j);
            if (!(c > threshold)) continue;
            bool is_max = true;
            for (int di = -1; di <= 1 && is_max; ++di)
                for (int dj = -1; dj <= 1; ++dj)
                    if ((di || dj) && !(c > m(i + di, j + dj))) {
                        is_max = false;
                        break;
                    }
            if (is_max) cand.push_back({g.x(i), g.t(j), c, i, j});
        }
    std::sort(cand.begin(), cand.end(), [](const Peak& a, const Peak& b) {
        if (a.height != b.height) return a.height > b.height;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    });
    PeakSet out;
    for (const auto& c : cand) {
        const bool near = std::any_of(out.peaks.begin(), out.peaks.end(), [&](const Peak& k) {
            return std::abs(k.x - c.x) < radius_x && std::abs(k.t - c.t) < radius_t;
        });
        if (!near) out.peaks.push_back(c);
    }
    return out;
}

enum class SolitonKind { dark, bright, automatic };

struct SolitonMetrics {
    SolitonKind kind = SolitonKind::dark;
    double depth = 0.0;    ///< |extremum - background|
    double position = 0.0; ///< x of the extremum, refined by a parabola through three nodes
    double velocity = 0.0;
};

inline constexpr double kMinProminence = 1e-3;

/// Dominant dip (dark) or crest (bright) of one modulus slice.
inline SolitonMetrics locate_soliton(std::span<const double> xs, std::span<const double> slice, double background,
                                     SolitonKind kind = SolitonKind::automatic, double min_prominence = kMinProminence) {
    if (xs.size() != slice.size() || xs.size() < 3) throw GridError("soliton slice needs at least 3 matching samples");
    const auto [lo, hi] = std::minmax_element(slice.begin(), slice.end());
    if (kind == SolitonKind::automatic) kind = (background - *lo) >= (*hi - background) ? SolitonKind::dark : SolitonKind::bright;
    const auto it = kind == SolitonKind::dark ? lo : hi;
    const double prom = kind == SolitonKind::dark ? background - *it : *it - background;
    if (!(prom > min_prominence)) throw Error("no soliton found");
    auto k = static_cast<std::size_t>(it - slice.begin());
    if (k == 0 || k + 1 == slice.size()) throw Error("no soliton found (extremum on the slice boundary)");
    const double h = xs[k + 1] - xs[k];
    const double ym = slice[k - 1], y0 = slice[k], yp = slice[k + 1];
    const double curv = ym - 2.0 * y0 + yp;
    double off = curv != 0.0 ? 0.5 * (ym - yp) / curv : 0.0;
    off = std::clamp(off, -1.0, 1.0);
    const double ext = y0 - 0.25 * (ym - yp) * off;
    SolitonMetrics s;
    s.kind = kind;
    s.position = xs[k] + off * h;
    s.depth = kind == SolitonKind::dark ? background - ext : ext - background;
    return s;
}

/// Soliton at two time slices; both results carry the velocity
/// (position_b - position_a) / (t_b - t_a).
inline std::pair<SolitonMetrics, SolitonMetrics> soliton_metrics(std::span<const double> xs, std::span<const double> slice_a,
                                                                 double t_a, std::span<const double> slice_b, double t_b,
                                                                 double background,
                                                                 SolitonKind kind = SolitonKind::automatic) {
    if (t_a == t_b) throw InvalidParams("soliton velocity needs two distinct times");
    SolitonMetrics a = locate_soliton(xs, slice_a, background, kind);
    SolitonMetrics b = locate_soliton(xs, slice_b, background, a.kind);
    a.velocity = b.velocity = (b.position - a.position) / (t_b - t_a);
    return {a, b};
}

} // namespace hirota
