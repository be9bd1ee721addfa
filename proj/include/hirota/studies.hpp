#pragma once

// Refinement studies and oracle comparisons over engine-generated fields.

#include <cmath>
#include <optional>
#include <string>

#include "hirota/app.hpp"
#include "hirota/errors.hpp"
#include "hirota/field.hpp"
#include "hirota/gdt.hpp"
#include "hirota/oracles.hpp"
#include "hirota/verify.hpp"

namespace hirota {

/// Base spacing for an order-N refinement study; higher orders are steeper
/// near the core and reach the asymptotic regime later.
inline double default_base_spacing(int N) { return 0.1 / static_cast<double>(1 << std::max(N, 0)); }

struct ResidualStudy {
    ConvergenceStudy pde;
    ConvergenceStudy zero_curvature;
};

struct PatchSpec {
    double x0 = 0.0, t0 = 0.0;
    double lx = 1.0, lt = 0.5;
};

/// PDE and zero-curvature residuals of the order-N field on nested patches
/// with spacings h0, h0/2, h0/4.
inline ResidualStudy residual_study(const SeedParams& p, int N, const PatchSpec& patch = {}, double h0 = 0.0,
                                    Complex zeta = {0.05, 0.1}, const EvalOptions& opt = {}) {
    if (h0 <= 0.0) h0 = default_base_spacing(N);
    ResidualStudy st;
    std::vector<FieldGrid> fields;
    for (int k = 0; k < 3; ++k)
        fields.push_back(evaluate_grid(p, N, centred_grid(patch.x0, patch.t0, patch.lx, patch.lt, h0 / (1 << k)), opt));
    int level = 0;
    st.pde = refinement_study([&](double) { const auto& f = fields[level++]; return pde_residual(f.u, f.v, p.eps); }, h0);
    level = 0;
    st.zero_curvature = refinement_study(
        [&](double) {
            const auto& f = fields[level++];
            return zero_curvature_residual(f.u, f.v, p.eps, zeta);
        },
        h0);
    return st;
}

/// Residual study on a stored field, using the grid itself and its 2x and 4x
/// subsamplings. Needs (nx - 1) and (nt - 1) divisible by 4.
inline ResidualStudy residual_study(const FieldGrid& fg, Complex zeta = {0.05, 0.1}) {
    const GridSpec& g = fg.spec;
    if ((g.nx - 1) % 4 || (g.nt - 1) % 4) throw GridError("stored grid cannot be subsampled by 4 in both axes");
    auto sub = [&](const ComplexField& f, int stride) {
        GridSpec s = g;
        s.nx = (g.nx - 1) / stride + 1;
        s.nt = (g.nt - 1) / stride + 1;
        ComplexField out(s);
        for (int i = 0; i < s.nx; ++i)
            for (int j = 0; j < s.nt; ++j) out(i, j) = f(i * stride, j * stride);
        return out;
    };
    ResidualStudy st;
    int stride = 4;
    st.pde = refinement_study(
        [&](double) {
            const int s = stride;
            stride /= 2;
            return pde_residual(sub(fg.u, s), sub(fg.v, s), fg.params.eps);
        },
        4.0 * g.hx());
    stride = 4;
    st.zero_curvature = refinement_study(
        [&](double) {
            const int s = stride;
            stride /= 2;
            return zero_curvature_residual(sub(fg.u, s), sub(fg.v, s), fg.params.eps, zeta);
        },
        4.0 * g.hx());
    return st;
}

/// Pointwise relative error |(du, dv)| / max(|(u, v)|, floor) with floor =
/// 1e-3 sqrt(d1^2 + d2^2), maximised over the grid.
inline double max_relative_error(const ComplexField& ue, const ComplexField& ve, const ComplexField& uo,
                                 const ComplexField& vo, double background) {
    const double floor = 1e-3 * background;
    double worst = 0.0;
    for (std::size_t k = 0; k < ue.data().size(); ++k) {
        const double d = std::hypot(std::abs(ue.data()[k] - uo.data()[k]), std::abs(ve.data()[k] - vo.data()[k]));
        const double s = std::hypot(std::abs(uo.data()[k]), std::abs(vo.data()[k]));
        worst = std::max(worst, d / std::max(s, floor));
    }
    return worst;
}

inline constexpr double kFirstOrderOracleTol = 1e-9;
inline constexpr double kSecondOrderOracleTol = 1e-8;

/// Engine vs the first-order closed form on `g`.
inline double compare_first_order(const SeedParams& p, const GridSpec& g, const EvalOptions& opt = {}) {
    const FieldGrid fg = evaluate_grid(p, 1, g, opt);
    ComplexField uo(g), vo(g);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.nt; ++j)
            std::tie(uo(i, j), vo(i, j)) = oracles::first_order(p.d1, p.d2, p.eps, p.alpha, g.x(i), g.t(j));
    return max_relative_error(fg.u, fg.v, uo, vo, std::sqrt(p.background2()));
}

/// Parameters the second-order closed form is specialised to.
inline SeedParams second_order_params(double eps, double m1, double n1) { return {1.0, 1.5, eps, 0.0, {{m1, n1}}}; }

/// Engine vs the second-order closed form on `g`.
inline double compare_second_order(double eps, double m1, double n1, const GridSpec& g,
                                   oracles::SecondOrderTable table = oracles::SecondOrderTable::corrected,
                                   const EvalOptions& opt = {}) {
    const SeedParams p = second_order_params(eps, m1, n1);
    const FieldGrid fg = evaluate_grid(p, 2, g, opt);
    ComplexField uo(g), vo(g);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.nt; ++j)
            std::tie(uo(i, j), vo(i, j)) = oracles::second_order_rw(eps, m1, n1, g.x(i), g.t(j), table);
    return max_relative_error(fg.u, fg.v, uo, vo, std::sqrt(p.background2()));
}

} // namespace hirota
