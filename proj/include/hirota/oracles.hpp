#pragma once

// Closed-form reference solutions used as independent oracles.
//
// first_order: the first-order localized wave for general d1, d2, alpha.
// second_order_rw: the second-order rogue wave for d1 = 1, d2 = 3/2,
// alpha = 0, as a polynomial ratio tabulated term by term.

#include <array>
#include <cmath>
#include <utility>

#include "hirota/numerics/complex.hpp"

namespace hirota::oracles {

/// First-order localized wave. alpha = 0 gives the rogue wave, alpha != 0
/// the interaction with a dark-bright soliton pair.
inline std::pair<Complex, Complex> first_order(double d1, double d2, double eps, double alpha, double x, double t) {
    const double e = d1 * d1 + d2 * d2;
    const double r = std::sqrt(e);
    const Complex ph = std::polar(1.0, e * t);
    const double lin = x - 6.0 * eps * e * t;
    const double quad = 4.0 * e * x * x - 48.0 * eps * e * e * x * t + 4.0 * e * e * (36.0 * eps * eps * e + 1.0) * t * t;
    const double F1 = -2.0 * quad + 2.0;
    const double H1 = 8.0 * e * t;
    const double D1 = quad + 1.0;
    const Complex G1 = 4.0 * Complex(1.0, -1.0) * std::sqrt(eps) * alpha * std::pow(e, 0.75) *
                       (2.0 * r * lin + 2.0 * kI * e * t + 1.0);
    const double K1 = 4.0 * eps * alpha * alpha * std::pow(e, 1.5);
    const Complex eta1 = -r * x + e * Complex(4.0 * eps * r, 1.5) * t;
    const double eta2 = -2.0 * r * x + 8.0 * eps * std::pow(e, 1.5) * t;
    const double den = D1 + K1 * std::exp(eta2);
    const Complex num = Complex(F1, H1);
    const Complex g = G1 * std::exp(eta1);
    return {d1 * ph + (d1 * ph * num + d2 * g) / den, d2 * ph + (d2 * ph * num - d1 * g) / den};
}

inline std::pair<Complex, Complex> first_order_rw(double d1, double d2, double eps, double x, double t) {
    return first_order(d1, d2, eps, 0.0, x, t);
}

/// x^px t^pt eps^pe m1^pm n1^pn sqrt(13)^ps times coef.
struct Monomial {
    int px, pt, pe, pm, pn, ps;
    double coef;
};

inline constexpr std::array<Monomial, 17> kSecondOrderF{{
    {4, 0, 2, 0, 0, 0, -129792.0},
    {3, 1, 3, 0, 0, 0, 10123776.0},
    {2, 2, 4, 0, 0, 0, -296120448.0},
    {2, 2, 2, 0, 0, 0, -2530944.0},
    {2, 0, 2, 0, 0, 0, -59904.0},
    {1, 3, 5, 0, 0, 0, 3849565824.0},
    {1, 3, 3, 0, 0, 0, 98706816.0},
    {1, 1, 3, 0, 0, 0, 5451264.0},
    {1, 0, 1, 1, 0, 0, 7488.0},
    {0, 4, 6, 0, 0, 0, -18766633392.0},
    {0, 4, 4, 0, 0, 0, -962391456.0},
    {0, 4, 2, 0, 0, 0, -6854640.0},
    {0, 2, 4, 0, 0, 0, -83521152.0},
    {0, 2, 2, 0, 0, 0, -584064.0},
    {0, 1, 2, 1, 0, 0, -146016.0},
    {0, 1, 1, 0, 1, 1, 3744.0},
    {0, 0, 2, 0, 0, 0, 2304.0},
}};

inline constexpr std::array<Monomial, 21> kSecondOrderG{{
    {4, 1, 2, 0, 0, 0, -843648.0},
    {3, 2, 3, 0, 0, 0, 65804544.0},
    {2, 3, 4, 0, 0, 0, -1924782912.0},
    {2, 3, 2, 0, 0, 0, -5483712.0},
    {2, 1, 2, 0, 0, 0, 389376.0},
    {2, 0, 1, 0, 1, 1, -3744.0},
    {1, 4, 5, 0, 0, 0, 25022177856.0},
    {1, 4, 3, 0, 0, 0, 213864768.0},
    {1, 2, 3, 0, 0, 0, 5061888.0},
    {1, 1, 2, 0, 1, 1, 146016.0},
    {1, 1, 1, 1, 0, 0, 48672.0},
    {0, 5, 6, 0, 0, 0, -121983117048.0},
    {0, 5, 4, 0, 0, 0, -2085181488.0},
    {0, 5, 2, 0, 0, 0, -8911032.0},
    {0, 3, 4, 0, 0, 0, -246767040.0},
    {0, 3, 2, 0, 0, 0, -421824.0},
    {0, 2, 3, 0, 1, 1, -1423656.0},
    {0, 2, 2, 1, 0, 0, -949104.0},
    {0, 2, 1, 0, 1, 1, 12168.0},
    {0, 1, 2, 0, 0, 0, 74880.0},
    {0, 0, 1, 0, 1, 1, -288.0},
}};

inline constexpr std::array<Monomial, 45> kSecondOrderD{{
    {6, 0, 2, 0, 0, 0, 140608.0},
    {5, 1, 3, 0, 0, 0, -16451136.0},
    {4, 2, 4, 0, 0, 0, 801992880.0},
    {4, 2, 2, 0, 0, 0, 1370928.0},
    {4, 0, 2, 0, 0, 0, 32448.0},
    {3, 3, 5, 0, 0, 0, -20851814880.0},
    {3, 3, 3, 0, 0, 0, -106932384.0},
    {3, 1, 3, 0, 0, 0, 843648.0},
    {3, 0, 1, 1, 0, 0, 8112.0},
    {2, 4, 6, 0, 0, 0, 304957792620.0},
    {2, 4, 4, 0, 0, 0, 3127772232.0},
    {2, 4, 2, 0, 0, 0, 4455516.0},
    {2, 2, 4, 0, 0, 0, -123383520.0},
    {2, 2, 2, 0, 0, 0, -632736.0},
    {2, 1, 2, 1, 0, 0, -474552.0},
    {2, 1, 1, 0, 1, 1, 12168.0},
    {2, 0, 2, 0, 0, 0, 22464.0},
    {1, 5, 7, 0, 0, 0, -2378670782436.0},
    {1, 5, 5, 0, 0, 0, -40661039016.0},
    {1, 5, 3, 0, 0, 0, -173765124.0},
    {1, 3, 5, 0, 0, 0, 2887174368.0},
    {1, 3, 3, 0, 0, 0, -8225568.0},
    {1, 2, 3, 1, 0, 0, 9253764.0},
    {1, 2, 2, 0, 1, 1, -474552.0},
    {1, 2, 1, 1, 0, 0, -79092.0},
    {1, 1, 3, 0, 0, 0, -1654848.0},
    {1, 0, 1, 1, 0, 0, -1872.0},
    {0, 6, 8, 0, 0, 0, 7730680042917.0},
    {0, 6, 6, 0, 0, 0, 198222565203.0},
    {0, 6, 4, 0, 0, 0, 1694209959.0},
    {0, 6, 2, 0, 0, 0, 4826809.0},
    {0, 4, 6, 0, 0, 0, -20330519508.0},
    {0, 4, 4, 0, 0, 0, 400996440.0},
    {0, 4, 2, 0, 0, 0, 3084588.0},
    {0, 3, 4, 1, 0, 0, -60149466.0},
    {0, 3, 3, 0, 1, 1, 4626882.0},
    {0, 3, 2, 1, 0, 0, 1542294.0},
    {0, 3, 1, 0, 1, 1, -13182.0},
    {0, 2, 4, 0, 0, 0, 43975152.0},
    {0, 2, 2, 0, 0, 0, 267696.0},
    {0, 1, 2, 1, 0, 0, 133848.0},
    {0, 1, 1, 0, 1, 1, -2808.0},
    {0, 0, 2, 0, 0, 0, 576.0},
    {0, 0, 0, 2, 0, 0, 117.0},
    {0, 0, 0, 0, 2, 0, 117.0},
}};

/// Which tabulation of the G numerator to use. `printed` keeps the
/// x^2 eps^2 term at t^2 as typeset, which is not a solution; `corrected`
/// moves it to t^3.
enum class SecondOrderTable { corrected, printed };

namespace detail {

template <std::size_t M>
double eval_table(const std::array<Monomial, M>& table, double eps, double m1, double n1, double x, double t) {
    constexpr int kMaxPow = 9;
    std::array<double, kMaxPow> xp{}, tp{}, ep{};
    xp[0] = tp[0] = ep[0] = 1.0;
    for (int k = 1; k < kMaxPow; ++k) {
        xp[k] = xp[k - 1] * x;
        tp[k] = tp[k - 1] * t;
        ep[k] = ep[k - 1] * eps;
    }
    const std::array<double, 3> mp{1.0, m1, m1 * m1};
    const std::array<double, 3> np{1.0, n1, n1 * n1};
    const std::array<double, 2> sp{1.0, std::sqrt(13.0)};
    double s = 0.0;
    for (const auto& m : table) s += m.coef * xp[m.px] * tp[m.pt] * ep[m.pe] * mp[m.pm] * np[m.pn] * sp[m.ps];
    return s;
}

} // namespace detail

/// Second-order rogue wave on the background d1 = 1, d2 = 3/2.
inline std::pair<Complex, Complex> second_order_rw(double eps, double m1, double n1, double x, double t,
                                                   SecondOrderTable table = SecondOrderTable::corrected) {
    const double F = detail::eval_table(kSecondOrderF, eps, m1, n1, x, t);
    double G = detail::eval_table(kSecondOrderG, eps, m1, n1, x, t);
    const double D = detail::eval_table(kSecondOrderD, eps, m1, n1, x, t);
    if (table == SecondOrderTable::printed) G += 5483712.0 * eps * eps * x * x * (t * t * t - t * t);
    const Complex w = std::polar(1.0, 13.0 / 4.0 * t) * (1.0 + Complex(F, G) / D);
    return {w, 1.5 * w};
}

} // namespace hirota::oracles
