#pragma once

// Truncated Laurent series in one formal variable f.
//
// A jet stores K+1 coefficients c_0..c_K and a valuation v and represents
//
//     c_0 f^v + c_1 f^(v+1) + ... + c_K f^(v+K) + O(f^(v+K+1)).
//
// Products and quotients keep K+1 terms past the result valuation, so relative
// precision is preserved. Sums keep the lower valuation; when the leading
// coefficients cancel the jet is re-normalized and the top is padded with
// zeros (that order is lost, callers budget guard orders for it).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "hirota/errors.hpp"
#include "hirota/numerics/complex.hpp"

namespace hirota {

/// Coefficients with magnitude at or below this fraction of the largest one
/// are treated as zero when normalizing the valuation of a sum.
inline constexpr double kJetTrimRelative = 1e-13;

template <typename T>
class LaurentJet {
  public:
    using value_type = T;
    using real_type = typename T::value_type;

    /// The zero jet of truncation order `order`.
    explicit LaurentJet(int order = 0) : valuation_(0), coeffs_(static_cast<std::size_t>(order) + 1, T{}) {
        if (order < 0) throw DegenerateExpansion("jet order must be non-negative");
    }

    /// Builds a jet from explicit coefficients; the order is `coeffs.size() - 1`.
    LaurentJet(int valuation, std::vector<T> coeffs) : valuation_(valuation), coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) throw DegenerateExpansion("jet needs at least one coefficient");
        normalize();
    }

    static LaurentJet constant(T c, int order) { return monomial(c, 0, order); }

    /// c * f^power.
    static LaurentJet monomial(T c, int power, int order) {
        std::vector<T> cs(static_cast<std::size_t>(order) + 1, T{});
        cs[0] = c;
        return LaurentJet(power, std::move(cs));
    }

    /// The formal variable f itself.
    static LaurentJet variable(int order) { return monomial(T{1}, 1, order); }

    int valuation() const noexcept { return valuation_; }
    int order() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    std::span<const T> coeffs() const noexcept { return coeffs_; }

    bool is_zero() const noexcept {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](const T& c) { return c == T{}; });
    }

    const T& leading() const noexcept { return coeffs_.front(); }

    /// Coefficient of f^k; zero outside the represented window.
    T coeff(int k) const noexcept {
        const int i = k - valuation_;
        if (i < 0 || i > order()) return T{};
        return coeffs_[static_cast<std::size_t>(i)];
    }

    real_type max_abs() const noexcept {
        real_type m{0};
        for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
        return m;
    }

    LaurentJet operator-() const {
        LaurentJet r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    LaurentJet& operator+=(const LaurentJet& b) { return *this = add(*this, b, T{1}); }
    LaurentJet& operator-=(const LaurentJet& b) { return *this = add(*this, b, T{-1}); }
    LaurentJet& operator*=(const LaurentJet& b) { return *this = mul(*this, b); }
    LaurentJet& operator/=(const LaurentJet& b) { return *this = div(*this, b); }

    LaurentJet& operator*=(const T& s) {
        for (auto& c : coeffs_) c *= s;
        if (s == T{}) *this = LaurentJet(order());
        return *this;
    }
    LaurentJet& operator/=(const T& s) {
        if (s == T{}) throw DegenerateExpansion("jet divided by zero scalar");
        for (auto& c : coeffs_) c /= s;
        return *this;
    }
    LaurentJet& operator+=(const T& s) { return *this += constant(s, order()); }
    LaurentJet& operator-=(const T& s) { return *this -= constant(s, order()); }

    friend LaurentJet operator+(LaurentJet a, const LaurentJet& b) { return a += b; }
    friend LaurentJet operator-(LaurentJet a, const LaurentJet& b) { return a -= b; }
    friend LaurentJet operator*(const LaurentJet& a, const LaurentJet& b) { return mul(a, b); }
    friend LaurentJet operator/(const LaurentJet& a, const LaurentJet& b) { return div(a, b); }
    friend LaurentJet operator*(LaurentJet a, const T& s) { return a *= s; }
    friend LaurentJet operator*(const T& s, LaurentJet a) { return a *= s; }
    friend LaurentJet operator/(LaurentJet a, const T& s) { return a /= s; }
    friend LaurentJet operator+(LaurentJet a, const T& s) { return a += s; }
    friend LaurentJet operator+(const T& s, LaurentJet a) { return a += s; }
    friend LaurentJet operator-(LaurentJet a, const T& s) { return a -= s; }
    friend LaurentJet operator-(const T& s, const LaurentJet& a) { return constant(s, a.order()) - a; }

    /// Both jets aligned to a common valuation and truncation agree within
    /// `rel_tol` of the larger coefficient magnitude.
    friend bool approx_equal(const LaurentJet& a, const LaurentJet& b, real_type rel_tol) {
        const int lo = std::min(a.valuation_, b.valuation_);
        const int hi = std::min(a.valuation_ + a.order(), b.valuation_ + b.order());
        const real_type scale = std::max({a.max_abs(), b.max_abs(), real_type{1e-300}});
        for (int k = lo; k <= hi; ++k)
            if (std::abs(a.coeff(k) - b.coeff(k)) > rel_tol * scale) return false;
        return true;
    }

    friend std::ostream& operator<<(std::ostream& os, const LaurentJet& a) {
        os << "[";
        for (int i = 0; i <= a.order(); ++i) {
            if (i) os << " + ";
            os << a.coeffs_[static_cast<std::size_t>(i)] << " f^" << (a.valuation_ + i);
        }
        return os << " + O(f^" << (a.valuation_ + a.order() + 1) << ")]";
    }

  private:
    static LaurentJet add(const LaurentJet& a, const LaurentJet& b, T sign) {
        const int order = std::min(a.order(), b.order());
        if (b.is_zero()) return a.truncated(order);
        if (a.is_zero()) return (b * sign).truncated(order);
        const int v = std::min(a.valuation_, b.valuation_);
        std::vector<T> cs(static_cast<std::size_t>(order) + 1);
        for (int i = 0; i <= order; ++i) cs[static_cast<std::size_t>(i)] = a.coeff(v + i) + sign * b.coeff(v + i);
        return LaurentJet(v, std::move(cs));
    }

    static LaurentJet mul(const LaurentJet& a, const LaurentJet& b) {
        const int order = std::min(a.order(), b.order());
        if (a.is_zero() || b.is_zero()) return LaurentJet(order);
        std::vector<T> cs(static_cast<std::size_t>(order) + 1, T{});
        for (int k = 0; k <= order; ++k) {
            T s{};
            for (int j = 0; j <= k; ++j) s += a.coeffs_[static_cast<std::size_t>(j)] * b.coeffs_[static_cast<std::size_t>(k - j)];
            cs[static_cast<std::size_t>(k)] = s;
        }
        return LaurentJet(a.valuation_ + b.valuation_, std::move(cs));
    }

    static LaurentJet div(const LaurentJet& a, const LaurentJet& b) {
        if (b.is_zero()) throw DegenerateExpansion("jet division by the zero jet (degenerate expansion point)");
        const int order = std::min(a.order(), b.order());
        if (a.is_zero()) return LaurentJet(order);
        std::vector<T> q(static_cast<std::size_t>(order) + 1, T{});
        const T b0 = b.coeffs_[0];
        for (int k = 0; k <= order; ++k) {
            T s = a.coeffs_[static_cast<std::size_t>(k)];
            for (int j = 1; j <= k; ++j) s -= b.coeffs_[static_cast<std::size_t>(j)] * q[static_cast<std::size_t>(k - j)];
            q[static_cast<std::size_t>(k)] = s / b0;
        }
        return LaurentJet(a.valuation_ - b.valuation_, std::move(q));
    }

    LaurentJet truncated(int order) const {
        if (order == this->order()) return *this;
        LaurentJet r = *this;
        r.coeffs_.resize(static_cast<std::size_t>(order) + 1);
        return r;
    }

    // Drop leading coefficients that are roundoff relative to the largest one.
    void normalize() {
        const real_type m = max_abs();
        if (m == real_type{0}) {
            valuation_ = 0;
            return;
        }
        const real_type cut = kJetTrimRelative * m;
        std::size_t lead = 0;
        while (lead < coeffs_.size() && std::abs(coeffs_[lead]) <= cut) ++lead;
        if (lead == 0) return;
        coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
        coeffs_.resize(coeffs_.size() + lead, T{});
        valuation_ += static_cast<int>(lead);
    }

    int valuation_;
    std::vector<T> coeffs_;

    template <typename U>
    friend LaurentJet<U> sqrt(const LaurentJet<U>& a);
    template <typename U>
    friend LaurentJet<U> exp(const LaurentJet<U>& a);
};

/// Square root with the principal branch on the leading coefficient.
template <typename T>
LaurentJet<T> sqrt(const LaurentJet<T>& a) {
    if (a.is_zero()) throw DegenerateExpansion("square root of the zero jet");
    if (a.valuation_ % 2 != 0)
        throw DegenerateExpansion("square root of a jet with odd valuation " + std::to_string(a.valuation_) +
                                  " (branch point)");
    const int order = a.order();
    std::vector<T> r(static_cast<std::size_t>(order) + 1, T{});
    r[0] = std::sqrt(a.coeffs_[0]);
    const T two_r0 = T{2} * r[0];
    for (int k = 1; k <= order; ++k) {
        T s = a.coeffs_[static_cast<std::size_t>(k)];
        for (int j = 1; j < k; ++j) s -= r[static_cast<std::size_t>(j)] * r[static_cast<std::size_t>(k - j)];
        r[static_cast<std::size_t>(k)] = s / two_r0;
    }
    return LaurentJet<T>(a.valuation_ / 2, std::move(r));
}

/// exp(c_0) times the exponential series of the positive-order part.
template <typename T>
LaurentJet<T> exp(const LaurentJet<T>& a) {
    const int order = a.order();
    if (a.is_zero()) return LaurentJet<T>::constant(T{1}, order);
    if (a.valuation_ < 0) throw DegenerateExpansion("exp of a jet with a pole (essential singularity)");
    // h[k] = coefficient of f^k, k = 0..order
    std::vector<T> h(static_cast<std::size_t>(order) + 1, T{});
    for (int k = 0; k <= order; ++k) h[static_cast<std::size_t>(k)] = a.coeff(k);
    std::vector<T> e(static_cast<std::size_t>(order) + 1, T{});
    e[0] = std::exp(h[0]);
    for (int k = 1; k <= order; ++k) {
        T s{};
        for (int j = 1; j <= k; ++j)
            s += static_cast<typename T::value_type>(j) * h[static_cast<std::size_t>(j)] * e[static_cast<std::size_t>(k - j)];
        e[static_cast<std::size_t>(k)] = s / static_cast<typename T::value_type>(k);
    }
    return LaurentJet<T>(0, std::move(e));
}

using Jet = LaurentJet<Complex>;

} // namespace hirota
