#pragma once

// Fixed-size 3-vectors and 3x3 matrices over complex scalars or jets.

#include <array>
#include <cmath>
#include <cstddef>
#include <ostream>
#include <sstream>
#include <utility>

#include "hirota/errors.hpp"
#include "hirota/numerics/complex.hpp"
#include "hirota/numerics/laurent_jet.hpp"

namespace hirota {

template <typename T>
struct Mat3;

template <typename T>
inline constexpr bool is_mat3_v = false;
template <typename T>
inline constexpr bool is_mat3_v<Mat3<T>> = true;

template <typename T>
struct Vec3 {
    std::array<T, 3> v;

    T& operator[](std::size_t i) noexcept { return v[i]; }
    const T& operator[](std::size_t i) const noexcept { return v[i]; }

    Vec3& operator+=(const Vec3& b) {
        for (std::size_t i = 0; i < 3; ++i) v[i] += b.v[i];
        return *this;
    }
    Vec3& operator-=(const Vec3& b) {
        for (std::size_t i = 0; i < 3; ++i) v[i] -= b.v[i];
        return *this;
    }
    template <typename S>
    Vec3& operator*=(const S& s) {
        for (auto& x : v) x *= s;
        return *this;
    }
    friend Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
    friend Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
    template <typename S>
        requires(!is_mat3_v<S>)
    friend Vec3 operator*(const S& s, Vec3 a) {
        return a *= s;
    }
};

/// Row-major 3x3 matrix.
template <typename T>
struct Mat3 {
    std::array<T, 9> a{};

    T& operator()(std::size_t r, std::size_t c) noexcept { return a[3 * r + c]; }
    const T& operator()(std::size_t r, std::size_t c) const noexcept { return a[3 * r + c]; }

    static Mat3 identity() {
        Mat3 m;
        m(0, 0) = m(1, 1) = m(2, 2) = T{1};
        return m;
    }
    static Mat3 diag(const T& d0, const T& d1, const T& d2) {
        Mat3 m;
        m(0, 0) = d0;
        m(1, 1) = d1;
        m(2, 2) = d2;
        return m;
    }

    Mat3& operator+=(const Mat3& b) {
        for (std::size_t i = 0; i < 9; ++i) a[i] += b.a[i];
        return *this;
    }
    Mat3& operator-=(const Mat3& b) {
        for (std::size_t i = 0; i < 9; ++i) a[i] -= b.a[i];
        return *this;
    }
    Mat3& operator*=(const T& s) {
        for (auto& x : a) x *= s;
        return *this;
    }
    friend Mat3 operator+(Mat3 x, const Mat3& y) { return x += y; }
    friend Mat3 operator-(Mat3 x, const Mat3& y) { return x -= y; }
    friend Mat3 operator*(const T& s, Mat3 x) { return x *= s; }
    friend Mat3 operator*(Mat3 x, const T& s) { return x *= s; }
    friend Mat3 operator/(Mat3 x, const T& s) {
        for (auto& e : x.a) e /= s;
        return x;
    }
};

using CVec3 = Vec3<Complex>;
using CMat3 = Mat3<Complex>;
using JetVec3 = Vec3<Jet>;

template <typename T>
Mat3<T> operator*(const Mat3<T>& x, const Mat3<T>& y) {
    Mat3<T> r;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) r(i, j) = x(i, 0) * y(0, j) + x(i, 1) * y(1, j) + x(i, 2) * y(2, j);
    return r;
}

/// Matrix-vector product; for jet vectors each entry is a jet linear combination.
template <typename T, typename U>
auto operator*(const Mat3<T>& m, const Vec3<U>& x) {
    Vec3<U> r;
    for (std::size_t i = 0; i < 3; ++i) r[i] = m(i, 0) * x[0] + m(i, 1) * x[1] + m(i, 2) * x[2];
    return r;
}

inline double norm_max(const CMat3& m) noexcept {
    double s = 0;
    for (const auto& e : m.a) s = std::max(s, std::abs(e));
    return s;
}

inline double norm2(const CVec3& x) noexcept { return std::norm(x[0]) + std::norm(x[1]) + std::norm(x[2]); }

inline double norm(const CVec3& x) noexcept { return std::sqrt(norm2(x)); }

inline Complex det(const CMat3& m) noexcept {
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

inline CMat3 conj_transpose(const CMat3& m) {
    CMat3 r;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) r(i, j) = std::conj(m(j, i));
    return r;
}

/// Default relative determinant threshold for `inverse`: |det M| must exceed
/// this times max|M_ij|^3.
inline constexpr double kDetThreshold = 1e-12;

/// Gauss-Jordan inverse with partial pivoting and one refinement step
/// X += X (I - M X). Throws SingularMatrix when |det M| <= rel_threshold * max|M_ij|^3.
inline CMat3 inverse(const CMat3& m, double rel_threshold = kDetThreshold) {
    const Complex d = det(m);
    const double scale = norm_max(m);
    if (!(std::abs(d) > rel_threshold * scale * scale * scale)) {
        std::ostringstream os;
        os << "3x3 matrix is numerically singular: |det| = " << std::abs(d) << ", max entry = " << scale;
        throw SingularMatrix(os.str(), std::abs(d));
    }
    CMat3 a = m, x = CMat3::identity();
    for (std::size_t c = 0; c < 3; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < 3; ++r)
            if (std::abs(a(r, c)) > std::abs(a(piv, c))) piv = r;
        if (piv != c)
            for (std::size_t k = 0; k < 3; ++k) {
                std::swap(a(c, k), a(piv, k));
                std::swap(x(c, k), x(piv, k));
            }
        const Complex inv_p = 1.0 / a(c, c);
        for (std::size_t k = 0; k < 3; ++k) {
            a(c, k) *= inv_p;
            x(c, k) *= inv_p;
        }
        for (std::size_t r = 0; r < 3; ++r) {
            if (r == c) continue;
            const Complex f = a(r, c);
            for (std::size_t k = 0; k < 3; ++k) {
                a(r, k) -= f * a(c, k);
                x(r, k) -= f * x(c, k);
            }
        }
    }
    return x + x * (CMat3::identity() - m * x);
}

template <typename T>
std::ostream& operator<<(std::ostream& os, const Vec3<T>& x) {
    return os << "(" << x[0] << ", " << x[1] << ", " << x[2] << ")";
}

inline std::ostream& operator<<(std::ostream& os, const CMat3& m) {
    for (std::size_t i = 0; i < 3; ++i) os << (i ? "; " : "[") << m(i, 0) << " " << m(i, 1) << " " << m(i, 2);
    return os << "]";
}

} // namespace hirota
