#pragma once

#include <cmath>
#include <complex>

namespace hirota {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

inline bool is_finite(const Complex& z) noexcept { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

} // namespace hirota
