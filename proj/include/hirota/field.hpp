#pragma once

// Uniform rectangular (x, t) grids and complex fields stored on them.
// Storage is x-major: index (i, j) sits at x_i, t_j and offset i * nt + j.

#include <cmath>
#include <cstddef>
#include <vector>

#include "hirota/errors.hpp"
#include "hirota/numerics/complex.hpp"

namespace hirota {

struct GridSpec {
    double xmin = -10.0, xmax = 10.0;
    int nx = 101;
    double tmin = -5.0, tmax = 5.0;
    int nt = 101;

    void validate() const {
        if (nx < 2 || nt < 2) throw GridError("grid needs at least 2 points per axis");
        if (!(xmin < xmax) || !(tmin < tmax)) throw GridError("grid bounds must satisfy min < max");
        if (!std::isfinite(xmin) || !std::isfinite(xmax) || !std::isfinite(tmin) || !std::isfinite(tmax))
            throw GridError("grid bounds must be finite");
    }

    double hx() const noexcept { return (xmax - xmin) / (nx - 1); }
    double ht() const noexcept { return (tmax - tmin) / (nt - 1); }
    double x(int i) const noexcept { return i == nx - 1 ? xmax : xmin + i * hx(); }
    double t(int j) const noexcept { return j == nt - 1 ? tmax : tmin + j * ht(); }
    std::size_t size() const noexcept { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(nt); }

    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Grid centred on (x0, t0) with half-widths (lx, lt) and spacing h on both axes.
inline GridSpec centred_grid(double x0, double t0, double lx, double lt, double h) {
    GridSpec g;
    const int mx = static_cast<int>(std::lround(lx / h));
    const int mt = static_cast<int>(std::lround(lt / h));
    g.xmin = x0 - mx * h;
    g.xmax = x0 + mx * h;
    g.nx = 2 * mx + 1;
    g.tmin = t0 - mt * h;
    g.tmax = t0 + mt * h;
    g.nt = 2 * mt + 1;
    return g;
}

template <typename T>
class Field {
  public:
    Field() = default;
    explicit Field(const GridSpec& spec) : spec_(spec), data_(spec.size()) { spec.validate(); }

    const GridSpec& spec() const noexcept { return spec_; }
    int nx() const noexcept { return spec_.nx; }
    int nt() const noexcept { return spec_.nt; }

    T& operator()(int i, int j) noexcept { return data_[static_cast<std::size_t>(i) * spec_.nt + j]; }
    const T& operator()(int i, int j) const noexcept { return data_[static_cast<std::size_t>(i) * spec_.nt + j]; }

    std::vector<T>& data() noexcept { return data_; }
    const std::vector<T>& data() const noexcept { return data_; }

  private:
    GridSpec spec_{};
    std::vector<T> data_;
};

using ComplexField = Field<Complex>;
using RealField = Field<double>;

inline RealField modulus(const ComplexField& f) {
    RealField m(f.spec());
    for (std::size_t k = 0; k < f.data().size(); ++k) m.data()[k] = std::abs(f.data()[k]);
    return m;
}

/// Samples `fn(x, t)` on every grid node, x outer.
template <typename Fn>
ComplexField sample(const GridSpec& g, Fn&& fn) {
    ComplexField f(g);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.nt; ++j) f(i, j) = fn(g.x(i), g.t(j));
    return f;
}

} // namespace hirota
