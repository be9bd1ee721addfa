#pragma once

#include <stdexcept>
#include <string>

namespace hirota {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A jet operation hit a point where the expansion is not representable
/// (zero divisor, odd valuation under a square root, pole under exp).
class DegenerateExpansion : public Error {
  public:
    using Error::Error;
};

/// A 3x3 inverse was requested for a matrix below the conditioning threshold.
class SingularMatrix : public Error {
  public:
    SingularMatrix(const std::string& what, double abs_det) : Error(what), abs_det_(abs_det) {}
    double abs_det() const noexcept { return abs_det_; }

  private:
    double abs_det_;
};

/// The vanishing coefficient of a generalized Darboux step was not small.
class SeriesCorruption : public Error {
  public:
    SeriesCorruption(const std::string& what, int step, double ratio)
        : Error(what), step_(step), ratio_(ratio) {}
    int step() const noexcept { return step_; }
    double ratio() const noexcept { return ratio_; }

  private:
    int step_;
    double ratio_;
};

/// Grid-level failure: bad shape, too few points, or a per-point engine
/// error re-raised with its coordinates.
class GridError : public Error {
  public:
    using Error::Error;
};

class InvalidParams : public Error {
  public:
    using Error::Error;
};

} // namespace hirota
