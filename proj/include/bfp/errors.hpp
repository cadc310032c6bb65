#pragma once

#include <stdexcept>
#include <string>

namespace bfp {

// Raised when a matrix handed to spd_factorize is not positive definite.
// `pivot` is the 1-based index of the first non-positive diagonal pivot.
class FactorizationError : public std::runtime_error {
 public:
  FactorizationError(int pivot, const std::string& what)
      : std::runtime_error(what), pivot_(pivot) {}
  int pivot() const noexcept { return pivot_; }

 private:
  int pivot_;
};

// Raised when grid-doubling self-verification of a quadrature result moves
// the answer by more than the stability threshold.
class QuadratureAccuracyError : public std::runtime_error {
 public:
  QuadratureAccuracyError(double coarse, double fine, const std::string& what)
      : std::runtime_error(what), coarse_(coarse), fine_(fine) {}
  double coarse() const noexcept { return coarse_; }
  double fine() const noexcept { return fine_; }

 private:
  double coarse_;
  double fine_;
};

// Newton failed to converge, or the iterates diverged (quasi-separation).
class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// CSV ingestion problems: missing columns, unparseable cells, bad labels.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bfp
