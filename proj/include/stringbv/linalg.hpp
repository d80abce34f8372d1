#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "stringbv/algebra.hpp"

namespace sbv {

/// Dense row-major matrix over F_p or Q.
class Matrix {
 public:
  Matrix(uint32_t p, std::size_t rows, std::size_t cols);

  uint32_t prime() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Scalar& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  /// Appends a row; the matrix must have zero rows or matching width.
  void push_row(const std::vector<Scalar>& row);

 private:
  uint32_t p_;
  std::size_t rows_, cols_;
  std::vector<Scalar> data_;
};

struct AffineSolution {
  std::vector<Scalar> particular;
  std::vector<std::vector<Scalar>> kernel;  // basis of {x : Ax = 0}
};

/// All solutions of A x = b, or nullopt if the system is inconsistent.
std::optional<AffineSolution> solve_affine(const Matrix& a, const std::vector<Scalar>& b);

std::size_t rank(const Matrix& a);

/// Coefficients c with sum_j c_j * columns[j] = target, or nullopt.
/// All nonzero inputs must be homogeneous of a single degree.
std::optional<std::vector<Scalar>> solve_linear(const AlgebraSpec& spec,
                                                const std::vector<Element>& columns,
                                                const Element& target);

/// Coordinates of e in the monomial list `basis` (throws if e has other terms).
std::vector<Scalar> coordinates(const Element& e, const std::vector<Monomial>& basis,
                                uint32_t p);

}  // namespace sbv
