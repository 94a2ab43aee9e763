#pragma once

// Dense exact matrices and fraction-free determinants.

#include "giwa/bigint.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace giwa {

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using BigMatrix = DenseMatrix<BigInt>;
using Index = Eigen::Index;

/// Determinant by Bareiss fraction-free elimination with row pivoting.
///
/// Every intermediate entry is a minor of the input, so each division is
/// exact in any integral domain (integers, or exact rationals). Works on a
/// copy; the input is untouched.
template <typename Derived>
typename Derived::Scalar bareiss_determinant(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  if (input.rows() != input.cols()) throw std::invalid_argument("bareiss_determinant: matrix is not square");
  const Index n = input.rows();
  if (n == 0) return Scalar(1);

  DenseMatrix<Scalar> m = input;
  Scalar previous(1);
  bool negate = false;

  for (Index k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      Index pivot = k + 1;
      while (pivot < n && m(pivot, k) == 0) ++pivot;
      if (pivot == n) return Scalar(0);
      m.row(k).swap(m.row(pivot));
      negate = !negate;
    }
    const Scalar& p = m(k, k);
    for (Index i = k + 1; i < n; ++i) {
      const Scalar& lead = m(i, k);
      for (Index j = k + 1; j < n; ++j) {
        Scalar t = m(i, j) * p;
        t -= lead * m(k, j);
        if constexpr (std::is_same_v<Scalar, BigInt>) {
          mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), previous.get_mpz_t());
          m(i, j) = std::move(t);
        } else {
          m(i, j) = t / previous;
        }
      }
    }
    previous = m(k, k);
  }
  Scalar det = m(n - 1, n - 1);
  if (negate) det = -det;
  return det;
}

/// Largest |i - j| over nonzero entries.
template <typename Derived>
Index half_bandwidth(const Eigen::MatrixBase<Derived>& m) {
  Index w = 0;
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) w = std::max(w, i > j ? i - j : j - i);
  return w;
}

/// Sparse symmetric integer matrix given as (row, col, value) triples with
/// both (i, j) and (j, i) present for off-diagonal entries.
struct SymmetricSparse {
  Index size = 0;
  std::vector<std::vector<std::pair<Index, BigInt>>> rows;  // sorted by column
};

/// Determinant of a symmetric positive-definite integer matrix of half
/// bandwidth `w`, by Bareiss elimination restricted to a sliding
/// (w+1)x(w+1) window. No pivoting: every leading principal minor of a
/// positive-definite matrix is positive. Entries entering the window are
/// pre-scaled by the previous pivot, which reproduces what full Bareiss
/// would have done to them while they were outside the band.
///
/// Throws std::domain_error when a pivot vanishes (matrix not definite).
BigInt banded_spd_determinant(const SymmetricSparse& matrix, Index w);

}  // namespace giwa
