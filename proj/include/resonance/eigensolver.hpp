#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "resonance/matrix.hpp"

namespace resonance {

/// Raised when shifted QR exhausts its iteration budget.
class EigensolverError : public std::runtime_error {
 public:
  EigensolverError(const std::string& what, std::size_t submatrix_size)
      : std::runtime_error(what), submatrix_size_(submatrix_size) {}

  /// Order of the unreduced Hessenberg block that failed to converge.
  std::size_t submatrix_size() const { return submatrix_size_; }

 private:
  std::size_t submatrix_size_;
};

struct EigensolverOptions {
  std::size_t max_dim = 2000;
  /// Total QR sweeps allowed is iteration_factor * dim.
  std::size_t iteration_factor = 30;
  /// An exceptional shift replaces the Wilkinson shift after this many
  /// sweeps without a deflation.
  std::size_t exceptional_every = 10;
  /// Isolate eigenvalues exposed by zero patterns, then scale the rest.
  bool balance = true;
};

/// All eigenvalues of a square complex matrix: permutation and diagonal
/// balancing, Householder reduction to Hessenberg form, then single-shift
/// complex QR with deflation. Deterministic for a fixed input.
std::vector<std::complex<double>> dense_eigenvalues(const CMatrix& matrix, const EigensolverOptions& options = {});

/// Singular values in descending order (one-sided Jacobi).
std::vector<double> singular_values(const CMatrix& matrix);

/// Number of singular values above rel_tol times the largest one.
std::size_t numerical_rank(const CMatrix& matrix, double rel_tol);

}  // namespace resonance
