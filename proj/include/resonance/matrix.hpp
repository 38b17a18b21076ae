#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <vector>

namespace resonance {

/// Dense row-major complex matrix.
class CMatrix {
 public:
  using value_type = std::complex<double>;

  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static CMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  value_type& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const value_type& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<value_type>& data() const { return data_; }

  /// Frobenius norm.
  double norm() const;
  double max_abs() const;

  friend bool operator==(const CMatrix&, const CMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<value_type> data_;
};

CMatrix operator*(const CMatrix& lhs, const CMatrix& rhs);
CMatrix operator-(const CMatrix& lhs, const CMatrix& rhs);

/// Binary layout: u64 rows, u64 cols (little-endian), then rows*cols pairs of
/// little-endian f64 (re, im) in row-major order.
void write_matrix_binary(std::ostream& out, const CMatrix& matrix);
CMatrix read_matrix_binary(std::istream& in);

/// CSV rows "row,col,re,im" for every nonzero entry, with a header line.
void write_matrix_csv(std::ostream& out, const CMatrix& matrix);

}  // namespace resonance
