#include "resonance/matrix.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace resonance {

namespace {

void put_u64(std::ostream& out, std::uint64_t v) {
  char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xffu);
  out.write(bytes, 8);
}

std::uint64_t get_u64(std::istream& in) {
  unsigned char bytes[8];
  if (!in.read(reinterpret_cast<char*>(bytes), 8)) {
    throw std::runtime_error("matrix binary: truncated input");
  }
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | bytes[i];
  return v;
}

}  // namespace

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = 1.0;
  return out;
}

double CMatrix::norm() const {
  double sum = 0.0;
  for (const auto& v : data_) sum += std::norm(v);
  return std::sqrt(sum);
}

double CMatrix::max_abs() const {
  double best = 0.0;
  for (const auto& v : data_) best = std::max(best, std::abs(v));
  return best;
}

CMatrix operator*(const CMatrix& lhs, const CMatrix& rhs) {
  if (lhs.cols() != rhs.rows()) throw std::invalid_argument("matrix product: dimension mismatch");
  CMatrix out(lhs.rows(), rhs.cols());
  for (std::size_t i = 0; i < lhs.rows(); ++i) {
    for (std::size_t k = 0; k < lhs.cols(); ++k) {
      const auto a = lhs(i, k);
      if (a == CMatrix::value_type{}) continue;
      for (std::size_t j = 0; j < rhs.cols(); ++j) out(i, j) += a * rhs(k, j);
    }
  }
  return out;
}

CMatrix operator-(const CMatrix& lhs, const CMatrix& rhs) {
  if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols()) {
    throw std::invalid_argument("matrix difference: dimension mismatch");
  }
  CMatrix out(lhs.rows(), lhs.cols());
  for (std::size_t i = 0; i < lhs.rows(); ++i) {
    for (std::size_t j = 0; j < lhs.cols(); ++j) out(i, j) = lhs(i, j) - rhs(i, j);
  }
  return out;
}

void write_matrix_binary(std::ostream& out, const CMatrix& matrix) {
  put_u64(out, matrix.rows());
  put_u64(out, matrix.cols());
  for (const auto& v : matrix.data()) {
    put_u64(out, std::bit_cast<std::uint64_t>(v.real()));
    put_u64(out, std::bit_cast<std::uint64_t>(v.imag()));
  }
}

CMatrix read_matrix_binary(std::istream& in) {
  const auto rows = get_u64(in);
  const auto cols = get_u64(in);
  CMatrix out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const double re = std::bit_cast<double>(get_u64(in));
      const double im = std::bit_cast<double>(get_u64(in));
      out(i, j) = {re, im};
    }
  }
  return out;
}

void write_matrix_csv(std::ostream& out, const CMatrix& matrix) {
  out << "row,col,re,im\n";
  char buf[96];
  for (std::size_t i = 0; i < matrix.rows(); ++i) {
    for (std::size_t j = 0; j < matrix.cols(); ++j) {
      const auto v = matrix(i, j);
      if (v == CMatrix::value_type{}) continue;
      std::snprintf(buf, sizeof buf, "%zu,%zu,%.17g,%.17g\n", i, j, v.real(), v.imag());
      out << buf;
    }
  }
}

}  // namespace resonance
