#include <doctest.h>

#include <sstream>

#include "resonance/matrix.hpp"

using namespace resonance;
using Complex = std::complex<double>;

TEST_CASE("products and norms") {
  CMatrix a(2, 3);
  a(0, 0) = 1.0;
  a(0, 2) = Complex{0.0, 2.0};
  a(1, 1) = -3.0;
  CMatrix b(3, 1);
  b(0, 0) = 1.0;
  b(1, 0) = 1.0;
  b(2, 0) = 1.0;
  const CMatrix c = a * b;
  CHECK(c(0, 0) == Complex{1.0, 2.0});
  CHECK(c(1, 0) == Complex{-3.0, 0.0});
  CHECK(a.norm() == doctest::Approx(std::sqrt(14.0)));
  CHECK(a.max_abs() == 3.0);
  CHECK((CMatrix::identity(3) * b) == b);
  CHECK((a - a).max_abs() == 0.0);
  CHECK_THROWS_AS(a * a, std::invalid_argument);
}

TEST_CASE("binary round trip and layout") {
  CMatrix a(2, 2);
  a(0, 0) = Complex{1.5, -2.0};
  a(1, 0) = Complex{0.25, 0.0};
  std::stringstream ss;
  write_matrix_binary(ss, a);
  const std::string bytes = ss.str();
  CHECK(bytes.size() == 16 + 4 * 16);
  CHECK(static_cast<unsigned char>(bytes[0]) == 2);
  CHECK(static_cast<unsigned char>(bytes[8]) == 2);
  const CMatrix back = read_matrix_binary(ss);
  CHECK(back == a);
}

TEST_CASE("csv lists nonzero entries") {
  CMatrix a(2, 2);
  a(1, 0) = Complex{0.1, -1.0};
  std::ostringstream os;
  write_matrix_csv(os, a);
  CHECK(os.str() == "row,col,re,im\n1,0,0.10000000000000001,-1\n");
}
