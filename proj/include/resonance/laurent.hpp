#pragma once

#include <complex>
#include <map>

#include "resonance/lattice.hpp"

namespace resonance {

/// Finitely supported series f(z, w) = sum b_{m,n} z^m w^n, ordered
/// lexicographically by (m, n).
struct LaurentPolynomial {
  std::map<MonomialIndex, std::complex<double>> terms;

  static LaurentPolynomial monomial(MonomialIndex idx, std::complex<double> coeff = 1.0) {
    LaurentPolynomial p;
    p.terms.emplace(idx, coeff);
    return p;
  }

  std::complex<double> coefficient(MonomialIndex idx) const {
    const auto it = terms.find(idx);
    return it == terms.end() ? std::complex<double>{} : it->second;
  }
};

}  // namespace resonance
