#include "resonance/blaschke.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace resonance {

BlaschkeParam::BlaschkeParam(Complex lambda) : lambda_(lambda) {
  if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag())) {
    throw std::invalid_argument("Blaschke parameter must be finite");
  }
  if (!(std::abs(lambda) < 1.0)) {
    throw std::invalid_argument("Blaschke parameter must satisfy |lambda| < 1, got |lambda| = " +
                                std::to_string(std::abs(lambda)));
  }
}

std::vector<Complex> truncated_product(std::span<const Complex> lhs, std::span<const Complex> rhs, int order) {
  std::vector<Complex> out(static_cast<std::size_t>(order) + 1, Complex{});
  const int lmax = std::min<int>(order, static_cast<int>(lhs.size()) - 1);
  for (int i = 0; i <= lmax; ++i) {
    if (lhs[i] == Complex{}) continue;
    const int rmax = std::min<int>(order - i, static_cast<int>(rhs.size()) - 1);
    for (int j = 0; j <= rmax; ++j) {
      out[i + j] += lhs[i] * rhs[j];
    }
  }
  return out;
}

std::vector<Complex> single_factor_series(const BlaschkeParam& param, int order) {
  const Complex lambda = param.value();
  std::vector<Complex> out(static_cast<std::size_t>(order) + 1, Complex{});
  out[0] = lambda;
  if (order >= 1) {
    const Complex ratio = -std::conj(lambda);
    Complex term = 1.0 - std::norm(lambda);
    for (int k = 1; k <= order; ++k) {
      out[k] = term;
      term *= ratio;
    }
  }
  return out;
}

BlaschkeCoefficients blaschke_coefficients(const BlaschkeParam& param, std::int64_t power, int order) {
  if (power < 0) {
    throw std::invalid_argument("blaschke_coefficients: power must be non-negative");
  }
  if (order < 0) {
    throw std::invalid_argument("blaschke_coefficients: order must be non-negative");
  }
  std::vector<Complex> result(static_cast<std::size_t>(order) + 1, Complex{});
  result[0] = 1.0;
  std::vector<Complex> base = single_factor_series(param, order);
  for (std::int64_t p = power; p > 0; p >>= 1) {
    if (p & 1) result = truncated_product(result, base, order);
    if (p > 1) base = truncated_product(base, base, order);
  }
  return BlaschkeCoefficients{param, power, std::move(result)};
}

double contraction_factor(const BlaschkeParam& param, double a) {
  if (!(a > 0.0)) {
    throw std::invalid_argument("contraction_factor: a must be positive");
  }
  const double r = std::exp(-2.0 * a);
  const double mod = param.modulus();
  return (mod + r) / (1.0 + r * mod);
}

double tail_energy(const BlaschkeParam& param, std::int64_t power, double a, int order) {
  if (!(a > 0.0)) {
    throw std::invalid_argument("tail_energy: a must be positive");
  }
  const auto coeffs = blaschke_coefficients(param, power < 0 ? -power : power, order);
  const double decay = std::exp(-2.0 * a);
  double scale = 1.0;
  double sum = 0.0;
  for (const Complex& c : coeffs.coeffs) {
    sum += std::norm(c) * scale;
    scale *= decay;
  }
  return sum;
}

int suggest_order(const BlaschkeParam& param, double a, double log_tolerance) {
  if (!(log_tolerance < 0.0)) {
    throw std::invalid_argument("suggest_order: log_tolerance must be negative");
  }
  const double log_m = std::log(contraction_factor(param, a));
  return static_cast<int>(std::ceil(log_tolerance / log_m));
}

CoefficientCache::Series CoefficientCache::get(const BlaschkeParam& param, std::int64_t power, int order) {
  const Key key{std::bit_cast<std::uint64_t>(param.value().real()), std::bit_cast<std::uint64_t>(param.value().imag()),
                power, order};
  {
    std::lock_guard lock(mutex_);
    if (auto it = entries_.find(key); it != entries_.end()) return it->second;
  }
  auto series = std::make_shared<const std::vector<Complex>>(blaschke_coefficients(param, power, order).coeffs);
  std::lock_guard lock(mutex_);
  if (entries_.size() >= capacity_) entries_.clear();
  // A concurrent insert of the same key computed the identical series.
  return entries_.emplace(key, std::move(series)).first->second;
}

std::size_t CoefficientCache::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

void CoefficientCache::clear() {
  std::lock_guard lock(mutex_);
  entries_.clear();
}

CoefficientCache& CoefficientCache::global() {
  static CoefficientCache cache;
  return cache;
}

}  // namespace resonance
