#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <tuple>
#include <vector>

namespace resonance {

using Complex = std::complex<double>;

/// Parameter of the Moebius factor b(z) = (z + lambda) / (1 + conj(lambda) z).
/// The modulus must be strictly below one.
class BlaschkeParam {
 public:
  BlaschkeParam() = default;
  explicit BlaschkeParam(Complex lambda);

  Complex value() const { return lambda_; }
  double modulus() const { return std::abs(lambda_); }
  bool is_zero() const { return lambda_ == Complex{}; }

 private:
  Complex lambda_{};
};

/// Taylor prefix alpha_{p,0..K} of b(z)^p about z = 0, for p >= 0.
///
/// Negative powers are not stored; their expansion about infinity uses
/// conj(alpha_{|p|,k}) as coefficient of z^{-k}.
struct BlaschkeCoefficients {
  BlaschkeParam param;
  std::int64_t power = 0;
  std::vector<Complex> coeffs;

  int order() const { return static_cast<int>(coeffs.size()) - 1; }
};

/// Truncated Cauchy product of two power series, keeping indices 0..order.
std::vector<Complex> truncated_product(std::span<const Complex> lhs, std::span<const Complex> rhs, int order);

/// Closed-form Taylor prefix of b(z) itself: lambda, then (-conj lambda)^{k-1} (1 - |lambda|^2).
std::vector<Complex> single_factor_series(const BlaschkeParam& param, int order);

/// alpha_{power,0..order}, by binary exponentiation of the single-factor
/// series with truncated products. Throws for negative power or order.
BlaschkeCoefficients blaschke_coefficients(const BlaschkeParam& param, std::int64_t power, int order);

/// M_{a,lambda} = max_{|z| = e^{-2a}} |b(z)| = (|lambda| + e^{-2a}) / (1 + e^{-2a} |lambda|).
double contraction_factor(const BlaschkeParam& param, double a);

/// sum_{k <= order} |alpha_{|p|,k}|^2 e^{-2ak}; bounded by contraction_factor^{|p|}.
double tail_energy(const BlaschkeParam& param, std::int64_t power, double a, int order);

/// Smallest K with M_{a,lambda}^K below exp(log_tolerance); log_tolerance < 0.
int suggest_order(const BlaschkeParam& param, double a, double log_tolerance);

/// Thread-safe memo of coefficient prefixes keyed by the exact bit pattern of
/// lambda, the power and the order.
class CoefficientCache {
 public:
  using Series = std::shared_ptr<const std::vector<Complex>>;

  explicit CoefficientCache(std::size_t capacity = 1 << 14) : capacity_(capacity) {}

  Series get(const BlaschkeParam& param, std::int64_t power, int order);
  std::size_t size() const;
  void clear();

  /// Process-wide instance used by the operator module.
  static CoefficientCache& global();

 private:
  using Key = std::tuple<std::uint64_t, std::uint64_t, std::int64_t, int>;

  mutable std::mutex mutex_;
  std::map<Key, Series> entries_;
  std::size_t capacity_;
};

}  // namespace resonance
