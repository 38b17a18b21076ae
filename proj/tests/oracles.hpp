#pragma once

// Reference computations that share no code with the library: binomial
// sums, torus-grid Fourier transforms of the point maps, brute-force lattice
// scans and simple multiset comparison.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;
using LComplex = std::complex<long double>;

// Quad-precision complex arithmetic: the binomial double sum below cancels
// heavily for large k, so double or long double would not do.
struct QComplex {
  __float128 re = 0;
  __float128 im = 0;
};

inline QComplex operator+(QComplex a, QComplex b) { return {a.re + b.re, a.im + b.im}; }
inline QComplex operator*(QComplex a, QComplex b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
inline QComplex operator*(__float128 s, QComplex a) { return {s * a.re, s * a.im}; }

inline __float128 qbinom(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  __float128 r = 1;
  for (long long i = 1; i <= k; ++i) r = r * static_cast<__float128>(n - k + i) / static_cast<__float128>(i);
  return r;
}

inline QComplex qpow(QComplex z, long long e) {
  QComplex r{1, 0};
  for (long long i = 0; i < e; ++i) r = r * z;
  return r;
}

/// alpha_{p,k} from (z+l)^p (1+conj(l) z)^{-p} = sum_j C(p,j) l^{p-j} z^j * sum_i C(p+i-1,i) (-conj l)^i z^i.
inline Complex binomial_alpha(Complex lambda, long long p, long long k) {
  if (p == 0) return k == 0 ? Complex{1.0} : Complex{};
  const QComplex l{lambda.real(), lambda.imag()};
  const QComplex minus_conj{-l.re, l.im};
  QComplex sum{};
  for (long long j = 0; j <= std::min(p, k); ++j) {
    const long long i = k - j;
    sum = sum + (qbinom(p, j) * qbinom(p + i - 1, i)) * (qpow(l, p - j) * qpow(minus_conj, i));
  }
  return {static_cast<double>(sum.re), static_cast<double>(sum.im)};
}

/// Taylor coefficients of f on the unit circle by an N-point DFT.
inline std::vector<Complex> circle_dft(const std::function<Complex(Complex)>& f, int K, int N = 4096) {
  std::vector<Complex> samples(N);
  for (int s = 0; s < N; ++s) samples[s] = f(std::polar(1.0, 2.0 * std::numbers::pi * s / N));
  std::vector<Complex> out(K + 1);
  for (int k = 0; k <= K; ++k) {
    Complex acc{};
    for (int s = 0; s < N; ++s) acc += samples[s] * std::polar(1.0, -2.0 * std::numbers::pi * k * s / N);
    out[k] = acc / static_cast<double>(N);
  }
  return out;
}

inline Complex blaschke(Complex lambda, Complex z) { return (z + lambda) / (1.0 + std::conj(lambda) * z); }

using PointMap = std::function<std::pair<Complex, Complex>(Complex, Complex)>;

// The torus maps written directly as point maps.
inline PointMap map_B(Complex l) {
  return [l](Complex z, Complex w) { return std::pair{z * blaschke(l, z) * w, blaschke(l, z) * w}; };
}
inline PointMap map_T(Complex l) {
  return [l](Complex z, Complex w) { return std::pair{blaschke(l, z) * w, z}; };
}
inline PointMap map_TK(Complex l, int K) {
  return [l, K](Complex z, Complex w) { return std::pair{std::pow(blaschke(l, z), K) * w, z}; };
}
inline PointMap map_BK(Complex l, int K) {
  return [l, K](Complex z, Complex w) {
    const Complex b = blaschke(l, z);
    return std::pair{std::pow(b, K * K + 1) * std::pow(w, K), std::pow(b, K) * w};
  };
}
/// (F o G)(z, w) = F(G(z, w)).
inline PointMap compose(PointMap F, PointMap G) {
  return [F, G](Complex z, Complex w) {
    const auto [u, v] = G(z, w);
    return F(u, v);
  };
}

/// Fourier coefficients of e_{m,n} o F on an N x N torus grid.
class TorusDft {
 public:
  TorusDft(const PointMap& F, int m, int n, int N = 256)
      : N_(N), values_(static_cast<std::size_t>(N) * N), twiddle_(N) {
    for (int s = 0; s < N; ++s) twiddle_[s] = std::polar(1.0, -2.0 * std::numbers::pi * s / N);
    for (int a = 0; a < N; ++a) {
      const Complex z = std::polar(1.0, 2.0 * std::numbers::pi * a / N);
      for (int b = 0; b < N; ++b) {
        const Complex w = std::polar(1.0, 2.0 * std::numbers::pi * b / N);
        const auto [u, v] = F(z, w);
        values_[static_cast<std::size_t>(a) * N + b] = std::pow(u, m) * std::pow(v, n);
      }
    }
  }

  Complex coefficient(int p, int q) const {
    const auto wrap = [this](long long x) { return static_cast<std::size_t>(((x % N_) + N_) % N_); };
    // Separable sum: first over w (cached per q), then over z.
    auto it = rows_.find(wrap(q));
    if (it == rows_.end()) {
      std::vector<Complex> rows(N_);
      for (int a = 0; a < N_; ++a) {
        for (int b = 0; b < N_; ++b) rows[a] += values_[static_cast<std::size_t>(a) * N_ + b] * twiddle_[wrap(1LL * q * b)];
      }
      it = rows_.emplace(wrap(q), std::move(rows)).first;
    }
    Complex acc{};
    for (int a = 0; a < N_; ++a) acc += it->second[a] * twiddle_[wrap(1LL * p * a)];
    return acc / static_cast<double>(N_) / static_cast<double>(N_);
  }

 private:
  int N_;
  std::vector<Complex> values_;
  std::vector<Complex> twiddle_;
  mutable std::map<std::size_t, std::vector<Complex>> rows_;
};

/// All (m, n) with |m|, |n| <= R and the given predicate, lexicographic.
template <class Pred>
std::vector<std::pair<int, int>> lattice_scan(int R, Pred pred) {
  std::vector<std::pair<int, int>> out;
  for (int m = -R; m <= R; ++m) {
    for (int n = -R; n <= R; ++n) {
      if (pred(m, n)) out.emplace_back(m, n);
    }
  }
  return out;
}

inline int ref_deg1(int m, int n) {
  const long long mn = static_cast<long long>(m) * n;
  return (mn >= 0 ? 1 : -1) * (std::abs(m) + std::abs(n));
}

struct MultisetComparison {
  std::size_t unmatched_left = 0;
  std::size_t unmatched_right = 0;
  double max_distance = 0.0;
};

/// Greedy closest-pair matching of two value lists within tol.
inline MultisetComparison compare_multisets(const std::vector<Complex>& left, const std::vector<Complex>& right,
                                            double tol) {
  std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < left.size(); ++i) {
    for (std::size_t j = 0; j < right.size(); ++j) {
      const double d = std::abs(left[i] - right[j]);
      if (d <= tol) pairs.emplace_back(d, i, j);
    }
  }
  std::sort(pairs.begin(), pairs.end());
  std::vector<bool> ul(left.size()), ur(right.size());
  MultisetComparison out;
  std::size_t matched = 0;
  for (const auto& [d, i, j] : pairs) {
    if (ul[i] || ur[j]) continue;
    ul[i] = ur[j] = true;
    ++matched;
    out.max_distance = std::max(out.max_distance, d);
  }
  out.unmatched_left = left.size() - matched;
  out.unmatched_right = right.size() - matched;
  return out;
}

/// max over N equispaced points of |b(z)| on |z| = r.
inline double sampled_circle_max(Complex lambda, double r, int N) {
  double best = 0.0;
  for (int s = 0; s < N; ++s) {
    best = std::max(best, std::abs(blaschke(lambda, std::polar(r, 2.0 * std::numbers::pi * s / N))));
  }
  return best;
}

inline Complex random_in_disk(std::mt19937_64& rng, double max_modulus) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return std::polar(max_modulus * std::sqrt(u(rng)), 2.0 * std::numbers::pi * u(rng));
}

}  // namespace oracle
