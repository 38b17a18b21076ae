#include "resonance/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace resonance {

namespace {

using Complex = std::complex<double>;

double abs1(Complex z) { return std::abs(z.real()) + std::abs(z.imag()); }

// Parlett-Reinsch diagonal scaling by powers of two, so the similarity
// transform is exact in floating point.
void balance(CMatrix& a) {
  const std::size_t n = a.rows();
  constexpr double radix = 2.0;
  bool converged = false;
  while (!converged) {
    converged = true;
    for (std::size_t i = 0; i < n; ++i) {
      double c = 0.0;
      double r = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        c += abs1(a(j, i));
        r += abs1(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      const double s = c + r;
      double f = 1.0;
      double g = r / radix;
      while (c < g) {
        f *= radix;
        c *= radix * radix;
      }
      g = r * radix;
      while (c >= g) {
        f /= radix;
        c /= radix * radix;
      }
      if ((c + r) / f < 0.95 * s) {
        converged = false;
        const double inv = 1.0 / f;
        for (std::size_t j = 0; j < n; ++j) a(i, j) *= inv;
        for (std::size_t j = 0; j < n; ++j) a(j, i) *= f;
      }
    }
  }
}

void reduce_to_hessenberg(CMatrix& a) {
  const std::size_t n = a.rows();
  if (n < 3) return;
  std::vector<Complex> v(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double scale = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) scale += abs1(a(i, k));
    if (scale == 0.0) continue;
    double norm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) {
      v[i] = a(i, k) / scale;
      norm2 += std::norm(v[i]);
    }
    const double xnorm = std::sqrt(norm2);
    const Complex x0 = v[k + 1];
    const Complex phase = std::abs(x0) == 0.0 ? Complex{1.0} : x0 / std::abs(x0);
    const Complex alpha = -phase * xnorm;
    v[k + 1] -= alpha;
    double vnorm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) vnorm2 += std::norm(v[i]);
    if (vnorm2 == 0.0) continue;
    const double beta = 2.0 / vnorm2;

    // A <- (I - beta v v^H) A
    for (std::size_t j = k; j < n; ++j) {
      Complex dot{};
      for (std::size_t i = k + 1; i < n; ++i) dot += std::conj(v[i]) * a(i, j);
      dot *= beta;
      for (std::size_t i = k + 1; i < n; ++i) a(i, j) -= v[i] * dot;
    }
    // A <- A (I - beta v v^H)
    for (std::size_t i = 0; i < n; ++i) {
      Complex dot{};
      for (std::size_t j = k + 1; j < n; ++j) dot += a(i, j) * v[j];
      dot *= beta;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= dot * std::conj(v[j]);
    }
    a(k + 1, k) = alpha * scale;
    for (std::size_t i = k + 2; i < n; ++i) a(i, k) = Complex{};
  }
}

struct Givens {
  double c = 1.0;
  Complex s{};
};

// [c s; -conj(s) c] [x; y] = [r; 0]
Givens make_givens(Complex x, Complex y) {
  if (y == Complex{}) return {1.0, Complex{}};
  if (x == Complex{}) return {0.0, std::conj(y) / std::abs(y)};
  const double ax = std::abs(x);
  const double nrm = std::hypot(ax, std::abs(y));
  return {ax / nrm, (x / ax) * std::conj(y) / nrm};
}

Complex wilkinson_shift(Complex a, Complex b, Complex c, Complex d) {
  const Complex half = 0.5 * (a - d);
  const Complex disc = std::sqrt(half * half + b * c);
  // Eigenvalues of [[a, b], [c, d]] are (a+d)/2 +- disc, and (a+d)/2 = d + half.
  const Complex r1 = d + half + disc;
  const Complex r2 = d + half - disc;
  return std::abs(r1 - d) <= std::abs(r2 - d) ? r1 : r2;
}

// Permutation step of LAPACK-style balancing: repeatedly removes an index
// whose row or column has no off-diagonal nonzero inside the remaining set.
// Its diagonal entry is then an exact eigenvalue. Returns the indices left.
std::vector<std::size_t> isolate_eigenvalues(const CMatrix& a, std::vector<Complex>& isolated) {
  const std::size_t n = a.rows();
  std::vector<std::size_t> row_count(n, 0), col_count(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && a(i, j) != Complex{}) {
        ++row_count[i];
        ++col_count[j];
      }
    }
  }
  std::vector<bool> active(n, true);
  std::vector<std::size_t> queue;
  for (std::size_t i = 0; i < n; ++i) {
    if (row_count[i] == 0 || col_count[i] == 0) queue.push_back(i);
  }
  while (!queue.empty()) {
    const std::size_t i = queue.back();
    queue.pop_back();
    if (!active[i]) continue;
    active[i] = false;
    isolated.push_back(a(i, i));
    for (std::size_t j = 0; j < n; ++j) {
      if (!active[j] || j == i) continue;
      if (a(j, i) != Complex{} && --row_count[j] == 0) queue.push_back(j);
      if (a(i, j) != Complex{} && --col_count[j] == 0) queue.push_back(j);
    }
  }
  std::vector<std::size_t> core;
  for (std::size_t i = 0; i < n; ++i) {
    if (active[i]) core.push_back(i);
  }
  return core;
}

std::vector<Complex> qr_eigenvalues(CMatrix h, const EigensolverOptions& options);

}  // namespace

std::vector<Complex> dense_eigenvalues(const CMatrix& matrix, const EigensolverOptions& options) {
  if (!matrix.square()) throw std::invalid_argument("dense_eigenvalues: matrix must be square");
  const std::size_t n = matrix.rows();
  if (n > options.max_dim) {
    throw std::invalid_argument("dense_eigenvalues: dimension " + std::to_string(n) + " exceeds cap " +
                                std::to_string(options.max_dim));
  }
  for (const auto& v : matrix.data()) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw std::invalid_argument("dense_eigenvalues: non-finite entry");
    }
  }
  std::vector<Complex> isolated;
  std::vector<std::size_t> core;
  if (options.balance) {
    core = isolate_eigenvalues(matrix, isolated);
  } else {
    for (std::size_t i = 0; i < n; ++i) core.push_back(i);
  }
  CMatrix h(core.size(), core.size());
  for (std::size_t i = 0; i < core.size(); ++i) {
    for (std::size_t j = 0; j < core.size(); ++j) h(i, j) = matrix(core[i], core[j]);
  }
  std::vector<Complex> eig = qr_eigenvalues(std::move(h), options);
  eig.insert(eig.end(), isolated.begin(), isolated.end());
  return eig;
}

namespace {

std::vector<Complex> qr_eigenvalues(CMatrix h, const EigensolverOptions& options) {
  const std::size_t n = h.rows();
  std::vector<Complex> eig(n);
  if (n == 0) return eig;
  if (options.balance) balance(h);
  reduce_to_hessenberg(h);

  const double eps = std::numeric_limits<double>::epsilon();
  const double small = std::numeric_limits<double>::min() / eps;
  const double hnorm = h.norm();
  const std::size_t cap = options.iteration_factor * n;
  std::size_t total = 0;
  std::size_t stalled = 0;

  std::vector<Givens> rot(n);
  std::ptrdiff_t hi = static_cast<std::ptrdiff_t>(n) - 1;
  while (hi >= 0) {
    std::ptrdiff_t lo = hi;
    while (lo > 0) {
      const double sub = abs1(h(lo, lo - 1));
      double diag = abs1(h(lo, lo)) + abs1(h(lo - 1, lo - 1));
      if (diag == 0.0) diag = hnorm;
      if (sub <= eps * diag || sub <= eps * hnorm || sub <= small) {
        h(lo, lo - 1) = Complex{};
        break;
      }
      --lo;
    }
    if (lo == hi) {
      eig[hi] = h(hi, hi);
      --hi;
      stalled = 0;
      continue;
    }
    if (total >= cap) {
      throw EigensolverError("dense_eigenvalues: shifted QR did not converge within " + std::to_string(cap) +
                                 " iterations (unreduced block of order " + std::to_string(hi - lo + 1) + ")",
                             static_cast<std::size_t>(hi - lo + 1));
    }
    ++total;
    ++stalled;

    Complex mu;
    if (stalled % options.exceptional_every == 0) {
      double s = abs1(h(hi, hi - 1));
      if (hi - 1 > lo) s += abs1(h(hi - 1, hi - 2));
      mu = h(hi, hi) + 0.75 * s;
    } else {
      mu = wilkinson_shift(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi));
    }

    for (std::ptrdiff_t k = lo; k <= hi; ++k) h(k, k) -= mu;
    // QR factorisation of the active block by Givens rotations.
    for (std::ptrdiff_t k = lo; k < hi; ++k) {
      const Givens g = make_givens(h(k, k), h(k + 1, k));
      rot[k] = g;
      for (std::ptrdiff_t j = k; j <= hi; ++j) {
        const Complex x = h(k, j);
        const Complex y = h(k + 1, j);
        h(k, j) = g.c * x + g.s * y;
        h(k + 1, j) = -std::conj(g.s) * x + g.c * y;
      }
    }
    // R Q: apply the adjoint rotations from the right.
    for (std::ptrdiff_t k = lo; k < hi; ++k) {
      const Givens g = rot[k];
      for (std::ptrdiff_t i = lo; i <= std::min(k + 1, hi); ++i) {
        const Complex x = h(i, k);
        const Complex y = h(i, k + 1);
        h(i, k) = x * g.c + y * std::conj(g.s);
        h(i, k + 1) = -x * g.s + y * g.c;
      }
    }
    for (std::ptrdiff_t k = lo; k <= hi; ++k) h(k, k) += mu;
  }
  return eig;
}

}  // namespace

std::vector<double> singular_values(const CMatrix& matrix) {
  const std::size_t rows = matrix.rows();
  const std::size_t cols = matrix.cols();
  // Column-major working copy.
  std::vector<std::vector<Complex>> col(cols, std::vector<Complex>(rows));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) col[j][i] = matrix(i, j);
  }
  const double eps = std::numeric_limits<double>::epsilon();
  for (int sweep = 0; sweep < 80; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < cols; ++p) {
      for (std::size_t q = p + 1; q < cols; ++q) {
        double alpha = 0.0;
        double beta = 0.0;
        Complex gamma{};
        for (std::size_t i = 0; i < rows; ++i) {
          alpha += std::norm(col[p][i]);
          beta += std::norm(col[q][i]);
          gamma += std::conj(col[p][i]) * col[q][i];
        }
        const double g = std::abs(gamma);
        if (g == 0.0 || g <= eps * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const Complex phase = gamma / g;
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < rows; ++i) {
          const Complex x = col[p][i];
          const Complex y = col[q][i] / phase;
          col[p][i] = c * x - s * y;
          col[q][i] = (s * x + c * y) * phase;
        }
      }
    }
    if (!rotated) break;
  }
  std::vector<double> sv(cols);
  for (std::size_t j = 0; j < cols; ++j) {
    double sum = 0.0;
    for (const auto& v : col[j]) sum += std::norm(v);
    sv[j] = std::sqrt(sum);
  }
  std::sort(sv.begin(), sv.end(), std::greater<>());
  if (sv.size() > rows) sv.resize(rows);
  return sv;
}

std::size_t numerical_rank(const CMatrix& matrix, double rel_tol) {
  const auto sv = singular_values(matrix);
  if (sv.empty() || sv.front() == 0.0) return 0;
  const double cutoff = rel_tol * sv.front();
  return static_cast<std::size_t>(std::count_if(sv.begin(), sv.end(), [cutoff](double s) { return s > cutoff; }));
}

}  // namespace resonance
