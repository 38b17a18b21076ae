#include "resonance/composition_operator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>

namespace resonance {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_positive_k(int K) {
  if (K < 1) throw std::invalid_argument("map: K must be >= 1, got " + std::to_string(K));
}

int checked_int(long long v) {
  if (v > std::numeric_limits<int>::max() || v < std::numeric_limits<int>::min()) {
    throw std::overflow_error("lattice index out of int range");
  }
  return static_cast<int>(v);
}

std::string format_complex(Complex z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.6g%+.6gi", z.real(), z.imag());
  return buf;
}

Complex family_coefficient(const std::vector<Complex>& alpha, std::int64_t power, long long j) {
  const Complex c = alpha[static_cast<std::size_t>(j)];
  return power < 0 ? std::conj(c) : c;
}

std::vector<Complex> coefficients_for(const BlaschkeParam& param, std::int64_t power, long long order) {
  const auto series = CoefficientCache::global().get(param, power < 0 ? -power : power, checked_int(order));
  return *series;
}

// Upper bound on the norm of sum_{j > order} alpha_j e_{target(j)}.
double tail_bound(const ExpansionFamily& fam, const BlaschkeParam& param, const std::vector<Complex>& alpha,
                  const std::optional<SpaceConfig>& cfg) {
  if (fam.single) return 0.0;
  const long long order = static_cast<long long>(alpha.size()) - 1;
  const long long P = fam.power < 0 ? -fam.power : fam.power;
  const double a = cfg ? cfg->a() : 0.0;

  double log_cw = 0.0;
  if (cfg) {
    if (cfg->family() == WeightFamily::kSymmetricFR) {
      log_cw = 2.0 * a * std::abs(static_cast<double>(fam.second)) + a * std::abs(static_cast<double>(fam.start));
    } else {
      const bool monotone = fam.second == 0 || fam.sigma == lattice_sign(fam.second);
      if (!monotone) return kInf;
      const long long next = order + 1;
      const long long x = fam.start + fam.sigma * next;
      if (std::llabs(x) > std::numeric_limits<int>::max()) return kInf;
      log_cw = log_weight({static_cast<int>(x), checked_int(fam.second)}, *cfg) + a * static_cast<double>(next);
    }
  }

  if (param.is_zero()) {
    if (order >= P) return 0.0;
    return std::exp(log_cw - a * static_cast<double>(P));
  }

  double s0 = 0.0;
  double sa = 0.0;
  for (long long j = 0; j <= order; ++j) {
    const double e = std::norm(alpha[static_cast<std::size_t>(j)]);
    s0 += e;
    sa += e * std::exp(-2.0 * a * static_cast<double>(j));
  }
  constexpr double slack = 1e-15;
  const double kp1 = static_cast<double>(order + 1);
  double log_best = -2.0 * a * kp1 + std::log(std::max(1.0 - s0, 0.0) + slack);

  if (a > 0.0) {
    const double log_total = 2.0 * static_cast<double>(P) * std::log(contraction_factor(param, 0.5 * a));
    double lb2 = log_total;
    if (log_total > -700.0) {
      const double total = std::exp(log_total);
      lb2 = std::log(std::max(total - sa, 0.0) + slack * total);
    }
    log_best = std::min(log_best, lb2);
  }

  // Cauchy estimates on |z| = 1/r: |alpha_j| <= R(r)^P r^{-j}.
  const double l = param.modulus();
  for (const double t : {0.1, 0.25, 0.5, 0.75, 0.9}) {
    const double log_r = -t * std::log(l);
    const double r = std::exp(log_r);
    const double log_big_r = std::log((r + l) / (1.0 - l * r));
    const double decay = log_r + a;
    if (!(decay > 0.0)) continue;
    const double lb3 = 2.0 * static_cast<double>(P) * log_big_r - 2.0 * kp1 * decay - std::log1p(-std::exp(-2.0 * decay));
    log_best = std::min(log_best, lb3);
  }
  return std::exp(log_cw + 0.5 * log_best);
}

SparseColumn expand_column(const MapSpec& spec, MonomialIndex source, int order,
                           const std::optional<SpaceConfig>& cfg) {
  if (order < 0) throw std::invalid_argument("apply: order must be >= 0");
  const ExpansionFamily fam = expansion_family(spec, source);
  SparseColumn col{source, {}, 0.0};
  if (fam.single) {
    col.entries.push_back({fam.target, Complex{1.0}});
    return col;
  }
  const auto alpha = coefficients_for(spec.param, fam.power, order);
  col.entries.reserve(alpha.size());
  for (long long j = 0; j <= order; ++j) {
    const Complex c = family_coefficient(alpha, fam.power, j);
    if (c == Complex{}) continue;
    col.entries.push_back({fam.target_at(j), c});
  }
  col.tail_weight = tail_bound(fam, spec.param, alpha, cfg);
  return col;
}

// Compensated accumulator over lattice points, dense on a square grid when
// the radius is small and a sorted map otherwise.
class Accumulator {
 public:
  explicit Accumulator(int radius) {
    if (radius <= kMaxGridRadius) {
      radius_ = radius;
      const std::size_t side = static_cast<std::size_t>(2 * radius + 1);
      grid_.resize(side * side);
      touched_.assign(side * side, false);
    }
  }

  void add(MonomialIndex idx, Complex v) {
    Cell& cell = radius_ >= 0 ? grid_[slot(idx)] : sparse_[idx];
    if (radius_ >= 0) touched_[slot(idx)] = true;
    const Complex y = v - cell.comp;
    const Complex t = cell.sum + y;
    cell.comp = (t - cell.sum) - y;
    cell.sum = t;
  }

  LaurentPolynomial finish() const {
    LaurentPolynomial out;
    if (radius_ < 0) {
      for (const auto& [idx, cell] : sparse_) {
        if (cell.sum != Complex{}) out.terms.emplace_hint(out.terms.end(), idx, cell.sum);
      }
      return out;
    }
    const int side = 2 * radius_ + 1;
    for (int i = 0; i < side; ++i) {
      for (int j = 0; j < side; ++j) {
        const std::size_t s = static_cast<std::size_t>(i) * side + j;
        if (!touched_[s] || grid_[s].sum == Complex{}) continue;
        out.terms.emplace_hint(out.terms.end(), MonomialIndex{i - radius_, j - radius_}, grid_[s].sum);
      }
    }
    return out;
  }

 private:
  static constexpr int kMaxGridRadius = 256;

  struct Cell {
    Complex sum{};
    Complex comp{};
  };

  std::size_t slot(MonomialIndex idx) const {
    const std::size_t side = static_cast<std::size_t>(2 * radius_ + 1);
    return static_cast<std::size_t>(idx.m + radius_) * side + static_cast<std::size_t>(idx.n + radius_);
  }

  int radius_ = -1;
  std::vector<Cell> grid_;
  std::vector<bool> touched_;
  std::map<MonomialIndex, Cell> sparse_;
};

double entry_weight(MonomialIndex idx, const std::optional<SpaceConfig>& cfg) {
  return cfg ? weight(idx, *cfg) : 1.0;
}

SeriesImage apply_atomic_to_series(const MapSpec& spec, const LaurentPolynomial& series,
                                   const TruncationOptions& options) {
  Accumulator acc(options.max_radius);
  SeriesImage image;
  for (const auto& [source, c] : series.terms) {
    const SparseColumn col = expand_column(spec, source, options.order, options.cfg);
    if (col.tail_weight > 0.0) image.tail_weight += std::abs(c) * col.tail_weight;
    for (const auto& e : col.entries) {
      const Complex v = c * e.value;
      const long long radius = std::llabs(e.target.m) + std::llabs(e.target.n);
      const bool outside = radius > options.max_radius;
      const double w = entry_weight(e.target, options.cfg);
      if (outside || std::abs(v) * w < options.drop_tol) {
        image.tail_weight += std::abs(v) * w;
        continue;
      }
      acc.add(e.target, v);
    }
  }
  image.series = acc.finish();
  return image;
}

void check_block_decomposable(const MapSpec& spec) {
  if (!increases_deg1(spec)) {
    throw std::invalid_argument("block_matrix: " + describe(spec) +
                                " does not increase deg_1, so compositions are not block-diagonal");
  }
}

CMatrix atomic_block(const MapSpec& spec, const std::vector<MonomialIndex>& basis, int k_min, int k_max,
                     const WindowOptions& options) {
  std::map<MonomialIndex, std::size_t> row_of;
  for (std::size_t i = 0; i < basis.size(); ++i) row_of.emplace(basis[i], i);
  CMatrix out(basis.size(), basis.size());
  for (std::size_t col = 0; col < basis.size(); ++col) {
    const MonomialIndex source = basis[col];
    const ExpansionFamily fam = expansion_family(spec, source);
    if (fam.single) {
      const int level = deg1(fam.target);
      if (level >= k_min && level <= k_max) out(row_of.at(fam.target), col) += 1.0;
      continue;
    }
    std::vector<std::pair<long long, MonomialIndex>> hits;
    long long max_j = -1;
    for (int k = k_min; k <= k_max; ++k) {
      for (const long long j : family_indices_at_level(fam, k)) {
        if (options.order >= 0 && j > options.order) continue;
        hits.emplace_back(j, fam.target_at(j));
        max_j = std::max(max_j, j);
      }
    }
    if (hits.empty()) continue;
    const auto alpha = coefficients_for(spec.param, fam.power, max_j);
    const double src_log_w = options.cfg ? log_weight(source, *options.cfg) : 0.0;
    for (const auto& [j, target] : hits) {
      const Complex c = family_coefficient(alpha, fam.power, j);
      if (options.drop_tol > 0.0 && options.cfg) {
        const double ratio = std::abs(c) * std::exp(log_weight(target, *options.cfg) - src_log_w);
        if (ratio < options.drop_tol) continue;
      }
      out(row_of.at(target), col) += c;
    }
  }
  return out;
}

}  // namespace

MapSpec MapSpec::b(BlaschkeParam param) { return MapSpec{MapKind::kB, param, 1, {}}; }

MapSpec MapSpec::t(BlaschkeParam param) { return MapSpec{MapKind::kT, param, 1, {}}; }

MapSpec MapSpec::bk(BlaschkeParam param, int K) {
  require_positive_k(K);
  return MapSpec{MapKind::kBK, param, K, {}};
}

MapSpec MapSpec::tk(BlaschkeParam param, int K) {
  require_positive_k(K);
  return MapSpec{MapKind::kTK, param, K, {}};
}

MapSpec MapSpec::compose(std::vector<MapSpec> factors) {
  return MapSpec{MapKind::kCompose, BlaschkeParam{}, 1, std::move(factors)};
}

std::string describe(const MapSpec& spec) {
  const std::string lam = format_complex(spec.param.value());
  switch (spec.kind) {
    case MapKind::kB:
      return "B[" + lam + "]";
    case MapKind::kT:
      return "T[" + lam + "]";
    case MapKind::kBK:
      return "BK[" + lam + ",K=" + std::to_string(spec.K) + "]";
    case MapKind::kTK:
      return "TK[" + lam + ",K=" + std::to_string(spec.K) + "]";
    case MapKind::kCompose: {
      std::string s = "COMPOSE[";
      for (std::size_t i = 0; i < spec.factors.size(); ++i) {
        if (i) s += ",";
        s += describe(spec.factors[i]);
      }
      return s + "]";
    }
  }
  return "?";
}

bool increases_deg1(const MapSpec& spec) {
  switch (spec.kind) {
    case MapKind::kBK:
      return spec.param.is_zero();
    case MapKind::kCompose:
      return std::all_of(spec.factors.begin(), spec.factors.end(), [](const MapSpec& f) { return increases_deg1(f); });
    default:
      return true;
  }
}

MonomialIndex ExpansionFamily::target_at(long long j) const {
  if (single) return target;
  return {checked_int(start + sigma * j), checked_int(second)};
}

ExpansionFamily expansion_family(const MapSpec& spec, MonomialIndex source) {
  const long long m = source.m;
  const long long n = source.n;
  ExpansionFamily fam;
  switch (spec.kind) {
    case MapKind::kB: {
      const long long q = m + n;
      if (q == 0) {
        fam.single = true;
        fam.target = {checked_int(m), 0};
        return fam;
      }
      fam.start = m;
      fam.sigma = lattice_sign(q);
      fam.second = q;
      fam.power = q;
      return fam;
    }
    case MapKind::kT:
    case MapKind::kTK: {
      if (m == 0) {
        fam.single = true;
        fam.target = {checked_int(n), 0};
        return fam;
      }
      const long long K = spec.kind == MapKind::kTK ? spec.K : 1;
      fam.start = n;
      fam.sigma = lattice_sign(m);
      fam.second = m;
      fam.power = K * m;
      return fam;
    }
    case MapKind::kBK: {
      const long long K = spec.K;
      const long long p = (K * K + 1) * m + K * n;
      const long long q = K * m + n;
      if (p == 0) {
        fam.single = true;
        fam.target = {0, checked_int(q)};
        return fam;
      }
      fam.start = 0;
      fam.sigma = lattice_sign(p);
      fam.second = q;
      fam.power = p;
      return fam;
    }
    case MapKind::kCompose:
      break;
  }
  throw std::invalid_argument("expansion_family: compositions have no single expansion family");
}

std::vector<long long> family_indices_at_level(const ExpansionFamily& fam, int k) {
  std::vector<long long> out;
  if (fam.single) {
    if (deg1(fam.target) == k) out.push_back(0);
    return out;
  }
  const long long rest = std::llabs(static_cast<long long>(k)) - std::llabs(fam.second);
  if (rest < 0) return out;
  const std::vector<long long> candidates = rest == 0 ? std::vector<long long>{0} : std::vector<long long>{-rest, rest};
  for (const long long x : candidates) {
    const long long j = fam.sigma * (x - fam.start);
    if (j < 0) continue;
    const long long level = lattice_sign(x * fam.second) * (std::llabs(x) + std::llabs(fam.second));
    if (level == k) out.push_back(j);
  }
  std::sort(out.begin(), out.end());
  return out;
}

SparseColumn apply_B(const BlaschkeParam& param, MonomialIndex source, int order,
                     const std::optional<SpaceConfig>& cfg) {
  return expand_column(MapSpec::b(param), source, order, cfg);
}

SparseColumn apply_T(const BlaschkeParam& param, MonomialIndex source, int order,
                     const std::optional<SpaceConfig>& cfg) {
  return expand_column(MapSpec::t(param), source, order, cfg);
}

SparseColumn apply_BK(const BlaschkeParam& param, int K, MonomialIndex source, int order,
                      const std::optional<SpaceConfig>& cfg) {
  return expand_column(MapSpec::bk(param, K), source, order, cfg);
}

SparseColumn apply_TK(const BlaschkeParam& param, int K, MonomialIndex source, int order,
                      const std::optional<SpaceConfig>& cfg) {
  return expand_column(MapSpec::tk(param, K), source, order, cfg);
}

SparseColumn apply_atomic(const MapSpec& spec, MonomialIndex source, int order,
                          const std::optional<SpaceConfig>& cfg) {
  if (!spec.atomic()) throw std::invalid_argument("apply_atomic: composition given");
  return expand_column(spec, source, order, cfg);
}

SeriesImage apply_to_series(const MapSpec& spec, const LaurentPolynomial& series, const TruncationOptions& options) {
  if (options.order < 0) throw std::invalid_argument("apply: order must be >= 0");
  if (options.max_radius < 0) throw std::invalid_argument("apply: max_radius must be >= 0");
  if (spec.atomic()) return apply_atomic_to_series(spec, series, options);
  SeriesImage image{series, 0.0};
  for (const MapSpec& factor : spec.factors) {
    SeriesImage next = apply_to_series(factor, image.series, options);
    next.tail_weight += image.tail_weight;
    image = std::move(next);
  }
  return image;
}

SparseColumn apply_map(const MapSpec& spec, MonomialIndex source, const TruncationOptions& options) {
  const SeriesImage image = apply_to_series(spec, LaurentPolynomial::monomial(source), options);
  SparseColumn col{source, {}, image.tail_weight};
  col.entries.reserve(image.series.terms.size());
  for (const auto& [idx, v] : image.series.terms) col.entries.push_back({idx, v});
  return col;
}

BlockMatrix block_matrix(const MapSpec& spec, int k) {
  Block block = block_indices(k);
  if (block.indices.empty()) {
    throw std::invalid_argument("block_matrix: level " + std::to_string(k) + " is empty");
  }
  BlockMatrix out{k, std::move(block.indices), {}};
  if (spec.atomic()) {
    out.data = atomic_block(spec, out.basis, k, k, {});
    return out;
  }
  check_block_decomposable(spec);
  out.data = CMatrix::identity(out.basis.size());
  for (const MapSpec& factor : spec.factors) out.data = block_matrix(factor, k).data * out.data;
  return out;
}

CMatrix windowed_matrix(const MapSpec& spec, int k_min, int k_max, const WindowOptions& options) {
  const std::vector<MonomialIndex> basis = window_indices(k_min, k_max);
  if (basis.empty()) throw std::invalid_argument("windowed_matrix: window contains no lattice points");
  if (options.drop_tol > 0.0 && !options.cfg) {
    throw std::invalid_argument("windowed_matrix: drop_tol requires a space configuration");
  }
  if (spec.atomic()) return atomic_block(spec, basis, k_min, k_max, options);
  check_block_decomposable(spec);
  CMatrix out = CMatrix::identity(basis.size());
  for (const MapSpec& factor : spec.factors) out = windowed_matrix(factor, k_min, k_max, options) * out;
  return out;
}

}  // namespace resonance
