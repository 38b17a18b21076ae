#include "resonance/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace resonance {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

SparseColumn weighted_column(const MapSpec& spec, MonomialIndex source, const SpaceConfig& cfg, int order) {
  if (spec.atomic()) return apply_atomic(spec, source, order, cfg);
  TruncationOptions opts;
  opts.order = order;
  opts.cfg = cfg;
  return apply_map(spec, source, opts);
}

bool t_type(const MapSpec& spec) { return spec.kind == MapKind::kT || spec.kind == MapKind::kTK; }

// sqrt(sum |g_{-p,-q}|^2 / w(p,q)^2); pairing with g is bounded by this times the norm.
double dual_norm(const LaurentPolynomial& g, const SpaceConfig& cfg) {
  double sum = 0.0;
  for (const auto& [idx, c] : g.terms) {
    const double inv_w = std::exp(-log_weight({-idx.m, -idx.n}, cfg));
    sum += std::norm(c) * inv_w * inv_w;
  }
  return std::sqrt(sum);
}

}  // namespace

double column_ratio_squared(const MapSpec& spec, MonomialIndex source, const SpaceConfig& cfg, int order) {
  const SparseColumn col = weighted_column(spec, source, cfg, order);
  if (!std::isfinite(col.tail_weight)) return kInf;
  const double src = log_weight(source, cfg);
  double sum = 0.0;
  for (const auto& e : col.entries) {
    const double rel = std::exp(log_weight(e.target, cfg) - src);
    sum += std::norm(e.value) * rel * rel;
  }
  const double root = std::sqrt(sum) + col.tail_weight * std::exp(-src);
  return root * root;
}

std::optional<double> hs_delta(const MapSpec& spec, const SpaceConfig& cfg) {
  const double a = cfg.a();
  std::optional<double> delta;
  if (spec.kind == MapKind::kB && cfg.family() == WeightFamily::kDeg1) {
    delta = std::min(-0.5 * std::log(contraction_factor(spec.param, a)), a);
  } else if (t_type(spec) && cfg.family() == WeightFamily::kDegPhi) {
    const double phi = cfg.phi();
    const double log_m = std::log(contraction_factor(spec.param, a));
    delta = std::min(2.0 * a * (phi - 1.0) / phi, 2.0 * a * (1.0 - phi) - log_m);
  }
  if (delta && !(*delta > 0.0)) return std::nullopt;
  return delta;
}

HsNormResult hs_norm(const MapSpec& spec, const SpaceConfig& cfg, int radius, int order) {
  if (radius < 0) throw std::invalid_argument("hs_norm: radius must be >= 0");
  if (order < 0) throw std::invalid_argument("hs_norm: order must be >= 0");
  HsNormResult out;
  if (t_type(spec) && cfg.family() == WeightFamily::kDegPhi) {
    const double lhs = 2.0 * cfg.a() * (cfg.phi() - 1.0);
    const double rhs = -std::log(contraction_factor(spec.param, cfg.a()));
    if (!(lhs < rhs)) {
      out.warnings.push_back("2a(phi-1) >= -log M_{a,lambda}: the operator need not be Hilbert-Schmidt here");
    }
  }
  for (int m = -radius; m <= radius; ++m) {
    for (int n = -radius; n <= radius; ++n) {
      const double r2 = column_ratio_squared(spec, {m, n}, cfg, order);
      out.per_column.emplace(MonomialIndex{m, n}, r2);
      out.value += r2;
    }
  }
  out.delta = hs_delta(spec, cfg);
  if (out.delta) {
    double line = 1.0;
    for (int j = 1; j <= radius; ++j) line += 2.0 * std::exp(-*out.delta * j);
    out.delta_bound = line * line;
  }
  return out;
}

CompactnessReport compactness_violation(const BlaschkeParam& param, int m, const std::vector<int>& n_list,
                                        const SpaceConfig& cfg, int order) {
  if (param.is_zero()) throw std::invalid_argument("compactness_violation: lambda must be nonzero");
  if (m < 1) throw std::invalid_argument("compactness_violation: m must be positive");
  CompactnessReport out;
  out.lower_bound = std::pow(param.modulus(), m);
  const MapSpec spec = MapSpec::t(param);
  for (const int n : n_list) {
    const double lw = log_weight({m, n}, cfg);
    const double lw_swap = log_weight({n, m}, cfg);
    if (std::abs(lw - lw_swap) > 1e-12 * std::max(1.0, std::abs(lw))) out.swap_symmetric = false;
    out.ratios.emplace_back(n, std::sqrt(column_ratio_squared(spec, {m, n}, cfg, order)));
  }
  return out;
}

UnboundednessWitness unboundedness_witness(const BlaschkeParam& param, double a, double phi, double threshold) {
  if (param.is_zero()) throw std::invalid_argument("unboundedness_witness: lambda must be nonzero");
  if (!(a > 0.0) || !(phi >= 1.0)) throw std::invalid_argument("unboundedness_witness: need a > 0 and phi >= 1");
  if (!(threshold > 0.0)) throw std::invalid_argument("unboundedness_witness: threshold must be positive");
  const double c = a * (phi - 1.0);
  const double log_l = std::log(param.modulus());
  if (!(-log_l < c)) {
    throw std::invalid_argument("unboundedness_witness: requires -log|lambda| < a(phi-1)");
  }
  // log ratio at (m, -1) is m (log|lambda| + c) - c, increasing in m.
  const double growth = log_l + c;
  const double need = std::log(threshold) + c;
  int m = std::max(1, static_cast<int>(std::ceil(need / growth)));
  while (m > 1 && (m - 1) * growth - c >= std::log(threshold)) --m;
  while (m * growth - c < std::log(threshold)) ++m;
  return {m, -1, std::exp(m * log_l + c * (m - 1))};
}

double space_norm(const LaurentPolynomial& f, const SpaceConfig& cfg) {
  double sum = 0.0;
  for (const auto& [idx, c] : f.terms) {
    const double w = weight(idx, cfg);
    sum += std::norm(c) * w * w;
  }
  return std::sqrt(sum);
}

bool geometric_family_converges(double rho, const SpaceConfig& cfg) {
  if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("geometric_family_converges: rho must lie in (0, 1)");
  return cfg.a() * std::max(1.0, cfg.phi()) < -std::log(rho);
}

DecayFit fit_decay(const std::vector<std::pair<int, Complex>>& samples, int window_begin, int window_end) {
  if (window_begin > window_end) throw std::invalid_argument("fit_decay: empty window");
  std::vector<std::pair<double, double>> pts;
  for (const auto& [m, v] : samples) {
    if (m < window_begin || m > window_end) continue;
    const double mod = std::abs(v);
    if (!(mod > 0.0) || !std::isfinite(mod)) continue;
    pts.emplace_back(static_cast<double>(m), std::log(mod));
  }
  if (pts.size() < 4) {
    throw std::invalid_argument("fit_decay: need at least 4 nonzero samples in [" + std::to_string(window_begin) +
                                ", " + std::to_string(window_end) + "], got " + std::to_string(pts.size()));
  }
  const double count = static_cast<double>(pts.size());
  double sx = 0.0, sy = 0.0;
  for (const auto& [x, y] : pts) {
    sx += x;
    sy += y;
  }
  const double mx = sx / count;
  const double my = sy / count;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : pts) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  DecayFit fit;
  fit.fitted_log_slope = sxy / sxx;
  fit.intercept = my - fit.fitted_log_slope * mx;
  fit.fitted_rate = std::exp(fit.fitted_log_slope);
  fit.window_begin = window_begin;
  fit.window_end = window_end;
  fit.points_used = pts.size();
  double ss = 0.0;
  for (const auto& [x, y] : pts) {
    const double r = y - (fit.intercept + fit.fitted_log_slope * x);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / count);
  return fit;
}

CorrelationRun correlate(const MapSpec& spec, const LaurentPolynomial& f, const LaurentPolynomial& g, int m_max,
                         const CorrelationOptions& options) {
  if (m_max < 0) throw std::invalid_argument("correlate: m_max must be >= 0");
  TruncationOptions trunc;
  trunc.order = options.order;
  trunc.drop_tol = options.drop_tol;
  trunc.max_radius = options.max_radius;
  trunc.cfg = options.cfg;

  const Complex mean_product = f.coefficient({0, 0}) * g.coefficient({0, 0});
  const double g_dual = dual_norm(g, options.cfg);
  const auto pair_with_g = [&g](const LaurentPolynomial& c) {
    Complex sum{};
    for (const auto& [idx, v] : g.terms) sum += c.coefficient({-idx.m, -idx.n}) * v;
    return sum;
  };

  CorrelationRun run;
  SeriesImage current{f, 0.0};
  for (int m = 0; m <= m_max; ++m) {
    if (m > 0) {
      SeriesImage next = apply_to_series(spec, current.series, trunc);
      next.tail_weight += current.tail_weight;
      current = std::move(next);
    }
    CorrelationSample s;
    s.m = m;
    s.value = pair_with_g(current.series) - mean_product;
    s.tail_weight = current.tail_weight;
    s.starved = current.tail_weight * g_dual > std::abs(s.value);
    run.samples.push_back(s);
  }

  const auto [lo, hi] = options.window.value_or(std::pair<int, int>{m_max / 4, m_max});
  std::vector<std::pair<int, Complex>> usable;
  for (const auto& s : run.samples) usable.emplace_back(s.m, s.value);
  try {
    run.fit = fit_decay(usable, lo, hi);
  } catch (const std::invalid_argument& e) {
    run.fit_error = e.what();
  }
  return run;
}

LaurentPolynomial generic_observable(std::mt19937_64& rng) {
  const auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  LaurentPolynomial f;
  for (int m = -3; m <= 3; ++m) {
    for (int n = -3; n <= 3; ++n) {
      double x = 0.0, y = 0.0;
      do {
        x = 2.0 * uniform() - 1.0;
        y = 2.0 * uniform() - 1.0;
      } while (x * x + y * y >= 1.0);
      f.terms.emplace(MonomialIndex{m, n}, std::pow(0.5, std::abs(m) + std::abs(n)) * Complex{x, y});
    }
  }
  return f;
}

}  // namespace resonance
