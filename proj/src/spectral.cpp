#include "resonance/spectral.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace resonance {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Complex ipow(Complex base, long long e) {
  Complex result{1.0};
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

bool spectrum_order(Complex a, Complex b) {
  const double ma = std::abs(a);
  const double mb = std::abs(b);
  if (ma != mb) return ma > mb;
  return std::arg(a) < std::arg(b);
}

void add_provenance(std::vector<std::string>& tokens, const std::string& provenance) {
  std::size_t start = 0;
  while (start <= provenance.size()) {
    const std::size_t end = std::min(provenance.find(';', start), provenance.size());
    std::string tok = provenance.substr(start, end - start);
    if (!tok.empty() && std::find(tokens.begin(), tokens.end(), tok) == tokens.end()) tokens.push_back(std::move(tok));
    start = end + 1;
  }
}

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("RESONANCE_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Closed-form description of the supported kinds: B-type and T-type maps
// with effective parameter lambda^K, and two-factor T-type compositions.
struct TheoryShape {
  enum class Kind { kBType, kTType, kTT } kind;
  Complex first{};   // B/T parameter, or the first factor of a composition
  Complex second{};  // second factor of a composition
};

Complex effective_param(const MapSpec& spec) {
  const long long K = (spec.kind == MapKind::kBK || spec.kind == MapKind::kTK) ? spec.K : 1;
  return ipow(spec.param.value(), K);
}

bool t_type(const MapSpec& spec) { return spec.kind == MapKind::kT || spec.kind == MapKind::kTK; }

std::optional<TheoryShape> theory_shape(const MapSpec& spec) {
  switch (spec.kind) {
    case MapKind::kB:
    case MapKind::kBK:
      return TheoryShape{TheoryShape::Kind::kBType, effective_param(spec), {}};
    case MapKind::kT:
    case MapKind::kTK:
      return TheoryShape{TheoryShape::Kind::kTType, effective_param(spec), {}};
    case MapKind::kCompose:
      if (spec.factors.size() == 2 && t_type(spec.factors[0]) && t_type(spec.factors[1])) {
        return TheoryShape{TheoryShape::Kind::kTT, effective_param(spec.factors[0]), effective_param(spec.factors[1])};
      }
      return std::nullopt;
  }
  return std::nullopt;
}

// Largest eigenvalue modulus at level k.
double level_bound(const TheoryShape& shape, int k) {
  if (k == 0) return 1.0;
  if (k == -1) return 0.0;
  const double ak = std::abs(static_cast<double>(k));
  switch (shape.kind) {
    case TheoryShape::Kind::kBType:
      return k > 0 ? std::pow(std::abs(shape.first), ak) : 0.0;
    case TheoryShape::Kind::kTType:
      return std::pow(std::abs(shape.first), 0.5 * ak);
    case TheoryShape::Kind::kTT:
      return std::pow(std::max(std::abs(shape.first), std::abs(shape.second)), ak);
  }
  return kInf;
}

// Side-wise supremum of level_bound outside [k_min, k_max]; level_bound is
// nonincreasing in |k| on each side of zero.
double outside_bound(const TheoryShape& shape, int k_min, int k_max) {
  const auto nearest_nonempty = [](int k) { return k == -1 ? -2 : k; };
  const double below = k_min > 0 ? level_bound(shape, 0) : level_bound(shape, nearest_nonempty(k_min - 1));
  const double above = k_max < 0 ? level_bound(shape, 0) : level_bound(shape, k_max + 1);
  return std::max(below, above);
}

std::vector<Complex> level_values(const TheoryShape& shape, int k) {
  std::vector<Complex> out;
  if (k == -1) return out;
  if (k == 0) return {Complex{1.0}};
  switch (shape.kind) {
    case TheoryShape::Kind::kBType: {
      if (k > 0) {
        out.push_back(ipow(shape.first, k));
        out.push_back(ipow(std::conj(shape.first), k));
      }
      out.resize(block_size(k), Complex{});
      return out;
    }
    case TheoryShape::Kind::kTType: {
      const Complex l1 = std::sqrt(shape.first);
      if (k > 0) {
        const std::size_t n_plus = static_cast<std::size_t>(k / 2 + 1);
        const std::size_t n_minus = static_cast<std::size_t>((k + 1) / 2);
        for (const Complex base : {l1, std::conj(l1)}) {
          const Complex v = ipow(base, k);
          out.insert(out.end(), n_plus, v);
          out.insert(out.end(), n_minus, -v);
        }
      } else {
        const int K = -k;
        for (int j = 1; j < K; ++j) {
          const Complex v = ipow(l1, j) * ipow(std::conj(l1), K - j);
          out.push_back(v);
          out.push_back(-v);
        }
      }
      return out;
    }
    case TheoryShape::Kind::kTT: {
      const auto part = [](Complex p, int e) { return e >= 0 ? ipow(p, e) : ipow(std::conj(p), -e); };
      for (const MonomialIndex idx : block_indices(k).indices) {
        out.push_back(part(shape.second, idx.m) * part(shape.first, idx.n));
      }
      return out;
    }
  }
  return out;
}

}  // namespace

std::size_t SpectrumMultiset::total_multiplicity() const {
  std::size_t total = 0;
  for (const auto& e : entries) total += e.multiplicity;
  return total;
}

std::size_t SpectrumMultiset::multiplicity_of(Complex value) const {
  std::size_t total = 0;
  for (const auto& e : entries) {
    if (within_merge_radius(e.value, value) || within_merge_radius(value, e.value)) total += e.multiplicity;
  }
  return total;
}

bool within_merge_radius(Complex a, Complex b) { return std::abs(a - b) <= std::max(1e-10, 1e-8 * std::abs(a)); }

SpectrumMultiset coalesce(const std::vector<SpectrumEntry>& raw, double modulus_floor) {
  if (!(modulus_floor >= 0.0)) throw std::invalid_argument("coalesce: modulus floor must be >= 0");
  std::vector<SpectrumEntry> sorted = raw;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const SpectrumEntry& a, const SpectrumEntry& b) { return spectrum_order(a.value, b.value); });

  struct Group {
    Complex rep;
    std::size_t multiplicity;
    std::vector<std::string> provenance;
  };
  std::vector<Group> groups;
  for (const auto& e : sorted) {
    if (e.multiplicity == 0) continue;
    auto it = std::find_if(groups.begin(), groups.end(), [&](const Group& g) { return within_merge_radius(g.rep, e.value); });
    if (it == groups.end()) {
      groups.push_back({e.value, 0, {}});
      it = std::prev(groups.end());
    }
    it->multiplicity += e.multiplicity;
    add_provenance(it->provenance, e.provenance);
  }

  SpectrumMultiset out;
  out.modulus_floor = modulus_floor;
  const double keep_from = modulus_floor * (1.0 - 1e-12);
  for (auto& g : groups) {
    if (modulus_floor > 0.0 && std::abs(g.rep) < keep_from) continue;
    std::string prov;
    for (const auto& tok : g.provenance) prov += (prov.empty() ? "" : ";") + tok;
    out.entries.push_back({g.rep, g.multiplicity, std::move(prov)});
  }
  std::stable_sort(out.entries.begin(), out.entries.end(),
                   [](const SpectrumEntry& a, const SpectrumEntry& b) { return spectrum_order(a.value, b.value); });
  return out;
}

std::optional<std::vector<Complex>> structured_eigenvalues(const CMatrix& a) {
  if (!a.square()) throw std::invalid_argument("structured_eigenvalues: matrix must be square");
  const std::size_t n = a.rows();
  constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> next(n, none);  // column j maps to row next[j]
  std::vector<std::size_t> prev(n, none);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      if (a(i, j) == Complex{}) continue;
      if (next[j] != none || prev[i] != none) return std::nullopt;
      next[j] = i;
      prev[i] = j;
    }
  }
  std::vector<Complex> eig;
  eig.reserve(n);
  std::vector<bool> seen(n, false);
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start]) continue;
    // Walk forward; a walk that returns to start is a cycle.
    std::size_t len = 0;
    Complex product{1.0};
    std::size_t j = start;
    bool cycle = false;
    while (true) {
      const std::size_t i = next[j];
      if (i == none) break;
      product *= a(i, j);
      ++len;
      if (i == start) {
        cycle = true;
        break;
      }
      j = i;
      if (len > n) break;
    }
    if (!cycle) continue;
    std::size_t v = start;
    for (std::size_t s = 0; s < len; ++s) {
      seen[v] = true;
      v = next[v];
    }
    if (len == 1) {
      eig.push_back(product);
    } else if (len == 2) {
      const Complex r = std::sqrt(product);
      eig.push_back(r);
      eig.push_back(-r);
    } else {
      const double radius = std::pow(std::abs(product), 1.0 / static_cast<double>(len));
      const double theta = std::arg(product) / static_cast<double>(len);
      for (std::size_t s = 0; s < len; ++s) {
        eig.push_back(std::polar(radius, theta + 2.0 * std::numbers::pi * static_cast<double>(s) / static_cast<double>(len)));
      }
    }
  }
  eig.resize(n, Complex{});  // indices on open chains are nilpotent
  return eig;
}

SpectrumMultiset block_spectrum(const MapSpec& spec, int k) {
  const BlockMatrix block = block_matrix(spec, k);
  std::vector<Complex> values;
  if (auto structured = structured_eigenvalues(block.data)) {
    values = std::move(*structured);
  } else {
    values = dense_eigenvalues(block.data);
  }
  std::vector<SpectrumEntry> raw;
  raw.reserve(values.size());
  const std::string id = std::to_string(k);
  for (const Complex v : values) raw.push_back({v, 1, id});
  return coalesce(raw, 0.0);
}

SpectrumMultiset spectrum(const MapSpec& spec, const SpectrumOptions& options) {
  if (options.k_min > options.k_max) throw std::invalid_argument("spectrum: k_min must not exceed k_max");
  std::vector<int> levels;
  for (int k = options.k_min; k <= options.k_max; ++k) {
    if (k != -1) levels.push_back(k);
  }
  std::vector<SpectrumMultiset> parts(levels.size());
  std::vector<std::exception_ptr> errors(levels.size());
  std::atomic<std::size_t> cursor{0};
  const auto worker = [&] {
    for (std::size_t i = cursor++; i < levels.size(); i = cursor++) {
      try {
        parts[i] = block_spectrum(spec, levels[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned threads = std::min<std::size_t>(resolve_threads(options.threads), std::max<std::size_t>(1, levels.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<SpectrumEntry> raw;
  for (const auto& part : parts) raw.insert(raw.end(), part.entries.begin(), part.entries.end());
  SpectrumMultiset out = coalesce(raw, options.modulus_floor);
  out.omitted_modulus_bound = omitted_modulus_bound(spec, options.k_min, options.k_max);
  out.complete = out.omitted_modulus_bound < options.modulus_floor ||
                 (options.modulus_floor == 0.0 && out.omitted_modulus_bound == 0.0);
  return out;
}

double omitted_modulus_bound(const MapSpec& spec, int k_min, int k_max) {
  const auto shape = theory_shape(spec);
  if (!shape) return kInf;
  return outside_bound(*shape, k_min, k_max);
}

SpectrumMultiset theoretical_spectrum(const MapSpec& spec, double modulus_floor, std::optional<LevelRange> levels) {
  const auto shape = theory_shape(spec);
  if (!shape) {
    throw std::invalid_argument("theoretical_spectrum: no closed form for " + describe(spec));
  }
  if (!(modulus_floor >= 0.0)) throw std::invalid_argument("theoretical_spectrum: modulus floor must be >= 0");
  LevelRange range;
  if (levels) {
    if (levels->k_min > levels->k_max) throw std::invalid_argument("theoretical_spectrum: empty level range");
    range = *levels;
  } else {
    if (modulus_floor == 0.0) {
      throw std::invalid_argument("theoretical_spectrum: a zero floor needs an explicit level range");
    }
    constexpr int kLevelCap = 100000;
    const double keep_from = modulus_floor * (1.0 - 1e-12);
    range.k_max = 0;
    while (range.k_max < kLevelCap && level_bound(*shape, range.k_max + 1) >= keep_from) ++range.k_max;
    range.k_min = 0;
    while (range.k_min > -kLevelCap) {
      const int next = range.k_min - 1 == -1 ? -2 : range.k_min - 1;
      if (level_bound(*shape, next) < keep_from) break;
      range.k_min = next;
    }
  }
  std::vector<SpectrumEntry> raw;
  for (int k = range.k_min; k <= range.k_max; ++k) {
    for (const Complex v : level_values(*shape, k)) raw.push_back({v, 1, "theory"});
  }
  SpectrumMultiset out = coalesce(raw, modulus_floor);
  out.omitted_modulus_bound = outside_bound(*shape, range.k_min, range.k_max);
  out.complete = out.omitted_modulus_bound < modulus_floor;
  return out;
}

MatchReport match(const SpectrumMultiset& computed, const SpectrumMultiset& theoretical, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("match: tolerance must be positive");
  const auto expand = [](const SpectrumMultiset& s) {
    std::vector<Complex> units;
    for (const auto& e : s.entries) units.insert(units.end(), e.multiplicity, e.value);
    return units;
  };
  const std::vector<Complex> comp = expand(computed);
  const std::vector<Complex> theo = expand(theoretical);

  std::vector<std::tuple<double, std::size_t, std::size_t>> candidates;
  for (std::size_t i = 0; i < comp.size(); ++i) {
    for (std::size_t j = 0; j < theo.size(); ++j) {
      const double d = std::abs(comp[i] - theo[j]);
      if (d <= tol) candidates.emplace_back(d, i, j);
    }
  }
  std::sort(candidates.begin(), candidates.end());
  std::vector<bool> used_c(comp.size(), false);
  std::vector<bool> used_t(theo.size(), false);
  MatchReport report;
  for (const auto& [d, i, j] : candidates) {
    if (used_c[i] || used_t[j]) continue;
    used_c[i] = used_t[j] = true;
    report.matched.push_back({comp[i], theo[j], d});
    report.max_distance = std::max(report.max_distance, d);
  }
  for (std::size_t j = 0; j < theo.size(); ++j) {
    if (!used_t[j]) report.missing_theoretical.push_back(theo[j]);
  }
  for (std::size_t i = 0; i < comp.size(); ++i) {
    if (!used_c[i]) report.spurious_computed.push_back(comp[i]);
  }
  return report;
}

std::vector<SemisimplicityCheck> semisimplicity_checks(const CMatrix& block, const SpectrumMultiset& spectrum,
                                                       double rel_tol) {
  if (!block.square()) throw std::invalid_argument("semisimplicity_checks: block must be square");
  const std::size_t n = block.rows();
  const double zero_cut = 1e-12 * std::max(1.0, block.max_abs());
  std::vector<SemisimplicityCheck> out;
  for (const auto& e : spectrum.entries) {
    if (std::abs(e.value) <= zero_cut) continue;
    CMatrix shifted = block;
    for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= e.value;
    SemisimplicityCheck check;
    check.value = e.value;
    check.multiplicity = e.multiplicity;
    check.rank = numerical_rank(shifted, rel_tol);
    check.expected_rank = n >= e.multiplicity ? n - e.multiplicity : 0;
    out.push_back(check);
  }
  return out;
}

}  // namespace resonance
