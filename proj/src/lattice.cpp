#include "resonance/lattice.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>

namespace resonance {

namespace {

void validate(WeightFamily family, double a, double phi) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw std::invalid_argument("space config: weight exponent a must be positive, got " + std::to_string(a));
  }
  if (!(phi >= 1.0) || !std::isfinite(phi)) {
    throw std::invalid_argument("space config: anisotropy phi must be >= 1, got " + std::to_string(phi));
  }
  if (family == WeightFamily::kDeg1 && phi != 1.0) {
    throw std::invalid_argument("space config: deg1 weights require phi == 1");
  }
}

}  // namespace

SpaceConfig SpaceConfig::deg1(double a) { return make(WeightFamily::kDeg1, a, 1.0); }

SpaceConfig SpaceConfig::degphi(double a, double phi) { return make(WeightFamily::kDegPhi, a, phi); }

SpaceConfig SpaceConfig::symmetric_fr(double a) { return make(WeightFamily::kSymmetricFR, a, 1.0); }

SpaceConfig SpaceConfig::make(WeightFamily family, double a, double phi) {
  validate(family, a, phi);
  return SpaceConfig(family, a, phi);
}

std::string to_string(WeightFamily family) {
  switch (family) {
    case WeightFamily::kDeg1:
      return "deg1";
    case WeightFamily::kDegPhi:
      return "degphi";
    case WeightFamily::kSymmetricFR:
      return "fr";
  }
  return "unknown";
}

WeightFamily parse_weight_family(const std::string& name) {
  if (name == "deg1") return WeightFamily::kDeg1;
  if (name == "degphi" || name == "anisotropic") return WeightFamily::kDegPhi;
  if (name == "fr") return WeightFamily::kSymmetricFR;
  throw std::invalid_argument("unknown weight family '" + name + "' (expected deg1, degphi or fr)");
}

int deg1(MonomialIndex idx) {
  const long long mn = static_cast<long long>(idx.m) * idx.n;
  return lattice_sign(mn) * (std::abs(idx.m) + std::abs(idx.n));
}

double degphi(MonomialIndex idx, double phi) {
  if (!(phi >= 1.0)) {
    throw std::invalid_argument("degphi: phi must be >= 1");
  }
  const double am = std::abs(idx.m);
  const double an = std::abs(idx.n);
  if (static_cast<long long>(idx.m) * idx.n >= 0) {
    return am + an / phi;
  }
  return -am - phi * an;
}

double log_weight(MonomialIndex idx, const SpaceConfig& cfg) {
  switch (cfg.family()) {
    case WeightFamily::kDeg1:
      return -cfg.a() * deg1(idx);
    case WeightFamily::kDegPhi:
      return -cfg.a() * degphi(idx, cfg.phi());
    case WeightFamily::kSymmetricFR: {
      constexpr double unstable = std::numbers::phi;
      constexpr double stable = 1.0 - std::numbers::phi;
      const double m = idx.m;
      const double n = idx.n;
      return -cfg.a() * std::abs(unstable * m + n) + cfg.a() * std::abs(stable * m + n);
    }
  }
  return 0.0;
}

double weight(MonomialIndex idx, const SpaceConfig& cfg) { return std::exp(log_weight(idx, cfg)); }

std::size_t block_size(int k) {
  if (k == 0) return 1;
  if (k > 0) return static_cast<std::size_t>(2 * k + 2);
  if (k <= -2) return static_cast<std::size_t>(-2 * k - 2);
  return 0;
}

Block block_indices(int k) {
  Block block{k, {}};
  block.indices.reserve(block_size(k));
  const int r = std::abs(k);
  // deg_1 = k forces |m| + |n| = |k|; scanning m in increasing order and the
  // two choices of n in increasing order gives lexicographic order.
  for (int m = -r; m <= r; ++m) {
    const int rest = r - std::abs(m);
    if (const MonomialIndex lo{m, -rest}; deg1(lo) == k) block.indices.push_back(lo);
    if (rest == 0) continue;
    if (const MonomialIndex hi{m, rest}; deg1(hi) == k) block.indices.push_back(hi);
  }
  return block;
}

std::vector<MonomialIndex> window_indices(int k_min, int k_max) {
  if (k_min > k_max) {
    throw std::invalid_argument("window_indices: k_min must not exceed k_max");
  }
  std::vector<MonomialIndex> out;
  for (int k = k_min; k <= k_max; ++k) {
    const Block b = block_indices(k);
    out.insert(out.end(), b.indices.begin(), b.indices.end());
  }
  return out;
}

}  // namespace resonance
