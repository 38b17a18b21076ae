#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace resonance {

/// Lattice point (m, n) labelling the monomial z^m w^n on the torus.
struct MonomialIndex {
  int m = 0;
  int n = 0;

  friend constexpr auto operator<=>(const MonomialIndex&, const MonomialIndex&) = default;
};

enum class WeightFamily {
  kDeg1,        // e^{-a deg_1}
  kDegPhi,      // e^{-a deg_phi}
  kSymmetricFR  // golden-ratio eigendirection weights of the linear CAT map
};

/// Parameters of an anisotropic weighted monomial space.
///
/// Constructed through `make`, which enforces a > 0, phi >= 1 and phi == 1
/// for the deg_1 family.
class SpaceConfig {
 public:
  static SpaceConfig deg1(double a);
  static SpaceConfig degphi(double a, double phi);
  static SpaceConfig symmetric_fr(double a);
  static SpaceConfig make(WeightFamily family, double a, double phi);

  double a() const { return a_; }
  double phi() const { return phi_; }
  WeightFamily family() const { return family_; }

 private:
  SpaceConfig(WeightFamily family, double a, double phi) : family_(family), a_(a), phi_(phi) {}

  WeightFamily family_;
  double a_;
  double phi_;
};

std::string to_string(WeightFamily family);
WeightFamily parse_weight_family(const std::string& name);

/// sign(k) with the convention sign(0) = +1.
constexpr int lattice_sign(long long k) { return k >= 0 ? 1 : -1; }

/// sign(mn) * (|m| + |n|).
int deg1(MonomialIndex idx);

/// |m| + |n|/phi when mn >= 0, otherwise -|m| - phi |n|. Throws for phi < 1.
double degphi(MonomialIndex idx, double phi);

/// Norm of the basis monomial e_{m,n} in the space described by cfg.
double weight(MonomialIndex idx, const SpaceConfig& cfg);

/// Log of `weight`, usable where the weight itself would overflow.
double log_weight(MonomialIndex idx, const SpaceConfig& cfg);

/// All lattice points at deg_1 level k, in lexicographic order.
struct Block {
  int k = 0;
  std::vector<MonomialIndex> indices;
};

/// Number of lattice points with deg_1 = k: 1, 2k+2, 0 or -2k-2.
std::size_t block_size(int k);

Block block_indices(int k);

/// Concatenation of the blocks k_min..k_max in ascending k.
std::vector<MonomialIndex> window_indices(int k_min, int k_max);

}  // namespace resonance
