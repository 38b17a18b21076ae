#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "resonance/blaschke.hpp"
#include "resonance/lattice.hpp"
#include "resonance/laurent.hpp"
#include "resonance/matrix.hpp"

namespace resonance {

enum class MapKind { kB, kT, kBK, kTK, kCompose };

/// One of the explicit torus maps, or a composition of them.
///
/// compose({F1, F2, ..., Fn}) denotes the map F1 o F2 o ... o Fn, so Fn acts
/// first on points and C_{F1} acts first on functions:
/// C_{F1 o ... o Fn} = C_{Fn} o ... o C_{F1}. With this reading
/// compose({T_0, T_lambda}) is B_lambda.
struct MapSpec {
  MapKind kind = MapKind::kB;
  BlaschkeParam param;
  int K = 1;
  std::vector<MapSpec> factors;

  static MapSpec b(BlaschkeParam param);
  static MapSpec t(BlaschkeParam param);
  static MapSpec bk(BlaschkeParam param, int K);
  static MapSpec tk(BlaschkeParam param, int K);
  static MapSpec compose(std::vector<MapSpec> factors);

  bool atomic() const { return kind != MapKind::kCompose; }
};

std::string describe(const MapSpec& spec);

/// True when every column's image stays at deg_1 >= the source level. All
/// kinds qualify except BK with lambda != 0 (and compositions containing it).
bool increases_deg1(const MapSpec& spec);

/// Image of e_{m,n} under an atomic map, before truncation: either a single
/// monomial with coefficient one, or
///   sum_j alpha_{power,j} e_{start + sigma j, second}
/// with alpha_{-p,j} = conj(alpha_{p,j}).
struct ExpansionFamily {
  bool single = false;
  MonomialIndex target;  // used when single
  long long start = 0;
  int sigma = 1;
  long long second = 0;
  std::int64_t power = 0;

  MonomialIndex target_at(long long j) const;
};

ExpansionFamily expansion_family(const MapSpec& atomic, MonomialIndex source);

/// Expansion indices j >= 0 whose target lies exactly at deg_1 level k.
std::vector<long long> family_indices_at_level(const ExpansionFamily& family, int k);

struct ColumnEntry {
  MonomialIndex target;
  std::complex<double> value;
};

/// Image of one basis monomial, truncated. tail_weight bounds the norm of
/// the discarded remainder in the space given to the producing call
/// (unweighted l2 when no space is given); it is +inf when no finite bound
/// exists for that space.
struct SparseColumn {
  MonomialIndex source;
  std::vector<ColumnEntry> entries;
  double tail_weight = 0.0;
};

/// Atomic column expansions keeping expansion terms j = 0..order. Exact
/// zero coefficients are omitted.
SparseColumn apply_B(const BlaschkeParam& param, MonomialIndex source, int order,
                     const std::optional<SpaceConfig>& cfg = std::nullopt);
SparseColumn apply_T(const BlaschkeParam& param, MonomialIndex source, int order,
                     const std::optional<SpaceConfig>& cfg = std::nullopt);
SparseColumn apply_BK(const BlaschkeParam& param, int K, MonomialIndex source, int order,
                      const std::optional<SpaceConfig>& cfg = std::nullopt);
SparseColumn apply_TK(const BlaschkeParam& param, int K, MonomialIndex source, int order,
                      const std::optional<SpaceConfig>& cfg = std::nullopt);
SparseColumn apply_atomic(const MapSpec& spec, MonomialIndex source, int order,
                          const std::optional<SpaceConfig>& cfg = std::nullopt);

struct TruncationOptions {
  int order = 60;
  /// Entries with |coefficient| * weight(target) below this are discarded.
  double drop_tol = 0.0;
  /// Entries with |m| + |n| above this are discarded.
  int max_radius = std::numeric_limits<int>::max();
  std::optional<SpaceConfig> cfg;
};

struct SeriesImage {
  LaurentPolynomial series;
  /// Sum of the weighted magnitudes of everything discarded on the way.
  double tail_weight = 0.0;
};

/// Applies the composition operator to a finite series. For compositions the
/// factor operators are applied one after another, expanding every
/// intermediate monomial; duplicate targets are merged with compensated
/// summation in lexicographic source order.
SeriesImage apply_to_series(const MapSpec& spec, const LaurentPolynomial& series, const TruncationOptions& options);

SparseColumn apply_map(const MapSpec& spec, MonomialIndex source, const TruncationOptions& options);

/// Pi_{D_k} C Pi_{D_k} in the lexicographic basis of D_k.
struct BlockMatrix {
  int k = 0;
  std::vector<MonomialIndex> basis;
  CMatrix data;

  std::size_t dim() const { return basis.size(); }
};

/// Exact block: every expansion term landing in D_k is included, however far
/// along the expansion it sits. Compositions are the product of the factor
/// blocks. Throws for k = -1 and for compositions of maps that do not
/// increase deg_1.
BlockMatrix block_matrix(const MapSpec& spec, int k);

struct WindowOptions {
  /// Keep only expansion terms j <= order; negative means exact.
  int order = -1;
  /// Drop entries with |c| weight(target) / weight(source) below drop_tol.
  double drop_tol = 0.0;
  std::optional<SpaceConfig> cfg;
};

/// Pi_W C Pi_W on W = D_{k_min} + ... + D_{k_max}, block-major basis order
/// (see window_indices).
CMatrix windowed_matrix(const MapSpec& spec, int k_min, int k_max, const WindowOptions& options = {});

}  // namespace resonance
