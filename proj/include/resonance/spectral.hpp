#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "resonance/composition_operator.hpp"
#include "resonance/eigensolver.hpp"
#include "resonance/matrix.hpp"

namespace resonance {

struct SpectrumEntry {
  Complex value;
  std::size_t multiplicity = 1;
  /// Contributing block levels joined by ';' (e.g. "3;5"), or "theory".
  std::string provenance;
};

/// Coalesced eigenvalue multiset, sorted by descending modulus then argument.
struct SpectrumMultiset {
  std::vector<SpectrumEntry> entries;
  double modulus_floor = 0.0;
  /// Largest eigenvalue modulus any block outside the computed range can
  /// contribute (+inf when unknown); `complete` when it is below the floor.
  double omitted_modulus_bound = 0.0;
  bool complete = true;

  std::size_t total_multiplicity() const;
  /// Total multiplicity of entries within the merge radius of `value`.
  std::size_t multiplicity_of(Complex value) const;
};

/// |a - b| <= max(1e-10, 1e-8 |a|).
bool within_merge_radius(Complex a, Complex b);

/// Merges values within the merge radius, drops values below the floor and
/// sorts. Values within a relative 1e-12 of the floor are kept.
SpectrumMultiset coalesce(const std::vector<SpectrumEntry>& raw, double modulus_floor);

/// Eigenvalues of a matrix with at most one nonzero per row and per column,
/// read off its cycles: an L-cycle with entry product P contributes the L
/// roots of x^L = P, every other index a zero. nullopt for other patterns.
std::optional<std::vector<Complex>> structured_eigenvalues(const CMatrix& matrix);

/// Eigenvalues of block_matrix(spec, k), zeros included. Throws
/// EigensolverError if the dense fallback fails.
SpectrumMultiset block_spectrum(const MapSpec& spec, int k);

struct SpectrumOptions {
  int k_min = 0;
  int k_max = 0;
  double modulus_floor = 0.0;
  /// 0 means RESONANCE_THREADS, or the hardware concurrency when unset.
  unsigned threads = 0;
};

/// Union of block spectra over [k_min, k_max] (k = -1 skipped), merged in
/// ascending k.
SpectrumMultiset spectrum(const MapSpec& spec, const SpectrumOptions& options);

/// Upper bound on the modulus of eigenvalues from blocks outside
/// [k_min, k_max]; +inf for kinds without a closed form.
double omitted_modulus_bound(const MapSpec& spec, int k_min, int k_max);

struct LevelRange {
  int k_min = 0;
  int k_max = 0;
};

/// Closed-form spectrum for B, T, BK, TK and compositions of two T-type
/// factors, each value tagged with its block level. With a zero floor the
/// zero eigenvalues of every block are included, which requires `levels`.
SpectrumMultiset theoretical_spectrum(const MapSpec& spec, double modulus_floor,
                                      std::optional<LevelRange> levels = std::nullopt);

struct MatchPair {
  Complex computed;
  Complex theoretical;
  double distance = 0.0;
};

struct MatchReport {
  std::vector<MatchPair> matched;
  std::vector<Complex> missing_theoretical;
  std::vector<Complex> spurious_computed;
  double max_distance = 0.0;

  bool ok() const { return missing_theoretical.empty() && spurious_computed.empty(); }
};

/// Multiplicity-aware pairing: all unit pairs within tol are taken in order
/// of increasing distance.
MatchReport match(const SpectrumMultiset& computed, const SpectrumMultiset& theoretical, double tol);

struct SemisimplicityCheck {
  Complex value;
  std::size_t multiplicity = 0;
  std::size_t rank = 0;
  std::size_t expected_rank = 0;

  bool ok() const { return rank == expected_rank; }
};

/// For every nonzero eigenvalue rho of `block`, compares rank(block - rho I)
/// at relative tolerance rel_tol with dim - mult(rho).
std::vector<SemisimplicityCheck> semisimplicity_checks(const CMatrix& block, const SpectrumMultiset& spectrum,
                                                       double rel_tol = 1e-8);

}  // namespace resonance
