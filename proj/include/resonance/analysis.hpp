#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "resonance/blaschke.hpp"
#include "resonance/composition_operator.hpp"
#include "resonance/lattice.hpp"
#include "resonance/laurent.hpp"

namespace resonance {

// ---- Hilbert-Schmidt estimates -------------------------------------------

/// (||C e_{m,n}|| / ||e_{m,n}||)^2 including the column's tail bound; +inf
/// when the tail cannot be bounded in cfg.
double column_ratio_squared(const MapSpec& spec, MonomialIndex source, const SpaceConfig& cfg, int order);

/// Column decay exponent: min(-log(M)/2, a) for B on deg_1 weights, and
/// min(2a(phi-1)/phi, 2a(1-phi) - log M) for T-type maps on deg_phi weights.
/// nullopt for other combinations or when the exponent is not positive.
std::optional<double> hs_delta(const MapSpec& spec, const SpaceConfig& cfg);

struct HsNormResult {
  double value = 0.0;
  std::map<MonomialIndex, double> per_column;  // ratio squared
  std::optional<double> delta;
  /// sum_{|m|,|n| <= radius} e^{-delta (|m|+|n|)} when delta is known.
  std::optional<double> delta_bound;
  std::vector<std::string> warnings;
};

/// Sum of per-column ratios squared over |m|, |n| <= radius.
HsNormResult hs_norm(const MapSpec& spec, const SpaceConfig& cfg, int radius, int order);

// ---- Compactness and boundedness diagnostics ------------------------------

struct CompactnessReport {
  std::vector<std::pair<int, double>> ratios;  // (n, ||C e_{m,n}|| / ||e_{m,n}||)
  double lower_bound = 0.0;                    // |lambda|^m
  /// ||e_{m,n}|| == ||e_{n,m}|| for every probed n; the lower bound relies on it.
  bool swap_symmetric = true;
};

/// Column ratios of C_{T_lambda} along e_{m,n}, n in n_list. Throws for
/// lambda = 0 or m < 1.
CompactnessReport compactness_violation(const BlaschkeParam& param, int m, const std::vector<int>& n_list,
                                        const SpaceConfig& cfg, int order = 200);

struct UnboundednessWitness {
  int m = 0;
  int n = 0;
  double ratio = 0.0;  // |lambda|^m e^{a(phi-1)(m+n)}, a lower bound on the column ratio
};

/// Smallest m with n = -1 whose lower-bound ratio reaches `threshold`.
/// Requires lambda != 0 and -log|lambda| < a(phi-1).
UnboundednessWitness unboundedness_witness(const BlaschkeParam& param, double a, double phi,
                                           double threshold = 1e3);

// ---- Norms ----------------------------------------------------------------

double space_norm(const LaurentPolynomial& f, const SpaceConfig& cfg);

/// Whether b_{m,n} = rho^{|m|+|n|} has finite norm in cfg: a max(1, phi) < -log rho.
bool geometric_family_converges(double rho, const SpaceConfig& cfg);

// ---- Correlations -----------------------------------------------------------

struct CorrelationSample {
  int m = 0;
  Complex value;
  double tail_weight = 0.0;
  /// The dropped mass could account for the whole value.
  bool starved = false;
};

struct DecayFit {
  double fitted_log_slope = 0.0;
  double fitted_rate = 0.0;
  double intercept = 0.0;
  int window_begin = 0;
  int window_end = 0;
  std::size_t points_used = 0;
  /// Root-mean-square residual of the fit in log|value|.
  double residual = 0.0;
};

/// Least squares on (m, log|value|) over m in [window_begin, window_end],
/// skipping zero values. Throws with fewer than 4 usable points.
DecayFit fit_decay(const std::vector<std::pair<int, Complex>>& samples, int window_begin, int window_end);

struct CorrelationOptions {
  int max_radius = 40;
  int order = 60;
  double drop_tol = 1e-16;
  SpaceConfig cfg = SpaceConfig::deg1(0.1);
  /// Defaults to [m_max / 4, m_max].
  std::optional<std::pair<int, int>> window;
};

struct CorrelationRun {
  std::vector<CorrelationSample> samples;  // m = 0..m_max
  std::optional<DecayFit> fit;
  std::string fit_error;
};

/// corr(m) = sum c^{(m)}_{p,q} g_{-p,-q} - c^{(0)}_{0,0} g_{0,0}, where c^{(m)}
/// are the coefficients of f o T^m. Starved samples stay in the fit; the flag
/// is informational.
CorrelationRun correlate(const MapSpec& spec, const LaurentPolynomial& f, const LaurentPolynomial& g, int m_max,
                         const CorrelationOptions& options = {});

/// b_{m,n} = 0.5^{|m|+|n|} u_{m,n} on |m|, |n| <= 3 with u uniform in the
/// unit disk, drawn by rejection from the generator's raw output.
LaurentPolynomial generic_observable(std::mt19937_64& rng);

}  // namespace resonance
