#include <doctest.h>

#include <cmath>
#include <random>

#include "resonance/analysis.hpp"

using namespace resonance;
using Complex = std::complex<double>;

TEST_CASE("space norms") {
  CHECK(space_norm(LaurentPolynomial::monomial({0, 0}), SpaceConfig::deg1(0.3)) == 1.0);
  CHECK(space_norm(LaurentPolynomial::monomial({1, -1}), SpaceConfig::deg1(0.5)) == doctest::Approx(std::exp(1.0)));
  LaurentPolynomial f;
  f.terms[{1, 1}] = 3.0;
  f.terms[{0, 0}] = Complex{0, 4};
  CHECK(space_norm(f, SpaceConfig::deg1(0.5)) == doctest::Approx(std::sqrt(9 * std::exp(-2.0) + 16)));
  CHECK(geometric_family_converges(std::exp(-0.2), SpaceConfig::degphi(0.05, 2.0)));
  CHECK_FALSE(geometric_family_converges(std::exp(-0.2), SpaceConfig::degphi(0.15, 2.0)));
  CHECK_THROWS_AS(geometric_family_converges(1.0, SpaceConfig::deg1(0.1)), std::invalid_argument);
}

TEST_CASE("B_0 columns are single monomials") {
  const SpaceConfig cfg = SpaceConfig::deg1(0.4);
  const MapSpec b0 = MapSpec::b(BlaschkeParam());
  const HsNormResult r = hs_norm(b0, cfg, 6, 20);
  double expected = 0.0;
  for (int m = -6; m <= 6; ++m) {
    for (int n = -6; n <= 6; ++n) {
      // B_0(z, w) = (z^2 w, z w) sends e_{m,n} to e_{2m+n, m+n}.
      const MonomialIndex target{2 * m + n, m + n};
      const double r2 = std::exp(-2 * 0.4 * (deg1(target) - deg1({m, n})));
      CHECK(r2 <= 1.0 + 1e-15);
      CHECK(r.per_column.at({m, n}) == doctest::Approx(r2).epsilon(1e-12));
      expected += r2;
    }
  }
  CHECK(r.value == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("HS bounds for B on deg1 weights") {
  for (const double a : {0.2, 0.5, 1.0}) {
    const BlaschkeParam l(Complex{0.4, -0.3});
    const SpaceConfig cfg = SpaceConfig::deg1(a);
    const MapSpec spec = MapSpec::b(l);
    const auto delta = hs_delta(spec, cfg);
    REQUIRE(delta);
    const double M = contraction_factor(l, a);
    const HsNormResult r = hs_norm(spec, cfg, 20, 200);
    for (const auto& [idx, r2] : r.per_column) {
      CHECK(r2 <= std::exp(-*delta * (std::abs(idx.m) + std::abs(idx.n))) * (1 + 1e-9));
      if (idx.m + idx.n != 0) CHECK(r2 <= std::exp(-2 * a * std::abs(idx.m)) * std::pow(M, std::abs(idx.m + idx.n)) * (1 + 1e-9));
    }
    REQUIRE(r.delta_bound);
    CHECK(r.value <= *r.delta_bound);
    CHECK(r.warnings.empty());
  }
}

TEST_CASE("HS bounds for T on deg_phi weights") {
  const BlaschkeParam l(Complex{0.3, 0.2});
  const SpaceConfig cfg = SpaceConfig::degphi(0.5, 1.2);
  const auto delta = hs_delta(MapSpec::t(l), cfg);
  REQUIRE(delta);
  const HsNormResult r = hs_norm(MapSpec::t(l), cfg, 15, 200);
  for (const auto& [idx, r2] : r.per_column) {
    CHECK(r2 <= std::exp(-*delta * (std::abs(idx.m) + std::abs(idx.n))) * (1 + 1e-9));
  }
  CHECK(std::isfinite(r.value));
  // Both factors of T_lambda o T_mu are HS under a common admissible space.
  const BlaschkeParam mu(Complex{-0.1, 0.4});
  const double worst = std::max(contraction_factor(l, 0.5), contraction_factor(mu, 0.5));
  CHECK(2 * 0.5 * 0.2 < -std::log(worst));
  CHECK(std::isfinite(hs_norm(MapSpec::t(mu), cfg, 10, 150).value));
  // Outside the admissible regime a warning is attached.
  CHECK_FALSE(hs_norm(MapSpec::t(BlaschkeParam(0.9)), SpaceConfig::degphi(0.5, 3.0), 2, 50).warnings.empty());
  CHECK_FALSE(hs_delta(MapSpec::t(l), SpaceConfig::deg1(0.5)));
}

TEST_CASE("non-compactness diagnostic") {
  const BlaschkeParam half(0.5);
  std::vector<int> ns;
  for (int n = 1; n <= 100; ++n) ns.push_back(n);
  const CompactnessReport sym = compactness_violation(half, 1, ns, SpaceConfig::deg1(0.5));
  CHECK(sym.swap_symmetric);
  CHECK(sym.lower_bound == 0.5);
  double running = INFINITY;
  for (const auto& [n, ratio] : sym.ratios) {
    running = std::min(running, ratio);
    CHECK(running >= 0.5);
  }
  const CompactnessReport aniso = compactness_violation(half, 1, {50}, SpaceConfig::degphi(0.5, 1.2));
  CHECK(aniso.ratios[0].second < 0.25);
  CHECK_FALSE(aniso.swap_symmetric);
  CHECK_FALSE(compactness_violation(half, 1, {3}, SpaceConfig::symmetric_fr(0.3)).swap_symmetric);
  CHECK_THROWS_AS(compactness_violation(BlaschkeParam(), 1, ns, SpaceConfig::deg1(0.5)), std::invalid_argument);
  CHECK_THROWS_AS(compactness_violation(half, 0, ns, SpaceConfig::deg1(0.5)), std::invalid_argument);
}

TEST_CASE("unboundedness witness") {
  // a(phi - 1) = 1.
  const UnboundednessWitness w = unboundedness_witness(BlaschkeParam(0.5), 1.0, 2.0);
  CHECK(w.n == -1);
  CHECK(w.ratio >= 1e3);
  CHECK(std::pow(0.5, w.m - 1) * std::exp(w.m - 2) < 1e3);
  CHECK(w.m == 26);
  CHECK(unboundedness_witness(BlaschkeParam(0.5), 1.0, 2.0, 0.4).ratio == doctest::Approx(0.5));
  CHECK_THROWS_AS(unboundedness_witness(BlaschkeParam(1e-6), 1.0, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(unboundedness_witness(BlaschkeParam(), 1.0, 2.0), std::invalid_argument);
}

TEST_CASE("decay fits") {
  std::vector<std::pair<int, Complex>> exact, mixed, alternating, zeros;
  for (int m = 0; m <= 30; ++m) {
    exact.emplace_back(m, 3.0 * std::pow(0.7, m));
    mixed.emplace_back(m, 2.0 * std::pow(0.6, m) + 5.0 * std::pow(0.2, m));
    alternating.emplace_back(m, std::pow(-0.4, m));
    zeros.emplace_back(m, 0.0);
  }
  const DecayFit e = fit_decay(exact, 0, 30);
  CHECK(e.fitted_rate == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(e.residual < 1e-12);
  CHECK(e.points_used == 31);
  CHECK(std::exp(e.intercept) == doctest::Approx(3.0));
  CHECK(fit_decay(mixed, 20, 30).fitted_rate == doctest::Approx(0.6).epsilon(1e-6));
  CHECK(fit_decay(alternating, 2, 10).fitted_rate == doctest::Approx(0.4).epsilon(1e-12));
  CHECK_THROWS_AS(fit_decay(zeros, 0, 30), std::invalid_argument);
  CHECK_THROWS_AS(fit_decay(exact, 0, 2), std::invalid_argument);
}

TEST_CASE("correlations") {
  std::mt19937_64 rng(7);
  const LaurentPolynomial f = generic_observable(rng);
  const LaurentPolynomial g = generic_observable(rng);
  CHECK(f.terms.size() == 49);
  for (const auto& [idx, c] : f.terms) CHECK(std::abs(c) < std::pow(0.5, std::abs(idx.m) + std::abs(idx.n)));

  // A constant observable has zero correlation.
  const LaurentPolynomial one = LaurentPolynomial::monomial({0, 0}, 2.0);
  for (const auto& s : correlate(MapSpec::b(BlaschkeParam(0.5)), one, g, 8).samples) CHECK(std::abs(s.value) < 1e-15);
  for (const auto& s : correlate(MapSpec::b(BlaschkeParam(0.5)), f, one, 8).samples) CHECK(std::abs(s.value) < 1e-15);

  // B_0 moves exponents away from g's support.
  const CorrelationRun cat = correlate(MapSpec::b(BlaschkeParam()), LaurentPolynomial::monomial({1, 0}),
                                       LaurentPolynomial::monomial({-1, 0}), 6);
  CHECK(std::abs(cat.samples[0].value - 1.0) < 1e-15);
  for (int m = 1; m <= 6; ++m) CHECK(cat.samples[m].value == Complex{});
  CHECK_FALSE(cat.fit);
  CHECK_FALSE(cat.fit_error.empty());

  // B_{0.5}: the decay rate is the largest nontrivial resonance modulus.
  CorrelationOptions opts;
  opts.window = std::pair{5, 18};
  const CorrelationRun run = correlate(MapSpec::b(BlaschkeParam(0.5)), f, g, 20, opts);
  REQUIRE(run.fit);
  CHECK(run.fit->fitted_rate == doctest::Approx(0.5).epsilon(0.1));
  CHECK(run.samples.size() == 21);
  for (std::size_t i = 1; i < run.samples.size(); ++i) CHECK(run.samples[i].tail_weight >= run.samples[i - 1].tail_weight);
}
