#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "resonance/lattice.hpp"

using namespace resonance;

TEST_CASE("deg1 examples") {
  CHECK(deg1({2, 1}) == 3);
  CHECK(deg1({1, -1}) == -2);
  CHECK(deg1({-3, 0}) == 3);
  CHECK(deg1({0, 0}) == 0);
}

TEST_CASE("degphi examples") {
  CHECK(degphi({1, 1}, 2.0) == doctest::Approx(1.5));
  CHECK(degphi({1, -1}, 2.0) == doctest::Approx(-3.0));
  for (int m = -6; m <= 6; ++m) {
    for (int n = -6; n <= 6; ++n) CHECK(degphi({m, n}, 1.0) == deg1({m, n}));
  }
  CHECK_THROWS_AS(degphi({1, 1}, 0.5), std::invalid_argument);
}

TEST_CASE("space config validation") {
  CHECK_THROWS_AS(SpaceConfig::deg1(0.0), std::invalid_argument);
  CHECK_THROWS_AS(SpaceConfig::degphi(0.5, 0.9), std::invalid_argument);
  CHECK_THROWS_AS(SpaceConfig::make(WeightFamily::kDeg1, 0.5, 2.0), std::invalid_argument);
  CHECK_NOTHROW(SpaceConfig::degphi(0.5, 1.0));
  CHECK(parse_weight_family("anisotropic") == WeightFamily::kDegPhi);
  CHECK_THROWS_AS(parse_weight_family("nope"), std::invalid_argument);
}

TEST_CASE("weights") {
  for (const auto& cfg : {SpaceConfig::deg1(0.5), SpaceConfig::degphi(0.3, 1.7), SpaceConfig::symmetric_fr(0.4)}) {
    CHECK(weight({0, 0}, cfg) == 1.0);
  }
  CHECK(weight({1, -1}, SpaceConfig::deg1(0.5)) == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
  const double g = (std::sqrt(5.0) + 1.0) / 2.0;
  const double gp = (1.0 - std::sqrt(5.0)) / 2.0;
  CHECK(weight({1, 1}, SpaceConfig::symmetric_fr(0.5)) ==
        doctest::Approx(std::exp(-0.5 * std::abs(g + 1.0) + 0.5 * std::abs(gp + 1.0))).epsilon(1e-14));
}

TEST_CASE("weights are invariant under simultaneous negation") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> d(-500, 500);
  for (int i = 0; i < 2000; ++i) {
    const MonomialIndex idx{d(rng), d(rng)};
    const MonomialIndex neg{-idx.m, -idx.n};
    CHECK(deg1(idx) == deg1(neg));
    for (const auto& cfg : {SpaceConfig::deg1(0.01), SpaceConfig::degphi(0.01, 1.3), SpaceConfig::symmetric_fr(0.01)}) {
      CHECK(weight(idx, cfg) == doctest::Approx(weight(neg, cfg)).epsilon(1e-12));
    }
  }
}

TEST_CASE("symmetry of deg1, asymmetry of degphi") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> d(-300, 300);
  for (int i = 0; i < 2000; ++i) {
    const int m = d(rng), n = d(rng);
    CHECK(deg1({m, n}) == deg1({n, m}));
    const bool symmetric_case = std::abs(m) == std::abs(n) && static_cast<long long>(m) * n >= 0;
    if (!symmetric_case) CHECK(degphi({m, n}, 1.5) != degphi({n, m}, 1.5));
  }
}

TEST_CASE("degree-step inequality, exhaustive on |m|,|n| <= 200") {
  long long failures = 0;
  for (int m = -200; m <= 200; ++m) {
    for (int n = -200; n <= 200; ++n) {
      if (n != 0 && deg1({m + (n > 0 ? 1 : -1), n}) < deg1({m, n}) + 1) ++failures;
      if (m != 0 && deg1({m, n + (m > 0 ? 1 : -1)}) < deg1({m, n}) + 1) ++failures;
    }
  }
  CHECK(failures == 0);
}

TEST_CASE("block sizes up to |k| = 100") {
  CHECK(block_size(0) == 1);
  CHECK(block_size(-1) == 0);
  for (int k = -100; k <= 100; ++k) {
    const std::size_t expected = k == 0 ? 1 : k > 0 ? 2 * k + 2 : k <= -2 ? -2 * k - 2 : 0;
    CHECK(block_indices(k).indices.size() == expected);
    CHECK(block_size(k) == expected);
  }
}

TEST_CASE("blocks equal a brute-force lattice scan") {
  for (int k = -30; k <= 30; ++k) {
    const auto scan = oracle::lattice_scan(31, [k](int m, int n) { return oracle::ref_deg1(m, n) == k; });
    const Block b = block_indices(k);
    REQUIRE(b.indices.size() == scan.size());
    for (std::size_t i = 0; i < scan.size(); ++i) {
      CHECK(b.indices[i].m == scan[i].first);
      CHECK(b.indices[i].n == scan[i].second);
    }
  }
}

TEST_CASE("block examples") {
  const std::vector<MonomialIndex> k2{{-2, 0}, {-1, -1}, {0, -2}, {0, 2}, {1, 1}, {2, 0}};
  CHECK(block_indices(2).indices == k2);
  const std::vector<MonomialIndex> km2{{-1, 1}, {1, -1}};
  CHECK(block_indices(-2).indices == km2);
  CHECK(block_indices(0).indices == std::vector<MonomialIndex>{{0, 0}});
  CHECK(block_indices(-1).indices.empty());
}

TEST_CASE("windows") {
  CHECK(window_indices(0, 0) == std::vector<MonomialIndex>{{0, 0}});
  CHECK(window_indices(-2, 1).size() == 7);
  CHECK(window_indices(1, 2).size() == 10);
  const auto w = window_indices(-3, 3);
  std::size_t pos = 0;
  for (int k = -3; k <= 3; ++k) {
    for (const auto& idx : block_indices(k).indices) CHECK(w[pos++] == idx);
  }
  CHECK(pos == w.size());
  CHECK_THROWS_AS(window_indices(2, 1), std::invalid_argument);
}
