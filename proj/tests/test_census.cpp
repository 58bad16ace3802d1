#include <cmath>

#include <catch2/catch_amalgamated.hpp>

#include "planestat/census.hpp"
#include "planestat/eval_map.hpp"

using namespace planestat;

TEST_CASE("raw exhaustive census equals the brute-force distribution") {
  auto F = FieldSpec::make(2, 1);
  const int d = 3;
  TraceHistogram hist = census_exhaustive(F, d, false);
  DistributionExact brute = brute_force_distribution(F, d);
  REQUIRE(hist.total == total_forms(F, d));
  REQUIRE(hist.rejected_singular == 0);
  // t = q + 1 - n
  std::map<int, BigInt> reindexed;
  for (const auto& [n, c] : brute.counts)
    if (c != 0) reindexed[3 - n] = c;
  REQUIRE(hist.counts == reindexed);
}

TEST_CASE("smooth census equals the per-form oracle") {
  for (auto [p, d] : {std::pair{2u, 3}, {2u, 4}, {3u, 3}}) {
    auto F = FieldSpec::make(p, 1);
    TraceHistogram hist = census_exhaustive(F, d, true);
    std::map<int, BigInt> expect;
    BigInt rejected = 0;
    const int q1 = static_cast<int>(p) + 1;
    for (FormIterator it(F, d); !it.done(); it.advance()) {
      TernaryForm f = it.form();
      if (!is_smooth(f))
        rejected += 1;
      else
        expect[q1 - count_points(f)] += 1;
    }
    REQUIRE(hist.counts == expect);
    REQUIRE(hist.rejected_singular == rejected);
  }
}

TEST_CASE("exhaustive census is shard-count invariant") {
  auto F = FieldSpec::make(3, 1);
  TraceHistogram one = census_exhaustive(F, 3, true, 1);
  for (std::size_t shards : {2ul, 8ul}) {
    TraceHistogram many = census_exhaustive(F, 3, true, shards);
    REQUIRE(one.counts == many.counts);
    REQUIRE(one.total == many.total);
    REQUIRE(one.rejected_singular == many.rejected_singular);
  }
}

TEST_CASE("monte carlo census is seeded and shard-oblivious") {
  auto F = FieldSpec::make(2, 1);
  TraceHistogram a = census_monte_carlo(F, 4, 20000, 7, true, 1);
  TraceHistogram b = census_monte_carlo(F, 4, 20000, 7, true, 8);
  REQUIRE(a.counts == b.counts);
  REQUIRE(a.rejected_singular == b.rejected_singular);
  TraceHistogram c = census_monte_carlo(F, 4, 20000, 8, true, 1);
  REQUIRE(a.counts != c.counts);
}

TEST_CASE("monte carlo frequencies track the exhaustive census") {
  auto F = FieldSpec::make(2, 1);
  const int d = 4;
  TraceHistogram ex = census_exhaustive(F, d, false);
  const std::uint64_t samples = 100000;
  TraceHistogram mc = census_monte_carlo(F, d, samples, 1, false);
  double n_forms = BigInt(ex.total).convert_to<double>();
  for (const auto& [t, c] : ex.counts) {
    double p = BigInt(c).convert_to<double>() / n_forms;
    double expected = p * static_cast<double>(samples);
    if (expected < 30) continue;
    auto it = mc.counts.find(t);
    double observed = it == mc.counts.end() ? 0.0 : BigInt(it->second).convert_to<double>();
    double se = std::sqrt(static_cast<double>(samples) * p * (1 - p));
    REQUIRE(std::abs(observed - expected) <= 4 * se);
  }
}

TEST_CASE("point counting matches direct evaluation") {
  auto F = FieldSpec::make(3, 1);
  for (std::uint64_t i = 0; i < 50; ++i) {
    TernaryForm f = sample_form(F, 4, 3, i);
    int direct = 0;
    for (const auto& P : enumerate_points(F))
      if (evaluate(f, P) == F->zero()) ++direct;
    REQUIRE(count_points(f) == direct);
  }
}

TEST_CASE("group order") {
  REQUIRE(gl3_order(2) == 168);
  REQUIRE(gl3_order(3) == 11232);
  // (q^3-1)(q^3-q)(q^3-q^2) at q=5
  REQUIRE(gl3_order(5) == BigInt(124) * 120 * 100);
}

TEST_CASE("normalization identities") {
  auto F = FieldSpec::make(2, 1);
  TraceHistogram hist = census_exhaustive(F, 4, true);
  KsSummary ks = ks_normalize(hist);
  REQUIRE(ks.has_ks);
  const double sq = std::sqrt(2.0);
  double mass = 0;
  for (const auto& row : ks.rows) {
    REQUIRE(row.x == Catch::Approx(row.t / sq));
    mass += row.density / sq;
    REQUIRE(row.std_error >= 0);
  }
  // densities over the smooth forms sum to 1
  double smooth_frac = BigRational(BigInt(hist.total) - hist.rejected_singular,
                                   BigInt(hist.total)).convert_to<double>();
  REQUIRE(mass == Catch::Approx(smooth_frac).epsilon(1e-12));

  // v_value is antisymmetric in t by construction
  std::map<int, double> v;
  for (const auto& row : ks.rows) v[row.t] = row.v_value;
  for (const auto& [t, val] : v)
    if (v.count(-t)) REQUIRE(val == Catch::Approx(-v[-t]).margin(1e-15));

  // raw histograms carry no Katz-Sarnak column
  REQUIRE(!ks_normalize(census_exhaustive(F, 3, false)).has_ks);
}

TEST_CASE("oversized instances are refused") {
  auto F = FieldSpec::make(53, 1);
  REQUIRE_THROWS_AS(census_exhaustive(F, 4, false), std::domain_error);
}
