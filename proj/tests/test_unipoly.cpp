#include <catch2/catch_amalgamated.hpp>

#include "planestat/rng.hpp"
#include "planestat/unipoly.hpp"

using namespace planestat;

namespace {

UniPoly random_poly(const FieldSpec& F, int deg, SplitMix64& rng) {
  std::vector<std::uint16_t> c(static_cast<std::size_t>(deg) + 1);
  for (auto& v : c) v = static_cast<std::uint16_t>(rng.below(F.q()));
  return UniPoly(F, std::move(c));
}

}  // namespace

TEST_CASE("divmod invariants") {
  auto Fp = FieldSpec::make(5, 1);
  const FieldSpec& F = *Fp;
  SplitMix64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    UniPoly a = random_poly(F, static_cast<int>(rng.below(9)), rng);
    UniPoly b = random_poly(F, static_cast<int>(rng.below(5)), rng);
    if (b.is_zero()) continue;
    auto [q, r] = UniPoly::divmod(a, b);
    REQUIRE(q * b + r == a);
    REQUIRE(r.degree() < b.degree());
  }
}

TEST_CASE("gcd and ext_gcd") {
  auto Fp = FieldSpec::make(3, 1);
  const FieldSpec& F = *Fp;
  SplitMix64 rng(2);
  for (int trial = 0; trial < 150; ++trial) {
    UniPoly a = random_poly(F, static_cast<int>(rng.below(7)), rng);
    UniPoly b = random_poly(F, static_cast<int>(rng.below(7)), rng);
    if (a.is_zero() && b.is_zero()) continue;
    UniPoly g = UniPoly::gcd(a, b);
    REQUIRE(!g.is_zero());
    REQUIRE(g.lc() == F.one());
    REQUIRE((a % g).is_zero());
    REQUIRE((b % g).is_zero());
    auto [g2, u, v] = UniPoly::ext_gcd(a, b);
    REQUIRE(g2 == g);
    REQUIRE(u * a + v * b == g);
  }
}

TEST_CASE("factorization reassembles the input") {
  for (auto [p, k] : {std::pair{2u, 1u}, {3u, 1u}, {5u, 1u}, {2u, 2u}, {3u, 2u}}) {
    auto Fp = FieldSpec::make(p, k);
    const FieldSpec& F = *Fp;
    SplitMix64 rng(17 + p + k);
    for (int trial = 0; trial < 40; ++trial) {
      UniPoly f = random_poly(F, 2 + static_cast<int>(rng.below(8)), rng);
      if (f.degree() < 1) continue;
      auto factors = factorize(f);
      UniPoly prod = UniPoly::constant(F, F.one());
      int total_deg = 0;
      for (const auto& [fac, mult] : factors) {
        REQUIRE(fac.lc() == F.one());
        REQUIRE(is_irreducible(fac));
        for (int i = 0; i < mult; ++i) prod = prod * fac;
        total_deg += fac.degree() * mult;
      }
      REQUIRE(prod == f.monic());
      REQUIRE(total_deg == f.degree());
    }
  }
}

TEST_CASE("x^q - x splits into all monic linear factors") {
  auto Fp = FieldSpec::make(7, 1);
  const FieldSpec& F = *Fp;
  std::vector<std::uint16_t> c(8, 0);
  c[1] = F.neg(F.one()).code;  // -x
  c[7] = 1;                    // x^7
  auto factors = factorize(UniPoly(F, std::move(c)));
  REQUIRE(factors.size() == 7);
  for (const auto& [fac, mult] : factors) {
    REQUIRE(fac.degree() == 1);
    REQUIRE(mult == 1);
  }
}

TEST_CASE("factorization is deterministic") {
  auto Fp = FieldSpec::make(3, 1);
  const FieldSpec& F = *Fp;
  SplitMix64 rng(5);
  UniPoly f = random_poly(F, 9, rng) * random_poly(F, 4, rng);
  auto a = factorize(f);
  auto b = factorize(f);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    REQUIRE(a[i].first == b[i].first);
    REQUIRE(a[i].second == b[i].second);
  }
}

TEST_CASE("repeated and inseparable factors") {
  auto Fp = FieldSpec::make(2, 1);
  const FieldSpec& F = *Fp;
  UniPoly x = UniPoly::x(F);
  UniPoly one = UniPoly::constant(F, F.one());
  // (x^2 + x + 1)^2: derivative vanishes, needs the p-th-root path
  UniPoly irr(F, {1, 1, 1});
  auto factors = factorize(irr * irr);
  REQUIRE(factors.size() == 1);
  REQUIRE(factors[0].first == irr);
  REQUIRE(factors[0].second == 2);
  // x^3 (x + 1)
  factors = factorize(x * x * x * (x + one));
  REQUIRE(factors.size() == 2);
}

TEST_CASE("extension field tower F_q[x]/(m)") {
  auto Fp = FieldSpec::make(3, 1);
  const FieldSpec& F = *Fp;
  UniPoly m(F, {1, 0, 1});  // x^2 + 1, irreducible over F_3
  REQUIRE(is_irreducible(m));
  ExtField K(F, m);
  REQUIRE(K.ext_degree() == 2);
  SplitMix64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    UniPoly a = K.reduce(random_poly(F, 3, rng));
    if (a.is_zero()) continue;
    REQUIRE(K.mul(a, K.inv(a)) == K.one());
  }
  REQUIRE_THROWS(K.inv(K.zero()));
}
