#include <catch2/catch_amalgamated.hpp>

#include "planestat/field.hpp"
#include "planestat/rng.hpp"

using namespace planestat;

namespace {

using Field = std::shared_ptr<const FieldSpec>;

// sampled ring-axiom check; exhaustive when q is small
void check_axioms(const Field& F, std::size_t samples) {
  const std::uint32_t q = F->q();
  SplitMix64 rng(7);
  auto rnd = [&] { return F->element(static_cast<std::uint32_t>(rng.below(q))); };
  for (std::size_t i = 0; i < samples; ++i) {
    FieldElement a = rnd(), b = rnd(), c = rnd();
    REQUIRE(F->add(a, b) == F->add(b, a));
    REQUIRE(F->mul(a, b) == F->mul(b, a));
    REQUIRE(F->add(F->add(a, b), c) == F->add(a, F->add(b, c)));
    REQUIRE(F->mul(F->mul(a, b), c) == F->mul(a, F->mul(b, c)));
    REQUIRE(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)));
    REQUIRE(F->add(a, F->neg(a)) == F->zero());
    REQUIRE(F->sub(a, b) == F->add(a, F->neg(b)));
    if (a.code != 0) {
      REQUIRE(F->mul(a, F->inv(a)) == F->one());
      REQUIRE(F->div(b, a) == F->mul(b, F->inv(a)));
    }
  }
}

}  // namespace

TEST_CASE("prime field arithmetic") {
  for (std::uint32_t p : {2u, 3u, 5u, 53u}) {
    auto F = FieldSpec::make(p, 1);
    REQUIRE(F->q() == p);
    REQUIRE(F->all_elements().size() == p);
    check_axioms(F, 400);
    // from_int wraps mod p
    REQUIRE(F->from_int(p) == F->zero());
    REQUIRE(F->from_int(-1) == F->neg(F->one()));
  }
}

TEST_CASE("extension field arithmetic") {
  for (auto [p, k] : {std::pair{2u, 2u}, {2u, 4u}, {3u, 2u}, {3u, 3u}, {5u, 2u}}) {
    auto F = FieldSpec::make(p, k);
    std::uint32_t q = 1;
    for (std::uint32_t i = 0; i < k; ++i) q *= p;
    REQUIRE(F->q() == q);
    check_axioms(F, 400);
    // Frobenius is additive: (a+b)^p = a^p + b^p
    SplitMix64 rng(11);
    for (int i = 0; i < 100; ++i) {
      FieldElement a = F->element(static_cast<std::uint32_t>(rng.below(q)));
      FieldElement b = F->element(static_cast<std::uint32_t>(rng.below(q)));
      REQUIRE(F->pow(F->add(a, b), p) == F->add(F->pow(a, p), F->pow(b, p)));
    }
    // multiplicative group has order q-1
    for (std::uint32_t c = 1; c < q; ++c)
      REQUIRE(F->pow(F->element(c), static_cast<long long>(q) - 1) == F->one());
  }
}

TEST_CASE("modulus is the lex-smallest monic irreducible") {
  // F_4: x^2 + x + 1 is the only irreducible quadratic over F_2
  auto F4 = FieldSpec::make(2, 2);
  REQUIRE(F4->modulus() == std::vector<std::uint16_t>{1, 1, 1});
  // F_9: x^2 + 1 precedes x^2 + x + 2 and x^2 + 2x + 2
  auto F9 = FieldSpec::make(3, 2);
  REQUIRE(F9->modulus() == std::vector<std::uint16_t>{1, 0, 1});
}

TEST_CASE("tabled and slow multiplication agree") {
  // q = 2^13 exceeds the table limit; cross-check against F_{2^12}^ identities
  auto big = FieldSpec::make(2, 13);
  REQUIRE(big->mul_table().empty());
  SplitMix64 rng(3);
  for (int i = 0; i < 200; ++i) {
    FieldElement a = big->element(static_cast<std::uint32_t>(rng.below(big->q())));
    if (a.code == 0) continue;
    REQUIRE(big->mul(a, big->inv(a)) == big->one());
    REQUIRE(big->pow(a, static_cast<long long>(big->q()) - 1) == big->one());
  }
  check_axioms(big, 300);
}

TEST_CASE("pow handles edge cases") {
  auto F = FieldSpec::make(7, 1);
  FieldElement a = F->element(3);
  REQUIRE(F->pow(a, 0) == F->one());
  REQUIRE(F->pow(F->zero(), 5) == F->zero());
  REQUIRE(F->pow(a, -1) == F->inv(a));
  FieldElement acc = F->one();
  for (int e = 1; e <= 20; ++e) {
    acc = F->mul(acc, a);
    REQUIRE(F->pow(a, e) == acc);
  }
}

TEST_CASE("invalid constructions are rejected") {
  REQUIRE_THROWS(FieldSpec::make(4, 1));   // not prime
  REQUIRE_THROWS(FieldSpec::make(2, 17));  // above 2^16
  auto F = FieldSpec::make(5, 1);
  REQUIRE_THROWS(F->inv(F->zero()));
  REQUIRE_THROWS(F->element(5));
}
