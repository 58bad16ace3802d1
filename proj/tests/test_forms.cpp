#include <set>

#include <catch2/catch_amalgamated.hpp>

#include "planestat/forms.hpp"

using namespace planestat;

TEST_CASE("monomial basis ordering and index") {
  for (int d = 0; d <= 6; ++d) {
    MonomialBasis b(d);
    REQUIRE(b.exponents.size() == MonomialBasis::size(d));
    for (std::size_t m = 0; m < b.exponents.size(); ++m) {
      auto [i, j, k] = b.exponents[m];
      REQUIRE(i + j + k == d);
      REQUIRE(MonomialBasis::index(d, i, j) == m);
    }
  }
}

TEST_CASE("point enumeration covers P^2 exactly once") {
  for (auto [p, k] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 2u}, {5u, 1u}}) {
    auto F = FieldSpec::make(p, k);
    auto pts = enumerate_points(F);
    const std::uint32_t q = F->q();
    REQUIRE(pts.size() == static_cast<std::size_t>(q) * q + q + 1);
    // representatives are canonical (first nonzero coordinate is 1) and distinct
    std::set<std::array<std::uint16_t, 3>> seen;
    for (const auto& P : pts) {
      std::size_t lead = 0;
      while (lead < 3 && P.coords[lead].code == 0) ++lead;
      REQUIRE(lead < 3);
      REQUIRE(P.coords[lead] == F->one());
      seen.insert({P.coords[0].code, P.coords[1].code, P.coords[2].code});
    }
    REQUIRE(seen.size() == pts.size());
  }
}

TEST_CASE("evaluation is scale-invariant on zero sets") {
  auto F = FieldSpec::make(5, 1);
  SplitMix64 rng(4);
  TernaryForm f = sample_form(F, 3, 99, 0);
  for (const auto& P : enumerate_points(F)) {
    FieldElement v = evaluate(f, P);
    for (std::uint32_t s = 1; s < 5; ++s) {
      std::array<FieldElement, 3> scaled;
      for (int i = 0; i < 3; ++i) scaled[i] = F->mul(P.coords[i], F->element(s));
      // f(s v) = s^d f(v)
      REQUIRE(evaluate_at_lift(f, scaled) == F->mul(v, F->pow(F->element(s), f.d)));
    }
  }
}

TEST_CASE("Euler identity for partials") {
  // x f_x + y f_y + z f_z = d f, checked pointwise
  for (auto [p, d] : {std::pair{5u, 3}, {3u, 4}, {2u, 4}, {7u, 2}}) {
    auto F = FieldSpec::make(p, 1);
    TernaryForm f = sample_form(F, d, 7, p);
    TernaryForm fx = partial(f, Var::x), fy = partial(f, Var::y), fz = partial(f, Var::z);
    for (const auto& P : enumerate_points(F)) {
      FieldElement lhs = F->mul(P.coords[0], evaluate(fx, P));
      lhs = F->add(lhs, F->mul(P.coords[1], evaluate(fy, P)));
      lhs = F->add(lhs, F->mul(P.coords[2], evaluate(fz, P)));
      REQUIRE(lhs == F->mul(F->from_int(d), evaluate(f, P)));
    }
  }
}

TEST_CASE("substitution action composes contravariantly") {
  auto F = FieldSpec::make(5, 1);
  SplitMix64 rng(12);
  auto random_gl3 = [&] {
    while (true) {
      Gl3Matrix M{F, {}};
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          M.m[i][j] = F->element(static_cast<std::uint32_t>(rng.below(5)));
      if (M.invertible()) return M;
    }
  };
  for (int trial = 0; trial < 20; ++trial) {
    TernaryForm f = sample_form(F, 3, 31, static_cast<std::uint64_t>(trial));
    Gl3Matrix A = random_gl3(), B = random_gl3();
    // evaluate(act(f, M), v) == evaluate(f, M v)
    for (const auto& P : enumerate_points(F))
      REQUIRE(evaluate(act(f, A), P) == evaluate_at_lift(f, A.apply(P.coords)));
    REQUIRE(act(act(f, A), B) == act(f, A * B));
    REQUIRE(act(act(f, A), A.inverse()) == f);
  }
}

TEST_CASE("matrix inverse and determinant") {
  auto F = FieldSpec::make(3, 1);
  SplitMix64 rng(8);
  Gl3Matrix I = Gl3Matrix::identity(F);
  REQUIRE(I.det() == F->one());
  int found = 0;
  while (found < 30) {
    Gl3Matrix M{F, {}};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) M.m[i][j] = F->element(static_cast<std::uint32_t>(rng.below(3)));
    if (!M.invertible()) continue;
    ++found;
    Gl3Matrix P = M * M.inverse();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) REQUIRE(P.m[i][j] == I.m[i][j]);
  }
}

TEST_CASE("form iterator enumerates each shard partition exactly once") {
  auto F = FieldSpec::make(3, 1);
  const int d = 2;
  std::set<std::vector<std::uint16_t>> all;
  for (FormIterator it(F, d); !it.done(); it.advance()) all.insert(it.coeffs());
  REQUIRE(BigInt(all.size()) == total_forms(F, d));

  for (std::size_t shards : {2ul, 4ul, 7ul}) {
    std::set<std::vector<std::uint16_t>> merged;
    for (std::size_t s = 0; s < shards; ++s)
      for (FormIterator it(F, d, s, shards); !it.done(); it.advance()) {
        REQUIRE(merged.insert(it.coeffs()).second);  // disjoint
      }
    REQUIRE(merged == all);
  }
}

TEST_CASE("advance reports the smallest changed coefficient") {
  auto F = FieldSpec::make(2, 1);
  FormIterator it(F, 2);
  auto prev = it.coeffs();
  while (true) {
    std::size_t changed = it.advance();
    if (it.done()) break;
    const auto& cur = it.coeffs();
    for (std::size_t c = 0; c < changed; ++c) REQUIRE(cur[c] == prev[c]);
    REQUIRE(cur[changed] != prev[changed]);
    prev = cur;
  }
}

TEST_CASE("sample_form is reproducible and shard-oblivious") {
  auto F = FieldSpec::make(53, 1);
  for (std::uint64_t i : {0ull, 1ull, 999ull}) {
    TernaryForm a = sample_form(F, 4, 42, i);
    TernaryForm b = sample_form(F, 4, 42, i);
    REQUIRE(a == b);
  }
  REQUIRE(!(sample_form(F, 4, 42, 0) == sample_form(F, 4, 42, 1)));
  REQUIRE(!(sample_form(F, 4, 42, 0) == sample_form(F, 4, 43, 0)));
}

TEST_CASE("filling generators vanish on every rational point") {
  for (auto [p, k] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 2u}, {5u, 1u}}) {
    auto F = FieldSpec::make(p, k);
    for (const auto& g : filling_generators(F)) {
      REQUIRE(g.d == static_cast<int>(F->q()) + 1);
      for (const auto& P : enumerate_points(F)) REQUIRE(evaluate(g, P) == F->zero());
    }
  }
}

TEST_CASE("delta forms hit exactly their target point") {
  for (auto [p, k] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 2u}}) {
    auto F = FieldSpec::make(p, k);
    const int q = static_cast<int>(F->q());
    auto pts = enumerate_points(F);
    for (int d : {2 * q - 1, 2 * q + 1}) {
      for (const auto& target : pts) {
        TernaryForm delta = lemma32_form(F, d, target);
        for (const auto& P : pts)
          REQUIRE((evaluate(delta, P) == F->zero()) == (P.index != target.index));
      }
    }
    REQUIRE_THROWS(lemma32_form(F, 2 * q - 2, pts[0]));
  }
}
