#include <catch2/catch_amalgamated.hpp>

#include "planestat/census.hpp"
#include "planestat/smooth.hpp"

using namespace planestat;

TEST_CASE("search depth bound") {
  REQUIRE(singular_search_bound(1) == 1);
  REQUIRE(singular_search_bound(2) == 2);
  REQUIRE(singular_search_bound(3) == 3);
  REQUIRE(singular_search_bound(4) == 4);
  REQUIRE(singular_search_bound(5) == 16);
  REQUIRE(singular_search_bound(6) == 25);
}

TEST_CASE("known smooth and singular curves") {
  auto F2 = FieldSpec::make(2, 1);
  auto F3 = FieldSpec::make(3, 1);

  // Klein quartic x^3 y + y^3 z + z^3 x is smooth away from characteristic 7
  {
    TernaryForm f(F2, 4);
    f.at(3, 1) = F2->one();
    f.at(0, 3) = F2->one();
    f.at(1, 0) = F2->one();
    REQUIRE(is_smooth(f));
  }
  // Fermat quartic: smooth in characteristic 3, a 4th power of a line in char 2
  {
    TernaryForm f(F3, 4);
    f.at(4, 0) = F3->one();
    f.at(0, 4) = F3->one();
    f.at(0, 0) = F3->one();
    REQUIRE(is_smooth(f));
    TernaryForm g(F2, 4);
    g.at(4, 0) = F2->one();
    g.at(0, 4) = F2->one();
    g.at(0, 0) = F2->one();
    REQUIRE(!is_smooth(g));
  }
  // nodal cubic zy^2 = x^3 + x^2 z has a singular point at (0:0:1)
  {
    TernaryForm f(F3, 3);
    f.at(0, 2) = F3->one();
    f.at(3, 0) = F3->neg(F3->one());
    f.at(2, 0) = F3->neg(F3->one());
    REQUIRE(!is_smooth(f));
  }
  // smooth conic over F_2: x^2 + yz
  {
    TernaryForm f(F2, 2);
    f.at(2, 0) = F2->one();
    f.at(0, 1) = F2->one();
    REQUIRE(is_smooth(f));
  }
  // the zero form and p-th powers are singular by convention
  REQUIRE(!is_smooth(TernaryForm(F2, 4)));
  {
    TernaryForm sq(F2, 2);  // (x + y)^2 = x^2 + y^2
    sq.at(2, 0) = F2->one();
    sq.at(0, 2) = F2->one();
    REQUIRE(!is_smooth(sq));
  }
}

TEST_CASE("elimination agrees with the enumeration oracle exhaustively at q=2") {
  auto F = FieldSpec::make(2, 1);
  for (int d = 1; d <= 3; ++d) {
    for (FormIterator it(F, d); !it.done(); it.advance()) {
      TernaryForm f = it.form();
      bool oracle = f.is_zero() || has_singular_point_up_to(f, singular_search_bound(d));
      REQUIRE(is_smooth(f) == !oracle);
    }
  }
}

TEST_CASE("elimination agrees with the enumeration oracle on samples") {
  struct Case {
    std::uint32_t p;
    int d;
    int n;
  };
  for (auto [p, d, n] : {Case{2, 4, 400}, Case{3, 4, 150}, Case{5, 2, 200}, Case{3, 3, 200}}) {
    auto F = FieldSpec::make(p, 1);
    int checked = 0;
    for (std::uint64_t i = 0; checked < n; ++i) {
      TernaryForm f = sample_form(F, d, 1000 + p, i);
      if (f.is_zero()) continue;
      ++checked;
      REQUIRE(is_smooth(f) == !has_singular_point_up_to(f, singular_search_bound(d)));
    }
  }
}

TEST_CASE("smoothness survives coordinate changes") {
  auto F = FieldSpec::make(3, 1);
  SplitMix64 rng(77);
  auto random_gl3 = [&] {
    while (true) {
      Gl3Matrix M{F, {}};
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          M.m[i][j] = F->element(static_cast<std::uint32_t>(rng.below(3)));
      if (M.invertible()) return M;
    }
  };
  int checked = 0;
  for (std::uint64_t i = 0; checked < 40; ++i) {
    TernaryForm f = sample_form(F, 4, 5, i);
    if (f.is_zero()) continue;
    ++checked;
    REQUIRE(is_smooth(f) == is_smooth(act(f, random_gl3())));
  }
}

TEST_CASE("smooth count at q=2 matches known values") {
  // small-degree nonsingular form counts over F_2, obtained by exhaustive
  // enumeration (cross-checked against the e <= (d-1)^2 oracle above)
  auto F = FieldSpec::make(2, 1);
  long long expected[] = {0, 7, 28, 336, 10920};  // d = 0..4
  for (int d = 1; d <= 4; ++d) {
    long long n = 0;
    for (FormIterator it(F, d); !it.done(); it.advance())
      if (is_smooth(it.form())) ++n;
    REQUIRE(n == expected[d]);
  }
}

TEST_CASE("works beyond tabled extension fields") {
  // q = 53: certifying singularities needs F_{53^e}, far above the table cap
  auto F = FieldSpec::make(53, 1);
  TernaryForm fermat(F, 4);
  fermat.at(4, 0) = F->one();
  fermat.at(0, 4) = F->one();
  fermat.at(0, 0) = F->one();
  REQUIRE(is_smooth(fermat));
  TernaryForm cusp(F, 3);  // y^2 z - x^3
  cusp.at(0, 2) = F->one();
  cusp.at(3, 0) = F->neg(F->one());
  REQUIRE(!is_smooth(cusp));
}
