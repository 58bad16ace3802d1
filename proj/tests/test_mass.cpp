#include <catch2/catch_amalgamated.hpp>

#include "planestat/mass.hpp"

using namespace planestat;

TEST_CASE("orbit mass identity at q=2") {
  auto F = FieldSpec::make(2, 1);
  MassReport rep = mass_check(F);
  REQUIRE(rep.gl3 == 168);
  REQUIRE(rep.orbit_stabilizer_ok);
  REQUIRE(rep.partition_ok);
  REQUIRE(rep.all_equal);
  REQUIRE(!rep.rows.empty());
  // F_2 has a single scalar, so classes and orbits coincide
  REQUIRE(rep.class_count == rep.orbit_count);
  // 10920 nonsingular quartic forms; weighted class count is q^6 + 1 = 65
  REQUIRE(rep.total_smooth == 10920);
  REQUIRE(rep.mass_total == BigRational(65));
  REQUIRE(rep.q6_plus_1 == 65);
  for (const auto& row : rep.rows) {
    REQUIRE(row.equal);
    REQUIRE(row.mass_forms == BigRational(row.form_count, rep.gl3));
    REQUIRE(std::abs(row.t) <= 8);  // Weil: |t| <= 6 sqrt(2)
  }
}

TEST_CASE("unsupported field sizes are rejected") {
  REQUIRE_THROWS_AS(mass_check(FieldSpec::make(5, 1)), std::invalid_argument);
  REQUIRE_THROWS_AS(mass_check(FieldSpec::make(2, 2)), std::invalid_argument);
}
