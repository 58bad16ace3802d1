#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "planestat/bigint.hpp"
#include "planestat/census.hpp"
#include "planestat/forms.hpp"

namespace planestat {

struct MassRow {
  int t = 0;
  BigInt form_count;       // nonsingular quartic forms with trace t
  BigRational mass_forms;  // form_count / #GL_3
  BigRational mass_orbits; // sum over curve classes of (q-1)/(s_C |stab|)
  bool equal = false;
};

/// Output of the orbit-enumeration verification of the mass formula for
/// smooth quartics: N(t) computed as raw form counts divided by #GL_3 must
/// equal the orbit-stabilizer weighted sum over isomorphism classes.
struct MassReport {
  Field field;
  BigInt gl3;
  BigInt total_smooth;       // #R_4^ns
  BigInt q6_plus_1;          // reported for inspection, not asserted
  BigRational mass_total;    // sum of mass_forms over t
  std::size_t orbit_count = 0;
  std::size_t class_count = 0;
  bool orbit_stabilizer_ok = false;  // |orbit| * |stab| = #GL_3 per orbit
  bool partition_ok = false;         // orbit sizes per t sum to form counts
  bool all_equal = false;
  std::vector<MassRow> rows;
};

/// Exhaustive GL_3-orbit analysis of nonsingular quartic forms; feasible for
/// q in {2, 3} only.
inline MassReport mass_check(const Field& field) {
  const std::uint32_t q = field->q();
  if (q != 2 && q != 3) throw std::invalid_argument("mass_check supports q in {2, 3}");
  const int d = 4;
  const std::size_t dim = MonomialBasis::size(d);  // 15
  const FieldSpec& F = *field;

  std::size_t nforms = 1;
  for (std::size_t i = 0; i < dim; ++i) nforms *= q;

  // index <-> coefficient vector: coefficient 0 is the most significant
  // base-q digit, matching odometer order
  std::vector<std::size_t> pw(dim, 1);
  for (std::size_t c = dim - 1; c-- > 0;) pw[c] = pw[c + 1] * q;

  // pass 1: smooth flag and trace per form, via the incremental grid
  std::vector<std::uint8_t> smooth(nforms, 0);
  std::vector<std::int8_t> trace(nforms, 0);
  {
    detail::CensusGrid grid(field, d, true);
    FormIterator it(field, d);
    std::vector<std::uint16_t> vals, prev = it.coeffs();
    grid.init_values(prev, vals);
    const int q1 = static_cast<int>(q) + 1;
    std::size_t idx = 0;
    while (true) {
      if (!grid.has_singular(it.coeffs(), vals)) {
        smooth[idx] = 1;
        trace[idx] = static_cast<std::int8_t>(q1 - grid.rational_zeros(vals));
      }
      std::size_t changed = it.advance();
      if (it.done()) break;
      const auto& cc = it.coeffs();
      for (std::size_t c = changed; c < dim; ++c)
        if (cc[c] != prev[c]) {
          grid.apply_delta(c, F.sub({cc[c]}, {prev[c]}).code, vals);
          prev[c] = cc[c];
        }
      ++idx;
    }
  }

  // substitution matrices: one dim x dim matrix over F_q per group element
  std::vector<std::uint8_t> subst;  // [g*dim*dim + row*dim + col]
  {
    MonomialBasis basis(d);
    std::vector<FieldElement> cells(9);
    std::vector<std::uint32_t> digits(9, 0);
    while (true) {
      Gl3Matrix M{field, {}};
      for (int i = 0; i < 9; ++i) M.m[i / 3][i % 3] = {static_cast<std::uint16_t>(digits[i])};
      if (M.invertible()) {
        std::size_t base = subst.size();
        subst.resize(base + dim * dim, 0);
        for (std::size_t c = 0; c < dim; ++c) {
          TernaryForm e(field, d);
          e.coeffs[c] = F.one();
          TernaryForm img = act(e, M);
          for (std::size_t r = 0; r < dim; ++r)
            subst[base + r * dim + c] = static_cast<std::uint8_t>(img.coeffs[r].code);
        }
      }
      std::size_t i = 9;
      while (i > 0 && ++digits[i - 1] == q) digits[--i] = 0;
      if (i == 0) break;
    }
  }
  const std::size_t ngroup = subst.size() / (dim * dim);
  BigInt gl3 = gl3_order(q);
  if (BigInt(ngroup) != gl3) throw std::logic_error("mass_check: group order mismatch");

  auto apply = [&](std::size_t g, const std::uint8_t* v) {
    const std::uint8_t* S = &subst[g * dim * dim];
    std::size_t idx = 0;
    for (std::size_t r = 0; r < dim; ++r) {
      std::uint32_t acc = 0;
      const std::uint8_t* row = S + r * dim;
      for (std::size_t c = 0; c < dim; ++c) acc += row[c] * v[c];
      idx += (acc % q) * pw[r];
    }
    return idx;
  };

  // pass 2: orbit sweep
  std::vector<std::int32_t> orbit_id(nforms, -1);
  struct Orbit {
    std::size_t rep, size, stab;
    int t;
  };
  std::vector<Orbit> orbits;
  std::vector<std::uint8_t> v(dim);
  bool orbit_stabilizer_ok = true;
  for (std::size_t idx = 0; idx < nforms; ++idx) {
    if (!smooth[idx] || orbit_id[idx] >= 0) continue;
    std::size_t rem = idx;
    for (std::size_t c = 0; c < dim; ++c) {
      v[c] = static_cast<std::uint8_t>(rem / pw[c]);
      rem %= pw[c];
    }
    std::int32_t oid = static_cast<std::int32_t>(orbits.size());
    std::size_t size = 0, stab = 0;
    for (std::size_t g = 0; g < ngroup; ++g) {
      std::size_t widx = apply(g, v.data());
      if (widx == idx) ++stab;
      if (orbit_id[widx] < 0) {
        orbit_id[widx] = oid;
        ++size;
        if (!smooth[widx] || trace[widx] != trace[idx])
          throw std::logic_error("mass_check: orbit invariants violated");
      }
    }
    if (BigInt(size) * BigInt(stab) != gl3) orbit_stabilizer_ok = false;
    orbits.push_back({idx, size, stab, trace[idx]});
  }

  // pass 3: collapse scalar-related orbits into curve classes
  const std::uint32_t nscalars = q - 1;
  std::vector<std::int32_t> class_of(orbits.size());
  std::vector<std::uint32_t> s_C(orbits.size(), 0);
  for (std::size_t o = 0; o < orbits.size(); ++o) {
    std::size_t rem = orbits[o].rep;
    for (std::size_t c = 0; c < dim; ++c) {
      v[c] = static_cast<std::uint8_t>(rem / pw[c]);
      rem %= pw[c];
    }
    std::int32_t min_id = static_cast<std::int32_t>(o);
    std::uint32_t fixing = 0;
    for (std::uint32_t lam = 1; lam <= nscalars; ++lam) {
      std::size_t widx = 0;
      for (std::size_t c = 0; c < dim; ++c) widx += ((lam * v[c]) % q) * pw[c];
      std::int32_t id = orbit_id[widx];
      if (id == static_cast<std::int32_t>(o)) ++fixing;
      if (id < min_id) min_id = id;
    }
    class_of[o] = min_id;
    s_C[o] = fixing;
  }

  // tally
  std::map<int, BigInt> form_count, orbit_size_sum;
  for (std::size_t idx = 0; idx < nforms; ++idx)
    if (smooth[idx]) form_count[trace[idx]] += 1;
  std::map<int, BigRational> orbit_mass;
  std::size_t class_count = 0;
  for (std::size_t o = 0; o < orbits.size(); ++o) {
    orbit_size_sum[orbits[o].t] += orbits[o].size;
    if (class_of[o] != static_cast<std::int32_t>(o)) continue;  // one term per class
    ++class_count;
    orbit_mass[orbits[o].t] +=
        BigRational(nscalars, BigInt(s_C[o]) * BigInt(orbits[o].stab));
  }

  MassReport report;
  report.field = field;
  report.gl3 = gl3;
  report.q6_plus_1 = big_pow(BigInt(q), 6) + 1;
  report.orbit_count = orbits.size();
  report.class_count = class_count;
  report.orbit_stabilizer_ok = orbit_stabilizer_ok;
  report.partition_ok = form_count == orbit_size_sum;
  report.all_equal = true;
  for (const auto& [t, count] : form_count) {
    MassRow row;
    row.t = t;
    row.form_count = count;
    row.mass_forms = BigRational(count, gl3);
    row.mass_orbits = orbit_mass.count(t) ? orbit_mass[t] : BigRational(0);
    row.equal = row.mass_forms == row.mass_orbits;
    if (!row.equal) report.all_equal = false;
    report.total_smooth += count;
    report.mass_total += row.mass_forms;
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace planestat
