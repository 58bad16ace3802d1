#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

#include "planestat/bigint.hpp"
#include "planestat/field.hpp"
#include "planestat/rng.hpp"

namespace planestat {

using Field = std::shared_ptr<const FieldSpec>;

/// Monomials x^i y^j z^k of total degree d in graded-lex order with
/// x > y > z: descending i, then descending j.
struct MonomialBasis {
  int d;
  std::vector<std::array<int, 3>> exponents;

  explicit MonomialBasis(int degree) : d(degree) {
    if (degree < 0) throw std::invalid_argument("negative degree");
    for (int i = d; i >= 0; --i)
      for (int j = d - i; j >= 0; --j) exponents.push_back({i, j, d - i - j});
  }

  static std::size_t size(int d) {
    return static_cast<std::size_t>(d + 1) * static_cast<std::size_t>(d + 2) / 2;
  }

  static std::size_t index(int d, int i, int j) {
    int r = d - i;
    return static_cast<std::size_t>(r) * (r + 1) / 2 + static_cast<std::size_t>(r - j);
  }
};

/// Homogeneous ternary form of degree d: coefficient vector aligned with
/// MonomialBasis(d).
struct TernaryForm {
  Field field;
  int d = 0;
  std::vector<FieldElement> coeffs;

  TernaryForm() = default;
  TernaryForm(Field f, int degree)
      : field(std::move(f)), d(degree), coeffs(MonomialBasis::size(degree), FieldElement{0}) {}
  TernaryForm(Field f, int degree, std::vector<FieldElement> c)
      : field(std::move(f)), d(degree), coeffs(std::move(c)) {
    if (coeffs.size() != MonomialBasis::size(d))
      throw std::invalid_argument("coefficient count does not match basis size");
  }

  bool is_zero() const {
    for (auto c : coeffs)
      if (c.code != 0) return false;
    return true;
  }

  FieldElement& at(int i, int j) { return coeffs[MonomialBasis::index(d, i, j)]; }
  FieldElement at(int i, int j) const { return coeffs[MonomialBasis::index(d, i, j)]; }

  friend bool operator==(const TernaryForm& a, const TernaryForm& b) {
    return a.field == b.field && a.d == b.d && a.coeffs == b.coeffs;
  }
};

/// A rational point of P^2(F_q). The canonical representative (first nonzero
/// coordinate equal to 1) is also the affine lift used by the evaluation map.
struct ProjPoint {
  std::array<FieldElement, 3> coords;
  std::size_t index = 0;
};

inline void check_same_field(const Field& a, const Field& b) {
  if (a.get() != b.get()) throw std::invalid_argument("operands belong to different fields");
}

/// All q^2+q+1 points: first (1:a:b) with (a,b) in lexicographic code order,
/// then (0:1:c) with c in code order, then (0:0:1).
inline std::vector<ProjPoint> enumerate_points(const Field& field) {
  const std::uint32_t q = field->q();
  std::vector<ProjPoint> pts;
  pts.reserve(static_cast<std::size_t>(q) * q + q + 1);
  std::size_t idx = 0;
  for (std::uint32_t a = 0; a < q; ++a)
    for (std::uint32_t b = 0; b < q; ++b)
      pts.push_back({{field->one(), field->element(a), field->element(b)}, idx++});
  for (std::uint32_t c = 0; c < q; ++c)
    pts.push_back({{field->zero(), field->one(), field->element(c)}, idx++});
  pts.push_back({{field->zero(), field->zero(), field->one()}, idx++});
  return pts;
}

inline FieldElement evaluate_at_lift(const TernaryForm& f,
                                     const std::array<FieldElement, 3>& v) {
  const FieldSpec& F = *f.field;
  MonomialBasis basis(f.d);
  FieldElement sum{0};
  for (std::size_t m = 0; m < basis.exponents.size(); ++m) {
    if (f.coeffs[m].code == 0) continue;
    auto [i, j, k] = basis.exponents[m];
    FieldElement term = f.coeffs[m];
    term = F.mul(term, F.pow(v[0], i));
    term = F.mul(term, F.pow(v[1], j));
    term = F.mul(term, F.pow(v[2], k));
    sum = F.add(sum, term);
  }
  return sum;
}

inline FieldElement evaluate(const TernaryForm& f, const ProjPoint& P) {
  return evaluate_at_lift(f, P.coords);
}

enum class Var { x = 0, y = 1, z = 2 };

/// Formal partial derivative; degree drops by one.
inline TernaryForm partial(const TernaryForm& f, Var var) {
  if (f.d < 1) throw std::invalid_argument("partial of a degree-0 form");
  const FieldSpec& F = *f.field;
  TernaryForm out(f.field, f.d - 1);
  MonomialBasis basis(f.d);
  const int v = static_cast<int>(var);
  for (std::size_t m = 0; m < basis.exponents.size(); ++m) {
    auto e = basis.exponents[m];
    if (e[v] == 0 || f.coeffs[m].code == 0) continue;
    FieldElement c = F.mul(f.coeffs[m], F.from_int(e[v]));
    if (c.code == 0) continue;
    e[v] -= 1;
    out.coeffs[MonomialBasis::index(f.d - 1, e[0], e[1])] = c;
  }
  return out;
}

namespace detail {

/// Multiply dense coefficient vectors of homogeneous degrees da, db.
inline std::vector<FieldElement> tri_mul(const FieldSpec& F, int da,
                                         const std::vector<FieldElement>& a, int db,
                                         const std::vector<FieldElement>& b) {
  MonomialBasis ba(da), bb(db);
  std::vector<FieldElement> out(MonomialBasis::size(da + db), FieldElement{0});
  for (std::size_t m = 0; m < a.size(); ++m) {
    if (a[m].code == 0) continue;
    auto ea = ba.exponents[m];
    for (std::size_t n = 0; n < b.size(); ++n) {
      if (b[n].code == 0) continue;
      auto eb = bb.exponents[n];
      std::size_t idx = MonomialBasis::index(da + db, ea[0] + eb[0], ea[1] + eb[1]);
      out[idx] = F.add(out[idx], F.mul(a[m], b[n]));
    }
  }
  return out;
}

}  // namespace detail

struct Gl3Matrix {
  Field field;
  std::array<std::array<FieldElement, 3>, 3> m;

  static Gl3Matrix identity(const Field& f) {
    Gl3Matrix M{f, {}};
    for (int i = 0; i < 3; ++i) M.m[i][i] = f->one();
    return M;
  }

  FieldElement det() const {
    const FieldSpec& F = *field;
    auto mm = [&](FieldElement a, FieldElement b) { return F.mul(a, b); };
    FieldElement t1 = mm(m[0][0], F.sub(mm(m[1][1], m[2][2]), mm(m[1][2], m[2][1])));
    FieldElement t2 = mm(m[0][1], F.sub(mm(m[1][0], m[2][2]), mm(m[1][2], m[2][0])));
    FieldElement t3 = mm(m[0][2], F.sub(mm(m[1][0], m[2][1]), mm(m[1][1], m[2][0])));
    return F.add(F.sub(t1, t2), t3);
  }

  bool invertible() const { return det().code != 0; }

  Gl3Matrix inverse() const {
    const FieldSpec& F = *field;
    FieldElement d = det();
    if (d.code == 0) throw std::domain_error("matrix is singular");
    FieldElement di = F.inv(d);
    Gl3Matrix out{field, {}};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        // adjugate via cyclic indices (sign built in)
        int r0 = (j + 1) % 3, r1 = (j + 2) % 3;
        int c0 = (i + 1) % 3, c1 = (i + 2) % 3;
        FieldElement v = F.sub(F.mul(m[r0][c0], m[r1][c1]), F.mul(m[r0][c1], m[r1][c0]));
        out.m[i][j] = F.mul(di, v);
      }
    return out;
  }

  Gl3Matrix operator*(const Gl3Matrix& o) const {
    const FieldSpec& F = *field;
    Gl3Matrix out{field, {}};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        FieldElement s{0};
        for (int k = 0; k < 3; ++k) s = F.add(s, F.mul(m[i][k], o.m[k][j]));
        out.m[i][j] = s;
      }
    return out;
  }

  std::array<FieldElement, 3> apply(const std::array<FieldElement, 3>& v) const {
    const FieldSpec& F = *field;
    std::array<FieldElement, 3> out{};
    for (int i = 0; i < 3; ++i) {
      FieldElement s{0};
      for (int k = 0; k < 3; ++k) s = F.add(s, F.mul(m[i][k], v[k]));
      out[i] = s;
    }
    return out;
  }
};

/// Substitution action f |-> f(M (x,y,z)^T), so that
/// evaluate(act(f, M), v) == evaluate(f, M v) for every affine vector v.
inline TernaryForm act(const TernaryForm& f, const Gl3Matrix& M) {
  check_same_field(f.field, M.field);
  if (!M.invertible()) throw std::domain_error("act: matrix is singular");
  const FieldSpec& F = *f.field;
  MonomialBasis basis(f.d);

  // rows of M as linear forms
  std::array<std::vector<FieldElement>, 3> row;
  for (int r = 0; r < 3; ++r) row[r] = {M.m[r][0], M.m[r][1], M.m[r][2]};

  // powers of each row, degree 0..d
  std::array<std::vector<std::vector<FieldElement>>, 3> pow;
  for (int r = 0; r < 3; ++r) {
    pow[r].resize(static_cast<std::size_t>(f.d) + 1);
    pow[r][0] = {F.one()};
    for (int e = 1; e <= f.d; ++e)
      pow[r][static_cast<std::size_t>(e)] =
          detail::tri_mul(F, e - 1, pow[r][static_cast<std::size_t>(e - 1)], 1, row[r]);
  }

  TernaryForm out(f.field, f.d);
  for (std::size_t m = 0; m < basis.exponents.size(); ++m) {
    if (f.coeffs[m].code == 0) continue;
    auto [i, j, k] = basis.exponents[m];
    std::vector<FieldElement> term = pow[0][static_cast<std::size_t>(i)];
    int deg = i;
    term = detail::tri_mul(F, deg, term, j, pow[1][static_cast<std::size_t>(j)]);
    deg += j;
    term = detail::tri_mul(F, deg, term, k, pow[2][static_cast<std::size_t>(k)]);
    for (std::size_t t = 0; t < term.size(); ++t)
      out.coeffs[t] = F.add(out.coeffs[t], F.mul(f.coeffs[m], term[t]));
  }
  return out;
}

inline BigInt total_forms(const Field& field, int d) {
  return big_pow(BigInt(field->q()), static_cast<unsigned long>(MonomialBasis::size(d)));
}

/// Streams all q^dim coefficient vectors in odometer order (last coefficient
/// fastest). Shards partition by the residue of the leading-coefficient
/// block: with b minimal such that q^b >= shard_count, a form belongs to
/// shard (block index mod shard_count), where the block index reads the
/// first b coefficients with the first one most significant. Forms of one
/// shard are visited in the same global odometer order.
class FormIterator {
 public:
  FormIterator(Field field, int d, std::size_t shard_index = 0, std::size_t shard_count = 1)
      : field_(std::move(field)),
        q_(field_->q()),
        d_(d),
        shard_(shard_index),
        shards_(shard_count),
        coeffs_(MonomialBasis::size(d), 0) {
    if (shard_count == 0 || shard_index >= shard_count)
      throw std::invalid_argument("invalid shard");
    block_ = 0;
    std::uint64_t span = 1;
    while (span < shards_ && block_ < coeffs_.size()) {
      span *= q_;
      ++block_;
    }
    if (span < shards_) throw std::invalid_argument("more shards than forms");
    if (block_index() % shards_ != shard_) advance_block();
  }

  bool done() const { return done_; }
  const std::vector<std::uint16_t>& coeffs() const { return coeffs_; }

  TernaryForm form() const {
    TernaryForm f(field_, degree());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) f.coeffs[i] = {coeffs_[i]};
    return f;
  }

  int degree() const { return d_; }

  /// Advance to the next form of this shard. Returns the smallest
  /// coefficient index whose value changed (coeffs_.size() if exhausted).
  std::size_t advance() {
    if (done_) return coeffs_.size();
    std::size_t i = coeffs_.size();
    while (i > 0) {
      if (++coeffs_[i - 1] == q_) {
        coeffs_[i - 1] = 0;
        --i;
      } else {
        break;
      }
    }
    if (i == 0) {
      done_ = true;
      return coeffs_.size();
    }
    std::size_t changed = i - 1;
    if (changed < block_ && block_index() % shards_ != shard_) {
      if (!advance_block()) return coeffs_.size();
      changed = 0;  // block advance may touch any block digit
    }
    return changed;
  }

 private:
  std::uint64_t block_index() const {
    std::uint64_t b = 0;
    for (std::size_t i = 0; i < block_; ++i) b = b * q_ + coeffs_[i];
    return b;
  }

  // Increment the block digits (inner digits are all zero here) until the
  // residue matches; returns false when exhausted.
  bool advance_block() {
    while (true) {
      std::size_t i = block_;
      while (i > 0) {
        if (++coeffs_[i - 1] == q_) {
          coeffs_[i - 1] = 0;
          --i;
        } else {
          break;
        }
      }
      if (i == 0) {
        done_ = true;
        return false;
      }
      if (block_index() % shards_ == shard_) return true;
    }
  }

  Field field_;
  std::uint32_t q_;
  int d_;
  std::size_t shard_, shards_;
  std::size_t block_ = 0;
  std::vector<std::uint16_t> coeffs_;
  bool done_ = false;
};

/// Uniform random form, deterministic in (seed, draw index) and independent
/// of any sharding of the draws.
inline TernaryForm sample_form(const Field& field, int d, std::uint64_t seed,
                               std::uint64_t draw_index) {
  SplitMix64 rng = SplitMix64::stream(seed, draw_index);
  TernaryForm f(field, d);
  for (auto& c : f.coeffs) c = {static_cast<std::uint16_t>(rng.below(field->q()))};
  return f;
}

/// The three degree-(q+1) generators of the plane-filling ideal:
/// x^q y - y^q x, y^q z - z^q y, z^q x - x^q z.
inline std::array<TernaryForm, 3> filling_generators(const Field& field) {
  const int q = static_cast<int>(field->q());
  const int d = q + 1;
  FieldElement one = field->one(), mone = field->neg(field->one());
  std::array<TernaryForm, 3> gens{TernaryForm(field, d), TernaryForm(field, d),
                                  TernaryForm(field, d)};
  gens[0].at(q, 1) = one;   // x^q y
  gens[0].at(1, q) = mone;  // - y^q x
  gens[1].at(0, q) = one;   // y^q z
  gens[1].at(0, 1) = mone;  // - z^q y
  gens[2].at(1, 0) = one;   // z^q x
  gens[2].at(q, 0) = mone;  // - x^q z
  return gens;
}

/// Degree-d form (d >= 2q-1) that vanishes at every rational point except
/// the target, where it is nonzero: the form
/// x^(d-2q+2) (y^(q-1) - x^(q-1)) (z^(q-1) - x^(q-1)) transported by a
/// deterministic change of coordinates sending the target to (1:0:0).
inline TernaryForm lemma32_form(const Field& field, int d, const ProjPoint& target) {
  const int q = static_cast<int>(field->q());
  if (d < 2 * q - 1) throw std::invalid_argument("lemma32_form requires d >= 2q-1");
  const FieldSpec& F = *field;

  // base form
  TernaryForm a(field, q - 1), b(field, q - 1);
  a.at(0, q - 1) = F.one();
  a.at(q - 1, 0) = F.neg(F.one());  // y^(q-1) - x^(q-1)
  b.at(0, 0) = F.one();             // z^(q-1)
  b.at(q - 1, 0) = F.neg(F.one());  // - x^(q-1)
  auto prod = detail::tri_mul(F, q - 1, a.coeffs, q - 1, b.coeffs);
  TernaryForm base(field, d);
  const int shift = d - (2 * q - 2);
  MonomialBasis pb(2 * q - 2);
  for (std::size_t m = 0; m < prod.size(); ++m) {
    if (prod[m].code == 0) continue;
    auto [i, j, k] = pb.exponents[m];
    base.coeffs[MonomialBasis::index(d, i + shift, j)] = prod[m];
  }

  // deterministic N with first column = target lift, the other two columns
  // the first pair of standard basis vectors keeping N invertible; then
  // M = N^{-1} maps the target to (1:0:0)
  for (int u = 0; u < 3; ++u)
    for (int v = 0; v < 3; ++v) {
      if (u == v) continue;
      Gl3Matrix N{field, {}};
      for (int r = 0; r < 3; ++r) {
        N.m[r][0] = target.coords[static_cast<std::size_t>(r)];
        N.m[r][1] = (r == u) ? F.one() : F.zero();
        N.m[r][2] = (r == v) ? F.one() : F.zero();
      }
      if (N.invertible()) return act(base, N.inverse());
    }
  throw std::logic_error("lemma32_form: completion failed");
}

}  // namespace planestat
