#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "planestat/field.hpp"
#include "planestat/forms.hpp"
#include "planestat/unipoly.hpp"

namespace planestat {
namespace detail {

/// Bivariate polynomial over F_q: entry j is the F_q[x] coefficient of y^j.
using BiPoly = std::vector<UniPoly>;

inline void bipoly_trim(BiPoly& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

inline bool bipoly_is_zero(const BiPoly& a) { return a.empty(); }
inline int bipoly_deg_y(const BiPoly& a) { return static_cast<int>(a.size()) - 1; }

/// Monic gcd of all F_q[x] coefficients.
inline UniPoly bipoly_content(const FieldSpec& F, const BiPoly& a) {
  UniPoly g = UniPoly::zero(F);
  for (const auto& c : a) g = UniPoly::gcd(g, c);
  return g;
}

inline BiPoly bipoly_primitive(const FieldSpec& F, const BiPoly& a) {
  UniPoly c = bipoly_content(F, a);
  if (c.is_zero() || c.degree() == 0) return a;
  BiPoly out;
  out.reserve(a.size());
  for (const auto& co : a) out.push_back(co / c);
  return out;
}

/// Pseudo-remainder in y: repeatedly kill the leading y-term of a using b,
/// scaling a by lc_y(b) as needed. Every intermediate value is an
/// F_q[x,y]-combination of a and b, so it vanishes at their common zeros.
inline BiPoly bipoly_pseudo_rem(const FieldSpec& F, BiPoly a, const BiPoly& b) {
  bipoly_trim(a);
  const UniPoly& blc = b.back();
  while (static_cast<int>(a.size()) >= static_cast<int>(b.size()) && !a.empty()) {
    UniPoly alc = a.back();
    std::size_t shift = a.size() - b.size();
    for (auto& c : a) c = c * blc;
    for (std::size_t j = 0; j < b.size(); ++j)
      a[shift + j] = a[shift + j] - alc * b[j];
    bipoly_trim(a);
  }
  return a;
}

/// Polynomial in y with coefficients in the extension K = F_q[x]/(m).
using KPoly = std::vector<UniPoly>;

inline void kpoly_trim(const ExtField& K, KPoly& a) {
  (void)K;
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

inline KPoly kpoly_rem(const ExtField& K, KPoly a, const KPoly& b) {
  UniPoly blc_inv = K.inv(b.back());
  while (a.size() >= b.size() && !a.empty()) {
    UniPoly factor = K.mul(a.back(), blc_inv);
    std::size_t shift = a.size() - b.size();
    for (std::size_t j = 0; j < b.size(); ++j)
      a[shift + j] = K.sub(a[shift + j], K.mul(factor, b[j]));
    kpoly_trim(K, a);
  }
  return a;
}

inline KPoly kpoly_gcd(const ExtField& K, KPoly a, KPoly b) {
  kpoly_trim(K, a);
  kpoly_trim(K, b);
  while (!b.empty()) {
    KPoly r = kpoly_rem(K, std::move(a), b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// Does the system, specialized at x = (class of x in F_q[x]/m), have a
/// common y-root over the algebraic closure?
inline bool system_has_root_at(const FieldSpec& F, const std::vector<BiPoly>& system,
                               const UniPoly& m) {
  ExtField K(F, m);
  std::vector<KPoly> spec;
  for (const auto& P : system) {
    KPoly s;
    s.reserve(P.size());
    for (const auto& c : P) s.push_back(K.reduce(c));
    kpoly_trim(K, s);
    if (s.empty()) continue;          // vanishes identically at this x
    if (s.size() == 1) return false;  // nonzero constant: no root here
    spec.push_back(std::move(s));
  }
  if (spec.empty()) return true;  // every poly vanishes; any y works
  KPoly g = spec[0];
  for (std::size_t i = 1; i < spec.size(); ++i) g = kpoly_gcd(K, std::move(g), spec[i]);
  return g.size() >= 2;
}

/// Common zero of a bivariate system over the algebraic closure of F_q.
/// Strategy: univariate members pin x to the roots of their gcd; otherwise a
/// content-collecting pseudo-gcd fold either certifies a nonconstant common
/// divisor (zeros exist) or confines all common zeros to finitely many x,
/// each of which is certified exactly in the extension field F_q[x]/(m).
inline bool system_has_common_zero(const FieldSpec& F, std::vector<BiPoly> system) {
  for (auto& P : system) bipoly_trim(P);
  system.erase(std::remove_if(system.begin(), system.end(), bipoly_is_zero), system.end());
  if (system.empty()) return true;

  std::vector<UniPoly> uni;  // members not involving y
  std::vector<BiPoly> biv;
  for (auto& P : system) {
    if (P.size() == 1) {
      if (P[0].degree() == 0) return false;  // nonzero constant
      uni.push_back(P[0]);
    } else {
      biv.push_back(P);  // keep system intact for the specialization step
    }
  }

  auto check_candidates = [&](const UniPoly& u) {
    for (const auto& [m, mult] : factorize(u)) {
      (void)mult;
      if (system_has_root_at(F, system, m)) return true;
    }
    return false;
  };

  if (!uni.empty()) {
    UniPoly u = UniPoly::zero(F);
    for (const auto& g : uni) u = UniPoly::gcd(u, g);
    if (u.degree() < 1) return false;
    return check_candidates(u);  // x is confined to the roots of u
  }

  if (biv.size() == 1) return true;  // one nonconstant polynomial always vanishes somewhere

  // Fold a pseudo-gcd over the system. pool accumulates x-polynomials whose
  // roots are the only places a common zero can escape the running gcd.
  std::vector<UniPoly> pool;
  bool trivial = false;  // gcd in F_q(x)[y] became 1
  BiPoly H = bipoly_primitive(F, biv[0]);
  pool.push_back(bipoly_content(F, biv[0]));
  for (std::size_t i = 1; i < biv.size() && !trivial; ++i) {
    pool.push_back(bipoly_content(F, biv[i]));
    BiPoly A = H, B = bipoly_primitive(F, biv[i]);
    if (A.size() < B.size()) std::swap(A, B);
    while (true) {
      BiPoly R = bipoly_pseudo_rem(F, A, B);
      if (bipoly_is_zero(R)) {
        pool.push_back(bipoly_content(F, B));
        H = bipoly_primitive(F, B);
        break;
      }
      pool.push_back(bipoly_content(F, R));
      BiPoly Rp = bipoly_primitive(F, R);
      if (Rp.size() == 1) {  // remainder free of y: the gcd is trivial
        pool.push_back(Rp[0]);
        trivial = true;
        break;
      }
      A = std::move(B);
      B = std::move(Rp);
    }
  }
  if (!trivial) return true;  // H (deg_y >= 1) divides every member

  UniPoly u = UniPoly::constant(F, F.one());
  for (const auto& c : pool)
    if (c.degree() >= 1) u = u * c;
  if (u.degree() < 1) return false;
  return check_candidates(u);
}

/// Restriction of a form to the line z = 0, y = 1, as a polynomial in x.
inline UniPoly restrict_line(const TernaryForm& f) {
  std::vector<std::uint16_t> c(static_cast<std::size_t>(f.d) + 1, 0);
  for (int i = 0; i <= f.d; ++i) c[static_cast<std::size_t>(i)] = f.at(i, f.d - i).code;
  return UniPoly(*f.field, std::move(c));
}

/// Restriction to the affine chart z = 1, as a bivariate polynomial.
inline BiPoly restrict_chart(const TernaryForm& f) {
  const FieldSpec& F = *f.field;
  BiPoly out;
  for (int j = 0; j <= f.d; ++j) {
    std::vector<std::uint16_t> c(static_cast<std::size_t>(f.d - j) + 1, 0);
    for (int i = 0; i + j <= f.d; ++i) c[static_cast<std::size_t>(i)] = f.at(i, j).code;
    out.push_back(UniPoly(F, std::move(c)));
  }
  bipoly_trim(out);
  return out;
}

}  // namespace detail

/// Extension search depth sufficient to find a singular point of a degree-d
/// curve. The generic Bezout bound is (d-1)^2; for d <= 4 the Galois orbit
/// of a singular point has size at most d (an irreducible curve of degree
/// <= 4 has at most 3 singular points; for reducible or nonreduced curves
/// the component intersections fall into Frobenius orbits of size <= d), so
/// the depth sharpens to d.
inline int singular_search_bound(int d) {
  if (d <= 4) return d < 1 ? 1 : d;
  return (d - 1) * (d - 1);
}

/// Enumeration oracle: search P^2(F_{q^e}) for e = 1..e_max for a point
/// where f and all three partials vanish. Base field must be prime (the
/// coefficient embedding into F_{p^e} is then the identity on codes).
inline bool has_singular_point_up_to(const TernaryForm& f, int e_max) {
  if (f.field->k() != 1) throw std::invalid_argument("enumeration search needs a prime field");
  if (f.is_zero()) return true;
  const std::uint32_t p = f.field->p();
  TernaryForm fx = partial(f, Var::x), fy = partial(f, Var::y), fz = partial(f, Var::z);
  bool partials_zero = fx.is_zero() && fy.is_zero() && fz.is_zero();
  if (partials_zero) return true;  // f is a p-th power

  for (int e = 1; e <= e_max; ++e) {
    std::uint64_t qe = 1;
    for (int i = 0; i < e; ++i) qe *= p;
    if (qe > FieldSpec::kMaxOrder)
      throw std::invalid_argument("extension order exceeds the field cap");
    auto E = FieldSpec::make(p, static_cast<std::uint32_t>(e));
    auto eval_in = [&](const TernaryForm& g, const std::array<FieldElement, 3>& v) {
      MonomialBasis basis(g.d);
      FieldElement sum{0};
      for (std::size_t mth = 0; mth < basis.exponents.size(); ++mth) {
        if (g.coeffs[mth].code == 0) continue;
        auto [i, j, k] = basis.exponents[mth];
        FieldElement t = g.coeffs[mth];  // prime-field code embeds unchanged
        t = E->mul(t, E->pow(v[0], i));
        t = E->mul(t, E->pow(v[1], j));
        t = E->mul(t, E->pow(v[2], k));
        sum = E->add(sum, t);
      }
      return sum;
    };
    for (const auto& P : enumerate_points(E)) {
      if (eval_in(f, P.coords).code != 0) continue;
      if (eval_in(fx, P.coords).code != 0) continue;
      if (eval_in(fy, P.coords).code != 0) continue;
      if (eval_in(fz, P.coords).code != 0) continue;
      return true;
    }
  }
  return false;
}

/// True iff C_f has no singular point over the algebraic closure: no common
/// projective zero of (f, f_x, f_y, f_z). The search is exact elimination
/// (chart by chart), valid for every q and d, with no extension-degree cap.
inline bool is_smooth(const TernaryForm& f) {
  if (f.d < 1) throw std::invalid_argument("is_smooth requires d >= 1");
  if (f.is_zero()) return false;
  const FieldSpec& F = *f.field;
  const TernaryForm fx = partial(f, Var::x), fy = partial(f, Var::y), fz = partial(f, Var::z);
  if (fx.is_zero() && fy.is_zero() && fz.is_zero()) return false;  // p-th power

  // the point (1:0:0)
  if (f.at(f.d, 0).code == 0 && fx.at(f.d - 1, 0).code == 0 &&
      fy.at(f.d - 1, 0).code == 0 && fz.at(f.d - 1, 0).code == 0)
    return false;

  // the line z = 0 (points (x:1:0))
  {
    UniPoly g = UniPoly::zero(F);
    bool all_zero = true;
    for (const TernaryForm* h : {&f, &fx, &fy, &fz}) {
      UniPoly r = detail::restrict_line(*h);
      if (r.is_zero()) continue;
      all_zero = false;
      g = UniPoly::gcd(g, r);
    }
    if (all_zero || g.degree() >= 1) return false;
  }

  // the affine chart z = 1
  std::vector<detail::BiPoly> system;
  for (const TernaryForm* h : {&f, &fx, &fy, &fz}) system.push_back(detail::restrict_chart(*h));
  return !detail::system_has_common_zero(F, std::move(system));
}

}  // namespace planestat
