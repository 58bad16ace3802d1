#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "planestat/bigint.hpp"
#include "planestat/field.hpp"
#include "planestat/rng.hpp"

namespace planestat {

/// Dense univariate polynomial over F_q. Coefficients are element codes,
/// low degree first; the zero polynomial has an empty coefficient vector.
class UniPoly {
 public:
  explicit UniPoly(const FieldSpec& F) : F_(&F) {}
  UniPoly(const FieldSpec& F, std::vector<std::uint16_t> coeffs)
      : F_(&F), c_(std::move(coeffs)) {
    trim();
  }

  static UniPoly zero(const FieldSpec& F) { return UniPoly(F); }
  static UniPoly constant(const FieldSpec& F, FieldElement a) {
    return UniPoly(F, {a.code});
  }
  static UniPoly x(const FieldSpec& F) { return UniPoly(F, {0, 1}); }

  const FieldSpec& field() const { return *F_; }
  const std::vector<std::uint16_t>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_constant() const { return c_.size() <= 1; }

  FieldElement coeff(std::size_t i) const {
    return i < c_.size() ? FieldElement{c_[i]} : FieldElement{0};
  }
  FieldElement lc() const { return c_.empty() ? FieldElement{0} : FieldElement{c_.back()}; }

  FieldElement eval(FieldElement at) const {
    FieldElement r{0};
    for (std::size_t i = c_.size(); i-- > 0;)
      r = F_->add(F_->mul(r, at), {c_[i]});
    return r;
  }

  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const UniPoly& a, const UniPoly& b) { return a.c_ != b.c_; }

  UniPoly operator+(const UniPoly& o) const {
    std::vector<std::uint16_t> r(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i)
      r[i] = F_->add(coeff(i), o.coeff(i)).code;
    return UniPoly(*F_, std::move(r));
  }

  UniPoly operator-(const UniPoly& o) const {
    std::vector<std::uint16_t> r(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i)
      r[i] = F_->sub(coeff(i), o.coeff(i)).code;
    return UniPoly(*F_, std::move(r));
  }

  UniPoly operator*(const UniPoly& o) const {
    if (is_zero() || o.is_zero()) return zero(*F_);
    std::vector<std::uint16_t> r(c_.size() + o.c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      for (std::size_t j = 0; j < o.c_.size(); ++j) {
        FieldElement t = F_->mul({c_[i]}, {o.c_[j]});
        r[i + j] = F_->add({r[i + j]}, t).code;
      }
    }
    return UniPoly(*F_, std::move(r));
  }

  UniPoly scaled(FieldElement s) const {
    std::vector<std::uint16_t> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = F_->mul({c_[i]}, s).code;
    return UniPoly(*F_, std::move(r));
  }

  UniPoly shifted(std::size_t n) const {  // multiply by x^n
    if (is_zero()) return *this;
    std::vector<std::uint16_t> r(c_.size() + n, 0);
    std::copy(c_.begin(), c_.end(), r.begin() + static_cast<std::ptrdiff_t>(n));
    return UniPoly(*F_, std::move(r));
  }

  UniPoly monic() const {
    if (is_zero()) return *this;
    return scaled(F_->inv(lc()));
  }

  UniPoly derivative() const {
    if (c_.size() <= 1) return zero(*F_);
    std::vector<std::uint16_t> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i)
      r[i - 1] = F_->mul({c_[i]}, F_->from_int(static_cast<long long>(i))).code;
    return UniPoly(*F_, std::move(r));
  }

  static std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    const FieldSpec& F = *a.F_;
    const int db = b.degree();
    if (a.degree() < db) return {zero(F), a};
    std::vector<std::uint16_t> rem = a.c_;
    std::vector<std::uint16_t> quot(static_cast<std::size_t>(a.degree() - db) + 1, 0);
    FieldElement blc_inv = F.inv(b.lc());
    for (int i = a.degree(); i >= db; --i) {
      FieldElement c = F.mul({rem[static_cast<std::size_t>(i)]}, blc_inv);
      if (c.code != 0) {
        quot[static_cast<std::size_t>(i - db)] = c.code;
        for (int j = 0; j <= db; ++j)
          rem[static_cast<std::size_t>(i - db + j)] =
              F.sub({rem[static_cast<std::size_t>(i - db + j)]},
                    F.mul(c, b.coeff(static_cast<std::size_t>(j)))).code;
      }
    }
    return {UniPoly(F, std::move(quot)), UniPoly(F, std::move(rem))};
  }

  UniPoly operator%(const UniPoly& o) const { return divmod(*this, o).second; }
  UniPoly operator/(const UniPoly& o) const { return divmod(*this, o).first; }

  /// Monic gcd.
  static UniPoly gcd(UniPoly a, UniPoly b) {
    while (!b.is_zero()) {
      UniPoly r = a % b;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  /// (g, u, v) with g = gcd monic and u*a + v*b = g.
  static std::tuple<UniPoly, UniPoly, UniPoly> ext_gcd(UniPoly a, UniPoly b) {
    const FieldSpec& F = a.field();
    UniPoly u0 = constant(F, F.one()), v0 = zero(F);
    UniPoly u1 = zero(F), v1 = constant(F, F.one());
    while (!b.is_zero()) {
      auto [q, r] = divmod(a, b);
      a = std::move(b);
      b = std::move(r);
      UniPoly u2 = u0 - q * u1, v2 = v0 - q * v1;
      u0 = std::move(u1);
      v0 = std::move(v1);
      u1 = std::move(u2);
      v1 = std::move(v2);
    }
    if (a.is_zero()) return {a, u0, v0};
    FieldElement s = F.inv(a.lc());
    return {a.scaled(s), u0.scaled(s), v0.scaled(s)};
  }

  static UniPoly mulmod(const UniPoly& a, const UniPoly& b, const UniPoly& m) {
    return (a * b) % m;
  }

  static UniPoly powmod(UniPoly base, BigInt e, const UniPoly& m) {
    const FieldSpec& F = base.field();
    UniPoly r = constant(F, F.one()) % m;
    base = base % m;
    while (e > 0) {
      if ((e & 1) != 0) r = mulmod(r, base, m);
      base = mulmod(base, base, m);
      e >>= 1;
    }
    return r;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  const FieldSpec* F_;
  std::vector<std::uint16_t> c_;
};

namespace detail {

// Equal-degree splitting (Cantor-Zassenhaus; trace map in characteristic 2).
inline void edf(const UniPoly& f, int d, SplitMix64& rng,
                std::vector<UniPoly>& out) {
  const FieldSpec& F = f.field();
  int n = f.degree() / d;
  if (n == 1) {
    out.push_back(f.monic());
    return;
  }
  const std::uint32_t q = F.q();
  UniPoly g = UniPoly::zero(F);
  while (true) {
    // random polynomial of degree < deg f
    std::vector<std::uint16_t> rc(static_cast<std::size_t>(f.degree()), 0);
    for (auto& c : rc) c = static_cast<std::uint16_t>(rng.below(q));
    UniPoly r(F, std::move(rc));
    if (r.is_constant()) continue;
    UniPoly w = UniPoly::zero(F);
    if (F.p() == 2) {
      // trace map: sum r^(2^i), i < log2(q^d)
      std::uint64_t bits = static_cast<std::uint64_t>(F.k()) * static_cast<std::uint64_t>(d);
      UniPoly t = r % f, acc = t;
      for (std::uint64_t i = 1; i < bits; ++i) {
        t = UniPoly::mulmod(t, t, f);
        acc = acc + t;
      }
      w = UniPoly::gcd(acc, f);
    } else {
      BigInt e = (big_pow(BigInt(q), static_cast<unsigned long>(d)) - 1) / 2;
      UniPoly s = UniPoly::powmod(r, e, f);
      w = UniPoly::gcd(s - UniPoly::constant(F, F.one()), f);
    }
    if (!w.is_constant() && w.degree() < f.degree()) {
      edf(w, d, rng, out);
      edf(f / w, d, rng, out);
      return;
    }
  }
}

}  // namespace detail

/// Monic irreducible factors with multiplicities (unordered input order;
/// result sorted by (degree, coefficients) for determinism). The constant
/// leading coefficient is dropped.
inline std::vector<std::pair<UniPoly, int>> factorize(const UniPoly& input,
                                                      std::uint64_t seed = 0x5eedf00dULL) {
  const FieldSpec& F = input.field();
  if (input.is_zero()) throw std::domain_error("factorize: zero polynomial");
  std::vector<std::pair<UniPoly, int>> result;
  if (input.is_constant()) return result;

  SplitMix64 rng(seed);
  // (squarefree part, multiplicity) work list via squarefree decomposition
  std::vector<std::pair<UniPoly, int>> square_free;
  std::vector<std::pair<UniPoly, int>> work{{input.monic(), 1}};
  while (!work.empty()) {
    auto [f, mult] = work.back();
    work.pop_back();
    if (f.is_constant()) continue;
    UniPoly fp = f.derivative();
    if (fp.is_zero()) {
      // f = g(x^p); take p-th root of coefficients: a -> a^(q/p)
      const std::uint32_t p = F.p();
      std::vector<std::uint16_t> g((f.coeffs().size() - 1) / p + 1, 0);
      long long e = 1;
      for (std::uint32_t i = 0; i + 1 < F.k(); ++i) e *= p;  // q/p
      for (std::size_t i = 0; i < f.coeffs().size(); i += p)
        g[i / p] = F.pow({f.coeffs()[i]}, e).code;
      work.push_back({UniPoly(F, std::move(g)), mult * static_cast<int>(p)});
      continue;
    }
    UniPoly g = UniPoly::gcd(f, fp);
    UniPoly w = f / g;  // product of factors with multiplicity not divisible by p
    int i = 1;
    while (!w.is_constant()) {
      UniPoly y = UniPoly::gcd(w, g);
      UniPoly fac = w / y;
      if (!fac.is_constant()) square_free.push_back({fac.monic(), mult * i});
      w = std::move(y);
      g = g / w;
      ++i;
    }
    if (!g.is_constant()) work.push_back({g, mult});  // leftover p-th power part
  }

  for (auto& [sf, mult] : square_free) {
    // distinct-degree then equal-degree factorization
    UniPoly f = sf;
    UniPoly h = UniPoly::x(F) % f;
    int d = 0;
    while (f.degree() > 0) {
      ++d;
      if (2 * d > f.degree()) {
        result.push_back({f.monic(), mult});
        break;
      }
      h = UniPoly::powmod(h, BigInt(F.q()), f);
      UniPoly g = UniPoly::gcd(h - UniPoly::x(F), f);
      if (!g.is_constant()) {
        std::vector<UniPoly> parts;
        detail::edf(g, d, rng, parts);
        for (auto& pmono : parts) result.push_back({pmono, mult});
        f = f / g;
        h = h % f;
      }
    }
  }

  std::sort(result.begin(), result.end(), [](const auto& a, const auto& b) {
    if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
    return a.first.coeffs() < b.first.coeffs();
  });
  return result;
}

inline bool is_irreducible(const UniPoly& f, std::uint64_t seed = 0x5eedf00dULL) {
  if (f.degree() < 1) return false;
  auto fac = factorize(f, seed);
  return fac.size() == 1 && fac[0].second == 1 && fac[0].first.degree() == f.degree();
}

/// Arithmetic in F_q[T]/(u), u irreducible of degree e: the field F_{q^e}.
/// Elements are UniPoly residues of degree < e. Only used off the hot path
/// (singularity certification), so no tables.
class ExtField {
 public:
  ExtField(const FieldSpec& base, UniPoly modulus)
      : base_(&base), mod_(std::move(modulus)) {
    if (mod_.degree() < 1) throw std::invalid_argument("ExtField: modulus degree < 1");
    mod_ = mod_.monic();
  }

  const FieldSpec& base() const { return *base_; }
  const UniPoly& modulus() const { return mod_; }
  int ext_degree() const { return mod_.degree(); }

  UniPoly zero() const { return UniPoly::zero(*base_); }
  UniPoly one() const { return UniPoly::constant(*base_, base_->one()); }
  UniPoly reduce(const UniPoly& a) const { return a % mod_; }
  UniPoly add(const UniPoly& a, const UniPoly& b) const { return a + b; }
  UniPoly sub(const UniPoly& a, const UniPoly& b) const { return a - b; }
  UniPoly mul(const UniPoly& a, const UniPoly& b) const { return (a * b) % mod_; }

  UniPoly inv(const UniPoly& a) const {
    auto [g, u, v] = UniPoly::ext_gcd(reduce(a), mod_);
    (void)v;
    if (g.degree() != 0) throw std::domain_error("ExtField: inverse of zero");
    return reduce(u);
  }

 private:
  const FieldSpec* base_;
  UniPoly mod_;
};

}  // namespace planestat
