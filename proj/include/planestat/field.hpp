#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace planestat {

/// Element of a finite field, identified by its code in [0, q).
/// The base-p digits of the code are the coefficients of the polynomial
/// representative (digit i = coefficient of degree i). Codes 0 and 1 are
/// the additive and multiplicative identities in every field.
struct FieldElement {
  std::uint16_t code = 0;

  friend bool operator==(FieldElement a, FieldElement b) { return a.code == b.code; }
  friend bool operator!=(FieldElement a, FieldElement b) { return a.code != b.code; }
  friend bool operator<(FieldElement a, FieldElement b) { return a.code < b.code; }
};

/// Exact arithmetic in F_q, q = p^k <= 2^16.
///
/// The modulus is the lexicographically smallest monic irreducible degree-k
/// polynomial over F_p (coefficient tuples compared from the constant term
/// up), so element codes are reproducible across runs. For q <= 4096 full
/// multiplication and inverse tables are precomputed; above that,
/// multiplication is polynomial multiply-and-reduce.
///
/// Immutable after construction; safe for shared read access.
class FieldSpec {
 public:
  static constexpr std::uint32_t kMaxOrder = 65536;
  static constexpr std::uint32_t kTableLimit = 4096;

  static std::shared_ptr<const FieldSpec> make(std::uint32_t p, std::uint32_t k);

  std::uint32_t p() const { return p_; }
  std::uint32_t k() const { return k_; }
  std::uint32_t q() const { return q_; }

  /// Monic irreducible modulus, coefficients low degree first, length k+1.
  /// For k = 1 this is unused (and holds {0, 1}).
  const std::vector<std::uint16_t>& modulus() const { return modulus_; }

  FieldElement zero() const { return {0}; }
  FieldElement one() const { return {1}; }

  FieldElement element(std::uint32_t code) const {
    if (code >= q_) throw std::out_of_range("element code out of range");
    return {static_cast<std::uint16_t>(code)};
  }

  /// Image of an integer under Z -> F_p -> F_q.
  FieldElement from_int(long long n) const {
    long long r = n % static_cast<long long>(p_);
    if (r < 0) r += p_;
    return {static_cast<std::uint16_t>(r)};
  }

  FieldElement add(FieldElement a, FieldElement b) const {
    if (k_ == 1) {
      std::uint32_t s = static_cast<std::uint32_t>(a.code) + b.code;
      if (s >= q_) s -= q_;
      return {static_cast<std::uint16_t>(s)};
    }
    if (p_ == 2) return {static_cast<std::uint16_t>(a.code ^ b.code)};
    return {digitwise(a.code, b.code, /*sub=*/false)};
  }

  FieldElement sub(FieldElement a, FieldElement b) const {
    if (k_ == 1) {
      std::int32_t s = static_cast<std::int32_t>(a.code) - b.code;
      if (s < 0) s += q_;
      return {static_cast<std::uint16_t>(s)};
    }
    if (p_ == 2) return {static_cast<std::uint16_t>(a.code ^ b.code)};
    return {digitwise(a.code, b.code, /*sub=*/true)};
  }

  FieldElement neg(FieldElement a) const { return sub(zero(), a); }

  FieldElement mul(FieldElement a, FieldElement b) const {
    if (!mul_table_.empty())
      return {mul_table_[static_cast<std::size_t>(a.code) * q_ + b.code]};
    return {mul_slow(a.code, b.code)};
  }

  FieldElement inv(FieldElement a) const {
    if (a.code == 0) throw std::domain_error("division by zero in F_q");
    if (!inv_table_.empty()) return {inv_table_[a.code]};
    // a^(q-2) by square-and-multiply
    return pow(a, static_cast<long long>(q_) - 2);
  }

  FieldElement div(FieldElement a, FieldElement b) const { return mul(a, inv(b)); }

  FieldElement pow(FieldElement a, long long e) const {
    if (e < 0) {
      a = inv(a);
      e = -e;
    }
    if (e == 0) return one();
    if (a.code == 0) return zero();
    e %= static_cast<long long>(q_) - 1;  // a^(q-1) = 1 for a != 0
    if (e == 0) return one();
    FieldElement r = one(), base = a;
    while (e > 0) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }

  std::vector<FieldElement> all_elements() const {
    std::vector<FieldElement> v(q_);
    for (std::uint32_t c = 0; c < q_; ++c) v[c] = {static_cast<std::uint16_t>(c)};
    return v;
  }

  /// Raw table access for hot loops. Empty when q > 4096.
  const std::vector<std::uint16_t>& mul_table() const { return mul_table_; }

 private:
  FieldSpec(std::uint32_t p, std::uint32_t k, std::uint32_t q, std::vector<std::uint16_t> mod)
      : p_(p), k_(k), q_(q), modulus_(std::move(mod)) {}

  std::uint16_t digitwise(std::uint32_t a, std::uint32_t b, bool sub) const {
    std::uint32_t out = 0, mult = 1;
    for (std::uint32_t i = 0; i < k_; ++i) {
      std::uint32_t da = a % p_, db = b % p_;
      a /= p_;
      b /= p_;
      std::uint32_t d = sub ? (da + p_ - db) % p_ : (da + db) % p_;
      out += d * mult;
      mult *= p_;
    }
    return static_cast<std::uint16_t>(out);
  }

  std::uint16_t mul_slow(std::uint32_t a, std::uint32_t b) const;

  static bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }

  std::uint32_t p_, k_, q_;
  std::vector<std::uint16_t> modulus_;
  std::vector<std::uint16_t> mul_table_;
  std::vector<std::uint16_t> inv_table_;
};

namespace detail {

// Dense polynomial over F_p with raw digit coefficients, used only while
// constructing a field (irreducible modulus search).
using PPoly = std::vector<std::uint16_t>;

inline PPoly ppoly_trim(PPoly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

inline PPoly ppoly_mod(PPoly a, const PPoly& m, std::uint32_t p) {
  a = ppoly_trim(std::move(a));
  while (a.size() >= m.size() && !a.empty()) {
    std::uint32_t c = a.back();  // m is monic
    std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i)
      a[shift + i] = static_cast<std::uint16_t>((a[shift + i] + p - (c * m[i]) % p) % p);
    a = ppoly_trim(std::move(a));
  }
  return a;
}

inline bool ppoly_divides(const PPoly& div, PPoly a, std::uint32_t p) {
  return ppoly_mod(std::move(a), div, p).empty();
}

// Trial factorization: monic poly of degree k irreducible over F_p iff no
// monic divisor of degree 1..k/2.
inline bool ppoly_irreducible(const PPoly& f, std::uint32_t p) {
  std::uint32_t k = static_cast<std::uint32_t>(f.size()) - 1;
  for (std::uint32_t deg = 1; deg <= k / 2; ++deg) {
    // enumerate monic divisor candidates of this degree
    std::vector<std::uint16_t> c(deg, 0);
    while (true) {
      PPoly cand(c.begin(), c.end());
      cand.push_back(1);
      if (ppoly_divides(cand, f, p)) return false;
      std::size_t i = 0;
      while (i < deg && ++c[i] == p) c[i++] = 0;
      if (i == deg) break;
    }
  }
  return true;
}

}  // namespace detail

inline std::uint16_t FieldSpec::mul_slow(std::uint32_t a, std::uint32_t b) const {
  if (k_ == 1) return static_cast<std::uint16_t>((static_cast<std::uint64_t>(a) * b) % p_);
  // expand codes into digit vectors, multiply, reduce mod modulus_
  std::vector<std::uint32_t> da(k_), db(k_);
  {
    std::uint32_t t = a;
    for (std::uint32_t i = 0; i < k_; ++i) { da[i] = t % p_; t /= p_; }
    t = b;
    for (std::uint32_t i = 0; i < k_; ++i) { db[i] = t % p_; t /= p_; }
  }
  std::vector<std::uint32_t> prod(2 * k_ - 1, 0);
  for (std::uint32_t i = 0; i < k_; ++i)
    for (std::uint32_t j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
  // reduce: modulus monic of degree k
  for (std::size_t deg = prod.size(); deg-- > k_;) {
    std::uint32_t c = prod[deg];
    if (c == 0) continue;
    prod[deg] = 0;
    for (std::uint32_t i = 0; i < k_; ++i) {
      std::uint32_t sub = (c * modulus_[i]) % p_;
      prod[deg - k_ + i] = (prod[deg - k_ + i] + p_ - sub) % p_;
    }
  }
  std::uint32_t out = 0, mult = 1;
  for (std::uint32_t i = 0; i < k_; ++i) {
    out += prod[i] * mult;
    mult *= p_;
  }
  return static_cast<std::uint16_t>(out);
}

inline std::shared_ptr<const FieldSpec> FieldSpec::make(std::uint32_t p, std::uint32_t k) {
  if (k < 1) throw std::invalid_argument("extension degree k must be >= 1");
  if (!is_prime(p)) throw std::invalid_argument("characteristic p must be prime");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    q *= p;
    if (q > kMaxOrder) throw std::invalid_argument("field order p^k exceeds 2^16");
  }

  std::vector<std::uint16_t> mod;
  if (k == 1) {
    mod = {0, 1};
  } else {
    // lexicographically smallest (by coefficient tuple from constant term up)
    // monic irreducible of degree k: c0 varies slowest
    std::vector<std::uint16_t> c(k, 0);
    bool found = false;
    while (!found) {
      detail::PPoly f(c.begin(), c.end());
      f.push_back(1);
      if (detail::ppoly_irreducible(f, p)) {
        mod = f;
        found = true;
        break;
      }
      // increment with c[k-1] fastest so that tuples (c0,...,c_{k-1}) are
      // visited in lexicographic order
      std::size_t i = k;
      while (i > 0 && ++c[i - 1] == p) c[--i] = 0;
      if (i == 0 && c[0] == 0) break;
    }
    if (!found) throw std::logic_error("no irreducible polynomial found");  // unreachable
  }

  auto field = std::shared_ptr<FieldSpec>(
      new FieldSpec(p, k, static_cast<std::uint32_t>(q), std::move(mod)));
  if (q <= kTableLimit) {
    field->mul_table_.resize(static_cast<std::size_t>(q) * q);
    for (std::uint32_t a = 0; a < q; ++a)
      for (std::uint32_t b = a; b < q; ++b) {
        std::uint16_t v = field->mul_slow(a, b);
        field->mul_table_[static_cast<std::size_t>(a) * q + b] = v;
        field->mul_table_[static_cast<std::size_t>(b) * q + a] = v;
      }
    field->inv_table_.resize(q, 0);
    for (std::uint32_t a = 1; a < q; ++a) {
      if (field->inv_table_[a] != 0) continue;
      for (std::uint32_t b = 1; b < q; ++b)
        if (field->mul_table_[static_cast<std::size_t>(a) * q + b] == 1) {
          field->inv_table_[a] = static_cast<std::uint16_t>(b);
          field->inv_table_[b] = static_cast<std::uint16_t>(a);
          break;
        }
    }
  }
  return field;
}

}  // namespace planestat
