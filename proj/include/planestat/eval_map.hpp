#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "planestat/bigint.hpp"
#include "planestat/field.hpp"
#include "planestat/forms.hpp"

namespace planestat {

/// Matrix of the linear map L : R_d -> F_q^(q^2+q+1). Row r holds the values
/// of every degree-d monomial at the canonical lift of point r; L(f) is the
/// matrix-vector product with f's coefficient vector.
struct EvalMatrix {
  Field field;
  int d = 0;
  std::size_t rows = 0, cols = 0;
  std::vector<std::uint16_t> entries;  // row-major element codes

  std::uint16_t at(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }

  /// L(f) applied to a raw coefficient vector.
  std::vector<std::uint16_t> apply(const std::vector<std::uint16_t>& coeffs) const {
    const FieldSpec& F = *field;
    std::vector<std::uint16_t> out(rows, 0);
    for (std::size_t r = 0; r < rows; ++r) {
      FieldElement s{0};
      const std::uint16_t* row = &entries[r * cols];
      for (std::size_t c = 0; c < cols; ++c)
        if (coeffs[c] != 0) s = F.add(s, F.mul({row[c]}, {coeffs[c]}));
      out[r] = s.code;
    }
    return out;
  }
};

inline EvalMatrix build_matrix(const Field& field, int d) {
  const FieldSpec& F = *field;
  MonomialBasis basis(d);
  auto points = enumerate_points(field);
  EvalMatrix M;
  M.field = field;
  M.d = d;
  M.rows = points.size();
  M.cols = basis.exponents.size();
  M.entries.resize(M.rows * M.cols);
  for (std::size_t r = 0; r < M.rows; ++r) {
    const auto& v = points[r].coords;
    for (std::size_t c = 0; c < M.cols; ++c) {
      auto [i, j, k] = basis.exponents[c];
      FieldElement t = F.pow(v[0], i);
      t = F.mul(t, F.pow(v[1], j));
      t = F.mul(t, F.pow(v[2], k));
      M.entries[r * M.cols + c] = t.code;
    }
  }
  return M;
}

struct RankKernel {
  std::size_t rank = 0;
  /// Reduced-echelon kernel basis vectors, one per free column, ordered by
  /// free column index.
  std::vector<std::vector<std::uint16_t>> kernel_basis;
};

namespace detail {

/// In-place reduced row echelon form over F_q with first-nonzero pivoting.
/// Returns pivot column indices in order.
inline std::vector<std::size_t> rref(const FieldSpec& F, std::vector<std::uint16_t>& m,
                                     std::size_t rows, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t pr = 0;
  for (std::size_t c = 0; c < cols && pr < rows; ++c) {
    std::size_t sel = rows;
    for (std::size_t r = pr; r < rows; ++r)
      if (m[r * cols + c] != 0) {
        sel = r;
        break;
      }
    if (sel == rows) continue;
    if (sel != pr)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m[sel * cols + j], m[pr * cols + j]);
    FieldElement piv_inv = F.inv({m[pr * cols + c]});
    for (std::size_t j = c; j < cols; ++j)
      m[pr * cols + j] = F.mul({m[pr * cols + j]}, piv_inv).code;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == pr) continue;
      std::uint16_t factor = m[r * cols + c];
      if (factor == 0) continue;
      for (std::size_t j = c; j < cols; ++j)
        m[r * cols + j] =
            F.sub({m[r * cols + j]}, F.mul({factor}, {m[pr * cols + j]})).code;
    }
    pivots.push_back(c);
    ++pr;
  }
  return pivots;
}

inline RankKernel rank_kernel_of(const FieldSpec& F, std::vector<std::uint16_t> m,
                                 std::size_t rows, std::size_t cols) {
  auto pivots = rref(F, m, rows, cols);
  RankKernel out;
  out.rank = pivots.size();
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<std::uint16_t> v(cols, 0);
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i)
      v[pivots[i]] = F.neg({m[i * cols + f]}).code;
    out.kernel_basis.push_back(std::move(v));
  }
  return out;
}

}  // namespace detail

inline RankKernel rank_kernel(const EvalMatrix& M) {
  return detail::rank_kernel_of(*M.field, M.entries, M.rows, M.cols);
}

struct JDegreePart {
  std::size_t dimension = 0;
  std::vector<TernaryForm> basis;  // reduced-echelon coefficient vectors
};

/// Degree-d part of the plane-filling ideal J: the row space of all
/// (degree d-q-1 monomial) x (generator) products.
inline JDegreePart j_degree_part(const Field& field, int d) {
  const FieldSpec& F = *field;
  const int q = static_cast<int>(field->q());
  JDegreePart out;
  if (d < q + 1) return out;

  auto gens = filling_generators(field);
  MonomialBasis mb(d - q - 1);
  const std::size_t cols = MonomialBasis::size(d);
  std::vector<std::uint16_t> rows_data;
  std::size_t nrows = 0;
  for (const auto& g : gens) {
    for (const auto& e : mb.exponents) {
      std::vector<FieldElement> mono(MonomialBasis::size(d - q - 1), FieldElement{0});
      mono[MonomialBasis::index(d - q - 1, e[0], e[1])] = F.one();
      auto prod = detail::tri_mul(F, d - q - 1, mono, q + 1, g.coeffs);
      for (auto c : prod) rows_data.push_back(c.code);
      ++nrows;
    }
  }
  auto pivots = detail::rref(F, rows_data, nrows, cols);
  out.dimension = pivots.size();
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    TernaryForm f(field, d);
    for (std::size_t c = 0; c < cols; ++c) f.coeffs[c] = {rows_data[r * cols + c]};
    out.basis.push_back(std::move(f));
  }
  return out;
}

/// True iff rank(L) equals q^2+q+1. For d >= 2q-1 this additionally
/// cross-certifies surjectivity with the explicit delta forms: for every
/// rational point the transported form is nonzero there and zero elsewhere.
inline bool verify_surjective(const Field& field, int d) {
  EvalMatrix M = build_matrix(field, d);
  auto rk = rank_kernel(M);
  bool surjective = rk.rank == M.rows;
  const int q = static_cast<int>(field->q());
  if (d >= 2 * q - 1) {
    auto points = enumerate_points(field);
    for (const auto& target : points) {
      TernaryForm delta = lemma32_form(field, d, target);
      std::vector<std::uint16_t> raw(delta.coeffs.size());
      for (std::size_t i = 0; i < raw.size(); ++i) raw[i] = delta.coeffs[i].code;
      auto values = M.apply(raw);
      for (std::size_t r = 0; r < values.size(); ++r) {
        bool expect_zero = r != target.index;
        if (expect_zero != (values[r] == 0)) return false;
      }
    }
    if (!surjective) return false;  // delta family exists, rank must be full
  }
  return surjective;
}

/// True iff nullity(L) = dim J_d and every J_d basis form lies in ker L.
inline bool verify_kernel_is_J(const Field& field, int d) {
  EvalMatrix M = build_matrix(field, d);
  auto rk = rank_kernel(M);
  auto J = j_degree_part(field, d);
  if (M.cols - rk.rank != J.dimension) return false;
  for (const auto& f : J.basis) {
    std::vector<std::uint16_t> raw(f.coeffs.size());
    for (std::size_t i = 0; i < raw.size(); ++i) raw[i] = f.coeffs[i].code;
    for (auto v : M.apply(raw))
      if (v != 0) return false;
  }
  return true;
}

/// Exact counts of forms by number of rational zeros.
struct DistributionExact {
  Field field;
  int d = 0;
  std::map<int, BigInt> counts;

  BigInt total() const {
    BigInt t = 0;
    for (const auto& [n, c] : counts) t += c;
    return t;
  }
};

/// counts(n) = q^nullity * C(N, n) * (q-1)^(N-n); only valid when L is
/// surjective (refuses otherwise).
inline DistributionExact exact_distribution(const Field& field, int d) {
  EvalMatrix M = build_matrix(field, d);
  auto rk = rank_kernel(M);
  if (rk.rank != M.rows)
    throw std::domain_error(
        "exact_distribution: L is not surjective for this (q, d); the binomial "
        "formula does not apply");
  const unsigned long N = static_cast<unsigned long>(M.rows);
  const std::size_t nullity = M.cols - rk.rank;
  BigInt scale = big_pow(BigInt(field->q()), static_cast<unsigned long>(nullity));
  DistributionExact out{field, d, {}};
  for (unsigned long n = 0; n <= N; ++n)
    out.counts[static_cast<int>(n)] =
        scale * binomial(N, n) * big_pow(BigInt(field->q()) - 1, N - n);
  return out;
}

/// Exhaustive oracle: enumerate every form and tally its zero count.
inline DistributionExact brute_force_distribution(const Field& field, int d) {
  const std::size_t dim = MonomialBasis::size(d);
  double log2_forms = dim * std::log2(static_cast<double>(field->q()));
  if (log2_forms > 27.0)
    throw std::domain_error("brute_force_distribution: instance too large (over 2^27 forms)");

  EvalMatrix M = build_matrix(field, d);
  const FieldSpec& F = *field;
  DistributionExact out{field, d, {}};
  for (FormIterator it(field, d); !it.done(); it.advance()) {
    const auto& coeffs = it.coeffs();
    int zeros = 0;
    for (std::size_t r = 0; r < M.rows; ++r) {
      FieldElement s{0};
      const std::uint16_t* row = &M.entries[r * M.cols];
      for (std::size_t c = 0; c < M.cols; ++c)
        if (coeffs[c] != 0) s = F.add(s, F.mul({row[c]}, {coeffs[c]}));
      if (s.code == 0) ++zeros;
    }
    out.counts[zeros] += 1;
  }
  return out;
}

}  // namespace planestat
