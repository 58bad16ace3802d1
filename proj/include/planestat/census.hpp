#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "planestat/bigint.hpp"
#include "planestat/field.hpp"
#include "planestat/forms.hpp"
#include "planestat/smooth.hpp"

namespace planestat {

enum class CensusMode { exhaustive, monte_carlo };

/// Trace-indexed census result; t = q+1 - #C_f(F_q).
struct TraceHistogram {
  Field field;
  int d = 0;
  CensusMode mode = CensusMode::exhaustive;
  bool smooth_only = false;
  BigInt total = 0;
  BigInt rejected_singular = 0;
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;
  std::map<int, BigInt> counts;
};

/// Values of every degree-d monomial at every rational point (point-major),
/// so a point count is one dot product per point.
class MonomialTable {
 public:
  MonomialTable(const Field& field, int d)
      : field_(field), d_(d), dim_(MonomialBasis::size(d)) {
    const FieldSpec& F = *field;
    MonomialBasis basis(d);
    auto points = enumerate_points(field);
    npts_ = points.size();
    entries_.resize(npts_ * dim_);
    for (std::size_t r = 0; r < npts_; ++r)
      for (std::size_t c = 0; c < dim_; ++c) {
        auto [i, j, k] = basis.exponents[c];
        FieldElement t = F.pow(points[r].coords[0], i);
        t = F.mul(t, F.pow(points[r].coords[1], j));
        t = F.mul(t, F.pow(points[r].coords[2], k));
        entries_[r * dim_ + c] = t.code;
      }
  }

  std::size_t points() const { return npts_; }

  int count_zeros(const std::vector<std::uint16_t>& coeffs) const {
    const FieldSpec& F = *field_;
    int zeros = 0;
    for (std::size_t r = 0; r < npts_; ++r) {
      const std::uint16_t* row = &entries_[r * dim_];
      FieldElement s{0};
      for (std::size_t c = 0; c < dim_; ++c)
        if (coeffs[c] != 0) s = F.add(s, F.mul({coeffs[c]}, {row[c]}));
      if (s.code == 0) ++zeros;
    }
    return zeros;
  }

 private:
  Field field_;
  int d_;
  std::size_t dim_, npts_;
  std::vector<std::uint16_t> entries_;
};

inline int count_points(const TernaryForm& f) {
  MonomialTable table(f.field, f.d);
  std::vector<std::uint16_t> raw(f.coeffs.size());
  for (std::size_t i = 0; i < raw.size(); ++i) raw[i] = f.coeffs[i].code;
  return table.count_zeros(raw);
}

inline BigInt gl3_order(std::uint32_t q) {
  BigInt q3 = big_pow(BigInt(q), 3);
  return (q3 - 1) * (q3 - BigInt(q)) * (q3 - BigInt(q) * q);
}

namespace detail {

/// Evaluation grid behind the exhaustive census: Frobenius-orbit
/// representatives of all points of P^2 of degree <= depth over F_q,
/// grouped by degree (degree-1 segment first, in enumeration order), with
/// precomputed monomial values, scaled-delta rows for incremental updates,
/// partial-derivative values for the singularity scan, and a characteristic-p
/// digitwise addition table shared by all segment fields.
struct CensusGrid {
  Field base;
  int d;
  int depth;  // singular search depth covered (1 = rational points only)
  std::uint32_t q;
  std::size_t dim, npts, nrat;
  std::vector<Field> seg_field;
  std::vector<std::size_t> seg_begin;              // size nseg+1
  std::vector<std::uint16_t> mono;                 // [c*npts + P]
  std::vector<std::uint16_t> delta_row;            // [(c*(q-1) + dv-1)*npts + P]
  std::vector<std::uint16_t> px, py, pz;           // [P*dim + c]
  std::vector<std::uint16_t> add_tab;              // [a*M + b]
  std::uint32_t M = 0;

  /// True when singular detection can run on the grid itself: prime base
  /// field (so coefficients embed code-identically into every extension)
  /// and all needed extension fields small enough for full tables.
  static bool extended_feasible(const Field& f, int d) {
    if (f->k() != 1) return false;
    std::uint64_t m = 1;
    for (int e = 0; e < singular_search_bound(d); ++e) {
      m *= f->p();
      if (m > FieldSpec::kTableLimit) return false;
    }
    return true;
  }

  CensusGrid(const Field& f, int d_in, bool extended)
      : base(f), d(d_in), q(f->q()), dim(MonomialBasis::size(d_in)) {
    depth = extended ? singular_search_bound(d) : 1;
    const std::uint32_t p = base->p();
    MonomialBasis basis(d);

    // collect fields and orbit representatives per degree
    std::vector<std::vector<std::array<FieldElement, 3>>> reps(depth);
    for (int e = 1; e <= depth; ++e) {
      Field Fe = (e == 1) ? base : FieldSpec::make(p, static_cast<std::uint32_t>(e));
      seg_field.push_back(Fe);
      for (const auto& P : enumerate_points(Fe)) {
        // canonical points stay canonical under coordinate-wise Frobenius
        // x -> x^q (q = base field order)
        std::array<FieldElement, 3> cur = P.coords, best = P.coords;
        int orbit = 0;
        do {
          for (auto& c : cur) c = Fe->pow(c, static_cast<long long>(q));
          ++orbit;
          if (cur < best) best = cur;
        } while (cur != P.coords);
        if (orbit == e && best == P.coords) reps[e - 1].push_back(P.coords);
      }
    }
    seg_begin.resize(static_cast<std::size_t>(depth) + 1, 0);
    for (int e = 1; e <= depth; ++e)
      seg_begin[e] = seg_begin[e - 1] + reps[e - 1].size();
    npts = seg_begin.back();
    nrat = seg_begin[1];

    M = seg_field.back()->q();
    add_tab.resize(static_cast<std::size_t>(M) * M);
    const FieldSpec& Top = *seg_field.back();
    for (std::uint32_t a = 0; a < M; ++a)
      for (std::uint32_t b = 0; b < M; ++b)
        add_tab[static_cast<std::size_t>(a) * M + b] =
            Top.add({static_cast<std::uint16_t>(a)}, {static_cast<std::uint16_t>(b)}).code;

    mono.resize(dim * npts);
    px.assign(npts * dim, 0);
    py.assign(npts * dim, 0);
    pz.assign(npts * dim, 0);
    for (int e = 1; e <= depth; ++e) {
      const FieldSpec& Fe = *seg_field[static_cast<std::size_t>(e - 1)];
      for (std::size_t r = 0; r < reps[e - 1].size(); ++r) {
        std::size_t P = seg_begin[e - 1] + r;
        const auto& v = reps[e - 1][r];
        for (std::size_t c = 0; c < dim; ++c) {
          auto [i, j, k] = basis.exponents[c];
          auto monomial_at = [&](int ii, int jj, int kk) {
            FieldElement t = Fe.pow(v[0], ii);
            t = Fe.mul(t, Fe.pow(v[1], jj));
            return Fe.mul(t, Fe.pow(v[2], kk));
          };
          mono[c * npts + P] = monomial_at(i, j, k).code;
          if (i > 0)
            px[P * dim + c] = Fe.mul(Fe.from_int(i), monomial_at(i - 1, j, k)).code;
          if (j > 0)
            py[P * dim + c] = Fe.mul(Fe.from_int(j), monomial_at(i, j - 1, k)).code;
          if (k > 0)
            pz[P * dim + c] = Fe.mul(Fe.from_int(k), monomial_at(i, j, k - 1)).code;
        }
      }
    }

    delta_row.resize(dim * (q - 1) * npts);
    for (std::size_t c = 0; c < dim; ++c)
      for (std::uint32_t dv = 1; dv < q; ++dv) {
        std::uint16_t* row = &delta_row[(c * (q - 1) + dv - 1) * npts];
        for (int e = 1; e <= depth; ++e) {
          const FieldSpec& Fe = *seg_field[static_cast<std::size_t>(e - 1)];
          // base-field code dv embeds unchanged (prime base for depth > 1)
          for (std::size_t P = seg_begin[e - 1]; P < seg_begin[e]; ++P)
            row[P] = Fe.mul({static_cast<std::uint16_t>(dv)}, {mono[c * npts + P]}).code;
        }
      }
  }

  void init_values(const std::vector<std::uint16_t>& coeffs,
                   std::vector<std::uint16_t>& vals) const {
    vals.assign(npts, 0);
    for (std::size_t c = 0; c < dim; ++c) {
      std::uint16_t cc = coeffs[c];
      if (cc == 0) continue;
      const std::uint16_t* row = &delta_row[(c * (q - 1) + cc - 1) * npts];
      for (std::size_t P = 0; P < npts; ++P)
        vals[P] = add_tab[static_cast<std::size_t>(vals[P]) * M + row[P]];
    }
  }

  void apply_delta(std::size_t c, std::uint16_t dv, std::vector<std::uint16_t>& vals) const {
    const std::uint16_t* row = &delta_row[(c * (q - 1) + dv - 1) * npts];
    std::uint16_t* v = vals.data();
    for (std::size_t P = 0; P < npts; ++P)
      v[P] = add_tab[static_cast<std::size_t>(v[P]) * M + row[P]];
  }

  int rational_zeros(const std::vector<std::uint16_t>& vals) const {
    int zeros = 0;
    for (std::size_t P = 0; P < nrat; ++P) zeros += vals[P] == 0;
    return zeros;
  }

  /// Scan for a point of degree <= depth where f and all partials vanish.
  /// Complete for quartics (depth 4) and any d with depth = (d-1)^2.
  bool has_singular(const std::vector<std::uint16_t>& coeffs,
                    const std::vector<std::uint16_t>& vals) const {
    for (int e = 1; e <= depth; ++e) {
      const FieldSpec& Fe = *seg_field[static_cast<std::size_t>(e - 1)];
      const std::uint16_t* mt = Fe.mul_table().data();
      const std::uint32_t qe = Fe.q();
      for (std::size_t P = seg_begin[e - 1]; P < seg_begin[e]; ++P) {
        if (vals[P] != 0) continue;
        bool sing = true;
        for (const std::uint16_t* tab : {px.data(), py.data(), pz.data()}) {
          const std::uint16_t* row = tab + P * dim;
          std::uint16_t acc = 0;
          for (std::size_t c = 0; c < dim; ++c)
            if (coeffs[c] != 0 && row[c] != 0)
              acc = add_tab[static_cast<std::size_t>(acc) * M +
                            mt[static_cast<std::size_t>(coeffs[c]) * qe + row[c]]];
          if (acc != 0) {
            sing = false;
            break;
          }
        }
        if (sing) return true;
      }
    }
    return false;
  }
};

inline void check_weil(const TraceHistogram& h, int t) {
  if (h.smooth_only && h.d == 4) {
    double bound = 6.0 * std::sqrt(static_cast<double>(h.field->q()));
    if (std::abs(t) > bound)
      throw std::logic_error("census: smooth quartic violates the Weil bound");
  }
}

}  // namespace detail

/// Exhaustive census over all q^dim forms. Sharding partitions the form
/// space (see FormIterator); the merged result is shard-count independent.
inline TraceHistogram census_exhaustive(const Field& field, int d, bool smooth_only,
                                        std::size_t shards = 1) {
  const std::size_t dim = MonomialBasis::size(d);
  if (dim * std::log2(static_cast<double>(field->q())) > 35.0)
    throw std::domain_error("census_exhaustive: instance too large (over 2^35 forms)");

  TraceHistogram hist;
  hist.field = field;
  hist.d = d;
  hist.mode = CensusMode::exhaustive;
  hist.smooth_only = smooth_only;

  const bool extended = smooth_only && detail::CensusGrid::extended_feasible(field, d);
  detail::CensusGrid grid(field, d, extended);
  const bool slow_smooth = smooth_only && !extended;
  const FieldSpec& F = *field;
  const int q1 = static_cast<int>(field->q()) + 1;

  std::map<int, long long> counts;
  long long rejected = 0, total = 0;
  std::vector<std::uint16_t> vals, prev;
  for (std::size_t shard = 0; shard < shards; ++shard) {
    FormIterator it(field, d, shard, shards);
    grid.init_values(it.coeffs(), vals);
    prev = it.coeffs();
    while (true) {
      ++total;
      bool singular = false;
      if (smooth_only) {
        if (slow_smooth)
          singular = !is_smooth(it.form());
        else
          singular = grid.has_singular(it.coeffs(), vals);
      }
      if (singular) {
        ++rejected;
      } else {
        int t = q1 - grid.rational_zeros(vals);
        counts[t] += 1;
      }
      std::size_t changed = it.advance();
      if (it.done()) break;
      const auto& cc = it.coeffs();
      for (std::size_t c = changed; c < dim; ++c)
        if (cc[c] != prev[c]) {
          grid.apply_delta(c, F.sub({cc[c]}, {prev[c]}).code, vals);
          prev[c] = cc[c];
        }
    }
  }
  for (const auto& [t, n] : counts) {
    detail::check_weil(hist, t);
    hist.counts[t] = n;
  }
  hist.rejected_singular = rejected;
  hist.total = total;
  return hist;
}

/// Monte Carlo census: draw i is sample_form(field, d, seed, i), so the
/// result depends only on (seed, samples), not on sharding.
inline TraceHistogram census_monte_carlo(const Field& field, int d, std::uint64_t samples,
                                         std::uint64_t seed, bool smooth_only,
                                         std::size_t shards = 1) {
  if (samples < 1) throw std::invalid_argument("census_monte_carlo: samples >= 1 required");
  (void)shards;  // partitioning the draw index range is a no-op for the tallies
  TraceHistogram hist;
  hist.field = field;
  hist.d = d;
  hist.mode = CensusMode::monte_carlo;
  hist.smooth_only = smooth_only;
  hist.seed = seed;
  hist.samples = samples;

  MonomialTable table(field, d);
  const int q1 = static_cast<int>(field->q()) + 1;
  std::map<int, long long> counts;
  long long rejected = 0;
  std::vector<std::uint16_t> raw(MonomialBasis::size(d));
  for (std::uint64_t i = 0; i < samples; ++i) {
    TernaryForm f = sample_form(field, d, seed, i);
    if (smooth_only && !is_smooth(f)) {
      ++rejected;
      continue;
    }
    for (std::size_t c = 0; c < raw.size(); ++c) raw[c] = f.coeffs[c].code;
    int t = q1 - table.count_zeros(raw);
    detail::check_weil(hist, t);
    counts[t] += 1;
  }
  for (const auto& [t, n] : counts) hist.counts[t] = n;
  hist.rejected_singular = rejected;
  hist.total = samples;
  return hist;
}

struct KsRow {
  int t = 0;
  double x = 0;
  BigInt raw_count;
  double density = 0;
  double ks_density = 0;  // meaningful only when has_ks
  double v_value = 0;
  double std_error = 0;
};

struct KsSummary {
  bool has_ks = false;  // d = 4 and smooth_only
  std::vector<KsRow> rows;
};

/// Densities and Katz-Sarnak normalizations of a histogram. density(t) =
/// sqrt(q) count/total; ks_density divides absolute counts (Monte Carlo
/// counts are first rescaled by q^15/samples) by (q^6+1)#GL_3; v_value(t) =
/// sqrt(q)(density(t) - density(-t)).
inline KsSummary ks_normalize(const TraceHistogram& hist) {
  const double sq = std::sqrt(static_cast<double>(hist.field->q()));
  KsSummary out;
  out.has_ks = hist.d == 4 && hist.smooth_only;

  BigRational ks_scale = 0;
  if (out.has_ks) {
    BigInt denom = (big_pow(BigInt(hist.field->q()), 6) + 1) * gl3_order(hist.field->q());
    if (hist.mode == CensusMode::monte_carlo)
      ks_scale = BigRational(big_pow(BigInt(hist.field->q()), 15),
                             denom * BigInt(hist.samples));
    else
      ks_scale = BigRational(1, denom);
  }

  auto density_of = [&](int t) {
    auto it = hist.counts.find(t);
    if (it == hist.counts.end()) return 0.0;
    return sq * BigRational(it->second, hist.total).convert_to<double>();
  };

  const double total_d = BigInt(hist.total).convert_to<double>();
  for (const auto& [t, count] : hist.counts) {
    KsRow row;
    row.t = t;
    row.x = t / sq;
    row.raw_count = count;
    row.density = density_of(t);
    if (out.has_ks)
      row.ks_density = sq * (BigRational(count) * ks_scale).convert_to<double>();
    row.v_value = sq * (density_of(t) - density_of(-t));
    double phat = BigRational(count, hist.total).convert_to<double>();
    row.std_error = sq * std::sqrt(phat * (1.0 - phat) / total_d);
    out.rows.push_back(row);
  }
  return out;
}

}  // namespace planestat
