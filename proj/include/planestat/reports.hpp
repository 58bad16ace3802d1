#pragma once

#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "planestat/census.hpp"
#include "planestat/csv.hpp"
#include "planestat/eval_map.hpp"
#include "planestat/mass.hpp"
#include "planestat/stats.hpp"
#include "planestat/svg.hpp"

namespace planestat {

struct RunConfig {
  std::uint32_t q = 2;
  std::uint32_t k = 1;  // extension degree of the base field
  int d = 4;
  std::string mode = "exhaustive";  // or "mc"
  std::uint64_t samples = 100000;
  std::uint64_t seed = 0;
  std::size_t shards = 1;
  bool smooth_only = false;
  std::string grid = "-6:6:0.05";
  std::string family = "F2";
  std::vector<double> q_list;  // residual sweeps; defaults below
  bool svg = false;
  std::string command_line;  // echoed as a # comment in every CSV
};

struct Report {
  bool ok = false;
  std::string message;  // names the failing check when !ok
  std::string csv;
  std::string svg;
};

/// start:stop:step, inclusive of stop when reachable within 1e-9.
inline std::vector<double> parse_grid(const std::string& spec) {
  double start = 0, stop = 0, step = 0;
  char c1 = 0, c2 = 0;
  std::istringstream in(spec);
  if (!(in >> start >> c1 >> stop >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0)
    throw std::invalid_argument("grid spec must be start:stop:step with step > 0");
  std::vector<double> xs;
  for (int i = 0;; ++i) {
    double x = start + i * step;
    if (x > stop + 1e-9) break;
    xs.push_back(x);
  }
  return xs;
}

inline Family parse_family(const std::string& name) {
  if (name == "F1") return Family::F1;
  if (name == "F2") return Family::F2;
  if (name == "F3") return Family::F3;
  if (name == "AFFINE") return Family::AFFINE;
  if (name == "SYM") return Family::SYM;
  throw std::invalid_argument("unknown family: " + name);
}

namespace detail {

inline std::string comment_line(const RunConfig& cfg) {
  return "# " + cfg.command_line + "\n";
}

inline Field make_base_field(const RunConfig& cfg) {
  // cfg.q is the characteristic when k > 1
  return FieldSpec::make(cfg.q, cfg.k);
}

}  // namespace detail

inline Report cmd_census(const RunConfig& cfg) {
  Report rep;
  Field field = detail::make_base_field(cfg);
  const bool mc = cfg.mode == "mc";
  if (!mc && cfg.mode != "exhaustive") {
    rep.message = "mode must be exhaustive or mc";
    return rep;
  }
  TraceHistogram hist =
      mc ? census_monte_carlo(field, cfg.d, cfg.samples, cfg.seed, cfg.smooth_only, cfg.shards)
         : census_exhaustive(field, cfg.d, cfg.smooth_only, cfg.shards);
  KsSummary ks = ks_normalize(hist);

  std::string csv = detail::comment_line(cfg);
  csv += "q,d,mode,smooth_only,seed,samples,total,t,x,count,density,ks_density,v_value,std_error\n";
  const std::string mode_s = mc ? "mc" : "exhaustive";
  const std::string so_s = cfg.smooth_only ? "true" : "false";
  const std::string seed_s = mc ? std::to_string(cfg.seed) : "";
  const std::string samples_s = mc ? std::to_string(cfg.samples) : "";
  for (const auto& row : ks.rows) {
    csv += std::to_string(field->q()) + "," + std::to_string(cfg.d) + "," + mode_s + "," +
           so_s + "," + seed_s + "," + samples_s + "," + hist.total.str() + "," +
           std::to_string(row.t) + "," + fmt12(row.x) + "," + row.raw_count.str() + "," +
           fmt12(row.density) + "," + (ks.has_ks ? fmt12(row.ks_density) : std::string()) +
           "," + fmt12(row.v_value) + "," + fmt12(row.std_error) + "\n";
  }
  rep.csv = csv;

  if (cfg.svg) {
    SvgSeries dens{"density", "#1f77b4", {}}, vv{"v_value", "#d62728", {}};
    for (const auto& row : ks.rows) {
      dens.points.push_back({row.x, ks.has_ks ? row.ks_density : row.density});
      vv.points.push_back({row.x, row.v_value});
    }
    if (ks.has_ks) dens.label = "ks_density";
    rep.svg = render_chart("trace census q=" + std::to_string(field->q()) +
                               " d=" + std::to_string(cfg.d) + " (" + mode_s + ")",
                           "x = t/sqrt(q)", "density", {dens, vv});
  }
  rep.ok = true;
  return rep;
}

inline Report cmd_evalmap(const RunConfig& cfg) {
  Report rep;
  Field field = detail::make_base_field(cfg);
  EvalMatrix M = build_matrix(field, cfg.d);
  auto rk = rank_kernel(M);
  auto J = j_degree_part(field, cfg.d);
  bool surj = verify_surjective(field, cfg.d);
  bool kj = verify_kernel_is_J(field, cfg.d);

  std::string csv = detail::comment_line(cfg);
  csv += "q,d,dim_Rd,N,rank,nullity,dim_Jd,kernel_is_J\n";
  csv += std::to_string(field->q()) + "," + std::to_string(cfg.d) + "," +
         std::to_string(M.cols) + "," + std::to_string(M.rows) + "," +
         std::to_string(rk.rank) + "," + std::to_string(M.cols - rk.rank) + "," +
         std::to_string(J.dimension) + "," + (kj ? "true" : "false") + "\n";
  rep.csv = csv;

  const int q = static_cast<int>(field->q());
  if (!kj) {
    rep.message = "kernel_is_J failed at q=" + std::to_string(q) + " d=" + std::to_string(cfg.d);
    return rep;
  }
  if (cfg.d >= 2 * q - 1 && !surj) {
    rep.message = "surjectivity failed at q=" + std::to_string(q) + " d=" + std::to_string(cfg.d);
    return rep;
  }
  rep.ok = true;
  return rep;
}

inline Report cmd_models(const RunConfig& cfg) {
  Report rep;
  std::vector<double> xs = parse_grid(cfg.grid);
  const double q = cfg.q;
  std::string csv = detail::comment_line(cfg);
  csv += "x,gauss,psi,B1,B2,B3,V1,V2,V3\n";
  std::vector<SvgSeries> series(5);
  series[0] = {"gauss", "#000000", {}};
  series[1] = {"B1", "#1f77b4", {}};
  series[2] = {"B2", "#2ca02c", {}};
  series[3] = {"B3", "#ff7f0e", {}};
  series[4] = {"psi", "#d62728", {}};
  for (double x : xs) {
    double b[4], v[4];
    try {
      for (int i = 1; i <= 3; ++i) {
        b[i] = model_B(i, q, x);
        v[i] = model_V(i, q, x);
      }
    } catch (const std::domain_error& e) {
      rep.message = "inadmissible x=" + fmt12(x) + ": " + e.what();
      return rep;
    }
    csv += fmt12(x) + "," + fmt12(gaussian(x)) + "," + fmt12(psi(x));
    for (int i = 1; i <= 3; ++i) csv += "," + fmt12(b[i]);
    for (int i = 1; i <= 3; ++i) csv += "," + fmt12(v[i]);
    csv += "\n";
    series[0].points.push_back({x, gaussian(x)});
    for (int i = 1; i <= 3; ++i) series[i].points.push_back({x, b[i]});
    series[4].points.push_back({x, psi(x)});
  }
  rep.csv = csv;
  if (cfg.svg)
    rep.svg = render_chart("models at q=" + std::to_string(cfg.q), "x", "density", series);
  rep.ok = true;
  return rep;
}

inline Report cmd_residuals(const RunConfig& cfg) {
  Report rep;
  std::vector<double> xs = parse_grid(cfg.grid);
  std::vector<double> qs = cfg.q_list.empty()
                               ? std::vector<double>{100, 400, 1600, 6400}
                               : cfg.q_list;
  Family family = parse_family(cfg.family);
  ResidualTable table;
  try {
    table = expansion_residuals(family, qs, xs);
  } catch (const std::domain_error& e) {
    rep.message = std::string("inadmissible row: ") + e.what();
    return rep;
  }
  std::string csv = detail::comment_line(cfg);
  csv += "family,q,sigma,x,b,r1,r2,r3\n";
  for (const auto& r : table.rows)
    csv += family_name(r.family) + "," + fmt12(r.q) + "," + fmt12(r.sigma) + "," +
           fmt12(r.x) + "," + fmt12(r.b) + "," + fmt12(r.r1) + "," + fmt12(r.r2) + "," +
           fmt12(r.r3) + "\n";
  rep.csv = csv;
  rep.ok = true;
  return rep;
}

inline Report cmd_mass_check(const RunConfig& cfg) {
  Report rep;
  Field field = detail::make_base_field(cfg);
  MassReport mass = mass_check(field);
  std::string csv = detail::comment_line(cfg);
  csv += "q,t,form_count,mass_forms,mass_orbits,equal\n";
  for (const auto& row : mass.rows)
    csv += std::to_string(field->q()) + "," + std::to_string(row.t) + "," +
           row.form_count.str() + "," + BigRational(row.mass_forms).str() + "," +
           BigRational(row.mass_orbits).str() + "," + (row.equal ? "true" : "false") + "\n";
  csv += "# mass_total=" + BigRational(mass.mass_total).str() +
         " q6_plus_1=" + mass.q6_plus_1.str() + " orbits=" + std::to_string(mass.orbit_count) +
         " classes=" + std::to_string(mass.class_count) + "\n";
  rep.csv = csv;
  if (!mass.orbit_stabilizer_ok) {
    rep.message = "orbit-stabilizer identity failed";
    return rep;
  }
  if (!mass.partition_ok) {
    rep.message = "orbit sizes do not partition the form counts";
    return rep;
  }
  if (!mass.all_equal) {
    for (const auto& row : mass.rows)
      if (!row.equal) {
        rep.message = "mass mismatch at t=" + std::to_string(row.t);
        return rep;
      }
  }
  rep.ok = true;
  return rep;
}

}  // namespace planestat
