// planestat: trace-of-Frobenius census and model tables for plane curves
// over small finite fields.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "planestat/reports.hpp"

namespace {

// Echoed into the CSV header comment. --shards is dropped so that reruns
// with a different shard count stay byte-identical.
std::string join_argv(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    std::string a = argv[i];
    if (a.rfind("--shards=", 0) == 0) continue;
    if (a == "--shards") {
      ++i;
      continue;
    }
    if (!s.empty()) s += " ";
    s += a;
  }
  return s;
}

int emit(const planestat::Report& rep, const std::string& out_path,
         const std::string& svg_path) {
  if (out_path.empty()) {
    std::cout << rep.csv;
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot open " << out_path << "\n";
      return 2;
    }
    f << rep.csv;
  }
  if (!rep.svg.empty()) {
    std::ofstream f(svg_path, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot open " << svg_path << "\n";
      return 2;
    }
    f << rep.svg;
  }
  if (!rep.ok) {
    std::cerr << "check failed: " << rep.message << "\n";
    return 1;
  }
  return 0;
}

// replace a trailing .csv with .svg, else append .svg
std::string svg_name(const std::string& out) {
  if (out.size() >= 4 && out.substr(out.size() - 4) == ".csv")
    return out.substr(0, out.size() - 4) + ".svg";
  return out + ".svg";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"trace distribution census and limiting-model tables"};
  app.require_subcommand(1);

  planestat::RunConfig cfg;
  cfg.command_line = join_argv(argc, argv);
  std::string out_path;

  auto add_common = [&](CLI::App* sub, bool field_flags) {
    if (field_flags) {
      sub->add_option("--q", cfg.q, "field characteristic (base field size when --k 1)");
      sub->add_option("--k", cfg.k, "extension degree over the prime field");
    }
    sub->add_option("--out", out_path, "CSV output path (stdout when omitted)");
  };

  CLI::App* census = app.add_subcommand("census", "trace histogram over degree-d forms");
  add_common(census, true);
  census->add_option("--d", cfg.d, "form degree");
  census->add_option("--mode", cfg.mode, "exhaustive or mc")
      ->check(CLI::IsMember({"exhaustive", "mc"}));
  census->add_option("--samples", cfg.samples, "draw count for mc mode");
  census->add_option("--seed", cfg.seed, "rng seed for mc mode");
  census->add_option("--shards", cfg.shards, "split the workload; output is shard-invariant");
  census->add_flag("--smooth-only", cfg.smooth_only, "restrict to nonsingular forms");
  census->add_flag("--svg", cfg.svg, "also write a chart next to --out");

  CLI::App* evalmap = app.add_subcommand("evalmap", "evaluation-map rank and kernel report");
  add_common(evalmap, true);
  evalmap->add_option("--d", cfg.d, "form degree");

  CLI::App* models = app.add_subcommand("models", "limiting model table on an x grid");
  add_common(models, true);
  models->add_option("--grid", cfg.grid, "x grid as start:stop:step");
  models->add_flag("--svg", cfg.svg, "also write a chart next to --out");

  CLI::App* residuals = app.add_subcommand("residuals", "expansion residuals r1, r2, r3");
  add_common(residuals, false);
  residuals->add_option("--family", cfg.family, "F1, F2, F3, AFFINE, or SYM");
  residuals->add_option("--q-list", cfg.q_list, "field sizes to sweep");
  residuals->add_option("--grid", cfg.grid, "x grid as start:stop:step");

  CLI::App* mass = app.add_subcommand("mass-check", "orbit mass identity for quartics");
  add_common(mass, true);

  CLI11_PARSE(app, argc, argv);

  try {
    planestat::Report rep;
    if (census->parsed()) rep = planestat::cmd_census(cfg);
    else if (evalmap->parsed()) rep = planestat::cmd_evalmap(cfg);
    else if (models->parsed()) rep = planestat::cmd_models(cfg);
    else if (residuals->parsed()) rep = planestat::cmd_residuals(cfg);
    else rep = planestat::cmd_mass_check(cfg);
    if (rep.svg.empty()) cfg.svg = false;
    return emit(rep, out_path, out_path.empty() ? "chart.svg" : svg_name(out_path));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
