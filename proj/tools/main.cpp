#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <memory>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "artifacts.hpp"
#include "balloons/error.hpp"
#include "commands.hpp"
#include "run_config.hpp"

#ifndef BALLOONS_VERSION
#define BALLOONS_VERSION "unknown"
#endif

namespace {

using namespace balloons::cli;
using nlohmann::json;

int report_error(const std::string& code, const std::string& message) {
  std::cerr << json{{"error", code}, {"message", message}}.dump() << '\n';
  return 2;
}

struct Subcommand {
  CLI::App* app;
  std::unique_ptr<ParamTable> params;
  std::function<CommandResult(const RunConfig&, ArtifactWriter&)> run;
};

void add_common(ParamTable& p) {
  p.add("seed", &RunConfig::seed, "master seed; run i uses a seed derived from (seed, i)");
  p.add("seeds", &RunConfig::seeds, "number of independent runs");
  p.add("out", &RunConfig::out, "output directory");
  p.add("format", &RunConfig::format, "csv, json (or svg for render)");
  p.add("jobs", &RunConfig::jobs, "runs executed concurrently");
  p.add_config_option();
}

void add_sampling(ParamTable& p) {
  p.add("space", &RunConfig::space, "euclidean, hyperbolic or tree");
  p.add("dim", &RunConfig::dim, "euclidean dimension");
  p.add("degree", &RunConfig::degree, "tree degree");
  p.add("window", &RunConfig::window, "cube side, or radius of the disk / tree ball");
  p.add("intensity", &RunConfig::intensity, "points per unit measure");
  p.flag("oracle", &RunConfig::oracle, "use the brute-force matcher");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Poisson balloon process simulations and checks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", BALLOONS_VERSION);

  RunConfig cfg;
  std::map<std::string, Subcommand> subs;
  auto make = [&](const std::string& name, const std::string& help, auto run) -> ParamTable& {
    CLI::App* sub = app.add_subcommand(name, help);
    auto& s = subs[name];
    s.app = sub;
    s.params = std::make_unique<ParamTable>(sub, cfg);
    s.run = run;
    add_common(*s.params);
    return *s.params;
  };

  {
    auto& p = make("simulate", "sample, match, and summarize the balloon trajectory", run_simulate);
    add_sampling(p);
    p.add("t-grid", &RunConfig::t_grid, "times a:b:step at which R_t is reported");
    p.add("t0", &RunConfig::t0, "start of the R_t / t minimum");
  }
  {
    auto& p = make("render", "draw the balloons at time t as SVG", run_render);
    add_sampling(p);
    p.add("t", &RunConfig::t, "time to draw");
    p.add("points", &RunConfig::points, "explicit planar points x,y;x,y;... instead of sampling");
  }
  {
    auto& p = make("treesep", "separated sets in the colored configuration model", run_treesep);
    p.add("d", &RunConfig::d_range, "degrees a:b");
    p.add("t", &RunConfig::t_range, "separations a:b");
    p.add("n", &RunConfig::n, "vertices (even)");
  }
  {
    auto& p = make("verify-gap", "tabulate the first-moment exponent margin p - H", run_verify_gap);
    p.add("d", &RunConfig::d_range, "degrees a:b");
    p.add("t", &RunConfig::t_range, "separations a:b");
  }
  {
    auto& p = make("hyptess", "ideal-triangle tessellation checks and the transience report", run_hyptess);
    p.add("depth", &RunConfig::depth, "tree depth of the tessellation");
    p.add("pairs", &RunConfig::pairs, "sampled pairs for the distortion check");
    p.flag("transience", &RunConfig::transience, "also run hyperbolic balloon processes");
    p.add("window", &RunConfig::window, "disk radius for the transience runs");
    p.add("intensity", &RunConfig::intensity, "points per unit area");
    p.add("t-grid", &RunConfig::t_grid, "times a:b:step");
    p.add("t0", &RunConfig::t0, "start of the R_t / t minimum");
    p.flag("oracle", &RunConfig::oracle, "use the brute-force matcher");
  }
  {
    auto& p = make("limsup", "max of X_n / |n| over growing boxes", run_limsup);
    p.add("field", &RunConfig::field, "constant, power or pareto");
    p.add("beta", &RunConfig::beta, "Pareto tail index");
    p.add("dim", &RunConfig::dim, "lattice dimension");
    p.add("L", &RunConfig::L_list, "box sizes, comma separated");
  }
  {
    auto& p = make("vitali", "greedy disjoint subcover with 3-fold blowups", run_vitali);
    p.add("balls", &RunConfig::balls, "balls per collection");
    p.add("dim", &RunConfig::dim, "dimension");
    p.add("window", &RunConfig::window, "side of the cube holding the centers");
    p.add("max-radius", &RunConfig::max_radius, "radii are uniform in (0, max-radius]");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error("invalid-argument", e.what());
  }

  for (auto& [name, sub] : subs) {
    if (!sub.app->parsed()) continue;
    cfg.command = name;
    try {
      sub.params->apply_config_file();
      const json config = sub.params->to_json();
      ArtifactWriter writer(cfg.out);
      const CommandResult res = sub.run(cfg, writer);
      json manifest = {{"tool", "balloons"},
                       {"version", BALLOONS_VERSION},
                       {"compiler", __VERSION__},
                       {"command", name},
                       {"config", config},
                       {"config_hash", fmt::format("{:016x}", config_hash(config))},
                       {"seed", cfg.seed},
                       {"verifier_violations", res.violations},
                       {"summary", res.summary}};
      writer.commit(std::move(manifest));
      std::cout << json{{"command", name}, {"out", cfg.out}, {"violations", res.violations}}.dump() << '\n';
      return res.violations == 0 ? 0 : 1;
    } catch (const balloons::Error& e) {
      return report_error(std::string(balloons::to_string(e.code())), e.what());
    } catch (const std::bad_alloc&) {
      return report_error("size-guard", "out of memory");
    } catch (const std::exception& e) {
      return report_error("internal", e.what());
    }
  }
  return report_error("invalid-argument", "no subcommand");
}
