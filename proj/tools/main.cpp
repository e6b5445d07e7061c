#include <cstdint>
#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "qdvr/config.hpp"
#include "qdvr/constants.hpp"
#include "qdvr/workflow.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string model = "double_well";
  std::string out = "out";
  std::string shots_text = "exact";
  uint64_t seed = 1;
};

void add_common(CLI::App* cmd, CommonArgs* args, bool stochastic) {
  cmd->add_option("--config", args->config_path, "json config file");
  cmd->add_option("--model", args->model,
                  "model preset when no config is given: double_well, helium")
      ->default_val(args->model);
  cmd->add_option("-o,--out", args->out, "output directory")
      ->default_val(args->out);
  if (stochastic) {
    cmd->add_option("--seed", args->seed, "rng seed")->default_val(args->seed);
    cmd->add_option("--shots", args->shots_text,
                    "measurement budget per expectation value, or 'exact'")
        ->default_val(args->shots_text);
  }
}

qdvr::RunConfig load(const CommonArgs& args) {
  if (!args.config_path.empty()) return qdvr::load_config(args.config_path);
  return qdvr::default_config(args.model);
}

qdvr::ShotConfig parse_shots(const CommonArgs& args) {
  if (args.shots_text == "exact") return qdvr::ShotConfig::exact();
  std::size_t pos = 0;
  long n = 0;
  try {
    n = std::stol(args.shots_text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != args.shots_text.size() || n <= 0)
    throw CLI::ValidationError("--shots", "expected a positive count or 'exact'");
  return qdvr::ShotConfig::sampled(n, args.seed);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"grid-based variational quantum dynamics"};
  app.set_version_flag("--version", std::string(qdvr::kVersion));
  app.require_subcommand(1);

  CommonArgs common;
  double step_fs = 0.0, duration_fs = 0.0;
  int stride = 0, states = 0, layers = 0;
  std::string eigen_path, input_csv, method, scheme;
  bool phase_kick = false;

  CLI::App* eigen = app.add_subcommand("eigen", "lowest eigenstates, dense or vqd");
  add_common(eigen, &common, true);
  eigen->add_option("--states", states, "number of states");
  eigen->add_option("--method", method, "dense or vqd");
  eigen->add_option("--layers", layers, "ansatz layers for vqd");
  eigen->callback([&] {
    qdvr::RunConfig cfg = load(common);
    if (states > 0) cfg.eigen.states = states;
    if (!method.empty()) cfg.eigen.method = method;
    if (layers > 0) cfg.eigen.layers = layers;
    qdvr::run_eigen(cfg, common.out, common.seed, parse_shots(common));
  });

  CLI::App* exact = app.add_subcommand("evolve-exact", "grid-exact reference dynamics");
  add_common(exact, &common, false);
  exact->add_option("--step", step_fs, "time step, fs");
  exact->add_option("--duration", duration_fs, "total time, fs (0 = full pulse)");
  exact->add_option("--stride", stride, "output every n-th step");
  exact->add_option("--states", states, "population projection states");
  exact->callback([&] {
    qdvr::RunConfig cfg = load(common);
    if (step_fs > 0) cfg.exact.step_fs = step_fs;
    if (duration_fs > 0) cfg.exact.duration_fs = duration_fs;
    if (stride > 0) cfg.exact.output_stride = stride;
    if (states > 0) cfg.exact.population_states = states;
    qdvr::run_evolve_exact(cfg, common.out);
  });

  CLI::App* sub = app.add_subcommand("evolve-subspace",
                                     "driven dynamics in an eigenstate subspace");
  add_common(sub, &common, true);
  sub->add_option("--step", step_fs, "output step, fs");
  sub->add_option("--duration", duration_fs, "total time, fs (0 = full pulse)");
  sub->add_option("--states", states, "subspace size");
  sub->add_option("--eigen", eigen_path, "eigenset.json from a previous eigen run");
  sub->add_flag("--phase-kick", phase_kick,
                "project the coupling via phase-kick overlaps");
  sub->callback([&] {
    qdvr::RunConfig cfg = load(common);
    if (step_fs > 0) cfg.subspace.step_fs = step_fs;
    if (duration_fs > 0) cfg.subspace.duration_fs = duration_fs;
    if (states > 0) cfg.subspace.states = states;
    if (phase_kick) cfg.subspace.phase_kick = true;
    qdvr::run_evolve_subspace(cfg, common.out, common.seed, parse_shots(common),
                              eigen_path);
  });

  CLI::App* vqa = app.add_subcommand("evolve-vqa",
                                     "variational real-time dynamics");
  add_common(vqa, &common, true);
  vqa->add_option("--step", step_fs, "time step, fs");
  vqa->add_option("--duration", duration_fs, "total time, fs (0 = full pulse)");
  vqa->add_option("--stride", stride, "output every n-th step");
  vqa->add_option("--layers", layers, "ansatz layers");
  vqa->add_option("--scheme", scheme, "euler or rk4");
  vqa->callback([&] {
    qdvr::RunConfig cfg = load(common);
    if (step_fs > 0) cfg.vqa.step_fs = step_fs;
    if (duration_fs > 0) cfg.vqa.duration_fs = duration_fs;
    if (stride > 0) cfg.vqa.output_stride = stride;
    if (layers > 0) cfg.vqa.layers = layers;
    if (!scheme.empty()) cfg.vqa.scheme = scheme;
    qdvr::run_evolve_vqa(cfg, common.out, common.seed, parse_shots(common));
  });

  CLI::App* spec = app.add_subcommand("spectrum", "harmonic spectrum of a dipole trace");
  add_common(spec, &common, false);
  spec->add_option("-i,--input", input_csv, "trajectory csv with time_fs and dipole")
      ->required();
  spec->callback([&] {
    qdvr::RunConfig cfg = load(common);
    qdvr::run_spectrum(cfg, input_csv, common.out);
  });

  CLI::App* res = app.add_subcommand("resources", "per-step circuit count estimate");
  add_common(res, &common, false);
  res->add_option("--method", method,
                  "real_time_vqa, imag_time_vqa_subspace or "
                  "gradient_descent_subspace")
      ->required();
  res->add_option("--layers", layers, "ansatz layers");
  res->callback([&] {
    qdvr::RunConfig cfg = load(common);
    if (layers > 0) {
      cfg.vqa.layers = layers;
      cfg.eigen.layers = layers;
    }
    qdvr::run_resources(cfg, method, common.out);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
