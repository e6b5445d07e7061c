#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "qdvr/models.hpp"

namespace qdvr {

struct EigenConfig {
  std::string method = "dense";  // dense | vqd
  int states = 2;
  int layers = 2;
  int max_iterations = 1000;
  double dtau = 15.0;
  double ridge = 1e-6;
  int restarts = 3;
  double init_amplitude = 0.01;
  double beta = 0.0;  // 0 picks the spectral-span heuristic
};

struct SubspaceConfig {
  int states = 2;
  double step_fs = 0.58;
  double duration_fs = 0.0;  // 0 means full pulse
  bool phase_kick = false;
};

struct ExactConfig {
  double step_fs = 0.1;
  double duration_fs = 0.0;
  int output_stride = 1;
  int population_states = 2;
};

struct VqaConfig {
  int layers = 2;
  double step_fs = 0.002;
  double duration_fs = 0.0;
  std::string scheme = "euler";  // euler | rk4
  int output_stride = 100;
  int ground_iterations = 20000;
  double dtau = 2.0;
  double ridge = 1e-6;
  int population_states = 2;
};

struct SpectrumConfig {
  int zero_pad = 4;
  bool hann = false;
  bool normalize = true;
};

// Everything a run needs: the physical model plus per-command settings.
struct RunConfig {
  std::string model_name;
  ModelSystem model;
  EigenConfig eigen;
  SubspaceConfig subspace;
  ExactConfig exact;
  VqaConfig vqa;
  SpectrumConfig spectrum;
  std::string raw;  // canonical echo of the parsed json, for manifests

  double duration_au(double duration_fs) const;  // 0 resolves to pulse length
};

RunConfig config_from_json(const nlohmann::json& j);
RunConfig load_config(const std::string& path);
RunConfig default_config(const std::string& model_name);

}  // namespace qdvr
