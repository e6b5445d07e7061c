#include "qdvr/workflow.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

#include "qdvr/analysis.hpp"
#include "qdvr/exact.hpp"
#include "qdvr/mclachlan.hpp"
#include "qdvr/subspace.hpp"
#include "qdvr/trajectory.hpp"

namespace qdvr {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Removes everything tracked unless the run commits.
class OutputGuard {
 public:
  explicit OutputGuard(const std::string& outdir) : dir_(outdir) {
    fs::create_directories(dir_);
  }
  std::string track(const std::string& name) {
    paths_.push_back((dir_ / name).string());
    return paths_.back();
  }
  void commit() { committed_ = true; }
  ~OutputGuard() {
    if (committed_) return;
    for (const auto& p : paths_) {
      std::error_code ec;
      fs::remove(p, ec);
    }
  }

 private:
  fs::path dir_;
  std::vector<std::string> paths_;
  bool committed_ = false;
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_manifest(OutputGuard& guard, const std::string& command,
                    const RunConfig& cfg, const ShotConfig& shots,
                    std::vector<std::string> outputs, json extra = json::object(),
                    const uint64_t* seed = nullptr) {
  json m;
  m["command"] = command;
  m["version"] = kVersion;
  m["model"] = cfg.model_name;
  if (seed) m["seed"] = *seed;
  if (shots.is_exact())
    m["shots"] = "exact";
  else
    m["shots"] = shots.shots;
  m["outputs"] = outputs;
  m["config"] = json::parse(cfg.raw);
  if (!extra.empty()) m["details"] = extra;
  write_text(guard.track("manifest.json"), m.dump(2) + "\n");
}

EigenSet compute_eigenset(const RunConfig& cfg, int n_states, uint64_t seed,
                          const ShotConfig& shots, json* details) {
  if (cfg.eigen.method == "dense") {
    if (details) (*details)["eigen_method"] = "dense";
    return dense_eigensolve(cfg.model.h0, n_states);
  }
  PauliSum h = encode_operator(cfg.model.h0);
  VqdOptions opt;
  opt.layers = cfg.eigen.layers;
  opt.max_iterations = cfg.eigen.max_iterations;
  opt.dtau = cfg.eigen.dtau;
  opt.ridge = cfg.eigen.ridge;
  opt.restarts = cfg.eigen.restarts;
  opt.seed = seed;
  opt.init_amplitude = cfg.eigen.init_amplitude;
  opt.beta = cfg.eigen.beta > 0.0 ? cfg.eigen.beta : deflation_beta(cfg.model.h0);
  if (details) {
    (*details)["eigen_method"] = "vqd";
    (*details)["beta"] = opt.beta;
  }
  return vqd_find(h, n_states, opt, shots);
}

Table subspace_table(const SubspaceTrajectory& traj, int n_states) {
  Table t;
  t.columns.push_back("time_fs");
  for (int i = 0; i < n_states; ++i) t.columns.push_back("P_" + std::to_string(i));
  for (int i = 0; i < n_states; ++i) {
    t.columns.push_back("re_c_" + std::to_string(i));
    t.columns.push_back("im_c_" + std::to_string(i));
  }
  t.columns.push_back("dipole");
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    std::vector<double> row;
    row.push_back(units::au_to_fs(traj.times[k]));
    for (int i = 0; i < n_states; ++i) row.push_back(traj.populations[k][i]);
    for (int i = 0; i < n_states; ++i) {
      row.push_back(traj.coeffs[k][i].real());
      row.push_back(traj.coeffs[k][i].imag());
    }
    row.push_back(traj.dipole[k]);
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace

EigenSet run_eigen(const RunConfig& cfg, const std::string& outdir, uint64_t seed,
                   const ShotConfig& shots) {
  OutputGuard guard(outdir);
  json details;
  EigenSet set = compute_eigenset(cfg, cfg.eigen.states, seed, shots, &details);
  details["energies"] = set.energies;
  write_text(guard.track("eigenset.json"), set.to_json());
  write_manifest(guard, "eigen", cfg, shots, {"eigenset.json"}, details, &seed);
  guard.commit();
  return set;
}

void run_evolve_exact(const RunConfig& cfg, const std::string& outdir) {
  OutputGuard guard(outdir);
  const Eigen::MatrixXd h0 = cfg.model.h0.dense();
  const Eigen::MatrixXd coupling = cfg.model.coupling.dense();
  EigenSet eigen = dense_eigensolve(cfg.model.h0, cfg.exact.population_states);

  ExactOptions opt;
  opt.dt = units::fs_to_au(cfg.exact.step_fs);
  opt.duration = cfg.duration_au(cfg.exact.duration_fs);
  opt.output_stride = cfg.exact.output_stride;
  const Pulse pulse = cfg.model.pulse;
  ExactTrajectory traj =
      propagate_exact(h0, coupling, cfg.model.interaction_sign,
                      [pulse](double t) { return pulse(t); },
                      eigen.states[0].amplitudes(), opt);

  const auto pops = project_populations(traj, eigen);
  const auto dip = dipole_series(traj, cfg.model.coupling.diagonal_values(),
                                 cfg.model.dipole_sign);

  Table t;
  const int n = eigen.count();
  t.columns.push_back("time_fs");
  for (int i = 0; i < n; ++i) t.columns.push_back("P_" + std::to_string(i));
  for (int i = 0; i < n; ++i) {
    t.columns.push_back("re_c_" + std::to_string(i));
    t.columns.push_back("im_c_" + std::to_string(i));
  }
  t.columns.push_back("dipole");
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    std::vector<double> row;
    row.push_back(units::au_to_fs(traj.times[k]));
    for (int i = 0; i < n; ++i) row.push_back(pops[k][i]);
    for (int i = 0; i < n; ++i) {
      const cdouble c = eigen.states[i].amplitudes().dot(traj.states[k]);
      row.push_back(c.real());
      row.push_back(c.imag());
    }
    row.push_back(dip[k]);
    t.rows.push_back(std::move(row));
  }
  write_csv(guard.track("trajectory_exact.csv"), t);
  write_manifest(guard, "evolve-exact", cfg, ShotConfig::exact(),
                 {"trajectory_exact.csv"});
  guard.commit();
}

void run_evolve_subspace(const RunConfig& cfg, const std::string& outdir,
                         uint64_t seed, const ShotConfig& shots,
                         const std::string& eigen_path) {
  OutputGuard guard(outdir);
  json details;
  EigenSet eigen =
      eigen_path.empty()
          ? compute_eigenset(cfg, cfg.subspace.states, seed, shots, &details)
          : EigenSet::from_json(read_text(eigen_path));
  if (!eigen_path.empty()) details["eigen_source"] = eigen_path;
  details["energies"] = eigen.energies;

  const Pulse pulse = cfg.model.pulse;
  SubspaceModel model = build_subspace_model(
      eigen, cfg.model.coupling, cfg.model.interaction_sign, cfg.model.dipole_sign,
      [pulse](double t) { return pulse(t); }, cfg.subspace.phase_kick);

  SubspaceOptions opt;
  opt.dt = units::fs_to_au(cfg.subspace.step_fs);
  opt.duration = cfg.duration_au(cfg.subspace.duration_fs);
  SubspaceTrajectory traj = propagate_subspace(model, opt);

  write_csv(guard.track("trajectory_subspace.csv"),
            subspace_table(traj, eigen.count()));
  write_manifest(guard, "evolve-subspace", cfg, shots, {"trajectory_subspace.csv"},
                 details, &seed);
  guard.commit();
}

void run_evolve_vqa(const RunConfig& cfg, const std::string& outdir, uint64_t seed,
                    const ShotConfig& shots) {
  OutputGuard guard(outdir);
  json details;

  const PauliSum h0 = encode_operator(cfg.model.h0);
  const PauliSum coupling = encode_operator(cfg.model.coupling);

  AnsatzInit init;
  init.kind = AnsatzInit::Kind::SmallRandom;
  init.seed = seed;
  Ansatz a = build_hva(h0, cfg.vqa.layers, init);
  details["parameters"] = a.num_params();

  ImagTimeOptions ground;
  ground.max_iterations = cfg.vqa.ground_iterations;
  ground.dtau = cfg.vqa.dtau;
  ground.ridge = cfg.vqa.ridge;
  // prep quality gates the dynamics, so plateau far below the step budget
  ground.plateau_tol = 1e-12;
  PauliOracle oracle(h0);
  ImagTimeResult prep = run_imag_time(a, oracle, ground, shots);
  details["ground_energy"] = prep.energies.back();
  details["ground_converged"] = prep.converged;
  details["ground_iterations"] = prep.iterations;

  EigenSet eigen = dense_eigensolve(cfg.model.h0, cfg.vqa.population_states);

  const Pulse pulse = cfg.model.pulse;
  DrivenHamiltonian driven{&h0, &coupling, [pulse](double t) { return pulse(t); },
                           cfg.model.interaction_sign};

  RealTimeOptions opt;
  opt.dt = units::fs_to_au(cfg.vqa.step_fs);
  opt.duration = cfg.duration_au(cfg.vqa.duration_fs);
  opt.scheme = cfg.vqa.scheme == "rk4" ? Scheme::Rk4 : Scheme::Euler;
  opt.ridge = cfg.vqa.ridge;
  opt.output_stride = cfg.vqa.output_stride;
  opt.population_states = eigen.states;
  RealTimeTrajectory traj = run_real_time(a, driven, opt, shots);
  details["diverged"] = traj.diverged;
  if (traj.diverged) details["diverged_at_fs"] = units::au_to_fs(traj.diverged_at);

  Table t;
  t.columns.push_back("time_fs");
  for (std::size_t k = 0; k < a.num_params(); ++k)
    t.columns.push_back("theta_" + std::to_string(k));
  t.columns.push_back("energy");
  for (int i = 0; i < eigen.count(); ++i)
    t.columns.push_back("P_" + std::to_string(i));
  t.columns.push_back("dipole");
  Ansatz scratch = a;
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    std::vector<double> row;
    row.push_back(units::au_to_fs(traj.times[k]));
    for (double th : traj.thetas[k]) row.push_back(th);
    row.push_back(traj.energies[k]);
    for (double p : traj.populations[k]) row.push_back(p);
    scratch.params = traj.thetas[k];
    row.push_back(cfg.model.dipole_sign *
                  expectation(prepare(scratch), coupling));
    t.rows.push_back(std::move(row));
  }
  write_csv(guard.track("trajectory_vqa.csv"), t);
  write_manifest(guard, "evolve-vqa", cfg, shots, {"trajectory_vqa.csv"}, details,
                 &seed);
  guard.commit();
}

void run_spectrum(const RunConfig& cfg, const std::string& dipole_csv,
                  const std::string& outdir) {
  OutputGuard guard(outdir);
  Table in = read_csv(dipole_csv);
  std::vector<double> times_au = in.column("time_fs");
  for (double& t : times_au) t = units::fs_to_au(t);
  const std::vector<double> dipole = in.column("dipole");

  SpectrumResult s =
      hhg_spectrum(times_au, dipole, cfg.model.carrier_omega, cfg.spectrum.zero_pad,
                   cfg.spectrum.hann, cfg.spectrum.normalize);

  Table t;
  t.columns = {"omega_au", "harmonic_order", "intensity"};
  for (std::size_t k = 0; k < s.omega.size(); ++k)
    t.rows.push_back({s.omega[k], s.harmonic_order[k], s.intensity[k]});
  write_csv(guard.track("spectrum.csv"), t);

  json details;
  details["input"] = dipole_csv;
  details["resolution_au"] = s.resolution;
  details["carrier_omega_au"] = cfg.model.carrier_omega;
  write_manifest(guard, "spectrum", cfg, ShotConfig::exact(), {"spectrum.csv"},
                 details);
  guard.commit();
}

void run_resources(const RunConfig& cfg, const std::string& method,
                   const std::string& outdir) {
  EstimateMethod m;
  int layers = cfg.eigen.layers;
  if (method == "real_time_vqa") {
    m = EstimateMethod::RealTimeVqa;
    layers = cfg.vqa.layers;
  } else if (method == "imag_time_vqa_subspace") {
    m = EstimateMethod::ImagTimeVqaSubspace;
  } else if (method == "gradient_descent_subspace") {
    m = EstimateMethod::GradientDescentSubspace;
  } else {
    throw std::runtime_error(
        "unknown method '" + method +
        "': expected real_time_vqa, imag_time_vqa_subspace or "
        "gradient_descent_subspace");
  }

  OutputGuard guard(outdir);
  const PauliSum h0 = encode_operator(cfg.model.h0);
  Ansatz a = build_hva(h0, layers, AnsatzInit{AnsatzInit::Kind::Zero, 0.0, 0});
  ResourceEstimate est =
      estimate_circuits(static_cast<long>(a.num_params()), cfg.model.grid.dims(),
                        cfg.model.grid.points_per_dim(), m);
  write_text(guard.track("resources.json"), est.to_json());
  json details;
  details["method"] = method;
  details["n_theta"] = est.n_theta;
  write_manifest(guard, "resources", cfg, ShotConfig::exact(), {"resources.json"},
                 details);
  guard.commit();
}

}  // namespace qdvr
