#include "qdvr/config.hpp"

#include <fstream>
#include <initializer_list>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

namespace qdvr {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw std::runtime_error("config error at '" + path + "': " + what);
}

std::string join(const std::string& base, const std::string& key) {
  return base.empty() ? key : base + "." + key;
}

void check_keys(const json& j, const std::string& path,
                std::initializer_list<const char*> allowed) {
  if (!j.is_object()) fail(path, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : allowed) {
      if (it.key() == k) {
        known = true;
        break;
      }
    }
    if (!known) fail(join(path, it.key()), "unknown field");
  }
}

double get_number(const json& j, const std::string& path, const char* key,
                  double fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number()) fail(join(path, key), "expected a number");
  return v.get<double>();
}

int get_int(const json& j, const std::string& path, const char* key,
            int fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number_integer()) fail(join(path, key), "expected an integer");
  return v.get<int>();
}

bool get_bool(const json& j, const std::string& path, const char* key,
              bool fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_boolean()) fail(join(path, key), "expected a boolean");
  return v.get<bool>();
}

std::string get_string(const json& j, const std::string& path, const char* key,
                       const std::string& fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_string()) fail(join(path, key), "expected a string");
  return v.get<std::string>();
}

ModelSystem parse_double_well(const json& j) {
  DoubleWellParams p;
  const std::string path = "double_well";
  check_keys(j, path,
             {"barrier", "asymmetry", "x0", "mass", "points", "xmin_angstrom",
              "xmax_angstrom", "eps0", "s1_fs", "s2_fs", "tf_fs"});
  p.barrier = get_number(j, path, "barrier", p.barrier);
  p.asymmetry = get_number(j, path, "asymmetry", p.asymmetry);
  p.x0 = get_number(j, path, "x0", p.x0);
  p.mass = get_number(j, path, "mass", p.mass);
  p.points = get_int(j, path, "points", p.points);
  p.xmin_angstrom = get_number(j, path, "xmin_angstrom", p.xmin_angstrom);
  p.xmax_angstrom = get_number(j, path, "xmax_angstrom", p.xmax_angstrom);
  p.eps0 = get_number(j, path, "eps0", p.eps0);
  p.s1_fs = get_number(j, path, "s1_fs", p.s1_fs);
  p.s2_fs = get_number(j, path, "s2_fs", p.s2_fs);
  p.tf_fs = get_number(j, path, "tf_fs", p.tf_fs);
  return make_double_well(p);
}

ModelSystem parse_helium(const json& j) {
  HeliumParams p;
  const std::string path = "helium";
  check_keys(j, path,
             {"softening", "points", "xmin_angstrom", "xmax_angstrom",
              "frequency_ev", "intensity_w_cm2"});
  p.softening = get_number(j, path, "softening", p.softening);
  p.points = get_int(j, path, "points", p.points);
  p.xmin_angstrom = get_number(j, path, "xmin_angstrom", p.xmin_angstrom);
  p.xmax_angstrom = get_number(j, path, "xmax_angstrom", p.xmax_angstrom);
  p.frequency_ev = get_number(j, path, "frequency_ev", p.frequency_ev);
  p.intensity_w_cm2 = get_number(j, path, "intensity_w_cm2", p.intensity_w_cm2);
  return make_helium(p);
}

Pulse parse_pulse(const json& j, const std::string& path, double* omega_out) {
  check_keys(j, path,
             {"shape", "eps0", "intensity_w_cm2", "s1_fs", "s2_fs", "tf_fs",
              "frequency_ev"});
  const std::string shape = get_string(j, path, "shape", "off");
  double eps0 = get_number(j, path, "eps0", 0.0);
  if (j.contains("intensity_w_cm2")) {
    if (j.contains("eps0")) fail(path, "give eps0 or intensity_w_cm2, not both");
    eps0 = field_from_intensity(get_number(j, path, "intensity_w_cm2", 0.0));
  }
  *omega_out = 0.0;
  if (shape == "off") return Pulse::off();
  if (shape == "smooth_rect") {
    const double s1 = units::fs_to_au(get_number(j, path, "s1_fs", 150.0));
    const double s2 = units::fs_to_au(get_number(j, path, "s2_fs", 1250.0));
    const double tf = units::fs_to_au(get_number(j, path, "tf_fs", 1500.0));
    return Pulse::smooth_rect(eps0, s1, s2, tf);
  }
  if (shape == "trapezoid_carrier") {
    if (!j.contains("frequency_ev")) fail(join(path, "frequency_ev"), "required");
    const double omega =
        units::ev_to_hartree(get_number(j, path, "frequency_ev", 0.0));
    *omega_out = omega;
    return Pulse::trapezoid_carrier(eps0, omega);
  }
  fail(join(path, "shape"), "expected off, smooth_rect or trapezoid_carrier");
}

ModelSystem parse_custom(const json& j) {
  const std::string path = "custom";
  check_keys(j, path,
             {"dims", "points", "xmin_bohr", "xmax_bohr", "mass",
              "potential_file", "pulse", "interaction_sign", "dipole_sign"});
  const int dims = get_int(j, path, "dims", 1);
  const int points = get_int(j, path, "points", 8);
  if (!j.contains("potential_file")) fail(join(path, "potential_file"), "required");
  const std::string pot = get_string(j, path, "potential_file", "");
  const double xmin = get_number(j, path, "xmin_bohr", -1.0);
  const double xmax = get_number(j, path, "xmax_bohr", 1.0);
  const double mass = get_number(j, path, "mass", 1.0);

  DVRGrid grid(dims, points, std::vector<double>(dims, xmin),
               std::vector<double>(dims, xmax), std::vector<double>(dims, mass));
  GridOperator h0 = load_potential_file(grid, pot);
  for (int d = 0; d < dims; ++d) h0 += build_kinetic_1d(grid, d);
  GridOperator coupling = position_sum_operator(grid);
  Pulse pulse = Pulse::off();
  double omega = 0.0;
  if (j.contains("pulse"))
    pulse = parse_pulse(j.at("pulse"), join(path, "pulse"), &omega);
  return ModelSystem{"custom",
                     grid,
                     std::move(h0),
                     std::move(coupling),
                     get_number(j, path, "interaction_sign", 1.0),
                     get_number(j, path, "dipole_sign", 1.0),
                     pulse,
                     omega};
}

}  // namespace

double RunConfig::duration_au(double duration_fs) const {
  if (duration_fs > 0.0) return units::fs_to_au(duration_fs);
  const double pulse_len = model.pulse.duration();
  if (pulse_len <= 0.0)
    throw std::runtime_error(
        "duration_fs must be positive when the pulse has no natural length");
  return pulse_len;
}

RunConfig config_from_json(const nlohmann::json& j) {
  check_keys(j, "",
             {"model", "double_well", "helium", "custom", "eigen", "subspace",
              "exact", "vqa", "spectrum"});
  const std::string model_name = get_string(j, "", "model", "double_well");
  ModelSystem model = [&]() -> ModelSystem {
    if (model_name == "double_well")
      return parse_double_well(j.value("double_well", json::object()));
    if (model_name == "helium")
      return parse_helium(j.value("helium", json::object()));
    if (model_name == "custom") {
      if (!j.contains("custom")) fail("custom", "required for model=custom");
      return parse_custom(j.at("custom"));
    }
    fail("model", "expected double_well, helium or custom");
  }();
  RunConfig cfg{.model_name = model_name, .model = std::move(model)};

  {
    const json s = j.value("eigen", json::object());
    const std::string path = "eigen";
    check_keys(s, path,
               {"method", "states", "layers", "max_iterations", "dtau", "ridge",
                "restarts", "init_amplitude", "beta"});
    cfg.eigen.method = get_string(s, path, "method", cfg.eigen.method);
    if (cfg.eigen.method != "dense" && cfg.eigen.method != "vqd")
      fail("eigen.method", "expected dense or vqd");
    cfg.eigen.states = get_int(s, path, "states", cfg.eigen.states);
    cfg.eigen.layers = get_int(s, path, "layers", cfg.eigen.layers);
    cfg.eigen.max_iterations =
        get_int(s, path, "max_iterations", cfg.eigen.max_iterations);
    cfg.eigen.dtau = get_number(s, path, "dtau", cfg.eigen.dtau);
    cfg.eigen.ridge = get_number(s, path, "ridge", cfg.eigen.ridge);
    cfg.eigen.restarts = get_int(s, path, "restarts", cfg.eigen.restarts);
    cfg.eigen.init_amplitude =
        get_number(s, path, "init_amplitude", cfg.eigen.init_amplitude);
    cfg.eigen.beta = get_number(s, path, "beta", cfg.eigen.beta);
  }
  {
    const json s = j.value("subspace", json::object());
    const std::string path = "subspace";
    check_keys(s, path, {"states", "step_fs", "duration_fs", "phase_kick"});
    cfg.subspace.states = get_int(s, path, "states", cfg.subspace.states);
    cfg.subspace.step_fs = get_number(s, path, "step_fs", cfg.subspace.step_fs);
    cfg.subspace.duration_fs =
        get_number(s, path, "duration_fs", cfg.subspace.duration_fs);
    cfg.subspace.phase_kick =
        get_bool(s, path, "phase_kick", cfg.subspace.phase_kick);
  }
  {
    const json s = j.value("exact", json::object());
    const std::string path = "exact";
    check_keys(s, path,
               {"step_fs", "duration_fs", "output_stride", "population_states"});
    cfg.exact.step_fs = get_number(s, path, "step_fs", cfg.exact.step_fs);
    cfg.exact.duration_fs =
        get_number(s, path, "duration_fs", cfg.exact.duration_fs);
    cfg.exact.output_stride =
        get_int(s, path, "output_stride", cfg.exact.output_stride);
    cfg.exact.population_states =
        get_int(s, path, "population_states", cfg.exact.population_states);
  }
  {
    const json s = j.value("vqa", json::object());
    const std::string path = "vqa";
    check_keys(s, path,
               {"layers", "step_fs", "duration_fs", "scheme", "output_stride",
                "ground_iterations", "dtau", "ridge", "population_states"});
    cfg.vqa.layers = get_int(s, path, "layers", cfg.vqa.layers);
    cfg.vqa.step_fs = get_number(s, path, "step_fs", cfg.vqa.step_fs);
    cfg.vqa.duration_fs = get_number(s, path, "duration_fs", cfg.vqa.duration_fs);
    cfg.vqa.scheme = get_string(s, path, "scheme", cfg.vqa.scheme);
    if (cfg.vqa.scheme != "euler" && cfg.vqa.scheme != "rk4")
      fail("vqa.scheme", "expected euler or rk4");
    cfg.vqa.output_stride =
        get_int(s, path, "output_stride", cfg.vqa.output_stride);
    cfg.vqa.ground_iterations =
        get_int(s, path, "ground_iterations", cfg.vqa.ground_iterations);
    cfg.vqa.dtau = get_number(s, path, "dtau", cfg.vqa.dtau);
    cfg.vqa.ridge = get_number(s, path, "ridge", cfg.vqa.ridge);
    cfg.vqa.population_states =
        get_int(s, path, "population_states", cfg.vqa.population_states);
  }
  {
    const json s = j.value("spectrum", json::object());
    const std::string path = "spectrum";
    check_keys(s, path, {"zero_pad", "hann", "normalize"});
    cfg.spectrum.zero_pad = get_int(s, path, "zero_pad", cfg.spectrum.zero_pad);
    cfg.spectrum.hann = get_bool(s, path, "hann", cfg.spectrum.hann);
    cfg.spectrum.normalize =
        get_bool(s, path, "normalize", cfg.spectrum.normalize);
  }

  cfg.raw = j.dump(2);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::runtime_error("config parse error in " + path + ": " + e.what());
  }
  return config_from_json(j);
}

RunConfig default_config(const std::string& model_name) {
  json j;
  j["model"] = model_name;
  return config_from_json(j);
}

}  // namespace qdvr
