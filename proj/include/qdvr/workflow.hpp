#pragma once

#include <cstdint>
#include <string>

#include "qdvr/config.hpp"
#include "qdvr/spectral.hpp"
#include "qdvr/statevector.hpp"

namespace qdvr {

// Runners behind the command-line subcommands. Each writes its data files
// plus a manifest.json (command, version, seed, shot budget, config echo,
// output list; nothing time-dependent, so reruns are byte-identical) into
// outdir, creating it if needed. On failure partially written files are
// removed before the error propagates.

// eigenset.json: lowest eigen.states pairs, dense or vqd per the config.
EigenSet run_eigen(const RunConfig& cfg, const std::string& outdir, uint64_t seed,
                   const ShotConfig& shots);

// trajectory_exact.csv: time_fs, P_i..., re_c_i, im_c_i..., dipole.
void run_evolve_exact(const RunConfig& cfg, const std::string& outdir);

// trajectory_subspace.csv, same schema. eigen_path loads a saved
// eigenset.json; empty recomputes per the config.
void run_evolve_subspace(const RunConfig& cfg, const std::string& outdir,
                         uint64_t seed, const ShotConfig& shots,
                         const std::string& eigen_path = "");

// trajectory_vqa.csv: time_fs, theta_k..., energy, P_i..., dipole.
void run_evolve_vqa(const RunConfig& cfg, const std::string& outdir, uint64_t seed,
                    const ShotConfig& shots);

// spectrum.csv: omega_au, harmonic_order, intensity, from the time_fs and
// dipole columns of a trajectory file.
void run_spectrum(const RunConfig& cfg, const std::string& dipole_csv,
                  const std::string& outdir);

// resources.json for one of: real_time_vqa, imag_time_vqa_subspace,
// gradient_descent_subspace.
void run_resources(const RunConfig& cfg, const std::string& method,
                   const std::string& outdir);

}  // namespace qdvr
