// End-to-end acceptance gate. Each check prints one PASS/FAIL line with its
// wall time and measured numbers; the process exits nonzero if any fails.
// The variational dynamics leg runs a 150 fs smoke window by default; set
// QDVR_ACCEPT_FULL=1 to gate the full 1500 fs pulse.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qdvr/analysis.hpp"
#include "qdvr/ansatz.hpp"
#include "qdvr/constants.hpp"
#include "qdvr/dvr.hpp"
#include "qdvr/exact.hpp"
#include "qdvr/mclachlan.hpp"
#include "qdvr/models.hpp"
#include "qdvr/pauli.hpp"
#include "qdvr/spectral.hpp"
#include "qdvr/statevector.hpp"
#include "qdvr/subspace.hpp"

using namespace qdvr;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

bool full_mode() {
  const char* v = std::getenv("QDVR_ACCEPT_FULL");
  return v && v[0] == '1';
}

// A1: the one-dimensional kinetic matrix equals its closed form,
// prefactor pi^2/3 on the diagonal and 2 (-1)^(i-j) / (i-j)^2 off it,
// with prefactor 1 / (2 m dx^2). Symmetry and translation invariance
// follow from the entrywise match.
Outcome check_kinetic() {
  double worst = 0.0;
  for (int pts : {2, 4, 8, 16}) {
    for (double dx : {1.0, 0.3}) {
      for (double mass : {1.0, 2.5}) {
        const DVRGrid grid(1, pts, {0.0}, {dx * (pts - 1)}, {mass});
        const Eigen::MatrixXd t = build_kinetic_1d(grid, 0).dense();
        const double pref = 1.0 / (2.0 * mass * dx * dx);
        for (int i = 0; i < pts; ++i) {
          for (int j = 0; j < pts; ++j) {
            const int k = i - j;
            const double want =
                k == 0 ? pref * M_PI * M_PI / 3.0
                       : pref * 2.0 * (k % 2 == 0 ? 1.0 : -1.0) / (double(k) * k);
            worst = std::max(worst, std::abs(t(i, j) - want));
          }
        }
      }
    }
  }
  return {worst <= 1e-12,
          "max entry deviation " + num(worst) +
              " from the closed form over L in {2,4,8,16}, dx in {1,0.3}, m in {1,2.5}"};
}

// A2: qubit encodings reproduce the grid operators entry for entry, and
// diagonal expansion uses only I/Z letters with at most 2^n terms.
Outcome check_encoding() {
  const ModelSystem dw = make_double_well();
  const ModelSystem he = make_helium();

  auto dev = [](const GridOperator& op) {
    return (encode_operator(op).dense() - op.dense().cast<cdouble>())
        .cwiseAbs()
        .maxCoeff();
  };
  const double h_dw = dev(dw.h0);
  const double h_he = dev(he.h0);
  const double c_dw = dev(dw.coupling);
  const double c_he = dev(he.coupling);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXd vals(8);
  for (int i = 0; i < 8; ++i) vals[i] = u(rng);
  const PauliSum dsum = expand_diagonal(vals);
  bool iz_only = true;
  for (const auto& [str, coeff] : dsum.terms()) {
    (void)coeff;
    for (char ch : str.letters())
      if (ch != 'I' && ch != 'Z') iz_only = false;
  }
  const Eigen::MatrixXcd want = vals.cast<cdouble>().asDiagonal();
  const double d_dev = (dsum.dense() - want).cwiseAbs().maxCoeff();

  const bool pass = h_dw <= 1e-10 && h_he <= 1e-10 && c_dw <= 1e-10 &&
                    c_he <= 1e-10 && iz_only && dsum.size() <= 8 && d_dev <= 1e-12;
  return {pass, "H0 deviation " + num(h_dw) + " (3 qubits) / " + num(h_he) +
                    " (6 qubits), coupling " + num(std::max(c_dw, c_he)) +
                    ", diagonal expansion " + std::to_string(dsum.size()) +
                    " I/Z terms, deviation " + num(d_dev)};
}

// A3: two eigenstates capture the driven double well; the pulse actually
// transfers population between the wells.
Outcome check_two_level_transfer() {
  const ModelSystem dw = make_double_well();
  const EigenSet eigen = dense_eigensolve(dw.h0, 2);
  const Pulse pulse = dw.pulse;
  auto field = [pulse](double t) { return pulse(t); };
  const double dt = units::fs_to_au(0.1);

  ExactOptions eo;
  eo.dt = dt;
  eo.duration = pulse.duration();
  const ExactTrajectory ex =
      propagate_exact(dw.h0.dense(), dw.coupling.dense(), dw.interaction_sign,
                      field, eigen.states[0].amplitudes(), eo);
  const auto pops = project_populations(ex, eigen);

  const SubspaceModel model = build_subspace_model(
      eigen, dw.coupling, dw.interaction_sign, dw.dipole_sign, field);
  SubspaceOptions so;
  so.dt = dt;
  so.duration = pulse.duration();
  const SubspaceTrajectory sub = propagate_subspace(model, so);

  if (sub.times.size() != ex.times.size())
    return {false, "output grids differ: " + std::to_string(sub.times.size()) +
                       " vs " + std::to_string(ex.times.size())};
  double maxdp = 0.0, maxp1 = 0.0;
  for (std::size_t k = 0; k < sub.times.size(); ++k) {
    for (int i = 0; i < 2; ++i)
      maxdp = std::max(maxdp, std::abs(sub.populations[k][i] - pops[k][i]));
    maxp1 = std::max(maxp1, pops[k][1]);
  }
  return {maxdp <= 0.02 && maxp1 >= 0.5,
          "max |dP| " + num(maxdp) + " (bound 0.02), peak P1 " + num(maxp1) +
              " (bound 0.5) across the 1500 fs pulse"};
}

// A4: variational real-time dynamics tracks the reference at a 2 as step
// and demonstrably breaks down at 0.1 fs.
Outcome check_variational_dynamics() {
  const bool full = full_mode();
  const ModelSystem dw = make_double_well();
  const PauliSum hq = encode_operator(dw.h0);
  const PauliSum cq = encode_operator(dw.coupling);
  const EigenSet eigen = dense_eigensolve(dw.h0, 2);

  AnsatzInit init;
  init.kind = AnsatzInit::Kind::SmallRandom;
  init.amplitude = 0.01;
  init.seed = 1;
  Ansatz a = build_hva(hq, 2, init);
  ImagTimeOptions gopt;
  gopt.max_iterations = 20000;
  gopt.dtau = 2.0;
  gopt.plateau_tol = 1e-12;
  const PauliOracle oracle(hq);
  run_imag_time(a, oracle, gopt);
  const double prep_fid = std::norm(inner(eigen.states[0], prepare(a)));

  const Pulse pulse = dw.pulse;
  auto field = [pulse](double t) { return pulse(t); };
  const DrivenHamiltonian driven{&hq, &cq, field, dw.interaction_sign};
  const double duration = full ? pulse.duration() : units::fs_to_au(150.0);

  RealTimeOptions fine;
  fine.dt = units::fs_to_au(0.002);
  fine.duration = duration;
  fine.output_stride = 100;  // 0.2 fs outputs
  fine.population_states = eigen.states;
  const RealTimeTrajectory tv = run_real_time(a, driven, fine);

  ExactOptions eo;
  eo.dt = units::fs_to_au(0.1);
  eo.duration = duration;
  eo.output_stride = 2;
  const ExactTrajectory ex =
      propagate_exact(dw.h0.dense(), dw.coupling.dense(), dw.interaction_sign,
                      field, eigen.states[0].amplitudes(), eo);
  const auto pex = project_populations(ex, eigen);
  if (tv.diverged) return {false, "fine leg diverged at " +
                                      num(units::au_to_fs(tv.diverged_at)) + " fs"};
  if (tv.times.size() != ex.times.size())
    return {false, "fine leg output grids differ"};
  double fine_err = 0.0;
  for (std::size_t k = 0; k < tv.times.size(); ++k)
    for (int i = 0; i < 2; ++i)
      fine_err = std::max(fine_err, std::abs(tv.populations[k][i] - pex[k][i]));

  // same prepared state, 50x coarser step, full pulse
  RealTimeOptions coarse = fine;
  coarse.dt = units::fs_to_au(0.1);
  coarse.duration = pulse.duration();
  coarse.output_stride = 2;
  const RealTimeTrajectory tc = run_real_time(a, driven, coarse);
  ExactOptions eo2 = eo;
  eo2.duration = pulse.duration();
  const ExactTrajectory ex2 =
      propagate_exact(dw.h0.dense(), dw.coupling.dense(), dw.interaction_sign,
                      field, eigen.states[0].amplitudes(), eo2);
  const auto pex2 = project_populations(ex2, eigen);
  double coarse_err = 0.0;
  const std::size_t nc = std::min(tc.times.size(), pex2.size());
  for (std::size_t k = 0; k < nc; ++k)
    for (int i = 0; i < 2; ++i)
      coarse_err = std::max(coarse_err, std::abs(tc.populations[k][i] - pex2[k][i]));
  const bool coarse_breaks = tc.diverged || coarse_err > 0.2;

  const bool pass = prep_fid >= 0.999 && fine_err <= 0.05 && coarse_breaks;
  std::string detail =
      "ground fidelity " + num(prep_fid) + ", 0.002 fs step max |dP| " +
      num(fine_err) + " (bound 0.05) over " +
      num(units::au_to_fs(duration)) + " fs" +
      (full ? "" : " (smoke window; QDVR_ACCEPT_FULL=1 gates the full pulse)") +
      ", 0.1 fs step max |dP| " + num(coarse_err) +
      (tc.diverged ? " with divergence" : "") + " (must exceed 0.2)";
  return {pass, detail};
}

// A5: six-eigenstate dynamics reproduces the exact dipole trace when both
// sides use the same midpoint-frozen propagator and step, and the harmonic
// peaks of the two spectra coincide within one frequency bin up to the
// 30th order.
Outcome check_eigenbasis_dynamics() {
  const ModelSystem he = make_helium();
  const EigenSet eigen = dense_eigensolve(he.h0, 6);
  const SubspaceModel model = build_subspace_model(
      eigen, he.coupling, he.interaction_sign, he.dipole_sign, {});
  const double imag_leak = model.coupling.imag().cwiseAbs().maxCoeff();

  const Eigen::MatrixXd h64 = he.h0.dense();
  const Eigen::MatrixXd d64 = he.coupling.dense();
  const Eigen::MatrixXd h6 = Eigen::MatrixXd(model.energies.asDiagonal());
  const Eigen::MatrixXd d6 = model.coupling.real();
  const Eigen::MatrixXcd d6c = d6.cast<cdouble>();

  const Pulse pulse = he.pulse;
  auto field = [pulse](double t) { return pulse(t); };
  const Eigen::VectorXcd g64 = eigen.states[0].amplitudes();
  Eigen::VectorXcd c0 = Eigen::VectorXcd::Zero(6);
  c0[0] = 1.0;

  auto run_pair = [&](double step_fs, std::vector<double>& t_au,
                      std::vector<double>& dip_small, std::vector<double>& dip_big) {
    ExactOptions o;
    o.dt = units::fs_to_au(step_fs);
    o.duration = pulse.duration();
    const ExactTrajectory big = propagate_exact(h64, d64, he.interaction_sign,
                                                field, g64, o);
    const ExactTrajectory small = propagate_exact(h6, d6, he.interaction_sign,
                                                  field, c0, o);
    t_au = big.times;
    dip_big = dipole_series(big, he.coupling.diagonal_values(), he.dipole_sign);
    dip_small.resize(small.states.size());
    for (std::size_t k = 0; k < small.states.size(); ++k)
      dip_small[k] =
          he.dipole_sign * std::real(small.states[k].dot(d6c * small.states[k]));
  };

  // trajectory agreement at the working step
  std::vector<double> t1, ds1, db1;
  run_pair(0.58, t1, ds1, db1);
  double diff2 = 0.0, ref2 = 0.0;
  for (std::size_t k = 0; k < db1.size(); ++k) {
    diff2 += (ds1[k] - db1[k]) * (ds1[k] - db1[k]);
    ref2 += db1[k] * db1[k];
  }
  const double rel = std::sqrt(diff2 / ref2);

  // harmonic peak positions at a step that resolves the 30th order
  std::vector<double> t2, ds2, db2;
  run_pair(0.145, t2, ds2, db2);
  const SpectrumResult ss =
      hhg_spectrum(t2, ds2, he.carrier_omega, 1, false, true);
  const SpectrumResult sb =
      hhg_spectrum(t2, db2, he.carrier_omega, 1, false, true);
  const auto ps = find_peaks(ss, 1e-10, 30.5);
  const auto pb = find_peaks(sb, 1e-10, 30.5);
  double worst_gap = 0.0;
  auto nearest_gap = [](double w, const SpectrumResult& s,
                        const std::vector<std::size_t>& peaks) {
    double best = 1e300;
    for (std::size_t idx : peaks) best = std::min(best, std::abs(s.omega[idx] - w));
    return best;
  };
  for (std::size_t idx : ps)
    worst_gap = std::max(worst_gap, nearest_gap(ss.omega[idx], sb, pb));
  for (std::size_t idx : pb)
    worst_gap = std::max(worst_gap, nearest_gap(sb.omega[idx], ss, ps));

  const bool pass = imag_leak <= 1e-10 && rel <= 0.05 && !ps.empty() &&
                    !pb.empty() && worst_gap <= ss.resolution * (1.0 + 1e-9);
  return {pass, "dipole rel L2 " + num(rel) + " (bound 0.05) at 0.58 fs, " +
                    std::to_string(ps.size()) + "/" + std::to_string(pb.size()) +
                    " peaks within " + num(worst_gap / ss.resolution) +
                    " bins at 0.145 fs"};
}

// A6: the deflated variational search lands on the lowest two eigenpairs,
// and the imaginary-time energy never rises at the working step.
Outcome check_variational_search() {
  const ModelSystem dw = make_double_well();
  const PauliSum hq = encode_operator(dw.h0);
  const EigenSet dense = dense_eigensolve(dw.h0, 2);

  VqdOptions opt;
  opt.layers = 2;
  opt.dtau = 15.0;
  opt.seed = 1;
  opt.beta = deflation_beta(dw.h0);
  const EigenSet found = vqd_find(hq, 2, opt);

  double min_fid = 1.0, max_err = 0.0;
  for (int k = 0; k < 2; ++k) {
    min_fid = std::min(min_fid, std::norm(inner(dense.states[k], found.states[k])));
    max_err = std::max(max_err, std::abs(found.energies[k] - dense.energies[k]));
  }

  AnsatzInit init;
  init.kind = AnsatzInit::Kind::SmallRandom;
  init.amplitude = 0.01;
  init.seed = 1;
  Ansatz a = build_hva(hq, 2, init);
  ImagTimeOptions io;
  io.dtau = 15.0;
  const PauliOracle oracle(hq);
  const ImagTimeResult r = run_imag_time(a, oracle, io);
  double max_rise = 0.0;
  for (std::size_t k = 1; k < r.energies.size(); ++k)
    max_rise = std::max(max_rise, r.energies[k] - r.energies[k - 1]);

  const bool pass = min_fid >= 0.99 && max_err <= 1e-4 && max_rise <= 1e-9;
  return {pass, "fidelities >= " + num(min_fid) + " (bound 0.99), energy error <= " +
                    num(max_err) + " (bound 1e-4), worst energy rise " +
                    num(max_rise) + " over " + std::to_string(r.iterations) +
                    " descent steps"};
}

// A7: the real part of the assembled force equals half the numerical
// energy gradient at random parameter draws.
Outcome check_force_gradient() {
  const ModelSystem dw = make_double_well();
  const PauliSum hq = encode_operator(dw.h0);
  AnsatzInit init;
  init.kind = AnsatzInit::Kind::Zero;
  Ansatz a = build_hva(hq, 1, init);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-M_PI, M_PI);
  const double h = 1e-5;
  double worst = 0.0;
  for (int rep = 0; rep < 50; ++rep) {
    for (double& th : a.params) th = u(rng);
    const Eigen::VectorXcd f = assemble_f(a, hq);
    for (std::size_t k = 0; k < a.num_params(); ++k) {
      Ansatz ap = a, am = a;
      ap.params[k] += h;
      am.params[k] -= h;
      const double grad =
          (expectation(prepare(ap), hq) - expectation(prepare(am), hq)) / (2.0 * h);
      worst = std::max(worst, std::abs(f[static_cast<long>(k)].real() - grad / 2.0));
    }
  }
  return {worst <= 1e-6, "max |Re f - grad/2| " + num(worst) +
                             " over 50 draws x 15 parameters (bound 1e-6)"};
}

// A8: interference-circuit readout of M and f agrees with the direct
// statevector assembly for every generator choice tried.
Outcome check_interference_readout() {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-M_PI, M_PI);
  double worst_m = 0.0, worst_f = 0.0;
  long compared = 0;

  auto compare = [&](const Ansatz& a, const PauliSum& h) {
    worst_m = std::max(
        worst_m, (assemble_M(a) - assemble_M_hadamard(a)).cwiseAbs().maxCoeff());
    worst_f = std::max(worst_f, (assemble_f(a, h) - assemble_f_hadamard(a, h))
                                    .cwiseAbs()
                                    .maxCoeff());
    ++compared;
  };
  auto make_ansatz = [&](int n, std::vector<PauliString> gens,
                         Ansatz::Reference ref) {
    Ansatz a;
    a.num_qubits = n;
    a.layers = 1;
    a.reference = ref;
    a.generators = std::move(gens);
    a.params.resize(a.generators.size());
    for (double& p : a.params) p = u(rng);
    return a;
  };
  auto all_strings = [](int n) {
    std::vector<PauliString> out;
    long count = 1;
    for (int q = 0; q < n; ++q) count *= 4;
    for (long code = 1; code < count; ++code) {
      std::string s(static_cast<std::size_t>(n), 'I');
      long c = code;
      for (int q = 0; q < n; ++q) {
        s[static_cast<std::size_t>(q)] = "IXYZ"[c & 3];
        c >>= 2;
      }
      out.push_back(PauliString::from_letters(s));
    }
    return out;
  };

  PauliSum h1(1);
  h1.add(PauliString::from_letters("X"), 0.7);
  h1.add(PauliString::from_letters("Z"), 0.3);
  h1.add(PauliString::from_letters("Y"), 0.2);
  const auto s1 = all_strings(1);
  for (auto ref : {Ansatz::Reference::Plus, Ansatz::Reference::Zero}) {
    for (const auto& g : s1) compare(make_ansatz(1, {g}, ref), h1);
    for (const auto& ga : s1)
      for (const auto& gb : s1) compare(make_ansatz(1, {ga, gb}, ref), h1);
  }

  PauliSum h2(2);
  h2.add(PauliString::from_letters("ZZ"), 0.5);
  h2.add(PauliString::from_letters("XI"), 0.3);
  h2.add(PauliString::from_letters("IY"), 0.2);
  h2.add(PauliString::from_letters("YX"), 0.1);
  const auto s2 = all_strings(2);
  for (const auto& g : s2) compare(make_ansatz(2, {g}, Ansatz::Reference::Plus), h2);
  for (const auto& ga : s2)
    for (const auto& gb : s2)
      compare(make_ansatz(2, {ga, gb}, Ansatz::Reference::Plus), h2);

  const ModelSystem dw = make_double_well();
  const PauliSum hq = encode_operator(dw.h0);
  const auto s3 = all_strings(3);
  for (const auto& g : s3) compare(make_ansatz(3, {g}, Ansatz::Reference::Plus), hq);
  std::uniform_int_distribution<std::size_t> pick(0, s3.size() - 1);
  for (int rep = 0; rep < 150; ++rep)
    compare(make_ansatz(3, {s3[pick(rng)], s3[pick(rng)]}, Ansatz::Reference::Plus),
            hq);
  AnsatzInit init;
  init.seed = 5;
  init.amplitude = 1.0;
  compare(build_hva(hq, 1, init), hq);

  const bool pass = worst_m <= 1e-10 && worst_f <= 1e-10;
  return {pass, "max deviation M " + num(worst_m) + ", f " + num(worst_f) +
                    " over " + std::to_string(compared) +
                    " ansatz configurations (bound 1e-10)"};
}

// A9: circuit-count estimates match independent integer arithmetic for
// every field and method.
Outcome check_resource_estimates() {
  bool ok = true;
  long checked = 0;
  for (long n : {1L, 5L, 30L, 77L}) {
    for (long d : {1L, 2L, 3L}) {
      for (long L : {2L, 4L, 8L, 16L}) {
        const long m = n * (n + 1) / 2;
        const long fk = d * L * L * n;
        long fp = n;
        for (long i = 0; i < d; ++i) fp *= L;
        const long e = d * L * L + 1;
        const long g = 2 * n;

        const auto rt = estimate_circuits(n, d, L, EstimateMethod::RealTimeVqa);
        ok = ok && rt.n_theta == n && rt.dims == d && rt.grid_points == L &&
             rt.m_circuits == m && rt.f_kinetic_circuits == fk &&
             rt.f_potential_circuits == fp && rt.total_per_step == m + fk + fp;
        const auto it =
            estimate_circuits(n, d, L, EstimateMethod::ImagTimeVqaSubspace);
        ok = ok && it.m_circuits == m && it.energy_circuits_per_eval == e &&
             it.gradient_evaluations == g && it.total_per_step == m + e * g;
        const auto gd =
            estimate_circuits(n, d, L, EstimateMethod::GradientDescentSubspace);
        ok = ok && gd.energy_circuits_per_eval == e && gd.gradient_evaluations == g &&
             gd.total_per_step == e * g;
        ++checked;
      }
    }
  }
  return {ok, std::to_string(checked) +
                  " parameter sets match the closed-form counts for all three methods"};
}

// A10: structural invariants. The reference propagator preserves the norm
// over both full pulses, field-free eigenbasis populations stay frozen,
// and both pulse shapes are continuous at their breakpoints and exactly
// zero outside their support.
Outcome check_invariants() {
  const ModelSystem dw = make_double_well();
  const ModelSystem he = make_helium();

  auto norm_drift = [](const ModelSystem& m, double step_fs, int stride) {
    const Pulse pulse = m.pulse;
    ExactOptions o;
    o.dt = units::fs_to_au(step_fs);
    o.duration = pulse.duration();
    o.output_stride = stride;
    const EigenSet eigen = dense_eigensolve(m.h0, 1);
    const ExactTrajectory traj = propagate_exact(
        m.h0.dense(), m.coupling.dense(), m.interaction_sign,
        [pulse](double t) { return pulse(t); }, eigen.states[0].amplitudes(), o);
    double worst = 0.0;
    for (const auto& s : traj.states) worst = std::max(worst, std::abs(s.norm() - 1.0));
    return worst;
  };
  const double drift_dw = norm_drift(dw, 0.1, 100);
  const double drift_he = norm_drift(he, 0.29, 10);

  const EigenSet eigen = dense_eigensolve(dw.h0, 2);
  const SubspaceModel model =
      build_subspace_model(eigen, dw.coupling, dw.interaction_sign, dw.dipole_sign,
                           [](double) { return 0.0; });
  SubspaceOptions so;
  so.dt = units::fs_to_au(0.5);
  so.duration = units::fs_to_au(100.0);
  Eigen::VectorXcd c0(2);
  c0 << cdouble(0.6, 0.0), cdouble(0.0, 0.8);
  const SubspaceTrajectory sub = propagate_subspace(model, so, &c0);
  double pop_drift = 0.0;
  for (const auto& p : sub.populations) {
    pop_drift = std::max(pop_drift, std::abs(p[0] - 0.36));
    pop_drift = std::max(pop_drift, std::abs(p[1] - 0.64));
  }

  const double delta = 1e-9;
  double worst_jump = 0.0;
  auto scan = [&](const Pulse& p, const std::vector<double>& breaks) {
    for (double b : breaks)
      worst_jump = std::max(worst_jump, std::abs(p(b - delta) - p(b + delta)));
  };
  scan(dw.pulse, {0.0, units::fs_to_au(150.0), units::fs_to_au(1250.0),
                  units::fs_to_au(1500.0)});
  const double period = 2.0 * M_PI / he.pulse.omega();
  scan(he.pulse, {0.0, 2.0 * period, 10.0 * period, 12.0 * period});
  const bool zero_outside =
      dw.pulse(-1.0) == 0.0 && dw.pulse(dw.pulse.duration() + 1.0) == 0.0 &&
      he.pulse(-1.0) == 0.0 && he.pulse(he.pulse.duration() + 1.0) == 0.0;

  const bool pass = drift_dw <= 1e-9 && drift_he <= 1e-9 && pop_drift <= 1e-10 &&
                    worst_jump <= 1e-12 && zero_outside;
  return {pass, "norm drift " + num(drift_dw) + " / " + num(drift_he) +
                    " (bound 1e-9), field-free population drift " + num(pop_drift) +
                    " (bound 1e-10), worst pulse jump " + num(worst_jump) +
                    " (bound 1e-12)"};
}

}  // namespace

int main() {
  struct Gate {
    const char* label;
    const char* name;
    Outcome (*fn)();
  };
  const std::vector<Gate> gates = {
      {"A1", "kinetic closed form", check_kinetic},
      {"A2", "qubit encoding round trip", check_encoding},
      {"A3", "two-level capture of the driven well", check_two_level_transfer},
      {"A4", "variational real-time dynamics", check_variational_dynamics},
      {"A5", "eigenbasis dynamics and harmonic spectrum", check_eigenbasis_dynamics},
      {"A6", "variational eigenstate search", check_variational_search},
      {"A7", "force matches the energy gradient", check_force_gradient},
      {"A8", "interference-circuit readout", check_interference_readout},
      {"A9", "circuit-count estimates", check_resource_estimates},
      {"A10", "norm, stationarity, pulse continuity", check_invariants},
  };

  bool all = true;
  for (const Gate& g : gates) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = g.fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%-3s %s (%.1f s) %s: %s\n", g.label, o.pass ? "PASS" : "FAIL", secs,
                g.name, o.detail.c_str());
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
