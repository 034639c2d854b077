// Acceptance suite: one PASS/FAIL line per criterion, INFO lines carry the measured values.
// Exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "duscar/analysis.hpp"
#include "duscar/circuit.hpp"
#include "duscar/dugate.hpp"
#include "duscar/embedding.hpp"
#include "duscar/ergodicity.hpp"
#include "helpers.hpp"

using namespace duscar;

namespace {

constexpr int kD = 3;
constexpr std::uint64_t kSeed = 1;
constexpr double kPi = std::numbers::pi;

int failures = 0;

void info(const std::string& msg) { std::printf("  INFO %s\n", msg.c_str()); }

void verdict(const std::string& name, bool ok) {
  std::printf("%s %s\n", ok ? "PASS" : "FAIL", name.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

double phase_distance(double a, double b) { return std::abs(eigenphase(std::polar(1.0, a - b))); }

struct Model {
  ScarModel model;
  BrickworkCircuit circuit;
  Subspace target;
};

Model build(int n_sites, const std::string& spec, double phi, LayerMode mode = LayerMode::DU1_DU2) {
  Model m;
  m.model = make_scar_model(n_sites, kD, spec, kSeed, phi, mode);
  m.circuit = circuit_from_model(m.model);
  m.target = target_space(common_kernel(m.model.spec, n_sites), n_sites, kD);
  return m;
}

std::vector<EigRecord> table(const Model& m) {
  EigTableOptions opt;
  opt.phi = m.model.phi;
  const auto t0 = std::chrono::steady_clock::now();
  auto t = eig_table(m.circuit, m.target, opt);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  info("eig_table " + m.model.spec_name + " N=" + std::to_string(m.model.n_sites) + ": " + num(secs) + " s");
  return t;
}

// ---------------------------------------------------------------------------

void generator_sweep() {
  Rng rng(kSeed);
  double worst_du = 0.0, worst_closed = 0.0;
  bool all_du = true;
  for (int d : {2, 3, 4}) {
    for (int trial = 0; trial < 1000; ++trial) {
      const GenSet g = GenSet::random(d, rng);
      const DuGate g1 = build_du1(g);
      const DuGate g2 = build_du2(g1);
      all_du = all_du && is_dual_unitary(g1.u, 1e-10) && is_dual_unitary(g2.u, 1e-10);
      for (const Op* u : {&g1.u, &g2.u}) {
        const Op du = dual(*u);
        worst_du = std::max(worst_du, max_abs_diff(du * du.adjoint(), Op::identity(du.rows())));
      }
      worst_closed = std::max(worst_closed, max_abs_diff(dual(g1.u), dual_du1_closed_form(g)));
      worst_closed = std::max(worst_closed, max_abs_diff(dual(g2.u), dual_du2_closed_form(g)));
    }
  }
  info("max |dual(U) dual(U)^dagger - I| = " + num(worst_du) + ", closed-form mismatch = " + num(worst_closed));
  verdict("dual-unitarity generator sweep (3000 GenSets, d = 2, 3, 4)", all_du && worst_closed <= 1e-10);
}

void duality_algebra() {
  Rng rng(kSeed + 1);
  bool ok = true;
  double worst = 0.0;
  for (int d : {2, 3, 4}) {
    const auto dd = static_cast<std::size_t>(d * d);
    const Op s = swap_gate(d);
    for (int trial = 0; trial < 50; ++trial) {
      const Op u = testing::random_matrix(dd, dd, rng);
      ok = ok && dual(dual(u)) == u;
      worst = std::max(worst, max_abs_diff(dual(s * u * s), dual(u).transpose()));
      const Op sv = s * build_v(GenSet::random(d, rng).h);
      worst = std::max(worst, max_abs_diff(dual(sv), sv));
    }
    ok = ok && dual(s) == s && !is_dual_unitary(Op::identity(dd), 1e-10);
  }
  info("max deviation over dual(SV) = SV and dual(SUS) = dual(U)^T: " + num(worst));
  verdict("duality algebra", ok && worst <= 1e-10);
}

std::size_t count_bulk_near(const std::vector<EigRecord>& t, double s_page) {
  std::size_t n = 0;
  for (const auto& r : t)
    if (!r.is_scar && std::abs(r.entropy - s_page) <= 0.5) ++n;
  return n;
}

std::vector<EigRecord> example_a() {
  bool ok = true;
  std::vector<EigRecord> t8;
  for (int n_sites : {6, 8}) {
    const Model m = build(n_sites, "example_a", 0.0);
    const StateVec zero = named_state(NamedState::ZERO, n_sites, kD);
    const double fixed = testing::max_diff(floquet_step(zero, m.circuit).amps, zero.amps);
    auto t = table(m);
    std::vector<const EigRecord*> scars;
    for (const auto& r : t)
      if (r.is_scar) scars.push_back(&r);
    const double s_page = page_entropy(n_sites, kD);
    const std::size_t bulk = t.size() - scars.size();
    const std::size_t near = count_bulk_near(t, s_page);
    const bool scar_ok = scars.size() == 1 && scars[0]->entropy < 1e-8 && phase_distance(scars[0]->eigenphase, 0.0) <= 1e-10;
    info("N=" + std::to_string(n_sites) + ": |U|0> - |0>| = " + num(fixed) + ", scars = " + std::to_string(scars.size()) +
         (scars.empty() ? "" : ", scar S = " + num(scars[0]->entropy) + ", scar phase = " + num(scars[0]->eigenphase)) +
         ", bulk within 0.5 of S_Page = " + std::to_string(near) + "/" + std::to_string(bulk));
    ok = ok && fixed <= 1e-12 && scar_ok && static_cast<double>(near) >= 0.95 * static_cast<double>(bulk);
    if (n_sites == 8) t8 = std::move(t);
  }
  verdict("example A: fixed point, single scar, thermal bulk (N = 6, 8)", ok);
  return t8;
}

void example_b(const Model& m) {
  const int n_sites = 8;
  // (U - S) on every basis vector of the target space
  double restricted = 0.0;
  for (std::size_t x : m.target.strings) {
    const StateVec out = floquet_step(StateVec::basis(n_sites, kD, x), m.circuit);
    auto want = std::vector<cplx>(out.amps.size());
    want[swap_circuit_image(x, n_sites, kD)] = 1.0;
    restricted = std::max(restricted, testing::max_diff(out.amps, want));
  }
  const auto t = table(m);
  std::size_t zero_entropy = 0, scars = 0;
  double max_scar_s = 0.0, worst_phase = 0.0;
  std::vector<double> zero_sz;
  const std::vector<double> allowed{0.0, kPi / 2, -kPi / 2, kPi};
  for (const auto& r : t) {
    if (!r.is_scar) continue;
    ++scars;
    max_scar_s = std::max(max_scar_s, r.entropy);
    double best = 10.0;
    for (double a : allowed) best = std::min(best, phase_distance(r.eigenphase, a));
    worst_phase = std::max(worst_phase, best);
    if (r.entropy < 1e-8) {
      ++zero_entropy;
      zero_sz.push_back(r.sz_density);
    }
  }
  std::sort(zero_sz.begin(), zero_sz.end());
  // |0>^8, |02>^4, |20>^4, |2>^8 are fixed by the swap circuit and carry sz = -1, 0, 0, 1
  bool strings_fixed = true;
  for (const std::vector<int>& digits : {std::vector<int>(8, 0), std::vector<int>(8, 2), std::vector<int>{0, 2, 0, 2, 0, 2, 0, 2},
                                         std::vector<int>{2, 0, 2, 0, 2, 0, 2, 0}}) {
    const StateVec s = StateVec::product(kD, digits);
    strings_fixed = strings_fixed && testing::max_diff(floquet_step(s, m.circuit).amps, s.amps) <= 1e-12;
  }
  const bool sz_ok = zero_sz.size() == 4 && std::abs(zero_sz[0] + 1) < 1e-10 && std::abs(zero_sz[1]) < 1e-10 &&
                     std::abs(zero_sz[2]) < 1e-10 && std::abs(zero_sz[3] - 1) < 1e-10;
  info("dim T = " + std::to_string(m.target.dim()) + ", ||(U - S)|_T|| = " + num(restricted) + ", scars = " +
       std::to_string(scars) + ", zero-entropy scars = " + std::to_string(zero_entropy) + ", max scar S = " +
       num(max_scar_s) + " (ln 4 = " + num(std::log(4.0)) + "), worst scar phase offset = " + num(worst_phase));
  verdict("example B: target space, zero-entropy scars, scar entropy bound, scar phases",
          m.target.dim() == 256 && restricted <= 1e-10 && zero_entropy == 4 && sz_ok && strings_fixed &&
              max_scar_s <= std::log(4.0) + 1e-9 && worst_phase <= 1e-10);
}

void two_scar(const Model& m) {
  const double phi = m.model.phi;
  const auto t = table(m);
  std::vector<double> phases;
  for (const auto& r : t)
    if (r.is_scar && r.entropy < 1e-8) phases.push_back(r.eigenphase);
  std::sort(phases.begin(), phases.end());
  bool ok = phases.size() == 2;
  if (ok) {
    const double e0 = phase_distance(phases[0], -8 * phi), e1 = phase_distance(phases[1], 8 * phi);
    info("scar phases " + num(phases[0]) + ", " + num(phases[1]) + "; offsets from -+8 phi: " + num(e0) + ", " + num(e1));
    ok = e0 <= 1e-10 && e1 <= 1e-10;
  } else {
    info("zero-entropy scar count = " + std::to_string(phases.size()));
  }
  verdict("two-scar example: scar eigenphases +-8 phi", ok);
}

std::vector<std::vector<TrajectoryRecord>> random_ensemble(const BrickworkCircuit& c, int t_max, int count) {
  Rng rng = Rng(kSeed).split(1);
  std::vector<StateVec> init;
  for (int i = 0; i < count; ++i) init.push_back(random_product_state(c.n_sites, c.d, rng));
  std::vector<std::vector<TrajectoryRecord>> out(init.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t i = 0; i < init.size(); ++i) out[i] = trajectory_records(evolve_trajectory(init[i], c, t_max));
  return out;
}

std::vector<TrajectoryRecord> named_records(const BrickworkCircuit& c, NamedState s, int t_max) {
  return trajectory_records(evolve_trajectory(named_state(s, c.n_sites, kD), c, t_max));
}

void dynamics_a(const Model& m) {
  const int t_max = 20;
  const auto zero = named_records(m.circuit, NamedState::ZERO, t_max);
  const auto psi1 = named_records(m.circuit, NamedState::PSI1, t_max);
  double zero_dev = 0.0, f_lo = 1.0, f_hi = 0.0;
  for (const auto& r : zero) zero_dev = std::max(zero_dev, std::abs(r.fidelity - 1.0));
  for (int t = 2; t <= t_max; ++t) {
    f_lo = std::min(f_lo, psi1[static_cast<std::size_t>(t)].fidelity);
    f_hi = std::max(f_hi, psi1[static_cast<std::size_t>(t)].fidelity);
  }
  const auto ens = random_ensemble(m.circuit, t_max, 100);
  const double s_page = page_entropy(8, kD);
  double worst_rel = 0.0;
  for (int t = 10; t <= t_max; ++t) {
    std::vector<double> s;
    for (const auto& tr : ens) s.push_back(tr[static_cast<std::size_t>(t)].entropy);
    worst_rel = std::max(worst_rel, std::abs(percentile(s, 50) - s_page) / s_page);
  }
  info("ZERO max |F - 1| = " + num(zero_dev) + "; PSI1 F in [" + num(f_lo) + ", " + num(f_hi) +
       "] for t >= 2; random median entropy max relative deviation from S_Page for t >= 10 = " + num(worst_rel));
  verdict("dynamics, example A", zero_dev <= 1e-10 && f_lo >= 0.45 && f_hi <= 0.55 && worst_rel <= 0.05);
}

void dynamics_b(const Model& m) {
  const int t_max = 20;
  const auto zero = named_records(m.circuit, NamedState::ZERO, t_max);
  const auto psi1 = named_records(m.circuit, NamedState::PSI1, t_max);
  const auto psi2_traj = evolve_trajectory(named_state(NamedState::PSI2, 8, kD), m.circuit, t_max);
  const auto psi2 = trajectory_records(psi2_traj);
  double s_max = 0.0, period_dev = 0.0, revival_min = 1.0;
  for (const auto& r : zero) s_max = std::max(s_max, r.entropy);
  for (const auto& r : psi1) s_max = std::max(s_max, r.entropy);
  for (int t = 0; t + 4 <= t_max; ++t)
    period_dev = std::max(period_dev, std::abs(psi1[static_cast<std::size_t>(t + 4)].fidelity - psi1[static_cast<std::size_t>(t)].fidelity));
  for (int k = 1; k <= 5; ++k) revival_min = std::min(revival_min, psi2[static_cast<std::size_t>(2 * k)].fidelity);
  double mz_lo = psi2[0].sz_density, mz_hi = psi2[0].sz_density;
  for (const auto& r : psi2) {
    mz_lo = std::min(mz_lo, r.sz_density);
    mz_hi = std::max(mz_hi, r.sz_density);
  }
  // The component of PSI2 inside the target space stays there and keeps its magnetization.
  double weight_dev = 0.0, comp_mz_dev = 0.0;
  double comp_mz0 = 0.0;
  for (std::size_t t = 0; t < psi2_traj.size(); ++t) {
    std::vector<cplx> comp(psi2_traj[t].amps.size());
    double w = 0.0;
    for (std::size_t x : m.target.strings) {
      comp[x] = psi2_traj[t].amps[x];
      w += std::norm(comp[x]);
    }
    for (auto& z : comp) z /= std::sqrt(w);
    const double mz = sz_density(comp, psi2_traj[t].lattice());
    if (t == 0) comp_mz0 = mz;
    weight_dev = std::max(weight_dev, std::abs(w - 0.5));
    comp_mz_dev = std::max(comp_mz_dev, std::abs(mz - comp_mz0));
  }
  info("ZERO/PSI1 max entropy = " + num(s_max) + "; PSI1 max |F(t+4) - F(t)| = " + num(period_dev) +
       "; PSI2 min F(2k), k <= 5 = " + num(revival_min));
  info("PSI2 sz_density range over t <= 20: [" + num(mz_lo) + ", " + num(mz_hi) + "], spread " + num(mz_hi - mz_lo));
  info("PSI2 target-space component: weight deviation from 1/2 = " + num(weight_dev) +
       ", magnetization drift = " + num(comp_mz_dev));
  verdict("dynamics, example B (including PSI2 magnetization constant within 1e-10)",
          s_max <= 1e-10 && period_dev <= 1e-8 && revival_min >= 0.45 && (mz_hi - mz_lo) <= 1e-10);
}

void magnetization(const std::vector<EigRecord>& table_a, const Model& a, const Model& c) {
  std::vector<double> bulk;
  double scar_sz = 0.0;
  for (const auto& r : table_a) {
    if (r.is_scar) scar_sz = r.sz_density;
    else bulk.push_back(r.sz_density);
  }
  const double med = percentile(bulk, 50);
  double worst = 0.0;
  for (const Model* m : {&a, &c}) {
    const auto psi1 = named_records(m->circuit, NamedState::PSI1, 20);
    for (int t = 10; t <= 20; ++t) worst = std::max(worst, std::abs(psi1[static_cast<std::size_t>(t)].sz_density + 0.5));
  }
  info("example A eigenstate sz median = " + num(med) + ", scar sz = " + num(scar_sz) +
       "; PSI1 max |sz + 0.5| for t >= 10 (A, two-scar) = " + num(worst));
  verdict("magnetization panels", std::abs(med) < 0.05 && std::abs(scar_sz + 1.0) <= 1e-10 && worst <= 0.05);
}

void ergodicity() {
  bool mixing = true, unital = true, non_ergodic = true, multiplicity_two = true;
  double worst_unital = 0.0;
  for (const char* spec : {"example_a", "example_b", "two_scar"}) {
    for (LayerMode mode : {LayerMode::DU1_DU2, LayerMode::SAME_GATE}) {
      const BrickworkCircuit c = circuit_from_model(make_scar_model(8, kD, spec, kSeed, 0.0, mode));
      const ChannelMatrix p = full_channel(c.gate_even, c.gate_odd, Direction::PLUS);
      const ChannelMatrix m = full_channel(c.gate_even, c.gate_odd, Direction::MINUS);
      for (const ChannelMatrix* ch : {&p, &m})
        worst_unital = std::max(worst_unital, max_abs_diff(ch->apply(Op::identity(kD)), Op::identity(kD)));
      const auto r = classify(p, m);
      info(std::string(spec) + " " + to_string(mode) + ": " + to_string(r.verdict) + ", unit eigenvalues +/- = " +
           std::to_string(r.unit_eigenvalue_count_plus) + "/" + std::to_string(r.unit_eigenvalue_count_minus) +
           ", unit modulus +/- = " + std::to_string(r.unit_modulus_count_plus) + "/" +
           std::to_string(r.unit_modulus_count_minus) + ", second modulus +/- = " + num(r.second_modulus_plus) + "/" +
           num(r.second_modulus_minus));
      if (mode == LayerMode::DU1_DU2) {
        mixing = mixing && r.verdict == ErgodicClass::ERGODIC_AND_MIXING && r.unit_modulus_count_plus == 1 &&
                 r.unit_modulus_count_minus == 1;
      } else {
        non_ergodic = non_ergodic && r.verdict == ErgodicClass::NON_ERGODIC;
        multiplicity_two =
            multiplicity_two && std::max(r.unit_modulus_count_plus, r.unit_modulus_count_minus) == 2;
      }
    }
  }
  unital = worst_unital <= 1e-10;
  info("max |M(I) - I| = " + num(worst_unital) + "; DU1/DU2 mixing: " + (mixing ? "yes" : "no") +
       "; SAME_GATE non-ergodic: " + (non_ergodic ? "yes" : "no") + "; SAME_GATE multiplicity 2 for every example: " +
       (multiplicity_two ? "yes" : "no"));
  verdict("ergodicity classification", mixing && unital && non_ergodic && multiplicity_two);
}

void dual_spectrum(const Model& a, const Model& b) {
  const int tau = 4;
  const double band = page_entropy(2 * tau, kD) - 0.5;
  std::size_t low_a = 0, low_b = 0;
  for (const Model* m : {&a, &b}) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto t = dual_eig_table(m->circuit, tau);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::size_t low = 0;
    double below_max = 0.0, bulk_min = 1e9;
    for (const auto& r : t) {
      if (r.entropy < band) {
        ++low;
        below_max = std::max(below_max, r.entropy);
      } else {
        bulk_min = std::min(bulk_min, r.entropy);
      }
    }
    (m == &a ? low_a : low_b) = low;
    info("dual " + m->model.spec_name + " (" + num(secs) + " s): below band " + std::to_string(low) +
         ", max entropy below band = " + num(below_max) + ", min bulk entropy = " + num(bulk_min));
  }
  verdict("dual spectrum outliers (tau = 4)", low_a == 1 && low_b == 256);
}

void oracle_equivalence() {
  Rng rng(kSeed + 2);
  const Model m = build(4, "example_b", 0.0);
  const Op dense = testing::dense_floquet(m.circuit);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    StateVec s{4, kD, testing::random_state(81, rng)};
    worst = std::max(worst, testing::max_diff(floquet_step(s, m.circuit).amps, dense * std::span<const cplx>(s.amps)));
  }
  info("max deviation over 50 random states = " + num(worst));
  verdict("tensor-contraction evolution matches dense evolution (N = 4, d = 3)", worst <= 1e-10);
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  try {
    generator_sweep();
    duality_algebra();
    oracle_equivalence();
    const auto table_a = example_a();
    const Model a = build(8, "example_a", 0.0);
    const Model b = build(8, "example_b", 0.0);
    const Model c = build(8, "two_scar", 0.01);
    example_b(b);
    two_scar(c);
    dynamics_a(a);
    dynamics_b(b);
    magnetization(table_a, a, c);
    ergodicity();
    dual_spectrum(a, b);
  } catch (const std::exception& e) {
    std::printf("FAIL uncaught exception: %s\n", e.what());
    ++failures;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%d failing criteria, %.1f s\n", failures, secs);
  return failures == 0 ? 0 : 1;
}
