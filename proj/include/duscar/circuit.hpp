#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <json.hpp>

#include "duscar/dugate.hpp"
#include "duscar/embedding.hpp"
#include "duscar/kernels.hpp"
#include "duscar/linalg.hpp"

namespace duscar {

/// Default ceiling on d^N for anything that materializes a d^N x d^N matrix.
inline constexpr std::size_t kDenseCap = 6561;

/// Pure state of N qudits; site 0 is the most significant digit of the basis index.
struct StateVec {
  int n_sites = 0;
  int d = 0;
  std::vector<cplx> amps;

  kernels::Lattice lattice() const { return {n_sites, d}; }
  double norm() const;

  static StateVec basis(int n_sites, int d, std::size_t index);
  /// |i_0 i_1 ... i_{N-1}>
  static StateVec product(int d, const std::vector<int>& digits);
};

cplx inner(const StateVec& a, const StateVec& b);
/// Site-ordered amplitude list of [re, im] pairs.
nlohmann::json state_to_json(const StateVec& s);

/// Brickwork ring: even bonds (0,1),(2,3),... then odd bonds (1,2),...,(N-1,0), then the
/// optional single-site breaker layer on every site.
struct BrickworkCircuit {
  int n_sites = 0;
  int d = 0;
  DuGate gate_even;
  DuGate gate_odd;
  std::optional<Op> breaker;

  kernels::Lattice lattice() const { return {n_sites, d}; }
  void validate() const;
};

BrickworkCircuit circuit_from_model(const ScarModel& model);
/// Both layers use the given gate (the all-SWAP circuit when gate is swap_gate(d)).
BrickworkCircuit uniform_circuit(int n_sites, const DuGate& gate);

StateVec apply_two_site(const StateVec& state, const Op& gate, int site);
StateVec floquet_step(const StateVec& state, const BrickworkCircuit& circuit);
void floquet_step_inplace(std::span<cplx> amps, const BrickworkCircuit& circuit);
std::vector<StateVec> evolve_trajectory(const StateVec& state0, const BrickworkCircuit& circuit, int t_max);

Op floquet_matrix(const BrickworkCircuit& circuit, std::size_t cap = kDenseCap);

/// Permutation of basis strings implemented by S_o S_e.
std::size_t swap_circuit_image(std::size_t index, int n_sites, int d);
Op swap_circuit_matrix(int n_sites, int d);

/// 2 tau sites: the dual of the even gate on (2t, 2t+1) and the dual of the odd gate
/// (with the breaker absorbed as (b (x) b) U_odd) on (2t+1, 2t+2 mod 2 tau).
BrickworkCircuit dual_circuit(const BrickworkCircuit& circuit, int tau);
Op dual_floquet_matrix(const BrickworkCircuit& circuit, int tau, std::size_t cap = kDenseCap);

}  // namespace duscar
