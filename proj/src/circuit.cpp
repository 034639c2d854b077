#include "duscar/circuit.hpp"

#include <cmath>
#include <string>

namespace duscar {

namespace {

void check_cap(std::size_t dim, std::size_t cap) {
  if (dim > cap) {
    throw InvalidArgument("dense matrix of dimension " + std::to_string(dim) + " exceeds the cap of " +
                          std::to_string(cap) + "; use state-vector evolution instead");
  }
}

std::size_t swap_digits(std::size_t index, const kernels::Lattice& lat, int a, int b) {
  const auto d = static_cast<std::size_t>(lat.d);
  const std::size_t sa = lat.stride(a), sb = lat.stride(b);
  const std::size_t da = (index / sa) % d, db = (index / sb) % d;
  return index - da * sa - db * sb + db * sa + da * sb;
}

}  // namespace

double StateVec::norm() const {
  double s = 0.0;
  for (auto z : amps) s += std::norm(z);
  return std::sqrt(s);
}

StateVec StateVec::basis(int n_sites, int d, std::size_t index) {
  StateVec s{n_sites, d, std::vector<cplx>(kernels::Lattice{n_sites, d}.dim())};
  if (index >= s.amps.size()) throw InvalidArgument("StateVec::basis: index out of range");
  s.amps[index] = 1.0;
  return s;
}

StateVec StateVec::product(int d, const std::vector<int>& digits) {
  std::size_t index = 0;
  for (int v : digits) {
    if (v < 0 || v >= d) throw InvalidArgument("StateVec::product: digit out of range");
    index = index * static_cast<std::size_t>(d) + static_cast<std::size_t>(v);
  }
  return basis(static_cast<int>(digits.size()), d, index);
}

cplx inner(const StateVec& a, const StateVec& b) {
  if (a.amps.size() != b.amps.size()) throw InvalidArgument("inner: dimension mismatch");
  cplx acc = 0.0;
  for (std::size_t i = 0; i < a.amps.size(); ++i) acc += std::conj(a.amps[i]) * b.amps[i];
  return acc;
}

nlohmann::json state_to_json(const StateVec& s) {
  nlohmann::json amps = nlohmann::json::array();
  for (auto z : s.amps) amps.push_back({z.real(), z.imag()});
  return {{"n_sites", s.n_sites}, {"d", s.d}, {"amplitudes", amps}};
}

void BrickworkCircuit::validate() const {
  if (n_sites < 2 || n_sites % 2 != 0) throw InvalidArgument("BrickworkCircuit: N must be even and >= 2");
  if (gate_even.d != d || gate_odd.d != d) throw InvalidArgument("BrickworkCircuit: gate dimension mismatch");
  const auto dd = static_cast<std::size_t>(d * d);
  if (gate_even.u.rows() != dd || gate_odd.u.rows() != dd) throw InvalidArgument("BrickworkCircuit: gate must be d^2 x d^2");
  if (breaker && (breaker->rows() != static_cast<std::size_t>(d) || !breaker->square())) {
    throw InvalidArgument("BrickworkCircuit: breaker must be d x d");
  }
}

BrickworkCircuit circuit_from_model(const ScarModel& model) {
  BrickworkCircuit c;
  c.n_sites = model.n_sites;
  c.d = model.d;
  c.gate_even = build_du1(model.gens_even, model.seed);
  const DuGate odd1 = build_du1(model.gens_odd, model.seed);
  c.gate_odd = model.layer_mode == LayerMode::DU1_DU2 ? build_du2(odd1) : odd1;
  if (model.phi != 0.0) c.breaker = degeneracy_breaker(model.phi, model.d);
  c.validate();
  return c;
}

BrickworkCircuit uniform_circuit(int n_sites, const DuGate& gate) {
  BrickworkCircuit c{n_sites, gate.d, gate, gate, std::nullopt};
  c.validate();
  return c;
}

StateVec apply_two_site(const StateVec& state, const Op& gate, int site) {
  StateVec out = state;
  kernels::apply_two_site(out.amps, state.lattice(), gate.data(), site);
  return out;
}

void floquet_step_inplace(std::span<cplx> amps, const BrickworkCircuit& circuit) {
  const auto lat = circuit.lattice();
  for (int n = 0; n < circuit.n_sites; n += 2) kernels::apply_two_site(amps, lat, circuit.gate_even.u.data(), n);
  for (int n = 1; n < circuit.n_sites; n += 2) kernels::apply_two_site(amps, lat, circuit.gate_odd.u.data(), n);
  if (circuit.breaker) {
    std::vector<cplx> diag(static_cast<std::size_t>(circuit.d));
    for (std::size_t j = 0; j < diag.size(); ++j) diag[j] = (*circuit.breaker)(j, j);
    kernels::apply_product_diagonal(amps, lat, diag);
  }
}

StateVec floquet_step(const StateVec& state, const BrickworkCircuit& circuit) {
  if (state.n_sites != circuit.n_sites || state.d != circuit.d) throw InvalidArgument("floquet_step: lattice mismatch");
  StateVec out = state;
  floquet_step_inplace(out.amps, circuit);
  return out;
}

std::vector<StateVec> evolve_trajectory(const StateVec& state0, const BrickworkCircuit& circuit, int t_max) {
  if (t_max < 0) throw InvalidArgument("evolve_trajectory: t_max must be >= 0");
  std::vector<StateVec> traj{state0};
  traj.reserve(static_cast<std::size_t>(t_max) + 1);
  for (int t = 0; t < t_max; ++t) traj.push_back(floquet_step(traj.back(), circuit));
  return traj;
}

Op floquet_matrix(const BrickworkCircuit& circuit, std::size_t cap) {
  circuit.validate();
  const std::size_t dim = circuit.lattice().dim();
  check_cap(dim, cap);
  Op m(dim, dim);
#pragma omp parallel
  {
    std::vector<cplx> col(dim);
#pragma omp for schedule(dynamic, 16)
    for (std::size_t j = 0; j < dim; ++j) {
      std::fill(col.begin(), col.end(), cplx(0.0));
      col[j] = 1.0;
      floquet_step_inplace(col, circuit);
      for (std::size_t i = 0; i < dim; ++i) m(i, j) = col[i];
    }
  }
  return m;
}

std::size_t swap_circuit_image(std::size_t index, int n_sites, int d) {
  const kernels::Lattice lat{n_sites, d};
  for (int n = 0; n < n_sites; n += 2) index = swap_digits(index, lat, n, n + 1);
  for (int n = 1; n < n_sites; n += 2) index = swap_digits(index, lat, n, (n + 1) % n_sites);
  return index;
}

Op swap_circuit_matrix(int n_sites, int d) {
  if (n_sites < 2 || n_sites % 2 != 0) throw InvalidArgument("swap_circuit_matrix: N must be even");
  const std::size_t dim = kernels::Lattice{n_sites, d}.dim();
  Op s(dim, dim);
  for (std::size_t x = 0; x < dim; ++x) s(swap_circuit_image(x, n_sites, d), x) = 1.0;
  return s;
}

BrickworkCircuit dual_circuit(const BrickworkCircuit& circuit, int tau) {
  circuit.validate();
  if (tau < 1) throw InvalidArgument("dual_circuit: tau must be >= 1");
  Op odd = circuit.gate_odd.u;
  if (circuit.breaker) odd = kron(*circuit.breaker, *circuit.breaker) * odd;
  BrickworkCircuit c;
  c.n_sites = 2 * tau;
  c.d = circuit.d;
  c.gate_even = circuit.gate_even;
  c.gate_even.u = dual(circuit.gate_even.u);
  c.gate_odd = circuit.gate_odd;
  c.gate_odd.u = dual(odd);
  c.validate();
  return c;
}

Op dual_floquet_matrix(const BrickworkCircuit& circuit, int tau, std::size_t cap) {
  const BrickworkCircuit c = dual_circuit(circuit, tau);
  check_cap(c.lattice().dim(), cap);
  return floquet_matrix(c, cap);
}

}  // namespace duscar
