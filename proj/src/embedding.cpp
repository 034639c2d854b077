#include "duscar/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "duscar/kernels.hpp"

namespace duscar {

namespace {

constexpr double kConditionTol = 1e-12;
constexpr double kRankTol = 1e-10;

void zero_row_col(Op& m, int idx) {
  const auto k = static_cast<std::size_t>(idx);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    m(i, k) = 0.0;
    m(k, i) = 0.0;
  }
}

Op controlled_sum(const std::vector<Op>& h) {
  const std::size_t n = h.size();
  Op big(n * n, n * n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) big(a * n + j, b * n + j) = h[j](a, b);
  return big;
}

bool sandwich_invariant(const Op& p, const Op& a) { return max_abs_diff(p * a * p, a) <= kConditionTol; }

void apply_swap_layer(std::span<cplx> v, const kernels::Lattice& lat, const Op& swap, int parity) {
  for (int n = parity; n < lat.n_sites; n += 2) kernels::apply_two_site(v, lat, swap.data(), n);
}

}  // namespace

void ProjectorSpec::validate() const {
  if (d < 2) throw InvalidArgument("ProjectorSpec: d must be >= 2");
  for (std::size_t i = 0; i < x_set.size(); ++i) {
    const auto [a, b] = x_set[i];
    if (a < 0 || a >= d || b < 0 || b >= d) throw InvalidArgument("ProjectorSpec: index out of range");
    for (std::size_t j = 0; j < i; ++j)
      if (x_set[j] == x_set[i]) throw InvalidArgument("ProjectorSpec: duplicate pair");
  }
}

bool ProjectorSpec::contains(int first, int second) const {
  return std::find(x_set.begin(), x_set.end(), std::pair{first, second}) != x_set.end();
}

ProjectorSpec ProjectorSpec::example_a(int d) { return {d, {{0, 0}}}; }

ProjectorSpec ProjectorSpec::example_b(int d) { return {d, {{0, 0}, {d - 1, d - 1}, {0, d - 1}, {d - 1, 0}}}; }

ProjectorSpec ProjectorSpec::two_scar(int d) { return {d, {{0, 0}, {d - 1, d - 1}}}; }

ProjectorSpec ProjectorSpec::unconstrained(int d) { return {d, {}}; }

ProjectorSpec ProjectorSpec::named(const std::string& name, int d) {
  ProjectorSpec s;
  if (name == "example_a") s = example_a(d);
  else if (name == "example_b") s = example_b(d);
  else if (name == "two_scar") s = two_scar(d);
  else if (name == "unconstrained") s = unconstrained(d);
  else throw InvalidArgument("unknown projector spec: " + name);
  s.validate();
  return s;
}

double Subspace::overlap(std::span<const cplx> v) const {
  if (v.size() != dim_total) throw InvalidArgument("Subspace::overlap: dimension mismatch");
  double total = 0.0;
  if (is_product_basis()) {
    for (std::size_t x : strings) total += std::norm(v[x]);
    return total;
  }
  for (std::size_t k = 0; k < basis.cols(); ++k) {
    cplx acc = 0.0;
    for (std::size_t i = 0; i < dim_total; ++i) acc += std::conj(basis(i, k)) * v[i];
    total += std::norm(acc);
  }
  return total;
}

Op local_projector(const ProjectorSpec& spec) {
  spec.validate();
  const auto d = static_cast<std::size_t>(spec.d);
  Op p = Op::identity(d * d);
  for (const auto& [a, b] : spec.x_set) {
    const std::size_t x = static_cast<std::size_t>(a) * d + static_cast<std::size_t>(b);
    p(x, x) = 0.0;
  }
  return p;
}

GenSet constrain_generators(const GenSet& raw, const ProjectorSpec& spec) {
  raw.validate();
  spec.validate();
  if (raw.dim() != spec.d) throw InvalidArgument("constrain_generators: d mismatch");
  GenSet g = raw;
  for (const auto& [first, second] : spec.x_set) {
    zero_row_col(g.f_plus, first);
    zero_row_col(g.g_minus, first);
    zero_row_col(g.f_minus, second);
    zero_row_col(g.g_plus, second);
  }
  // H = P (sum_j h'^(j) (x) |j><j|) P. P is a 0/1 diagonal, so the sandwich is an
  // entrywise mask and H stays block diagonal in the control qudit.
  const Op p = local_projector(spec);
  const auto d = static_cast<std::size_t>(spec.d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) {
        const cplx mask = p(a * d + j, a * d + j) * p(b * d + j, b * d + j);
        g.h[j](a, b) *= mask;
      }
  if (!verify_conditions(g, spec)) throw NumericalError("constrain_generators: conditions not satisfied");
  return g;
}

bool verify_conditions(const GenSet& gens, const ProjectorSpec& spec) {
  if (gens.dim() != spec.d || gens.h.size() != static_cast<std::size_t>(spec.d)) return false;
  const Op p = local_projector(spec);
  const Op id = Op::identity(static_cast<std::size_t>(spec.d));
  const Op f = kron(gens.f_plus, id) + kron(id, gens.f_minus);
  const Op g = kron(gens.g_minus, id) + kron(id, gens.g_plus);
  return sandwich_invariant(p, f) && sandwich_invariant(p, g) && sandwich_invariant(p, controlled_sum(gens.h));
}

Subspace common_kernel(const ProjectorSpec& spec, int n_sites) {
  spec.validate();
  if (n_sites < 2 || n_sites % 2 != 0) throw InvalidArgument("common_kernel: N must be even and >= 2");
  const kernels::Lattice lat{n_sites, spec.d};
  const Op p = local_projector(spec);
  const auto d = static_cast<std::size_t>(spec.d);
  // sum_n P_{n,n+1} is diagonal; its null space is the set of strings with zero weight.
  std::vector<std::size_t> strings;
  for (std::size_t x = 0; x < lat.dim(); ++x) {
    double weight = 0.0;
    for (int n = 0; n < n_sites; ++n) {
      const auto a = static_cast<std::size_t>(lat.digit(x, n));
      const auto b = static_cast<std::size_t>(lat.digit(x, (n + 1) % n_sites));
      weight += p(a * d + b, a * d + b).real();
    }
    if (weight == 0.0) strings.push_back(x);
  }
  Subspace k{lat.dim(), Op(lat.dim(), strings.size()), strings};
  for (std::size_t c = 0; c < strings.size(); ++c) k.basis(strings[c], c) = 1.0;
  return k;
}

Subspace target_space(const Subspace& kernel, int n_sites, int d) {
  const kernels::Lattice lat{n_sites, d};
  if (kernel.dim_total != lat.dim()) throw InvalidArgument("target_space: dimension mismatch");
  const Op swap = swap_gate(d);
  Subspace t = kernel;
  while (t.dim() > 0) {
    // Residuals (I - T T^dagger) S_{e,o} T, stacked; T shrinks to their common null space.
    const std::size_t n = lat.dim(), k = t.dim();
    Op moved(n, 2 * k);
    std::vector<cplx> col;
    for (std::size_t c = 0; c < k; ++c) {
      for (int parity = 0; parity < 2; ++parity) {
        col = t.basis.column(c);
        apply_swap_layer(col, lat, swap, parity);
        moved.set_column(2 * c + static_cast<std::size_t>(parity), col);
      }
    }
    const Op residual = moved - t.basis * (t.basis.adjoint() * moved);
    if (max_abs(residual) <= kRankTol) break;
    Op stacked(2 * n, k);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t c = 0; c < k; ++c) {
        stacked(i, c) = residual(i, 2 * c);
        stacked(n + i, c) = residual(i, 2 * c + 1);
      }
    const Op keep = null_space(stacked, kRankTol);
    if (keep.cols() == k) break;
    t.basis = t.basis * keep;
    t.strings.clear();
  }
  return t;
}

Op degeneracy_breaker(double phi, int d) {
  if (d < 2) throw InvalidArgument("degeneracy_breaker: d must be >= 2");
  std::vector<cplx> diag;
  for (int j = 0; j < d; ++j) diag.push_back(std::polar(1.0, -phi * (2.0 * j - (d - 1)) / (d - 1)));
  return Op::diagonal(diag);
}

std::vector<double> scar_eigenphase_set(int n_sites) {
  if (n_sites < 2 || n_sites % 2 != 0) throw InvalidArgument("scar_eigenphase_set: N must be even");
  std::vector<double> phases;
  for (int k = 0; k < n_sites / 2; ++k) phases.push_back(eigenphase(std::polar(1.0, 4.0 * std::numbers::pi * k / n_sites)));
  std::sort(phases.begin(), phases.end());
  return phases;
}

std::string to_string(LayerMode m) { return m == LayerMode::DU1_DU2 ? "DU1_DU2" : "SAME_GATE"; }

LayerMode layer_mode_from_string(const std::string& s) {
  if (s == "DU1_DU2") return LayerMode::DU1_DU2;
  if (s == "SAME_GATE") return LayerMode::SAME_GATE;
  throw InvalidArgument("unknown layer mode: " + s);
}

ScarModel make_scar_model(int n_sites, int d, const std::string& spec_name, std::uint64_t seed, double phi,
                          LayerMode mode) {
  if (n_sites < 2 || n_sites % 2 != 0) throw InvalidArgument("ScarModel: N must be even and >= 2");
  if (d < 2) throw InvalidArgument("ScarModel: d must be >= 2");
  ScarModel m;
  m.n_sites = n_sites;
  m.d = d;
  m.spec_name = spec_name;
  m.spec = ProjectorSpec::named(spec_name, d);
  Rng rng(seed);
  m.gens_even = constrain_generators(GenSet::random(d, rng), m.spec);
  m.gens_odd = m.gens_even;
  m.phi = phi;
  m.seed = seed;
  m.layer_mode = mode;
  return m;
}

}  // namespace duscar
