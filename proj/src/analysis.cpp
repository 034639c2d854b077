#include "duscar/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>

namespace duscar {

namespace {

constexpr double kScarThreshold = 0.5;
constexpr double kSpanTol = 1e-6;

int resolve_cut(const kernels::Lattice& lat, int cut) {
  if (cut < 0) cut = lat.n_sites / 2;
  if (cut < 1 || cut > lat.n_sites - 1) throw InvalidArgument("bipartite_entropy: cut must be in [1, N-1]");
  return cut;
}

std::size_t ipow(std::size_t b, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

double circular_distance(double a, double b) { return std::abs(eigenphase(std::polar(1.0, a - b))); }

// Consecutive runs (in ascending phase order) whose neighbouring gaps are below `gap`,
// treating -pi and pi as adjacent.
std::vector<std::vector<std::size_t>> phase_clusters(const std::vector<double>& phases, double gap) {
  const std::size_t n = phases.size();
  std::vector<std::vector<std::size_t>> clusters;
  if (n == 0) return clusters;
  std::size_t start = 0;
  if (n > 1 && circular_distance(phases[0], phases[n - 1]) < gap) {
    start = n;
    for (std::size_t i = 1; i < n; ++i)
      if (phases[i] - phases[i - 1] >= gap) {
        start = i;
        break;
      }
    if (start == n) {
      clusters.emplace_back();
      for (std::size_t i = 0; i < n; ++i) clusters.back().push_back(i);
      return clusters;
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = (start + k) % n;
    const std::size_t prev = (start + k + n - 1) % n;
    if (k == 0 || circular_distance(phases[i], phases[prev]) >= gap) clusters.emplace_back();
    clusters.back().push_back(i);
  }
  return clusters;
}

Op columns_to_op(const std::vector<std::vector<cplx>>& cols, std::size_t dim) {
  Op m(dim, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) m.set_column(j, cols[j]);
  return m;
}

// Separates scar and thermal directions inside a degenerate cluster: the columns of v are
// rotated onto the eigenbasis of v^dagger Pi_T v, returned in ascending overlap order.
std::vector<double> rotate_against_target(Op& v, const Subspace& target) {
  const std::size_t m = v.cols();
  Op a;
  if (target.is_product_basis()) {
    a = Op(target.dim(), m);
    for (std::size_t c = 0; c < target.dim(); ++c)
      for (std::size_t j = 0; j < m; ++j) a(c, j) = v(target.strings[c], j);
  } else {
    a = target.basis.adjoint() * v;
  }
  Op g = a.adjoint() * a;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) g(i, j) = 0.5 * (g(i, j) + std::conj(g(j, i)));
  const Spectrum s = eig_hermitian(g);
  v = v * s.vectors;
  std::vector<double> w;
  for (auto z : s.values) w.push_back(z.real());
  return w;
}

EigRecord make_record(std::span<const cplx> v, const BrickworkCircuit& circuit, const Subspace* target) {
  const auto lat = circuit.lattice();
  std::vector<cplx> w(v.begin(), v.end());
  floquet_step_inplace(w, circuit);
  cplx lambda = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) lambda += std::conj(v[i]) * w[i];
  double res = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) res += std::norm(w[i] - lambda * v[i]);
  if (std::sqrt(res) > tol::spectral_residual) {
    throw NumericalError("eig_table: eigenvector residual " + std::to_string(std::sqrt(res)) + " exceeds tolerance");
  }
  EigRecord r;
  r.eigenphase = eigenphase(lambda);
  r.entropy = bipartite_entropy(v, lat);
  r.sz_density = sz_density(v, lat);
  if (target && target->dim() > 0) {
    r.scar_overlap = target->overlap(v);
    r.is_scar = r.scar_overlap > kScarThreshold;
  }
  return r;
}

std::vector<EigRecord> table_core(const BrickworkCircuit& circuit, const Subspace* target,
                                  const EigTableOptions& options) {
  const FloquetEigensystem es = FloquetEigensystem::compute(circuit, options.method, options.cap);
  std::vector<double> phases(es.size());
  for (std::size_t i = 0; i < es.size(); ++i) phases[i] = es.phase(i);
  const auto clusters = phase_clusters(phases, options.cluster_gap);

  const bool use_target = target && target->dim() > 0;
  Spectrum orbit_basis;
  std::vector<double> orbit_phases;
  if (use_target && target->is_product_basis()) {
    orbit_basis = scar_diagonalize(*target, circuit.n_sites, circuit.d, options.phi);
    for (auto z : orbit_basis.values) orbit_phases.push_back(eigenphase(z));
  }

  std::vector<std::size_t> first(clusters.size());
  for (std::size_t c = 1; c < clusters.size(); ++c) first[c] = first[c - 1] + clusters[c - 1].size();
  std::vector<EigRecord> records(es.size());
  std::exception_ptr error;

#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    try {
      const auto& members = clusters[c];
      std::vector<std::vector<cplx>> cols;
      for (std::size_t i : members) cols.push_back(es.vector(i));
      if (use_target && members.size() > 1) {
        Op v = columns_to_op(cols, es.dim());
        const std::vector<double> overlap = rotate_against_target(v, *target);
        std::vector<std::size_t> scar_cols;
        for (std::size_t j = 0; j < overlap.size(); ++j)
          if (overlap[j] > kScarThreshold) scar_cols.push_back(j);
        std::vector<std::size_t> candidates;
        for (std::size_t q = 0; q < orbit_phases.size(); ++q)
          if (circular_distance(orbit_phases[q], phases[members.front()]) < tol::spectral_residual) candidates.push_back(q);
        // Swap in the orbit basis when it spans exactly the scar directions of this cluster.
        if (!scar_cols.empty() && candidates.size() == scar_cols.size()) {
          double captured = 0.0;
          for (std::size_t q : candidates)
            for (std::size_t j : scar_cols) {
              cplx acc = 0.0;
              for (std::size_t i = 0; i < es.dim(); ++i) acc += std::conj(v(i, j)) * orbit_basis.vectors(i, q);
              captured += std::norm(acc);
            }
          if (captured >= static_cast<double>(scar_cols.size()) - kSpanTol) {
            for (std::size_t k = 0; k < scar_cols.size(); ++k) v.set_column(scar_cols[k], orbit_basis.vector(candidates[k]));
          }
        }
        for (std::size_t j = 0; j < v.cols(); ++j) cols[j] = v.column(j);
      }
      for (std::size_t j = 0; j < cols.size(); ++j) {
        EigRecord r = make_record(cols[j], circuit, use_target ? target : nullptr);
        r.index = first[c] + j;
        records[r.index] = r;
      }
    } catch (...) {
#pragma omp critical(duscar_eig_table_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return records;
}

}  // namespace

double bipartite_entropy(std::span<const cplx> amps, const kernels::Lattice& lat, int cut) {
  cut = resolve_cut(lat, cut);
  if (amps.size() != lat.dim()) throw InvalidArgument("bipartite_entropy: dimension mismatch");
  const auto d = static_cast<std::size_t>(lat.d);
  const std::size_t rows = ipow(d, cut), cols = ipow(d, lat.n_sites - cut);
  const std::vector<double> s = singular_values(amps, rows, cols);
  std::vector<double> p;
  p.reserve(s.size());
  for (double x : s) p.push_back(x * x);
  return std::max(0.0, shannon_entropy(p));
}

double bipartite_entropy(const StateVec& s, int cut) { return bipartite_entropy(s.amps, s.lattice(), cut); }

double page_entropy(int n_sites, int d) { return (n_sites * std::log(static_cast<double>(d)) - 1.0) / 2.0; }

double max_entropy(int n_sites, int d) { return n_sites * std::log(static_cast<double>(d)) / 2.0; }

double reference_growth_curve(int t, int n_sites, int d) {
  if (t < 0) throw InvalidArgument("reference_growth_curve: t must be >= 0");
  const double ln_d = std::log(static_cast<double>(d));
  return std::min(2.0 * t * ln_d, (n_sites / 2) * ln_d);
}

std::vector<double> sz_local(int d) {
  if (d < 2) throw InvalidArgument("sz_local: d must be >= 2");
  std::vector<double> z;
  for (int i = 0; i < d; ++i) z.push_back((2.0 * i - (d - 1)) / (d - 1));
  return z;
}

double sz_density(std::span<const cplx> amps, const kernels::Lattice& lat) {
  return kernels::diagonal_expectation(amps, lat, sz_local(lat.d)) / lat.n_sites;
}

std::vector<double> fidelity_series(const std::vector<StateVec>& traj) {
  if (traj.empty()) throw InvalidArgument("fidelity_series: empty trajectory");
  std::vector<double> f;
  for (const auto& s : traj) f.push_back(std::abs(inner(traj.front(), s)));
  return f;
}

std::vector<double> magnetization_series(const std::vector<StateVec>& traj) {
  std::vector<double> m;
  for (const auto& s : traj) m.push_back(sz_density(s.amps, s.lattice()));
  return m;
}

std::vector<TrajectoryRecord> trajectory_records(const std::vector<StateVec>& traj) {
  const auto f = fidelity_series(traj);
  std::vector<TrajectoryRecord> out;
  for (std::size_t t = 0; t < traj.size(); ++t)
    out.push_back({static_cast<int>(t), bipartite_entropy(traj[t]), f[t], sz_density(traj[t].amps, traj[t].lattice())});
  return out;
}

double percentile(std::vector<double> values, double p) {
  if (values.empty()) throw InvalidArgument("percentile: empty sample");
  if (p < 0.0 || p > 100.0) throw InvalidArgument("percentile: p must be in [0, 100]");
  std::sort(values.begin(), values.end());
  const double h = (static_cast<double>(values.size()) - 1.0) * p / 100.0;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

Spectrum scar_diagonalize(const Subspace& target, int n_sites, int d, double phi) {
  const kernels::Lattice lat{n_sites, d};
  if (target.dim() == 0) throw InvalidArgument("scar_diagonalize: empty target space");
  if (target.dim_total != lat.dim()) throw InvalidArgument("scar_diagonalize: dimension mismatch");
  const auto z = sz_local(d);
  auto breaker_phase = [&](std::size_t x) {
    double s = 0.0;
    for (int n = 0; n < n_sites; ++n) s += z[static_cast<std::size_t>(lat.digit(x, n))];
    return std::polar(1.0, -phi * s);
  };

  if (target.is_product_basis()) {
    std::vector<std::size_t> sorted = target.strings;
    std::sort(sorted.begin(), sorted.end());
    auto inside = [&](std::size_t x) { return std::binary_search(sorted.begin(), sorted.end(), x); };
    std::vector<bool> seen(lat.dim(), false);
    Spectrum out{{}, Op(lat.dim(), target.dim())};
    std::size_t col = 0;
    bool closed = true;
    for (std::size_t s : target.strings) {
      if (seen[s]) continue;
      std::vector<std::size_t> orbit;
      std::size_t y = s;
      do {
        if (!inside(y)) closed = false;
        seen[y] = true;
        orbit.push_back(y);
        y = swap_circuit_image(y, n_sites, d);
      } while (y != s && closed);
      if (!closed) break;
      const std::size_t len = orbit.size();
      const cplx b = breaker_phase(s);
      const double norm = 1.0 / std::sqrt(static_cast<double>(len));
      for (std::size_t q = 0; q < len; ++q, ++col) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(q) / static_cast<double>(len);
        for (std::size_t m = 0; m < len; ++m) out.vectors(orbit[m], col) = norm * std::polar(1.0, -theta * static_cast<double>(m));
        out.values.push_back(std::polar(1.0, theta) * b);
      }
    }
    if (closed) return out;
  }

  // Generic target: diagonalize T^dagger B S T.
  Op st(lat.dim(), target.dim());
  for (std::size_t c = 0; c < target.dim(); ++c)
    for (std::size_t x = 0; x < lat.dim(); ++x) {
      const std::size_t y = swap_circuit_image(x, n_sites, d);
      st(y, c) = breaker_phase(y) * target.basis(x, c);
    }
  const Spectrum small = eig_unitary(target.basis.adjoint() * st);
  return {small.values, target.basis * small.vectors};
}

std::vector<EigRecord> eig_table(const BrickworkCircuit& circuit, const Subspace& target,
                                 const EigTableOptions& options) {
  if (target.dim_total != circuit.lattice().dim()) throw InvalidArgument("eig_table: target dimension mismatch");
  return table_core(circuit, &target, options);
}

std::vector<EigRecord> dual_eig_table(const BrickworkCircuit& circuit, int tau, const EigTableOptions& options) {
  return table_core(dual_circuit(circuit, tau), nullptr, options);
}

StateVec random_product_state(int n_sites, int d, Rng& rng) {
  std::vector<int> digits;
  for (int n = 0; n < n_sites; ++n) digits.push_back(static_cast<int>(rng.below(static_cast<std::uint64_t>(d))));
  return StateVec::product(d, digits);
}

std::string to_string(NamedState s) {
  switch (s) {
    case NamedState::ZERO: return "ZERO";
    case NamedState::PSI1: return "PSI1";
    case NamedState::PSI2: return "PSI2";
  }
  return "?";
}

NamedState named_state_from_string(const std::string& s) {
  if (s == "ZERO") return NamedState::ZERO;
  if (s == "PSI1") return NamedState::PSI1;
  if (s == "PSI2") return NamedState::PSI2;
  throw InvalidArgument("unknown named state: " + s);
}

StateVec named_state(NamedState tag, int n_sites, int d) {
  if (n_sites < 2 || d < 2) throw InvalidArgument("named_state: need N >= 2 and d >= 2");
  const double h = 1.0 / std::sqrt(2.0);
  std::vector<int> digits(static_cast<std::size_t>(n_sites), 0);
  switch (tag) {
    case NamedState::ZERO: return StateVec::product(d, digits);
    case NamedState::PSI1: {
      // |0>^(N-1) (|0> + |d-1>)/sqrt2; the last site is the least significant digit
      StateVec s = StateVec::product(d, digits);
      s.amps[0] = h;
      s.amps[static_cast<std::size_t>(d - 1)] = h;
      return s;
    }
    case NamedState::PSI2: {
      if (n_sites % 4 != 0) throw InvalidArgument("named_state: PSI2 requires N divisible by 4");
      // |0 0 d-1 d-1>^(N/4-1) |0 0 d-1> (|d-1> + |1>)/sqrt2
      for (int n = 0; n < n_sites; ++n) digits[static_cast<std::size_t>(n)] = (n % 4 < 2) ? 0 : d - 1;
      StateVec a = StateVec::product(d, digits);
      digits.back() = 1;
      const StateVec b = StateVec::product(d, digits);
      for (std::size_t i = 0; i < a.amps.size(); ++i) a.amps[i] = h * (a.amps[i] + b.amps[i]);
      return a;
    }
  }
  throw InvalidArgument("named_state: unknown tag");
}

}  // namespace duscar
