#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "duscar/circuit.hpp"
#include "duscar/embedding.hpp"
#include "duscar/linalg.hpp"
#include "duscar/sectors.hpp"

namespace duscar {

/// Half-chain entropy (nats) of the first `cut` sites; cut < 0 means N/2.
double bipartite_entropy(std::span<const cplx> amps, const kernels::Lattice& lat, int cut = -1);
double bipartite_entropy(const StateVec& s, int cut = -1);

double page_entropy(int n_sites, int d);
double max_entropy(int n_sites, int d);
/// min(2 t ln d, (N/2) ln d)
double reference_growth_curve(int t, int n_sites, int d);

/// (2i - (d-1)) / (d-1) for i = 0 .. d-1
std::vector<double> sz_local(int d);
/// <S^z_tot> / N
double sz_density(std::span<const cplx> amps, const kernels::Lattice& lat);

std::vector<double> fidelity_series(const std::vector<StateVec>& traj);
std::vector<double> magnetization_series(const std::vector<StateVec>& traj);

struct TrajectoryRecord {
  int t = 0;
  double entropy = 0.0;
  double fidelity = 0.0;
  double sz_density = 0.0;
};

std::vector<TrajectoryRecord> trajectory_records(const std::vector<StateVec>& traj);

/// Linear interpolation between order statistics (p in [0, 100]).
double percentile(std::vector<double> values, double p);

struct EigRecord {
  std::size_t index = 0;
  double eigenphase = 0.0;
  double entropy = 0.0;
  double sz_density = 0.0;
  bool is_scar = false;
  double scar_overlap = 0.0;
};

/// Eigenbasis of 𝕊 (times the breaker for phi != 0) restricted to the target space. For a
/// target spanned by strings the vectors are Fourier sums over single swap orbits.
Spectrum scar_diagonalize(const Subspace& target, int n_sites, int d, double phi = 0.0);

struct EigTableOptions {
  SpectrumMethod method = SpectrumMethod::TRANSLATION_SECTORS;
  std::size_t cap = kDenseCap;
  double cluster_gap = 1e-8;
  /// Breaker angle used to build the orbit basis for scar clusters.
  double phi = 0.0;
};

/// One record per eigenvector of the Floquet operator, ordered by eigenphase. Every vector
/// is checked against ||U v - lambda v|| <= tol::spectral_residual.
std::vector<EigRecord> eig_table(const BrickworkCircuit& circuit, const Subspace& target,
                                 const EigTableOptions& options = {});

/// Records for the dual Floquet operator; scar fields are left at their defaults.
std::vector<EigRecord> dual_eig_table(const BrickworkCircuit& circuit, int tau, const EigTableOptions& options = {});

StateVec random_product_state(int n_sites, int d, Rng& rng);

enum class NamedState { ZERO, PSI1, PSI2 };
std::string to_string(NamedState s);
NamedState named_state_from_string(const std::string& s);
StateVec named_state(NamedState tag, int n_sites, int d);

}  // namespace duscar
