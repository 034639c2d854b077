#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "duscar/dugate.hpp"
#include "duscar/linalg.hpp"

namespace duscar {

/// Local projector P = I - sum_{(x', x'') in X} |x' x''><x' x''|.
struct ProjectorSpec {
  int d = 0;
  std::vector<std::pair<int, int>> x_set;

  void validate() const;
  bool contains(int first, int second) const;

  static ProjectorSpec example_a(int d);  // X = {00}
  static ProjectorSpec example_b(int d);  // X = {00, (d-1)(d-1), 0(d-1), (d-1)0}
  static ProjectorSpec two_scar(int d);   // X = {00, (d-1)(d-1)}
  static ProjectorSpec unconstrained(int d);
  /// example_a | example_b | two_scar | unconstrained
  static ProjectorSpec named(const std::string& name, int d);
};

/// Orthonormal columns spanning a subspace of the d^N-dimensional space.
struct Subspace {
  std::size_t dim_total = 0;
  Op basis;  // dim_total x dim()
  /// When nonempty, basis column c is the computational basis state strings[c].
  std::vector<std::size_t> strings;

  std::size_t dim() const { return basis.cols(); }
  bool is_product_basis() const { return !strings.empty() && strings.size() == dim(); }
  /// ||basis^dagger v||^2
  double overlap(std::span<const cplx> v) const;
};

Op local_projector(const ProjectorSpec& spec);
GenSet constrain_generators(const GenSet& raw, const ProjectorSpec& spec);
bool verify_conditions(const GenSet& gens, const ProjectorSpec& spec);

Subspace common_kernel(const ProjectorSpec& spec, int n_sites);
Subspace target_space(const Subspace& kernel, int n_sites, int d);

/// diag_j exp{-i phi (2j - (d-1)) / (d-1)}
Op degeneracy_breaker(double phi, int d);

/// The N/2 distinct scar eigenphases 4 pi k / N, mapped to (-pi, pi] and sorted.
std::vector<double> scar_eigenphase_set(int n_sites);

enum class LayerMode { DU1_DU2, SAME_GATE };
std::string to_string(LayerMode m);
LayerMode layer_mode_from_string(const std::string& s);

struct ScarModel {
  int n_sites = 8;
  int d = 3;
  std::string spec_name = "example_a";
  ProjectorSpec spec;
  GenSet gens_even;
  GenSet gens_odd;
  double phi = 0.0;
  std::uint64_t seed = 0;
  LayerMode layer_mode = LayerMode::DU1_DU2;
};

/// Draws raw generators from `seed`, constrains them to the named spec, and checks the
/// embedding conditions. Throws InvalidArgument on an invalid lattice or spec.
ScarModel make_scar_model(int n_sites, int d, const std::string& spec_name, std::uint64_t seed, double phi,
                          LayerMode mode);

}  // namespace duscar
