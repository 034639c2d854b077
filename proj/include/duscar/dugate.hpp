#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "duscar/linalg.hpp"

namespace duscar {

/// Hermitian generators of a dual-unitary gate:
///   u+ (x) u- = exp{i(f+ (x) I + I (x) f-)},  v- (x) v+ = exp{i(g- (x) I + I (x) g+)},
///   V = exp{i sum_j h^(j) (x) |j><j|}.
struct GenSet {
  Op f_plus, f_minus, g_plus, g_minus;
  std::vector<Op> h;  // h[j] is controlled on the second qudit being |j>

  int dim() const { return static_cast<int>(f_plus.rows()); }
  static GenSet zero(int d);
  /// Draws f+, f-, g+, g-, h^(0..d-1) in that order with random_hermitian.
  static GenSet random(int d, Rng& rng);
  /// Throws InvalidArgument unless every member is d x d and Hermitian within 1e-10.
  void validate() const;

  friend bool operator==(const GenSet&, const GenSet&) = default;
};

enum class GateForm { DU1, DU2 };

std::string_view to_string(GateForm f);
GateForm gate_form_from_string(std::string_view s);

struct DuGate {
  int d = 0;
  Op u;
  GenSet gens;
  GateForm form = GateForm::DU1;
  std::uint64_t seed = 0;  // provenance only; 0 when not drawn from a seed

  friend bool operator==(const DuGate&, const DuGate&) = default;
};

Op swap_gate(int d);

/// V = exp{i sum_j h^(j) (x) |j><j|}, evaluated block-wise as sum_j exp(i h^(j)) (x) |j><j|.
Op build_v(const std::vector<Op>& h);

DuGate build_du1(const GenSet& gens, std::uint64_t seed = 0);
/// S g.u S; requires g.form == DU1.
DuGate build_du2(const DuGate& g);

/// Space-time dual: <k l| dual(U) |i j> = <j l| U |i k>.
Op dual(const Op& u);
bool is_dual_unitary(const Op& u, double tol);

/// (v+^T (x) u-) S V (v- (x) u+^T) with the factors exp(i f+-), exp(i g+-).
Op dual_du1_closed_form(const GenSet& gens);
/// (v-^T (x) u+) V^T S (v+ (x) u-^T).
Op dual_du2_closed_form(const GenSet& gens);

/// Qubit dual-unitary family e^{i phase}(u+ (x) u-) exp{-i pi/4 (XX + YY + J ZZ)} (w- (x) w+).
/// The returned gate carries no generator provenance.
DuGate build_du_qubit(const Op& u_plus, const Op& u_minus, const Op& w_minus, const Op& w_plus, double j,
                      double phase);

/// Local dimension d of a d^2 x d^2 operator; throws if the size is not a perfect square.
int local_dim_of(const Op& u);

}  // namespace duscar
