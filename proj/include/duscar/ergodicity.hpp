#pragma once

#include <string>
#include <vector>

#include "duscar/dugate.hpp"
#include "duscar/linalg.hpp"

namespace duscar {

enum class Direction { PLUS, MINUS };
std::string to_string(Direction dir);

/// Superoperator on single-qudit operators; o is vectorized row-major, vec(o)[a d + b] = o(a, b).
struct ChannelMatrix {
  int d = 0;
  Direction direction = Direction::PLUS;
  Op matrix;

  Op apply(const Op& o) const;
  std::vector<cplx> eigenvalues() const;
};

/// plus: o -> Tr_1[U^dagger (o (x) I) U] / d;  minus: o -> Tr_2[U^dagger (I (x) o) U] / d
ChannelMatrix half_channel(const Op& gate, Direction dir);
ChannelMatrix half_channel(const DuGate& gate, Direction dir);
/// M_odd M_even
ChannelMatrix full_channel(const DuGate& gate_even, const DuGate& gate_odd, Direction dir);

/// sum_ab |a><b| (x) M(|a><b|)
Op choi_matrix(const ChannelMatrix& channel);

enum class ErgodicClass { NON_ERGODIC, ERGODIC, ERGODIC_AND_MIXING };
std::string to_string(ErgodicClass c);

struct ErgodicityReport {
  ErgodicClass verdict = ErgodicClass::ERGODIC;
  int unit_eigenvalue_count_plus = 0;  // |lambda - 1| < tol
  int unit_eigenvalue_count_minus = 0;
  int unit_modulus_count_plus = 0;     // |lambda| > 1 - tol
  int unit_modulus_count_minus = 0;
  double second_modulus_plus = 0.0;    // second-largest |lambda|
  double second_modulus_minus = 0.0;
};

inline constexpr double kUnitCircleTol = 1e-8;

/// Throws NumericalError if either channel has no eigenvalue 1.
ErgodicityReport classify(const ChannelMatrix& plus, const ChannelMatrix& minus, double tol = kUnitCircleTol);

}  // namespace duscar
