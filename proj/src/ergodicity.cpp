#include "duscar/ergodicity.hpp"

#include <algorithm>
#include <cmath>

namespace duscar {

namespace {

struct Counts {
  int unit_eigenvalue = 0;
  int unit_modulus = 0;
  double second_modulus = 0.0;
};

Counts count_unit(const ChannelMatrix& ch, double tol) {
  Counts c;
  std::vector<double> mod;
  for (auto z : ch.eigenvalues()) {
    if (std::abs(z - 1.0) < tol) ++c.unit_eigenvalue;
    if (std::abs(z) > 1.0 - tol) ++c.unit_modulus;
    mod.push_back(std::abs(z));
  }
  std::sort(mod.rbegin(), mod.rend());
  c.second_modulus = mod.size() > 1 ? mod[1] : 0.0;
  return c;
}

}  // namespace

std::string to_string(Direction dir) { return dir == Direction::PLUS ? "plus" : "minus"; }

std::string to_string(ErgodicClass c) {
  switch (c) {
    case ErgodicClass::NON_ERGODIC: return "NON_ERGODIC";
    case ErgodicClass::ERGODIC: return "ERGODIC";
    case ErgodicClass::ERGODIC_AND_MIXING: return "ERGODIC_AND_MIXING";
  }
  return "?";
}

Op ChannelMatrix::apply(const Op& o) const {
  const auto n = static_cast<std::size_t>(d);
  if (o.rows() != n || o.cols() != n) throw InvalidArgument("ChannelMatrix::apply: operator must be d x d");
  const std::vector<cplx> v = matrix * o.data();
  return Op(n, n, v);
}

std::vector<cplx> ChannelMatrix::eigenvalues() const { return eigenvalues_general(matrix); }

ChannelMatrix half_channel(const Op& gate, Direction dir) {
  if (!gate.is_unitary(tol::unitary_input)) throw InvalidArgument("half_channel: gate is not unitary");
  const int d = local_dim_of(gate);
  const auto n = static_cast<std::size_t>(d);
  const Op id = Op::identity(n);
  const Op gate_dag = gate.adjoint();
  ChannelMatrix ch{d, dir, Op(n * n, n * n)};
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const Op e = Op::unit(n, a, b);
      const Op x = gate_dag * (dir == Direction::PLUS ? kron(e, id) : kron(id, e)) * gate;
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t f = 0; f < n; ++f) {
          cplx acc = 0.0;
          for (std::size_t i = 0; i < n; ++i)
            acc += dir == Direction::PLUS ? x(i * n + c, i * n + f) : x(c * n + i, f * n + i);
          ch.matrix(c * n + f, a * n + b) = acc / static_cast<double>(d);
        }
    }
  return ch;
}

ChannelMatrix half_channel(const DuGate& gate, Direction dir) { return half_channel(gate.u, dir); }

ChannelMatrix full_channel(const DuGate& gate_even, const DuGate& gate_odd, Direction dir) {
  if (gate_even.d != gate_odd.d) throw InvalidArgument("full_channel: gates must share d");
  const ChannelMatrix e = half_channel(gate_even, dir);
  const ChannelMatrix o = half_channel(gate_odd, dir);
  return {e.d, dir, o.matrix * e.matrix};
}

Op choi_matrix(const ChannelMatrix& ch) {
  const auto n = static_cast<std::size_t>(ch.d);
  Op c(n * n, n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) c(a * n + x, b * n + y) = ch.matrix(x * n + y, a * n + b);
  return c;
}

ErgodicityReport classify(const ChannelMatrix& plus, const ChannelMatrix& minus, double tol) {
  const Counts p = count_unit(plus, tol);
  const Counts m = count_unit(minus, tol);
  if (p.unit_eigenvalue == 0 || m.unit_eigenvalue == 0) {
    throw NumericalError("classify: channel has no unit eigenvalue (not unital)");
  }
  ErgodicityReport r;
  r.unit_eigenvalue_count_plus = p.unit_eigenvalue;
  r.unit_eigenvalue_count_minus = m.unit_eigenvalue;
  r.unit_modulus_count_plus = p.unit_modulus;
  r.unit_modulus_count_minus = m.unit_modulus;
  r.second_modulus_plus = p.second_modulus;
  r.second_modulus_minus = m.second_modulus;
  if (p.unit_eigenvalue > 1 || m.unit_eigenvalue > 1) r.verdict = ErgodicClass::NON_ERGODIC;
  else if (p.unit_modulus == 1 && m.unit_modulus == 1) r.verdict = ErgodicClass::ERGODIC_AND_MIXING;
  else r.verdict = ErgodicClass::ERGODIC;
  return r;
}

}  // namespace duscar
