#include "duscar/dugate.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace duscar {

GenSet GenSet::zero(int d) {
  const auto n = static_cast<std::size_t>(d);
  GenSet g{Op(n, n), Op(n, n), Op(n, n), Op(n, n), {}};
  g.h.assign(n, Op(n, n));
  return g;
}

GenSet GenSet::random(int d, Rng& rng) {
  GenSet g;
  g.f_plus = random_hermitian(d, rng);
  g.f_minus = random_hermitian(d, rng);
  g.g_plus = random_hermitian(d, rng);
  g.g_minus = random_hermitian(d, rng);
  for (int j = 0; j < d; ++j) g.h.push_back(random_hermitian(d, rng));
  return g;
}

void GenSet::validate() const {
  const auto n = f_plus.rows();
  if (n < 2) throw InvalidArgument("GenSet: local dimension must be >= 2");
  if (h.size() != n) throw InvalidArgument("GenSet: need exactly d controlled generators h^(j)");
  auto check = [n](const Op& m, const char* name) {
    if (m.rows() != n || m.cols() != n) throw InvalidArgument(std::string("GenSet: ") + name + " has wrong shape");
    if (!m.is_hermitian(tol::construction)) throw InvalidArgument(std::string("GenSet: ") + name + " is not Hermitian");
  };
  check(f_plus, "f+");
  check(f_minus, "f-");
  check(g_plus, "g+");
  check(g_minus, "g-");
  for (const auto& hj : h) check(hj, "h^(j)");
}

std::string_view to_string(GateForm f) { return f == GateForm::DU1 ? "DU1" : "DU2"; }

GateForm gate_form_from_string(std::string_view s) {
  if (s == "DU1") return GateForm::DU1;
  if (s == "DU2") return GateForm::DU2;
  throw InvalidArgument("unknown gate form: " + std::string(s));
}

int local_dim_of(const Op& u) {
  if (!u.square()) throw InvalidArgument("two-qudit operator must be square");
  const auto d = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(u.rows()))));
  if (d * d != u.rows() || d < 1) throw InvalidArgument("two-qudit operator dimension must be d^2");
  return static_cast<int>(d);
}

Op swap_gate(int d) {
  if (d < 2) throw InvalidArgument("swap_gate: d must be >= 2");
  const auto n = static_cast<std::size_t>(d);
  Op s(n * n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) s(j * n + i, i * n + j) = 1.0;
  return s;
}

Op build_v(const std::vector<Op>& h) {
  const std::size_t n = h.size();
  if (n < 2) throw InvalidArgument("build_v: need d >= 2 generators");
  Op v(n * n, n * n);
  for (std::size_t j = 0; j < n; ++j) {
    if (h[j].rows() != n || h[j].cols() != n) throw InvalidArgument("build_v: h^(j) must be d x d");
    const Op block = expm_i(h[j]);
    // rows/cols (a, j) with the control qudit fixed to j
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) v(a * n + j, b * n + j) = block(a, b);
  }
  return v;
}

DuGate build_du1(const GenSet& gens, std::uint64_t seed) {
  gens.validate();
  const auto n = static_cast<std::size_t>(gens.dim());
  const Op id = Op::identity(n);
  const Op outer = expm_i(kron(gens.f_plus, id) + kron(id, gens.f_minus));
  const Op inner = expm_i(kron(gens.g_minus, id) + kron(id, gens.g_plus));
  DuGate g;
  g.d = gens.dim();
  g.u = outer * swap_gate(g.d) * build_v(gens.h) * inner;
  g.gens = gens;
  g.form = GateForm::DU1;
  g.seed = seed;
  return g;
}

DuGate build_du2(const DuGate& g) {
  if (g.form != GateForm::DU1) throw InvalidArgument("build_du2: input gate must be DU1");
  const Op s = swap_gate(g.d);
  DuGate r = g;
  r.u = s * g.u * s;
  r.form = GateForm::DU2;
  return r;
}

Op dual(const Op& u) {
  const auto d = static_cast<std::size_t>(local_dim_of(u));
  Op r(d * d, d * d);
  // u[(k,l),(i,j)] -> r[(j,l),(i,k)]
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t l = 0; l < d; ++l)
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) r(j * d + l, i * d + k) = u(k * d + l, i * d + j);
  return r;
}

bool is_dual_unitary(const Op& u, double tol) {
  if (!u.square()) return false;
  const auto d = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(u.rows()))));
  if (d * d != u.rows()) return false;
  return u.is_unitary(tol) && dual(u).is_unitary(tol);
}

Op dual_du1_closed_form(const GenSet& gens) {
  gens.validate();
  const Op up = expm_i(gens.f_plus), um = expm_i(gens.f_minus);
  const Op vp = expm_i(gens.g_plus), vm = expm_i(gens.g_minus);
  return kron(vp.transpose(), um) * swap_gate(gens.dim()) * build_v(gens.h) * kron(vm, up.transpose());
}

Op dual_du2_closed_form(const GenSet& gens) {
  gens.validate();
  const Op up = expm_i(gens.f_plus), um = expm_i(gens.f_minus);
  const Op vp = expm_i(gens.g_plus), vm = expm_i(gens.g_minus);
  return kron(vm.transpose(), up) * build_v(gens.h).transpose() * swap_gate(gens.dim()) *
         kron(vp, um.transpose());
}

DuGate build_du_qubit(const Op& u_plus, const Op& u_minus, const Op& w_minus, const Op& w_plus, double j,
                      double phase) {
  for (const Op* m : {&u_plus, &u_minus, &w_minus, &w_plus}) {
    if (m->rows() != 2 || !m->is_unitary(tol::construction)) {
      throw InvalidArgument("build_du_qubit: local factors must be 2x2 unitaries");
    }
  }
  Op x(2, 2), y(2, 2), z(2, 2);
  x(0, 1) = x(1, 0) = 1.0;
  y(0, 1) = cplx(0, -1);
  y(1, 0) = cplx(0, 1);
  z(0, 0) = 1.0;
  z(1, 1) = -1.0;
  // exp{-i pi/4 K} = expm_i(-pi/4 K)
  Op k = kron(x, x) + kron(y, y) + cplx(j) * kron(z, z);
  const Op core = expm_i(cplx(-std::numbers::pi / 4.0) * k);
  DuGate g;
  g.d = 2;
  g.u = std::polar(1.0, phase) * (kron(u_plus, u_minus) * core * kron(w_minus, w_plus));
  g.form = GateForm::DU1;
  return g;
}

}  // namespace duscar
