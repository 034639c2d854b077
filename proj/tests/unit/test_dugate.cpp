#include <doctest.h>

#include <cmath>
#include <numbers>

#include "duscar/dugate.hpp"
#include "duscar/gate_io.hpp"
#include "helpers.hpp"

using namespace duscar;

namespace {

// dual by explicit tensor reshuffle: t[k][l][i][j] = <k l|U|i j>; dual swaps k <-> j.
Op dual_oracle(const Op& u, int d) {
  const auto n = static_cast<std::size_t>(d);
  Op r(n * n, n * n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r(j * n + l, i * n + k) = u(k * n + l, i * n + j);
  return r;
}

// |a - e^{i theta} b| minimized over the global phase theta.
double diff_up_to_phase(const Op& a, const Op& b) {
  cplx overlap = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) overlap += std::conj(b(i, j)) * a(i, j);
  const cplx phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : cplx(1.0);
  return max_abs_diff(a, phase * b);
}

Op pauli_z_rotation(double angle) {
  // exp(-i angle sigma_z)
  const std::vector<cplx> diag{std::polar(1.0, -angle), std::polar(1.0, angle)};
  return Op::diagonal(diag);
}

Op controlled_z_power(double alpha) {
  const std::vector<cplx> diag{1.0, 1.0, 1.0, std::polar(1.0, std::numbers::pi * alpha)};
  return Op::diagonal(diag);
}

}  // namespace

TEST_CASE("swap_gate") {
  const Op s = swap_gate(2);
  CHECK(s(2, 1) == cplx(1.0));  // S|01> = |10>
  for (int d : {2, 3, 4}) {
    const Op sd = swap_gate(d);
    CHECK(sd * sd == Op::identity(static_cast<std::size_t>(d * d)));
    CHECK(dual(sd) == sd);
    CHECK(is_dual_unitary(sd, 1e-12));
  }
  CHECK_THROWS_AS(swap_gate(1), InvalidArgument);
}

TEST_CASE("build_v") {
  CHECK(max_abs_diff(build_v(GenSet::zero(3).h), Op::identity(9)) < 1e-15);

  const double alpha = 0.37;
  std::vector<Op> h{Op(2, 2), Op(2, 2)};
  h[1](1, 1) = alpha * std::numbers::pi;
  CHECK(max_abs_diff(build_v(h), controlled_z_power(alpha)) < 1e-14);

  Rng rng(17);
  const GenSet g = GenSet::random(3, rng);
  const Op v = build_v(g.h);
  CHECK(v.is_unitary(1e-10));
  // block structure: control on the second qudit
  CHECK(std::abs(v(0 * 3 + 0, 1 * 3 + 1)) == 0.0);

  std::vector<Op> bad = g.h;
  bad[0](0, 1) += 1.0;
  CHECK_THROWS_AS(build_du1(GenSet{g.f_plus, g.f_minus, g.g_plus, g.g_minus, bad}), InvalidArgument);
}

TEST_CASE("build_du1 / build_du2") {
  CHECK(build_du1(GenSet::zero(3)).u == swap_gate(3));
  const DuGate s{3, swap_gate(3), GenSet::zero(3), GateForm::DU1, 0};
  CHECK(build_du2(s).u == swap_gate(3));
  CHECK_THROWS_AS(build_du2(build_du2(s)), InvalidArgument);

  Rng rng(99);
  for (int d : {2, 3, 4}) {
    for (int trial = 0; trial < 20; ++trial) {
      const GenSet g = GenSet::random(d, rng);
      const DuGate g1 = build_du1(g);
      const DuGate g2 = build_du2(g1);
      CHECK(g2.form == GateForm::DU2);
      CHECK(is_dual_unitary(g1.u, 1e-10));
      CHECK(is_dual_unitary(g2.u, 1e-10));
      // the product form equals the three exponentials applied one after the other
      const Op ref = kron(testing::expm_i_taylor(g.f_plus), testing::expm_i_taylor(g.f_minus)) * swap_gate(d) *
                     build_v(g.h) * kron(testing::expm_i_taylor(g.g_minus), testing::expm_i_taylor(g.g_plus));
      CHECK(max_abs_diff(g1.u, ref) < 1e-10);
      CHECK(max_abs_diff(dual(g1.u), dual_du1_closed_form(g)) < 1e-10);
      CHECK(max_abs_diff(dual(g2.u), dual_du2_closed_form(g)) < 1e-10);
      CHECK(max_abs_diff(dual(g2.u), dual(g1.u).transpose()) < 1e-10);
    }
  }
}

TEST_CASE("dual map algebra") {
  Rng rng(5);
  for (int d : {2, 3}) {
    const auto n = static_cast<std::size_t>(d * d);
    const Op u = testing::random_matrix(n, n, rng);
    CHECK(dual(u) == dual_oracle(u, d));
    CHECK(dual(dual(u)) == u);

    const GenSet g = GenSet::random(d, rng);
    const Op sv = swap_gate(d) * build_v(g.h);
    CHECK(max_abs_diff(dual(sv), sv) < 1e-12);
  }
  // dual(I) = (sum_j |jj>)(sum_i <ii|), rank one
  const Op di = dual(Op::identity(9));
  for (std::size_t r = 0; r < 9; ++r)
    for (std::size_t c = 0; c < 9; ++c) CHECK(di(r, c) == cplx((r % 4 == 0 && c % 4 == 0) ? 1.0 : 0.0));
  CHECK_FALSE(is_dual_unitary(Op::identity(9), 1e-10));
  CHECK_THROWS_AS(dual(Op::identity(5)), InvalidArgument);
  CHECK_THROWS_AS(dual(Op(4, 2)), InvalidArgument);
}

TEST_CASE("local unitary covariance of the dual") {
  Rng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const Op u = build_du1(GenSet::random(3, rng)).u;
    const Op a = random_unitary(3, rng), b = random_unitary(3, rng), c = random_unitary(3, rng),
             e = random_unitary(3, rng);
    const Op lhs = dual(kron(a, b) * u * kron(c, e));
    const Op rhs = kron(e.transpose(), b) * dual(u) * kron(c, a.transpose());
    CHECK(max_abs_diff(lhs, rhs) < 1e-10);
  }
}

TEST_CASE("qubit family") {
  const Op id = Op::identity(2);
  const DuGate s = build_du_qubit(id, id, id, id, 1.0, 0.0);
  CHECK(diff_up_to_phase(s.u, swap_gate(2)) < 1e-12);

  Rng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const double j = 4.0 * rng.uniform() - 2.0;
    const DuGate g = build_du_qubit(random_unitary(2, rng), random_unitary(2, rng), random_unitary(2, rng),
                                    random_unitary(2, rng), j, rng.uniform());
    CHECK(is_dual_unitary(g.u, 1e-10));
  }
  CHECK_THROWS_AS(build_du_qubit(cplx(2.0) * id, id, id, id, 0.0, 0.0), InvalidArgument);
}

TEST_CASE("qubit family as S (C_z)^alpha with alpha = 1 - J") {
  // exp{-i pi/4 (XX+YY+J ZZ)} = e^{i phi} S (C_z)^alpha (v (x) v), v = exp(-i pi/4 (J-1) sigma_z).
  // The exponent of C_z is 1 - J; with alpha = J - 1 in both places the identity fails.
  const Op id = Op::identity(2);
  for (double j : {0.0, 0.3, 0.5, 1.7}) {
    const Op xxz = build_du_qubit(id, id, id, id, j, 0.0).u;
    const Op v = pauli_z_rotation(std::numbers::pi / 4.0 * (j - 1.0));
    std::vector<Op> h{Op(2, 2), Op(2, 2)};
    h[1](1, 1) = (1.0 - j) * std::numbers::pi;
    const Op built = swap_gate(2) * build_v(h) * kron(v, v);
    CHECK(diff_up_to_phase(xxz, built) < 1e-12);
    CHECK(max_abs_diff(build_v(h), controlled_z_power(1.0 - j)) < 1e-14);

    if (j != 0.0) {  // C_z^{+1} = C_z^{-1}
      const Op same_sign = swap_gate(2) * controlled_z_power(j - 1.0) * kron(v, v);
      CHECK(diff_up_to_phase(xxz, same_sign) > 1e-3);
    }
  }
}

TEST_CASE("gate JSON round trip is exact") {
  Rng rng(77);
  const DuGate g = build_du1(GenSet::random(3, rng), 77);
  const DuGate back = gate_from_json(gate_to_json(g));
  CHECK(back == g);
  const DuGate g2 = build_du2(g);
  CHECK(gate_from_json(gate_to_json(g2)) == g2);
  CHECK(gate_from_json(nlohmann::json::parse(gate_to_json(g).dump())) == g);

  nlohmann::json broken = gate_to_json(g);
  broken["generators"]["h"].erase(0);
  CHECK_THROWS_AS(gate_from_json(broken), InvalidArgument);
  CHECK_THROWS_AS(gate_from_json(nlohmann::json::object()), InvalidArgument);
}
