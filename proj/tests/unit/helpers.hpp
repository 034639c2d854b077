#pragma once

// Independent dense oracles for the tests. Nothing here calls the production kernels.

#include <cmath>
#include <vector>

#include "duscar/circuit.hpp"
#include "duscar/linalg.hpp"

namespace testing {

using duscar::cplx;
using duscar::Op;

inline std::size_t ipow(std::size_t b, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

inline std::vector<int> digits_of(std::size_t x, int n_sites, int d) {
  std::vector<int> out(static_cast<std::size_t>(n_sites));
  for (int s = n_sites - 1; s >= 0; --s) {
    out[static_cast<std::size_t>(s)] = static_cast<int>(x % static_cast<std::size_t>(d));
    x /= static_cast<std::size_t>(d);
  }
  return out;
}

inline std::size_t index_of(const std::vector<int>& digits, int d) {
  std::size_t x = 0;
  for (int v : digits) x = x * static_cast<std::size_t>(d) + static_cast<std::size_t>(v);
  return x;
}

/// Full d^N matrix of `gate` acting on (site, site+1 mod N), built entry by entry.
inline Op embed_gate(const Op& gate, int site, int n_sites, int d) {
  const std::size_t dim = ipow(static_cast<std::size_t>(d), n_sites);
  const int a = site, b = (site + 1) % n_sites;
  Op m(dim, dim);
  for (std::size_t col = 0; col < dim; ++col) {
    const auto in = digits_of(col, n_sites, d);
    const std::size_t gin = static_cast<std::size_t>(in[a] * d + in[b]);
    for (int p = 0; p < d; ++p)
      for (int q = 0; q < d; ++q) {
        auto out = in;
        out[a] = p;
        out[b] = q;
        m(index_of(out, d), col) += gate(static_cast<std::size_t>(p * d + q), gin);
      }
  }
  return m;
}

/// U_odd U_even (then breaker) as a product of embedded dense gates.
inline Op dense_floquet(const duscar::BrickworkCircuit& c) {
  const std::size_t dim = ipow(static_cast<std::size_t>(c.d), c.n_sites);
  Op u = Op::identity(dim);
  for (int n = 0; n < c.n_sites; n += 2) u = embed_gate(c.gate_even.u, n, c.n_sites, c.d) * u;
  for (int n = 1; n < c.n_sites; n += 2) u = embed_gate(c.gate_odd.u, n, c.n_sites, c.d) * u;
  if (c.breaker) {
    Op b = *c.breaker;
    for (int n = 1; n < c.n_sites; ++n) b = duscar::kron(b, *c.breaker);
    u = b * u;
  }
  return u;
}

inline std::vector<cplx> random_state(std::size_t dim, duscar::Rng& rng) {
  std::vector<cplx> v(dim);
  double norm = 0.0;
  for (auto& z : v) {
    z = cplx(rng.uniform() - 0.5, rng.uniform() - 0.5);
    norm += std::norm(z);
  }
  for (auto& z : v) z /= std::sqrt(norm);
  return v;
}

inline double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline Op random_matrix(std::size_t rows, std::size_t cols, duscar::Rng& rng) {
  Op m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = cplx(rng.uniform() - 0.5, rng.uniform() - 0.5);
  return m;
}

/// exp(iH) by Taylor series with scaling and squaring, independent of the eigensolvers.
inline Op expm_i_taylor(const Op& h) {
  double norm = 0.0;
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = 0; j < h.cols(); ++j) norm = std::max(norm, std::abs(h(i, j)));
  int squarings = 0;
  double scale = 1.0;
  while (norm * static_cast<double>(h.rows()) * scale > 0.25) {
    scale *= 0.5;
    ++squarings;
  }
  const Op a = cplx(0.0, scale) * h;
  Op term = Op::identity(h.rows()), sum = Op::identity(h.rows());
  for (int k = 1; k < 30; ++k) {
    term = cplx(1.0 / k) * (term * a);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

}  // namespace testing
