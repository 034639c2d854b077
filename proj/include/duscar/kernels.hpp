#pragma once

// State-vector kernels on a ring of N qudits (site 0 = most significant digit).
//
// The kernels in duscar::kernels are the production versions: in place, blocked,
// and parallelized with OpenMP. duscar::kernels::reference holds straightforward
// serial versions that loop over output basis states digit by digit; they are
// kept for the equivalence tests and the benchmark, never for production paths.

#include <cstddef>
#include <span>
#include <vector>

#include "duscar/linalg.hpp"

namespace duscar::kernels {

struct Lattice {
  int n_sites = 0;
  int d = 0;

  std::size_t dim() const;
  /// d^(N-1-site): distance between consecutive digit values of `site`.
  std::size_t stride(int site) const;
  int digit(std::size_t index, int site) const;
};

/// Applies a d^2 x d^2 gate to sites (site, site+1 mod N), the first tensor
/// factor acting on `site`.
void apply_two_site(std::span<cplx> amps, const Lattice& lat, std::span<const cplx> gate, int site);

/// Multiplies every amplitude by prod_n diag[i_n].
void apply_product_diagonal(std::span<cplx> amps, const Lattice& lat, std::span<const cplx> diag);

/// <psi| sum_n z(i_n) |psi> for a real single-site diagonal observable.
double diagonal_expectation(std::span<const cplx> amps, const Lattice& lat, std::span<const double> local);

/// Moves the content of site n to site n+shift (mod N): out[T x] = in[x].
void translate(std::span<const cplx> in, std::span<cplx> out, const Lattice& lat, int shift);
std::size_t translate_index(std::size_t index, const Lattice& lat, int shift);

namespace reference {

std::vector<cplx> apply_two_site(std::span<const cplx> amps, const Lattice& lat, std::span<const cplx> gate,
                                 int site);
void apply_product_diagonal(std::span<cplx> amps, const Lattice& lat, std::span<const cplx> diag);
double diagonal_expectation(std::span<const cplx> amps, const Lattice& lat, std::span<const double> local);

}  // namespace reference

}  // namespace duscar::kernels
