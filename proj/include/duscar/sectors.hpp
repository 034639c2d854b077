#pragma once

// Eigensystem of a brickwork Floquet operator. The circuit commutes with the
// two-site translation T (content of site n moves to n+2), so U is block diagonal
// in the N/2 momentum sectors of T. Each block is diagonalized separately and the
// eigenvectors are expanded back to the full space on demand.

#include <cstddef>
#include <vector>

#include "duscar/circuit.hpp"
#include "duscar/linalg.hpp"

namespace duscar {

/// Orbits of basis strings under the two-site translation.
struct TranslationOrbits {
  kernels::Lattice lat;
  int period = 0;                      // N/2
  std::vector<std::size_t> offsets;    // orbit r occupies members[offsets[r] .. offsets[r+1])
  std::vector<std::size_t> members;    // T^m rep, m = 0 .. len-1; members[offsets[r]] is the smallest string

  std::size_t count() const { return offsets.size() - 1; }
  std::size_t length(std::size_t r) const { return offsets[r + 1] - offsets[r]; }
  /// Momentum k is allowed for an orbit of length p iff k p = 0 mod period.
  bool allowed(std::size_t r, int k) const;
};

TranslationOrbits translation_orbits(const kernels::Lattice& lat);

enum class SpectrumMethod { TRANSLATION_SECTORS, DENSE };

class FloquetEigensystem {
 public:
  static FloquetEigensystem compute(const BrickworkCircuit& circuit, SpectrumMethod method,
                                    std::size_t cap = kDenseCap);

  std::size_t size() const { return order_.size(); }
  std::size_t dim() const { return dim_; }
  /// Eigenpairs are indexed in ascending eigenphase order.
  cplx value(std::size_t i) const;
  double phase(std::size_t i) const { return eigenphase(value(i)); }
  /// Normalized eigenvector in the full d^N space.
  std::vector<cplx> vector(std::size_t i) const;

 private:
  struct Entry {
    int block;
    std::size_t col;
  };

  std::size_t dim_ = 0;
  int period_ = 1;
  TranslationOrbits orbits_;
  std::vector<std::vector<std::size_t>> block_orbits_;  // per block: orbit ids (empty for DENSE)
  std::vector<Spectrum> blocks_;
  std::vector<Entry> order_;
};

}  // namespace duscar
