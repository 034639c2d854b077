#include "duscar/kernels.hpp"

namespace duscar::kernels {

std::size_t Lattice::dim() const {
  std::size_t r = 1;
  for (int i = 0; i < n_sites; ++i) r *= static_cast<std::size_t>(d);
  return r;
}

std::size_t Lattice::stride(int site) const {
  std::size_t r = 1;
  for (int i = site + 1; i < n_sites; ++i) r *= static_cast<std::size_t>(d);
  return r;
}

int Lattice::digit(std::size_t index, int site) const {
  return static_cast<int>((index / stride(site)) % static_cast<std::size_t>(d));
}

namespace reference {

std::vector<cplx> apply_two_site(std::span<const cplx> amps, const Lattice& lat, std::span<const cplx> gate,
                                 int site) {
  const int a = site;
  const int b = (site + 1) % lat.n_sites;
  const auto d = static_cast<std::size_t>(lat.d);
  const std::size_t sa = lat.stride(a), sb = lat.stride(b);
  std::vector<cplx> out(amps.size());
  for (std::size_t x = 0; x < amps.size(); ++x) {
    const std::size_t ia = (x / sa) % d, ib = (x / sb) % d;
    const std::size_t base = x - ia * sa - ib * sb;
    const std::size_t row = ia * d + ib;
    cplx acc = 0.0;
    for (std::size_t ja = 0; ja < d; ++ja)
      for (std::size_t jb = 0; jb < d; ++jb)
        acc += gate[row * d * d + ja * d + jb] * amps[base + ja * sa + jb * sb];
    out[x] = acc;
  }
  return out;
}

void apply_product_diagonal(std::span<cplx> amps, const Lattice& lat, std::span<const cplx> diag) {
  for (std::size_t x = 0; x < amps.size(); ++x) {
    cplx f = 1.0;
    for (int n = 0; n < lat.n_sites; ++n) f *= diag[static_cast<std::size_t>(lat.digit(x, n))];
    amps[x] *= f;
  }
}

double diagonal_expectation(std::span<const cplx> amps, const Lattice& lat, std::span<const double> local) {
  double acc = 0.0;
  for (std::size_t x = 0; x < amps.size(); ++x) {
    double z = 0.0;
    for (int n = 0; n < lat.n_sites; ++n) z += local[static_cast<std::size_t>(lat.digit(x, n))];
    acc += z * std::norm(amps[x]);
  }
  return acc;
}

}  // namespace reference

}  // namespace duscar::kernels
