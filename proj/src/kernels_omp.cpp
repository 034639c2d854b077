#include <algorithm>
#include <array>

#include "duscar/kernels.hpp"

namespace duscar::kernels {

namespace {

// Fixed number of partial sums so reductions do not depend on the thread count.
constexpr std::size_t kReduceChunks = 64;

}  // namespace

void apply_two_site(std::span<cplx> amps, const Lattice& lat, std::span<const cplx> gate, int site) {
  if (lat.n_sites < 2) throw InvalidArgument("apply_two_site: need at least two sites");
  if (site < 0 || site >= lat.n_sites) throw InvalidArgument("apply_two_site: site out of range");
  const auto d = static_cast<std::size_t>(lat.d);
  const std::size_t dd = d * d;
  if (gate.size() != dd * dd) throw InvalidArgument("apply_two_site: gate must be d^2 x d^2");
  if (amps.size() != lat.dim()) throw InvalidArgument("apply_two_site: state dimension mismatch");

  const int a = site;
  const int b = (site + 1) % lat.n_sites;
  const int p = std::min(a, b), q = std::max(a, b);
  const std::size_t sa = lat.stride(a), sb = lat.stride(b);
  const std::size_t sp = lat.stride(p), sq = lat.stride(q);
  std::size_t mid_count = 1;
  for (int k = p + 1; k < q; ++k) mid_count *= d;
  const std::size_t groups = amps.size() / dd;

#pragma omp parallel
  {
    std::vector<cplx> in(dd);
#pragma omp for schedule(static)
    for (std::size_t r = 0; r < groups; ++r) {
      const std::size_t lo = r % sq;
      const std::size_t r1 = r / sq;
      const std::size_t mid = r1 % mid_count;
      const std::size_t hi = r1 / mid_count;
      const std::size_t base = hi * sp * d + mid * sq * d + lo;
      for (std::size_t ia = 0; ia < d; ++ia)
        for (std::size_t ib = 0; ib < d; ++ib) in[ia * d + ib] = amps[base + ia * sa + ib * sb];
      for (std::size_t ia = 0; ia < d; ++ia)
        for (std::size_t ib = 0; ib < d; ++ib) {
          const cplx* row = gate.data() + (ia * d + ib) * dd;
          cplx acc = 0.0;
          for (std::size_t k = 0; k < dd; ++k) acc += row[k] * in[k];
          amps[base + ia * sa + ib * sb] = acc;
        }
    }
  }
}

void apply_product_diagonal(std::span<cplx> amps, const Lattice& lat, std::span<const cplx> diag) {
  if (diag.size() != static_cast<std::size_t>(lat.d)) throw InvalidArgument("apply_product_diagonal: need d entries");
  const auto d = static_cast<std::size_t>(lat.d);
  const std::size_t n = amps.size();
#pragma omp parallel for schedule(static)
  for (std::size_t x = 0; x < n; ++x) {
    cplx f = 1.0;
    std::size_t rem = x;
    for (int s = 0; s < lat.n_sites; ++s) {
      f *= diag[rem % d];
      rem /= d;
    }
    amps[x] *= f;
  }
}

double diagonal_expectation(std::span<const cplx> amps, const Lattice& lat, std::span<const double> local) {
  if (local.size() != static_cast<std::size_t>(lat.d)) throw InvalidArgument("diagonal_expectation: need d entries");
  const auto d = static_cast<std::size_t>(lat.d);
  const std::size_t n = amps.size();
  const std::size_t chunk = (n + kReduceChunks - 1) / kReduceChunks;
  std::array<double, kReduceChunks> partial{};
#pragma omp parallel for schedule(static)
  for (std::size_t c = 0; c < kReduceChunks; ++c) {
    double acc = 0.0;
    const std::size_t end = std::min(n, (c + 1) * chunk);
    for (std::size_t x = c * chunk; x < end; ++x) {
      double z = 0.0;
      std::size_t rem = x;
      for (int s = 0; s < lat.n_sites; ++s) {
        z += local[rem % d];
        rem /= d;
      }
      acc += z * std::norm(amps[x]);
    }
    partial[c] = acc;
  }
  double total = 0.0;
  for (double v : partial) total += v;
  return total;
}

std::size_t translate_index(std::size_t index, const Lattice& lat, int shift) {
  const auto d = static_cast<std::size_t>(lat.d);
  const int n_sites = lat.n_sites;
  const int s = ((shift % n_sites) + n_sites) % n_sites;
  std::size_t out = 0;
  std::size_t rem = index;
  for (int site = n_sites - 1; site >= 0; --site) {
    const std::size_t digit = rem % d;
    rem /= d;
    out += digit * lat.stride((site + s) % n_sites);
  }
  return out;
}

void translate(std::span<const cplx> in, std::span<cplx> out, const Lattice& lat, int shift) {
  if (in.size() != lat.dim() || out.size() != lat.dim()) throw InvalidArgument("translate: dimension mismatch");
  const std::size_t n = in.size();
#pragma omp parallel for schedule(static)
  for (std::size_t x = 0; x < n; ++x) out[translate_index(x, lat, shift)] = in[x];
}

}  // namespace duscar::kernels
