#include "duscar/sectors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace duscar {

namespace {

constexpr int kShift = 2;

cplx momentum_phase(int k, int period, std::size_t m) {
  return std::polar(1.0, 2.0 * std::numbers::pi * k * static_cast<double>(m) / period);
}

}  // namespace

bool TranslationOrbits::allowed(std::size_t r, int k) const {
  return (static_cast<std::size_t>(k) * length(r)) % static_cast<std::size_t>(period) == 0;
}

TranslationOrbits translation_orbits(const kernels::Lattice& lat) {
  if (lat.n_sites < 2 || lat.n_sites % 2 != 0) throw InvalidArgument("translation_orbits: N must be even");
  TranslationOrbits o;
  o.lat = lat;
  o.period = lat.n_sites / 2;
  o.offsets.push_back(0);
  std::vector<bool> seen(lat.dim(), false);
  for (std::size_t x = 0; x < lat.dim(); ++x) {
    if (seen[x]) continue;
    std::size_t y = x;
    do {
      seen[y] = true;
      o.members.push_back(y);
      y = kernels::translate_index(y, lat, kShift);
    } while (y != x);
    o.offsets.push_back(o.members.size());
  }
  return o;
}

FloquetEigensystem FloquetEigensystem::compute(const BrickworkCircuit& circuit, SpectrumMethod method,
                                               std::size_t cap) {
  circuit.validate();
  FloquetEigensystem es;
  es.dim_ = circuit.lattice().dim();
  if (es.dim_ > cap) throw InvalidArgument("FloquetEigensystem: dimension exceeds the cap of " + std::to_string(cap));

  if (method == SpectrumMethod::DENSE) {
    es.blocks_.push_back(eig_unitary(floquet_matrix(circuit, cap)));
    es.block_orbits_.emplace_back();
  } else {
    es.orbits_ = translation_orbits(circuit.lattice());
    const TranslationOrbits& orb = es.orbits_;
    es.period_ = orb.period;
    const int period = orb.period;
    // position of orbit r inside block k, or npos
    const std::size_t npos = static_cast<std::size_t>(-1);
    std::vector<std::vector<std::size_t>> pos(static_cast<std::size_t>(period),
                                              std::vector<std::size_t>(orb.count(), npos));
    es.block_orbits_.resize(static_cast<std::size_t>(period));
    for (int k = 0; k < period; ++k) {
      auto& ids = es.block_orbits_[static_cast<std::size_t>(k)];
      for (std::size_t r = 0; r < orb.count(); ++r) {
        if (!orb.allowed(r, k)) continue;
        pos[static_cast<std::size_t>(k)][r] = ids.size();
        ids.push_back(r);
      }
    }
    std::vector<Op> mats;
    for (const auto& ids : es.block_orbits_) mats.emplace_back(ids.size(), ids.size());

    // B_k[r', r] = sqrt(p_r) <r',k| U |rep_r>
#pragma omp parallel
    {
      std::vector<cplx> w(es.dim_);
#pragma omp for schedule(dynamic, 8)
      for (std::size_t r = 0; r < orb.count(); ++r) {
        std::fill(w.begin(), w.end(), cplx(0.0));
        w[orb.members[orb.offsets[r]]] = 1.0;
        floquet_step_inplace(w, circuit);
        const double sp = std::sqrt(static_cast<double>(orb.length(r)));
        for (int k = 0; k < period; ++k) {
          const std::size_t col = pos[static_cast<std::size_t>(k)][r];
          if (col == npos) continue;
          Op& b = mats[static_cast<std::size_t>(k)];
          const auto& ids = es.block_orbits_[static_cast<std::size_t>(k)];
          for (std::size_t row = 0; row < ids.size(); ++row) {
            const std::size_t rp = ids[row];
            cplx acc = 0.0;
            for (std::size_t m = 0; m < orb.length(rp); ++m)
              acc += momentum_phase(k, period, m) * w[orb.members[orb.offsets[rp] + m]];
            b(row, col) = acc * sp / std::sqrt(static_cast<double>(orb.length(rp)));
          }
        }
      }
    }
    for (auto& b : mats) es.blocks_.push_back(b.rows() > 0 ? eig_unitary(b) : Spectrum{});
  }

  for (std::size_t b = 0; b < es.blocks_.size(); ++b)
    for (std::size_t c = 0; c < es.blocks_[b].size(); ++c) es.order_.push_back({static_cast<int>(b), c});
  std::stable_sort(es.order_.begin(), es.order_.end(), [&](const Entry& a, const Entry& b) {
    return eigenphase(es.blocks_[a.block].values[a.col]) < eigenphase(es.blocks_[b.block].values[b.col]);
  });
  if (es.order_.size() != es.dim_) throw NumericalError("FloquetEigensystem: sector dimensions do not add up");
  return es;
}

cplx FloquetEigensystem::value(std::size_t i) const {
  const Entry& e = order_.at(i);
  return blocks_[static_cast<std::size_t>(e.block)].values[e.col];
}

std::vector<cplx> FloquetEigensystem::vector(std::size_t i) const {
  const Entry& e = order_.at(i);
  const Spectrum& s = blocks_[static_cast<std::size_t>(e.block)];
  if (block_orbits_[static_cast<std::size_t>(e.block)].empty()) return s.vector(e.col);
  const auto& ids = block_orbits_[static_cast<std::size_t>(e.block)];
  std::vector<cplx> v(dim_);
  for (std::size_t row = 0; row < ids.size(); ++row) {
    const cplx c = s.vectors(row, e.col);
    const std::size_t r = ids[row];
    const double norm = 1.0 / std::sqrt(static_cast<double>(orbits_.length(r)));
    for (std::size_t m = 0; m < orbits_.length(r); ++m)
      v[orbits_.members[orbits_.offsets[r] + m]] = c * norm * std::conj(momentum_phase(e.block, period_, m));
  }
  return v;
}

}  // namespace duscar
