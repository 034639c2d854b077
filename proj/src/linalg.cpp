#include "duscar/linalg.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numbers>
#include <numeric>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <cblas.h>
#include <lapacke.h>

namespace duscar {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw InvalidArgument(what);
}

void check_lapack(lapack_int info, const char* routine) {
  if (info != 0) {
    throw NumericalError(std::string(routine) + " failed with info=" + std::to_string(info));
  }
}

std::size_t ipow(std::size_t base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

Op::Op(std::size_t rows, std::size_t cols, std::vector<cplx> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  require(data_.size() == rows_ * cols_, "Op: data length must equal rows*cols");
}

Op Op::identity(std::size_t n) {
  Op r(n, n);
  for (std::size_t i = 0; i < n; ++i) r(i, i) = 1.0;
  return r;
}

Op Op::diagonal(std::span<const cplx> diag) {
  Op r(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) r(i, i) = diag[i];
  return r;
}

Op Op::unit(std::size_t n, std::size_t i, std::size_t j) {
  Op r(n, n);
  r(i, j) = 1.0;
  return r;
}

std::vector<cplx> Op::column(std::size_t j) const {
  std::vector<cplx> v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void Op::set_column(std::size_t j, std::span<const cplx> v) {
  require(v.size() == rows_, "Op::set_column: length mismatch");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

Op Op::adjoint() const {
  Op r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

Op Op::transpose() const {
  Op r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

cplx Op::trace() const {
  require(square(), "trace: matrix must be square");
  cplx t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

Op& Op::operator+=(const Op& o) {
  require(rows_ == o.rows_ && cols_ == o.cols_, "Op +=: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

Op& Op::operator-=(const Op& o) {
  require(rows_ == o.rows_ && cols_ == o.cols_, "Op -=: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

Op& Op::operator*=(cplx s) {
  for (auto& z : data_) z *= s;
  return *this;
}

bool Op::is_hermitian(double tol) const {
  if (!square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i; j < cols_; ++j)
      if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
  return true;
}

bool Op::is_unitary(double tol) const {
  if (!square()) return false;
  return max_abs_diff(adjoint() * (*this), identity(rows_)) <= tol;
}

bool Op::is_projector(double tol) const {
  if (!is_hermitian(tol)) return false;
  return max_abs_diff((*this) * (*this), *this) <= tol;
}

Op operator+(Op a, const Op& b) { return a += b; }
Op operator-(Op a, const Op& b) { return a -= b; }
Op operator*(cplx s, Op a) { return a *= s; }

Op operator*(const Op& a, const Op& b) {
  require(a.cols() == b.rows(), "Op *: inner dimension mismatch");
  Op c(a.rows(), b.cols());
  if (c.data().empty() || a.cols() == 0) return c;
  const cplx one = 1.0, zero = 0.0;
  cblas_zgemm(CblasRowMajor, CblasNoTrans, CblasNoTrans, static_cast<int>(a.rows()),
              static_cast<int>(b.cols()), static_cast<int>(a.cols()), &one, a.data().data(),
              static_cast<int>(a.cols()), b.data().data(), static_cast<int>(b.cols()), &zero,
              c.data().data(), static_cast<int>(c.cols()));
  return c;
}

std::vector<cplx> operator*(const Op& a, std::span<const cplx> v) {
  require(a.cols() == v.size(), "Op * vector: dimension mismatch");
  std::vector<cplx> r(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    cplx acc = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * v[j];
    r[i] = acc;
  }
  return r;
}

double max_abs_diff(const Op& a, const Op& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), "max_abs_diff: shape mismatch");
  double m = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k) m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
  return m;
}

double max_abs(const Op& a) {
  double m = 0.0;
  for (auto z : a.data()) m = std::max(m, std::abs(z));
  return m;
}

Op kron(const Op& a, const Op& b) {
  Op r(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      if (aij == 0.0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          r(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return r;
}

Op partial_trace(const Op& rho, int local_dim, int n_sites, std::span<const int> keep) {
  require(local_dim >= 1 && n_sites >= 1, "partial_trace: bad lattice");
  const std::size_t d = static_cast<std::size_t>(local_dim);
  const std::size_t dim = ipow(d, n_sites);
  require(rho.square() && rho.rows() == dim, "partial_trace: rho must be d^n x d^n");
  require(!keep.empty(), "partial_trace: keep must be nonempty");
  std::vector<bool> kept(static_cast<std::size_t>(n_sites), false);
  for (int s : keep) {
    require(s >= 0 && s < n_sites, "partial_trace: site out of range");
    require(!kept[static_cast<std::size_t>(s)], "partial_trace: duplicate site");
    kept[static_cast<std::size_t>(s)] = true;
  }
  const int n_keep = static_cast<int>(keep.size());
  const std::size_t dim_keep = ipow(d, n_keep);
  const std::size_t dim_trace = dim / dim_keep;

  // Split every full index into (kept digits, traced digits), both in site order.
  std::vector<std::size_t> keep_idx(dim), trace_idx(dim);
  for (std::size_t x = 0; x < dim; ++x) {
    std::size_t rem = x, k = 0, t = 0, kmul = 1, tmul = 1;
    for (int s = n_sites - 1; s >= 0; --s) {
      const std::size_t digit = rem % d;
      rem /= d;
      if (kept[static_cast<std::size_t>(s)]) {
        k += digit * kmul;
        kmul *= d;
      } else {
        t += digit * tmul;
        tmul *= d;
      }
    }
    keep_idx[x] = k;
    trace_idx[x] = t;
  }
  std::vector<std::size_t> full(dim_keep * dim_trace);
  for (std::size_t x = 0; x < dim; ++x) full[keep_idx[x] * dim_trace + trace_idx[x]] = x;

  Op r(dim_keep, dim_keep);
  for (std::size_t i = 0; i < dim_keep; ++i)
    for (std::size_t j = 0; j < dim_keep; ++j) {
      cplx acc = 0.0;
      for (std::size_t t = 0; t < dim_trace; ++t)
        acc += rho(full[i * dim_trace + t], full[j * dim_trace + t]);
      r(i, j) = acc;
    }
  return r;
}

double eigenphase(cplx z) {
  double a = std::arg(z);
  if (a <= -std::numbers::pi) a += 2.0 * std::numbers::pi;
  return a;
}

Spectrum eig_hermitian(const Op& h) {
  if (!h.is_hermitian(tol::construction)) throw InvalidArgument("eig_hermitian: input is not Hermitian");
  const auto n = static_cast<lapack_int>(h.rows());
  Spectrum s;
  s.vectors = h;
  std::vector<double> w(h.rows());
  if (n > 0) {
    check_lapack(LAPACKE_zheevd(LAPACK_ROW_MAJOR, 'V', 'U', n, s.vectors.data().data(), n, w.data()),
                 "zheevd");
  }
  s.values.assign(w.begin(), w.end());
  return s;
}

Spectrum eig_unitary(const Op& u) {
  if (!u.square()) throw InvalidArgument("eig_unitary: matrix must be square");
  if (!u.is_unitary(tol::unitary_input)) throw InvalidArgument("eig_unitary: input is not unitary");
  const std::size_t n = u.rows();
  Op t = u;
  Op z(n, n);
  std::vector<cplx> w(n);
  lapack_int sdim = 0;
  if (n > 0) {
    const auto ln = static_cast<lapack_int>(n);
    check_lapack(LAPACKE_zgees(LAPACK_ROW_MAJOR, 'V', 'N', nullptr, ln, t.data().data(), ln, &sdim,
                               w.data(), z.data().data(), ln),
                 "zgees");
  }

  // For a normal matrix the Schur vectors are eigenvectors; verify rather than assume.
  const Op uz = u * z;
  for (std::size_t j = 0; j < n; ++j) {
    if (std::abs(std::abs(w[j]) - 1.0) > tol::unitary_input) {
      throw NumericalError("eig_unitary: eigenvalue off the unit circle");
    }
    double res = 0.0;
    for (std::size_t i = 0; i < n; ++i) res += std::norm(uz(i, j) - w[j] * z(i, j));
    if (std::sqrt(res) > tol::spectral_residual) {
      throw NumericalError("eig_unitary: residual " + std::to_string(std::sqrt(res)) + " exceeds tolerance");
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return eigenphase(w[a]) < eigenphase(w[b]); });
  Spectrum s;
  s.values.resize(n);
  s.vectors = Op(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    s.values[k] = w[order[k]];
    for (std::size_t i = 0; i < n; ++i) s.vectors(i, k) = z(i, order[k]);
  }
  return s;
}

std::vector<cplx> eigenvalues_general(const Op& a) {
  if (!a.square()) throw InvalidArgument("eigenvalues_general: matrix must be square");
  const auto n = static_cast<lapack_int>(a.rows());
  Op work = a;
  std::vector<cplx> w(a.rows());
  if (n > 0) {
    check_lapack(LAPACKE_zgeev(LAPACK_ROW_MAJOR, 'N', 'N', n, work.data().data(), n, w.data(), nullptr, n,
                               nullptr, n),
                 "zgeev");
  }
  return w;
}

std::vector<double> singular_values(std::span<const cplx> data, std::size_t rows, std::size_t cols) {
  require(data.size() == rows * cols, "singular_values: size mismatch");
  std::vector<cplx> work(data.begin(), data.end());
  std::vector<double> s(std::min(rows, cols));
  if (s.empty()) return s;
  check_lapack(LAPACKE_zgesdd(LAPACK_ROW_MAJOR, 'N', static_cast<lapack_int>(rows),
                              static_cast<lapack_int>(cols), work.data(), static_cast<lapack_int>(cols),
                              s.data(), nullptr, static_cast<lapack_int>(rows), nullptr,
                              static_cast<lapack_int>(cols)),
               "zgesdd");
  return s;
}

Op null_space(const Op& m, double tol) {
  const std::size_t rows = m.rows(), cols = m.cols();
  if (cols == 0) return Op(0, 0);
  if (rows == 0) return Op::identity(cols);
  Op work = m;
  std::vector<double> s(std::min(rows, cols));
  Op vt(cols, cols);
  std::vector<double> superb(std::min(rows, cols) + 1);
  cplx dummy_u = 0.0;
  check_lapack(LAPACKE_zgesvd(LAPACK_ROW_MAJOR, 'N', 'A', static_cast<lapack_int>(rows),
                              static_cast<lapack_int>(cols), work.data().data(), static_cast<lapack_int>(cols),
                              s.data(), &dummy_u, 1, vt.data().data(), static_cast<lapack_int>(cols),
                              superb.data()),
               "zgesvd");
  std::size_t rank = 0;
  for (double v : s)
    if (v > tol) ++rank;
  Op basis(cols, cols - rank);
  for (std::size_t k = rank; k < cols; ++k)
    for (std::size_t i = 0; i < cols; ++i) basis(i, k - rank) = std::conj(vt(k, i));
  return basis;
}

Op expm_i(const Op& h) {
  if (!h.is_hermitian(tol::construction)) throw InvalidArgument("expm_i: input is not Hermitian");
  const Spectrum s = eig_hermitian(h);
  const std::size_t n = h.rows();
  Op scaled = s.vectors;
  for (std::size_t j = 0; j < n; ++j) {
    const cplx phase = std::polar(1.0, s.values[j].real());
    for (std::size_t i = 0; i < n; ++i) scaled(i, j) *= phase;
  }
  return scaled * s.vectors.adjoint();
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw InvalidArgument("Rng::below: n must be positive");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

Rng Rng::split(std::uint64_t stream) const {
  std::uint64_t z = seed_ + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return Rng(z ^ (z >> 31));
}

Op random_hermitian(int d, Rng& rng) {
  require(d >= 2, "random_hermitian: d must be >= 2");
  const auto n = static_cast<std::size_t>(d);
  Op m(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      const double alpha = rng.uniform();
      const double beta = rng.uniform();
      m(j, k) = cplx(alpha, beta);
    }
  // Symmetrize entrywise so the result is exactly Hermitian.
  Op h(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) h(j, k) = m(j, k) + std::conj(m(k, j));
  return h;
}

Op random_unitary(int d, Rng& rng) { return expm_i(random_hermitian(d, rng)); }

double shannon_entropy(std::span<const double> probs) {
  double s = 0.0;
  for (double p : probs)
    if (p > tol::entropy_floor) s -= p * std::log(p);
  return s;
}

double von_neumann_entropy(const Op& rho) {
  constexpr double tol_state = 1e-9;
  if (!rho.is_hermitian(tol_state)) throw InvalidArgument("von_neumann_entropy: rho is not Hermitian");
  if (std::abs(rho.trace() - 1.0) > tol_state) throw InvalidArgument("von_neumann_entropy: trace is not 1");
  // Hermitize before the eigensolver so the 1e-10 check inside eig_hermitian cannot reject
  // a state that passed the looser 1e-9 check above.
  Op herm = rho;
  for (std::size_t i = 0; i < rho.rows(); ++i)
    for (std::size_t j = 0; j < rho.cols(); ++j) herm(i, j) = 0.5 * (rho(i, j) + std::conj(rho(j, i)));
  const Spectrum s = eig_hermitian(herm);
  std::vector<double> p;
  p.reserve(s.size());
  for (auto v : s.values) {
    if (v.real() < -tol_state) throw InvalidArgument("von_neumann_entropy: rho is not positive semidefinite");
    p.push_back(v.real());
  }
  return shannon_entropy(p);
}

}  // namespace duscar
