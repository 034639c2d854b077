#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace duscar {

using cplx = std::complex<double>;

/// Thrown when an input violates a documented precondition (shape, hermiticity, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a numerical post-validation fails (residuals, unitarity, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace tol {
inline constexpr double construction = 1e-10;
inline constexpr double spectral_residual = 1e-7;
inline constexpr double entropy_floor = 1e-12;
inline constexpr double unitary_input = 1e-8;
}  // namespace tol

/// Dense complex matrix, row-major.
class Op {
 public:
  Op() = default;
  Op(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Op(std::size_t rows, std::size_t cols, std::vector<cplx> data);

  static Op identity(std::size_t n);
  static Op diagonal(std::span<const cplx> diag);
  /// |i><j| in an n-dimensional space.
  static Op unit(std::size_t n, std::size_t i, std::size_t j);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<cplx> data() { return data_; }
  std::span<const cplx> data() const { return data_; }

  std::vector<cplx> column(std::size_t j) const;
  void set_column(std::size_t j, std::span<const cplx> v);

  Op adjoint() const;
  Op transpose() const;
  cplx trace() const;

  Op& operator+=(const Op& o);
  Op& operator-=(const Op& o);
  Op& operator*=(cplx s);

  bool is_hermitian(double tol) const;
  bool is_unitary(double tol) const;
  bool is_projector(double tol) const;

  friend bool operator==(const Op&, const Op&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

Op operator+(Op a, const Op& b);
Op operator-(Op a, const Op& b);
Op operator*(const Op& a, const Op& b);
Op operator*(cplx s, Op a);
std::vector<cplx> operator*(const Op& a, std::span<const cplx> v);

/// Largest |a_ij - b_ij|; throws on shape mismatch.
double max_abs_diff(const Op& a, const Op& b);
double max_abs(const Op& a);

Op kron(const Op& a, const Op& b);

/// Reduced density matrix on the sites in `keep` (site 0 most significant).
Op partial_trace(const Op& rho, int local_dim, int n_sites, std::span<const int> keep);

struct Spectrum {
  std::vector<cplx> values;
  Op vectors;  // eigenvectors as columns

  std::size_t size() const { return values.size(); }
  std::vector<cplx> vector(std::size_t i) const { return vectors.column(i); }
};

/// Angle of a unit-modulus number mapped to (-pi, pi].
double eigenphase(cplx z);

Spectrum eig_hermitian(const Op& h);
/// Unitary Schur decomposition; residuals are validated before returning.
/// Eigenpairs are sorted by eigenphase.
Spectrum eig_unitary(const Op& u);
/// General (non-normal) eigenvalues only.
std::vector<cplx> eigenvalues_general(const Op& a);
std::vector<double> singular_values(std::span<const cplx> data, std::size_t rows, std::size_t cols);
/// Orthonormal basis (columns) of {x : m x = 0}, singular values <= tol counted as zero.
Op null_space(const Op& m, double tol);

/// exp(iH) for Hermitian H.
Op expm_i(const Op& h);

/// Deterministic 64-bit stream (std::mt19937_64, whose output sequence is fixed by the standard).
class Rng {
 public:
  static constexpr const char* algorithm = "mt19937_64";

  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform integer in [0, n) by rejection, portable across platforms.
  std::uint64_t below(std::uint64_t n);
  /// Independent stream derived from (seed, stream) via splitmix64.
  Rng split(std::uint64_t stream) const;

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// m + m^dagger with m_jk = alpha + i beta, alpha, beta ~ U[0,1).
Op random_hermitian(int d, Rng& rng);
/// exp(iH) with H from random_hermitian (not Haar distributed).
Op random_unitary(int d, Rng& rng);

/// Von Neumann entropy in nats.
double von_neumann_entropy(const Op& rho);
/// -sum p ln p over probabilities, ignoring p below the entropy floor.
double shannon_entropy(std::span<const double> probs);

}  // namespace duscar
