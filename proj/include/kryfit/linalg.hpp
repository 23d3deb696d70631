#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace kryfit {

using Complex = std::complex<double>;
using Vector = std::vector<Complex>;

/// Thrown when the Arnoldi residual vanishes, i.e. the next Krylov vector
/// is numerically dependent on the basis built so far.
struct BreakdownError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Relative tolerance below which an orthogonalization tail counts as breakdown.
inline constexpr double kBreakdownTol = 1e-14;

/// Pivot tolerance (relative to ||A||_F) for rank-deficiency reporting in QR.
inline constexpr double kRankTol = 1e-12;

/// Dense row-major complex matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  Vector column(std::size_t j) const;
  void set_column(std::size_t j, const Vector& v);

  bool finite() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

/// (n+1) x n upper-Hessenberg recurrence matrix. Entries below the first
/// subdiagonal stay exactly zero.
class Hessenberg {
 public:
  Hessenberg() = default;
  explicit Hessenberg(std::size_t n) : n_(n), m_(n + 1, n) {}

  std::size_t cols() const { return n_; }
  std::size_t rows() const { return n_ + 1; }

  Complex& operator()(std::size_t i, std::size_t j);
  const Complex& operator()(std::size_t i, std::size_t j) const;

  const Matrix& matrix() const { return m_; }

 private:
  std::size_t n_ = 0;
  Matrix m_;
};

/// Nested orthonormal basis, grown one column at a time by Arnoldi.
class OrthoBasis {
 public:
  explicit OrthoBasis(std::size_t length) : length_(length) {}

  std::size_t length() const { return length_; }
  std::size_t size() const { return cols_.size(); }

  const Vector& col(std::size_t k) const { return cols_[k]; }
  void push(Vector q);

  Matrix matrix() const;

 private:
  std::size_t length_;
  std::vector<Vector> cols_;
};

// --- vector helpers -------------------------------------------------------

/// Euclidean inner product <a,b> = b^H a.
Complex inner(const Vector& a, const Vector& b);
double norm(const Vector& v);
bool finite(const Vector& v);

Vector matvec(const Matrix& A, const Vector& x);
/// A^H x.
Vector adjoint_matvec(const Matrix& A, const Vector& x);
Matrix matmul(const Matrix& A, const Matrix& B);

double max_abs(const Matrix& A);

// --- kernels --------------------------------------------------------------

struct OrthogonalizeResult {
  Vector unit;       ///< normalized residual, orthogonal to the basis
  Vector coeffs;     ///< h_{1..k,k}, accumulated over all passes
  double tail_norm;  ///< h_{k+1,k}, norm of the residual before normalization
};

/// One modified Gram-Schmidt step (optionally repeated once) against an
/// orthonormal basis. Throws BreakdownError when the residual norm drops
/// below kBreakdownTol relative to the candidate norm.
OrthogonalizeResult orthogonalize_next(const Vector& candidate,
                                       const OrthoBasis& basis,
                                       int reorth_passes);

/// y = Q^H diag(weights) f.
Vector project_rhs(const OrthoBasis& basis, const Vector& weights, const Vector& f);

/// Minimizes ||A c - b||_2 by Householder QR. Sets *rank_deficient (when
/// given) if a triangular pivot falls under kRankTol * ||A||_F.
Vector solve_dense_ls(const Matrix& A, const Vector& b, bool* rank_deficient = nullptr);

/// Singular values in descending order, via one-sided Jacobi.
std::vector<double> singular_values(const Matrix& M);

/// Number of singular values above tol * sigma_max.
std::size_t numerical_rank(const Matrix& M, double tol);

}  // namespace kryfit
