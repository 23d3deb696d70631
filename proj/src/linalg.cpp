#include "kryfit/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace kryfit {

Vector Matrix::column(std::size_t j) const {
  Vector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void Matrix::set_column(std::size_t j, const Vector& v) {
  if (v.size() != rows_) throw std::invalid_argument("set_column: length mismatch");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

bool Matrix::finite() const {
  for (const Complex& z : data_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

Complex& Hessenberg::operator()(std::size_t i, std::size_t j) {
  if (i > j + 1) throw std::out_of_range("Hessenberg: below subdiagonal");
  return m_(i, j);
}

const Complex& Hessenberg::operator()(std::size_t i, std::size_t j) const {
  return m_(i, j);
}

void OrthoBasis::push(Vector q) {
  if (q.size() != length_) throw std::invalid_argument("OrthoBasis: length mismatch");
  cols_.push_back(std::move(q));
}

Matrix OrthoBasis::matrix() const {
  Matrix Q(length_, cols_.size());
  for (std::size_t j = 0; j < cols_.size(); ++j) Q.set_column(j, cols_[j]);
  return Q;
}

Complex inner(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("inner: length mismatch");
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(b[i]) * a[i];
  return s;
}

double norm(const Vector& v) {
  double s = 0.0;
  for (const Complex& z : v) s += std::norm(z);
  return std::sqrt(s);
}

bool finite(const Vector& v) {
  for (const Complex& z : v)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

Vector matvec(const Matrix& A, const Vector& x) {
  if (x.size() != A.cols()) throw std::invalid_argument("matvec: dimension mismatch");
  Vector y(A.rows(), 0.0);
  for (std::size_t i = 0; i < A.rows(); ++i) {
    Complex s = 0.0;
    for (std::size_t j = 0; j < A.cols(); ++j) s += A(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

Vector adjoint_matvec(const Matrix& A, const Vector& x) {
  if (x.size() != A.rows()) throw std::invalid_argument("adjoint_matvec: dimension mismatch");
  Vector y(A.cols(), 0.0);
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) y[j] += std::conj(A(i, j)) * x[i];
  return y;
}

Matrix matmul(const Matrix& A, const Matrix& B) {
  if (A.cols() != B.rows()) throw std::invalid_argument("matmul: dimension mismatch");
  Matrix C(A.rows(), B.cols());
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t k = 0; k < A.cols(); ++k) {
      const Complex a = A(i, k);
      if (a == 0.0) continue;
      for (std::size_t j = 0; j < B.cols(); ++j) C(i, j) += a * B(k, j);
    }
  return C;
}

double max_abs(const Matrix& A) {
  double m = 0.0;
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) m = std::max(m, std::abs(A(i, j)));
  return m;
}

OrthogonalizeResult orthogonalize_next(const Vector& candidate,
                                       const OrthoBasis& basis,
                                       int reorth_passes) {
  if (reorth_passes != 1 && reorth_passes != 2)
    throw std::invalid_argument("orthogonalize_next: reorth_passes must be 1 or 2");
  if (candidate.size() != basis.length())
    throw std::invalid_argument("orthogonalize_next: length mismatch");

  const double cand_norm = norm(candidate);
  const std::size_t k = basis.size();
  Vector w = candidate;
  Vector coeffs(k, 0.0);
  for (int pass = 0; pass < reorth_passes; ++pass) {
    for (std::size_t j = 0; j < k; ++j) {
      const Complex h = inner(w, basis.col(j));
      coeffs[j] += h;
      const Vector& q = basis.col(j);
      for (std::size_t i = 0; i < w.size(); ++i) w[i] -= h * q[i];
    }
  }
  const double tail = norm(w);
  if (tail <= kBreakdownTol * cand_norm)
    throw BreakdownError("Arnoldi breakdown: residual norm " + std::to_string(tail));
  for (Complex& z : w) z /= tail;
  return OrthogonalizeResult{std::move(w), std::move(coeffs), tail};
}

Vector project_rhs(const OrthoBasis& basis, const Vector& weights, const Vector& f) {
  if (weights.size() != basis.length() || f.size() != basis.length())
    throw std::invalid_argument("project_rhs: dimension mismatch");
  Vector wf(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) wf[i] = weights[i] * f[i];
  Vector y(basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) y[k] = inner(wf, basis.col(k));
  return y;
}

namespace {

double frobenius(const Matrix& A) {
  double s = 0.0;
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) s += std::norm(A(i, j));
  return std::sqrt(s);
}

}  // namespace

Vector solve_dense_ls(const Matrix& A, const Vector& b, bool* rank_deficient) {
  const std::size_t m = A.rows(), n = A.cols();
  if (m < n) throw std::invalid_argument("solve_dense_ls: need rows >= cols");
  if (b.size() != m) throw std::invalid_argument("solve_dense_ls: rhs length mismatch");
  if (!A.finite()) throw std::invalid_argument("solve_dense_ls: non-finite matrix");

  Matrix R = A;
  Vector rhs = b;
  const double scale = frobenius(A);
  bool deficient = false;

  for (std::size_t k = 0; k < n; ++k) {
    // Householder reflector annihilating R(k+1..m-1, k).
    double xnorm = 0.0;
    for (std::size_t i = k; i < m; ++i) xnorm += std::norm(R(i, k));
    xnorm = std::sqrt(xnorm);
    if (xnorm > 0.0) {
      Complex alpha = R(k, k);
      const double aabs = std::abs(alpha);
      const Complex phase = (aabs > 0.0) ? alpha / aabs : Complex(1.0, 0.0);
      const Complex beta = -phase * xnorm;
      Vector v(m - k);
      v[0] = alpha - beta;
      for (std::size_t i = k + 1; i < m; ++i) v[i - k] = R(i, k);
      double vnorm2 = 0.0;
      for (const Complex& z : v) vnorm2 += std::norm(z);
      if (vnorm2 > 0.0) {
        for (std::size_t j = k; j < n; ++j) {
          Complex s = 0.0;
          for (std::size_t i = k; i < m; ++i) s += std::conj(v[i - k]) * R(i, j);
          s *= 2.0 / vnorm2;
          for (std::size_t i = k; i < m; ++i) R(i, j) -= s * v[i - k];
        }
        Complex s = 0.0;
        for (std::size_t i = k; i < m; ++i) s += std::conj(v[i - k]) * rhs[i];
        s *= 2.0 / vnorm2;
        for (std::size_t i = k; i < m; ++i) rhs[i] -= s * v[i - k];
      }
      R(k, k) = beta;
      for (std::size_t i = k + 1; i < m; ++i) R(i, k) = 0.0;
    }
    if (std::abs(R(k, k)) < kRankTol * scale) deficient = true;
  }
  if (rank_deficient) *rank_deficient = deficient;

  Vector x(n, 0.0);
  for (std::size_t kk = n; kk-- > 0;) {
    Complex s = rhs[kk];
    for (std::size_t j = kk + 1; j < n; ++j) s -= R(kk, j) * x[j];
    const Complex d = R(kk, kk);
    x[kk] = (d != 0.0) ? s / d : Complex(0.0);
  }
  return x;
}

std::vector<double> singular_values(const Matrix& M) {
  if (!M.finite()) throw std::invalid_argument("singular_values: non-finite matrix");
  // One-sided Jacobi on columns; work on the tall orientation.
  std::size_t m = M.rows(), n = M.cols();
  std::vector<Vector> g;
  if (m >= n) {
    g.resize(n, Vector(m));
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < m; ++i) g[j][i] = M(i, j);
  } else {
    g.resize(m, Vector(n));
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t i = 0; i < n; ++i) g[j][i] = std::conj(M(j, i));
    std::swap(m, n);
  }

  const double eps = 1e-15;
  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double a = std::real(inner(g[p], g[p]));
        const double b = std::real(inner(g[q], g[q]));
        Complex c = inner(g[q], g[p]);  // g_p^H g_q
        const double cabs = std::abs(c);
        if (cabs <= eps * std::sqrt(a * b) || cabs == 0.0) continue;
        rotated = true;
        const Complex phase = c / cabs;
        // Phase out g_q so the 2x2 Gram block is real, then rotate.
        for (std::size_t i = 0; i < m; ++i) g[q][i] *= std::conj(phase);
        const double tau = (b - a) / (2.0 * cabs);
        const double t = ((tau >= 0) ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double cs = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = t * cs;
        for (std::size_t i = 0; i < m; ++i) {
          const Complex gp = g[p][i], gq = g[q][i];
          g[p][i] = cs * gp - sn * gq;
          g[q][i] = sn * gp + cs * gq;
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<double> sv(n);
  for (std::size_t j = 0; j < n; ++j) sv[j] = norm(g[j]);
  std::sort(sv.begin(), sv.end(), std::greater<double>());
  return sv;
}

std::size_t numerical_rank(const Matrix& M, double tol) {
  const std::vector<double> sv = singular_values(M);
  if (sv.empty() || sv.front() == 0.0) return 0;
  std::size_t r = 0;
  for (double s : sv)
    if (s > tol * sv.front()) ++r;
  return r;
}

}  // namespace kryfit
