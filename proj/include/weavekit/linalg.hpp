#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <vector>

#include "weavekit/errors.hpp"

// Dense complex linear algebra at desk scale. Everything here is a pure
// function of its inputs; matrices are plain value types.

namespace weavekit {

using cx = std::complex<double>;
using Vector = std::vector<cx>;

inline bool is_finite(cx z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// Row-major dense complex matrix. Zero rows/columns are legal so that the
/// empty range basis of the zero matrix has a representation.
class Matrix {
 public:
  Matrix() = default;

  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols, cx{0.0, 0.0}) {}

  Matrix(std::size_t rows, std::size_t cols, std::vector<cx> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_)
      throw Error(ErrorKind::ShapeMismatch, "entry count does not match rows*cols");
    for (cx z : entries_)
      if (!is_finite(z)) throw Error(ErrorKind::NonFinite, "matrix entry is not finite");
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = cx{1.0, 0.0};
    return m;
  }

  static Matrix from_rows(std::initializer_list<std::initializer_list<cx>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    std::vector<cx> data;
    data.reserve(r * c);
    for (const auto& row : rows) {
      if (row.size() != c)
        throw Error(ErrorKind::ShapeMismatch, "ragged row in matrix literal");
      data.insert(data.end(), row.begin(), row.end());
    }
    return Matrix(r, c, std::move(data));
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  cx& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  cx operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  const std::vector<cx>& entries() const noexcept { return entries_; }

  Vector column(std::size_t j) const {
    Vector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cx> entries_;
};

/// <x, y> = sum_i x_i * conj(y_i), linear in the first argument.
inline cx inner(const Vector& x, const Vector& y) {
  if (x.size() != y.size())
    throw Error(ErrorKind::DimensionMismatch, "inner product of unequal lengths");
  cx acc{0.0, 0.0};
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * std::conj(y[i]);
  return acc;
}

inline double norm_squared(const Vector& x) {
  double acc = 0.0;
  for (cx z : x) acc += std::norm(z);
  return acc;
}

inline double norm(const Vector& x) { return std::sqrt(norm_squared(x)); }

/// Conjugate transpose. adjoint(adjoint(M)) == M exactly.
inline Matrix adjoint(const Matrix& m) {
  Matrix a(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a(j, i) = std::conj(m(i, j));
  return a;
}

inline Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows())
    throw Error(ErrorKind::ShapeMismatch, "matrix product shape mismatch");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cx aik = a(i, k);
      if (aik == cx{0.0, 0.0}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

inline Vector operator*(const Matrix& a, const Vector& x) {
  if (a.cols() != x.size())
    throw Error(ErrorKind::ShapeMismatch, "matrix-vector shape mismatch");
  Vector y(a.rows(), cx{0.0, 0.0});
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
  return y;
}

inline Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorKind::ShapeMismatch, "matrix sum shape mismatch");
  Matrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

inline Matrix operator*(double s, const Matrix& a) {
  Matrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = s * a(i, j);
  return c;
}

inline cx trace(const Matrix& m) {
  if (!m.square()) throw Error(ErrorKind::NonSquare, "trace of non-square matrix");
  cx acc{0.0, 0.0};
  for (std::size_t i = 0; i < m.rows(); ++i) acc += m(i, i);
  return acc;
}

inline double frobenius_norm(const Matrix& m) {
  double acc = 0.0;
  for (cx z : m.entries()) acc += std::norm(z);
  return std::sqrt(acc);
}

/// Largest entrywise deviation from M == M^*.
inline double hermitian_defect(const Matrix& m) {
  double worst = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
  return worst;
}

struct HermitianSpectrum {
  std::vector<double> eigenvalues;  // ascending
  double residual = 0.0;            // off-diagonal Frobenius norm at termination
};

struct HermitianEigensystem {
  std::vector<double> eigenvalues;  // ascending
  Matrix vectors;                   // unitary; column i pairs with eigenvalues[i]
  double residual = 0.0;
};

namespace detail {

inline double offdiag_frobenius(const Matrix& a) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) acc += std::norm(a(i, j));
  return std::sqrt(acc);
}

}  // namespace detail

/// Cyclic Jacobi for Hermitian matrices. Converges when the off-diagonal
/// Frobenius norm drops below `tol` (default 1e-12*(1+||H||_F)); 100 sweep
/// cap. Inputs are symmetrized to (H+H^*)/2 first; asymmetry beyond 1e-8
/// entrywise is rejected.
inline HermitianEigensystem hermitian_eigensystem(const Matrix& h, double tol = -1.0) {
  if (!h.square()) throw Error(ErrorKind::NonSquare, "eigensolver needs a square matrix");
  if (hermitian_defect(h) > 1e-8)
    throw Error(ErrorKind::NotHermitian, "matrix is not Hermitian within 1e-8");

  const std::size_t n = h.rows();
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));
  Matrix v = Matrix::identity(n);

  if (tol <= 0.0) tol = 1e-12 * (1.0 + frobenius_norm(a));

  const int sweep_cap = 100;
  double off = detail::offdiag_frobenius(a);
  int sweep = 0;
  while (off > tol) {
    if (sweep++ >= sweep_cap)
      throw Error(ErrorKind::NoConvergence, "Jacobi sweep cap reached");
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cx beta = a(p, q);
        const double absb = std::abs(beta);
        if (absb == 0.0) continue;
        const double alpha = a(p, p).real();
        const double gamma = a(q, q).real();
        const cx phase = beta / absb;
        const double tau = (gamma - alpha) / (2.0 * absb);
        const double sign = tau < 0.0 ? -1.0 : 1.0;
        const double t = sign / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const cx s = phase * (t * c);
        const cx sc = std::conj(s);
        // A <- R^* A R with R the (p,q) plane rotation; V <- V R.
        for (std::size_t i = 0; i < n; ++i) {
          const cx aip = a(i, p), aiq = a(i, q);
          a(i, p) = c * aip - sc * aiq;
          a(i, q) = s * aip + c * aiq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const cx api = a(p, i), aqi = a(q, i);
          a(p, i) = c * api - s * aqi;
          a(q, i) = sc * api + c * aqi;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const cx vip = v(i, p), viq = v(i, q);
          v(i, p) = c * vip - sc * viq;
          v(i, q) = s * vip + c * viq;
        }
        a(p, q) = cx{0.0, 0.0};
        a(q, p) = cx{0.0, 0.0};
        a(p, p) = cx{a(p, p).real(), 0.0};
        a(q, q) = cx{a(q, q).real(), 0.0};
      }
    }
    off = detail::offdiag_frobenius(a);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  HermitianEigensystem out;
  out.eigenvalues.resize(n);
  out.vectors = Matrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  out.residual = off;
  return out;
}

inline HermitianSpectrum hermitian_eigenvalues(const Matrix& h, double tol = -1.0) {
  HermitianEigensystem es = hermitian_eigensystem(h, tol);
  return HermitianSpectrum{std::move(es.eigenvalues), es.residual};
}

/// Orthonormal basis of range(M), as the eigenvectors of M M^* whose
/// eigenvalue exceeds `rank_tol` (default 1e-10 * lambda_max(M M^*)),
/// ordered by descending eigenvalue. The zero matrix yields a basis with
/// zero columns.
inline Matrix orthonormal_range_basis(const Matrix& m, double rank_tol = -1.0) {
  const Matrix gram = m * adjoint(m);
  HermitianEigensystem es = hermitian_eigensystem(gram);
  const std::size_t n = gram.rows();
  const double lam_max = n == 0 ? 0.0 : std::max(0.0, es.eigenvalues.back());
  const double threshold = rank_tol > 0.0 ? rank_tol : 1e-10 * lam_max;

  std::vector<std::size_t> keep;
  for (std::size_t k = n; k-- > 0;)
    if (es.eigenvalues[k] > threshold) keep.push_back(k);

  Matrix basis(n, keep.size());
  for (std::size_t c = 0; c < keep.size(); ++c)
    for (std::size_t i = 0; i < n; ++i) basis(i, c) = es.vectors(i, keep[c]);
  return basis;
}

/// Minimum of <S f, f> / <M f, f> over unit f in range(M), for a Hermitian
/// PSD pencil (S, M): project both onto an orthonormal range basis U of M
/// and take the least eigenvalue of Mp^{-1/2} Sp Mp^{-1/2} with
/// Sp = U^* S U, Mp = U^* M U. Returns +infinity when M == 0 (the
/// constraint set is empty and the ratio is vacuous).
inline double pencil_min_ratio(const Matrix& s, const Matrix& m, double rank_tol = -1.0) {
  if (!s.square() || !m.square() || s.rows() != m.rows())
    throw Error(ErrorKind::ShapeMismatch, "pencil needs square matrices of equal size");
  if (hermitian_eigenvalues(s).eigenvalues.front() < -1e-8)
    throw Error(ErrorKind::NotPSD, "pencil numerator is not positive semidefinite");
  if (hermitian_eigenvalues(m).eigenvalues.front() < -1e-8)
    throw Error(ErrorKind::NotPSD, "pencil denominator is not positive semidefinite");

  const Matrix u = orthonormal_range_basis(m, rank_tol);
  const std::size_t r = u.cols();
  if (r == 0) return std::numeric_limits<double>::infinity();

  const Matrix sp = adjoint(u) * (s * u);
  const Matrix mp = adjoint(u) * (m * u);

  HermitianEigensystem em = hermitian_eigensystem(mp);
  for (double d : em.eigenvalues)
    if (d <= 0.0)
      throw Error(ErrorKind::NotPSD, "restricted pencil denominator lost definiteness");

  // inv_sqrt = W diag(d^{-1/2}) W^*
  Matrix inv_sqrt(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      cx acc{0.0, 0.0};
      for (std::size_t k = 0; k < r; ++k)
        acc += em.vectors(i, k) * std::conj(em.vectors(j, k)) / std::sqrt(em.eigenvalues[k]);
      inv_sqrt(i, j) = acc;
    }

  const Matrix c = inv_sqrt * (sp * inv_sqrt);
  return hermitian_eigenvalues(c).eigenvalues.front();
}

}  // namespace weavekit
