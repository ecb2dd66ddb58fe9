#pragma once

#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "weavekit/linalg.hpp"
#include "weavekit/settings.hpp"

// Vector frames and Theta-frames of a finite-dimensional complex space.
// Optimal bounds are spectral: the extreme eigenvalues of the frame
// operator, with the lower bound taken relative to Theta via a matrix
// pencil when Theta is present.

namespace weavekit {

/// An indexed family of vectors in dimension `dim`. The family may be
/// redundant or degenerate; it is the object frame inequalities quantify
/// over, not yet a verdict.
class VectorFrame {
 public:
  VectorFrame(std::size_t dim, std::vector<Vector> vectors)
      : dim_(dim), vectors_(std::move(vectors)) {
    if (dim_ == 0) throw Error(ErrorKind::DimensionMismatch, "frame dimension must be positive");
    if (vectors_.empty()) throw Error(ErrorKind::EmptyFamily, "empty vector family");
    for (std::size_t k = 0; k < vectors_.size(); ++k) {
      if (vectors_[k].size() != dim_)
        throw Error(ErrorKind::DimensionMismatch,
                    "vector " + std::to_string(k) + " has length " +
                        std::to_string(vectors_[k].size()) + ", expected " + std::to_string(dim_));
      for (cx z : vectors_[k])
        if (!is_finite(z)) throw Error(ErrorKind::NonFinite, "frame vector entry is not finite");
    }
  }

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return vectors_.size(); }
  const std::vector<Vector>& vectors() const noexcept { return vectors_; }

  friend bool operator==(const VectorFrame& a, const VectorFrame& b) {
    return a.dim_ == b.dim_ && a.vectors_ == b.vectors_;
  }

 private:
  std::size_t dim_;
  std::vector<Vector> vectors_;
};

/// The operator the lower frame inequality is taken relative to. Always a
/// square endomorphism of the ambient space.
class OperatorTheta {
 public:
  explicit OperatorTheta(Matrix m) : matrix_(std::move(m)) {
    if (!matrix_.square() || matrix_.rows() == 0)
      throw Error(ErrorKind::DimensionMismatch, "Theta must be square and nonempty");
  }

  static OperatorTheta identity(std::size_t dim) { return OperatorTheta(Matrix::identity(dim)); }

  std::size_t dim() const noexcept { return matrix_.rows(); }
  const Matrix& matrix() const noexcept { return matrix_; }

  bool is_identity() const {
    return matrix_ == Matrix::identity(matrix_.rows());
  }

  friend bool operator==(const OperatorTheta& a, const OperatorTheta& b) {
    return a.matrix_ == b.matrix_;
  }

 private:
  Matrix matrix_;
};

/// Optimal bounds of a (Theta-)frame inequality. `vacuous` marks the
/// Theta == 0 degeneracy, where the lower inequality constrains nothing;
/// the lower bound is then +infinity by convention and the usual
/// lower <= upper relation does not apply.
struct FrameBounds {
  double lower = 0.0;
  double upper = 0.0;
  bool is_frame = false;
  bool vacuous = false;
};

namespace detail {

// Canonical total order on vectors: entrywise lexicographic on (re, im).
inline bool vector_less(const Vector& a, const Vector& b) {
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
    if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
  }
  return a.size() < b.size();
}

}  // namespace detail

/// S = sum_k f_k f_k^*, Hermitian PSD, with <S f, f> = sum_k |<f, f_k>|^2.
/// Terms are accumulated in canonical vector order, so reordering the
/// family leaves the result bit-identical.
inline Matrix frame_operator(const VectorFrame& frame) {
  const std::size_t d = frame.dim();
  std::vector<const Vector*> order;
  order.reserve(frame.size());
  for (const Vector& v : frame.vectors()) order.push_back(&v);
  std::sort(order.begin(), order.end(),
            [](const Vector* a, const Vector* b) { return detail::vector_less(*a, *b); });
  Matrix s(d, d);
  for (const Vector* v : order)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) s(i, j) += (*v)[i] * std::conj((*v)[j]);
  return s;
}

/// sum_k |<f, f_k>|^2, the middle term of every frame inequality.
inline double analysis_energy(const VectorFrame& frame, const Vector& f) {
  if (f.size() != frame.dim())
    throw Error(ErrorKind::DimensionMismatch, "analysis vector length does not match frame dim");
  double acc = 0.0;
  for (const Vector& v : frame.vectors()) acc += std::norm(inner(f, v));
  return acc;
}

/// Optimal ordinary frame bounds: the extreme eigenvalues of the frame
/// operator. Tiny negative eigenvalues from roundoff are clamped to zero.
inline FrameBounds frame_bounds(const VectorFrame& frame, const Settings& settings = {}) {
  const HermitianSpectrum spec = hermitian_eigenvalues(frame_operator(frame));
  FrameBounds b;
  b.lower = std::max(0.0, spec.eigenvalues.front());
  b.upper = std::max(0.0, spec.eigenvalues.back());
  b.is_frame = b.lower > settings.verdict_eps;
  return b;
}

namespace detail {

// Shared by theta_frame_bounds and theta_gframe_bounds: the upper bound is
// the top eigenvalue of the (g-)frame operator, the lower bound the
// restricted pencil minimum against Theta Theta^* (or Theta^* Theta).
inline FrameBounds theta_bounds_of_operator(const Matrix& s, const OperatorTheta& theta,
                                            const Settings& settings) {
  if (theta.dim() != s.rows())
    throw Error(ErrorKind::DimensionMismatch, "Theta dimension does not match ambient dimension");
  const Matrix& t = theta.matrix();
  const Matrix m = settings.theta_side == ThetaSide::adjoint ? t * adjoint(t) : adjoint(t) * t;

  FrameBounds b;
  b.upper = std::max(0.0, hermitian_eigenvalues(s).eigenvalues.back());
  const double lower = pencil_min_ratio(s, m);
  if (std::isinf(lower)) {
    b.lower = std::numeric_limits<double>::infinity();
    b.vacuous = true;
    b.is_frame = true;
    return b;
  }
  b.lower = std::max(0.0, lower);
  b.is_frame = b.lower > settings.verdict_eps;
  return b;
}

}  // namespace detail

/// Optimal Theta-frame bounds under the inequality
///   A ||T^* f||^2 <= sum_k |<f, f_k>|^2 <= B ||f||^2
/// (or ||T f||^2 on the left under ThetaSide::direct). Coincides with
/// frame_bounds when Theta is the identity.
inline FrameBounds theta_frame_bounds(const VectorFrame& frame, const OperatorTheta& theta,
                                      const Settings& settings = {}) {
  if (theta.dim() != frame.dim())
    throw Error(ErrorKind::DimensionMismatch, "Theta dimension does not match frame dimension");
  return detail::theta_bounds_of_operator(frame_operator(frame), theta, settings);
}

}  // namespace weavekit
