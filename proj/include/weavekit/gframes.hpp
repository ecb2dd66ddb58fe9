#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "weavekit/frames.hpp"
#include "weavekit/linalg.hpp"
#include "weavekit/settings.hpp"

// g-frames {Lambda_j : ambient -> local_j} over a finite outer index set
// {1..n}, local frames for the target spaces, and the induced vector
// families {Lambda_j^* f_jk} that transfer g-frame questions to ordinary
// frame questions.

namespace weavekit {

/// A finite family of operators out of a common ambient space. The j-th
/// operator maps dimension d to its own local dimension d_j (row count);
/// local dimensions may differ across j.
class GFrame {
 public:
  GFrame(std::size_t ambient_dim, std::vector<Matrix> operators)
      : ambient_dim_(ambient_dim), operators_(std::move(operators)) {
    if (ambient_dim_ == 0)
      throw Error(ErrorKind::DimensionMismatch, "ambient dimension must be positive");
    if (operators_.empty()) throw Error(ErrorKind::EmptyFamily, "empty operator family");
    for (std::size_t j = 0; j < operators_.size(); ++j) {
      if (operators_[j].cols() != ambient_dim_)
        throw Error(ErrorKind::ShapeMismatch,
                    "operator " + std::to_string(j + 1) + " has " +
                        std::to_string(operators_[j].cols()) + " columns, expected " +
                        std::to_string(ambient_dim_));
      if (operators_[j].rows() == 0)
        throw Error(ErrorKind::ShapeMismatch,
                    "operator " + std::to_string(j + 1) + " has no rows");
    }
  }

  std::size_t ambient_dim() const noexcept { return ambient_dim_; }
  std::size_t size() const noexcept { return operators_.size(); }
  const std::vector<Matrix>& operators() const noexcept { return operators_; }
  std::size_t local_dim(std::size_t j) const { return operators_[j].rows(); }

  friend bool operator==(const GFrame& a, const GFrame& b) {
    return a.ambient_dim_ == b.ambient_dim_ && a.operators_ == b.operators_;
  }

 private:
  std::size_t ambient_dim_;
  std::vector<Matrix> operators_;
};

/// One vector frame per outer index; the j-th lives in the j-th local
/// dimension of the g-frame it pairs with.
class LocalFrameSet {
 public:
  explicit LocalFrameSet(std::vector<VectorFrame> frames) : frames_(std::move(frames)) {
    if (frames_.empty()) throw Error(ErrorKind::EmptyFamily, "empty local frame set");
  }

  std::size_t size() const noexcept { return frames_.size(); }
  const std::vector<VectorFrame>& frames() const noexcept { return frames_; }
  const VectorFrame& frame(std::size_t j) const { return frames_[j]; }

  friend bool operator==(const LocalFrameSet& a, const LocalFrameSet& b) {
    return a.frames_ == b.frames_;
  }

 private:
  std::vector<VectorFrame> frames_;
};

/// Verifies that local frame set L can pair with g-frame G: equal outer
/// count and matching local dimensions.
inline void check_pairing(const GFrame& g, const LocalFrameSet& l) {
  if (g.size() != l.size())
    throw Error(ErrorKind::ShapeMismatch,
                "local frame count " + std::to_string(l.size()) +
                    " does not match operator count " + std::to_string(g.size()));
  for (std::size_t j = 0; j < g.size(); ++j)
    if (l.frame(j).dim() != g.local_dim(j))
      throw Error(ErrorKind::ShapeMismatch,
                  "local frame " + std::to_string(j + 1) + " has dimension " +
                      std::to_string(l.frame(j).dim()) + ", operator expects " +
                      std::to_string(g.local_dim(j)));
}

struct IndexedElement {
  int outer = 0;  // j, 1-based
  int inner = 0;  // k, 1-based within outer index j
  Vector vec;

  friend bool operator==(const IndexedElement& a, const IndexedElement& b) {
    return a.outer == b.outer && a.inner == b.inner && a.vec == b.vec;
  }
};

/// A flattened induced family {Lambda_j^* f_jk} carrying (j, k) provenance.
/// Elements are lexicographic in (j, k); outer indices are contiguous 1..n
/// and inner indices contiguous 1..|K_j| within each j.
class IndexedFamily {
 public:
  IndexedFamily(std::size_t ambient_dim, std::vector<IndexedElement> elements)
      : ambient_dim_(ambient_dim), elements_(std::move(elements)) {
    if (ambient_dim_ == 0)
      throw Error(ErrorKind::DimensionMismatch, "ambient dimension must be positive");
    if (elements_.empty()) throw Error(ErrorKind::EmptyFamily, "empty indexed family");
    int expected_outer = 1;
    int expected_inner = 1;
    for (const IndexedElement& e : elements_) {
      if (e.vec.size() != ambient_dim_)
        throw Error(ErrorKind::DimensionMismatch, "indexed element vector length mismatch");
      if (e.outer == expected_outer + 1 && e.inner == 1) {
        inner_sizes_.push_back(expected_inner - 1);
        ++expected_outer;
        expected_inner = 1;
      }
      if (e.outer != expected_outer || e.inner != expected_inner)
        throw Error(ErrorKind::ShapeMismatch,
                    "indexed family is not contiguous lexicographic in (j, k) at (" +
                        std::to_string(e.outer) + ", " + std::to_string(e.inner) + ")");
      ++expected_inner;
    }
    inner_sizes_.push_back(expected_inner - 1);
    offsets_.resize(inner_sizes_.size());
    std::size_t acc = 0;
    for (std::size_t j = 0; j < inner_sizes_.size(); ++j) {
      offsets_[j] = acc;
      acc += inner_sizes_[j];
    }
  }

  std::size_t ambient_dim() const noexcept { return ambient_dim_; }
  std::size_t outer_count() const noexcept { return inner_sizes_.size(); }
  std::size_t total() const noexcept { return elements_.size(); }
  const std::vector<std::size_t>& inner_sizes() const noexcept { return inner_sizes_; }
  const std::vector<IndexedElement>& elements() const noexcept { return elements_; }

  const Vector& at(std::size_t outer, std::size_t inner) const {
    return elements_[offsets_[outer - 1] + (inner - 1)].vec;
  }

  /// The underlying family, provenance dropped, order preserved.
  VectorFrame frame() const {
    std::vector<Vector> vs;
    vs.reserve(elements_.size());
    for (const IndexedElement& e : elements_) vs.push_back(e.vec);
    return VectorFrame(ambient_dim_, std::move(vs));
  }

  friend bool operator==(const IndexedFamily& a, const IndexedFamily& b) {
    return a.ambient_dim_ == b.ambient_dim_ && a.elements_ == b.elements_;
  }

 private:
  std::size_t ambient_dim_;
  std::vector<IndexedElement> elements_;
  std::vector<std::size_t> inner_sizes_;
  std::vector<std::size_t> offsets_;
};

/// S_g = sum_j Lambda_j^* Lambda_j, with <S_g f, f> = sum_j ||Lambda_j f||^2.
inline Matrix gframe_operator(const GFrame& g) {
  const std::size_t d = g.ambient_dim();
  Matrix s(d, d);
  for (const Matrix& op : g.operators()) s = s + adjoint(op) * op;
  return s;
}

/// Ordinary g-frame bounds: extreme eigenvalues of S_g.
inline FrameBounds gframe_bounds(const GFrame& g, const Settings& settings = {}) {
  const HermitianSpectrum spec = hermitian_eigenvalues(gframe_operator(g));
  FrameBounds b;
  b.lower = std::max(0.0, spec.eigenvalues.front());
  b.upper = std::max(0.0, spec.eigenvalues.back());
  b.is_frame = b.lower > settings.verdict_eps;
  return b;
}

/// Optimal Theta-g-frame bounds; reduces to gframe_bounds at Theta == I.
inline FrameBounds theta_gframe_bounds(const GFrame& g, const OperatorTheta& theta,
                                       const Settings& settings = {}) {
  if (theta.dim() != g.ambient_dim())
    throw Error(ErrorKind::DimensionMismatch, "Theta dimension does not match ambient dimension");
  return detail::theta_bounds_of_operator(gframe_operator(g), theta, settings);
}

/// The induced family: element (j, k) is adjoint(Lambda_j) * f_jk, ordered
/// lexicographically in (j, k).
inline IndexedFamily induce(const GFrame& g, const LocalFrameSet& l) {
  check_pairing(g, l);
  std::vector<IndexedElement> elements;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const Matrix lift = adjoint(g.operators()[j]);
    const auto& vectors = l.frame(j).vectors();
    for (std::size_t k = 0; k < vectors.size(); ++k)
      elements.push_back(IndexedElement{static_cast<int>(j + 1), static_cast<int>(k + 1),
                                        lift * vectors[k]});
  }
  return IndexedFamily(g.ambient_dim(), std::move(elements));
}

/// Tightest uniform local bounds: (min over j of the optimal lower bound,
/// max over j of the optimal upper bound).
inline std::pair<double, double> local_frame_bounds(const LocalFrameSet& l,
                                                    const Settings& settings = {}) {
  double alpha = std::numeric_limits<double>::infinity();
  double beta = 0.0;
  for (const VectorFrame& f : l.frames()) {
    const FrameBounds b = frame_bounds(f, settings);
    alpha = std::min(alpha, b.lower);
    beta = std::max(beta, b.upper);
  }
  return {alpha, beta};
}

}  // namespace weavekit
