#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "weavekit/gframes.hpp"
#include "weavekit/rng.hpp"
#include "weavekit/weaving.hpp"

// Executable certification of the equivalence claims on concrete
// instances: g-frame weaving versus induced-family weaving, the singleton
// equivalence of the two weaving definitions, its orthonormal-basis
// corollary, the identity-operator specialization, and synthesis of
// instances where the partition and element-wise verdicts split.

namespace weavekit {

// Verdict comparisons are excluded from equivalence assertions when any
// optimal lower bound sits this close to the verdict threshold; boundary
// noise must not fake a refutation.
inline constexpr double kMarginEps = 1e-6;

/// A complete hypothesis set: ambient space, Theta, two operator families
/// and local frames for each of their target spaces.
class Instance {
 public:
  Instance(std::string name, std::uint64_t seed, OperatorTheta theta, GFrame lambda, GFrame omega,
           LocalFrameSet local_f, LocalFrameSet local_g)
      : name_(std::move(name)),
        seed_(seed),
        theta_(std::move(theta)),
        lambda_(std::move(lambda)),
        omega_(std::move(omega)),
        local_f_(std::move(local_f)),
        local_g_(std::move(local_g)) {
    if (lambda_.ambient_dim() != omega_.ambient_dim())
      throw Error(ErrorKind::AmbientDimMismatch, "lambda and omega ambient dimensions differ");
    if (theta_.dim() != lambda_.ambient_dim())
      throw Error(ErrorKind::AmbientDimMismatch, "Theta dimension does not match ambient space");
    if (lambda_.size() != omega_.size())
      throw Error(ErrorKind::OuterCountMismatch, "lambda and omega outer counts differ");
    check_pairing(lambda_, local_f_);
    check_pairing(omega_, local_g_);
  }

  const std::string& name() const noexcept { return name_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::size_t dim() const noexcept { return lambda_.ambient_dim(); }
  std::size_t outer_count() const noexcept { return lambda_.size(); }
  const OperatorTheta& theta() const noexcept { return theta_; }
  const GFrame& lambda() const noexcept { return lambda_; }
  const GFrame& omega() const noexcept { return omega_; }
  const LocalFrameSet& local_f() const noexcept { return local_f_; }
  const LocalFrameSet& local_g() const noexcept { return local_g_; }

  IndexedFamily induced_f() const { return induce(lambda_, local_f_); }
  IndexedFamily induced_g() const { return induce(omega_, local_g_); }

  Instance with_theta(OperatorTheta t) const {
    return Instance(name_, seed_, std::move(t), lambda_, omega_, local_f_, local_g_);
  }

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.name_ == b.name_ && a.seed_ == b.seed_ && a.theta_ == b.theta_ &&
           a.lambda_ == b.lambda_ && a.omega_ == b.omega_ && a.local_f_ == b.local_f_ &&
           a.local_g_ == b.local_g_;
  }

 private:
  std::string name_;
  std::uint64_t seed_;
  OperatorTheta theta_;
  GFrame lambda_;
  GFrame omega_;
  LocalFrameSet local_f_;
  LocalFrameSet local_g_;
};

struct HypothesisItem {
  std::string name;
  bool pass = false;
  double measured = 0.0;
};

struct InequalityItem {
  std::string name;
  double lhs = 0.0;
  std::string relation;  // "<=" or ">="
  double rhs = 0.0;
  double slack = 0.0;  // signed margin; nonnegative iff the inequality holds
  bool pass = false;
};

enum class ClaimStatus { verified, refuted, hypotheses_not_met };

inline const char* to_string(ClaimStatus s) {
  switch (s) {
    case ClaimStatus::verified: return "verified";
    case ClaimStatus::refuted: return "refuted";
    case ClaimStatus::hypotheses_not_met: return "hypotheses-not-met";
  }
  return "?";
}

/// Paired verdicts and bound inequalities certifying (or refuting, with
/// witness) one equivalence claim on one instance. A failed hypothesis
/// voids the claim: status is hypotheses-not-met, never refuted.
struct TheoremReport {
  std::string claim;
  std::vector<HypothesisItem> hypotheses;
  bool left_verdict = false;
  bool right_verdict = false;
  bool equivalence_holds = false;
  std::vector<InequalityItem> inequalities;
  bool margin_flag = false;
  ClaimStatus status = ClaimStatus::verified;
  std::string witness;
  std::optional<WeavingReport> left_report;
  std::optional<WeavingReport> right_report;
};

namespace detail {

inline InequalityItem make_ge(std::string name, double lhs, double rhs) {
  InequalityItem item;
  item.name = std::move(name);
  item.lhs = lhs;
  item.relation = ">=";
  item.rhs = rhs;
  item.slack = lhs - rhs;
  item.pass = lhs >= rhs;
  return item;
}

inline InequalityItem make_le(std::string name, double lhs, double rhs) {
  InequalityItem item;
  item.name = std::move(name);
  item.lhs = lhs;
  item.relation = "<=";
  item.rhs = rhs;
  item.slack = rhs - lhs;
  item.pass = lhs <= rhs;
  return item;
}

inline bool all_pass(const std::vector<HypothesisItem>& hs) {
  return std::all_of(hs.begin(), hs.end(), [](const HypothesisItem& h) { return h.pass; });
}

inline bool all_pass(const std::vector<InequalityItem>& is) {
  return std::all_of(is.begin(), is.end(), [](const InequalityItem& i) { return i.pass; });
}

inline void finalize(TheoremReport& rep, const Settings& settings) {
  rep.equivalence_holds = rep.left_verdict == rep.right_verdict;
  if (rep.left_report && rep.right_report)
    rep.margin_flag = std::min(rep.left_report->universal_lower,
                               rep.right_report->universal_lower) <=
                      settings.verdict_eps + kMarginEps;
  rep.status = (rep.equivalence_holds && all_pass(rep.inequalities)) ? ClaimStatus::verified
                                                                     : ClaimStatus::refuted;
  if (rep.status == ClaimStatus::refuted) {
    rep.witness = "left woven=" + std::string(rep.left_verdict ? "yes" : "no") +
                  " right woven=" + std::string(rep.right_verdict ? "yes" : "no");
    for (const InequalityItem& item : rep.inequalities)
      if (!item.pass)
        rep.witness += "; " + item.name + " fails: " + std::to_string(item.lhs) + " " +
                       item.relation + " " + std::to_string(item.rhs);
  }
}

inline bool is_onb(const VectorFrame& f, const Settings& settings) {
  if (f.size() != f.dim()) return false;
  const FrameBounds b = frame_bounds(f, settings);
  return std::abs(b.lower - 1.0) <= 1e-10 && std::abs(b.upper - 1.0) <= 1e-10;
}

inline bool all_singleton(const LocalFrameSet& l) {
  return std::all_of(l.frames().begin(), l.frames().end(),
                     [](const VectorFrame& f) { return f.size() == 1; });
}

inline std::vector<Vector> canonical_sorted(const VectorFrame& f) {
  std::vector<Vector> vs = f.vectors();
  std::sort(vs.begin(), vs.end(), vector_less);
  return vs;
}

}  // namespace detail

/// Certifies on one instance that g-frame weaving and partition weaving of
/// the induced families reach the same verdict, and that the induced
/// universal bounds are sandwiched by the g-frame universal bounds scaled
/// with the uniform local bounds.
inline TheoremReport verify_theorem1(const Instance& inst, const Settings& settings = {}) {
  TheoremReport rep;
  rep.claim = "theorem1";

  const FrameBounds gl = theta_gframe_bounds(inst.lambda(), inst.theta(), settings);
  const FrameBounds go = theta_gframe_bounds(inst.omega(), inst.theta(), settings);
  const auto [alpha, beta] = local_frame_bounds(inst.local_f(), settings);
  const auto [alpha_p, beta_p] = local_frame_bounds(inst.local_g(), settings);
  rep.hypotheses.push_back({"lambda-theta-g-frame", gl.is_frame, gl.lower});
  rep.hypotheses.push_back({"omega-theta-g-frame", go.is_frame, go.lower});
  rep.hypotheses.push_back({"local-f-frames", alpha > settings.verdict_eps, alpha});
  rep.hypotheses.push_back({"local-g-frames", alpha_p > settings.verdict_eps, alpha_p});
  if (!detail::all_pass(rep.hypotheses)) {
    rep.status = ClaimStatus::hypotheses_not_met;
    return rep;
  }

  const WeavingReport left = check_gwoven(inst.lambda(), inst.omega(), inst.theta(), settings);
  const WeavingReport right =
      check_woven_def1(inst.induced_f(), inst.induced_g(), inst.theta(), settings);
  rep.left_verdict = left.woven;
  rep.right_verdict = right.woven;

  const double tol = 1e-8;
  rep.inequalities.push_back(detail::make_ge(
      "induced-lower-sandwich", right.universal_lower,
      std::min(alpha, alpha_p) * left.universal_lower - tol));
  rep.inequalities.push_back(detail::make_le(
      "induced-upper-sandwich", right.universal_upper,
      std::max(beta, beta_p) * left.universal_upper + tol));

  rep.left_report = left;
  rep.right_report = right;
  detail::finalize(rep, settings);
  return rep;
}

/// Certifies the singleton equivalence: with every inner index set of size
/// one, the partition and element-wise enumerations generate the same
/// family multisets, so verdicts agree exactly and bounds to 1e-12. Also
/// checks the family identity selection by selection.
inline TheoremReport verify_remark_equivalence(const Instance& inst,
                                               const Settings& settings = {}) {
  if (!detail::all_singleton(inst.local_f()) || !detail::all_singleton(inst.local_g()))
    throw Error(ErrorKind::PreconditionFailure,
                "singleton equivalence needs |I_j| = |Q_j| = 1 for every j");

  const IndexedFamily f = inst.induced_f();
  const IndexedFamily g = inst.induced_g();
  const WeavingReport r1 = check_woven_def1(f, g, inst.theta(), settings);
  const WeavingReport r3 = check_woven_def3(f, g, inst.theta(), settings);

  TheoremReport rep;
  rep.claim = "remark-equivalence";
  rep.left_verdict = r1.woven;
  rep.right_verdict = r3.woven;
  rep.inequalities.push_back(detail::make_le(
      "universal-lower-delta", std::abs(r1.universal_lower - r3.universal_lower), 1e-12));
  rep.inequalities.push_back(detail::make_le(
      "universal-upper-delta", std::abs(r1.universal_upper - r3.universal_upper), 1e-12));

  // With singleton inner sets the flat encodings coincide bit for bit;
  // the def3 family at code c must literally equal the def1 family at c.
  const std::size_t n = f.outer_count();
  std::uint64_t mismatches = 0;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << n); ++code) {
    const VectorFrame fam3 = weave_def3(f, g, decode_def3(code, f.inner_sizes()));
    const VectorFrame fam1 = weave_def1(f, g, Def1Selection{code});
    if (detail::canonical_sorted(fam3) != detail::canonical_sorted(fam1)) ++mismatches;
  }
  rep.inequalities.push_back(
      detail::make_le("family-identity-mismatches", static_cast<double>(mismatches), 0.0));

  rep.left_report = r1;
  rep.right_report = r3;
  detail::finalize(rep, settings);
  return rep;
}

/// Certifies the orthonormal-basis corollary: with singleton inner sets
/// and orthonormal local bases, g-frame weaving and element-wise weaving
/// agree in verdict and the universal bounds collapse to equality.
inline TheoremReport verify_corollary1(const Instance& inst, const Settings& settings = {}) {
  if (!detail::all_singleton(inst.local_f()) || !detail::all_singleton(inst.local_g()))
    throw Error(ErrorKind::PreconditionFailure, "corollary needs |K_j| = 1 for every j");
  for (const VectorFrame& f : inst.local_f().frames())
    if (!detail::is_onb(f, settings))
      throw Error(ErrorKind::PreconditionFailure, "corollary needs orthonormal local bases");
  for (const VectorFrame& f : inst.local_g().frames())
    if (!detail::is_onb(f, settings))
      throw Error(ErrorKind::PreconditionFailure, "corollary needs orthonormal local bases");

  const WeavingReport left = check_gwoven(inst.lambda(), inst.omega(), inst.theta(), settings);
  const WeavingReport right =
      check_woven_def3(inst.induced_f(), inst.induced_g(), inst.theta(), settings);

  TheoremReport rep;
  rep.claim = "corollary1";
  rep.left_verdict = left.woven;
  rep.right_verdict = right.woven;
  rep.inequalities.push_back(detail::make_le(
      "universal-lower-delta", std::abs(left.universal_lower - right.universal_lower), 1e-9));
  rep.inequalities.push_back(detail::make_le(
      "universal-upper-delta", std::abs(left.universal_upper - right.universal_upper), 1e-9));
  rep.left_report = left;
  rep.right_report = right;
  detail::finalize(rep, settings);
  return rep;
}

/// Re-runs the corollary with Theta replaced by the identity, and checks
/// that on every selection the Theta-relative bounds coincide with the
/// ordinary spectral bounds.
inline TheoremReport specialize_identity(const Instance& inst, const Settings& settings = {}) {
  const Instance ident = inst.with_theta(OperatorTheta::identity(inst.dim()));
  TheoremReport rep = verify_corollary1(ident, settings);
  rep.claim = "corollary1-identity";

  const WeavingReport r3 = check_woven_def3(ident.induced_f(), ident.induced_g(), ident.theta(),
                                            settings, /*full_table=*/true);
  double frame_delta = 0.0;
  for (const SelectionBounds& sb : r3.per_selection) {
    const FrameBounds plain = frame_bounds(
        weave_def3(ident.induced_f(), ident.induced_g(), decode_def3(sb.code, r3.shape)),
        settings);
    frame_delta = std::max({frame_delta, std::abs(plain.lower - sb.lower),
                            std::abs(plain.upper - sb.upper)});
  }
  const WeavingReport rg =
      check_gwoven(ident.lambda(), ident.omega(), ident.theta(), settings, /*full_table=*/true);
  double gframe_delta = 0.0;
  for (const SelectionBounds& sb : rg.per_selection) {
    const FrameBounds plain =
        gframe_bounds(weave_gframe(ident.lambda(), ident.omega(), Def1Selection{sb.code}),
                      settings);
    gframe_delta = std::max({gframe_delta, std::abs(plain.lower - sb.lower),
                             std::abs(plain.upper - sb.upper)});
  }
  rep.inequalities.push_back(detail::make_le("identity-frame-bounds-delta", frame_delta, 1e-10));
  rep.inequalities.push_back(detail::make_le("identity-gframe-bounds-delta", gframe_delta, 1e-10));
  detail::finalize(rep, settings);
  return rep;
}

/// The distilled two-dimensional split instance: both operator families
/// are the identity, the first local basis is {e1, e2}, the second is the
/// swapped {e2, e1}. Partition weaving only ever sees the two full bases
/// and is woven with universal bounds (1, 1); element-wise weaving can
/// select {e1, e1}, which is not a frame, so it is not woven.
inline Instance canonical_gap_instance() {
  const Matrix eye = Matrix::identity(2);
  const Vector e1{cx{1.0, 0.0}, cx{0.0, 0.0}};
  const Vector e2{cx{0.0, 0.0}, cx{1.0, 0.0}};
  return Instance("canonical-gap", 0, OperatorTheta::identity(2), GFrame(2, {eye}),
                  GFrame(2, {eye}), LocalFrameSet({VectorFrame(2, {e1, e2})}),
                  LocalFrameSet({VectorFrame(2, {e2, e1})}));
}

// ---------------------------------------------------------------------------
// Random instance generation

struct RandomInstanceOptions {
  std::size_t min_dim = 2;
  std::size_t max_dim = 4;
  std::size_t max_outer = 3;
  std::size_t max_inner = 2;
  bool singleton_inner = false;   // force |K_j| = 1 everywhere
  bool onb_local = false;         // local frames are orthonormal bases
  bool normalize_local = true;    // rescale local frames so bounds land in [1/2, 2]
  bool require_g_frames = false;  // rejection-sample until both families are Theta-g-frames
  bool random_theta = true;       // else Theta = identity
};

namespace detail {

inline VectorFrame random_local_frame(Rng& rng, std::size_t dim, std::size_t count, bool onb,
                                      bool normalize, const Settings& settings) {
  if (onb) {
    if (dim == 1) return VectorFrame(1, {{rng.phase()}});
    const Matrix u = rng.unitary(dim);
    std::vector<Vector> vs;
    for (std::size_t c = 0; c < dim; ++c) vs.push_back(u.column(c));
    return VectorFrame(dim, std::move(vs));
  }
  for (;;) {
    std::vector<Vector> vs;
    for (std::size_t k = 0; k < count; ++k) vs.push_back(rng.vector_uniform(dim));
    VectorFrame frame(dim, std::move(vs));
    if (!normalize) return frame;
    const FrameBounds b = frame_bounds(frame, settings);
    if (b.lower <= 1e-6 || b.upper / b.lower > 4.0) continue;  // condition number cap
    const double scale = std::pow(b.lower * b.upper, -0.25);
    std::vector<Vector> scaled = frame.vectors();
    for (Vector& v : scaled)
      for (cx& z : v) z *= scale;
    return VectorFrame(dim, std::move(scaled));
  }
}

inline OperatorTheta random_theta_operator(Rng& rng, std::size_t dim) {
  if (rng.bounded(3) == 0) return OperatorTheta::identity(dim);
  // Q1 * diag(singular values in [0.6, 1.5]) * Q2: invertible and
  // well-conditioned, so the pencil restriction is vacuous.
  const Matrix q1 = rng.unitary(dim);
  const Matrix q2 = rng.unitary(dim);
  Matrix d(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) d(i, i) = cx{rng.uniform(0.6, 1.5), 0.0};
  return OperatorTheta(q1 * d * q2);
}

}  // namespace detail

/// Seeded random instance with the shape constraints of `opt`. Entries are
/// uniform on the complex square [-1,1]^2; local frames are rescaled so
/// their optimal bounds land in [1/2, 2] (unless disabled); when
/// `require_g_frames` is set, shapes and operators are rejection-sampled
/// until both families are comfortably Theta-g-frames.
inline Instance random_instance(const RandomInstanceOptions& opt, std::uint64_t seed,
                                const Settings& settings = {}) {
  Rng rng(seed, 0x77e0);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const std::size_t n = 1 + rng.bounded(opt.max_outer);
    const std::size_t d = opt.min_dim + rng.bounded(opt.max_dim - opt.min_dim + 1);

    std::vector<std::size_t> local_dims(n), inner(n);
    std::size_t dim_sum = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (opt.singleton_inner) {
        local_dims[j] = 1;
        inner[j] = 1;
      } else {
        local_dims[j] = 1 + rng.bounded(std::min<std::size_t>(2, opt.max_inner));
        inner[j] = opt.onb_local
                       ? local_dims[j]
                       : local_dims[j] + rng.bounded(opt.max_inner - local_dims[j] + 1);
      }
      dim_sum += local_dims[j];
    }
    if (opt.require_g_frames && dim_sum < d) continue;  // stacked rank cannot cover the space

    std::vector<Matrix> lam_ops, om_ops;
    for (std::size_t j = 0; j < n; ++j) {
      lam_ops.push_back(rng.matrix_uniform(local_dims[j], d));
      om_ops.push_back(rng.matrix_uniform(local_dims[j], d));
    }
    GFrame lambda(d, std::move(lam_ops));
    GFrame omega(d, std::move(om_ops));

    std::vector<VectorFrame> lf, lg;
    for (std::size_t j = 0; j < n; ++j) {
      lf.push_back(detail::random_local_frame(rng, local_dims[j], inner[j], opt.onb_local,
                                              opt.normalize_local, settings));
      lg.push_back(detail::random_local_frame(rng, local_dims[j], inner[j], opt.onb_local,
                                              opt.normalize_local, settings));
    }

    OperatorTheta theta = opt.random_theta ? detail::random_theta_operator(rng, d)
                                           : OperatorTheta::identity(d);

    if (opt.require_g_frames) {
      if (theta_gframe_bounds(lambda, theta, settings).lower <= 1e-3) continue;
      if (theta_gframe_bounds(omega, theta, settings).lower <= 1e-3) continue;
    }

    return Instance("random-" + std::to_string(seed), seed, std::move(theta), std::move(lambda),
                    std::move(omega), LocalFrameSet(std::move(lf)), LocalFrameSet(std::move(lg)));
  }
  throw Error(ErrorKind::PreconditionFailure,
              "random instance generation exhausted its attempt budget");
}

// ---------------------------------------------------------------------------
// Gap search

struct GapHit {
  Instance instance;
  WeavingReport def1_report;
  WeavingReport def3_report;
};

struct GapSearchResult {
  std::vector<GapHit> hits;  // ordered by trial index
  std::uint64_t trials = 0;
  std::uint64_t skipped = 0;  // trials refused by the enumeration cap
};

namespace detail {

// Surjection {1..count} -> {1..dim} as ONB indices: a covering permutation
// padded with uniform picks, then shuffled. Guarantees the selected ONB
// vectors form a frame of the local space.
inline std::vector<std::size_t> random_onb_surjection(Rng& rng, std::size_t dim,
                                                      std::size_t count) {
  std::vector<std::size_t> picks = rng.permutation(dim);
  while (picks.size() < count) picks.push_back(rng.bounded(dim));
  for (std::size_t i = picks.size(); i > 1; --i)
    std::swap(picks[i - 1], picks[rng.bounded(i)]);
  return picks;
}

// Gap-prone sampler. Aligned trials share one operator family and draw
// both local frames as phase-twisted ONB picks, so element-wise mixes can
// drop rank exactly while every partition mix stays a full local basis;
// generic trials are unconstrained and keep the search honest.
inline Instance random_gap_candidate(std::size_t dim, const std::vector<std::size_t>& inner,
                                     Rng& rng, std::uint64_t trial) {
  const std::size_t n = inner.size();
  const bool aligned = rng.bounded(2) == 0;

  std::vector<Matrix> lam_ops, om_ops;
  std::vector<VectorFrame> lf, lg;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t local_dim = std::min(inner[j], dim);
    if (aligned) {
      const Matrix u = rng.unitary(dim);
      const double scale = rng.uniform(0.75, 1.5);
      Matrix op(local_dim, dim);
      for (std::size_t r = 0; r < local_dim; ++r)
        for (std::size_t c = 0; c < dim; ++c) op(r, c) = scale * u(r, c);
      lam_ops.push_back(op);
      om_ops.push_back(op);
      for (auto* side : {&lf, &lg}) {
        const std::vector<std::size_t> picks = random_onb_surjection(rng, local_dim, inner[j]);
        std::vector<Vector> vs;
        for (std::size_t k = 0; k < inner[j]; ++k) {
          Vector v(local_dim, cx{0.0, 0.0});
          v[picks[k]] = rng.phase();
          vs.push_back(std::move(v));
        }
        side->push_back(VectorFrame(local_dim, std::move(vs)));
      }
    } else {
      lam_ops.push_back(rng.matrix_uniform(local_dim, dim));
      om_ops.push_back(rng.matrix_uniform(local_dim, dim));
      std::vector<Vector> vf, vg;
      for (std::size_t k = 0; k < inner[j]; ++k) {
        vf.push_back(rng.vector_uniform(local_dim));
        vg.push_back(rng.vector_uniform(local_dim));
      }
      lf.push_back(VectorFrame(local_dim, std::move(vf)));
      lg.push_back(VectorFrame(local_dim, std::move(vg)));
    }
  }
  return Instance("gap-trial-" + std::to_string(trial), trial, OperatorTheta::identity(dim),
                  GFrame(dim, std::move(lam_ops)), GFrame(dim, std::move(om_ops)),
                  LocalFrameSet(std::move(lf)), LocalFrameSet(std::move(lg)));
}

}  // namespace detail

/// Seeded random search for instances woven under the partition definition
/// but not under the element-wise one. Every returned hit carries both
/// exhaustive reports as its certificate. Trials are independently seeded
/// by (seed, trial index), so results do not depend on evaluation order;
/// an empty hit list is a legitimate outcome.
inline GapSearchResult search_gap(std::size_t dim, std::size_t outer_count,
                                  const std::vector<std::size_t>& inner_sizes,
                                  std::uint64_t trials, std::uint64_t seed,
                                  const Settings& settings = {}) {
  if (trials < 1) throw Error(ErrorKind::PreconditionFailure, "trials must be at least 1");
  if (dim == 0) throw Error(ErrorKind::PreconditionFailure, "dimension must be positive");
  if (inner_sizes.size() != outer_count || outer_count == 0)
    throw Error(ErrorKind::PreconditionFailure,
                "inner_sizes must list one size per outer index");
  for (std::size_t m : inner_sizes)
    if (m == 0) throw Error(ErrorKind::PreconditionFailure, "inner sizes must be positive");

  GapSearchResult result;
  result.trials = trials;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng(seed, t);
    const Instance inst = detail::random_gap_candidate(dim, inner_sizes, rng, t);
    try {
      const IndexedFamily f = inst.induced_f();
      const IndexedFamily g = inst.induced_g();
      const WeavingReport r1 = check_woven_def1(f, g, inst.theta(), settings);
      const WeavingReport r3 = check_woven_def3(f, g, inst.theta(), settings);
      if (r1.woven && !r3.woven)
        result.hits.push_back(GapHit{inst, r1, r3});
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::EnumerationCapExceeded) {
        ++result.skipped;
        continue;
      }
      throw;
    }
  }
  return result;
}

}  // namespace weavekit
