#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "weavekit/frames.hpp"
#include "weavekit/gframes.hpp"
#include "weavekit/rng.hpp"
#include "weavekit/settings.hpp"

// Wovenness checkers. Two inequivalent notions are implemented side by
// side:
//   def1   - partition weaving: a selection picks, per outer index j,
//            which of the two families contributes ALL of its j-block.
//   def3   - element-wise weaving: a selection picks, per element (j, k),
//            which family contributes that single element. Requires the
//            two families to share inner index sets.
//   gframe - partition weaving of two operator families.
// Every admissible selection is enumerated, each mixed family gets its
// optimal bounds, and the universal bounds are the min/max over
// selections. def1 admits strictly fewer selections than def3, which is
// exactly why the two verdicts can disagree once some |K_j| >= 2.

namespace weavekit {

enum class WeaveMode { def1, def3, gframe };

inline const char* to_string(WeaveMode m) {
  switch (m) {
    case WeaveMode::def1: return "def1";
    case WeaveMode::def3: return "def3";
    case WeaveMode::gframe: return "gframe";
  }
  return "?";
}

/// Subset sigma of the outer index set {1..n}: bit j-1 set means index j
/// draws from the first family.
struct Def1Selection {
  std::uint64_t bits = 0;
};

/// Per-outer-index subsets sigma_j of the inner index sets: bit k-1 of
/// masks[j-1] set means element (j, k) draws from the first family. The
/// two-level (tau_0, sigma_j) form canonicalizes to this: an outer index
/// outside tau_0 is one with sigma_j empty.
struct Def3Selection {
  std::vector<std::uint64_t> masks;
};

struct SelectionBounds {
  std::uint64_t code = 0;
  double lower = 0.0;
  double upper = 0.0;
};

/// Outcome of a wovenness check. `shape` gives the per-outer-index bit
/// count of the selection encoding (all ones except for def3), so the
/// report is self-contained for rendering witnesses.
struct WeavingReport {
  WeaveMode mode = WeaveMode::def1;
  std::vector<std::size_t> shape;
  std::uint64_t selections_checked = 0;
  double universal_lower = 0.0;
  double universal_upper = 0.0;
  bool woven = false;
  std::uint64_t witness_code = 0;
  bool approximate = false;  // sampled, not exhaustive: woven=true is only "no witness sampled"
  bool vacuous = false;      // Theta == 0 made every lower bound vacuous
  std::vector<SelectionBounds> per_selection;  // populated on request

  std::size_t total_bits() const {
    std::size_t m = 0;
    for (std::size_t b : shape) m += b;
    return m;
  }
};

namespace detail {

inline std::size_t checked_total_bits(const std::vector<std::size_t>& shape) {
  std::size_t m = 0;
  for (std::size_t b : shape) m += b;
  if (m > 63)
    throw Error(ErrorKind::EnumerationCapExceeded,
                "selection space needs " + std::to_string(m) + " bits; at most 63 supported");
  return m;
}

// Witness rule: the least code (ascending integer order of the flat
// bitmask) whose lower bound is within 1e-12 of the universal lower bound.
template <typename BoundsOfCode>
WeavingReport run_selections(WeaveMode mode, std::vector<std::size_t> shape,
                             const std::vector<std::uint64_t>& codes, bool approximate,
                             BoundsOfCode&& bounds_of_code, const Settings& settings,
                             bool full_table) {
  WeavingReport report;
  report.mode = mode;
  report.shape = std::move(shape);
  report.approximate = approximate;
  report.selections_checked = codes.size();

  std::vector<SelectionBounds> table;
  table.reserve(codes.size());
  for (std::uint64_t code : codes) {
    const FrameBounds b = bounds_of_code(code);
    if (b.vacuous) report.vacuous = true;
    table.push_back(SelectionBounds{code, b.lower, b.upper});
  }

  report.universal_lower = table.front().lower;
  report.universal_upper = table.front().upper;
  for (const SelectionBounds& sb : table) {
    report.universal_lower = std::min(report.universal_lower, sb.lower);
    report.universal_upper = std::max(report.universal_upper, sb.upper);
  }
  for (const SelectionBounds& sb : table) {
    if (sb.lower <= report.universal_lower + 1e-12) {
      report.witness_code = sb.code;
      break;
    }
  }
  report.woven = report.universal_lower > settings.verdict_eps;
  if (full_table) report.per_selection = std::move(table);
  return report;
}

template <typename BoundsOfCode>
WeavingReport enumerate_all(WeaveMode mode, std::vector<std::size_t> shape,
                            BoundsOfCode&& bounds_of_code, const Settings& settings,
                            bool full_table) {
  const std::size_t m = checked_total_bits(shape);
  const std::uint64_t count = std::uint64_t{1} << m;
  if (count > settings.enumeration_cap)
    throw Error(ErrorKind::EnumerationCapExceeded,
                std::to_string(count) + " selections exceed the cap of " +
                    std::to_string(settings.enumeration_cap) +
                    "; use sampling mode (--sample) for an approximate check");
  std::vector<std::uint64_t> codes(count);
  for (std::uint64_t c = 0; c < count; ++c) codes[c] = c;
  return run_selections(mode, std::move(shape), codes, /*approximate=*/false,
                        bounds_of_code, settings, full_table);
}

template <typename BoundsOfCode>
WeavingReport sample_selections(WeaveMode mode, std::vector<std::size_t> shape,
                                std::uint64_t sample_count, std::uint64_t seed,
                                BoundsOfCode&& bounds_of_code, const Settings& settings,
                                bool full_table) {
  if (sample_count < 1)
    throw Error(ErrorKind::PreconditionFailure, "sample_count must be at least 1");
  const std::size_t m = checked_total_bits(shape);
  const std::uint64_t mask = m == 63 ? ~std::uint64_t{0} >> 1 : (std::uint64_t{1} << m) - 1;

  // Always include the two boundary selections (all from G, all from F);
  // a sampled "not woven" is conclusive, a sampled "woven" is not.
  std::vector<std::uint64_t> codes{0, mask};
  Rng rng(seed);
  for (std::uint64_t i = 0; i < sample_count; ++i) codes.push_back(rng.next_u64() & mask);
  std::sort(codes.begin(), codes.end());
  codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
  return run_selections(mode, std::move(shape), codes, /*approximate=*/true,
                        bounds_of_code, settings, full_table);
}

inline void check_same_indexing(const IndexedFamily& f, const IndexedFamily& g) {
  if (f.ambient_dim() != g.ambient_dim())
    throw Error(ErrorKind::AmbientDimMismatch,
                "families live in dimensions " + std::to_string(f.ambient_dim()) + " and " +
                    std::to_string(g.ambient_dim()));
  if (f.outer_count() != g.outer_count())
    throw Error(ErrorKind::OuterCountMismatch,
                "outer index counts " + std::to_string(f.outer_count()) + " and " +
                    std::to_string(g.outer_count()) + " differ");
}

inline void check_same_inner_sets(const IndexedFamily& f, const IndexedFamily& g) {
  for (std::size_t j = 0; j < f.outer_count(); ++j)
    if (f.inner_sizes()[j] != g.inner_sizes()[j])
      throw Error(ErrorKind::InnerIndexMismatch,
                  "element-wise weaving needs identical inner index sets, but at j=" +
                      std::to_string(j + 1) + " the sizes are " +
                      std::to_string(f.inner_sizes()[j]) + " and " +
                      std::to_string(g.inner_sizes()[j]));
}

}  // namespace detail

/// Encode a def3 selection as the flat bitmask: bit (offset_j + k - 1) is
/// element (j, k), offsets accumulating the inner sizes.
inline std::uint64_t encode_def3(const Def3Selection& sel, const std::vector<std::size_t>& shape) {
  std::uint64_t code = 0;
  std::size_t offset = 0;
  for (std::size_t j = 0; j < shape.size(); ++j) {
    code |= sel.masks[j] << offset;
    offset += shape[j];
  }
  return code;
}

inline Def3Selection decode_def3(std::uint64_t code, const std::vector<std::size_t>& shape) {
  Def3Selection sel;
  std::size_t offset = 0;
  for (std::size_t b : shape) {
    const std::uint64_t mask = (std::uint64_t{1} << b) - 1;
    sel.masks.push_back((code >> offset) & mask);
    offset += b;
  }
  return sel;
}

/// Canonicalize the two-level selection form (tau_0, {sigma_j}): an outer
/// index outside tau_0 draws everything from the second family, which is
/// the same as sigma_j = empty. The resulting family is identical, so the
/// checkers only ever enumerate the canonical form.
inline Def3Selection def3_from_tau_form(std::uint64_t tau_bits,
                                        const std::vector<std::uint64_t>& sigma_masks) {
  Def3Selection sel;
  sel.masks.reserve(sigma_masks.size());
  for (std::size_t j = 0; j < sigma_masks.size(); ++j)
    sel.masks.push_back(((tau_bits >> j) & 1) ? sigma_masks[j] : 0);
  return sel;
}

/// The def1 mixed family: j-blocks of F where j is selected, j-blocks of G
/// elsewhere, lexicographic in (j, k). Inner index sets of F and G may
/// differ; no selection ever mixes inside a j.
inline VectorFrame weave_def1(const IndexedFamily& f, const IndexedFamily& g,
                              const Def1Selection& sel) {
  detail::check_same_indexing(f, g);
  const std::size_t n = f.outer_count();
  if (n < 64 && (sel.bits >> n) != 0)
    throw Error(ErrorKind::ShapeMismatch, "selection references outer indices beyond n");
  std::vector<Vector> vectors;
  for (std::size_t j = 1; j <= n; ++j) {
    const IndexedFamily& side = ((sel.bits >> (j - 1)) & 1) ? f : g;
    for (std::size_t k = 1; k <= side.inner_sizes()[j - 1]; ++k)
      vectors.push_back(side.at(j, k));
  }
  return VectorFrame(f.ambient_dim(), std::move(vectors));
}

/// The def3 mixed family: element (j, k) comes from F when k is in
/// sigma_j, from G otherwise. Demands identical inner index sets; a
/// mismatch is the precise degeneracy that makes element-wise weaving
/// undefined for differently indexed families.
inline VectorFrame weave_def3(const IndexedFamily& f, const IndexedFamily& g,
                              const Def3Selection& sel) {
  detail::check_same_indexing(f, g);
  detail::check_same_inner_sets(f, g);
  const std::size_t n = f.outer_count();
  if (sel.masks.size() != n)
    throw Error(ErrorKind::ShapeMismatch, "selection has wrong outer index count");
  std::vector<Vector> vectors;
  for (std::size_t j = 1; j <= n; ++j) {
    const std::size_t m_j = f.inner_sizes()[j - 1];
    if (m_j < 64 && (sel.masks[j - 1] >> m_j) != 0)
      throw Error(ErrorKind::ShapeMismatch,
                  "selection references inner indices beyond K_" + std::to_string(j));
    for (std::size_t k = 1; k <= m_j; ++k)
      vectors.push_back(((sel.masks[j - 1] >> (k - 1)) & 1) ? f.at(j, k) : g.at(j, k));
  }
  return VectorFrame(f.ambient_dim(), std::move(vectors));
}

/// The gframe mixed operator family for an outer-index selection.
inline GFrame weave_gframe(const GFrame& lambda, const GFrame& omega, const Def1Selection& sel) {
  if (lambda.ambient_dim() != omega.ambient_dim())
    throw Error(ErrorKind::AmbientDimMismatch, "operator families live in different dimensions");
  if (lambda.size() != omega.size())
    throw Error(ErrorKind::OuterCountMismatch, "operator families have different outer counts");
  const std::size_t n = lambda.size();
  if (n < 64 && (sel.bits >> n) != 0)
    throw Error(ErrorKind::ShapeMismatch, "selection references outer indices beyond n");
  std::vector<Matrix> ops;
  ops.reserve(n);
  for (std::size_t j = 0; j < n; ++j)
    ops.push_back(((sel.bits >> j) & 1) ? lambda.operators()[j] : omega.operators()[j]);
  return GFrame(lambda.ambient_dim(), std::move(ops));
}

/// Exhaustive partition-weaving check: all 2^n outer subsets.
inline WeavingReport check_woven_def1(const IndexedFamily& f, const IndexedFamily& g,
                                      const OperatorTheta& theta, const Settings& settings = {},
                                      bool full_table = false) {
  detail::check_same_indexing(f, g);
  const std::vector<std::size_t> shape(f.outer_count(), 1);
  return detail::enumerate_all(
      WeaveMode::def1, shape,
      [&](std::uint64_t code) {
        return theta_frame_bounds(weave_def1(f, g, Def1Selection{code}), theta, settings);
      },
      settings, full_table);
}

/// Exhaustive element-wise weaving check: all 2^(sum |K_j|) selections.
inline WeavingReport check_woven_def3(const IndexedFamily& f, const IndexedFamily& g,
                                      const OperatorTheta& theta, const Settings& settings = {},
                                      bool full_table = false) {
  detail::check_same_indexing(f, g);
  detail::check_same_inner_sets(f, g);
  const std::vector<std::size_t> shape = f.inner_sizes();
  return detail::enumerate_all(
      WeaveMode::def3, shape,
      [&](std::uint64_t code) {
        return theta_frame_bounds(weave_def3(f, g, decode_def3(code, shape)), theta, settings);
      },
      settings, full_table);
}

/// Exhaustive g-frame weaving check: all 2^n mixed operator families.
inline WeavingReport check_gwoven(const GFrame& lambda, const GFrame& omega,
                                  const OperatorTheta& theta, const Settings& settings = {},
                                  bool full_table = false) {
  if (lambda.ambient_dim() != omega.ambient_dim())
    throw Error(ErrorKind::AmbientDimMismatch, "operator families live in different dimensions");
  if (lambda.size() != omega.size())
    throw Error(ErrorKind::OuterCountMismatch, "operator families have different outer counts");
  const std::vector<std::size_t> shape(lambda.size(), 1);
  return detail::enumerate_all(
      WeaveMode::gframe, shape,
      [&](std::uint64_t code) {
        return theta_gframe_bounds(weave_gframe(lambda, omega, Def1Selection{code}), theta,
                                   settings);
      },
      settings, full_table);
}

/// Seeded approximate def1 check past the enumeration cap.
inline WeavingReport sample_woven_def1(const IndexedFamily& f, const IndexedFamily& g,
                                       const OperatorTheta& theta, std::uint64_t sample_count,
                                       std::uint64_t seed, const Settings& settings = {},
                                       bool full_table = false) {
  detail::check_same_indexing(f, g);
  const std::vector<std::size_t> shape(f.outer_count(), 1);
  return detail::sample_selections(
      WeaveMode::def1, shape, sample_count, seed,
      [&](std::uint64_t code) {
        return theta_frame_bounds(weave_def1(f, g, Def1Selection{code}), theta, settings);
      },
      settings, full_table);
}

/// Seeded approximate def3 check past the enumeration cap.
inline WeavingReport sample_woven_def3(const IndexedFamily& f, const IndexedFamily& g,
                                       const OperatorTheta& theta, std::uint64_t sample_count,
                                       std::uint64_t seed, const Settings& settings = {},
                                       bool full_table = false) {
  detail::check_same_indexing(f, g);
  detail::check_same_inner_sets(f, g);
  const std::vector<std::size_t> shape = f.inner_sizes();
  return detail::sample_selections(
      WeaveMode::def3, shape, sample_count, seed,
      [&](std::uint64_t code) {
        return theta_frame_bounds(weave_def3(f, g, decode_def3(code, shape)), theta, settings);
      },
      settings, full_table);
}

/// Seeded approximate g-frame weaving check.
inline WeavingReport sample_gwoven(const GFrame& lambda, const GFrame& omega,
                                   const OperatorTheta& theta, std::uint64_t sample_count,
                                   std::uint64_t seed, const Settings& settings = {},
                                   bool full_table = false) {
  if (lambda.ambient_dim() != omega.ambient_dim())
    throw Error(ErrorKind::AmbientDimMismatch, "operator families live in different dimensions");
  if (lambda.size() != omega.size())
    throw Error(ErrorKind::OuterCountMismatch, "operator families have different outer counts");
  const std::vector<std::size_t> shape(lambda.size(), 1);
  return detail::sample_selections(
      WeaveMode::gframe, shape, sample_count, seed,
      [&](std::uint64_t code) {
        return theta_gframe_bounds(weave_gframe(lambda, omega, Def1Selection{code}), theta,
                                   settings);
      },
      settings, full_table);
}

}  // namespace weavekit
