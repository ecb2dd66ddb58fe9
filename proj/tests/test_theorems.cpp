#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "weavekit/theorems.hpp"

using namespace weavekit;
using Catch::Matchers::WithinAbs;

namespace {

const Vector e1{cx{1, 0}, cx{0, 0}};
const Vector e2{cx{0, 0}, cx{1, 0}};

// Two coordinate functionals and their swap: the smallest instance where
// nothing is woven on either side.
Instance swapped_functionals() {
  const Matrix row1 = Matrix::from_rows({{cx{1, 0}, cx{0, 0}}});
  const Matrix row2 = Matrix::from_rows({{cx{0, 0}, cx{1, 0}}});
  const VectorFrame unit_scalar(1, {Vector{cx{1, 0}}});
  return Instance("swapped", 0, OperatorTheta::identity(2), GFrame(2, {row1, row2}),
                  GFrame(2, {row2, row1}), LocalFrameSet({unit_scalar, unit_scalar}),
                  LocalFrameSet({unit_scalar, unit_scalar}));
}

Instance trivial_identity_instance() {
  return Instance("trivial", 0, OperatorTheta::identity(2), GFrame(2, {Matrix::identity(2)}),
                  GFrame(2, {Matrix::identity(2)}), LocalFrameSet({VectorFrame(2, {e1, e2})}),
                  LocalFrameSet({VectorFrame(2, {e1, e2})}));
}

}  // namespace

TEST_CASE("verify_theorem1 on hand-built instances") {
  SECTION("identity instance: both sides woven at (1, 1)") {
    const TheoremReport rep = verify_theorem1(trivial_identity_instance());
    CHECK(rep.status == ClaimStatus::verified);
    CHECK(rep.left_verdict);
    CHECK(rep.right_verdict);
    CHECK(rep.equivalence_holds);
    CHECK_FALSE(rep.margin_flag);
    REQUIRE(rep.left_report);
    REQUIRE(rep.right_report);
    CHECK_THAT(rep.left_report->universal_lower, WithinAbs(1.0, 1e-10));
    CHECK_THAT(rep.right_report->universal_lower, WithinAbs(1.0, 1e-10));
    for (const InequalityItem& item : rep.inequalities) CHECK(item.pass);
  }
  SECTION("swapped functionals: both sides fail together") {
    const TheoremReport rep = verify_theorem1(swapped_functionals());
    CHECK(rep.status == ClaimStatus::verified);
    CHECK_FALSE(rep.left_verdict);
    CHECK_FALSE(rep.right_verdict);
    CHECK(rep.equivalence_holds);
    CHECK(rep.margin_flag);  // universal lowers sit at zero
  }
  SECTION("a non-g-frame voids the hypotheses") {
    const Matrix row1 = Matrix::from_rows({{cx{1, 0}, cx{0, 0}}});
    const VectorFrame unit_scalar(1, {Vector{cx{1, 0}}});
    const Instance bad("bad", 0, OperatorTheta::identity(2), GFrame(2, {row1}),
                       GFrame(2, {row1}), LocalFrameSet({unit_scalar}),
                       LocalFrameSet({unit_scalar}));
    const TheoremReport rep = verify_theorem1(bad);
    CHECK(rep.status == ClaimStatus::hypotheses_not_met);
    CHECK_FALSE(rep.left_report);
  }
}

TEST_CASE("verify_theorem1 on seeded random instances") {
  RandomInstanceOptions opt;
  opt.require_g_frames = true;
  int non_marginal = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance inst = random_instance(opt, seed);
    const TheoremReport rep = verify_theorem1(inst);
    REQUIRE(rep.status != ClaimStatus::hypotheses_not_met);
    for (const InequalityItem& item : rep.inequalities) CHECK(item.pass);
    if (!rep.margin_flag) {
      ++non_marginal;
      CHECK(rep.equivalence_holds);
    }
  }
  CHECK(non_marginal > 10);
}

TEST_CASE("verify_remark_equivalence") {
  SECTION("swapped singleton instance agrees on both definitions") {
    const TheoremReport rep = verify_remark_equivalence(swapped_functionals());
    CHECK(rep.status == ClaimStatus::verified);
    CHECK_FALSE(rep.left_verdict);
    CHECK_FALSE(rep.right_verdict);
    REQUIRE(rep.left_report);
    REQUIRE(rep.right_report);
    CHECK(rep.left_report->witness_code == rep.right_report->witness_code);
  }
  SECTION("identical singleton families are woven on both definitions") {
    const Matrix row1 = Matrix::from_rows({{cx{1, 0}, cx{0, 0}}});
    const Matrix row2 = Matrix::from_rows({{cx{0, 0}, cx{1, 0}}});
    const VectorFrame unit_scalar(1, {Vector{cx{1, 0}}});
    const Instance inst("self", 0, OperatorTheta::identity(2), GFrame(2, {row1, row2}),
                        GFrame(2, {row1, row2}), LocalFrameSet({unit_scalar, unit_scalar}),
                        LocalFrameSet({unit_scalar, unit_scalar}));
    const TheoremReport rep = verify_remark_equivalence(inst);
    CHECK(rep.status == ClaimStatus::verified);
    CHECK(rep.left_verdict);
    CHECK(rep.right_verdict);
    CHECK_THAT(rep.left_report->universal_lower, WithinAbs(1.0, 1e-10));
  }
  SECTION("non-singleton inner sets violate the precondition") {
    CHECK_THROWS_MATCHES(verify_remark_equivalence(canonical_gap_instance()), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                           return e.kind() == ErrorKind::PreconditionFailure;
                         }));
  }
  SECTION("seeded random singleton instances agree exactly") {
    RandomInstanceOptions opt;
    opt.singleton_inner = true;
    opt.max_outer = 4;
    opt.normalize_local = false;
    for (std::uint64_t seed = 100; seed < 130; ++seed) {
      const TheoremReport rep = verify_remark_equivalence(random_instance(opt, seed));
      CHECK(rep.status == ClaimStatus::verified);
      CHECK(rep.left_verdict == rep.right_verdict);
      CHECK(rep.left_report->universal_lower == rep.right_report->universal_lower);
      CHECK(rep.left_report->universal_upper == rep.right_report->universal_upper);
    }
  }
}

TEST_CASE("verify_corollary1") {
  SECTION("rank-one functionals from two bases") {
    const TheoremReport rep = verify_corollary1(swapped_functionals());
    CHECK(rep.status == ClaimStatus::verified);
    CHECK(rep.equivalence_holds);
  }
  SECTION("a family against itself is woven with equal bounds") {
    const Matrix row1 = Matrix::from_rows({{cx{1, 0}, cx{0, 0}}});
    const Matrix row2 = Matrix::from_rows({{cx{0, 0}, cx{1, 0}}});
    const VectorFrame unit_scalar(1, {Vector{cx{1, 0}}});
    const Instance inst("self", 0, OperatorTheta::identity(2), GFrame(2, {row1, row2}),
                        GFrame(2, {row1, row2}), LocalFrameSet({unit_scalar, unit_scalar}),
                        LocalFrameSet({unit_scalar, unit_scalar}));
    const TheoremReport rep = verify_corollary1(inst);
    CHECK(rep.status == ClaimStatus::verified);
    CHECK(rep.left_verdict);
    CHECK(rep.right_verdict);
  }
  SECTION("non-ONB locals violate the precondition") {
    const Matrix row1 = Matrix::from_rows({{cx{1, 0}, cx{0, 0}}});
    const VectorFrame stretched(1, {Vector{cx{2, 0}}});
    const Instance inst("stretched", 0, OperatorTheta::identity(2), GFrame(2, {row1}),
                        GFrame(2, {row1}), LocalFrameSet({stretched}),
                        LocalFrameSet({stretched}));
    CHECK_THROWS_MATCHES(verify_corollary1(inst), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                           return e.kind() == ErrorKind::PreconditionFailure;
                         }));
  }
  SECTION("seeded random singleton-ONB instances") {
    RandomInstanceOptions opt;
    opt.singleton_inner = true;
    opt.onb_local = true;
    opt.require_g_frames = true;
    opt.max_outer = 4;
    opt.max_dim = 3;
    for (std::uint64_t seed = 200; seed < 215; ++seed) {
      const TheoremReport rep = verify_corollary1(random_instance(opt, seed));
      CHECK(rep.status == ClaimStatus::verified);
    }
  }
}

TEST_CASE("specialize_identity") {
  RandomInstanceOptions opt;
  opt.singleton_inner = true;
  opt.onb_local = true;
  opt.require_g_frames = true;
  opt.max_outer = 3;
  opt.max_dim = 3;
  for (std::uint64_t seed = 300; seed < 310; ++seed) {
    const Instance inst = random_instance(opt, seed);
    const TheoremReport with_theta = verify_corollary1(inst);
    const TheoremReport identity = specialize_identity(inst);
    CHECK(identity.status == ClaimStatus::verified);
    CHECK(identity.claim == "corollary1-identity");
    if (!with_theta.margin_flag && !identity.margin_flag) {
      CHECK(with_theta.left_verdict == identity.left_verdict);
      CHECK(with_theta.right_verdict == identity.right_verdict);
    }
  }
}

TEST_CASE("canonical gap instance certificate") {
  const Instance inst = canonical_gap_instance();
  const IndexedFamily f = inst.induced_f();
  const IndexedFamily g = inst.induced_g();

  const WeavingReport r1 = check_woven_def1(f, g, inst.theta());
  CHECK(r1.woven);
  CHECK_THAT(r1.universal_lower, WithinAbs(1.0, 1e-12));
  CHECK_THAT(r1.universal_upper, WithinAbs(1.0, 1e-12));

  const WeavingReport r3 = check_woven_def3(f, g, inst.theta());
  CHECK_FALSE(r3.woven);
  CHECK(r3.universal_lower < 1e-12);
  const VectorFrame witness = weave_def3(f, g, decode_def3(r3.witness_code, r3.shape));
  CHECK(witness.vectors() == std::vector<Vector>{e1, e1});

  const WeavingReport rg = check_gwoven(inst.lambda(), inst.omega(), inst.theta());
  CHECK(rg.woven);

  SECTION("its theorem report holds with both sides woven") {
    const TheoremReport rep = verify_theorem1(inst);
    CHECK(rep.status == ClaimStatus::verified);
    CHECK(rep.left_verdict);
    CHECK(rep.right_verdict);
  }
  SECTION("verdicts are stable under the theta_side switch") {
    Settings direct;
    direct.theta_side = ThetaSide::direct;
    CHECK(check_woven_def1(f, g, inst.theta(), direct).woven);
    CHECK_FALSE(check_woven_def3(f, g, inst.theta(), direct).woven);
    CHECK(check_gwoven(inst.lambda(), inst.omega(), inst.theta(), direct).woven);
  }
}

TEST_CASE("search_gap") {
  SECTION("finds certified hits at the gap-prone shape") {
    const GapSearchResult result = search_gap(2, 1, {2}, 50, 42);
    REQUIRE_FALSE(result.hits.empty());
    for (const GapHit& hit : result.hits) {
      CHECK(hit.def1_report.woven);
      CHECK_FALSE(hit.def3_report.woven);
      // Re-derive the certificates from the instance.
      const IndexedFamily f = hit.instance.induced_f();
      const IndexedFamily g = hit.instance.induced_g();
      const WeavingReport r1 = check_woven_def1(f, g, hit.instance.theta());
      const WeavingReport r3 = check_woven_def3(f, g, hit.instance.theta());
      CHECK(r1.woven == hit.def1_report.woven);
      CHECK(r3.woven == hit.def3_report.woven);
      CHECK(r1.universal_lower == hit.def1_report.universal_lower);
      CHECK(r3.universal_lower == hit.def3_report.universal_lower);
    }
  }
  SECTION("singleton inner sizes never produce a gap") {
    const GapSearchResult result = search_gap(2, 1, {1}, 50, 42);
    CHECK(result.hits.empty());
  }
  SECTION("deterministic for a fixed seed") {
    const GapSearchResult a = search_gap(2, 1, {2}, 20, 7);
    const GapSearchResult b = search_gap(2, 1, {2}, 20, 7);
    REQUIRE(a.hits.size() == b.hits.size());
    for (std::size_t i = 0; i < a.hits.size(); ++i)
      CHECK(a.hits[i].instance == b.hits[i].instance);
  }
  SECTION("zero trials are rejected") {
    CHECK_THROWS_MATCHES(search_gap(2, 1, {2}, 0, 0), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                           return e.kind() == ErrorKind::PreconditionFailure;
                         }));
  }
}

TEST_CASE("random_instance respects its options") {
  SECTION("singleton shapes") {
    RandomInstanceOptions opt;
    opt.singleton_inner = true;
    const Instance inst = random_instance(opt, 5);
    for (const VectorFrame& f : inst.local_f().frames()) CHECK(f.size() == 1);
    for (const VectorFrame& f : inst.local_g().frames()) CHECK(f.size() == 1);
  }
  SECTION("g-frame rejection leaves healthy hypotheses") {
    RandomInstanceOptions opt;
    opt.require_g_frames = true;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const Instance inst = random_instance(opt, seed);
      CHECK(theta_gframe_bounds(inst.lambda(), inst.theta()).lower > 1e-3);
      CHECK(theta_gframe_bounds(inst.omega(), inst.theta()).lower > 1e-3);
    }
  }
  SECTION("normalized local bounds land in [1/2, 2]") {
    RandomInstanceOptions opt;
    for (std::uint64_t seed = 10; seed < 15; ++seed) {
      const Instance inst = random_instance(opt, seed);
      for (const LocalFrameSet* side : {&inst.local_f(), &inst.local_g()}) {
        for (const VectorFrame& f : side->frames()) {
          const FrameBounds b = frame_bounds(f);
          CHECK(b.lower >= 0.5 - 1e-9);
          CHECK(b.upper <= 2.0 + 1e-9);
        }
      }
    }
  }
}
