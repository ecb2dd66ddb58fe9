// Acceptance gate: one line per criterion, [PASS]/[FAIL], nonzero exit on
// any failure. Oracles here are independent of the library paths they
// check (closed-form quadratic roots, a trigonometric cubic solver, and
// re-derivation of every certificate by fresh enumeration).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "weavekit/cli.hpp"
#include "weavekit/weavekit.hpp"

using namespace weavekit;

namespace {

std::vector<std::string> g_notes;

void check(bool cond, const std::string& msg) {
  if (!cond) g_notes.push_back(msg);
}

void check_close(double got, double want, double tol, const std::string& what) {
  if (!(std::abs(got - want) <= tol))
    g_notes.push_back(what + ": got " + std::to_string(got) + ", want " + std::to_string(want) +
                      " within " + std::to_string(tol));
}

const Vector kE1{cx{1, 0}, cx{0, 0}};
const Vector kE2{cx{0, 0}, cx{1, 0}};

Matrix random_hermitian(Rng& rng, std::size_t n) {
  Matrix h(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    h(i, i) = cx{rng.uniform(-2.0, 2.0), 0.0};
    for (std::size_t j = i + 1; j < n; ++j) {
      h(i, j) = rng.complex_uniform();
      h(j, i) = std::conj(h(i, j));
    }
  }
  return h;
}

// Oracle: roots of lambda^2 - (a+d) lambda + (ad - |b|^2).
std::pair<double, double> eig2_closed_form(const Matrix& h) {
  const double a = h(0, 0).real();
  const double d = h(1, 1).real();
  const double mean = 0.5 * (a + d);
  const double disc = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(h(0, 1)));
  return {mean - disc, mean + disc};
}

// Oracle: the characteristic cubic of a 3x3 Hermitian matrix, solved by
// the trigonometric method (all roots real).
std::vector<double> eig3_char_poly(const Matrix& h) {
  const double c2 = (h(0, 0) + h(1, 1) + h(2, 2)).real();
  const double m01 = (h(0, 0) * h(1, 1)).real() - std::norm(h(0, 1));
  const double m02 = (h(0, 0) * h(2, 2)).real() - std::norm(h(0, 2));
  const double m12 = (h(1, 1) * h(2, 2)).real() - std::norm(h(1, 2));
  const double c1 = m01 + m02 + m12;
  const cx det = h(0, 0) * (h(1, 1) * h(2, 2) - h(1, 2) * h(2, 1)) -
                 h(0, 1) * (h(1, 0) * h(2, 2) - h(1, 2) * h(2, 0)) +
                 h(0, 2) * (h(1, 0) * h(2, 1) - h(1, 1) * h(2, 0));
  const double c0 = det.real();

  // x^3 + a x^2 + b x + c, depressed to t^3 + p t + q with x = t - a/3.
  const double a = -c2, b = c1, c = -c0;
  const double p = b - a * a / 3.0;
  const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  const double m = 2.0 * std::sqrt(std::max(0.0, -p / 3.0));
  std::vector<double> roots;
  if (m < 1e-12) {
    roots = {-a / 3.0, -a / 3.0, -a / 3.0};
  } else {
    const double cos3phi = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
    const double phi = std::acos(cos3phi) / 3.0;
    for (int k = 0; k < 3; ++k)
      roots.push_back(m * std::cos(phi - 2.0 * 3.14159265358979323846 * k / 3.0) - a / 3.0);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

VectorFrame unitary_image_of_onb(Rng& rng, std::size_t dim) {
  const Matrix u = rng.unitary(dim);
  std::vector<Vector> vs;
  for (std::size_t c = 0; c < dim; ++c) vs.push_back(u.column(c));
  return VectorFrame(dim, std::move(vs));
}

// --- criteria ---------------------------------------------------------------

void criterion1_parseval() {
  Rng rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t dim = 2 + static_cast<std::size_t>(trial % 4);
    const FrameBounds b = frame_bounds(unitary_image_of_onb(rng, dim));
    check_close(b.lower, 1.0, 1e-10, "Parseval lower, trial " + std::to_string(trial));
    check_close(b.upper, 1.0, 1e-10, "Parseval upper, trial " + std::to_string(trial));
  }
}

void criterion2_eigensolver_oracle() {
  Rng rng(2025);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix h2 = random_hermitian(rng, 2);
    const auto spec2 = hermitian_eigenvalues(h2);
    const auto [lo, hi] = eig2_closed_form(h2);
    check_close(spec2.eigenvalues[0], lo, 1e-9, "2x2 low eigenvalue, trial " + std::to_string(trial));
    check_close(spec2.eigenvalues[1], hi, 1e-9, "2x2 high eigenvalue, trial " + std::to_string(trial));

    const Matrix h3 = random_hermitian(rng, 3);
    const auto spec3 = hermitian_eigenvalues(h3);
    const std::vector<double> roots = eig3_char_poly(h3);
    for (int i = 0; i < 3; ++i)
      check_close(spec3.eigenvalues[i], roots[i], 1e-9,
                  "3x3 eigenvalue " + std::to_string(i) + ", trial " + std::to_string(trial));
  }
}

void criterion3_canonical_gap() {
  const Instance inst = canonical_gap_instance();
  const IndexedFamily f = inst.induced_f();
  const IndexedFamily g = inst.induced_g();

  const WeavingReport r1 = check_woven_def1(f, g, inst.theta());
  check(r1.woven, "def1 must be woven");
  check_close(r1.universal_lower, 1.0, 1e-12, "def1 universal lower");
  check_close(r1.universal_upper, 1.0, 1e-12, "def1 universal upper");

  const WeavingReport r3 = check_woven_def3(f, g, inst.theta());
  check(!r3.woven, "def3 must not be woven");
  check(r3.universal_lower < 1e-12, "def3 witness lower bound must vanish");
  const VectorFrame witness = weave_def3(f, g, decode_def3(r3.witness_code, r3.shape));
  check(witness.vectors() == std::vector<Vector>{kE1, kE1}, "witness family must be {e1, e1}");

  const WeavingReport rg = check_gwoven(inst.lambda(), inst.omega(), inst.theta());
  check(rg.woven, "the operator families must be g-woven");
}

std::vector<Instance> g_criterion4_instances;

void criterion4_remark_equivalence() {
  RandomInstanceOptions opt;
  opt.max_dim = 4;
  opt.max_outer = 4;
  opt.singleton_inner = true;
  opt.normalize_local = false;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Instance inst = random_instance(opt, seed);
    g_criterion4_instances.push_back(inst);
    const TheoremReport rep = verify_remark_equivalence(inst);
    check(rep.status == ClaimStatus::verified,
          "seed " + std::to_string(seed) + ": status " + to_string(rep.status));
    check(rep.left_verdict == rep.right_verdict,
          "seed " + std::to_string(seed) + ": verdicts disagree");
    check(std::abs(rep.left_report->universal_lower - rep.right_report->universal_lower) <= 1e-12,
          "seed " + std::to_string(seed) + ": universal lower bounds differ");
    check(std::abs(rep.left_report->universal_upper - rep.right_report->universal_upper) <= 1e-12,
          "seed " + std::to_string(seed) + ": universal upper bounds differ");
  }
}

std::vector<Instance> g_criterion5_instances;

void criterion5_theorem_sandwich() {
  RandomInstanceOptions opt;
  opt.max_dim = 4;
  opt.max_outer = 3;
  opt.max_inner = 2;
  opt.require_g_frames = true;
  int non_marginal = 0;
  for (std::uint64_t seed = 1000; seed < 1100; ++seed) {
    const Instance inst = random_instance(opt, seed);
    g_criterion5_instances.push_back(inst);
    const TheoremReport rep = verify_theorem1(inst);
    check(rep.status != ClaimStatus::hypotheses_not_met,
          "seed " + std::to_string(seed) + ": hypotheses unexpectedly unmet");
    if (rep.margin_flag) continue;
    ++non_marginal;
    check(rep.equivalence_holds, "seed " + std::to_string(seed) + ": verdicts disagree");
    for (const InequalityItem& item : rep.inequalities)
      check(item.pass, "seed " + std::to_string(seed) + ": " + item.name + " fails (slack " +
                           std::to_string(item.slack) + ")");
  }
  check(non_marginal >= 50, "too many marginal instances: " + std::to_string(non_marginal) +
                                " non-marginal out of 100");
}

std::vector<Instance> g_criterion6_instances;

void criterion6_corollary_identity() {
  RandomInstanceOptions opt;
  opt.max_dim = 3;
  opt.max_outer = 4;
  opt.singleton_inner = true;
  opt.onb_local = true;
  opt.require_g_frames = true;
  int non_marginal = 0;
  for (std::uint64_t seed = 2000; seed < 2050; ++seed) {
    const Instance inst = random_instance(opt, seed);
    g_criterion6_instances.push_back(inst);
    const TheoremReport with_theta = verify_corollary1(inst);
    check(with_theta.status == ClaimStatus::verified,
          "seed " + std::to_string(seed) + ": corollary status " + to_string(with_theta.status));
    check(with_theta.left_verdict == with_theta.right_verdict,
          "seed " + std::to_string(seed) + ": g-woven and def3-woven disagree");
    check(std::abs(with_theta.left_report->universal_lower -
                   with_theta.right_report->universal_lower) <= 1e-9,
          "seed " + std::to_string(seed) + ": lower bounds differ beyond 1e-9");
    check(std::abs(with_theta.left_report->universal_upper -
                   with_theta.right_report->universal_upper) <= 1e-9,
          "seed " + std::to_string(seed) + ": upper bounds differ beyond 1e-9");

    const TheoremReport identity = specialize_identity(inst);
    check(identity.status == ClaimStatus::verified,
          "seed " + std::to_string(seed) + ": identity status " + to_string(identity.status));
    if (!with_theta.margin_flag && !identity.margin_flag) {
      ++non_marginal;
      check(with_theta.left_verdict == identity.left_verdict &&
                with_theta.right_verdict == identity.right_verdict,
            "seed " + std::to_string(seed) + ": identity-Theta verdicts differ");
    }
  }
  check(non_marginal >= 25, "too many marginal instances: " + std::to_string(non_marginal) +
                                " non-marginal out of 50");
}

void criterion7_refinement() {
  std::vector<Instance> all;
  all.insert(all.end(), g_criterion4_instances.begin(), g_criterion4_instances.end());
  all.insert(all.end(), g_criterion5_instances.begin(), g_criterion5_instances.end());
  all.insert(all.end(), g_criterion6_instances.begin(), g_criterion6_instances.end());
  all.push_back(canonical_gap_instance());
  check(all.size() == 351, "expected 351 instances, have " + std::to_string(all.size()));
  for (std::size_t i = 0; i < all.size(); ++i) {
    const IndexedFamily f = all[i].induced_f();
    const IndexedFamily g = all[i].induced_g();
    const WeavingReport r1 = check_woven_def1(f, g, all[i].theta());
    const WeavingReport r3 = check_woven_def3(f, g, all[i].theta());
    check(r3.universal_lower <= r1.universal_lower + 1e-12,
          "instance " + std::to_string(i) + " (" + all[i].name() + "): def3 lower exceeds def1");
    check(r3.universal_upper >= r1.universal_upper - 1e-12,
          "instance " + std::to_string(i) + " (" + all[i].name() + "): def3 upper below def1");
  }
}

void criterion8_search_gap() {
  const GapSearchResult productive = search_gap(2, 1, {2}, 200, 42);
  check(!productive.hits.empty(), "expected at least one hit at dim 2, inner sizes [2]");
  for (const GapHit& hit : productive.hits) {
    const IndexedFamily f = hit.instance.induced_f();
    const IndexedFamily g = hit.instance.induced_g();
    const WeavingReport r1 = check_woven_def1(f, g, hit.instance.theta());
    const WeavingReport r3 = check_woven_def3(f, g, hit.instance.theta());
    check(r1.woven && hit.def1_report.woven, hit.instance.name() + ": def1 certificate broken");
    check(!r3.woven && !hit.def3_report.woven, hit.instance.name() + ": def3 certificate broken");
    check(r1.universal_lower == hit.def1_report.universal_lower &&
              r3.universal_lower == hit.def3_report.universal_lower,
          hit.instance.name() + ": certificate bounds do not reproduce");
  }

  const GapSearchResult barren = search_gap(2, 1, {1}, 200, 42);
  check(barren.hits.empty(),
        "singleton inner sizes produced " + std::to_string(barren.hits.size()) + " hits");
}

struct CliCall {
  int code = 0;
  std::string out;
};

CliCall call_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CliCall r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  return r;
}

void criterion9_cli_round_trip() {
  RandomInstanceOptions opt;
  for (std::uint64_t seed = 3000; seed < 3020; ++seed) {
    const Instance inst = random_instance(opt, seed);
    const Instance back = io::parse_instance(io::serialize_instance(inst));
    check(back == inst, "seed " + std::to_string(seed) + ": round trip changed the instance");
  }

  const std::filesystem::path dir("acceptance_scratch");
  std::filesystem::create_directories(dir);
  const std::string gap = (dir / "gap.json").string();
  std::ofstream(gap) << io::serialize_instance(canonical_gap_instance());
  RandomInstanceOptions singleton_opt;
  singleton_opt.singleton_inner = true;
  singleton_opt.onb_local = true;
  singleton_opt.require_g_frames = true;
  const std::string single = (dir / "singleton.json").string();
  std::ofstream(single) << io::serialize_instance(random_instance(singleton_opt, 7));

  const std::vector<std::vector<std::string>> invocations{
      {"--json", "bounds", gap},
      {"--json", "bounds", "--frame-of", "lambda[0]", "--with-theta", gap},
      {"--json", "gbounds", gap},
      {"--json", "gbounds", "--family", "omega", "--with-theta", gap},
      {"--json", "induce", gap},
      {"--json", "induce", "--family", "omega", gap},
      {"--json", "weave-check", "--mode", "def1", gap},
      {"--json", "weave-check", "--mode", "def3", "--full-table", gap},
      {"--json", "weave-check", "--mode", "gframe", gap},
      {"--json", "--seed", "11", "weave-check", "--mode", "def3", "--sample", "32", gap},
      {"--json", "verify-theorem1", gap},
      {"--json", "verify-remark", single},
      {"--json", "verify-corollary", single},
      {"--json", "verify-corollary", "--identity-theta", single},
      {"--json", "--seed", "42", "search-gap", "--dim", "2", "--n", "1", "--inner-sizes", "2",
       "--trials", "25"},
  };
  for (const auto& argv : invocations) {
    const CliCall a = call_cli(argv);
    const CliCall b = call_cli(argv);
    std::string joined;
    for (const std::string& s : argv) joined += s + " ";
    check(a.code == b.code, joined + ": exit codes differ");
    check(!a.out.empty(), joined + ": no output");
    check(a.out == b.out, joined + ": output is not byte-identical");
  }
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<void()> body;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "parseval-suite", 1.0, criterion1_parseval},
      {2, "eigensolver-oracle", 2.0, criterion2_eigensolver_oracle},
      {3, "canonical-gap-certificate", 0.1, criterion3_canonical_gap},
      {4, "remark-equivalence-batch", 30.0, criterion4_remark_equivalence},
      {5, "theorem-sandwich-batch", 60.0, criterion5_theorem_sandwich},
      {6, "corollary-identity-batch", 10.0, criterion6_corollary_identity},
      {7, "refinement-monotonicity", 60.0, criterion7_refinement},
      {8, "search-gap-productivity", 20.0, criterion8_search_gap},
      {9, "cli-round-trip-determinism", 60.0, criterion9_cli_round_trip},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    g_notes.clear();
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body();
    } catch (const std::exception& e) {
      g_notes.push_back(std::string("exception: ") + e.what());
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed >= c.budget_seconds)
      g_notes.push_back("runtime " + std::to_string(elapsed) + "s exceeds budget " +
                        std::to_string(c.budget_seconds) + "s");
    if (g_notes.empty()) {
      std::printf("[PASS] criterion %d %s (%.3fs)\n", c.id, c.name, elapsed);
    } else {
      ++failed;
      std::printf("[FAIL] criterion %d %s (%.3fs)\n", c.id, c.name, elapsed);
      for (std::size_t i = 0; i < g_notes.size() && i < 5; ++i)
        std::printf("       %s\n", g_notes[i].c_str());
      if (g_notes.size() > 5)
        std::printf("       ... and %zu more\n", g_notes.size() - 5);
    }
  }
  return failed == 0 ? 0 : 1;
}
