#pragma once

#include <algorithm>
#include <fstream>
#include <iterator>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "weavekit/io.hpp"

// The weavekit command line. One subcommand per checker plus the
// primitives; every tunable is a global flag. Exit codes: 0 the checked
// property holds (woven / verified / frame), 1 it fails (not woven /
// refuted / gap found), 2 invalid input or unmet hypotheses, 3 internal
// numerical failure.

namespace weavekit::cli {

namespace detail {

inline int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonSquare:
    case ErrorKind::NotHermitian:
    case ErrorKind::NoConvergence:
    case ErrorKind::NotPSD:
      return 3;
    default:
      return 2;
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorKind::SemanticError, "cannot open instance file: " + path);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline void emit(std::ostream& out, bool as_json, const io::json& machine,
                 const std::string& text) {
  if (as_json)
    out << machine.dump(2) << "\n";
  else
    out << text;
}

inline int status_exit(ClaimStatus status) {
  switch (status) {
    case ClaimStatus::verified: return 0;
    case ClaimStatus::refuted: return 1;
    case ClaimStatus::hypotheses_not_met: return 2;
  }
  return 3;
}

// "lambda[2]" / "omega[0]" / "induced-f" / "induced-g" -> a vector frame.
inline VectorFrame select_frame(const Instance& inst, const std::string& target) {
  if (target == "induced-f") return inst.induced_f().frame();
  if (target == "induced-g") return inst.induced_g().frame();
  for (const char* prefix : {"lambda", "omega"}) {
    const std::string p = std::string(prefix) + "[";
    if (target.rfind(p, 0) == 0 && target.back() == ']') {
      std::size_t idx = 0;
      try {
        idx = std::stoul(target.substr(p.size(), target.size() - p.size() - 1));
      } catch (const std::exception&) {
        throw Error(ErrorKind::SemanticError, "malformed frame selector: " + target);
      }
      const bool is_lambda = *prefix == 'l';
      const IndexedFamily fam = is_lambda ? inst.induced_f() : inst.induced_g();
      if (idx >= fam.outer_count())
        throw Error(ErrorKind::SemanticError,
                    target + " is out of range; there are " +
                        std::to_string(fam.outer_count()) + " operator blocks");
      std::vector<Vector> vs;
      for (std::size_t k = 1; k <= fam.inner_sizes()[idx]; ++k) vs.push_back(fam.at(idx + 1, k));
      return VectorFrame(fam.ambient_dim(), std::move(vs));
    }
  }
  throw Error(ErrorKind::SemanticError,
              "unknown frame selector \"" + target +
                  "\"; expected induced-f, induced-g, lambda[i], or omega[i]");
}

}  // namespace detail

/// Dispatches one invocation; `args` excludes the program name. All report
/// output goes to `out`, diagnostics to `err`.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"finite-dimensional weaving checks for frames and g-frames"};
  app.name("weavekit");
  app.fallthrough();
  app.require_subcommand(1);

  bool as_json = false;
  std::uint64_t seed = 0;
  double tol = -1.0;
  std::string theta_side = "adjoint";
  std::uint64_t cap = 0;
  bool full_table = false;
  app.add_flag("--json", as_json, "emit the machine-readable report");
  app.add_option("--seed", seed, "seed for sampling and search (default 0)");
  app.add_option("--tol", tol, "verdict threshold override (default 1e-9)");
  app.add_option("--theta-side", theta_side, "side of Theta in the lower bound")
      ->check(CLI::IsMember({"adjoint", "direct"}));
  app.add_option("--cap", cap, "enumeration cap override (default 2^20)");
  app.add_flag("--full-table", full_table, "include per-selection bounds in the report");

  std::string bounds_file, bounds_target = "induced-f";
  bool bounds_theta = false;
  CLI::App* bounds_cmd = app.add_subcommand("bounds", "optimal frame bounds of a vector family");
  bounds_cmd->add_option("file", bounds_file, "instance file")->required();
  bounds_cmd->add_option("--frame-of", bounds_target,
                         "induced-f, induced-g, lambda[i], or omega[i]");
  bounds_cmd->add_flag("--with-theta", bounds_theta, "bound relative to the instance Theta");

  std::string gbounds_file, gbounds_family = "lambda";
  bool gbounds_theta = false;
  CLI::App* gbounds_cmd = app.add_subcommand("gbounds", "optimal g-frame bounds");
  gbounds_cmd->add_option("file", gbounds_file, "instance file")->required();
  gbounds_cmd->add_option("--family", gbounds_family, "lambda or omega")
      ->check(CLI::IsMember({"lambda", "omega"}));
  gbounds_cmd->add_flag("--with-theta", gbounds_theta, "bound relative to the instance Theta");

  std::string induce_file, induce_family = "lambda";
  CLI::App* induce_cmd =
      app.add_subcommand("induce", "emit the induced family as a frame block");
  induce_cmd->add_option("file", induce_file, "instance file")->required();
  induce_cmd->add_option("--family", induce_family, "lambda or omega")
      ->check(CLI::IsMember({"lambda", "omega"}));

  std::string weave_file, weave_mode;
  std::uint64_t weave_sample = 0;
  CLI::App* weave_cmd = app.add_subcommand("weave-check", "decide wovenness");
  weave_cmd->add_option("file", weave_file, "instance file")->required();
  weave_cmd->add_option("--mode", weave_mode, "def1, def3, or gframe")
      ->required()
      ->check(CLI::IsMember({"def1", "def3", "gframe"}));
  weave_cmd->add_option("--sample", weave_sample,
                        "sample this many selections instead of enumerating");

  std::string thm_file;
  CLI::App* thm_cmd = app.add_subcommand(
      "verify-theorem1", "certify g-woven vs induced def1-woven with the bound sandwich");
  thm_cmd->add_option("file", thm_file, "instance file")->required();

  std::string remark_file;
  CLI::App* remark_cmd = app.add_subcommand(
      "verify-remark", "certify def1/def3 equivalence on singleton inner sets");
  remark_cmd->add_option("file", remark_file, "instance file")->required();

  std::string cor_file;
  bool cor_identity = false;
  CLI::App* cor_cmd = app.add_subcommand(
      "verify-corollary", "certify g-woven vs def3-woven for orthonormal singleton locals");
  cor_cmd->add_option("file", cor_file, "instance file")->required();
  cor_cmd->add_flag("--identity-theta", cor_identity, "re-run with Theta = identity");

  std::size_t gap_dim = 2, gap_n = 1;
  std::vector<std::size_t> gap_inner;
  std::uint64_t gap_trials = 100;
  CLI::App* gap_cmd =
      app.add_subcommand("search-gap", "search for def1-woven but not def3-woven instances");
  gap_cmd->add_option("--dim", gap_dim, "ambient dimension")->required();
  gap_cmd->add_option("--n", gap_n, "outer index count")->required();
  gap_cmd->add_option("--inner-sizes", gap_inner, "comma-separated |K_j| per outer index")
      ->required()
      ->delimiter(',');
  gap_cmd->add_option("--trials", gap_trials, "number of seeded trials")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  Settings settings;
  if (tol > 0.0) settings.verdict_eps = tol;
  if (cap > 0) settings.enumeration_cap = cap;
  settings.theta_side = theta_side == "direct" ? ThetaSide::direct : ThetaSide::adjoint;

  try {
    if (*bounds_cmd) {
      const Instance inst = io::parse_instance(detail::read_file(bounds_file));
      const VectorFrame frame = detail::select_frame(inst, bounds_target);
      const FrameBounds b = bounds_theta ? theta_frame_bounds(frame, inst.theta(), settings)
                                         : frame_bounds(frame, settings);
      detail::emit(out, as_json, io::bounds_report_to_json(bounds_target, bounds_theta, b),
                   io::bounds_report_to_text(bounds_target, bounds_theta, b));
      return b.is_frame ? 0 : 1;
    }

    if (*gbounds_cmd) {
      const Instance inst = io::parse_instance(detail::read_file(gbounds_file));
      const GFrame& family = gbounds_family == "omega" ? inst.omega() : inst.lambda();
      const FrameBounds b = gbounds_theta ? theta_gframe_bounds(family, inst.theta(), settings)
                                          : gframe_bounds(family, settings);
      detail::emit(out, as_json, io::bounds_report_to_json(gbounds_family, gbounds_theta, b),
                   io::bounds_report_to_text(gbounds_family, gbounds_theta, b));
      return b.is_frame ? 0 : 1;
    }

    if (*induce_cmd) {
      const Instance inst = io::parse_instance(detail::read_file(induce_file));
      const IndexedFamily fam =
          induce_family == "omega" ? inst.induced_g() : inst.induced_f();
      out << io::frame_block_to_json(fam.frame()).dump(2) << "\n";
      return 0;
    }

    if (*weave_cmd) {
      const Instance inst = io::parse_instance(detail::read_file(weave_file));
      WeavingReport report;
      if (weave_mode == "gframe") {
        report = weave_sample > 0
                     ? sample_gwoven(inst.lambda(), inst.omega(), inst.theta(), weave_sample,
                                     seed, settings, full_table)
                     : check_gwoven(inst.lambda(), inst.omega(), inst.theta(), settings,
                                    full_table);
      } else {
        const IndexedFamily f = inst.induced_f();
        const IndexedFamily g = inst.induced_g();
        if (weave_mode == "def1")
          report = weave_sample > 0
                       ? sample_woven_def1(f, g, inst.theta(), weave_sample, seed, settings,
                                           full_table)
                       : check_woven_def1(f, g, inst.theta(), settings, full_table);
        else
          report = weave_sample > 0
                       ? sample_woven_def3(f, g, inst.theta(), weave_sample, seed, settings,
                                           full_table)
                       : check_woven_def3(f, g, inst.theta(), settings, full_table);
      }
      detail::emit(out, as_json, io::weaving_report_to_json(report),
                   io::weaving_report_to_text(report));
      return report.woven ? 0 : 1;
    }

    if (*thm_cmd) {
      const Instance inst = io::parse_instance(detail::read_file(thm_file));
      const TheoremReport rep = verify_theorem1(inst, settings);
      detail::emit(out, as_json, io::theorem_report_to_json(rep),
                   io::theorem_report_to_text(rep));
      return detail::status_exit(rep.status);
    }

    if (*remark_cmd) {
      const Instance inst = io::parse_instance(detail::read_file(remark_file));
      const TheoremReport rep = verify_remark_equivalence(inst, settings);
      detail::emit(out, as_json, io::theorem_report_to_json(rep),
                   io::theorem_report_to_text(rep));
      return detail::status_exit(rep.status);
    }

    if (*cor_cmd) {
      const Instance inst = io::parse_instance(detail::read_file(cor_file));
      const TheoremReport rep =
          cor_identity ? specialize_identity(inst, settings) : verify_corollary1(inst, settings);
      detail::emit(out, as_json, io::theorem_report_to_json(rep),
                   io::theorem_report_to_text(rep));
      return detail::status_exit(rep.status);
    }

    if (*gap_cmd) {
      const GapSearchResult result =
          search_gap(gap_dim, gap_n, gap_inner, gap_trials, seed, settings);
      detail::emit(out, as_json, io::gap_search_to_json(result),
                   io::gap_search_to_text(result));
      return result.hits.empty() ? 0 : 1;
    }
  } catch (const Error& e) {
    err << e.what() << "\n";
    return detail::exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 3;
  }

  err << "no subcommand given\n";
  return 2;
}

}  // namespace weavekit::cli
