#pragma once

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "json.hpp"
#include "weavekit/theorems.hpp"

// Instance document ingestion and report serialization. Instances are
// JSON: {"dim", "theta", "lambda", "omega", "local_f", "local_g"} with
// optional "name" and "seed"; a matrix is a list of rows, an entry is a
// bare real or a two-element [re, im]. Reports render twice, as text for
// humans and as JSON for machines; the two never disagree on verdicts or
// on bounds at 12 significant digits.

namespace weavekit::io {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Number formatting: report bounds are pinned to 12 significant digits in
// both renderings.

inline std::string format_bound(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

inline json bound_to_json(double x) {
  if (std::isinf(x)) return json(format_bound(x));
  return json(std::strtod(format_bound(x).c_str(), nullptr));
}

// ---------------------------------------------------------------------------
// Instance serialization

inline json entry_to_json(cx z) {
  if (z.imag() == 0.0) return json(z.real());
  return json::array({z.real(), z.imag()});
}

inline json vector_to_json(const Vector& v) {
  json arr = json::array();
  for (cx z : v) arr.push_back(entry_to_json(z));
  return arr;
}

inline json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(entry_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json frame_block_to_json(const VectorFrame& f) {
  json block;
  json vectors = json::array();
  for (const Vector& v : f.vectors()) vectors.push_back(vector_to_json(v));
  block["vectors"] = std::move(vectors);
  return block;
}

inline json instance_to_json(const Instance& inst) {
  json doc;
  if (!inst.name().empty()) doc["name"] = inst.name();
  if (inst.seed() != 0) doc["seed"] = inst.seed();
  doc["dim"] = inst.dim();
  doc["theta"] = inst.theta().is_identity() ? json("identity")
                                            : matrix_to_json(inst.theta().matrix());
  json lambda = json::array();
  for (const Matrix& op : inst.lambda().operators()) lambda.push_back({{"matrix", matrix_to_json(op)}});
  doc["lambda"] = std::move(lambda);
  json omega = json::array();
  for (const Matrix& op : inst.omega().operators()) omega.push_back({{"matrix", matrix_to_json(op)}});
  doc["omega"] = std::move(omega);
  json local_f = json::array();
  for (const VectorFrame& f : inst.local_f().frames()) local_f.push_back(frame_block_to_json(f));
  doc["local_f"] = std::move(local_f);
  json local_g = json::array();
  for (const VectorFrame& f : inst.local_g().frames()) local_g.push_back(frame_block_to_json(f));
  doc["local_g"] = std::move(local_g);
  return doc;
}

inline std::string serialize_instance(const Instance& inst) {
  return instance_to_json(inst).dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Instance parsing

namespace detail {

[[noreturn]] inline void schema_error(const std::string& path, const std::string& message) {
  throw Error(ErrorKind::SchemaError, path + ": " + message);
}

inline cx parse_entry(const json& j, const std::string& path) {
  if (j.is_number()) return cx{j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return cx{j[0].get<double>(), j[1].get<double>()};
  schema_error(path, "expected a real number or [re, im], found " + std::string(j.type_name()));
}

inline Vector parse_vector(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty())
    schema_error(path, "expected a nonempty array of entries");
  Vector v;
  for (std::size_t i = 0; i < j.size(); ++i)
    v.push_back(parse_entry(j[i], path + "[" + std::to_string(i) + "]"));
  return v;
}

inline Matrix parse_matrix(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty())
    schema_error(path, "expected a nonempty array of rows");
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < j.size(); ++i)
    rows.push_back(parse_vector(j[i], path + "[" + std::to_string(i) + "]"));
  const std::size_t cols = rows.front().size();
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].size() != cols)
      schema_error(path, "row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                             " entries, row 0 has " + std::to_string(cols));
  std::vector<cx> flat;
  flat.reserve(rows.size() * cols);
  for (const Vector& r : rows) flat.insert(flat.end(), r.begin(), r.end());
  return Matrix(rows.size(), cols, std::move(flat));
}

inline std::vector<Matrix> parse_operator_blocks(const json& j, const std::string& key,
                                                 std::size_t dim) {
  if (!j.is_array() || j.empty())
    schema_error(key, "expected a nonempty array of operator blocks");
  std::vector<Matrix> ops;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string path = key + "[" + std::to_string(i) + "]";
    if (!j[i].is_object() || !j[i].contains("matrix"))
      schema_error(path, "expected an object with a \"matrix\" key");
    Matrix m = parse_matrix(j[i]["matrix"], path + ".matrix");
    if (m.cols() != dim)
      schema_error(path + ".matrix", "has " + std::to_string(m.cols()) +
                                         " columns but dim is " + std::to_string(dim));
    ops.push_back(std::move(m));
  }
  return ops;
}

inline std::vector<VectorFrame> parse_frame_blocks(const json& j, const std::string& key,
                                                   const std::vector<Matrix>& ops,
                                                   const std::string& ops_key) {
  if (!j.is_array())
    schema_error(key, "expected an array of frame blocks");
  if (j.size() != ops.size())
    throw Error(ErrorKind::SemanticError,
                key + " has " + std::to_string(j.size()) + " blocks but " + ops_key + " has " +
                    std::to_string(ops.size()) + " operators");
  std::vector<VectorFrame> frames;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string path = key + "[" + std::to_string(i) + "]";
    if (!j[i].is_object() || !j[i].contains("vectors"))
      schema_error(path, "expected an object with a \"vectors\" key");
    const json& vecs = j[i]["vectors"];
    if (!vecs.is_array() || vecs.empty())
      schema_error(path + ".vectors", "expected a nonempty array of vectors");
    const std::size_t local_dim = ops[i].rows();
    std::vector<Vector> vectors;
    for (std::size_t k = 0; k < vecs.size(); ++k) {
      Vector v = parse_vector(vecs[k], path + ".vectors[" + std::to_string(k) + "]");
      if (v.size() != local_dim)
        throw Error(ErrorKind::SemanticError,
                    path + ".vectors[" + std::to_string(k) + "] has length " +
                        std::to_string(v.size()) + " but " + ops_key + "[" + std::to_string(i) +
                        "] maps into dimension " + std::to_string(local_dim) +
                        " (j=" + std::to_string(i + 1) + ", k=" + std::to_string(k + 1) + ")");
      vectors.push_back(std::move(v));
    }
    frames.push_back(VectorFrame(local_dim, std::move(vectors)));
  }
  return frames;
}

}  // namespace detail

inline Instance parse_instance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // e.byte is a 1-based offset into the input; recover line and column.
    std::size_t line = 1, column = 1;
    const std::size_t stop = e.byte > 0 ? std::min(text.size(), e.byte - 1) : 0;
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw Error(ErrorKind::SyntaxError, "line " + std::to_string(line) + ", column " +
                                            std::to_string(column) + ": " + e.what());
  }

  if (!doc.is_object()) detail::schema_error("$", "instance document must be a JSON object");
  static const std::vector<std::string> known{"name",  "seed",    "dim",    "theta",
                                              "lambda", "omega",  "local_f", "local_g"};
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (std::find(known.begin(), known.end(), key) == known.end())
      detail::schema_error(key, "unknown key");
  }
  for (const char* key : {"dim", "theta", "lambda", "omega", "local_f", "local_g"})
    if (!doc.contains(key)) detail::schema_error(key, "missing required key");

  if (!doc["dim"].is_number_integer() || doc["dim"].get<std::int64_t>() <= 0)
    detail::schema_error("dim", "expected a positive integer");
  const std::size_t dim = doc["dim"].get<std::size_t>();

  OperatorTheta theta = OperatorTheta::identity(dim);
  if (doc["theta"].is_string()) {
    if (doc["theta"].get<std::string>() != "identity")
      detail::schema_error("theta", "the only recognized string value is \"identity\"");
  } else {
    Matrix m = detail::parse_matrix(doc["theta"], "theta");
    if (m.rows() != dim || m.cols() != dim)
      detail::schema_error("theta", "must be a " + std::to_string(dim) + "x" +
                                        std::to_string(dim) + " matrix");
    theta = OperatorTheta(std::move(m));
  }

  std::vector<Matrix> lambda_ops = detail::parse_operator_blocks(doc["lambda"], "lambda", dim);
  std::vector<Matrix> omega_ops = detail::parse_operator_blocks(doc["omega"], "omega", dim);
  if (omega_ops.size() != lambda_ops.size())
    throw Error(ErrorKind::SemanticError,
                "omega has " + std::to_string(omega_ops.size()) + " operators but lambda has " +
                    std::to_string(lambda_ops.size()));

  std::vector<VectorFrame> local_f =
      detail::parse_frame_blocks(doc["local_f"], "local_f", lambda_ops, "lambda");
  std::vector<VectorFrame> local_g =
      detail::parse_frame_blocks(doc["local_g"], "local_g", omega_ops, "omega");

  std::string name;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) detail::schema_error("name", "expected a string");
    name = doc["name"].get<std::string>();
  }
  std::uint64_t seed = 0;
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_integer() || doc["seed"].get<std::int64_t>() < 0)
      detail::schema_error("seed", "expected a nonnegative integer");
    seed = doc["seed"].get<std::uint64_t>();
  }

  return Instance(std::move(name), seed, std::move(theta), GFrame(dim, std::move(lambda_ops)),
                  GFrame(dim, std::move(omega_ops)), LocalFrameSet(std::move(local_f)),
                  LocalFrameSet(std::move(local_g)));
}

// ---------------------------------------------------------------------------
// Selection rendering

/// Flat bitstring, first element leftmost: "10" means the first element is
/// drawn from F and the second from G.
inline std::string selection_bitstring(std::uint64_t code, std::size_t total_bits) {
  std::string s(total_bits, '0');
  for (std::size_t i = 0; i < total_bits; ++i)
    if ((code >> i) & 1) s[i] = '1';
  return s;
}

inline std::vector<std::string> selection_parts(const WeavingReport& report, std::uint64_t code) {
  std::vector<std::string> parts;
  if (report.mode == WeaveMode::def3) {
    const Def3Selection sel = decode_def3(code, report.shape);
    for (std::size_t j = 0; j < report.shape.size(); ++j) {
      std::string inner;
      for (std::size_t k = 0; k < report.shape[j]; ++k)
        if ((sel.masks[j] >> k) & 1) inner += (inner.empty() ? "" : ",") + std::to_string(k + 1);
      parts.push_back("j:" + std::to_string(j + 1) + " σ_" + std::to_string(j + 1) + "={" +
                      inner + "}");
    }
  } else {
    std::string outer;
    for (std::size_t j = 0; j < report.shape.size(); ++j)
      if ((code >> j) & 1) outer += (outer.empty() ? "" : ",") + std::to_string(j + 1);
    parts.push_back("σ={" + outer + "}");
  }
  return parts;
}

// ---------------------------------------------------------------------------
// Report rendering

inline json weaving_report_to_json(const WeavingReport& r) {
  json doc;
  doc["kind"] = "weaving-report";
  doc["mode"] = to_string(r.mode);
  doc["exhaustive"] = !r.approximate;
  doc["selections_checked"] = r.selections_checked;
  doc["woven"] = r.woven;
  doc["universal_lower"] = bound_to_json(r.universal_lower);
  doc["universal_upper"] = bound_to_json(r.universal_upper);
  json witness;
  witness["bitstring"] = selection_bitstring(r.witness_code, r.total_bits());
  witness["parts"] = selection_parts(r, r.witness_code);
  doc["witness"] = std::move(witness);
  if (r.vacuous) doc["vacuous"] = true;
  if (!r.per_selection.empty()) {
    json table = json::array();
    for (const SelectionBounds& sb : r.per_selection) {
      json row;
      row["selection"] = selection_bitstring(sb.code, r.total_bits());
      row["lower"] = bound_to_json(sb.lower);
      row["upper"] = bound_to_json(sb.upper);
      table.push_back(std::move(row));
    }
    doc["per_selection"] = std::move(table);
  }
  return doc;
}

inline std::string weaving_report_to_text(const WeavingReport& r) {
  std::string out;
  out += "weave-check mode=" + std::string(to_string(r.mode)) +
         (r.approximate ? " (sampled)" : " (exhaustive)") + "\n";
  out += "selections checked: " + std::to_string(r.selections_checked) + "\n";
  out += "universal bounds: lower=" + format_bound(r.universal_lower) +
         " upper=" + format_bound(r.universal_upper) + "\n";
  if (r.vacuous) out += "note: Theta is zero; the lower inequality is vacuous\n";
  out += std::string("woven: ") + (r.woven ? "yes" : "no") +
         (r.approximate && r.woven ? " (no counterexample sampled)" : "") + "\n";
  out += "witness: " + selection_bitstring(r.witness_code, r.total_bits()) + " (";
  const std::vector<std::string> parts = selection_parts(r, r.witness_code);
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "; " : "") + parts[i];
  out += ")\n";
  for (const SelectionBounds& sb : r.per_selection)
    out += "selection " + selection_bitstring(sb.code, r.total_bits()) +
           ": lower=" + format_bound(sb.lower) + " upper=" + format_bound(sb.upper) + "\n";
  return out;
}

inline json theorem_report_to_json(const TheoremReport& r) {
  json doc;
  doc["kind"] = "theorem-report";
  doc["claim"] = r.claim;
  doc["status"] = to_string(r.status);
  doc["margin_flag"] = r.margin_flag;
  json hyps = json::array();
  for (const HypothesisItem& h : r.hypotheses) {
    json item;
    item["name"] = h.name;
    item["pass"] = h.pass;
    item["measured"] = bound_to_json(h.measured);
    hyps.push_back(std::move(item));
  }
  doc["hypotheses"] = std::move(hyps);
  doc["left_verdict"] = r.left_verdict;
  doc["right_verdict"] = r.right_verdict;
  doc["equivalence_holds"] = r.equivalence_holds;
  json ineqs = json::array();
  for (const InequalityItem& i : r.inequalities) {
    json item;
    item["name"] = i.name;
    item["lhs"] = bound_to_json(i.lhs);
    item["relation"] = i.relation;
    item["rhs"] = bound_to_json(i.rhs);
    item["slack"] = bound_to_json(i.slack);
    item["pass"] = i.pass;
    ineqs.push_back(std::move(item));
  }
  doc["inequalities"] = std::move(ineqs);
  if (!r.witness.empty()) doc["witness"] = r.witness;
  if (r.left_report) doc["left_report"] = weaving_report_to_json(*r.left_report);
  if (r.right_report) doc["right_report"] = weaving_report_to_json(*r.right_report);
  return doc;
}

inline std::string theorem_report_to_text(const TheoremReport& r) {
  std::string out;
  out += "claim: " + r.claim + "\n";
  for (const HypothesisItem& h : r.hypotheses)
    out += std::string("hypothesis ") + h.name + ": " + (h.pass ? "ok" : "FAIL") +
           " (measured " + format_bound(h.measured) + ")\n";
  if (r.status == ClaimStatus::hypotheses_not_met) {
    out += "status: hypotheses-not-met\n";
    return out;
  }
  out += std::string("left verdict: ") + (r.left_verdict ? "woven" : "not woven") + "\n";
  out += std::string("right verdict: ") + (r.right_verdict ? "woven" : "not woven") + "\n";
  out += std::string("equivalence: ") + (r.equivalence_holds ? "holds" : "REFUTED") + "\n";
  for (const InequalityItem& i : r.inequalities)
    out += "check " + i.name + ": " + format_bound(i.lhs) + " " + i.relation + " " +
           format_bound(i.rhs) + " -> " + (i.pass ? "ok" : "FAIL") + "\n";
  if (r.margin_flag) out += "note: marginal instance (a lower bound sits near the threshold)\n";
  if (!r.witness.empty()) out += "witness: " + r.witness + "\n";
  out += std::string("status: ") + to_string(r.status) + "\n";
  return out;
}

inline json bounds_report_to_json(const std::string& target, bool with_theta,
                                  const FrameBounds& b) {
  json doc;
  doc["kind"] = "bounds-report";
  doc["target"] = target;
  doc["with_theta"] = with_theta;
  doc["lower"] = bound_to_json(b.lower);
  doc["upper"] = bound_to_json(b.upper);
  doc["is_frame"] = b.is_frame;
  if (b.vacuous) doc["vacuous"] = true;
  return doc;
}

inline std::string bounds_report_to_text(const std::string& target, bool with_theta,
                                         const FrameBounds& b) {
  std::string out = "target: " + target + (with_theta ? " (relative to theta)" : "") + "\n";
  out += "lower " + format_bound(b.lower) + " upper " + format_bound(b.upper) + "\n";
  if (b.vacuous) out += "note: Theta is zero; the lower inequality is vacuous\n";
  out += std::string("is_frame: ") + (b.is_frame ? "yes" : "no") + "\n";
  return out;
}

inline json gap_search_to_json(const GapSearchResult& result) {
  json doc;
  doc["kind"] = "gap-search-report";
  doc["trials"] = result.trials;
  doc["skipped"] = result.skipped;
  doc["hit_count"] = result.hits.size();
  json hits = json::array();
  for (const GapHit& hit : result.hits) {
    json h;
    h["instance"] = instance_to_json(hit.instance);
    h["def1_report"] = weaving_report_to_json(hit.def1_report);
    h["def3_report"] = weaving_report_to_json(hit.def3_report);
    hits.push_back(std::move(h));
  }
  doc["hits"] = std::move(hits);
  return doc;
}

inline std::string gap_search_to_text(const GapSearchResult& result) {
  std::string out;
  out += "trials: " + std::to_string(result.trials) + "\n";
  out += "skipped: " + std::to_string(result.skipped) + "\n";
  out += "hits: " + std::to_string(result.hits.size()) + "\n";
  for (const GapHit& hit : result.hits)
    out += "  " + hit.instance.name() +
           ": def1 woven (lower=" + format_bound(hit.def1_report.universal_lower) +
           "), def3 not woven (witness " +
           selection_bitstring(hit.def3_report.witness_code, hit.def3_report.total_bits()) +
           ")\n";
  return out;
}

}  // namespace weavekit::io
