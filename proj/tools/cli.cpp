#include "cli.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace qgm2::cli {

namespace {

std::string number_text(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void dump_into(const json& j, int indent, int depth, std::string& out) {
  const bool pretty = indent >= 0;
  const auto newline = [&](int d) {
    if (!pretty) return;
    out += '\n';
    out.append(static_cast<std::size_t>(d * indent), ' ');
  };
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += json(k).dump();
        out += pretty ? ": " : ":";
        dump_into(v, indent, depth + 1, out);
      }
      newline(depth);
      out += '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      bool flat = true;
      for (const auto& v : j) flat = flat && !v.is_structured();
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += flat && pretty ? ", " : ",";
        first = false;
        if (!flat) newline(depth + 1);
        dump_into(v, indent, depth + 1, out);
      }
      if (!flat) newline(depth);
      out += ']';
      return;
    }
    case json::value_t::number_float: out += number_text(j.get<double>()); return;
    default: out += j.dump(); return;
  }
}

cplx entry_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw ParseError("complex entries are [re, im] or a number");
}

Matrix2 matrix_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw ParseError("a spanner is a 2x2 array of entries");
  Matrix2 m;
  for (int r = 0; r < 2; ++r) {
    if (!j[r].is_array() || j[r].size() != 2) throw ParseError("a spanner is a 2x2 array of entries");
    for (int c = 0; c < 2; ++c) m(r, c) = entry_from_json(j[r][c]);
  }
  return m;
}

json property_json(const PropertyReport& rep) {
  json j;
  j["edge_count"] = rep.edge_count;
  j["reflexive"] = rep.reflexive;
  j["loopfree"] = rep.loopfree;
  j["gns_undirected"] = rep.gns_undirected;
  j["kms_undirected"] = rep.kms_undirected;
  j["characterization_agreement"] = rep.characterization_agreement;
  j["residuals"] = {{"reflexive_s", rep.reflexive_s}, {"reflexive_a", rep.reflexive_a},
                    {"reflexive_p", rep.reflexive_p}, {"loopfree_s", rep.loopfree_s},
                    {"loopfree_a", rep.loopfree_a},   {"loopfree_p", rep.loopfree_p},
                    {"self_adjoint_s", rep.self_adjoint_s}, {"modular_s", rep.modular_s},
                    {"flip_p", rep.flip_p},           {"modular_p", rep.modular_p},
                    {"gns_a", rep.gns_a},             {"kms_a", rep.kms_a}};
  return j;
}

json read_json(std::istream& in) {
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
}

void error_json(std::ostream& err, const std::string& kind, const std::string& message) {
  err << dump(json{{"error", kind}, {"message", message}}, -1) << '\n';
}

}  // namespace

std::string dump(const json& j, int indent) {
  std::string out;
  dump_into(j, indent, 0, out);
  return out;
}

GraphDocument parse_graph_document(const json& j, std::optional<double> q_override) {
  if (!j.is_object()) throw ParseError("a graph document is a JSON object");
  GraphDocument doc;
  if (j.contains("q")) {
    if (!j["q"].is_number()) throw ParseError("q must be a number");
    doc.q = j["q"].get<double>();
    if (q_override && std::abs(*q_override - doc.q) > TOL_Q) throw ParseError("--q disagrees with the document");
  } else if (q_override) {
    doc.q = *q_override;
  } else {
    throw ParseError("missing q");
  }
  if (!(doc.q > 0.0) || doc.q > 1.0 + TOL_Q) throw ParseError("q must lie in (0, 1]");
  if (!j.contains("spanners") || !j["spanners"].is_array()) throw ParseError("missing spanners array");
  for (const json& s : j["spanners"]) doc.spanners.push_back(matrix_from_json(s));
  if (j.contains("label")) {
    if (!j["label"].is_string()) throw ParseError("label must be a string");
    doc.label = j["label"].get<std::string>();
  }
  return doc;
}

QuantumGraph build_graph(const GraphDocument& doc) { return graph_from_spanners(QuantumSet(doc.q), doc.spanners); }

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) { return entry_from_json(j); }

json matrix_to_json(const MatrixX& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

json graph_to_json(const QuantumGraph& g, const std::string& label) {
  json j;
  j["q"] = g.qset().q();
  if (!label.empty()) j["label"] = label;
  json sp = json::array();
  for (const Matrix2& x : g.basis()) sp.push_back(matrix_to_json(x));
  j["spanners"] = sp;
  return j;
}

json canonical_to_json(const CanonicalForm& cf) {
  json j;
  j["family"] = family_name(cf.family);
  j["q"] = cf.q;
  j["edge_count"] = cf.edge_count;
  for (const std::string& p : parameter_names(cf.family)) {
    if (p == "alpha") j["alpha"] = complex_to_json(cf.alpha);
    if (p == "beta") j["beta"] = cf.beta;
    if (p == "gamma") j["gamma"] = complex_to_json(cf.gamma);
    if (p == "delta") j["delta"] = complex_to_json(cf.delta);
  }
  j["anchor"] = anchor(cf.family);
  return j;
}

json cmd_props(const GraphDocument& doc, double tol) { return property_json(properties(build_graph(doc), tol)); }

json cmd_canonicalize(const GraphDocument& doc) { return canonical_to_json(canonicalize(build_graph(doc))); }

json cmd_isomorphic(const GraphDocument& a, const GraphDocument& b, bool oracle, std::uint64_t seed, double tol,
                    bool& consistent) {
  consistent = true;
  const QuantumGraph g1 = build_graph(a), g2 = build_graph(b);
  json j;
  if (std::abs(a.q - b.q) > TOL_Q) {
    j["isomorphic"] = false;
    j["reason"] = "quantum sets differ";
  } else {
    const IsomorphismVerdict v = is_isomorphic(g1, g2, tol);
    j["isomorphic"] = v.isomorphic;
    j["first"] = canonical_to_json(v.first);
    j["second"] = canonical_to_json(v.second);
  }
  if (oracle) {
    SearchReport rep;
    const bool same_shape = std::abs(a.q - b.q) <= TOL_Q && g1.edge_count() == g2.edge_count();
    const bool verdict = oracle_is_isomorphic(g1, g2, ORACLE_THRESHOLD, seed, &rep);
    json o;
    o["isomorphic"] = verdict;
    if (same_shape) {
      o["min_distance"] = rep.min_distance;
      o["evaluations"] = rep.evaluations;
      o["converged"] = rep.converged;
    }
    j["oracle"] = o;
    consistent = verdict == j["isomorphic"].get<bool>();
    j["agreement"] = consistent;
  }
  return j;
}

json cmd_adjacency(const GraphDocument& doc) {
  const QuantumGraph g = build_graph(doc);
  return json{{"q", doc.q}, {"edge_count", g.edge_count()}, {"matrix", matrix_to_json(adjacency(g))}};
}

json cmd_projection(const GraphDocument& doc) {
  const QuantumGraph g = build_graph(doc);
  return json{{"q", doc.q}, {"edge_count", g.edge_count()}, {"tensor", matrix_to_json(edge_projection(g))}};
}

json cmd_spectrum(const GraphDocument& doc) {
  const QuantumGraph g = build_graph(doc);
  json ev = json::array();
  for (const cplx& z : spectrum(adjacency(g))) ev.push_back(complex_to_json(z));
  return json{{"q", doc.q}, {"edge_count", g.edge_count()}, {"eigenvalues", ev}};
}

json cmd_complement(const GraphDocument& doc) {
  const std::string label = doc.label.empty() ? "complement" : "complement of " + doc.label;
  return graph_to_json(complement(build_graph(doc)), label);
}

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"qgm2: directed quantum graphs on (M2, psi_q)"};
  std::string command, in_path = "-", out_path = "-", format = "json";
  std::optional<double> q;
  std::optional<double> tol;
  bool use_oracle = false;
  std::uint64_t seed = 0;
  app.add_option("command", command, "props|canonicalize|isomorphic|adjacency|projection|spectrum|complement|catalog")
      ->required()
      ->check(CLI::IsMember(
          {"props", "canonicalize", "isomorphic", "adjacency", "projection", "spectrum", "complement", "catalog"}));
  app.add_option("--in", in_path, "input file, - for stdin");
  app.add_option("--out", out_path, "output file, - for stdout");
  app.add_option("--q", q, "q in (0, 1]");
  app.add_option("--format", format, "json or markdown")->check(CLI::IsMember({"json", "markdown"}));
  app.add_flag("--oracle", use_oracle, "also run the rotation-search oracle (isomorphic)");
  app.add_option("--seed", seed, "oracle seed")->envname("QGM2_SEED");
  app.add_option("--tol", tol, "property and isomorphism tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return EXIT_OK;
  } catch (const CLI::ParseError& e) {
    error_json(err, "ParseError", e.what());
    return EXIT_PARSE;
  }

  std::ofstream file_out;
  std::ostream* sink = &out;
  if (out_path != "-") {
    file_out.open(out_path);
    if (!file_out) {
      error_json(err, "ParseError", "cannot open " + out_path);
      return EXIT_PARSE;
    }
    sink = &file_out;
  }

  try {
    if (command == "catalog") {
      const double qv = q.value_or(1.0);
      if (!(qv > 0.0) || qv > 1.0 + TOL_Q) throw ParseError("q must lie in (0, 1]");
      if (format == "markdown") *sink << catalog_markdown(qv);
      else *sink << dump(cmd_catalog(qv)) << '\n';
      return EXIT_OK;
    }

    json input;
    if (in_path == "-") {
      input = read_json(in);
    } else {
      std::ifstream f(in_path);
      if (!f) throw ParseError("cannot open " + in_path);
      input = read_json(f);
    }

    json result;
    int code = EXIT_OK;
    if (command == "isomorphic") {
      json a, b;
      if (input.is_array() && input.size() == 2) {
        a = input[0];
        b = input[1];
      } else if (input.is_object() && input.contains("a") && input.contains("b")) {
        a = input["a"];
        b = input["b"];
      } else {
        throw ParseError("isomorphic expects [doc, doc] or {\"a\": doc, \"b\": doc}");
      }
      bool consistent = true;
      result = cmd_isomorphic(parse_graph_document(a, q), parse_graph_document(b, q), use_oracle, seed,
                              tol.value_or(TOL_CANON), consistent);
      if (!consistent) code = EXIT_INCONSISTENT;
    } else {
      const GraphDocument doc = parse_graph_document(input, q);
      if (command == "props") result = cmd_props(doc, tol.value_or(TOL_PROP));
      else if (command == "canonicalize") result = cmd_canonicalize(doc);
      else if (command == "adjacency") result = cmd_adjacency(doc);
      else if (command == "projection") result = cmd_projection(doc);
      else if (command == "spectrum") result = cmd_spectrum(doc);
      else result = cmd_complement(doc);
    }
    *sink << dump(result) << '\n';
    return code;
  } catch (const ParseError& e) {
    error_json(err, "ParseError", e.what());
    return EXIT_PARSE;
  } catch (const InvalidQ& e) {
    error_json(err, "ParseError", e.what());
    return EXIT_PARSE;
  } catch (const CharacterizationDisagreement& e) {
    error_json(err, "CharacterizationDisagreement", e.what());
    return EXIT_INCONSISTENT;
  } catch (const Error& e) {
    error_json(err, "InternalError", e.what());
    return EXIT_INCONSISTENT;
  }
}

}  // namespace qgm2::cli
