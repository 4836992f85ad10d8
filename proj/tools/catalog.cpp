#include "cli.hpp"

#include <cmath>
#include <sstream>

namespace qgm2::cli {

namespace {

using Props = std::map<std::string, std::string>;

Props props(const std::string& reflexive, const std::string& loopfree, const std::string& gns,
            const std::string& kms) {
  return {{"reflexive", reflexive}, {"loopfree", loopfree}, {"gns_undirected", gns}, {"kms_undirected", kms}};
}

CanonicalForm sample(Family f, double q, cplx alpha = 0.0, double beta = 0.0, cplx gamma = 0.0, cplx delta = 0.0) {
  CanonicalForm cf;
  cf.family = f;
  cf.q = q;
  cf.edge_count = family_edge_count(f);
  cf.alpha = alpha;
  cf.beta = beta;
  cf.gamma = gamma;
  cf.delta = delta;
  return cf;
}

const std::vector<std::string> T1B_CONSTRAINTS = {"beta in [0,1]", "beta = 1 => alpha in [0,inf)",
                                                  "beta in [0,1) => arg(alpha) in [0,pi)"};

const std::vector<std::string> NT1C_CONSTRAINTS = {
    "beta in [-1,1]", "abs(beta) = 1 and alpha != 0 => alpha in (0,inf)",
    "abs(beta) = 1 and alpha = 0 => gamma in [0,inf)", "abs(beta) < 1 and alpha != 0 => arg(alpha) in [0,pi)",
    "abs(beta) < 1 and alpha = 0 => arg(gamma) in [0,pi)"};

std::vector<CatalogRow> tracial_rows() {
  const double q = 1.0;
  const cplx a(0.5, 0.25);
  return {
      {Family::Empty, "G^(0)", {}, {}, props("never", "always", "always", "always"), sample(Family::Empty, q)},
      {Family::T1A, "G^(1A)", {}, {"[[1, 0], [0, 1]]"}, props("always", "never", "always", "always"),
       sample(Family::T1A, q)},
      {Family::T1B, "G^(1B)_{alpha,beta}", T1B_CONSTRAINTS, {"[[alpha, 1+beta], [1-beta, alpha]]"},
       props("never", "alpha = 0", "alpha real and beta = 0", "alpha real and beta = 0"),
       sample(Family::T1B, q, a, 0.5)},
      {Family::T2,
       "G^(2)_{beta,gamma,delta}",
       {"beta in [0,1]", "beta = 1 => gamma in [0,inf)", "beta in (0,1) => arg(gamma) in [0,pi)",
        "beta = 0 => delta = i eta gamma with eta in [0,1]", "beta = 0 => arg(gamma) in [0,pi)",
        "beta = 0 and abs(delta) = abs(gamma) => gamma in [0,inf)"},
       {"[[0, 1+beta], [1-beta, 0]]", "[[1+delta, -i gamma (1-beta)], [i gamma (1+beta), 1-delta]]"},
       props("gamma = 0 and delta = 0", "never", "beta = 0 and gamma real and delta real",
             "beta = 0 and gamma real and delta real"),
       sample(Family::T2, q, 0.0, 0.5, cplx(1.0, 0.5), -0.25)},
      {Family::T2LC, "(G^(1B)_{0,beta})'", {"beta in [0,1]"}, {"(S^(1B)_{0,beta} + C I)^perp"},
       props("never", "always", "beta = 0", "beta = 0"), sample(Family::T2LC, q, 0.0, 0.5)},
      {Family::T3C_A, "(G^(1A))^perp", {}, {"(S^(1A))^perp"}, props("never", "always", "always", "always"),
       sample(Family::T3C_A, q)},
      {Family::T3C_B, "(G^(1B)_{alpha,beta})^perp", T1B_CONSTRAINTS, {"(S^(1B)_{alpha,beta})^perp"},
       props("alpha = 0", "never", "alpha real and beta = 0", "alpha real and beta = 0"),
       sample(Family::T3C_B, q, a, 0.5)},
      {Family::Complete, "M_2", {}, {"M_2"}, props("always", "never", "always", "always"),
       sample(Family::Complete, q)},
  };
}

std::vector<CatalogRow> nontracial_rows(double q) {
  const cplx a1b(1.0, -0.5);
  const cplx g1c(1.0, 1.0);
  return {
      {Family::Empty, "G^(0)", {}, {}, props("never", "always", "always", "always"), sample(Family::Empty, q)},
      {Family::NT1A, "G^(q,1A)", {}, {"[[1, 0], [0, 1]]"}, props("always", "never", "always", "always"),
       sample(Family::NT1A, q)},
      {Family::NT1B, "G^(q,1B)_{alpha}", {"alpha in C"}, {"[[alpha+q^-2, 0], [0, alpha-1]]"},
       props("never", "alpha = 0", "alpha real", "alpha real"), sample(Family::NT1B, q, a1b)},
      {Family::NT1C, "G^(q,1C)_{alpha,beta,gamma}", NT1C_CONSTRAINTS,
       {"[[alpha+q^-2 gamma, 1+beta], [1-beta, alpha-gamma]]"},
       props("never", "alpha = 0", "never", "beta = 0 and alpha real and gamma real"),
       sample(Family::NT1C, q, 0.5, 0.5, g1c)},
      {Family::NT2,
       "G^(q,2)_{alpha,beta,gamma,delta}",
       {"beta in [-1,1]", "abs(beta) = 1 and delta != 0 => delta in (0,inf)",
        "abs(beta) = 1 and delta = 0 => alpha in [0,inf)", "abs(beta) < 1 and delta != 0 => arg(delta) in [0,pi)",
        "abs(beta) < 1 and delta = 0 => arg(alpha) in [0,pi)"},
       {"[[q^-2 delta, 1+beta], [1-beta, -delta]]",
        "[[1+q^-2 gamma, -i alpha (1-beta) - gamma conj(delta)], [i alpha (1+beta) - gamma conj(delta), 1-gamma]]"},
       props("alpha = 0 and gamma = 0", "never", "never", "beta = 0 and alpha real and gamma real and delta real"),
       sample(Family::NT2, q, cplx(0.5, 0.5), 0.25, cplx(1.0, -1.0), cplx(0.75, 0.25))},
      {Family::NT2LC_B, "(G^(q,1B)_{0})'", {}, {"(S^(q,1B)_{0} + C I)^perp"},
       props("never", "always", "always", "always"), sample(Family::NT2LC_B, q)},
      {Family::NT2LC_C,
       "(G^(q,1C)_{0,beta,gamma})'",
       {"beta in [-1,1]", "abs(beta) = 1 => gamma in [0,inf)", "abs(beta) < 1 => arg(gamma) in [0,pi)"},
       {"(S^(q,1C)_{0,beta,gamma} + C I)^perp"},
       props("never", "always", "never", "beta = 0 and gamma real"), sample(Family::NT2LC_C, q, 0.0, 0.5, g1c)},
      {Family::NT3C_A, "(G^(q,1A))^perp", {}, {"(S^(q,1A))^perp"}, props("never", "always", "always", "always"),
       sample(Family::NT3C_A, q)},
      {Family::NT3C_B, "(G^(q,1B)_{alpha})^perp", {"alpha in C"}, {"(S^(q,1B)_{alpha})^perp"},
       props("alpha = 0", "never", "alpha real", "alpha real"), sample(Family::NT3C_B, q, a1b)},
      {Family::NT3C_C, "(G^(q,1C)_{alpha,beta,gamma})^perp", NT1C_CONSTRAINTS, {"(S^(q,1C)_{alpha,beta,gamma})^perp"},
       props("alpha = 0", "never", "never", "beta = 0 and alpha real and gamma real"),
       sample(Family::NT3C_C, q, 0.5, 0.5, g1c)},
      {Family::Complete, "M_2", {}, {"M_2"}, props("always", "never", "always", "always"),
       sample(Family::Complete, q)},
  };
}

json string_array(const std::vector<std::string>& xs) {
  json j = json::array();
  for (const std::string& x : xs) j.push_back(x);
  return j;
}

json sample_json(const CanonicalForm& cf) {
  const QuantumGraph g = realize(cf);
  const PropertyReport rep = properties(g);
  json params = json::object();
  for (const std::string& p : parameter_names(cf.family)) {
    if (p == "alpha") params["alpha"] = complex_to_json(cf.alpha);
    if (p == "beta") params["beta"] = cf.beta;
    if (p == "gamma") params["gamma"] = complex_to_json(cf.gamma);
    if (p == "delta") params["delta"] = complex_to_json(cf.delta);
  }
  json spanners = json::array();
  for (const Matrix2& x : g.basis()) spanners.push_back(matrix_to_json(x));
  json ev = json::array();
  for (const cplx& z : spectrum(adjacency(g))) ev.push_back(complex_to_json(z));
  return json{{"parameters", params},
              {"spanners", spanners},
              {"properties",
               {{"reflexive", rep.reflexive},
                {"loopfree", rep.loopfree},
                {"gns_undirected", rep.gns_undirected},
                {"kms_undirected", rep.kms_undirected}}},
              {"spectrum", ev}};
}

std::string join(const std::vector<std::string>& xs, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

std::vector<std::string> split(const std::string& s, const std::string& sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = s.find(sep, pos);
    out.push_back(s.substr(pos, next - pos));
    if (next == std::string::npos) break;
    pos = next + sep.size();
  }
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(' ');
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(' ');
  return s.substr(b, e - b + 1);
}

std::string list_cell(const json& arr) {
  std::vector<std::string> xs;
  for (const json& x : arr) xs.push_back(x.get<std::string>());
  return xs.empty() ? "--" : join(xs, "; ");
}

json list_from_cell(const std::string& cell, const std::string& sep) {
  json arr = json::array();
  if (cell == "--") return arr;
  for (const std::string& x : split(cell, sep)) arr.push_back(x);
  return arr;
}

const std::vector<std::string> MD_COLUMNS = {"family", "label",    "edges",          "parameters",
                                             "constraints", "edge space", "reflexive", "loopfree",
                                             "GNS-undirected", "KMS-undirected", "anchor", "sample"};

}  // namespace

std::string anchor(Family f) {
  switch (f) {
    case Family::Empty: return "{0}";
    case Family::T1A: return "S^(1A)";
    case Family::T1B: return "S^(1B)_{alpha,beta}";
    case Family::T2: return "S^(2)_{beta,gamma,delta}";
    case Family::T2LC: return "(S^(1B)_{0,beta} + C I)^perp";
    case Family::T3C_A: return "(S^(1A))^perp";
    case Family::T3C_B: return "(S^(1B)_{alpha,beta})^perp";
    case Family::NT1A: return "S^(q,1A)";
    case Family::NT1B: return "S^(q,1B)_{alpha}";
    case Family::NT1C: return "S^(q,1C)_{alpha,beta,gamma}";
    case Family::NT2: return "S^(q,2)_{alpha,beta,gamma,delta}";
    case Family::NT2LC_B: return "(S^(q,1B)_{0} + C I)^perp";
    case Family::NT2LC_C: return "(S^(q,1C)_{0,beta,gamma} + C I)^perp";
    case Family::NT3C_A: return "(S^(q,1A))^perp";
    case Family::NT3C_B: return "(S^(q,1B)_{alpha})^perp";
    case Family::NT3C_C: return "(S^(q,1C)_{alpha,beta,gamma})^perp";
    case Family::Complete: return "M_2";
  }
  return "?";
}

std::vector<CatalogRow> catalog_rows(double q) {
  return std::abs(q - 1.0) <= TOL_Q ? tracial_rows() : nontracial_rows(q);
}

json cmd_catalog(double q) {
  const QuantumSet qs(q);
  json rows = json::array();
  for (const CatalogRow& r : catalog_rows(qs.q())) {
    json props_j = json::object();
    for (const std::string& k : PROPERTY_KEYS) props_j[k] = r.properties.at(k);
    rows.push_back(json{{"family", family_name(r.family)},
                        {"label", r.label},
                        {"edges", family_edge_count(r.family)},
                        {"parameters", string_array(parameter_names(r.family))},
                        {"constraints", string_array(r.constraints)},
                        {"edge_space", string_array(r.edge_space)},
                        {"properties", props_j},
                        {"anchor", anchor(r.family)},
                        {"sample", sample_json(r.sample)}});
  }
  return json{{"q", qs.q()}, {"tracial", qs.is_tracial()}, {"rows", rows}};
}

std::string catalog_markdown(double q) {
  const json cat = cmd_catalog(q);
  std::ostringstream md;
  md << "# Quantum graphs on (M2, psi_q), q = " << dump(cat["q"]) << "\n\n";
  md << "| " << join(MD_COLUMNS, " | ") << " |\n";
  md << "|" << join(std::vector<std::string>(MD_COLUMNS.size(), "---"), "|") << "|\n";
  for (const json& r : cat["rows"]) {
    std::vector<std::string> cells = {r["family"].get<std::string>(),
                                      r["label"].get<std::string>(),
                                      dump(r["edges"]),
                                      r["parameters"].empty() ? "--" : join(r["parameters"].get<std::vector<std::string>>(), ", "),
                                      list_cell(r["constraints"]),
                                      list_cell(r["edge_space"]),
                                      r["properties"]["reflexive"].get<std::string>(),
                                      r["properties"]["loopfree"].get<std::string>(),
                                      r["properties"]["gns_undirected"].get<std::string>(),
                                      r["properties"]["kms_undirected"].get<std::string>(),
                                      r["anchor"].get<std::string>(),
                                      "`" + dump(r["sample"], -1) + "`"};
    md << "| " << join(cells, " | ") << " |\n";
  }
  return md.str();
}

json catalog_from_markdown(const std::string& md) {
  std::istringstream in(md);
  std::string line;
  json cat;
  json rows = json::array();
  const std::string head = "# Quantum graphs on (M2, psi_q), q = ";
  int table_line = 0;
  while (std::getline(in, line)) {
    if (line.rfind(head, 0) == 0) {
      const double q = json::parse(line.substr(head.size())).get<double>();
      cat["q"] = q;
      cat["tracial"] = QuantumSet(q).is_tracial();
      continue;
    }
    if (line.empty() || line[0] != '|') continue;
    if (table_line++ < 2) continue;  // header and separator
    std::vector<std::string> cells = split(line.substr(2, line.size() - 4), " | ");
    if (cells.size() != MD_COLUMNS.size()) throw ParseError("catalog row has the wrong number of cells");
    for (std::string& c : cells) c = trim(c);
    json row;
    row["family"] = cells[0];
    row["label"] = cells[1];
    row["edges"] = std::stoi(cells[2]);
    row["parameters"] = list_from_cell(cells[3], ", ");
    row["constraints"] = list_from_cell(cells[4], "; ");
    row["edge_space"] = list_from_cell(cells[5], "; ");
    row["properties"] = {{"reflexive", cells[6]},
                         {"loopfree", cells[7]},
                         {"gns_undirected", cells[8]},
                         {"kms_undirected", cells[9]}};
    row["anchor"] = cells[10];
    row["sample"] = json::parse(cells[11].substr(1, cells[11].size() - 2));
    rows.push_back(row);
  }
  if (!cat.contains("q")) throw ParseError("catalog markdown lacks its q header");
  cat["rows"] = rows;
  return cat;
}

bool evaluate_condition(const std::string& condition, const CanonicalForm& cf, double tol) {
  if (condition == "always") return true;
  if (condition == "never") return false;
  const auto value = [&](const std::string& name) -> cplx {
    if (name == "alpha") return cf.alpha;
    if (name == "beta") return cf.beta;
    if (name == "gamma") return cf.gamma;
    if (name == "delta") return cf.delta;
    throw ParseError("unknown parameter " + name);
  };
  for (const std::string& atom : split(condition, " and ")) {
    const std::vector<std::string> words = split(atom, " ");
    if (words.size() == 3 && words[1] == "=" && words[2] == "0") {
      if (std::abs(value(words[0])) > tol) return false;
    } else if (words.size() == 2 && words[1] == "real") {
      if (std::abs(value(words[0]).imag()) > tol) return false;
    } else {
      throw ParseError("unknown condition atom " + atom);
    }
  }
  return true;
}

}  // namespace qgm2::cli
