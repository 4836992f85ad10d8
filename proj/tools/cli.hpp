#pragma once

#include "qgm2/canonical.hpp"
#include "qgm2/oracle.hpp"

#include "json.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qgm2::cli {

using json = nlohmann::ordered_json;

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error("parse error: " + what) {}
};

/// Exit codes of the qgm2 tool.
inline constexpr int EXIT_OK = 0;
inline constexpr int EXIT_PARSE = 2;
inline constexpr int EXIT_INCONSISTENT = 3;

struct GraphDocument {
  double q = 1.0;
  std::vector<Matrix2> spanners;
  std::string label;
};

/// Reads {"q": .., "spanners": [[[re,im],..],..], "label": ..}. A real number
/// is accepted wherever a complex entry is expected. q_override fills in a
/// missing q and must agree with a present one.
GraphDocument parse_graph_document(const json& j, std::optional<double> q_override = std::nullopt);
QuantumGraph build_graph(const GraphDocument& doc);

json complex_to_json(cplx z);
cplx complex_from_json(const json& j);
json matrix_to_json(const MatrixX& m);
json graph_to_json(const QuantumGraph& g, const std::string& label);
json canonical_to_json(const CanonicalForm& cf);

/// Symbolic name of the representative edge space of a family.
std::string anchor(Family f);

/// Serializes with doubles at 17 significant digits. indent < 0 gives one line.
std::string dump(const json& j, int indent = 2);

json cmd_props(const GraphDocument& doc, double tol);
json cmd_canonicalize(const GraphDocument& doc);
/// consistent is cleared when the oracle and the canonical decision disagree.
json cmd_isomorphic(const GraphDocument& a, const GraphDocument& b, bool oracle, std::uint64_t seed, double tol,
                    bool& consistent);
json cmd_adjacency(const GraphDocument& doc);
json cmd_projection(const GraphDocument& doc);
json cmd_spectrum(const GraphDocument& doc);
json cmd_complement(const GraphDocument& doc);

struct CatalogRow {
  Family family;
  std::string label;
  std::vector<std::string> constraints;
  std::vector<std::string> edge_space;
  // Condition under which each property holds: "always", "never", or atoms
  // "<param> = 0" / "<param> real" joined by " and ".
  std::map<std::string, std::string> properties;
  CanonicalForm sample;
};

inline const std::vector<std::string> PROPERTY_KEYS = {"reflexive", "loopfree", "gns_undirected", "kms_undirected"};

std::vector<CatalogRow> catalog_rows(double q);
json cmd_catalog(double q);
std::string catalog_markdown(double q);
/// Inverse of catalog_markdown: rebuilds the JSON catalog.
json catalog_from_markdown(const std::string& md);

/// Evaluates a property condition at the parameters of cf.
bool evaluate_condition(const std::string& condition, const CanonicalForm& cf, double tol = TOL_CANON);

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace qgm2::cli
