// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any failure.
#include "support.hpp"

#include "cli.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <string>

using namespace qgm2;
using qgm2::testing::Rng;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

double max_abs(const Matrix4& m) { return m.cwiseAbs().maxCoeff(); }

// ---------------------------------------------------------------------------
// 1. Framework axioms.

Outcome axioms() {
  const auto t0 = Clock::now();
  Rng rng(1001);
  double worst = 0.0;
  int graphs = 0;
  for (int qi = 1; qi <= 10; ++qi) {
    const QuantumSet qs(qi / 10.0);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        const Matrix2 e = matrix_unit(i, j);
        worst = std::max(worst, (multiplication(qs.comultiplication(e)) - e).cwiseAbs().maxCoeff());
      }
    for (int t = 0; t < 300; ++t, ++graphs) {
      const Matrix2 x = rng.matrix();
      worst = std::max(worst, (multiplication(qs.comultiplication(x)) - x).cwiseAbs().maxCoeff());
      const QuantumGraph g = testing::random_graph(rng, qs.q(), rng.integer(0, 4));
      const Matrix4 a = adjacency(g);
      worst = std::max(worst, max_abs(convolve(qs, a, a) - a));
      worst = std::max(worst, max_abs(real_conjugate(a) - a));
      const Tensor p = edge_projection(g);
      worst = std::max(worst, max_abs(op_product(p, p) - p));
      worst = std::max(worst, max_abs(op_adjoint(p) - p));
    }
  }
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = worst < 1e-8 && secs < 30.0;
  o.detail = std::to_string(graphs) + " graphs, max residual " + num(worst) + ", " + num(secs) + " s";
  return o;
}

// ---------------------------------------------------------------------------
// 2. Tracial one-edge loopfree graphs S^(1B)_{0,beta}.

Outcome tracial_one_edge() {
  const QuantumSet tr(1.0);
  const auto sig = pauli_basis(PauliBasisKind::Standard, 1.0);
  double adj_err = 0.0, spec_err = 0.0;
  for (double b : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const Matrix2 x = sig[1] + I_UNIT * b * sig[2];
    const Matrix4 a = adjacency(graph_from_spanners(tr, {x}));
    Matrix4 expect = Matrix4::Zero();
    expect(0, 3) = (1 + b) * (1 + b);
    expect(1, 2) = 1 - b * b;
    expect(2, 1) = 1 - b * b;
    expect(3, 0) = (1 - b) * (1 - b);
    expect /= 1 + b * b;
    adj_err = std::max(adj_err, max_abs(a - expect));
    const double s = (1 - b * b) / (1 + b * b);
    spec_err = std::max(spec_err, testing::multiset_distance(spectrum(a), {cplx(-s), cplx(-s), cplx(s), cplx(s)}));
  }
  Outcome o;
  o.pass = adj_err < 1e-10 && spec_err < 1e-9;
  o.detail = "adjacency error " + num(adj_err) + ", spectrum error " + num(spec_err);
  return o;
}

// ---------------------------------------------------------------------------
// 3. Nontracial one-edge loopfree graphs S^(q,1B)_0 and S^(q,1C)_{0,beta,gamma}.

// Closed form of A^(q,1C)_{0,beta,gamma}. Entry (2, 0) is q^{-5/2} beta_- conj(gamma),
// the alpha = 0 case of A^(q,1C)_{alpha,beta,gamma}.
Matrix4 closed_form_1c(double q, double beta, cplx g) {
  const double bp = 1 + beta, bm = 1 - beta, g2 = std::norm(g);
  const cplx gc = std::conj(g);
  const double c = ((1 / (q * q) + 1) * g2 + 2 * q * (1 + beta * beta)) / (1 + q * q);
  Matrix4 m;
  m << std::pow(q, -4) * g2, std::pow(q, -1.5) * bp * g, std::pow(q, -1.5) * bp * gc, q * bp * bp,
      std::pow(q, -2.5) * bm * g, -g2 / (q * q), bp * bm, -std::sqrt(q) * bp * gc,
      std::pow(q, -2.5) * bm * gc, bp * bm, -g2 / (q * q), -std::sqrt(q) * bp * g,
      bm * bm / q, -bm * gc / std::sqrt(q), -bm * g / std::sqrt(q), g2;
  return m / c;
}

Outcome nontracial_one_edge() {
  double diag_err = 0.0, c_err = 0.0;
  int checked = 0;
  for (double q : {0.3, 0.5, 0.8}) {
    const QuantumSet qs(q);
    const Matrix2 s3 = pauli_basis(PauliBasisKind::QAdjusted, q)[3];
    const Matrix4 a = adjacency(graph_from_spanners(qs, {s3}));
    Matrix4 expect = Matrix4::Zero();
    expect.diagonal() << 1 / (q * q), -1.0, -1.0, q * q;
    diag_err = std::max(diag_err, max_abs(a - expect));
    const std::vector<std::pair<double, cplx>> params = {{0.0, 1.0}, {0.5, cplx(1.0, 1.0)}, {1.0, 0.0}};
    for (const auto& [beta, g] : params) {
      Matrix2 x;
      x << g / (q * q), 1 + beta, 1 - beta, -g;
      c_err = std::max(c_err, max_abs(adjacency(graph_from_spanners(qs, {x})) - closed_form_1c(q, beta, g)));
      ++checked;
    }
  }
  Outcome o;
  o.pass = diag_err < 1e-10 && c_err < 1e-9;
  o.detail = "A^(q,1B)_0 error " + num(diag_err) + ", A^(q,1C)_{0,beta,gamma} error " +
             num(c_err) + " over " + std::to_string(checked) + " cases";
  return o;
}

// ---------------------------------------------------------------------------
// 4. Canonical-form invariance.

QuantumGraph draw_graph(Rng& rng, double q, int k, bool realized) {
  const auto fams = testing::families_for(q, k);
  if (!realized || fams.empty()) return testing::random_graph(rng, q, k);
  const Family f = fams[rng.integer(0, static_cast<int>(fams.size()) - 1)];
  return realize(testing::random_form(rng, f, q));
}

Outcome invariance() {
  const auto t0 = Clock::now();
  Rng rng(1004);
  long failures = 0, trials = 0;
  double worst = 0.0;
  for (double q : {0.5, 1.0}) {
    const QuantumSet qs(q);
    for (int k = 0; k <= 4; ++k) {
      for (int t = 0; t < 500; ++t) {
        const QuantumGraph g = draw_graph(rng, q, k, t % 2 == 1);
        const CanonicalForm ref = canonicalize(g);
        for (int r = 0; r < 200; ++r, ++trials) {
          const CanonicalForm moved = canonicalize(transform(g, testing::random_automorphism(rng, qs)));
          const double d = canonical_distance(ref, moved);
          if (!(d < 1e-7)) ++failures;
          else worst = std::max(worst, d);
        }
      }
    }
  }
  Outcome o;
  o.pass = failures == 0;
  o.detail = std::to_string(trials) + " moves, " + std::to_string(failures) + " failures, max deviation " +
             num(worst) + ", " + num(seconds_since(t0)) + " s";
  return o;
}

// ---------------------------------------------------------------------------
// 5. Oracle cross-validation.

Outcome oracle_agreement() {
  const auto t0 = Clock::now();
  Rng rng(1005);
  int agree = 0, planted_yes = 0;
  const int pairs = 300;
  for (int t = 0; t < pairs; ++t) {
    const double q = t % 2 ? 1.0 : 0.5;
    const QuantumSet qs(q);
    const int k = 1 + (t / 2) % 3;
    const QuantumGraph g = draw_graph(rng, q, k, t % 4 < 2);
    QuantumGraph h = g;
    const bool planted = t < pairs / 2;
    if (planted) h = transform(g, testing::random_automorphism(rng, qs));
    else h = draw_graph(rng, q, k, t % 4 < 2);
    const bool canon = is_isomorphic(g, h).isomorphic;
    const bool oracle = oracle_is_isomorphic(g, h, ORACLE_THRESHOLD, static_cast<std::uint64_t>(t));
    if (canon == oracle) ++agree;
    if (planted && canon) ++planted_yes;
  }
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = agree == pairs && planted_yes == pairs / 2 && secs < 120.0;
  o.detail = std::to_string(agree) + "/" + std::to_string(pairs) + " agree, " + std::to_string(planted_yes) +
             " planted pairs recognized, " + num(secs) + " s";
  return o;
}

// ---------------------------------------------------------------------------
// 6. Property iff-conditions.

bool is_zero(cplx z) { return std::abs(z) < 1e-12; }
bool is_real(cplx z) { return std::abs(z.imag()) < 1e-12; }

// Expected (reflexive, loopfree, GNS-undirected, KMS-undirected) per family.
std::array<bool, 4> expected_properties(const CanonicalForm& f) {
  const cplx a = f.alpha, g = f.gamma, d = f.delta;
  const bool b0 = std::abs(f.beta) < 1e-12;
  switch (f.family) {
    case Family::Empty: return {false, true, true, true};
    case Family::T1A:
    case Family::NT1A:
    case Family::Complete: return {true, false, true, true};
    case Family::T1B: return {false, is_zero(a), is_real(a) && b0, is_real(a) && b0};
    case Family::T2: {
      const bool u = b0 && is_real(g) && is_real(d);
      return {is_zero(g) && is_zero(d), false, u, u};
    }
    case Family::T2LC: return {false, true, b0, b0};
    case Family::T3C_A:
    case Family::NT3C_A:
    case Family::NT2LC_B: return {false, true, true, true};
    case Family::T3C_B: return {is_zero(a), false, is_real(a) && b0, is_real(a) && b0};
    case Family::NT1B: return {false, is_zero(a), is_real(a), is_real(a)};
    case Family::NT1C: return {false, is_zero(a), false, b0 && is_real(a) && is_real(g)};
    case Family::NT2: return {is_zero(a) && is_zero(g), false, false, b0 && is_real(a) && is_real(g) && is_real(d)};
    case Family::NT2LC_C: return {false, true, false, b0 && is_real(g)};
    case Family::NT3C_B: return {is_zero(a), false, is_real(a), is_real(a)};
    case Family::NT3C_C: return {is_zero(a), false, false, b0 && is_real(a) && is_real(g)};
  }
  return {};
}

Outcome property_iffs() {
  Rng rng(1006);
  int mismatches = 0, draws = 0;
  std::string first;
  const std::vector<double> nt_q = {0.3, 0.5, 0.8};
  for (int i = 0; i <= static_cast<int>(Family::Complete); ++i) {
    const Family f = static_cast<Family>(i);
    const std::string name = family_name(f);
    const bool nontracial = name.rfind("NT", 0) == 0;
    for (int t = 0; t < 200; ++t, ++draws) {
      const double q = nontracial ? nt_q[t % nt_q.size()] : (name[0] == 'T' || t % 2 ? 1.0 : 0.5);
      const CanonicalForm cf = testing::random_form(rng, f, q);
      const PropertyReport rep = properties(realize(cf));
      const std::array<bool, 4> got = {rep.reflexive, rep.loopfree, rep.gns_undirected, rep.kms_undirected};
      if (got != expected_properties(cf)) {
        if (mismatches++ == 0) first = " (first: " + name + ")";
      }
    }
  }
  Outcome o;
  o.pass = mismatches == 0;
  o.detail = std::to_string(draws) + " draws, " + std::to_string(mismatches) + " mismatches" + first;
  return o;
}

// ---------------------------------------------------------------------------
// 7. Complement duality.

Subspace span_of(const QuantumGraph& g) {
  std::vector<VectorX> v;
  for (const Matrix2& x : g.basis()) v.push_back(vec(x));
  return subspace_from_spanners(4, v);
}

QuantumGraph random_loopfree(Rng& rng, const QuantumSet& qs, int k) {
  const Matrix2 id = Matrix2::Identity();
  const cplx ii = qs.inner(InnerProductKind::KMS_psi_inverse, id, id);
  std::vector<Matrix2> s;
  for (int i = 0; i < k; ++i) {
    const Matrix2 x = rng.matrix();
    s.push_back(x - (qs.inner(InnerProductKind::KMS_psi_inverse, id, x) / ii) * id);
  }
  return graph_from_spanners(qs, s);
}

Outcome complement_duality() {
  Rng rng(1007);
  const std::vector<double> qv = {0.2, 0.5, 0.8, 1.0};
  double dist = 0.0, adj = 0.0, lf = 0.0;
  int count_fail = 0;
  for (int t = 0; t < 200; ++t) {
    const QuantumSet qs(qv[t % qv.size()]);
    const QuantumGraph g = testing::random_graph(rng, qs.q(), rng.integer(0, 4));
    const QuantumGraph c = complement(g);
    dist = std::max(dist, subspace_distance(span_of(complement(c)), span_of(g)));
    if (g.edge_count() + c.edge_count() != 4) ++count_fail;
    adj = std::max(adj, max_abs(adjacency(c) - (adjacency(complete_graph(qs)) - adjacency(g))));

    const QuantumGraph l = random_loopfree(rng, qs, rng.integer(0, 3));
    const QuantumGraph lc = loopfree_complement(l);
    if (l.edge_count() + lc.edge_count() != 3) ++count_fail;
    lf = std::max(lf, subspace_distance(span_of(loopfree_complement(lc)), span_of(l)));
  }
  Outcome o;
  o.pass = dist < 1e-9 && adj < 1e-9 && lf < 1e-9 && count_fail == 0;
  o.detail = "double complement " + num(dist) + ", J - A " + num(adj) +
             ", loopfree involution " + num(lf) + ", edge count failures " + std::to_string(count_fail);
  return o;
}

// ---------------------------------------------------------------------------
// 8. Catalog against golden files.

Outcome catalog_golden() {
  using cli::json;
  int mismatches = 0;
  std::string detail;
  const std::vector<std::pair<double, std::string>> files = {{1.0, "catalog_q1.json"}, {0.5, "catalog_q0.5.json"}};
  for (const auto& [q, file] : files) {
    std::ifstream in(std::string(QGM2_GOLDEN_DIR) + "/" + file);
    if (!in) {
      ++mismatches;
      detail += " missing " + file;
      continue;
    }
    const json golden = json::parse(in);
    const json got = cli::cmd_catalog(q);
    const std::size_t expect_rows = q == 1.0 ? 8 : 11;
    if (golden["rows"].size() != expect_rows || got["rows"].size() != expect_rows) {
      ++mismatches;
      detail += " row count " + std::to_string(got["rows"].size());
      continue;
    }
    if (got["tracial"] != golden["tracial"]) ++mismatches;
    for (std::size_t r = 0; r < expect_rows; ++r)
      for (const char* key : {"family", "label", "edges", "constraints", "properties"})
        if (got["rows"][r][key] != golden["rows"][r][key]) {
          ++mismatches;
          detail += " " + golden["rows"][r]["family"].get<std::string>() + "." + key;
        }
  }
  Outcome o;
  o.pass = mismatches == 0;
  o.detail = "8 + 11 rows, " + std::to_string(mismatches) + " mismatches" + detail;
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"framework axioms", axioms},
      {"tracial one-edge adjacency and spectrum", tracial_one_edge},
      {"nontracial one-edge adjacency", nontracial_one_edge},
      {"canonical-form invariance", invariance},
      {"oracle cross-validation", oracle_agreement},
      {"property iff-conditions", property_iffs},
      {"complement duality", complement_duality},
      {"catalog fidelity", catalog_golden},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failed;
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
