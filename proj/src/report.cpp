#include "spnkit/report.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>

#include "spnkit/copositive.hpp"
#include "spnkit/errors.hpp"

namespace spnkit {

Json matrix_json(const SymMatrix& a) { return a.rows(); }

SymMatrix matrix_from_json(const Json& j) {
  return SymMatrix::from_rows(j.get<std::vector<std::vector<double>>>());
}

Json graph_json(const Graph& g) {
  Json edges = Json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u + 1, v + 1});
  return {{"n", g.order()}, {"edges", edges}};
}

Graph graph_from_json(const Json& j) {
  Graph g(j.at("n").get<Index>());
  for (const auto& e : j.at("edges")) g.add_edge(e.at(0).get<Index>() - 1, e.at(1).get<Index>() - 1);
  return g;
}

Json signed_graph_json(const SignedGraph& g) {
  Json edges = Json::array();
  for (auto [u, v, s] : g.signed_edges()) edges.push_back({u + 1, v + 1, s < 0 ? "-" : "+"});
  return {{"n", g.order()}, {"edges", edges}};
}

SignedGraph signed_graph_from_json(const Json& j) {
  SignedGraph g(j.at("n").get<Index>());
  for (const auto& e : j.at("edges"))
    g.add_edge(e.at(0).get<Index>() - 1, e.at(1).get<Index>() - 1,
               e.at(2).get<std::string>() == "-" ? -1 : 1);
  return g;
}

namespace {

Json one_based(const IndexSet& s) {
  Json out = Json::array();
  for (Index v : s) out.push_back(v + 1);
  return out;
}

IndexSet zero_based(const Json& j) {
  IndexSet out;
  for (const auto& v : j) out.push_back(v.get<Index>() - 1);
  return out;
}

Json vector_certificate(const SymMatrix& a, const Vec& x) {
  return {{"kind", "vector"}, {"x", x}, {"value", quad_form(a, x)}};
}

Json dnn_json(const DnnCertificate& c) {
  return {{"kind", "dnn"}, {"W", matrix_json(c.w)}, {"objective", c.objective}};
}

Json refutation_json(const GMinusOneRefutation& r) {
  if (r.kind == GMinusOneRefutation::Kind::odd_cycle)
    return {{"kind", "odd_cycle"}, {"cycle", one_based(r.cycle)}};
  return {{"kind", "even_distance"},
          {"i", r.i + 1},
          {"j", r.j + 1},
          {"distance", r.distance},
          {"entry", r.entry}};
}

GMinusOneRefutation refutation_from_json(const Json& j) {
  GMinusOneRefutation r;
  if (j.at("kind") == "odd_cycle") {
    r.kind = GMinusOneRefutation::Kind::odd_cycle;
    r.cycle = zero_based(j.at("cycle"));
  } else {
    r.kind = GMinusOneRefutation::Kind::even_distance;
    r.i = j.at("i").get<Index>() - 1;
    r.j = j.at("j").get<Index>() - 1;
    r.distance = j.at("distance").get<Index>();
    r.entry = j.at("entry").get<double>();
  }
  return r;
}

int status_of(Membership m) {
  switch (m) {
    case Membership::member: return 0;
    case Membership::non_member: return 1;
    case Membership::inconclusive: return 2;
  }
  return 2;
}

Json verdict_fields(const ConeVerdict& v) {
  return {{"member", to_string(v.member)}, {"method", to_string(v.method)}, {"margin", v.margin}};
}

Json spn_json(const SymMatrix& a, double tol, int& status) {
  SpnOptions opts;
  opts.tol = tol;
  const SpnResult r = test_spn(a, opts);
  Json out = verdict_fields(r.verdict);
  out["trace"] = r.trace;
  if (r.verdict.method == Method::not_copositive && r.verdict.certificate)
    out["certificate"] = vector_certificate(a, *r.verdict.certificate);
  if (r.certificate) out["certificate"] = dnn_json(*r.certificate);
  if (r.decomposition)
    out["decomposition"] = {{"P", matrix_json(r.decomposition->p)}, {"N", matrix_json(r.decomposition->n)}};
  if (r.refutation) out["refutation"] = refutation_json(*r.refutation);
  status = status_of(r.verdict.member);
  return out;
}

Json hit_json(const ForbiddenHit& h) {
  Json paths = Json::array();
  for (const auto& p : h.embedding.paths) paths.push_back(one_based(p));
  return {{"pattern", to_string(h.pattern)},
          {"branch_map", one_based(h.embedding.branch_map)},
          {"paths", paths}};
}

}  // namespace

Json test_matrix_result(const SymMatrix& a, std::string_view property, double tol, int& status) {
  Json out;
  if (property == "spn") {
    out = spn_json(a, tol, status);
  } else if (property == "psd" || property == "copositive") {
    const ConeVerdict v = property == "psd" ? is_psd(a, tol) : test_copositive(a, tol);
    out = verdict_fields(v);
    if (v.certificate) out["certificate"] = vector_certificate(a, *v.certificate);
    status = status_of(v.member);
  } else {
    throw Error(ErrorKind::InvalidArgument, "property must be psd, copositive or spn");
  }
  out["property"] = property;
  out["matrix"] = matrix_json(a);
  out["tol"] = tol;
  return out;
}

Json decompose_result(const SymMatrix& a, double tol, int& status) {
  Json out = spn_json(a, tol, status);
  out["property"] = "spn";
  out["matrix"] = matrix_json(a);
  out["tol"] = tol;
  return out;
}

Json classify_result(const Graph& g, int& status) {
  const GraphVerdict v = classify(g);
  Json blocks = Json::array();
  for (const auto& b : v.per_block) {
    Json jb = {{"vertices", one_based(b.vertices)},
               {"class", to_string(b.block_class)},
               {"verdict", to_string(b.verdict)},
               {"provenance", to_string(b.provenance)}};
    if (b.hit) jb["hit"] = hit_json(*b.hit);
    blocks.push_back(jb);
  }
  Json out = {{"graph", graph_json(g)}, {"overall", to_string(v.overall)}, {"blocks", blocks}};
  if (v.forbidden_hit) out["forbidden_hit"] = hit_json(*v.forbidden_hit);
  status = v.overall == GraphClass::spn ? 0 : v.overall == GraphClass::not_spn ? 1 : 2;
  return out;
}

Json witness_result(const Graph& g, const Witness& w) {
  Json out = {{"graph", graph_json(g)},
              {"matrix", matrix_json(w.a)},
              {"signed_graph", signed_graph_json(w.graph)},
              {"copositive", verdict_fields(w.copositivity)},
              {"trace", w.trace}};
  if (w.certificate) out["certificate"] = dnn_json(*w.certificate);
  if (w.refutation) out["refutation"] = refutation_json(*w.refutation);
  return out;
}

Json catalog_result(const Graph& g) { return {{"graph", graph_json(g)}}; }

std::string digest(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json make_report(std::string_view command, const Json& args, std::string_view input,
                 const Json& result, double timing_ms) {
  return {{"tool", "spnkit " + std::string(kVersion)},
          {"command", command},
          {"args", args},
          {"input_digest", digest(input)},
          {"result", result},
          {"timing_ms", timing_ms}};
}

namespace {

VerifyItem vector_check(const SymMatrix& a, const Json& c, bool nonneg) {
  VerifyItem item{"vector certificate", true, ""};
  if (c.at("kind") != "vector") return {item.what, false, "expected a vector certificate"};
  const Vec x = c.at("x").get<Vec>();
  if (x.size() != a.order()) return {item.what, false, "length mismatch"};
  if (nonneg)
    for (double xi : x)
      if (xi < 0) return {item.what, false, "certificate has a negative component"};
  const double value = quad_form(a, x);
  if (!(value < -1e-10)) return {item.what, false, "x^T A x is not negative"};
  return item;
}

void verify_matrix_result(const Json& r, std::vector<VerifyItem>& out) {
  const SymMatrix a = matrix_from_json(r.at("matrix"));
  const std::string property = r.at("property");
  const std::string member = r.at("member");
  const std::string method = r.at("method");
  const double tol = r.value("tol", kDefaultTol);
  if (member == "inconclusive") {
    out.push_back({"inconclusive verdict", true, "no evidence to check"});
    return;
  }
  const bool is_member = member == "member";
  if (property == "psd") {
    const bool now = is_psd(a, tol).is_member();
    out.push_back({"psd verdict", now == is_member, now == is_member ? "" : "recomputed verdict differs"});
    if (!is_member) out.push_back(vector_check(a, r.at("certificate"), false));
    return;
  }
  if (property == "copositive" || method == "not_copositive") {
    if (is_member) {
      const bool now = test_copositive(a, tol).is_member();
      out.push_back({"copositive verdict", now, now ? "" : "recomputed verdict differs"});
    } else {
      out.push_back(vector_check(a, r.at("certificate"), true));
    }
    return;
  }
  if (is_member) {
    if (!r.contains("decomposition")) {
      out.push_back({"decomposition", false, "member claim without a decomposition"});
      return;
    }
    const SpnDecomposition d{matrix_from_json(r["decomposition"].at("P")),
                             matrix_from_json(r["decomposition"].at("N"))};
    const Check c = check_decomposition(a, d);
    out.push_back({"decomposition", c.ok, c.reason});
    return;
  }
  bool any = false;
  if (r.contains("certificate")) {
    const DnnCertificate c{matrix_from_json(r["certificate"].at("W")),
                           r["certificate"].at("objective").get<double>()};
    const Check k = check_certificate(a, c);
    out.push_back({"dnn certificate", k.ok, k.reason});
    any = true;
  }
  if (r.contains("refutation")) {
    const Check k = check_refutation(a, refutation_from_json(r["refutation"]));
    out.push_back({"refutation", k.ok, k.reason});
    any = true;
  }
  if (!any) out.push_back({"non-member evidence", false, "non-member claim without evidence"});
}

void verify_classify_result(const Json& r, std::vector<VerifyItem>& out) {
  const Graph g = graph_from_json(r.at("graph"));
  const GraphVerdict v = classify(g);
  const bool same = to_string(v.overall) == r.at("overall").get<std::string>();
  out.push_back({"classification", same, same ? "" : "recomputed classification differs"});
  if (r.contains("forbidden_hit")) {
    const Json& h = r["forbidden_hit"];
    Pattern p = Pattern::f5;
    for (Pattern q : {Pattern::f5, Pattern::cd6, Pattern::k4_subdivided})
      if (to_string(q) == h.at("pattern").get<std::string>()) p = q;
    Embedding e{zero_based(h.at("branch_map")), {}};
    for (const auto& path : h.at("paths")) e.paths.push_back(zero_based(path));
    const bool ok = verify_embedding(g, pattern_graph(p), e, pattern_constraints(p));
    out.push_back({"forbidden embedding", ok, ok ? "" : "embedding does not check"});
  }
}

void verify_witness_result(const Json& r, std::vector<VerifyItem>& out) {
  Witness w;
  w.a = matrix_from_json(r.at("matrix"));
  w.graph = signed_graph_from_json(r.at("signed_graph"));
  if (r.contains("certificate"))
    w.certificate = DnnCertificate{matrix_from_json(r["certificate"].at("W")),
                                   r["certificate"].at("objective").get<double>()};
  if (r.contains("refutation")) w.refutation = refutation_from_json(r["refutation"]);
  const Check c = verify_witness(w);
  out.push_back({"witness", c.ok, c.reason});
  const bool same = graph_of(w.a) == graph_from_json(r.at("graph"));
  out.push_back({"witness graph", same, same ? "" : "G(A) differs from the target graph"});
}

}  // namespace

std::vector<VerifyItem> verify_report(const Json& report) {
  std::vector<VerifyItem> out;
  try {
    const std::string command = report.at("command");
    const Json& r = report.at("result");
    if (command == "test-matrix" || command == "decompose") {
      verify_matrix_result(r, out);
    } else if (command == "classify") {
      verify_classify_result(r, out);
    } else if (command == "witness") {
      verify_witness_result(r, out);
    } else if (command == "catalog") {
      graph_from_json(r.at("graph"));
      out.push_back({"catalog graph", true, ""});
    } else {
      out.push_back({"command", false, "unknown command '" + command + "'"});
    }
  } catch (const std::exception& e) {
    out.push_back({"report", false, e.what()});
  }
  return out;
}

}  // namespace spnkit
