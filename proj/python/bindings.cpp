#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spnkit/errors.hpp"
#include "spnkit/io.hpp"
#include "spnkit/report.hpp"

namespace py = pybind11;
using namespace spnkit;

namespace {

SymMatrix to_matrix(const std::vector<std::vector<double>>& rows) { return SymMatrix::from_rows(rows); }

Graph to_graph(Index n, const std::vector<std::pair<Index, Index>>& edges) {
  Graph g(n);
  for (auto [u, v] : edges) {
    if (u < 1 || v < 1) throw Error(ErrorKind::InvalidArgument, "vertices are 1-based");
    if (!g.add_edge(u - 1, v - 1)) throw Error(ErrorKind::LoopOrDuplicate, "duplicate edge");
  }
  return g;
}

}  // namespace

PYBIND11_MODULE(_spnkit, m) {
  // Messages start with the error kind, e.g. "ParseError: ...".
  py::register_exception<Error>(m, "SpnkitError", PyExc_ValueError);
  m.attr("__version__") = std::string(kVersion);

  m.def("test_matrix", [](const std::vector<std::vector<double>>& rows, const std::string& property, double tol) {
    int status = 2;
    const Json r = test_matrix_result(to_matrix(rows), property, tol, status);
    return py::make_tuple(r.dump(), status);
  });
  m.def("decompose", [](const std::vector<std::vector<double>>& rows, double tol) {
    int status = 2;
    const Json r = decompose_result(to_matrix(rows), tol, status);
    return py::make_tuple(r.dump(), status);
  });
  m.def("classify", [](Index n, const std::vector<std::pair<Index, Index>>& edges) {
    int status = 2;
    return classify_result(to_graph(n, edges), status).dump();
  });
  m.def("witness", [](Index n, const std::vector<std::pair<Index, Index>>& edges) {
    const Graph g = to_graph(n, edges);
    return witness_result(g, witness_for_graph(g)).dump();
  });
  m.def("catalog", [](const std::string& name, const std::vector<Index>& params) {
    return catalog_result(catalog(name, params)).dump();
  });
  m.def("verify", [](const std::string& report) {
    std::vector<std::tuple<std::string, bool, std::string>> out;
    for (const auto& item : verify_report(Json::parse(report))) out.emplace_back(item.what, item.ok, item.reason);
    return out;
  });
  m.def("parse_matrix", [](const std::string& text) { return parse_matrix(text).rows(); });
  m.def("format_matrix", [](const std::vector<std::vector<double>>& rows) { return format_matrix(to_matrix(rows)); });
}
