#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "spnkit/classify.hpp"
#include "spnkit/errors.hpp"
#include "spnkit/io.hpp"
#include "spnkit/report.hpp"
#include "spnkit/witness.hpp"

using namespace spnkit;

namespace {

constexpr int kUsage = 64;
constexpr int kData = 65;
constexpr int kNoInput = 66;
constexpr int kInternal = 70;

struct Unopenable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string load(const std::string& path) {
  try {
    return read_file(path);
  } catch (const std::runtime_error& e) {
    throw Unopenable(e.what());
  }
}

std::string base(const std::string& path) { return std::filesystem::path(path).filename().string(); }

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

void print_matrix(const char* label, const Json& rows) {
  std::cout << label << ":\n";
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%12.6g", row[j].get<double>());
      std::cout << buf;
    }
    std::cout << "\n";
  }
}

void print_matrix_result(const Json& r) {
  std::cout << r["property"].get<std::string>() << ": " << r["member"].get<std::string>()
            << " (method " << r["method"].get<std::string>() << ")\n";
  if (r.contains("decomposition")) {
    print_matrix("P", r["decomposition"]["P"]);
    print_matrix("N", r["decomposition"]["N"]);
  }
  if (r.contains("refutation")) {
    const Json& f = r["refutation"];
    if (f["kind"] == "odd_cycle")
      std::cout << "odd cycle of -1 entries: " << f["cycle"].dump() << "\n";
    else
      std::cout << "pair (" << f["i"] << "," << f["j"] << ") at even distance " << f["distance"]
                << " has entry " << f["entry"] << "\n";
  }
  if (r.contains("certificate")) {
    const Json& c = r["certificate"];
    if (c["kind"] == "vector") {
      std::cout << "certificate x = " << c["x"].dump() << ", x^T A x = " << c["value"] << "\n";
    } else {
      std::cout << "DNN certificate, <A,W> = " << c["objective"] << "\n";
      print_matrix("W", c["W"]);
    }
  }
}

void print_classify(const Json& r) {
  std::cout << r["overall"].get<std::string>() << "\n";
  for (const auto& b : r["blocks"])
    std::cout << "  block " << b["vertices"].dump() << "  " << b["class"].get<std::string>() << "  "
              << b["verdict"].get<std::string>() << "  [" << b["provenance"].get<std::string>()
              << "]\n";
  if (r.contains("forbidden_hit")) {
    const Json& h = r["forbidden_hit"];
    std::cout << "  contains a subdivision of " << h["pattern"].get<std::string>()
              << ", branch vertices " << h["branch_map"].dump() << "\n";
  }
}

int run_error(const std::exception& e, int code) {
  std::cerr << "spnkit: " << e.what() << "\n";
  return code;
}

int error_code(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::InternalInconsistency: return kInternal;
    case ErrorKind::CertificateNotFound: return 2;
    default: return kData;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Copositive and SPN cone membership, SPN graph classification and witnesses"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  bool json = false;
  std::string file, property, out_path, name;
  std::optional<double> tol;
  std::vector<Index> params, subdiv;

  auto* tm = app.add_subcommand("test-matrix", "Test cone membership of a matrix");
  tm->add_option("file", file, "Matrix file")->required();
  tm->add_option("--property", property, "psd, copositive or spn")
      ->required()
      ->check(CLI::IsMember({"psd", "copositive", "spn"}));
  tm->add_option("--tol", tol, "Tolerance (default SPNKIT_TOL or 1e-9)")->check(CLI::NonNegativeNumber);
  tm->add_flag("--json", json, "Print a JSON report");

  auto* cl = app.add_subcommand("classify", "Classify a graph as SPN, NOT_SPN or UNKNOWN_CONJECTURED");
  cl->add_option("file", file, "Graph file")->required();
  cl->add_flag("--json", json, "Print a JSON report");

  auto* wi = app.add_subcommand("witness", "Build a copositive, non-SPN matrix with the given graph");
  wi->add_option("file", file, "Graph file")->required();
  wi->add_option("--out", out_path, "Write the matrix here");
  wi->add_flag("--json", json, "Print a JSON report");

  auto* de = app.add_subcommand("decompose", "SPN decomposition or DNN certificate");
  de->add_option("file", file, "Matrix file")->required();
  de->add_option("--tol", tol, "Tolerance (default SPNKIT_TOL or 1e-9)")->check(CLI::NonNegativeNumber);
  de->add_flag("--json", json, "Print a JSON report");

  auto* ca = app.add_subcommand("catalog", "Emit a named graph");
  ca->add_option("name", name, "Graph name")->required()->check(CLI::IsMember(catalog_names()));
  ca->add_option("params", params, "Size parameters");
  ca->add_option("--subdivide", subdiv, "Subdivide edge i-j k times (1-based i j, then k)")
      ->expected(3);
  ca->add_option("--out", out_path, "Write the graph here");
  ca->add_flag("--json", json, "Print a JSON report");

  auto* ve = app.add_subcommand("verify", "Re-check a JSON report");
  ve->add_option("file", file, "Report file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  const auto t0 = std::chrono::steady_clock::now();
  try {
    double t = kDefaultTol;
    try {
      t = tol ? *tol : tolerance_from_env();
    } catch (const Error& e) {
      return run_error(e, kUsage);
    }

    if (tm->parsed() || de->parsed()) {
      const std::string text = load(file);
      const SymMatrix a = parse_matrix(text);
      int status = 2;
      const bool is_test = tm->parsed();
      const Json r = is_test ? test_matrix_result(a, property, t, status) : decompose_result(a, t, status);
      Json args = {{"file", base(file)}, {"tol", t}};
      if (is_test) args["property"] = property;
      if (json)
        std::cout << make_report(is_test ? "test-matrix" : "decompose", args, text, r, elapsed_ms(t0)).dump(2)
                  << "\n";
      else
        print_matrix_result(r);
      return status;
    }
    if (cl->parsed()) {
      const std::string text = load(file);
      const Graph g = parse_graph(text).graph;
      int status = 2;
      const Json r = classify_result(g, status);
      if (json)
        std::cout << make_report("classify", {{"file", base(file)}}, text, r, elapsed_ms(t0)).dump(2) << "\n";
      else
        print_classify(r);
      return status;
    }
    if (wi->parsed()) {
      const std::string text = load(file);
      const Graph g = parse_graph(text).graph;
      const Witness w = witness_for_graph(g);
      if (!out_path.empty()) write_file(out_path, format_matrix(w.a));
      const Json r = witness_result(g, w);
      if (json) {
        std::cout << make_report("witness", {{"file", base(file)}}, text, r, elapsed_ms(t0)).dump(2) << "\n";
      } else {
        std::cout << "witness verified (" << w.trace.size() << " steps)\n";
        for (const auto& s : w.trace) std::cout << "  " << s << "\n";
        if (out_path.empty()) std::cout << format_matrix(w.a);
      }
      return 0;
    }
    if (ca->parsed()) {
      Graph g = catalog(name, params);
      if (!subdiv.empty()) {
        if (subdiv[0] < 1 || subdiv[1] < 1) throw Error(ErrorKind::BadParams, "vertices are 1-based");
        g = subdivide(g, subdiv[0] - 1, subdiv[1] - 1, subdiv[2]);
      }
      const std::string text = format_graph(g);
      if (!out_path.empty()) write_file(out_path, text);
      if (json) {
        Json args = {{"name", name}, {"params", params}};
        if (!subdiv.empty()) args["subdivide"] = subdiv;
        std::cout << make_report("catalog", args, text, catalog_result(g), elapsed_ms(t0)).dump(2) << "\n";
      } else if (out_path.empty()) {
        std::cout << text;
      }
      return 0;
    }
    if (ve->parsed()) {
      const std::string text = load(file);
      Json report;
      try {
        report = Json::parse(text);
      } catch (const Json::parse_error& e) {
        return run_error(e, kData);
      }
      bool all = true;
      for (const auto& item : verify_report(report)) {
        std::cout << (item.ok ? "PASS " : "FAIL ") << item.what;
        if (!item.reason.empty()) std::cout << ": " << item.reason;
        std::cout << "\n";
        all = all && item.ok;
      }
      return all ? 0 : 1;
    }
  } catch (const Unopenable& e) {
    return run_error(e, kNoInput);
  } catch (const Error& e) {
    return run_error(e, error_code(e));
  } catch (const std::exception& e) {
    return run_error(e, kInternal);
  }
  return kUsage;
}
