#include "spnkit/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "spnkit/errors.hpp"

namespace spnkit {

namespace {

struct Token {
  std::string text;
  Index line, column;
};

// Non-comment, non-blank lines split into whitespace-separated tokens.
std::vector<std::vector<Token>> tokenize(std::string_view text) {
  std::vector<std::vector<Token>> lines;
  Index lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++lineno;
    pos = end + 1;
    std::vector<Token> toks;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      if (i >= line.size()) break;
      std::size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
      toks.push_back({std::string(line.substr(i, j - i)), lineno, i + 1});
      i = j;
    }
    if (toks.empty() || toks[0].text[0] == '#') continue;
    lines.push_back(std::move(toks));
  }
  return lines;
}

[[noreturn]] void fail(const Token& t, const std::string& what) {
  std::ostringstream s;
  s << "line " << t.line << ", column " << t.column << ": " << what;
  throw Error(ErrorKind::ParseError, s.str());
}

double parse_number(std::string_view s, bool& ok) {
  double x = 0.0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  ok = ec == std::errc() && p == s.data() + s.size() && std::isfinite(x);
  return x;
}

double parse_entry(const Token& t) {
  std::string_view s = t.text;
  double sign = 1.0;
  if (!s.empty() && (s.front() == '-' || s.front() == '+') && s.substr(1) == "r2h") {
    sign = s.front() == '-' ? -1.0 : 1.0;
    s.remove_prefix(1);
  }
  if (s == "r2h") return sign * (std::sqrt(2.0) / 2.0);
  bool ok = false;
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    bool ok2 = false;
    const double p = parse_number(s.substr(0, slash), ok);
    const double q = parse_number(s.substr(slash + 1), ok2);
    if (!ok || !ok2 || q == 0.0) fail(t, "bad fraction '" + t.text + "'");
    return p / q;
  }
  const double x = parse_number(s, ok);
  if (!ok) fail(t, "bad number '" + t.text + "'");
  return x;
}

Index parse_count(const Token& t, const char* what) {
  Index n = 0;
  auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), n);
  if (ec != std::errc() || p != t.text.data() + t.text.size()) fail(t, std::string("bad ") + what);
  return n;
}

}  // namespace

SymMatrix parse_matrix(std::string_view text) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw Error(ErrorKind::ParseError, "empty input");
  if (lines[0].size() != 1) fail(lines[0][1], "first line must hold only the order");
  const Index n = parse_count(lines[0][0], "order");
  if (n == 0) fail(lines[0][0], "order must be positive");
  if (lines.size() != n + 1) {
    const Token& t = lines.size() > n + 1 ? lines[n + 1][0] : lines.back().back();
    fail(t, "expected " + std::to_string(n) + " rows, found " + std::to_string(lines.size() - 1));
  }
  std::vector<std::vector<double>> rows(n);
  for (Index i = 0; i < n; ++i) {
    const auto& l = lines[i + 1];
    if (l.size() != n) fail(l.back(), "row has " + std::to_string(l.size()) + " entries, expected " + std::to_string(n));
    for (const auto& t : l) rows[i].push_back(parse_entry(t));
  }
  return SymMatrix::from_rows(rows);
}

std::string format_matrix(const SymMatrix& a) {
  std::string out = std::to_string(a.order()) + "\n";
  char buf[40];
  for (Index i = 0; i < a.order(); ++i) {
    for (Index j = 0; j < a.order(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", a(i, j));
      out += (j ? " " : "");
      out += buf;
    }
    out += "\n";
  }
  return out;
}

ParsedGraph parse_graph(std::string_view text) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw Error(ErrorKind::ParseError, "empty input");
  if (lines[0].size() != 1) fail(lines[0][1], "first line must hold only the vertex count");
  const Index n = parse_count(lines[0][0], "vertex count");
  ParsedGraph out{Graph(n), std::nullopt};
  SignedGraph sg(n);
  int signedness = -1;  // unknown, 0 unsigned, 1 signed
  for (Index k = 1; k < lines.size(); ++k) {
    const auto& l = lines[k];
    if (l.size() != 2 && l.size() != 3) fail(l[0], "edge line needs 2 or 3 fields");
    const int this_signed = l.size() == 3 ? 1 : 0;
    if (signedness >= 0 && this_signed != signedness)
      throw Error(ErrorKind::MixedSignedness,
                  "line " + std::to_string(l[0].line) + ": signed and unsigned edge lines mixed");
    signedness = this_signed;
    const Index u = parse_count(l[0], "vertex"), v = parse_count(l[1], "vertex");
    if (u < 1 || u > n) fail(l[0], "vertex out of range");
    if (v < 1 || v > n) fail(l[1], "vertex out of range");
    if (u == v || out.graph.has_edge(u - 1, v - 1))
      throw Error(ErrorKind::LoopOrDuplicate,
                  "line " + std::to_string(l[0].line) + ": loop or duplicate edge");
    out.graph.add_edge(u - 1, v - 1);
    if (this_signed) {
      const std::string& s = l[2].text;
      int sign = 0;
      if (s == "+") sign = 1;
      if (s == "-" || s == "−") sign = -1;
      if (sign == 0) fail(l[2], "sign must be + or -");
      sg.add_edge(u - 1, v - 1, sign);
    }
  }
  if (signedness == 1) out.signed_graph = std::move(sg);
  return out;
}

std::string format_graph(const Graph& g) {
  std::string out = std::to_string(g.order()) + "\n";
  for (auto [u, v] : g.edges()) out += std::to_string(u + 1) + " " + std::to_string(v + 1) + "\n";
  return out;
}

std::string format_graph(const SignedGraph& g) {
  std::string out = std::to_string(g.order()) + "\n";
  for (auto [u, v, s] : g.signed_edges())
    out += std::to_string(u + 1) + " " + std::to_string(v + 1) + (s < 0 ? " -\n" : " +\n");
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace spnkit
