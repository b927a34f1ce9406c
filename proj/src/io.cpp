#include "simfvs/io.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace simfvs {

namespace {

[[noreturn]] void fail(int line, const std::string& what) {
  throw std::runtime_error("line " + std::to_string(line) + ": " + what);
}

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

int parse_int(const std::string& tok, int line, const std::string& what) {
  try {
    size_t pos = 0;
    int value = std::stoi(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return value;
  } catch (const std::exception&) {
    fail(line, "expected integer for " + what + ", got '" + tok + "'");
  }
}

}  // namespace

EdgeColoredGraph parse_ecg(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  int n = -1, alpha = -1;
  long long m = -1, edges_seen = 0;
  EdgeColoredGraph g(1);

  while (std::getline(in, line)) {
    ++line_no;
    auto tok = tokens(line);
    if (tok.empty() || tok[0] == "c") continue;
    if (tok[0] == "p") {
      if (n != -1) fail(line_no, "duplicate problem line");
      if (tok.size() != 5 || tok[1] != "ecg") fail(line_no, "expected 'p ecg <n> <alpha> <m>'");
      n = parse_int(tok[2], line_no, "vertex count");
      alpha = parse_int(tok[3], line_no, "color count");
      m = parse_int(tok[4], line_no, "edge count");
      if (n < 0 || alpha < 1 || m < 0) fail(line_no, "bad problem parameters");
      g = EdgeColoredGraph(alpha, n);
      continue;
    }
    if (tok[0] == "e") {
      if (n == -1) fail(line_no, "edge before problem line");
      if (tok.size() != 4) fail(line_no, "expected 'e <u> <v> <color>'");
      int u = parse_int(tok[1], line_no, "vertex");
      int v = parse_int(tok[2], line_no, "vertex");
      int color = parse_int(tok[3], line_no, "color");
      if (u < 1 || u > n) fail(line_no, "vertex " + std::to_string(u) + " out of range 1.." +
                                            std::to_string(n));
      if (v < 1 || v > n) fail(line_no, "vertex " + std::to_string(v) + " out of range 1.." +
                                            std::to_string(n));
      if (color < 1 || color > alpha)
        fail(line_no, "color " + std::to_string(color) + " out of range 1.." +
                          std::to_string(alpha));
      g.add_edge(u - 1, v - 1, color, 1);
      ++edges_seen;
      continue;
    }
    fail(line_no, "unknown record '" + tok[0] + "'");
  }
  if (n == -1) fail(line_no, "missing problem line");
  if (edges_seen != m)
    fail(line_no, "edge count mismatch: header says " + std::to_string(m) + ", found " +
                      std::to_string(edges_seen));
  return g;
}

std::string serialize_ecg(const EdgeColoredGraph& g, const std::vector<std::string>& comments) {
  std::ostringstream out;
  for (const auto& c : comments) out << "c " << c << "\n";
  int n = 0;
  for (VertexId v : g.vertices()) n = std::max(n, v + 1);
  out << "p ecg " << n << " " << g.alpha() << " " << g.num_edges() << "\n";
  for (const auto& e : g.edges())
    for (int i = 0; i < e.multiplicity; ++i)
      out << "e " << e.u + 1 << " " << e.v + 1 << " " << e.color << "\n";
  return out.str();
}

SetSystem parse_hss(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  SetSystem sys;
  bool have_header = false;
  int open_group = -1;

  while (std::getline(in, line)) {
    ++line_no;
    auto tok = tokens(line);
    if (tok.empty() || tok[0] == "c") continue;
    if (tok[0] == "p") {
      if (have_header) fail(line_no, "duplicate problem line");
      if (tok.size() != 4 || tok[1] != "hss") fail(line_no, "expected 'p hss <universe> <groups>'");
      sys.universe_size = parse_int(tok[2], line_no, "universe size");
      int groups = parse_int(tok[3], line_no, "group count");
      if (sys.universe_size < 0 || groups < 0) fail(line_no, "bad problem parameters");
      sys.groups.assign(groups, {});
      have_header = true;
      continue;
    }
    if (!have_header) fail(line_no, "record before problem line");
    if (tok[0] == "g") {
      if (tok.size() != 2) fail(line_no, "expected 'g <group-index>'");
      open_group = parse_int(tok[1], line_no, "group index");
      if (open_group < 1 || open_group > sys.num_groups())
        fail(line_no, "group index out of range");
      continue;
    }
    if (tok[0] == "s") {
      if (open_group == -1) fail(line_no, "set before any group line");
      std::vector<ElementId> set;
      for (size_t i = 1; i < tok.size(); ++i) {
        int e = parse_int(tok[i], line_no, "element");
        if (e < 1 || e > sys.universe_size) fail(line_no, "element out of range");
        set.push_back(e - 1);
      }
      if (set.empty()) fail(line_no, "empty set");
      sys.groups[open_group - 1].push_back(std::move(set));
      continue;
    }
    fail(line_no, "unknown record '" + tok[0] + "'");
  }
  if (!have_header) fail(line_no, "missing problem line");
  return sys;
}

std::string serialize_hss(const SetSystem& sys, const std::vector<std::string>& comments) {
  std::ostringstream out;
  for (const auto& c : comments) out << "c " << c << "\n";
  out << "p hss " << sys.universe_size << " " << sys.num_groups() << "\n";
  for (int gi = 0; gi < sys.num_groups(); ++gi) {
    out << "g " << gi + 1 << "\n";
    for (const auto& set : sys.groups[gi]) {
      out << "s";
      for (ElementId e : set) out << " " << e + 1;
      out << "\n";
    }
  }
  return out.str();
}

std::string format_solution(bool yes, const std::vector<VertexId>& vertices) {
  std::ostringstream out;
  if (!yes) {
    out << "s no\n";
    return out.str();
  }
  out << "s yes\n";
  std::vector<VertexId> sorted = vertices;
  std::sort(sorted.begin(), sorted.end());
  for (VertexId v : sorted) out << "v " << v + 1 << "\n";
  return out.str();
}

bool parse_solution(const std::string& text, std::vector<VertexId>& vertices) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool yes = false, have_status = false;
  vertices.clear();
  while (std::getline(in, line)) {
    ++line_no;
    auto tok = tokens(line);
    if (tok.empty() || tok[0] == "c") continue;
    if (tok[0] == "s") {
      if (tok.size() != 2 || (tok[1] != "yes" && tok[1] != "no"))
        fail(line_no, "expected 's yes' or 's no'");
      yes = tok[1] == "yes";
      have_status = true;
      continue;
    }
    if (tok[0] == "v") {
      if (tok.size() != 2) fail(line_no, "expected 'v <id>'");
      vertices.push_back(parse_int(tok[1], line_no, "vertex") - 1);
      continue;
    }
    fail(line_no, "unknown record '" + tok[0] + "'");
  }
  if (!have_status) fail(line_no, "missing status line");
  return yes;
}

}  // namespace simfvs
