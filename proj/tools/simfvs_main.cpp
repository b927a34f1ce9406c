#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "simfvs/generators.hpp"
#include "simfvs/io.hpp"
#include "simfvs/kernel.hpp"
#include "simfvs/oracle.hpp"
#include "simfvs/reductions.hpp"
#include "simfvs/solver.hpp"

namespace {

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << content;
}

// Kernel graphs are emitted with compacted 1-based ids; "orig" comments map
// kernel ids back to input ids.
std::string serialize_compacted(const simfvs::EdgeColoredGraph& g,
                                std::vector<std::string> comments) {
  std::vector<simfvs::VertexId> ids = g.vertices();
  std::map<simfvs::VertexId, simfvs::VertexId> to_new;
  for (size_t i = 0; i < ids.size(); ++i) to_new[ids[i]] = static_cast<int>(i);
  simfvs::EdgeColoredGraph compact(g.alpha(), static_cast<int>(ids.size()));
  for (const auto& e : g.edges()) compact.add_edge(to_new[e.u], to_new[e.v], e.color, e.multiplicity);
  for (size_t i = 0; i < ids.size(); ++i)
    comments.push_back("orig " + std::to_string(i + 1) + " " +
                       std::to_string(g.origin(ids[i]) + 1));
  return simfvs::serialize_ecg(compact, comments);
}

int run(int argc, char** argv) {
  CLI::App app{"alpha-simultaneous feedback vertex set toolkit"};
  app.require_subcommand(1);

  std::string graph_path, sys_path, out_path, solution_path;
  int k = 0;
  bool no_matching = false;

  auto* cmd_solve = app.add_subcommand("solve", "decide and print a solution");
  cmd_solve->add_option("graph", graph_path, "input .ecg file")->required();
  cmd_solve->add_option("-k,--budget", k, "solution size budget")->required();
  cmd_solve->add_flag("--no-matching", no_matching, "use the hitting set base case even for two colors");
  cmd_solve->add_option("-o,--output", out_path, "solution file (default stdout)");

  auto* cmd_reduce = app.add_subcommand("reduce", "apply the cleanup rules exhaustively");
  cmd_reduce->add_option("graph", graph_path)->required();
  cmd_reduce->add_option("-k,--budget", k)->required();
  cmd_reduce->add_option("-o,--output", out_path);

  auto* cmd_kernelize = app.add_subcommand("kernelize", "compute an equivalent kernel instance");
  cmd_kernelize->add_option("graph", graph_path)->required();
  cmd_kernelize->add_option("-k,--budget", k)->required();
  cmd_kernelize->add_option("-o,--output", out_path);

  auto* cmd_verify = app.add_subcommand("verify", "check a solution file against a graph");
  cmd_verify->add_option("graph", graph_path)->required();
  cmd_verify->add_option("solution", solution_path, "solution file")->required();

  int oracle_cap = -1;
  auto* cmd_oracle = app.add_subcommand("oracle", "exact minimum by brute force (small graphs)");
  cmd_oracle->add_option("graph", graph_path)->required();
  cmd_oracle->add_option("--cap", oracle_cap, "largest size to consider (default n)");

  auto* cmd_generate = app.add_subcommand("generate", "build instances");
  auto* gen_hs = cmd_generate->add_subcommand("hs", "hitting set system to graph, one color per set");
  gen_hs->add_option("system", sys_path, "input .hss file (single group)")->required();
  gen_hs->add_option("-o,--output", out_path);
  auto* gen_phs = cmd_generate->add_subcommand("phs", "partitioned system to graph, one color per group");
  gen_phs->add_option("system", sys_path)->required();
  gen_phs->add_option("-o,--output", out_path);

  int psi_ell = 3, psi_class = 2;
  std::uint64_t seed = 1;
  bool psi_plant = false;
  std::string psi_graph_out;
  auto* gen_psi = cmd_generate->add_subcommand("psi", "random subgraph isomorphism instance to partitioned system");
  gen_psi->add_option("--pattern-vertices", psi_ell);
  gen_psi->add_option("--class-size", psi_class);
  gen_psi->add_option("--seed", seed);
  gen_psi->add_flag("--plant", psi_plant, "wire a valid embedding into the host");
  gen_psi->add_option("-o,--output", out_path, "output .hss file");
  gen_psi->add_option("--graph-out", psi_graph_out, "also chain into an .ecg file");

  int rnd_n = 10, rnd_alpha = 2, rnd_epc = 8, rnd_plant = -1;
  auto* gen_random = cmd_generate->add_subcommand("random", "seeded random multigraph");
  gen_random->add_option("-n,--vertices", rnd_n);
  gen_random->add_option("-a,--alpha", rnd_alpha);
  gen_random->add_option("-m,--edges-per-color", rnd_epc);
  gen_random->add_option("--seed", seed);
  gen_random->add_option("--plant", rnd_plant, "planted solution size");
  gen_random->add_option("-o,--output", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitError;
  }

  if (cmd_solve->parsed()) {
    simfvs::EdgeColoredGraph g = simfvs::parse_ecg(read_file(graph_path));
    simfvs::SolverOptions options;
    options.use_matching_base_for_two_colors = !no_matching;
    auto solution = simfvs::solve(g, k, options);
    write_output(out_path, simfvs::format_solution(solution.has_value(),
                                                   solution.value_or(std::vector<int>{})));
    return solution ? kExitYes : kExitNo;
  }
  if (cmd_reduce->parsed()) {
    simfvs::EdgeColoredGraph g = simfvs::parse_ecg(read_file(graph_path));
    simfvs::ReducedInstance red = simfvs::reduce_exhaustive(g, k);
    std::vector<std::string> comments{"k " + std::to_string(red.k)};
    std::string forced = "forced";
    for (simfvs::VertexId v : red.forced) forced += " " + std::to_string(v + 1);
    comments.push_back(forced);
    if (red.status != simfvs::ReduceStatus::Ok) comments.push_back("infeasible");
    write_output(out_path, serialize_compacted(red.graph, comments));
    return red.status == simfvs::ReduceStatus::Ok ? kExitYes : kExitNo;
  }
  if (cmd_kernelize->parsed()) {
    simfvs::EdgeColoredGraph g = simfvs::parse_ecg(read_file(graph_path));
    simfvs::KernelResult result = simfvs::kernelize(g, k);
    std::vector<std::string> comments{"k " + std::to_string(result.k)};
    if (result.infeasible) comments.push_back("infeasible");
    std::map<std::string, int> rule_counts;
    for (const auto& e : result.trace.events) {
      static const char* names[] = {"R1", "R2", "R3", "R4", "R5", "R6", "R7", "R8"};
      ++rule_counts[names[static_cast<int>(e.kind)]];
    }
    std::string summary = "rules";
    for (const auto& [name, count] : rule_counts)
      summary += " " + name + ":" + std::to_string(count);
    comments.push_back(summary);
    write_output(out_path, serialize_compacted(result.graph, comments));
    return kExitYes;
  }
  if (cmd_verify->parsed()) {
    simfvs::EdgeColoredGraph g = simfvs::parse_ecg(read_file(graph_path));
    std::vector<simfvs::VertexId> vertices;
    bool yes = simfvs::parse_solution(read_file(solution_path), vertices);
    if (!yes) {
      std::cout << "nothing to verify: solution file says no\n";
      return kExitNo;
    }
    bool ok = simfvs::verify_solution(g, vertices);
    std::cout << (ok ? "valid\n" : "invalid\n");
    return ok ? kExitYes : kExitNo;
  }
  if (cmd_oracle->parsed()) {
    simfvs::EdgeColoredGraph g = simfvs::parse_ecg(read_file(graph_path));
    int cap = oracle_cap < 0 ? g.num_vertices() : oracle_cap;
    simfvs::OracleResult result = simfvs::brute_force_min_simfvs(g, cap);
    if (!result.min_size) {
      std::cout << "min > " << cap << "\n";
      return kExitNo;
    }
    std::cout << "min " << *result.min_size << "\n";
    std::cout << simfvs::format_solution(true, result.witness);
    return kExitYes;
  }
  if (gen_hs->parsed() || gen_phs->parsed()) {
    simfvs::SetSystem sys = simfvs::parse_hss(read_file(sys_path));
    simfvs::GeneratedGraph gen =
        gen_hs->parsed() ? simfvs::from_hitting_set(sys) : simfvs::phs_to_simfvs(sys);
    std::vector<std::string> comments;
    for (size_t e = 0; e < gen.element_vertex.size(); ++e)
      comments.push_back("element " + std::to_string(e + 1) + " " +
                         std::to_string(gen.element_vertex[e] + 1));
    write_output(out_path, simfvs::serialize_ecg(gen.graph, comments));
    return kExitYes;
  }
  if (gen_psi->parsed()) {
    simfvs::PsiInstance psi = simfvs::random_psi_instance(psi_ell, psi_class, seed, psi_plant);
    simfvs::SetSystem sys = simfvs::psi_to_phs(psi);
    write_output(out_path, simfvs::serialize_hss(sys, {"k " + std::to_string(sys.k)}));
    if (!psi_graph_out.empty()) {
      simfvs::GeneratedGraph gen = simfvs::phs_to_simfvs(sys);
      write_output(psi_graph_out, simfvs::serialize_ecg(gen.graph));
    }
    return kExitYes;
  }
  if (gen_random->parsed()) {
    simfvs::RandomInstanceParams params{rnd_n, rnd_alpha, rnd_epc, seed, rnd_plant};
    simfvs::EdgeColoredGraph g = simfvs::random_instance(params);
    write_output(out_path, simfvs::serialize_ecg(g, {"seed " + std::to_string(seed)}));
    return kExitYes;
  }
  return kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}
