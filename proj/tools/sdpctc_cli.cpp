#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>

#include "sdpctc/generators.hpp"
#include "sdpctc/graph_io.hpp"
#include "sdpctc/pipeline.hpp"
#include "sdpctc/sdpa.hpp"

using namespace sdpctc;

namespace {

int run_generate(const std::string& kind, const std::string& graph_path, int k, const std::string& out) {
  const Graph g = read_graph_file(graph_path);
  SdpProblem sdp;
  if (kind == "maxcut")
    sdp = gen_maxcut(g);
  else if (kind == "maxkcut")
    sdp = gen_maxkcut(g, k);
  else if (kind == "theta")
    sdp = gen_lovasz_theta(g);
  else
    throw Error(ErrorCode::InvalidArgument, "unknown family '" + kind + "'");
  write_sdpa_file(out, sdp);
  std::cout << "wrote " << out << " (n=" << sdp.n << ", m=" << sdp.m() << ")\n";
  return 0;
}

int run_decompose(const std::string& graph_path, const std::string& perm_path, const std::string& dump_path) {
  const Graph g = read_graph_file(graph_path);
  std::optional<std::vector<int>> perm;
  if (!perm_path.empty()) perm = read_permutation_file(perm_path, g.n);
  const auto t0 = std::chrono::steady_clock::now();
  const TreeDecomposition td = decompose(g, perm);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cout << "n " << g.n << " edges " << g.num_edges() << " ell " << td.ell() << " omega " << td.omega()
            << " time_s " << secs << "\n";
  if (!dump_path.empty()) {
    std::ofstream out(dump_path);
    write_decomposition(out, td);
  }
  return 0;
}

int run_solve(const std::string& path, const std::string& method, double eps, const std::string& step,
              const std::string& nu, int max_iter, bool diag, const std::string& out_prefix) {
  const SdpProblem sdp = read_sdpa_file(path);
  PipelineOptions opts;
  opts.method = parse_method(method);
  opts.ipm.eps = eps;
  opts.ipm.max_iter = max_iter;
  opts.ipm.method = step == "short" ? StepMethod::Short : StepMethod::Adaptive;
  opts.nu = nu == "standard" ? NuConvention::Standard : NuConvention::Unit;
  if (diag) opts.ipm.diag_out = &std::cerr;
  const PipelineResult res = solve_sdp(sdp, opts);
  const std::string prefix = out_prefix.empty() ? path : out_prefix;
  {
    std::ofstream sol(prefix + ".sol");
    write_solution(sol, res.U);
  }
  const std::string metrics = metrics_json(res);
  {
    std::ofstream mj(prefix + ".metrics.json");
    mj << metrics << "\n";
  }
  std::cout.precision(12);
  std::cout << "objective " << res.objective << "\n" << metrics << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chordal conversion SDP solver"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("generate", "write a MAXCUT / MAX k-CUT / theta instance in SDPA sparse format");
  std::string family, graph_path, out_path;
  int k = 2;
  gen->add_option("family", family, "maxcut | maxkcut | theta")->required()->check(CLI::IsMember({"maxcut", "maxkcut", "theta"}));
  gen->add_option("--graph", graph_path, "graph file")->required();
  gen->add_option("--k", k, "number of parts for maxkcut")->check(CLI::Range(2, 1 << 20));
  gen->add_option("-o,--out", out_path, "output .dat-s file")->required();

  auto* dec = app.add_subcommand("decompose", "print tree decomposition statistics");
  std::string perm_path, dump_path;
  dec->add_option("--graph", graph_path, "graph file")->required();
  dec->add_option("--perm", perm_path, "elimination order, 1-based");
  dec->add_option("--dump", dump_path, "write the bags to this file");

  auto* sol = app.add_subcommand("solve", "solve an SDPA sparse file");
  std::string input, method = "dctc", step = "adaptive", nu = "unit", prefix;
  double eps = 1e-8;
  int max_iter = 200;
  bool diag = false;
  sol->add_option("input", input, "problem file (.dat-s)")->required();
  sol->add_option("--method", method, "ctc | dctc | dctc-aux")->check(CLI::IsMember({"ctc", "dctc", "dctc-aux"}));
  sol->add_option("--eps", eps, "stop when mu <= eps");
  sol->add_option("--step", step, "short | adaptive")->check(CLI::IsMember({"short", "adaptive"}));
  sol->add_option("--nu", nu, "unit | standard")->check(CLI::IsMember({"unit", "standard"}));
  sol->add_option("--max-iter", max_iter, "iteration limit");
  sol->add_option("-o,--out", prefix, "output prefix for .sol and .metrics.json");
  sol->add_flag("--diag", diag, "per-iteration normal-matrix statistics on stderr");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  try {
    if (*gen) return run_generate(family, graph_path, k, out_path);
    if (*dec) return run_decompose(graph_path, perm_path, dump_path);
    return run_solve(input, method, eps, step, nu, max_iter, diag, prefix);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::ParseError:
      case ErrorCode::UnsupportedBlockStructure:
      case ErrorCode::InvalidArgument: return 2;
      default: return 1;
    }
  }
}
