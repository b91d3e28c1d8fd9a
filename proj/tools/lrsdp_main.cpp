// Command-line front end: instance generation, single solves, the shipped
// 7x5 fixture, gamma sweeps, the n-scaling study, and SDPA export.

#include "lrsdp/alternating.hpp"
#include "lrsdp/bench.hpp"
#include "lrsdp/problem_library.hpp"
#include "lrsdp/relaxations.hpp"
#include "lrsdp/sdpa.hpp"
#include "lrsdp/solver.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace lrsdp;

std::vector<uint64_t> parse_seeds(const std::string& csv) {
  std::vector<uint64_t> seeds;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) seeds.push_back(std::stoull(tok));
  }
  return seeds;
}

std::vector<double> parse_doubles(const std::string& csv) {
  std::vector<double> vals;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) vals.push_back(std::stod(tok));
  }
  return vals;
}

std::vector<Relaxation> parse_relaxations(const std::string& csv) {
  std::vector<Relaxation> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(relaxation_from_string(tok));
  }
  return out;
}

int exit_code_for(const std::vector<CsvRow>& rows) {
  for (const auto& row : rows) {
    if (row.status == to_string(SolveStatus::NumericalFailure)) return 2;
  }
  return 0;
}

struct CommonFlags {
  int n = 8, m = 0, rank = 2, k = 2;
  double eps = 0.1, p = 0.5, gamma = 0.0, lambda = 0.0;
  std::string gammas, seeds = "1,2,3,4,5,6,7,8,9,10";
  std::string relaxation = "compact";
  double tol = 1e-6;
  long maxIters = 100000;
  std::string out;
  bool verbose = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--n", n, "rows of X");
    cmd->add_option("--m", m, "columns of X (defaults to n)");
    cmd->add_option("--rank", rank, "planted rank r");
    cmd->add_option("--eps", eps, "noise level");
    cmd->add_option("--p", p, "observed fraction");
    cmd->add_option("--gamma", gamma, "Frobenius regularization gamma (0 = none)");
    cmd->add_option("--gammas", gammas, "comma-separated gamma grid");
    cmd->add_option("--k", k, "rank cap");
    cmd->add_option("--lambda", lambda, "rank penalty");
    cmd->add_option("--relaxation", relaxation, "relaxation name or comma list");
    cmd->add_option("--seeds", seeds, "comma-separated seeds");
    cmd->add_option("--tol", tol, "solver tolerance (primal/dual/gap)");
    cmd->add_option("--max-iters", maxIters, "solver iteration cap");
    cmd->add_option("--out", out, "output path (default stdout)");
    cmd->add_flag("--verbose", verbose, "stream iteration logs to stderr");
  }

  SolverSettings solver() const {
    SolverSettings s;
    s.epsPrimal = s.epsDual = s.epsGap = tol;
    s.maxIterations = maxIters;
    s.verbose = verbose;
    return s;
  }

  ExperimentConfig config() const {
    ExperimentConfig cfg;
    cfg.n = n;
    cfg.m = m > 0 ? m : n;
    cfg.r = rank;
    cfg.eps = eps;
    cfg.p = p;
    cfg.k = k;
    cfg.lambda = lambda;
    cfg.gammas = gammas.empty() ? std::vector<double>{} : parse_doubles(gammas);
    cfg.relaxations = parse_relaxations(relaxation);
    cfg.seeds = parse_seeds(seeds);
    cfg.solver = solver();
    cfg.outPath = out;
    return cfg;
  }
};

int cmd_gen(const CommonFlags& flags) {
  const auto seeds = parse_seeds(flags.seeds);
  if (seeds.size() != 1) {
    std::cerr << "gen: pass exactly one seed via --seeds\n";
    return 1;
  }
  const int m = flags.m > 0 ? flags.m : flags.n;
  McInstance inst;
  inst.obs = generate_instance(flags.n, m, flags.rank, flags.eps, flags.p, seeds[0]);
  inst.lambda = flags.lambda;
  inst.k = flags.k;
  inst.gamma = flags.gamma;
  if (flags.out.empty()) {
    std::cout << save_instance(inst);
  } else {
    save_instance_file(inst, flags.out);
  }
  return 0;
}

int cmd_solve(const CommonFlags& flags, const std::string& path, bool haveGamma, bool haveK,
              bool haveLambda) {
  McInstance inst = load_instance_file(path);
  if (haveGamma) inst.gamma = flags.gamma;
  if (haveK) inst.k = flags.k;
  if (haveLambda) inst.lambda = flags.lambda;
  const auto relaxations = parse_relaxations(flags.relaxation);
  std::vector<CsvRow> rows;
  for (Relaxation r : relaxations) {
    CsvRow row = run_mc_cell(
        inst.obs, inst.gamma, inst.k, inst.lambda, r, flags.solver(), 0,
        static_cast<double>(inst.obs.omega.size()) / (inst.obs.rows() * inst.obs.cols()));
    rows.push_back(row);
  }
  write_csv(rows, flags.out);
  return exit_code_for(rows);
}

int cmd_example1(const CommonFlags& flags) {
  const auto rows = example1_report(flags.solver());
  write_csv(rows, flags.out);
  return exit_code_for(rows);
}

int cmd_sweep(const CommonFlags& flags) {
  const auto rows = run_gamma_sweep(flags.config());
  write_csv(rows, flags.out);
  return exit_code_for(rows);
}

int cmd_scale(const CommonFlags& flags, const std::string& ns) {
  std::vector<CsvRow> all;
  ExperimentConfig cfg = flags.config();
  for (double nd : parse_doubles(ns.empty() ? std::to_string(flags.n) : ns)) {
    cfg.n = static_cast<int>(nd);
    cfg.m = cfg.n;
    const auto rows = run_scaling(cfg);
    all.insert(all.end(), rows.begin(), rows.end());
  }
  write_csv(all, flags.out);
  return exit_code_for(all);
}

int cmd_export_sdpa(const CommonFlags& flags, const std::string& path) {
  const McInstance inst = load_instance_file(path);
  const auto relaxations = parse_relaxations(flags.relaxation);
  if (relaxations.size() != 1) {
    std::cerr << "export-sdpa: pass exactly one relaxation\n";
    return 1;
  }
  ConicProgram prog;
  switch (relaxations[0]) {
    case Relaxation::Mprt:
      prog = build_mprt(encode_matrix_completion(inst.obs, inst.lambda, inst.k, inst.gamma, 0.5));
      prog = lower_socs(prog);
      break;
    case Relaxation::Full:
      prog =
          build_full_lifted(encode_matrix_completion(inst.obs, inst.lambda, inst.k, inst.gamma, 0.5));
      break;
    case Relaxation::FullPerm: {
      StrengtheningOptions opts;
      opts.symmetryY = true;
      prog = build_full_lifted(
          encode_matrix_completion(inst.obs, inst.lambda, inst.k, inst.gamma, 0.5), opts);
      break;
    }
    case Relaxation::Compact:
      prog = build_compact_lifted(
          encode_matrix_completion(inst.obs, inst.lambda, inst.k, inst.gamma, 0.5));
      break;
    case Relaxation::Reduced:
      prog = build_mc_reduced(inst.obs, inst.lambda, inst.k, inst.gamma, 0.5);
      break;
    case Relaxation::Grouped:
      prog = build_mc_grouped(inst.obs, inst.lambda, inst.k, inst.gamma, 0.5);
      break;
    default:
      std::cerr << "export-sdpa: relaxation not applicable to completion instances\n";
      return 1;
  }
  prog.finalize();
  const std::string text = export_sdpa(prog);
  if (flags.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(flags.out);
    if (!f) {
      std::cerr << "cannot open " << flags.out << "\n";
      return 1;
    }
    f << text;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"semidefinite relaxations for rank-constrained quadratic matrix problems"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string inputPath, ns;

  CLI::App* gen = app.add_subcommand("gen", "generate a completion instance file");
  CLI::App* solveCmd = app.add_subcommand("solve", "solve one instance file");
  solveCmd->add_option("file", inputPath, "instance file")->required();
  CLI::App* ex1 = app.add_subcommand("example1", "bounds on the shipped 7x5 fixture");
  CLI::App* sweep = app.add_subcommand("sweep", "gamma sweep over seeded instances");
  CLI::App* scale = app.add_subcommand("scale", "n-scaling study (gamma = 1e4/n^2)");
  scale->add_option("--ns", ns, "comma-separated list of n values");
  CLI::App* exportCmd = app.add_subcommand("export-sdpa", "write an SDPA sparse file");
  exportCmd->add_option("file", inputPath, "instance file")->required();

  for (CLI::App* cmd : {gen, solveCmd, ex1, sweep, scale, exportCmd}) flags.attach(cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (gen->parsed()) return cmd_gen(flags);
    if (solveCmd->parsed())
      return cmd_solve(flags, inputPath, solveCmd->count("--gamma") > 0,
                       solveCmd->count("--k") > 0, solveCmd->count("--lambda") > 0);
    if (ex1->parsed()) return cmd_example1(flags);
    if (sweep->parsed()) return cmd_sweep(flags);
    if (scale->parsed()) return cmd_scale(flags, ns);
    if (exportCmd->parsed()) return cmd_export_sdpa(flags, inputPath);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
