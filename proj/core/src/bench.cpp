#include "lrsdp/bench.hpp"

#include "lrsdp/alternating.hpp"
#include "lrsdp/problem_library.hpp"
#include "lrsdp/relaxations.hpp"
#include "lrsdp/rng.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace lrsdp {

const char* to_string(Relaxation r) {
  switch (r) {
    case Relaxation::Mprt: return "mprt";
    case Relaxation::Full: return "full";
    case Relaxation::FullPerm: return "full-perm";
    case Relaxation::Compact: return "compact";
    case Relaxation::Reduced: return "reduced";
    case Relaxation::Grouped: return "grouped";
    case Relaxation::BpFull: return "bp-full";
    case Relaxation::BpReduced: return "bp-reduced";
    case Relaxation::RrrLifted: return "rrr-lifted";
    case Relaxation::RrrCompact: return "rrr-compact";
  }
  return "unknown";
}

Relaxation relaxation_from_string(const std::string& name) {
  for (Relaxation r : {Relaxation::Mprt, Relaxation::Full, Relaxation::FullPerm,
                       Relaxation::Compact, Relaxation::Reduced, Relaxation::Grouped,
                       Relaxation::BpFull, Relaxation::BpReduced, Relaxation::RrrLifted,
                       Relaxation::RrrCompact}) {
    if (name == to_string(r)) return r;
  }
  throw std::invalid_argument("unknown relaxation: " + name);
}

void ExperimentConfig::validate() const {
  if (n < 1 || m < 1) throw std::invalid_argument("config: bad dimensions");
  if (p <= 0.0 || p > 1.0) throw std::invalid_argument("config: p must be in (0,1]");
  if (seeds.empty()) throw std::invalid_argument("config: at least one seed required");
}

ObservedMatrix generate_instance(int n, int m, int r, double eps, double p, uint64_t seed) {
  if (r < 1 || r > std::min(n, m)) throw std::invalid_argument("generate_instance: bad rank");
  if (p <= 0.0 || p > 1.0) throw std::invalid_argument("generate_instance: bad fraction");
  CounterRng rng(seed);
  DenseMatrix u(n, r), v(r, m), z(n, m);
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < r; ++c) u(i, c) = rng.next_normal();
  for (int c = 0; c < r; ++c)
    for (int j = 0; j < m; ++j) v(c, j) = rng.next_normal();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) z(i, j) = rng.next_normal();

  ObservedMatrix obs;
  obs.a = u * v + eps * z;
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<size_t>(n) * m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) pairs.push_back({i, j});
  const size_t take = static_cast<size_t>(
      std::llround(p * static_cast<double>(n) * static_cast<double>(m)));
  for (size_t i = 0; i < pairs.size() - 1 && i < take; ++i) {
    const size_t j = i + static_cast<size_t>(rng.next_below(pairs.size() - i));
    std::swap(pairs[i], pairs[j]);
  }
  for (size_t i = 0; i < take && i < pairs.size(); ++i) obs.omega.insert(pairs[i]);
  return obs;
}

const char* kCsvHeader =
    "seed,n,m,p,gamma,relaxation,lower_bound,upper_bound,gap,status,iterations,"
    "build_time_s,solve_time_s";

std::string to_csv(const CsvRow& row) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "%llu,%d,%d,%.10g,%.10g,%s,%.10g,%.10g,%.10g,%s,%ld,%.6g,%.6g",
                static_cast<unsigned long long>(row.seed), row.n, row.m, row.p, row.gamma,
                row.relaxation.c_str(), row.lowerBound, row.upperBound, row.gap,
                row.status.c_str(), row.iterations, row.buildTimeSeconds, row.solveTimeSeconds);
  return buf;
}

void write_csv(const std::vector<CsvRow>& rows, const std::string& outPath) {
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!outPath.empty()) {
    file.open(outPath);
    if (!file) throw std::runtime_error("cannot open output file: " + outPath);
    out = &file;
  }
  *out << kCsvHeader << '\n';
  for (const auto& row : rows) *out << to_csv(row) << '\n';
}

namespace {

constexpr double kLossScale = 0.5;

struct BuiltProgram {
  ConicProgram prog;
  double buildTime = 0.0;
};

BuiltProgram build_mc_relaxation(const ObservedMatrix& obs, double gamma, int k, double lambda,
                                 Relaxation relaxation) {
  const auto start = std::chrono::steady_clock::now();
  BuiltProgram out;
  switch (relaxation) {
    case Relaxation::Mprt:
      out.prog = build_mprt(encode_matrix_completion(obs, lambda, k, gamma, kLossScale));
      break;
    case Relaxation::Full:
      out.prog = build_full_lifted(encode_matrix_completion(obs, lambda, k, gamma, kLossScale));
      break;
    case Relaxation::FullPerm: {
      StrengtheningOptions opts;
      opts.symmetryY = true;
      out.prog =
          build_full_lifted(encode_matrix_completion(obs, lambda, k, gamma, kLossScale), opts);
      break;
    }
    case Relaxation::Compact:
      out.prog =
          build_compact_lifted(encode_matrix_completion(obs, lambda, k, gamma, kLossScale));
      break;
    case Relaxation::Reduced:
      out.prog = build_mc_reduced(obs, lambda, k, gamma, kLossScale);
      break;
    case Relaxation::Grouped:
      out.prog = build_mc_grouped(obs, lambda, k, gamma, kLossScale);
      break;
    default:
      throw std::invalid_argument("relaxation does not apply to completion instances");
  }
  out.prog.finalize();
  out.buildTime =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace

CsvRow run_mc_cell(const ObservedMatrix& obs, double gamma, int k, double lambda,
                   Relaxation relaxation, const SolverSettings& solver, uint64_t seed, double p) {
  BuiltProgram built = build_mc_relaxation(obs, gamma, k, lambda, relaxation);
  const ConicSolution sol = solve(built.prog, solver);

  AMSettings am;
  am.rank = k;
  am.gamma = gamma;
  am.seed = seed;
  const AMResult heuristic = alternating_minimization(obs, am, kLossScale, lambda);

  CsvRow row;
  row.seed = seed;
  row.n = obs.rows();
  row.m = obs.cols();
  row.p = p;
  row.gamma = gamma;
  row.relaxation = to_string(relaxation);
  row.lowerBound = sol.primalObjective + built.prog.objective_offset();
  row.upperBound = heuristic.upperBound;
  row.gap = heuristic.upperBound > 0.0 ? gap(heuristic.upperBound, row.lowerBound, 1e-4) : 0.0;
  row.status = to_string(sol.status);
  row.iterations = sol.iterations;
  row.buildTimeSeconds = built.buildTime;
  row.solveTimeSeconds = sol.wallTimeSeconds;
  return row;
}

std::vector<CsvRow> run_gamma_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.relaxations.empty()) throw std::invalid_argument("sweep: no relaxations selected");
  const std::vector<double>& gammas = cfg.gammas.empty() ? default_gamma_grid() : cfg.gammas;

  std::vector<CsvRow> rows;
  for (uint64_t seed : cfg.seeds) {
    const ObservedMatrix obs = generate_instance(cfg.n, cfg.m, cfg.r, cfg.eps, cfg.p, seed);
    for (double gamma : gammas) {
      for (Relaxation relaxation : cfg.relaxations) {
        try {
          rows.push_back(run_mc_cell(obs, gamma, cfg.k, cfg.lambda, relaxation, cfg.solver, seed,
                                     cfg.p));
        } catch (const std::exception& e) {
          CsvRow row;
          row.seed = seed;
          row.n = cfg.n;
          row.m = cfg.m;
          row.p = cfg.p;
          row.gamma = gamma;
          row.relaxation = to_string(relaxation);
          row.status = std::string("error:") + e.what();
          rows.push_back(row);
        }
      }
    }
  }
  std::sort(rows.begin(), rows.end(), [](const CsvRow& a, const CsvRow& b) {
    return std::tie(a.seed, a.gamma, a.relaxation) < std::tie(b.seed, b.gamma, b.relaxation);
  });
  return rows;
}

std::vector<CsvRow> run_scaling(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.relaxations.size() != 1 ||
      (cfg.relaxations[0] != Relaxation::Compact && cfg.relaxations[0] != Relaxation::Reduced)) {
    throw std::invalid_argument("scaling study: relaxation must be compact or reduced");
  }
  const double gamma = 1e4 / (static_cast<double>(cfg.n) * cfg.n);
  const double scale = static_cast<double>(cfg.n) * cfg.n;

  std::vector<CsvRow> rows;
  for (uint64_t seed : cfg.seeds) {
    const ObservedMatrix obs = generate_instance(cfg.n, cfg.m, cfg.r, cfg.eps, cfg.p, seed);
    CsvRow row =
        run_mc_cell(obs, gamma, cfg.k, cfg.lambda, cfg.relaxations[0], cfg.solver, seed, cfg.p);
    row.lowerBound /= scale;
    row.upperBound /= scale;
    rows.push_back(row);
  }
  std::sort(rows.begin(), rows.end(), [](const CsvRow& a, const CsvRow& b) {
    return std::tie(a.seed, a.gamma, a.relaxation) < std::tie(b.seed, b.gamma, b.relaxation);
  });
  return rows;
}

McInstance example1_instance() {
  McInstance inst;
  inst.gamma = 100.0;
  inst.k = 2;
  inst.lambda = 0.0;
  inst.obs.a.resize(7, 5);
  inst.obs.a << -2, 0, -1, 1, -1,
                 0, 4, -4, -5, -4,
                 0, -3, 1, 4, 3,
                 3, 5, -5, -5, -1,
                 7, 8, -10, -8, 1,
                 3, 1, -2, 0, 5,
                 7, 7, -13, -8, 0;
  const std::set<std::pair<int, int>> missing = {{0, 1}, {1, 0}, {2, 0}, {5, 3}, {6, 4}};
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 5; ++j)
      if (!missing.count({i, j})) inst.obs.omega.insert({i, j});
  return inst;
}

std::vector<CsvRow> example1_report(const SolverSettings& solver) {
  const McInstance inst = example1_instance();
  std::vector<CsvRow> rows;
  for (Relaxation r : {Relaxation::Mprt, Relaxation::FullPerm, Relaxation::Compact}) {
    rows.push_back(run_mc_cell(inst.obs, inst.gamma, inst.k, inst.lambda, r, solver, 0,
                               static_cast<double>(inst.obs.omega.size()) / 35.0));
  }
  return rows;
}

std::vector<double> default_gamma_grid() {
  std::vector<double> grid;
  for (int i = 0; i <= 12; ++i) grid.push_back(std::pow(10.0, -1.0 + 0.5 * i));
  return grid;
}

}  // namespace lrsdp
