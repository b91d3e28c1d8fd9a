#pragma once

#include "lrsdp/problem.hpp"
#include "lrsdp/solver.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace lrsdp {

enum class Relaxation {
  Mprt,
  Full,
  FullPerm,
  Compact,
  Reduced,
  Grouped,
  BpFull,
  BpReduced,
  RrrLifted,
  RrrCompact,
};

const char* to_string(Relaxation r);
Relaxation relaxation_from_string(const std::string& name);

struct ExperimentConfig {
  int n = 8;
  int m = 8;
  int r = 2;          // planted rank
  double eps = 0.1;   // noise level
  double p = 0.5;     // observation fraction
  std::vector<double> gammas;
  int k = 2;
  double lambda = 0.0;
  std::vector<Relaxation> relaxations;
  std::vector<uint64_t> seeds;
  SolverSettings solver;
  std::string outPath;  // empty = stdout

  void validate() const;
};

/// Planted low-rank data: A = U V + eps * Z with standard-normal factors from
/// the counter RNG, and Omega a seeded shuffle prefix of all index pairs.
ObservedMatrix generate_instance(int n, int m, int r, double eps, double p, uint64_t seed);

struct CsvRow {
  uint64_t seed = 0;
  int n = 0, m = 0;
  double p = 0.0;
  double gamma = 0.0;
  std::string relaxation;
  double lowerBound = 0.0;
  double upperBound = 0.0;
  double gap = 0.0;
  std::string status;
  long iterations = 0;
  double buildTimeSeconds = 0.0;
  double solveTimeSeconds = 0.0;
};

extern const char* kCsvHeader;
std::string to_csv(const CsvRow& row);
void write_csv(const std::vector<CsvRow>& rows, const std::string& outPath);

/// Solve one relaxation of a completion instance (lossScale fixed at 1/2 to
/// match the benchmark objective) and pair it with the alternating
/// minimization bound.
CsvRow run_mc_cell(const ObservedMatrix& obs, double gamma, int k, double lambda,
                   Relaxation relaxation, const SolverSettings& solver, uint64_t seed, double p);

/// Gamma sweep at fixed (n, m, p): one row per (seed, gamma, relaxation).
std::vector<CsvRow> run_gamma_sweep(const ExperimentConfig& cfg);

/// Scaling study at p and gamma = 1e4/n^2; lower/upper bounds are reported
/// divided by n^2. Relaxation must be Compact or Reduced.
std::vector<CsvRow> run_scaling(const ExperimentConfig& cfg);

/// The shipped 7x5 fixture; also written by `save_instance`.
McInstance example1_instance();

/// Lower bounds of the perspective, symmetry-strengthened full, and compact
/// relaxations on the fixture.
std::vector<CsvRow> example1_report(const SolverSettings& solver = {});

// default sweep grid: 13 log-spaced points in [1e-1, 1e5]
std::vector<double> default_gamma_grid();

}  // namespace lrsdp
