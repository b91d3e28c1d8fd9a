#include "lrsdp/solver.hpp"

#include "lrsdp/bench.hpp"
#include "lrsdp/linalg.hpp"
#include "lrsdp/problem_library.hpp"
#include "lrsdp/relaxations.hpp"

#include "test_util.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace lrsdp;
using namespace lrsdp::testutil;

namespace {

ConicProgram toy_sdp() {
  // min tr(X) s.t. X psd 2x2, X11 = 1; optimum 1 at X = e1 e1^T
  ConicProgram prog;
  prog.add_psd_block("x", 2);
  ConicProgram::Row row;
  prog.add_psd_term(row, "x", 0, 0, 1.0);
  prog.add_equality(std::move(row), 1.0);
  prog.add_objective_matrix("x", SymMatrix::identity(2));
  prog.finalize();
  return prog;
}

ConicProgram toy_lp() {
  // min x s.t. x >= 3
  ConicProgram prog;
  prog.add_free_block("x", 1);
  ConicProgram::Row row;
  prog.add_term(row, "x", 0, -1.0);
  prog.add_inequality(std::move(row), -3.0);
  prog.add_objective_term("x", 0, 1.0);
  prog.finalize();
  return prog;
}

std::vector<ConicProgram> regression_suite() {
  std::vector<ConicProgram> progs;
  progs.push_back(toy_sdp());
  progs.push_back(toy_lp());
  const ObservedMatrix obs = generate_instance(4, 4, 2, 0.1, 0.6, 9);
  {
    ConicProgram p = build_compact_lifted(encode_matrix_completion(obs, 0.0, 2, 20.0, 0.5));
    p.finalize();
    progs.push_back(std::move(p));
  }
  {
    ConicProgram p = build_mc_reduced(obs, 0.5, 2, 20.0, 0.5);
    p.finalize();
    progs.push_back(std::move(p));
  }
  {
    ConicProgram p = build_mprt(encode_matrix_completion(obs, 0.0, 2, 20.0, 0.5));
    p.finalize();
    progs.push_back(std::move(p));
  }
  return progs;
}

}  // namespace

TEST_CASE("toy SDP solves to its analytic optimum") {
  const ConicProgram prog = toy_sdp();
  const ConicSolution sol = solve(prog);
  CHECK(sol.status == SolveStatus::Optimal);
  CHECK(sol.primalObjective == doctest::Approx(1.0).epsilon(1e-5));
  const SymMatrix x = prog.block_matrix("x", sol.x);
  CHECK(x(0, 0) == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(std::abs(x(1, 1)) < 1e-4);
  CHECK(std::abs(x(0, 1)) < 1e-4);
}

TEST_CASE("tiny LP reaches tight tolerance") {
  SolverSettings settings;
  settings.epsPrimal = settings.epsDual = settings.epsGap = 1e-10;
  const ConicSolution sol = solve(toy_lp(), settings);
  CHECK(sol.status == SolveStatus::Optimal);
  CHECK(std::abs(sol.primalObjective - 3.0) < 1e-8);
}

TEST_CASE("residual certification on the regression suite") {
  for (const ConicProgram& prog : regression_suite()) {
    const ConicSolution sol = solve(prog);
    REQUIRE(sol.status == SolveStatus::Optimal);
    const Residuals r = compute_residuals(prog, sol.x, sol.y, sol.s);
    CHECK(r.primal <= 1e-6);
    CHECK(r.dual <= 1e-6);
    CHECK(r.gap <= 1e-6);
    CHECK(r.primal == sol.primalResidual);
    CHECK(r.dual == sol.dualResidual);
    CHECK(r.gap == sol.gapResidual);
    // weak duality within the certified gap
    CHECK(sol.dualObjective <=
          sol.primalObjective + 1e-6 * (1.0 + std::abs(sol.primalObjective) +
                                        std::abs(sol.dualObjective)));
  }
}

TEST_CASE("determinism: identical program and settings give identical runs") {
  for (const ConicProgram& prog : regression_suite()) {
    const ConicSolution a = solve(prog);
    const ConicSolution b = solve(prog);
    CHECK(a.iterations == b.iterations);
    CHECK(a.primalObjective == b.primalObjective);
    CHECK((a.x - b.x).norm() == 0.0);
    CHECK((a.y - b.y).norm() == 0.0);
  }
}

TEST_CASE("residual trend is non-increasing after smoothing") {
  // windowed means of the combined residual must not grow materially
  for (const ConicProgram& prog : regression_suite()) {
    std::vector<double> combined;
    SolverSettings settings;
    settings.onCheck = [&](long, double rp, double rd, double, double) {
      combined.push_back(std::max(rp, rd));
    };
    (void)solve(prog, settings);
    const size_t window = 4;  // 4 checks x 25 iterations = 100-iteration windows
    std::vector<double> means;
    for (size_t start = 0; start + window <= combined.size(); start += window) {
      double s = 0.0;
      for (size_t i = start; i < start + window; ++i) s += combined[i];
      means.push_back(s / window);
    }
    for (size_t i = 1; i < means.size(); ++i) {
      CHECK(means[i] <= means[i - 1] * 1.25 + 1e-12);
    }
    if (means.size() >= 2) CHECK(means.back() <= means.front() + 1e-12);
  }
}

TEST_CASE("decode reads named blocks back") {
  const ObservedMatrix obs = generate_instance(3, 3, 1, 0.05, 0.8, 4);
  ConicProgram prog = build_compact_lifted(encode_matrix_completion(obs, 0.0, 1, 10.0, 0.5));
  prog.finalize();
  const ConicSolution sol = solve(prog);
  REQUIRE(sol.status == SolveStatus::Optimal);
  const RelaxationSolution dec = decode_compact(prog, sol);
  CHECK(dec.x.rows() == 3);
  CHECK(dec.y.dim() == 3);
  REQUIRE(dec.wxx.has_value());
  CHECK(dec.wxx->dim() == 9);
  // projection-hull residuals
  CHECK(dec.y.trace() <= 1.0 + 1e-5);
  CHECK(min_eigenvalue(dec.y.full()) > -1e-6);
  CHECK(min_eigenvalue(DenseMatrix::Identity(3, 3) - dec.y.full()) > -1e-6);
  CHECK(dec.lowerBound == doctest::Approx(sol.primalObjective + prog.objective_offset()));
  // moment dominance within solver accuracy
  const Vector xv = vec_t(dec.x);
  CHECK(min_eigenvalue(dec.wxx->full() - xv * xv.transpose()) > -1e-5);
}

TEST_CASE("maxIterations status is reported") {
  const ObservedMatrix obs = generate_instance(4, 4, 2, 0.1, 0.6, 9);
  ConicProgram prog = build_compact_lifted(encode_matrix_completion(obs, 0.0, 2, 20.0, 0.5));
  prog.finalize();
  SolverSettings settings;
  settings.maxIterations = 3;
  settings.checkInterval = 1;
  const ConicSolution sol = solve(prog, settings);
  CHECK(sol.status == SolveStatus::MaxIterations);
  CHECK(sol.iterations == 3);
}
