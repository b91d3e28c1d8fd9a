#include "lrsdp/conic.hpp"

#include "lrsdp/sdpa.hpp"
#include "lrsdp/solver.hpp"

#include "test_util.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace lrsdp;
using namespace lrsdp::testutil;

TEST_CASE("svec fixed values") {
  const Vector vi = svec(SymMatrix::identity(2));
  CHECK(vi(0) == 1.0);
  CHECK(vi(1) == 0.0);
  CHECK(vi(2) == 1.0);

  SymMatrix offdiag(2);
  offdiag.set(0, 1, 1.0);
  const Vector vo = svec(offdiag);
  CHECK(vo(0) == 0.0);
  CHECK(vo(1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(vo(2) == 0.0);
}

TEST_CASE("svec/smat inverse and inner-product preserving") {
  CounterRng rng(31);
  for (int t = 0; t < 1000; ++t) {
    const int d = 1 + static_cast<int>(rng.next_below(6));
    const SymMatrix m = rand_sym(rng, d);
    const SymMatrix n = rand_sym(rng, d);
    CHECK((smat(svec(m)).full() - m.full()).norm() < 1e-14 * (1.0 + m.full().norm()));
    const double direct = (m.full().array() * n.full().array()).sum();
    CHECK(svec(m).dot(svec(n)) == doctest::Approx(direct).epsilon(1e-12));
  }
  CHECK_THROWS_AS(smat(Vector::Zero(5)), std::invalid_argument);
}

TEST_CASE("block bookkeeping and errors") {
  ConicProgram prog;
  prog.add_free_block("x", 2);
  prog.add_psd_block("m", 3);
  CHECK_THROWS_AS(prog.add_psd_block("m", 2), std::invalid_argument);  // duplicate label
  CHECK_THROWS_AS(prog.block("nope"), std::invalid_argument);
  CHECK_THROWS_AS(prog.scalar_index("m", 0), std::invalid_argument);
  CHECK_THROWS_AS(prog.svec_index("x", 0, 0), std::invalid_argument);
  CHECK(prog.scalar_index("x", 1) == 1);
  CHECK(prog.svec_index("m", 0, 0) == 2);
  CHECK(prog.svec_index("m", 1, 0) == prog.svec_index("m", 0, 1));

  const auto c = prog.locate(prog.svec_index("m", 1, 2));
  CHECK(c.blockIndex == 1);
  CHECK(c.i == 1);
  CHECK(c.j == 2);
}

TEST_CASE("inequalities gain one slack coordinate each") {
  ConicProgram prog;
  prog.add_free_block("x", 1);
  ConicProgram::Row row;
  prog.add_term(row, "x", 0, 1.0);
  prog.add_inequality(std::move(row), 3.0);
  const int before = prog.num_vars();
  prog.finalize();
  CHECK(prog.num_vars() == before + 1);
  CHECK(prog.has_block("_slack"));
  CHECK(prog.block("_slack").kind == ConeKind::Nonneg);
}

TEST_CASE("slack conversion does not move LP optima") {
  // min c^T x, x >= 0, a^T x >= 1 has optimum min_i c_i/a_i
  CounterRng rng(32);
  for (int t = 0; t < 20; ++t) {
    const int dim = 3;
    Vector a(dim), c(dim);
    for (int i = 0; i < dim; ++i) {
      a(i) = 0.5 + rng.next_uniform();
      c(i) = 0.5 + rng.next_uniform();
    }
    double expected = (c.array() / a.array()).minCoeff();

    ConicProgram viaIneq;
    viaIneq.add_nonneg_block("x", dim);
    ConicProgram::Row row;
    for (int i = 0; i < dim; ++i) viaIneq.add_term(row, "x", i, -a(i));
    viaIneq.add_inequality(std::move(row), -1.0);
    for (int i = 0; i < dim; ++i) viaIneq.add_objective_term("x", i, c(i));
    viaIneq.finalize();

    ConicProgram viaSlack;
    viaSlack.add_nonneg_block("x", dim);
    viaSlack.add_nonneg_block("s", 1);
    ConicProgram::Row eq;
    for (int i = 0; i < dim; ++i) viaSlack.add_term(eq, "x", i, -a(i));
    viaSlack.add_term(eq, "s", 0, 1.0);
    viaSlack.add_equality(std::move(eq), -1.0);
    for (int i = 0; i < dim; ++i) viaSlack.add_objective_term("x", i, c(i));
    viaSlack.finalize();

    SolverSettings settings;
    settings.epsPrimal = settings.epsDual = settings.epsGap = 1e-9;
    const ConicSolution s1 = solve(viaIneq, settings);
    const ConicSolution s2 = solve(viaSlack, settings);
    CHECK(s1.status == SolveStatus::Optimal);
    CHECK(s1.primalObjective == doctest::Approx(s2.primalObjective).epsilon(1e-8));
    CHECK(s1.primalObjective == doctest::Approx(expected).epsilon(1e-6));
  }
}

TEST_CASE("second-order epigraph of a squared norm") {
  // t >= ||v||^2 with v pinned to (3,4): minimal t is 25
  ConicProgram prog;
  prog.add_free_block("t", 1);
  prog.add_soc_block("soc", 4);
  ConicProgram::Row r0;
  prog.add_term(r0, "soc", 0, 1.0);
  prog.add_term(r0, "t", 0, -1.0);
  prog.add_equality(std::move(r0), 1.0);
  ConicProgram::Row r1;
  prog.add_term(r1, "soc", 1, 1.0);
  prog.add_term(r1, "t", 0, -1.0);
  prog.add_equality(std::move(r1), -1.0);
  ConicProgram::Row r2;
  prog.add_term(r2, "soc", 2, 1.0);
  prog.add_equality(std::move(r2), 2.0 * 3.0);
  ConicProgram::Row r3;
  prog.add_term(r3, "soc", 3, 1.0);
  prog.add_equality(std::move(r3), 2.0 * 4.0);
  prog.add_objective_term("t", 0, 1.0);
  prog.finalize();

  SolverSettings settings;
  settings.epsPrimal = settings.epsDual = settings.epsGap = 1e-9;
  const ConicSolution sol = solve(prog, settings);
  CHECK(sol.status == SolveStatus::Optimal);
  CHECK(sol.primalObjective == doctest::Approx(25.0).epsilon(1e-6));

  // the lowered program solves to the same value
  ConicProgram lowered = lower_socs(prog);
  lowered.finalize();
  const ConicSolution sol2 = solve(lowered, settings);
  CHECK(sol2.status == SolveStatus::Optimal);
  CHECK(sol2.primalObjective == doctest::Approx(25.0).epsilon(1e-6));
}

TEST_CASE("sdpa export of the toy SDP") {
  // min tr(X) s.t. X11 = 1, X psd 2x2
  ConicProgram prog;
  prog.add_psd_block("x", 2);
  ConicProgram::Row row;
  prog.add_psd_term(row, "x", 0, 0, 1.0);
  prog.add_equality(std::move(row), 1.0);
  prog.add_objective_matrix("x", SymMatrix::identity(2));
  prog.finalize();

  const std::string text = export_sdpa(prog);
  std::istringstream in(text);
  int mdim, nblock, bsize;
  in >> mdim >> nblock >> bsize;
  CHECK(mdim == 1);
  CHECK(nblock == 1);
  CHECK(bsize == 2);
  double rhs;
  in >> rhs;
  CHECK(rhs == 1.0);
  // remaining lines: F0 diagonal (negated objective) and F1
  int k, b, i, j;
  double v;
  REQUIRE((in >> k >> b >> i >> j >> v));
  CHECK(k == 0);
  CHECK(v == -1.0);
}

TEST_CASE("sdpa round trip reproduces the standard form exactly") {
  CounterRng rng(33);
  ConicProgram prog;
  prog.add_psd_block("m", 3);
  prog.add_nonneg_block("w", 2);
  for (int r = 0; r < 4; ++r) {
    ConicProgram::Row row;
    for (int j = 0; j < 3; ++j)
      for (int i = 0; i <= j; ++i)
        prog.add_psd_term(row, "m", i, j, std::round(4.0 * rng.next_normal()));
    prog.add_term(row, "w", 0, std::round(3.0 * rng.next_normal()));
    prog.add_equality(std::move(row), rng.next_normal());
  }
  prog.add_objective_matrix("m", rand_sym(rng, 3));
  prog.add_objective_term("w", 1, 2.5);
  prog.finalize();

  ConicProgram back = import_sdpa(export_sdpa(prog));
  back.finalize();
  REQUIRE(back.num_vars() == prog.num_vars());
  REQUIRE(back.num_rows() == prog.num_rows());
  CHECK((DenseMatrix(back.matrix()) - DenseMatrix(prog.matrix())).norm() == 0.0);
  CHECK((back.rhs_vector() - prog.rhs_vector()).norm() == 0.0);
  CHECK((back.cost_vector() - prog.cost_vector()).norm() == 0.0);
}

TEST_CASE("sdpa text is stable after one canonicalization pass") {
  // free variables are split at export; the canonical form re-exports byte-identically
  CounterRng rng(34);
  ConicProgram prog;
  prog.add_free_block("x", 2);
  prog.add_psd_block("m", 2);
  for (int r = 0; r < 2; ++r) {
    ConicProgram::Row row;
    prog.add_term(row, "x", 0, rng.next_normal());
    prog.add_term(row, "x", 1, rng.next_normal());
    prog.add_psd_term(row, "m", 0, 1, rng.next_normal());
    prog.add_psd_term(row, "m", r, r, rng.next_normal());
    prog.add_equality(std::move(row), rng.next_normal());
  }
  {
    ConicProgram::Row row;
    prog.add_psd_term(row, "m", 1, 1, 1.0);
    prog.add_inequality(std::move(row), 2.0);
  }
  prog.add_objective_term("x", 0, 1.0);
  prog.add_objective_psd_entry("m", 0, 1, -0.75);
  prog.finalize();

  const std::string t1 = export_sdpa(prog);
  ConicProgram canon = import_sdpa(t1);
  canon.finalize();
  const std::string t2 = export_sdpa(canon);
  ConicProgram canon2 = import_sdpa(t2);
  canon2.finalize();
  const std::string t3 = export_sdpa(canon2);
  CHECK(t2 == t3);
}

TEST_CASE("export rejects un-lowered second-order blocks") {
  ConicProgram prog;
  prog.add_soc_block("soc", 3);
  ConicProgram::Row row;
  prog.add_term(row, "soc", 0, 1.0);
  prog.add_equality(std::move(row), 1.0);
  prog.finalize();
  CHECK_THROWS_AS(export_sdpa(prog), std::invalid_argument);
}

TEST_CASE("zero equality rows are rejected") {
  ConicProgram prog;
  prog.add_free_block("x", 1);
  prog.add_equality({}, 0.0);
  CHECK_THROWS_AS(prog.finalize(), std::invalid_argument);
}
