#include "lrsdp/problem.hpp"

#include "lrsdp/bench.hpp"
#include "lrsdp/linalg.hpp"
#include "lrsdp/problem_library.hpp"

#include "test_util.hpp"

#include <doctest.h>

using namespace lrsdp;
using namespace lrsdp::testutil;

TEST_CASE("masked zeroes the hidden entries") {
  CounterRng rng(21);
  ObservedMatrix full;
  full.a = rand_matrix(rng, 3, 4);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 4; ++j) full.omega.insert({i, j});
  CHECK((masked(full) - full.a).norm() == 0.0);

  ObservedMatrix empty;
  empty.a = full.a;
  CHECK(masked(empty).norm() == 0.0);
}

TEST_CASE("masked on the shipped fixture") {
  const McInstance inst = example1_instance();
  const DenseMatrix p = masked(inst.obs);
  CHECK(p(0, 1) == 0.0);
  CHECK(p(1, 0) == 0.0);
  CHECK(p(2, 0) == 0.0);
  CHECK(p(5, 3) == 0.0);
  CHECK(p(6, 4) == 0.0);
  CHECK(p(0, 0) == -2.0);
  CHECK(p(6, 3) == -8.0);
  CHECK(inst.obs.omega.size() == 30);
}

TEST_CASE("masked is idempotent and linear over a shared observation set") {
  CounterRng rng(22);
  ObservedMatrix a, b;
  a.a = rand_matrix(rng, 4, 4);
  b.a = rand_matrix(rng, 4, 4);
  for (int t = 0; t < 8; ++t) {
    const int i = static_cast<int>(rng.next_below(4));
    const int j = static_cast<int>(rng.next_below(4));
    a.omega.insert({i, j});
  }
  b.omega = a.omega;

  ObservedMatrix again;
  again.a = masked(a);
  again.omega = a.omega;
  CHECK((masked(again) - masked(a)).norm() == 0.0);

  ObservedMatrix comb;
  comb.a = 2.0 * a.a + 3.0 * b.a;
  comb.omega = a.omega;
  CHECK((masked(comb) - (2.0 * masked(a) + 3.0 * masked(b))).norm() < 1e-12);
}

TEST_CASE("evaluate_objective") {
  LowRankQuadraticProblem p;
  p.n = 2;
  p.m = 2;
  p.h = SymMatrix(4);
  p.d = DenseMatrix::Zero(2, 2);
  p.lambda = 0.7;
  p.k = 2;
  p.constant = 3.0;

  // X = 0: only the rank term and constant remain
  CHECK(evaluate_objective(p, DenseMatrix::Zero(2, 2), 2) ==
        doctest::Approx(0.7 * 2 + 3.0));

  // H = I: Frobenius norm squared
  p.h = SymMatrix::identity(4);
  p.lambda = 0.0;
  p.constant = 0.0;
  CounterRng rng(23);
  const DenseMatrix x = rand_matrix(rng, 2, 2);
  CHECK(evaluate_objective(p, x, 1) == doctest::Approx(x.squaredNorm()).epsilon(1e-12));
}

TEST_CASE("completion encoding matches the direct loss on random X") {
  CounterRng rng(24);
  const ObservedMatrix obs = generate_instance(4, 3, 2, 0.1, 0.6, 77);
  const double gamma = 50.0;
  const LowRankQuadraticProblem p = encode_matrix_completion(obs, 0.0, 2, gamma, 0.5);
  for (int t = 0; t < 100; ++t) {
    const DenseMatrix x = rand_matrix(rng, 4, 3);
    double direct = x.squaredNorm() / (2.0 * gamma);
    for (const auto& [i, j] : obs.omega) {
      const double d = x(i, j) - obs.a(i, j);
      direct += 0.5 * d * d;
    }
    CHECK(evaluate_objective(p, x, 2) == doctest::Approx(direct).epsilon(1e-10));
  }
}

TEST_CASE("instance text round trip") {
  const McInstance inst = example1_instance();
  const std::string text = save_instance(inst);
  const McInstance back = load_instance(text);
  CHECK(back.obs.omega == inst.obs.omega);
  CHECK((back.obs.a - inst.obs.a).norm() == 0.0);
  CHECK(back.gamma == inst.gamma);
  CHECK(back.k == inst.k);
  CHECK(back.lambda == inst.lambda);

  // header carries "n m |Omega| lambda k gamma"
  std::istringstream head(text);
  int n, m;
  size_t card;
  double lambda, gamma;
  int k;
  head >> n >> m >> card >> lambda >> k >> gamma;
  CHECK(n == 7);
  CHECK(m == 5);
  CHECK(card == 30);
  CHECK(gamma == 100.0);
}

TEST_CASE("loader rejects bad input") {
  CHECK_THROWS_AS(load_instance("2 2 1 0 1"), std::invalid_argument);  // truncated
  CHECK_THROWS_AS(load_instance("2 2 1 0 1 0\n1 2 3 4\n5 5\n"), std::invalid_argument);
  CHECK_THROWS_AS(load_instance("2 2 2 0 1 0\n1 2 3 4\n1 1\n1 1\n"), std::invalid_argument);
}

TEST_CASE("problem validation") {
  LowRankQuadraticProblem p;
  p.n = 2;
  p.m = 2;
  p.h = SymMatrix(3);  // wrong dimension
  p.d = DenseMatrix::Zero(2, 2);
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.h = SymMatrix(4);
  p.k = 5;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.k = 1;
  CHECK_NOTHROW(p.validate());
}
