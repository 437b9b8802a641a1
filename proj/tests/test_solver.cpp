#include <doctest.h>

#include <random>

#include "mpc/errors.hpp"
#include "mpc/solver.hpp"
#include "testkit.hpp"

using namespace mpc;

namespace {

MpcInstance dense(const std::vector<std::vector<double>>& P, const std::vector<std::vector<double>>& C,
                  std::size_t n) {
  return MpcInstance(SparseMatrix::from_dense(P, n), SparseMatrix::from_dense(C, n));
}

SaddleState state(std::vector<double> x, std::vector<double> y, std::vector<double> z) {
  return {std::move(x), 1.0, std::move(y), std::move(z)};
}

// sup over W of w̄ᵀg by enumerating the vertices of the box and both simplices.
double vertex_sup(const MpcInstance& inst, const OracleInput& g) {
  double best = -1e300;
  const std::size_t n = inst.n();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    double xs = g.u;
    for (std::size_t j = 0; j < n; ++j) xs += ((mask >> j) & 1u) ? g.x[j] : 0.0;
    for (std::size_t i = 0; i <= inst.p(); ++i) {
      for (std::size_t k = 0; k <= inst.c(); ++k) {
        const double v = xs + (i < inst.p() ? g.y[i] : 0.0) + (k < inst.c() ? g.z[k] : 0.0);
        best = std::max(best, v);
      }
    }
  }
  return best;
}

void check_sound(const MpcInstance& inst, const SolveReport& r) {
  if (r.status == SolveStatus::kFeasible) {
    CHECK(check_epsilon_feasible(inst, r.x, r.eps).feasible);
  }
  if (r.status == SolveStatus::kInfeasibleCertified) {
    REQUIRE(r.certificate);
    const auto& c = *r.certificate;
    const auto v = verify_certificate(c.instance, c.y, c.z);
    CHECK(v.valid);
    CHECK(v.margin > 0.0);
    CHECK(c.packing_rows.size() == c.y.size());
    CHECK(c.covering_rows.size() == c.z.size());
  }
}

}  // namespace

TEST_CASE("apply_J blocks") {
  const auto inst = dense({{1, 0}, {0.5, 1}}, {{1, 1}}, 2);
  const auto g = apply_J(inst, state({0, 0}, {0, 0}, {0}));
  CHECK(g.x == std::vector<double>{0, 0});
  CHECK(g.u == 0.0);
  CHECK(g.y == std::vector<double>{-1, -1});
  CHECK(g.z == std::vector<double>{1});

  const auto one = dense({{1}}, {{1}}, 1);
  const auto h = apply_J(one, state({1}, {0}, {0}));
  CHECK(h.x == std::vector<double>{0});
  CHECK(h.u == 0.0);
  CHECK(h.y == std::vector<double>{0});
  CHECK(h.z == std::vector<double>{0});
  CHECK_THROWS_AS(apply_J(one, state({1, 1}, {0}, {0})), ShapeError);
}

TEST_CASE("J is antisymmetric") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const auto inst = testkit::random_dense(1 + rng() % 6, 1 + rng() % 5, 1 + rng() % 5, 0.5, 2.0, rng);
    auto w = testkit::random_point(inst, rng);
    w.u = testkit::uniform(rng, -2.0, 2.0);
    const auto g = apply_J(inst, w);
    double scale = 1.0;
    for (double v : g.x) scale += std::abs(v);
    CHECK(std::abs(g.dot(w)) <= 1e-12 * scale);
  }
}

TEST_CASE("primal_dual_gap examples") {
  const auto one = dense({{1}}, {{1}}, 1);
  CHECK(primal_dual_gap(one, state({1}, {0}, {0})) == 0.0);
  CHECK(primal_dual_gap(one, state({0}, {0}, {0})) == 1.0);
  CHECK_THROWS_AS(primal_dual_gap(one, state({1.5}, {0}, {0})), DomainError);
  CHECK_THROWS_AS(primal_dual_gap(one, state({1}, {0.7}, {0.7, 0.7})), DomainError);
}

TEST_CASE("primal_dual_gap is the supremum over the vertices of W") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 200; ++trial) {
    const auto inst = testkit::random_dense(1 + rng() % 6, 1 + rng() % 4, 1 + rng() % 4, 0.5, 2.0, rng);
    const auto w = testkit::random_point(inst, rng);
    const double gap = primal_dual_gap(inst, w);
    CHECK(gap >= -1e-12);
    CHECK(gap == doctest::Approx(vertex_sup(inst, apply_J(inst, w))).epsilon(1e-12));
  }
}

TEST_CASE("solve: one-variable feasible instance") {
  const auto inst = dense({{1}}, {{1}}, 1);
  SolverConfig cfg;
  cfg.eps = 0.1;
  const auto r = solve(inst, cfg);
  REQUIRE(r.status == SolveStatus::kFeasible);
  CHECK(r.x[0] >= 0.9 - 1e-9);
  CHECK(r.x[0] <= 1.0 + 1e-9);
  CHECK(r.delta == 0.05);
  CHECK(r.budget == static_cast<std::size_t>(std::ceil(2.0 * r.rho / 0.1)));
  CHECK_FALSE(r.certificate);
  check_sound(inst, r);
}

TEST_CASE("solve: one-variable infeasible instance") {
  const auto inst = dense({{1}}, {{0.5}}, 1);
  SolverConfig cfg;
  cfg.eps = 0.1;
  const auto r = solve(inst, cfg);
  REQUIRE(r.status == SolveStatus::kInfeasibleCertified);
  CHECK(r.certificate->margin > 0.0);
  CHECK(r.x.empty());
  check_sound(inst, r);
}

TEST_CASE("solve: instances settled before the main loop") {
  SolverConfig cfg;
  const auto packing_only = MpcInstance(SparseMatrix::from_dense({{1, 1}}, 2), SparseMatrix(0, 2));
  const auto a = solve(packing_only, cfg);
  CHECK(a.status == SolveStatus::kFeasible);
  CHECK(a.x == std::vector<double>{0, 0});

  const auto empty_row = MpcInstance(SparseMatrix::from_dense({{1}}, 1), SparseMatrix::from_triplets(2, 1, {{0, 0, 1}}));
  const auto b = solve(empty_row, cfg);
  REQUIRE(b.status == SolveStatus::kInfeasibleCertified);
  CHECK(b.certificate->on_input);
  CHECK(b.certificate->z == std::vector<double>{0, 1});
  check_sound(empty_row, b);

  const auto unreachable = dense({{1, 0}}, {{0.5, 0}, {0, 0.5}}, 2);
  const auto c = solve(unreachable, cfg);
  REQUIRE(c.status == SolveStatus::kInfeasibleCertified);
  check_sound(unreachable, c);

  const auto easy = dense({{1}}, {{4}}, 1);
  const auto d = solve(easy, cfg);
  CHECK(d.status == SolveStatus::kFeasible);
  CHECK(d.iterations == 0);
}

TEST_CASE("solve: configuration errors") {
  const auto inst = dense({{1}}, {{1}}, 1);
  SolverConfig cfg;
  cfg.eps = 0.0;
  CHECK_THROWS_AS(solve(inst, cfg), DomainError);
  cfg.eps = 0.1;
  cfg.delta = 0.2;
  CHECK_THROWS_AS(solve(inst, cfg), DomainError);
  cfg.delta.reset();
  cfg.trace_every = 0;
  CHECK_THROWS_AS(solve(inst, cfg), DomainError);
}

TEST_CASE("gap trace respects the envelope and is ordered") {
  const auto inst = dense({{1}}, {{1}}, 1);
  SolverConfig cfg;
  cfg.eps = 0.1;
  cfg.trace_every = 1;
  cfg.early_exit = false;
  const auto r = solve(inst, cfg);
  const auto& trace = gap_trace(r);
  REQUIRE(trace.size() == r.budget);
  for (std::size_t k = 0; k < trace.size(); ++k) {
    if (k) CHECK(trace[k].t > trace[k - 1].t);
    CHECK(trace[k].gap <= trace[k].envelope + 1e-6);
    CHECK(trace[k].envelope == doctest::Approx(r.delta + r.rho / static_cast<double>(trace[k].t)));
  }
  CHECK(trace.back().gap <= cfg.eps);
}

TEST_CASE("max_iters caps the budget and can leave the status open") {
  const auto inst = dense({{1, 1}, {1, 0}}, {{0.6, 0.6}, {0, 1}}, 2);
  SolverConfig cfg;
  cfg.eps = 0.01;
  cfg.max_iters = 1;
  const auto r = solve(inst, cfg);
  CHECK(r.budget == 1);
  CHECK(r.iterations == 1);
  CHECK(r.status == SolveStatus::kUndetermined);
  CHECK(r.final_gap);
}

TEST_CASE("solve is sound and deterministic on random instances") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    const auto inst = testkit::random_dense(1 + rng() % 5, 1 + rng() % 4, 1 + rng() % 4, 0.6,
                                            testkit::uniform(rng, 0.3, 3.0), rng);
    SolverConfig cfg;
    cfg.eps = 0.1;
    const auto a = solve(inst, cfg);
    check_sound(inst, a);
    const auto b = solve(inst, cfg);
    CHECK(a.status == b.status);
    CHECK(a.iterations == b.iterations);
    CHECK(a.x == b.x);
    CHECK(a.work.nnz_ops == b.work.nnz_ops);
    REQUIRE(a.gap_trace.size() == b.gap_trace.size());
    for (std::size_t k = 0; k < a.gap_trace.size(); ++k) CHECK(a.gap_trace[k].gap == b.gap_trace[k].gap);
  }
}
