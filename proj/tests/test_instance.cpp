#include <doctest.h>

#include <cmath>
#include <random>

#include "mpc/cli/bench.hpp"
#include "mpc/errors.hpp"
#include "mpc/instance.hpp"
#include "testkit.hpp"

using namespace mpc;

namespace {

MpcInstance dense(const std::vector<std::vector<double>>& P, const std::vector<std::vector<double>>& C,
                  std::size_t n) {
  return MpcInstance(SparseMatrix::from_dense(P, n), SparseMatrix::from_dense(C, n));
}

// Entries spread over several orders of magnitude so every normalize branch fires.
MpcInstance wide_random(std::mt19937_64& rng, std::size_t n, std::size_t p, std::size_t c) {
  auto inst = testkit::random_dense(n, p, c, 0.6, 1.0, rng);
  std::vector<Triplet> pt = inst.packing().triplets();
  std::vector<Triplet> ct = inst.covering().triplets();
  for (auto& t : pt) t.value *= std::pow(4.0, testkit::uniform(rng, -1.5, 1.5));
  for (auto& t : ct) t.value *= std::pow(4.0, testkit::uniform(rng, -1.0, 2.0));
  // Occasionally strip a column of its packing entries.
  if (testkit::uniform(rng) < 0.3) {
    const std::size_t col = rng() % n;
    std::erase_if(pt, [col](const Triplet& t) { return t.col == col; });
  }
  return MpcInstance(SparseMatrix::from_triplets(p, n, pt), SparseMatrix::from_triplets(c, n, ct));
}

}  // namespace

TEST_CASE("validate reports empty rows and free columns") {
  const auto empty_cov = MpcInstance(SparseMatrix::from_dense({{1, 0}}, 2),
                                     SparseMatrix::from_triplets(2, 2, {{0, 0, 1.0}}));
  const auto a = validate(empty_cov);
  CHECK(a.status == ValidationOutcome::Status::kInfeasible);
  CHECK(a.empty_covering_rows == std::vector<std::size_t>{1});
  CHECK(a.log.front().find("covering row 1") != std::string::npos);

  const auto empty_pack = MpcInstance(SparseMatrix::from_triplets(2, 2, {{1, 0, 1.0}}),
                                      SparseMatrix::from_dense({{1, 1}}, 2));
  const auto b = validate(empty_pack);
  CHECK(b.status == ValidationOutcome::Status::kOk);
  CHECK(b.dropped_packing_rows == std::vector<std::size_t>{0});
  CHECK(b.kept_packing_rows == std::vector<std::size_t>{1});
  CHECK(b.cleaned.p() == 1);
  CHECK(b.cleaned.packing().at(0, 0) == 1.0);
  CHECK(b.cleaned.covering().nnz() == 2);

  const auto free = dense({{1, 0, 0, 0}}, {{0, 1, 1, 0}}, 4);
  const auto c = validate(free);
  CHECK(c.free_columns == std::vector<std::size_t>{3});
  const auto norm = normalize(c.cleaned);
  std::vector<double> xbar(norm.map.copies.size(), 0.0);
  CHECK(lift_solution(norm, xbar)[3] == 1.0);
}

TEST_CASE("normalize: a column whose smallest covering entry beats the packing entry solves the instance") {
  const auto norm = normalize(dense({{1}}, {{4}}, 1));
  REQUIRE(norm.trivially_feasible);
  CHECK(*norm.trivially_feasible == std::vector<double>{1.0});
  CHECK(check_epsilon_feasible(dense({{1}}, {{4}}, 1), *norm.trivially_feasible, 0.0).feasible);
}

TEST_CASE("normalize: a large covering entry splits the column into doubling copies") {
  const auto inst = dense({{1, 0}, {0, 1}}, {{4, 0}, {0, 1}}, 2);
  const auto norm = normalize(inst);
  REQUIRE_FALSE(norm.trivially_feasible);
  REQUIRE(norm.map.copies.size() == 3);
  CHECK(norm.map.copies[0].original == 0);
  CHECK(norm.map.copies[0].scale == 1.0);
  CHECK(norm.map.copies[1].original == 0);
  CHECK(norm.map.copies[1].scale == 2.0);
  const auto& P = norm.instance.packing();
  const auto& C = norm.instance.covering();
  CHECK(P.at(0, 0) == 1.0);
  CHECK(P.at(0, 1) == 0.5);
  CHECK(C.at(0, 0) == 2.0);
  CHECK(C.at(0, 1) == 2.0);
  CHECK(P.at(1, 2) == 1.0);
  CHECK(C.at(1, 2) == 1.0);
  CHECK(norm.instance.p() == 2);
}

TEST_CASE("normalize: single-column scaling branch") {
  const auto a = normalize(dense({{2}}, {{1}}, 1));
  REQUIRE(a.map.copies.size() == 1);
  CHECK(a.map.copies[0].scale == 2.0);
  CHECK(a.instance.packing().at(0, 0) == 1.0);
  CHECK(a.instance.covering().at(0, 0) == 0.5);

  // Entries below 1 are already bounded by the box; nothing is rescaled.
  const auto b = normalize(dense({{0.5}}, {{0.25}}, 1));
  CHECK(b.map.copies[0].scale == 1.0);
  CHECK(b.instance.packing().at(0, 0) == 0.5);
  CHECK(b.instance.covering().at(0, 0) == 0.25);
}

TEST_CASE("normalize: packing-free columns are fixed and their coverage is removed") {
  const auto inst = dense({{1, 0}}, {{0.5, 0.25}}, 2);
  const auto norm = normalize(inst);
  REQUIRE(norm.map.fixed.size() == 1);
  CHECK(norm.map.fixed[0].column == 1);
  CHECK(norm.map.fixed[0].value == 1.0);
  CHECK(norm.map.fixed[0].reason == FixedColumn::Reason::kPureCovering);
  CHECK(norm.covering_scale[0] == doctest::Approx(4.0 / 3.0));
  CHECK(norm.instance.covering().at(0, 0) == doctest::Approx(2.0 / 3.0));

  const auto covered = normalize(dense({{1, 0}}, {{0.5, 2.0}}, 2));
  REQUIRE(covered.trivially_feasible);
  CHECK((*covered.trivially_feasible)[1] == 0.5);
  CHECK(check_epsilon_feasible(dense({{1, 0}}, {{0.5, 2.0}}, 2), *covered.trivially_feasible, 0.0).feasible);

  const auto stuck = normalize(dense({{1, 0}}, {{0.5, 0}, {0, 0.5}}, 2));
  CHECK(stuck.trivially_infeasible);
  CHECK(stuck.infeasible_row == std::optional<std::size_t>{1});
}

TEST_CASE("normalize rejects empty rows") {
  CHECK_THROWS_AS(normalize(MpcInstance(SparseMatrix(1, 1), SparseMatrix::from_dense({{1}}, 1))), DomainError);
}

TEST_CASE("normalized entries are bounded and trivial solutions satisfy the input") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const auto inst = wide_random(rng, 1 + rng() % 4, 1 + rng() % 3, 1 + rng() % 3);
    const auto norm = normalize(validate(inst).cleaned);
    if (norm.trivially_infeasible) continue;
    if (norm.trivially_feasible) {
      CHECK(check_epsilon_feasible(inst, *norm.trivially_feasible, 0.0).feasible);
      continue;
    }
    for (const auto& t : norm.instance.packing().triplets()) CHECK(t.value <= 1.0 + 1e-12);
    for (const auto& t : norm.instance.covering().triplets()) CHECK(t.value <= 2.0 + 1e-12);
    std::vector<bool> seen(inst.n(), false);
    for (const auto& c : norm.map.copies) seen[c.original] = true;
    for (const auto& f : norm.map.fixed) seen[f.column] = true;
    for (bool s : seen) CHECK(s);
  }
}

TEST_CASE("lift_solution sums copies and checks its input") {
  NormalizedInstance norm;
  norm.map.original_columns = 1;
  norm.map.copies = {{0, 1.0}, {0, 2.0}};
  CHECK(lift_solution(norm, std::vector<double>{0.5, 0.5}) == std::vector<double>{0.75});
  norm.map.copies = {{0, 2.0}};
  CHECK(lift_solution(norm, std::vector<double>{1.0}) == std::vector<double>{0.5});
  norm.map.copies = {{0, 0.5}};
  CHECK(lift_solution(norm, std::vector<double>{1.0}) == std::vector<double>{1.0});
  CHECK_THROWS_AS(lift_solution(norm, std::vector<double>{0.5, 0.5}), ShapeError);
  CHECK_THROWS_AS(lift_solution(norm, std::vector<double>{1.5}), DomainError);
}

TEST_CASE("lifting a feasible normalized point gives a feasible input point") {
  std::mt19937_64 rng(8);
  cli::Rng gen(8);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    cli::RandomInstanceSpec spec;
    spec.n = 1 + rng() % 3;
    spec.p = 1 + rng() % 3;
    spec.c = 1 + rng() % 3;
    spec.density = 0.7;
    const auto planted = cli::random_instance(spec, gen);
    // Column scaling by s ≥ 0.75 keeps the planted point x*/s inside the box.
    std::vector<double> s(spec.n);
    for (double& v : s) v = std::pow(2.0, testkit::uniform(rng, -0.4, 3.0));
    auto pt = planted.packing().triplets();
    auto ct = planted.covering().triplets();
    for (auto& t : pt) t.value *= s[t.col];
    for (auto& t : ct) t.value *= s[t.col];
    const MpcInstance inst(SparseMatrix::from_triplets(spec.p, spec.n, pt),
                           SparseMatrix::from_triplets(spec.c, spec.n, ct));
    const auto norm = normalize(inst);
    if (norm.trivially_feasible || norm.trivially_infeasible || norm.instance.n() > 4) continue;
    const auto g = testkit::grid_feasibility(norm.instance, 0.05, {33});
    if (g.verdict != testkit::Verdict::kFeasible) continue;
    CHECK(check_epsilon_feasible(norm.instance, *g.witness, 0.025).feasible);
    CHECK(check_epsilon_feasible(inst, lift_solution(norm, *g.witness), 0.025).feasible);
    ++checked;
  }
  CHECK(checked > 30);
}

TEST_CASE("check_epsilon_feasible examples") {
  const auto inst = dense({{1}}, {{1}}, 1);
  CHECK(check_epsilon_feasible(inst, std::vector<double>{1.0}, 0.0).feasible);
  const auto low = check_epsilon_feasible(inst, std::vector<double>{0.9}, 0.05);
  CHECK_FALSE(low.feasible);
  CHECK(low.min_covering == doctest::Approx(0.9));
  CHECK(check_epsilon_feasible(inst, std::vector<double>{0.96}, 0.05).feasible);
  CHECK_FALSE(check_epsilon_feasible(inst, std::vector<double>{1.01}, 0.5).feasible);
  CHECK_THROWS_AS(check_epsilon_feasible(inst, std::vector<double>{1, 1}, 0.0), ShapeError);
}

TEST_CASE("verify_certificate examples") {
  const auto bad = dense({{1}}, {{0.5}}, 1);
  const auto c = verify_certificate(bad, std::vector<double>{0.0}, std::vector<double>{1.0});
  CHECK(c.valid);
  CHECK(c.margin == doctest::Approx(0.5));
  const auto ok = dense({{1}}, {{1}}, 1);
  for (double t : {0.0, 0.3, 1.0}) {
    const auto r = verify_certificate(ok, std::vector<double>{t}, std::vector<double>{t});
    CHECK_FALSE(r.valid);
    CHECK(r.margin == doctest::Approx(0.0));
  }
  CHECK_THROWS_AS(verify_certificate(ok, std::vector<double>{-0.1}, std::vector<double>{0.0}), DomainError);
  CHECK_THROWS_AS(verify_certificate(ok, std::vector<double>{0.0}, std::vector<double>{1.5}), DomainError);
  CHECK_THROWS_AS(verify_certificate(ok, std::vector<double>{0.0, 0.0}, std::vector<double>{0.0}), ShapeError);
}

TEST_CASE("certificate margin equals the minimum over box vertices") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 10, p = 1 + rng() % 3, c = 1 + rng() % 3;
    const auto inst = testkit::random_dense(n, p, c, 0.5, 2.0, rng);
    auto w = testkit::random_point(inst, rng);
    double best = std::numeric_limits<double>::infinity();
    std::vector<double> x(n);
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      for (std::size_t j = 0; j < n; ++j) x[j] = (mask >> j) & 1u;
      const auto px = matvec(inst.packing(), x);
      const auto cx = matvec(inst.covering(), x);
      double v = 0.0;
      for (std::size_t i = 0; i < p; ++i) v += w.y[i] * (px[i] - 1.0);
      for (std::size_t i = 0; i < c; ++i) v += w.z[i] * (1.0 - cx[i]);
      best = std::min(best, v);
    }
    CHECK(verify_certificate(inst, w.y, w.z).margin == doctest::Approx(best).epsilon(1e-12));
  }
}
