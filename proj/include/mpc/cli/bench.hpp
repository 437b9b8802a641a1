#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <vector>

#include "mpc/instance.hpp"
#include "mpc/solver.hpp"

namespace mpc::cli {

using Rng = std::mt19937_64;

/// Uniform on (0, 1], bit-for-bit reproducible across standard libraries.
double uniform_open_closed(Rng& rng);

enum class PlantKind {
  kFeasible,    // every row passes at a hidden interior point with slack
  kInfeasible,  // planted feasible, then packing row 0 := 2 × covering row 0
};

struct RandomInstanceSpec {
  std::size_t n = 4;
  std::size_t p = 4;
  std::size_t c = 4;
  double density = 0.5;          // per-entry nonzero probability
  /// Exact nonzeros per row, overriding density. Columns are dealt from
  /// shuffled decks, so with p·row_nnz ≥ n every column has a packing entry.
  std::optional<std::size_t> row_nnz;
  PlantKind kind = PlantKind::kFeasible;
};

/// Entries uniform in (0,1], then each row rescaled so that at a hidden
/// x* ∈ [0.25, 0.75]^n packing rows evaluate to [0.5, 0.9] and covering rows
/// to [1.1, 1.5]. Every row has at least one nonzero.
MpcInstance random_instance(const RandomInstanceSpec& spec, Rng& rng);

struct BenchConfig {
  std::vector<std::size_t> sizes;  // n; p = c = n
  double density = 0.1;
  std::optional<std::size_t> width;
  std::vector<double> eps;
  std::uint64_t seed = 1;
  bool early_exit = true;
};

struct BenchRow {
  InstanceStats stats;
  double eps = 0.0;
  SolveStatus status = SolveStatus::kUndetermined;
  std::size_t iterations = 0;
  std::size_t budget = 0;
  WorkStats work;
  double wall_time_s = 0.0;
};

/// One planted-feasible instance per size (seeded from `seed` and the size
/// index), solved once per eps, in input order.
std::vector<BenchRow> run_bench(const BenchConfig& cfg);

/// Columns n,p,c,nnz,width,eps,iterations,oracle_rounds,matvec_count,wall_time.
/// matvec_count is the number of nonzero multiply-adds. With timing off,
/// wall_time is written as 0.
void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows, bool timing);

}  // namespace mpc::cli
