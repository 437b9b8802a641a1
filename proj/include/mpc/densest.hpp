#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "mpc/instance.hpp"
#include "mpc/solver.hpp"

namespace mpc {

/// Simple undirected graph: no self-loops, no parallel edges, u < v per edge.
class Graph {
 public:
  Graph() = default;
  /// Deduplicates edges; throws DomainError on self-loops or bad vertex ids.
  Graph(std::size_t vertex_count, std::vector<std::pair<std::size_t, std::size_t>> edges);

  std::size_t vertex_count() const noexcept { return vertex_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const noexcept { return edges_; }
  std::size_t max_degree() const;

 private:
  std::size_t vertex_count_ = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
};

/// Dual LP of the densest-subgraph relaxation at density D as an MPC
/// instance: columns (f_e(u), f_e(v)) per edge e = uv, one covering row
/// f_e(u) + f_e(v) ≥ 1 per edge, one packing row Σ_{e∋v} f_e(v)/D ≤ 1 per vertex.
/// Requires D ≥ 1 so packing entries stay at most 1.
MpcInstance build_dual_instance(const Graph& g, double density);

struct DsgProbe {
  double density;
  SolveStatus status;
  std::size_t iterations;
  std::size_t attempts;
  double wall_time_s;
  WorkStats work;
};

struct DsgResult {
  double density_low = 0.0;
  double density_high = 0.0;
  /// Dual variables f from the probe that set density_high, if any.
  std::optional<std::vector<double>> feasible_witness;
  std::vector<DsgProbe> probes;
};

/// (1+eps)-bracket of the maximum subgraph density by multiplicative bisection
/// over D, solving each dual instance to accuracy eps/4. `base` supplies the
/// remaining solver settings. Requires 0 < eps ≤ 0.5 and at least one edge.
DsgResult binary_search_density(const Graph& g, double eps, const SolverConfig& base = {});

/// max over nonempty S ⊆ V of |E(S)|/|S| by enumeration; |V| ≤ 20.
double exact_density_bruteforce(const Graph& g);

}  // namespace mpc
