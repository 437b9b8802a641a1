#include "mpc/densest.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "mpc/errors.hpp"

namespace mpc {

Graph::Graph(std::size_t vertex_count, std::vector<std::pair<std::size_t, std::size_t>> edges)
    : vertex_count_(vertex_count) {
  for (auto& [u, v] : edges) {
    if (u >= vertex_count || v >= vertex_count) throw DomainError("graph: vertex id out of range");
    if (u == v) throw DomainError("graph: self-loop at vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);
}

std::size_t Graph::max_degree() const {
  std::vector<std::size_t> deg(vertex_count_, 0);
  for (const auto& [u, v] : edges_) {
    ++deg[u];
    ++deg[v];
  }
  return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

namespace {

// Same construction without the D ≥ 1 guard; for D < 1 the packing entries
// exceed 1 and width reduction rescales the columns.
MpcInstance dual_instance(const Graph& g, double density) {
  const std::size_t m = g.edge_count();
  std::vector<Triplet> pt;
  std::vector<Triplet> ct;
  for (std::size_t k = 0; k < m; ++k) {
    const auto [u, v] = g.edges()[k];
    ct.push_back({k, 2 * k, 1.0});
    ct.push_back({k, 2 * k + 1, 1.0});
    pt.push_back({u, 2 * k, 1.0 / density});
    pt.push_back({v, 2 * k + 1, 1.0 / density});
  }
  return MpcInstance(SparseMatrix::from_triplets(g.vertex_count(), 2 * m, std::move(pt)),
                     SparseMatrix::from_triplets(m, 2 * m, std::move(ct)));
}

}  // namespace

MpcInstance build_dual_instance(const Graph& g, double density) {
  if (!(density >= 1.0)) throw DomainError("build_dual_instance: density must be at least 1");
  if (g.edge_count() == 0) throw DomainError("build_dual_instance: graph has no edges");
  return dual_instance(g, density);
}

DsgResult binary_search_density(const Graph& g, double eps, const SolverConfig& base) {
  if (!(eps > 0.0 && eps <= 0.5)) throw DomainError("binary_search_density: eps must lie in (0, 0.5]");
  if (g.edge_count() == 0) throw DomainError("binary_search_density: graph has no edges");

  const double n = static_cast<double>(g.vertex_count());
  const double m = static_cast<double>(g.edge_count());
  DsgResult res;
  res.density_low = std::max(m / n, 0.5);
  res.density_high = std::min((n - 1.0) / 2.0, static_cast<double>(g.max_degree()) / 2.0);

  const double solver_eps = eps / 4.0;
  // An eps'-approximate dual at D scales to an exact dual at D·slack.
  const double slack = (1.0 + solver_eps) / (1.0 - solver_eps);

  while (res.density_high > res.density_low * (1.0 + eps)) {
    // Balances the two outcomes: high ← D·slack versus low ← D.
    const double d = std::sqrt(res.density_low * res.density_high / slack);
    const auto inst = dual_instance(g, d);

    SolverConfig cfg = base;
    cfg.eps = solver_eps;
    cfg.delta.reset();
    DsgProbe probe{d, SolveStatus::kUndetermined, 0, 0, 0.0, {}};
    SolveReport rep;
    for (int attempt = 0; attempt < 3 && probe.status == SolveStatus::kUndetermined; ++attempt) {
      rep = solve(inst, cfg);
      probe.status = rep.status;
      probe.iterations += rep.iterations;
      probe.wall_time_s += rep.wall_time_s;
      probe.work += rep.work;
      ++probe.attempts;
      cfg.delta = rep.delta / 2.0;
      cfg.budget_factor *= 2.0;
    }
    res.probes.push_back(probe);

    if (probe.status == SolveStatus::kFeasible) {
      res.density_high = std::min(res.density_high, d * slack);
      res.feasible_witness = rep.x;
    } else if (probe.status == SolveStatus::kInfeasibleCertified) {
      res.density_low = std::max(res.density_low, d);
    } else {
      throw std::runtime_error("binary_search_density: no decision at D = " + std::to_string(d));
    }
  }
  return res;
}

double exact_density_bruteforce(const Graph& g) {
  const std::size_t n = g.vertex_count();
  if (n > 20) throw DomainError("exact_density_bruteforce: at most 20 vertices");
  std::vector<std::uint32_t> adj(n, 0);
  for (const auto& [u, v] : g.edges()) {
    adj[u] |= 1u << v;
    adj[v] |= 1u << u;
  }
  double best = 0.0;
  for (std::uint32_t s = 1; s < (1u << n); ++s) {
    int twice_edges = 0;
    for (std::size_t v = 0; v < n; ++v) {
      if (s >> v & 1u) twice_edges += std::popcount(adj[v] & s);
    }
    best = std::max(best, 0.5 * twice_edges / std::popcount(s));
  }
  return best;
}

}  // namespace mpc
