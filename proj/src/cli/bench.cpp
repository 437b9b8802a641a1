#include "mpc/cli/bench.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

#include "mpc/cli/formats.hpp"
#include "mpc/errors.hpp"

namespace mpc::cli {

double uniform_open_closed(Rng& rng) {
  return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

namespace {

double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * uniform_open_closed(rng); }

// Column supplier for fixed-width rows: deals shuffled permutations of all
// columns, so every column lands in about the same number of rows.
class Deck {
 public:
  Deck(std::size_t n, Rng& rng) : n_(n), rng_(rng) {}

  std::size_t draw() {
    if (pos_ == cards_.size()) {
      cards_.resize(n_);
      std::iota(cards_.begin(), cards_.end(), std::size_t{0});
      for (std::size_t i = n_; i > 1; --i) std::swap(cards_[i - 1], cards_[rng_() % i]);
      pos_ = 0;
    }
    return cards_[pos_++];
  }
  void put_back(std::size_t col) { cards_.push_back(col); }

 private:
  std::size_t n_;
  Rng& rng_;
  std::vector<std::size_t> cards_;
  std::size_t pos_ = 0;
};

std::vector<std::size_t> pick_columns(std::size_t n, const RandomInstanceSpec& spec, Deck& deck, Rng& rng) {
  std::vector<std::size_t> cols;
  if (spec.row_nnz) {
    const std::size_t k = std::min(*spec.row_nnz, n);
    std::vector<std::size_t> held;
    while (cols.size() < k) {
      const std::size_t col = deck.draw();
      if (std::find(cols.begin(), cols.end(), col) == cols.end()) {
        cols.push_back(col);
      } else {
        held.push_back(col);
      }
    }
    for (std::size_t col : held) deck.put_back(col);
    std::sort(cols.begin(), cols.end());
  } else {
    for (std::size_t j = 0; j < n; ++j) {
      if (uniform_open_closed(rng) <= spec.density) cols.push_back(j);
    }
    if (cols.empty()) cols.push_back(static_cast<std::size_t>(rng() % n));
  }
  return cols;
}

void planted_rows(std::size_t rows, double lo, double hi, const std::vector<double>& xstar,
                  const RandomInstanceSpec& spec, Rng& rng, std::vector<Triplet>& out) {
  Deck deck(xstar.size(), rng);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto cols = pick_columns(xstar.size(), spec, deck, rng);
    std::vector<double> vals;
    double at_star = 0.0;
    for (std::size_t j : cols) {
      vals.push_back(uniform_open_closed(rng));
      at_star += vals.back() * xstar[j];
    }
    const double scale = uniform(rng, lo, hi) / at_star;
    for (std::size_t k = 0; k < cols.size(); ++k) out.push_back({i, cols[k], vals[k] * scale});
  }
}

}  // namespace

MpcInstance random_instance(const RandomInstanceSpec& spec, Rng& rng) {
  if (spec.n == 0) throw DomainError("random_instance: n must be positive");
  if (!(spec.density > 0.0 && spec.density <= 1.0)) throw DomainError("random_instance: density must lie in (0, 1]");
  if (spec.row_nnz && *spec.row_nnz == 0) throw DomainError("random_instance: row_nnz must be positive");
  if (spec.kind == PlantKind::kInfeasible && (spec.p == 0 || spec.c == 0)) {
    throw DomainError("random_instance: an infeasible plant needs a packing and a covering row");
  }
  std::vector<double> xstar(spec.n);
  for (double& v : xstar) v = uniform(rng, 0.25, 0.75);

  std::vector<Triplet> pt;
  std::vector<Triplet> ct;
  planted_rows(spec.p, 0.5, 0.9, xstar, spec, rng, pt);
  planted_rows(spec.c, 1.1, 1.5, xstar, spec, rng, ct);
  if (spec.kind == PlantKind::kInfeasible) {
    std::erase_if(pt, [](const Triplet& t) { return t.row == 0; });
    for (const auto& t : ct) {
      if (t.row == 0) pt.push_back({0, t.col, 2.0 * t.value});
    }
  }
  return MpcInstance(SparseMatrix::from_triplets(spec.p, spec.n, std::move(pt)),
                     SparseMatrix::from_triplets(spec.c, spec.n, std::move(ct)));
}

std::vector<BenchRow> run_bench(const BenchConfig& cfg) {
  std::vector<BenchRow> rows;
  for (std::size_t k = 0; k < cfg.sizes.size(); ++k) {
    Rng rng(cfg.seed * 0x9E3779B97F4A7C15ULL + k);
    RandomInstanceSpec spec;
    spec.n = spec.p = spec.c = cfg.sizes[k];
    spec.density = cfg.density;
    spec.row_nnz = cfg.width;
    const auto inst = random_instance(spec, rng);
    for (double eps : cfg.eps) {
      SolverConfig sc;
      sc.eps = eps;
      sc.early_exit = cfg.early_exit;
      const auto rep = solve(inst, sc);
      rows.push_back({rep.input_stats, eps, rep.status, rep.iterations, rep.budget, rep.work, rep.wall_time_s});
    }
  }
  return rows;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows, bool timing) {
  out << "n,p,c,nnz,width,eps,iterations,oracle_rounds,matvec_count,wall_time\n";
  for (const auto& r : rows) {
    out << r.stats.n << ',' << r.stats.p << ',' << r.stats.c << ',' << r.stats.nnz << ',' << r.stats.width
        << ',' << format_double(r.eps) << ',' << r.iterations << ',' << r.work.oracle_rounds << ','
        << r.work.nnz_ops << ',' << format_double(timing ? r.wall_time_s : 0.0) << '\n';
  }
}

}  // namespace mpc::cli
