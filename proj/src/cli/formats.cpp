#include "mpc/cli/formats.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "mpc/errors.hpp"

namespace mpc::cli {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line.substr(0, line.find('#')));
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

std::size_t parse_index(const std::string& s, std::size_t line, const char* what) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(std::string("expected a nonnegative integer for ") + what + ", got '" + s + "'", line);
  }
  return v;
}

double parse_value(const std::string& s, std::size_t line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError("expected a number, got '" + s + "'", line);
  }
  if (!std::isfinite(v)) throw ParseError("value must be finite", line);
  return v;
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return in;
}

}  // namespace

MpcInstance parse_instance(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  bool rhs = false;
  std::size_t n = 0, p = 0, c = 0, nnz_p = 0, nnz_c = 0;
  std::vector<Triplet> pt;
  std::vector<Triplet> ct;
  std::vector<double> rhs_p;
  std::vector<double> rhs_c;
  std::vector<bool> seen_p;
  std::vector<bool> seen_c;

  while (std::getline(in, line)) {
    ++lineno;
    const auto tok = tokenize(line);
    if (tok.empty()) continue;

    if (!have_header) {
      if (tok[0] != "MPC" || (tok.size() != 6 && tok.size() != 7)) {
        throw ParseError("expected header 'MPC <n> <p> <c> <nnzP> <nnzC>[ rhs]'", lineno);
      }
      n = parse_index(tok[1], lineno, "n");
      p = parse_index(tok[2], lineno, "p");
      c = parse_index(tok[3], lineno, "c");
      nnz_p = parse_index(tok[4], lineno, "nnzP");
      nnz_c = parse_index(tok[5], lineno, "nnzC");
      if (tok.size() == 7) {
        if (tok[6] != "rhs") throw ParseError("unknown header flag '" + tok[6] + "'", lineno);
        rhs = true;
      }
      rhs_p.assign(p, 1.0);
      rhs_c.assign(c, 1.0);
      seen_p.assign(p, false);
      seen_c.assign(c, false);
      have_header = true;
      continue;
    }

    if (tok[0] == "P" || tok[0] == "C") {
      if (tok.size() != 4) throw ParseError("expected '" + tok[0] + " <row> <col> <value>'", lineno);
      const bool packing = tok[0] == "P";
      const std::size_t i = parse_index(tok[1], lineno, "row");
      const std::size_t j = parse_index(tok[2], lineno, "column");
      const double v = parse_value(tok[3], lineno);
      if (i >= (packing ? p : c)) throw ParseError("row index " + tok[1] + " out of range", lineno);
      if (j >= n) throw ParseError("column index " + tok[2] + " out of range", lineno);
      if (v < 0.0) throw ParseError("negative value " + tok[3], lineno);
      (packing ? pt : ct).push_back({i, j, v});
    } else if (tok[0] == "RHS") {
      if (!rhs) throw ParseError("RHS line without the rhs header flag", lineno);
      if (tok.size() != 4 || (tok[1] != "P" && tok[1] != "C")) {
        throw ParseError("expected 'RHS P|C <row> <b>'", lineno);
      }
      const bool packing = tok[1] == "P";
      const std::size_t i = parse_index(tok[2], lineno, "row");
      const double b = parse_value(tok[3], lineno);
      if (i >= (packing ? p : c)) throw ParseError("row index " + tok[2] + " out of range", lineno);
      if (!(b > 0.0)) throw ParseError("right-hand side must be positive", lineno);
      auto seen = packing ? seen_p.begin() : seen_c.begin();
      if (seen[i]) throw ParseError("duplicate RHS for row " + tok[2], lineno);
      seen[i] = true;
      (packing ? rhs_p : rhs_c)[i] = b;
    } else {
      throw ParseError("unknown record '" + tok[0] + "'", lineno);
    }
  }

  if (!have_header) throw ParseError("missing header", lineno);
  if (pt.size() != nnz_p) {
    throw ParseError("header declares " + std::to_string(nnz_p) + " packing entries, found " +
                         std::to_string(pt.size()),
                     lineno);
  }
  if (ct.size() != nnz_c) {
    throw ParseError("header declares " + std::to_string(nnz_c) + " covering entries, found " +
                         std::to_string(ct.size()),
                     lineno);
  }
  for (auto& t : pt) t.value /= rhs_p[t.row];
  for (auto& t : ct) t.value /= rhs_c[t.row];
  return MpcInstance(SparseMatrix::from_triplets(p, n, std::move(pt)),
                     SparseMatrix::from_triplets(c, n, std::move(ct)));
}

MpcInstance load_instance(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  return parse_instance(in);
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string format_instance(const MpcInstance& inst) {
  std::ostringstream out;
  const auto& P = inst.packing();
  const auto& C = inst.covering();
  out << "MPC " << inst.n() << ' ' << inst.p() << ' ' << inst.c() << ' ' << P.nnz() << ' ' << C.nnz()
      << '\n';
  for (const auto& [tag, m] : {std::pair{'P', &P}, std::pair{'C', &C}}) {
    for (std::size_t i = 0; i < m->nrows(); ++i) {
      const auto cols = m->row_cols(i);
      const auto vals = m->row_values(i);
      for (std::size_t k = 0; k < cols.size(); ++k) {
        out << tag << ' ' << i << ' ' << cols[k] << ' ' << format_double(vals[k]) << '\n';
      }
    }
  }
  return out.str();
}

void save_instance(const std::filesystem::path& path, const MpcInstance& inst) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << format_instance(inst);
}

Graph parse_edge_list(std::istream& in, std::vector<std::string>& warnings) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::size_t vertices = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto tok = tokenize(line);
    if (tok.empty()) continue;
    if (tok.size() != 2) throw ParseError("expected '<u> <v>'", lineno);
    const std::size_t u = parse_index(tok[0], lineno, "vertex");
    const std::size_t v = parse_index(tok[1], lineno, "vertex");
    vertices = std::max({vertices, u + 1, v + 1});
    if (u == v) {
      warnings.push_back("line " + std::to_string(lineno) + ": dropped self-loop at vertex " + tok[0]);
      continue;
    }
    edges.emplace_back(u, v);
  }
  return Graph(vertices, std::move(edges));
}

Graph load_edge_list(const std::filesystem::path& path, std::vector<std::string>& warnings) {
  auto in = open_or_throw(path);
  return parse_edge_list(in, warnings);
}

}  // namespace mpc::cli
