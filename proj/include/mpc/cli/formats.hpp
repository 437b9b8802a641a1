#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "mpc/densest.hpp"
#include "mpc/instance.hpp"

namespace mpc::cli {

/// Text instance format:
///
///   # comment
///   MPC <n> <p> <c> <nnzP> <nnzC>[ rhs]
///   P <row> <col> <value>
///   C <row> <col> <value>
///   RHS P|C <row> <b>        (only with the rhs flag; b > 0, default 1)
///
/// Indices are 0-based. Duplicate cells are summed.
MpcInstance parse_instance(std::istream& in);
MpcInstance load_instance(const std::filesystem::path& path);

/// Canonical form: sorted triplets, shortest round-trip floats, no rhs.
std::string format_instance(const MpcInstance& inst);
void save_instance(const std::filesystem::path& path, const MpcInstance& inst);

/// Edge list: one "<u> <v>" pair per line, '#' comments. Vertex count is
/// 1 + the largest id. Self-loops are dropped and reported in `warnings`.
Graph parse_edge_list(std::istream& in, std::vector<std::string>& warnings);
Graph load_edge_list(const std::filesystem::path& path, std::vector<std::string>& warnings);

/// Shortest decimal string that parses back to exactly `v`.
std::string format_double(double v);

}  // namespace mpc::cli
