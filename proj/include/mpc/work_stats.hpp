#pragma once

#include <cstdint>

namespace mpc {

/// Instrumented operation counts. `nnz_ops` counts stored entries visited by
/// sparse products, i.e. matvec-equivalent work.
struct WorkStats {
  std::uint64_t matvecs = 0;
  std::uint64_t nnz_ops = 0;
  std::uint64_t oracle_calls = 0;
  std::uint64_t oracle_rounds = 0;

  WorkStats& operator+=(const WorkStats& o) {
    matvecs += o.matvecs;
    nnz_ops += o.nnz_ops;
    oracle_calls += o.oracle_calls;
    oracle_rounds += o.oracle_rounds;
    return *this;
  }
};

}  // namespace mpc
