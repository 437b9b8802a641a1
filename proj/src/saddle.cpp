#include "mpc/saddle.hpp"

#include <cmath>

namespace mpc {

SaddleState SaddleState::cold_start(const MpcInstance& inst) {
  return {std::vector<double>(inst.n(), 1.0), 1.0, std::vector<double>(inst.p(), 0.0),
          std::vector<double>(inst.c(), 0.0)};
}

SaddleState SaddleState::zeros(const MpcInstance& inst) {
  return {std::vector<double>(inst.n(), 0.0), 0.0, std::vector<double>(inst.p(), 0.0),
          std::vector<double>(inst.c(), 0.0)};
}

OracleInput OracleInput::zeros(const MpcInstance& inst) {
  return {std::vector<double>(inst.n(), 0.0), 0.0, std::vector<double>(inst.p(), 0.0),
          std::vector<double>(inst.c(), 0.0)};
}

double OracleInput::dot(const SaddleState& w) const {
  double s = u * w.u;
  for (std::size_t j = 0; j < x.size(); ++j) s += x[j] * w.x[j];
  for (std::size_t i = 0; i < y.size(); ++i) s += y[i] * w.y[i];
  for (std::size_t i = 0; i < z.size(); ++i) s += z[i] * w.z[i];
  return s;
}

bool shape_matches(const MpcInstance& inst, const SaddleState& w) {
  return w.x.size() == inst.n() && w.y.size() == inst.p() && w.z.size() == inst.c();
}

bool shape_matches(const MpcInstance& inst, const OracleInput& a) {
  return a.x.size() == inst.n() && a.y.size() == inst.p() && a.z.size() == inst.c();
}

bool in_domain(const MpcInstance& inst, const SaddleState& w, double tol) {
  if (!shape_matches(inst, w)) return false;
  if (!(std::abs(w.u - 1.0) <= tol)) return false;
  for (double v : w.x) {
    if (!(v >= -tol && v <= 1.0 + tol)) return false;
  }
  for (const auto* block : {&w.y, &w.z}) {
    double sum = 0.0;
    for (double v : *block) {
      if (!(v >= -tol)) return false;
      sum += v;
    }
    if (sum > 1.0 + tol) return false;
  }
  return true;
}

}  // namespace mpc
