#include "weights.hpp"

#include <algorithm>
#include <cmath>

namespace lpmult::detail {

std::vector<Weight> source_weights(const MultiplicationOperator& op, const LebesgueDecomposition& fwd) {
  std::vector<Weight> out;
  for (auto piece : op.mu.support()) {
    const double rho = fwd.rho.value(piece).real();
    const double g = std::abs(op.g.value(piece));
    Weight w{piece, op.mu.mass(piece), 0.0, g == 0.0, !(rho > 0.0)};
    if (!w.other_null) w.h = g * std::pow(rho, op.q.reciprocal());
    out.push_back(w);
  }
  return out;
}

std::vector<Weight> target_weights(const MultiplicationOperator& op, const LebesgueDecomposition& rev) {
  std::vector<Weight> out;
  for (auto piece : op.nu.support()) {
    const double rho = rev.rho.value(piece).real();
    const double g = std::abs(op.g.value(piece));
    Weight w{piece, op.nu.mass(piece), 0.0, g == 0.0, !(rho > 0.0)};
    if (!w.other_null) w.h = g * std::pow(rho, -op.p.reciprocal());
    out.push_back(w);
  }
  return out;
}

double atom_entry(const Weight& w, PExponent p, PExponent q) {
  return w.h * std::pow(w.mass, q.reciprocal() - p.reciprocal());
}

bool close(double a, double b) {
  return std::abs(a - b) <= kVerdictTolerance * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace lpmult::detail
