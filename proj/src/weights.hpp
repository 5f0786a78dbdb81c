#pragma once

// Per-piece weights shared by the norm, classification and sampling code.

#include <vector>

#include "lpmult/decomposition.hpp"
#include "lpmult/operator.hpp"

namespace lpmult::detail {

struct Weight {
  PieceRef piece;
  double mass = 0.0;  // total mass of the piece under the reference measure
  double h = 0.0;
  bool g_zero = false;
  bool other_null = false;  // the other measure vanishes on the piece
};

/// h = |g| rho_{nu,mu}^{1/q} on every mu-positive piece.
std::vector<Weight> source_weights(const MultiplicationOperator& op, const LebesgueDecomposition& fwd);

/// h' = |g| rho_{mu,nu}^{-1/p} on every nu-positive piece; 0 where mu vanishes.
std::vector<Weight> target_weights(const MultiplicationOperator& op, const LebesgueDecomposition& rev);

/// Diagonal entry h * mass^{1/q - 1/p} of an atom.
double atom_entry(const Weight& w, PExponent p, PExponent q);

/// Relative comparison used for the exact-equality verdicts.
bool close(double a, double b);

inline constexpr double kVerdictTolerance = 1e-12;

}  // namespace lpmult::detail
