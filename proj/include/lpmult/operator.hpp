#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lpmult/lp_space.hpp"
#include "lpmult/measure_model.hpp"

namespace lpmult {

/// M_g : L_p(mu) -> L_q(nu), f -> g f. Boundedness is not checked here; it
/// is a verdict of the classifier.
struct MultiplicationOperator {
  SimpleFunction g;
  PExponent p;
  PExponent q;
  Measure mu;
  Measure nu;

  /// Throws ModelError unless all four constituents share one skeleton.
  MultiplicationOperator(SimpleFunction g, PExponent p, PExponent q, Measure mu, Measure nu);

  const SkeletonPtr& skeleton() const { return g.skeleton; }
};

bool same_measure(const Measure& a, const Measure& b);

SimpleFunction apply(const MultiplicationOperator& op, const SimpleFunction& f);

struct ZeroSet {
  double mu_measure = 0.0;
  double nu_measure = 0.0;
  Region region;  // pieces where g is exactly zero
};

ZeroSet zero_set_measure(const MultiplicationOperator& op);

/// M_g^E between the restricted spaces. E must consist of whole pieces.
MultiplicationOperator restrict_to(const MultiplicationOperator& op, const Region& region);

/// Diagonal of the operator in ell_p / ell_q coordinates of the atoms.
struct Diagonal {
  std::vector<std::string> ids;
  std::vector<Complex> entries;
  std::optional<GeometricFamily> tail;  // entries base * ratio^k on tail atoms
};

/// Requires mu and nu to agree on atoms and tail; cells are ignored.
Diagonal reduce_diagonal(const MultiplicationOperator& op);

/// outer o inner; the target space of inner must be the source of outer.
MultiplicationOperator compose(const MultiplicationOperator& outer, const MultiplicationOperator& inner);

}  // namespace lpmult
