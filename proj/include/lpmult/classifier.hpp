#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lpmult/decomposition.hpp"
#include "lpmult/hom_module.hpp"
#include "lpmult/operator.hpp"

namespace lpmult {

/// Evidence behind one verdict: the piece attaining or breaking it and a
/// recipe for the function that shows it.
struct Witness {
  std::string property;
  bool verdict = false;
  std::string piece;
  std::string recipe;
  std::optional<double> value;
};

struct Classification {
  bool bounded = false;
  double operator_norm = 0.0;  // +inf when unbounded
  bool injective = false;
  ZeroSet zero_set;
  bool topologically_injective = false;
  double lower_constant = 0.0;  // best c in ||M_g f|| >= c ||f||; 0 when not bounded below
  bool isometric = false;
  bool topologically_surjective = false;
  double surjectivity_constant = 0.0;  // best preimage bound; +inf when not topologically surjective
  bool coisometric = false;
  bool strictly_coisometric = false;
  bool isomorphism = false;
  bool isometric_isomorphism = false;
  LebesgueDecomposition forward;  // nu against mu
  LebesgueDecomposition reverse;  // mu against nu
  HomNormReport hom;
  std::vector<Witness> witnesses;

  const Witness* witness(std::string_view property) const;
};

Classification classify(const MultiplicationOperator& op);

/// Symbol chi_{Omega_c}/g with Omega_c from nu against mu; maps L_q(nu) back
/// to L_p(mu). Throws PreconditionError unless op is topologically injective.
MultiplicationOperator construct_left_inverse(const MultiplicationOperator& op);

/// Symbol chi_{Omega_c}/g with Omega_c from mu against nu. Throws
/// PreconditionError unless op is topologically surjective.
MultiplicationOperator construct_right_inverse(const MultiplicationOperator& op);

}  // namespace lpmult
