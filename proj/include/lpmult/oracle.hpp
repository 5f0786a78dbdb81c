#pragma once

// Independent ground truth: closed-form constants of diagonal maps between
// finite sequence spaces, and randomized extremal sampling of the ratio
// ||M_g f||_q / ||f||_p.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "lpmult/lp_space.hpp"
#include "lpmult/operator.hpp"

namespace lpmult {

/// Norm of x -> d x from ell_p^n to ell_q^n. Zero for empty d.
double diagonal_operator_norm(const std::vector<Complex>& d, PExponent p, PExponent q);

/// Best c with ||d x||_q >= c ||x||_p on ell_p^n. +inf for empty d.
double diagonal_lower_bound(const std::vector<Complex>& d, PExponent p, PExponent q);

struct RatioEstimate {
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  std::string argmin;  // recipe of the minimizing function
  std::string argmax;
  std::size_t evaluated = 0;  // functions tried, recipes included
  std::size_t samples = 0;    // random functions requested
  std::uint64_t seed = 0;

  friend bool operator==(const RatioEstimate&, const RatioEstimate&) = default;
};

/// Observed extremes of ||M_g f||_q / ||f||_p over piece indicators, Hoelder
/// extremizer recipes, indicator sequences of sub-cells of mass 2^-n (n <= 30)
/// and `samples` random functions. Deterministic in `seed` regardless of the
/// number of worker threads. A source space without positive pieces yields
/// min = max = 0 with nothing evaluated.
RatioEstimate sample_ratio_extremes(const MultiplicationOperator& op, std::size_t samples, std::uint64_t seed);

struct IndicatorProbe {
  int n = 0;
  double t = 0.0;  // measure of the probing set
  double ratio = 0.0;
};

/// Probing sets E inside a positive-measure cell, carved with split_cell, of
/// measure t_n = 2^-n min(1, mass of the cell), n = 0..max_n.
/// forward: ||M_g chi_E||_q / ||chi_E||_p with mu(E) = t_n.
std::vector<IndicatorProbe> indicator_sequence(const MultiplicationOperator& op, std::size_t cell, int max_n = 30);
/// preimage: ||chi_E / g||_p / ||chi_E||_q with nu(E) = t_n, the norm of the
/// smallest preimage of a target indicator.
std::vector<IndicatorProbe> preimage_sequence(const MultiplicationOperator& op, std::size_t cell, int max_n = 30);

/// A random complex simple function on `skeleton` (standard Gaussian parts).
SimpleFunction random_function(const SkeletonPtr& skeleton, std::mt19937_64& rng);

using MassRule = std::function<double(std::size_t index, std::size_t n)>;
using SymbolRule = std::function<Complex(std::size_t index, std::size_t n)>;

/// Lower constants of the diagonal operators on n uniform atoms built from the
/// rules, for each n in n_list. Throws ModelError when p == q.
std::vector<double> pitt_degradation(const std::vector<std::size_t>& n_list, PExponent p, PExponent q,
                                     const MassRule& mass_rule, const SymbolRule& g_rule);

}  // namespace lpmult
