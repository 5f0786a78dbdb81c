#pragma once

#include "lpmult/lp_space.hpp"
#include "lpmult/measure_model.hpp"

namespace lpmult {

/// nu = rho * mu + nu_s with nu_s concentrated on omega_s and mu(omega_s) = 0.
/// rho is set to zero on omega_s and on mu-null pieces; pieces null for both
/// measures belong to omega_c.
struct LebesgueDecomposition {
  SimpleFunction rho;
  Measure nu_s;
  Region omega_s;
  Region omega_c;
  Region omega_plus;  // pieces of omega_c where rho > 0
};

/// Both measures must live on the same skeleton. When both carry tails the
/// geometric ratios must agree, otherwise the density would not be constant
/// on the tail family and ModelError is thrown.
LebesgueDecomposition lebesgue_decompose(const Measure& nu, const Measure& mu);

struct AtomicSplit {
  Measure atomic;
  Measure nonatomic;
};

AtomicSplit atomic_nonatomic_split(const Measure& mu);

}  // namespace lpmult
