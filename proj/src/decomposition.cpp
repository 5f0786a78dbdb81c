#include "lpmult/decomposition.hpp"

#include <cmath>

#include "lpmult/errors.hpp"

namespace lpmult {

LebesgueDecomposition lebesgue_decompose(const Measure& nu, const Measure& mu) {
  if (!same_skeleton(nu.skeleton, mu.skeleton))
    throw ModelError("lebesgue_decompose: measures live on different skeletons; refine them first");
  const auto& sk = *mu.skeleton;

  LebesgueDecomposition out{SimpleFunction::zero(mu.skeleton), Measure::zero(mu.skeleton), {}, {}, {}};
  std::vector<PieceRef> singular, continuous, positive;

  auto classify_piece = [&](PieceRef piece, double mu_value, double nu_value) {
    if (mu_value > 0.0) {
      const double r = nu_value / mu_value;
      out.rho.set(piece, r);
      continuous.push_back(piece);
      if (r > 0.0) positive.push_back(piece);
    } else if (nu_value > 0.0) {
      singular.push_back(piece);
    } else {
      continuous.push_back(piece);
    }
  };

  for (std::size_t i = 0; i < sk.atoms.size(); ++i) {
    const PieceRef piece{PieceKind::atom, i};
    classify_piece(piece, mu.atom_mass[i], nu.atom_mass[i]);
    if (!(mu.atom_mass[i] > 0.0)) out.nu_s.atom_mass[i] = nu.atom_mass[i];
  }
  for (std::size_t i = 0; i < sk.cells.size(); ++i) {
    const PieceRef piece{PieceKind::cell, i};
    classify_piece(piece, mu.cell_density[i], nu.cell_density[i]);
    if (!(mu.cell_density[i] > 0.0)) out.nu_s.cell_density[i] = nu.cell_density[i];
  }
  if (sk.tail_present) {
    const PieceRef piece{PieceKind::tail, 0};
    if (mu.tail && nu.tail) {
      const double r_mu = mu.tail->ratio, r_nu = nu.tail->ratio;
      if (std::abs(r_mu - r_nu) > 1e-12 * r_mu)
        throw ModelError(
            "lebesgue_decompose: tail ratios differ, so the density is not constant on the tail; "
            "refine the model by promoting tail atoms to explicit atom slots");
      classify_piece(piece, mu.tail->first_mass, nu.tail->first_mass);
    } else if (mu.tail) {
      classify_piece(piece, mu.tail->first_mass, 0.0);
    } else if (nu.tail) {
      classify_piece(piece, 0.0, nu.tail->first_mass);
      out.nu_s.tail = nu.tail;
    } else {
      classify_piece(piece, 0.0, 0.0);
    }
  }

  out.omega_s = Region::of(sk, singular);
  out.omega_c = Region::of(sk, continuous);
  out.omega_plus = Region::of(sk, positive);
  return out;
}

AtomicSplit atomic_nonatomic_split(const Measure& mu) {
  AtomicSplit out{mu, mu};
  for (auto& d : out.atomic.cell_density) d = 0.0;
  for (auto& m : out.nonatomic.atom_mass) m = 0.0;
  out.nonatomic.tail.reset();
  return out;
}

}  // namespace lpmult
