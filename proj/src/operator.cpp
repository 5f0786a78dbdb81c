#include "lpmult/operator.hpp"

#include <cmath>

#include "lpmult/errors.hpp"

namespace lpmult {

MultiplicationOperator::MultiplicationOperator(SimpleFunction g_, PExponent p_, PExponent q_, Measure mu_,
                                               Measure nu_)
    : g(std::move(g_)), p(p_), q(q_), mu(std::move(mu_)), nu(std::move(nu_)) {
  if (!same_skeleton(g.skeleton, mu.skeleton) || !same_skeleton(g.skeleton, nu.skeleton))
    throw ModelError("multiplication operator: symbol and measures must share one skeleton");
}

bool same_measure(const Measure& a, const Measure& b) {
  return same_skeleton(a.skeleton, b.skeleton) && a.atom_mass == b.atom_mass &&
         a.cell_density == b.cell_density && a.tail == b.tail;
}

SimpleFunction apply(const MultiplicationOperator& op, const SimpleFunction& f) { return op.g * f; }

ZeroSet zero_set_measure(const MultiplicationOperator& op) {
  const auto& sk = *op.skeleton();
  std::vector<PieceRef> zeros;
  for (auto piece : pieces(sk))
    if (op.g.value(piece) == Complex(0.0)) zeros.push_back(piece);
  ZeroSet out;
  out.region = Region::of(sk, zeros);
  out.mu_measure = measure_of(op.mu, out.region);
  out.nu_measure = measure_of(op.nu, out.region);
  return out;
}

namespace {

struct Selection {
  SkeletonPtr skeleton;
  std::vector<std::size_t> atoms;
  std::vector<std::size_t> cells;
  bool tail = false;
};

Selection select(const SpaceSkeleton& sk, const Region& region) {
  if (!region.whole_pieces())
    throw ModelError("restrict: region has sub-cell fractions; use split_cell to make them whole cells");
  Selection s;
  SpaceSkeleton sub;
  for (const auto& id : region.atoms) {
    if (!sk.atom_index(id)) throw ModelError("restrict: unknown atom '" + id + "'");
  }
  for (const auto& id : region.cells) {
    if (!sk.cell_index(id)) throw ModelError("restrict: unknown cell '" + id + "'");
  }
  if (region.tail && !sk.tail_present) throw ModelError("restrict: skeleton has no tail");
  for (std::size_t i = 0; i < sk.atoms.size(); ++i)
    if (region.atoms.contains(sk.atoms[i])) {
      s.atoms.push_back(i);
      sub.atoms.push_back(sk.atoms[i]);
    }
  for (std::size_t i = 0; i < sk.cells.size(); ++i)
    if (region.cells.contains(sk.cells[i].id)) {
      s.cells.push_back(i);
      sub.cells.push_back(sk.cells[i]);
    }
  s.tail = sub.tail_present = region.tail;
  s.skeleton = std::make_shared<const SpaceSkeleton>(std::move(sub));
  return s;
}

Measure restrict_measure(const Measure& m, const Selection& s) {
  Measure out = Measure::zero(s.skeleton);
  for (std::size_t k = 0; k < s.atoms.size(); ++k) out.atom_mass[k] = m.atom_mass[s.atoms[k]];
  for (std::size_t k = 0; k < s.cells.size(); ++k) out.cell_density[k] = m.cell_density[s.cells[k]];
  if (s.tail) out.tail = m.tail;
  return out;
}

SimpleFunction restrict_function(const SimpleFunction& f, const Selection& s) {
  auto out = SimpleFunction::zero(s.skeleton);
  for (std::size_t k = 0; k < s.atoms.size(); ++k) out.atom_value[k] = f.atom_value[s.atoms[k]];
  for (std::size_t k = 0; k < s.cells.size(); ++k) out.cell_value[k] = f.cell_value[s.cells[k]];
  if (s.tail) out.tail_value = f.tail_value;
  return out;
}

}  // namespace

MultiplicationOperator restrict_to(const MultiplicationOperator& op, const Region& region) {
  const auto s = select(*op.skeleton(), region);
  return {restrict_function(op.g, s), op.p, op.q, restrict_measure(op.mu, s), restrict_measure(op.nu, s)};
}

Diagonal reduce_diagonal(const MultiplicationOperator& op) {
  if (op.mu.atom_mass != op.nu.atom_mass || op.mu.tail != op.nu.tail)
    throw ModelError("reduce_diagonal: source and target measures differ on the atomic part");
  const double exponent = op.q.reciprocal() - op.p.reciprocal();
  Diagonal d;
  for (std::size_t i = 0; i < op.mu.atom_mass.size(); ++i) {
    const double m = op.mu.atom_mass[i];
    if (!(m > 0.0)) continue;
    d.ids.push_back(op.skeleton()->atoms[i]);
    d.entries.push_back(op.g.atom_value[i] * std::pow(m, exponent));
  }
  if (op.mu.tail)
    d.tail = GeometricFamily{*op.g.tail_value * std::pow(op.mu.tail->first_mass, exponent),
                             std::pow(op.mu.tail->ratio, exponent)};
  return d;
}

MultiplicationOperator compose(const MultiplicationOperator& outer, const MultiplicationOperator& inner) {
  if (!(inner.q == outer.p))
    throw ModelError("compose: target exponent of the inner operator differs from the outer source exponent");
  if (!same_measure(inner.nu, outer.mu))
    throw ModelError("compose: target measure of the inner operator differs from the outer source measure");
  return {outer.g * inner.g, inner.p, outer.q, inner.mu, outer.nu};
}

}  // namespace lpmult
