#include "lpmult/lp_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "lpmult/errors.hpp"

namespace lpmult {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_same(const SkeletonPtr& a, const SkeletonPtr& b, const char* what) {
  if (!same_skeleton(a, b)) throw ModelError(std::string(what) + ": operands live on different skeletons");
}

double real_weight(Complex w, const std::string& piece) {
  if (w.imag() != 0.0 || !(w.real() >= 0.0))
    throw ModelError("density weight on '" + piece + "' must be real and nonnegative");
  return w.real();
}

}  // namespace

PExponent::PExponent(double reciprocal)
    : reciprocal_(reciprocal), value_(reciprocal == 0.0 ? kInf : 1.0 / reciprocal) {}

PExponent PExponent::finite(double p) {
  if (!std::isfinite(p) || !(p >= 1.0)) {
    std::ostringstream msg;
    msg << "exponent must satisfy p >= 1, got " << p;
    throw ModelError(msg.str());
  }
  PExponent e(1.0 / p);
  e.value_ = p;
  return e;
}

PExponent PExponent::from_value(double p) {
  if (std::isinf(p) && p > 0) return infinity();
  return finite(p);
}

double PExponent::value() const { return value_; }

std::string PExponent::to_string() const {
  if (is_infinite()) return "inf";
  std::ostringstream out;
  out << value_;
  return out.str();
}

SimpleFunction SimpleFunction::constant(SkeletonPtr skeleton, Complex value) {
  SimpleFunction f;
  f.atom_value.assign(skeleton->atoms.size(), value);
  f.cell_value.assign(skeleton->cells.size(), value);
  if (skeleton->tail_present) f.tail_value = value;
  f.skeleton = std::move(skeleton);
  return f;
}

SimpleFunction SimpleFunction::indicator(SkeletonPtr skeleton, const std::vector<PieceRef>& support) {
  auto f = zero(std::move(skeleton));
  for (auto piece : support) f.set(piece, 1.0);
  return f;
}

Complex SimpleFunction::value(PieceRef piece) const {
  switch (piece.kind) {
    case PieceKind::atom:
      return atom_value.at(piece.index);
    case PieceKind::cell:
      return cell_value.at(piece.index);
    case PieceKind::tail:
      break;
  }
  return tail_value.value_or(0.0);
}

void SimpleFunction::set(PieceRef piece, Complex v) {
  switch (piece.kind) {
    case PieceKind::atom:
      atom_value.at(piece.index) = v;
      return;
    case PieceKind::cell:
      cell_value.at(piece.index) = v;
      return;
    case PieceKind::tail:
      if (!tail_value) throw ModelError("function has no tail slot");
      tail_value = v;
      return;
  }
}

std::vector<Diagnostic> validate(const SimpleFunction& f) {
  if (!f.skeleton) return {{"", "function has no skeleton"}};
  auto out = validate(*f.skeleton);
  if (f.atom_value.size() != f.skeleton->atoms.size())
    out.push_back({"", "atom value count does not match the skeleton"});
  if (f.cell_value.size() != f.skeleton->cells.size())
    out.push_back({"", "cell value count does not match the skeleton"});
  if (f.tail_value.has_value() != f.skeleton->tail_present)
    out.push_back({std::string(kTailId), "tail value must be present exactly when the skeleton has a tail"});
  for (auto piece : pieces(*f.skeleton)) {
    if (piece.kind == PieceKind::atom && piece.index >= f.atom_value.size()) continue;
    if (piece.kind == PieceKind::cell && piece.index >= f.cell_value.size()) continue;
    auto v = f.value(piece);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      out.push_back({piece_id(*f.skeleton, piece), "value must be finite"});
  }
  return out;
}

SimpleFunction transport(const SimpleFunction& f, const PieceMap& map) {
  require_same(f.skeleton, map.from, "transport");
  SimpleFunction out;
  out.skeleton = map.to;
  out.atom_value = f.atom_value;
  out.tail_value = f.tail_value;
  out.cell_value.reserve(map.cell_parent.size());
  for (auto parent : map.cell_parent) out.cell_value.push_back(f.cell_value.at(parent));
  return out;
}

SimpleFunction operator*(const SimpleFunction& a, const SimpleFunction& b) {
  require_same(a.skeleton, b.skeleton, "product");
  SimpleFunction out = a;
  for (std::size_t i = 0; i < out.atom_value.size(); ++i) out.atom_value[i] *= b.atom_value[i];
  for (std::size_t i = 0; i < out.cell_value.size(); ++i) out.cell_value[i] *= b.cell_value[i];
  if (out.tail_value) *out.tail_value *= *b.tail_value;
  return out;
}

SimpleFunction operator*(Complex scale, const SimpleFunction& f) {
  SimpleFunction out = f;
  for (auto& v : out.atom_value) v *= scale;
  for (auto& v : out.cell_value) v *= scale;
  if (out.tail_value) *out.tail_value *= scale;
  return out;
}

SimpleFunction operator-(const SimpleFunction& a, const SimpleFunction& b) {
  require_same(a.skeleton, b.skeleton, "difference");
  SimpleFunction out = a;
  for (std::size_t i = 0; i < out.atom_value.size(); ++i) out.atom_value[i] -= b.atom_value[i];
  for (std::size_t i = 0; i < out.cell_value.size(); ++i) out.cell_value[i] -= b.cell_value[i];
  if (out.tail_value) *out.tail_value -= *b.tail_value;
  return out;
}

SimpleFunction canonical(const SimpleFunction& f, const Measure& m) {
  require_same(f.skeleton, m.skeleton, "canonical");
  SimpleFunction out = f;
  for (auto piece : pieces(*f.skeleton))
    if (!(m.mass(piece) > 0.0)) out.set(piece, 0.0);
  return out;
}

Measure density_times(const SimpleFunction& rho, const Measure& m) {
  require_same(rho.skeleton, m.skeleton, "density_times");
  const auto& sk = *m.skeleton;
  Measure out = m;
  for (std::size_t i = 0; i < out.atom_mass.size(); ++i)
    out.atom_mass[i] *= real_weight(rho.atom_value[i], sk.atoms[i]);
  for (std::size_t i = 0; i < out.cell_density.size(); ++i)
    out.cell_density[i] *= real_weight(rho.cell_value[i], sk.cells[i].id);
  if (out.tail) {
    const double w = real_weight(*rho.tail_value, std::string(kTailId));
    if (w > 0.0)
      out.tail->first_mass *= w;
    else
      out.tail.reset();
  }
  return out;
}

double lp_norm(const SimpleFunction& f, PExponent p, const Measure& m) {
  require_same(f.skeleton, m.skeleton, "lp_norm");
  if (p.is_infinite()) {
    double sup = 0.0;
    for (auto piece : pieces(*m.skeleton))
      if (m.mass(piece) > 0.0) sup = std::max(sup, std::abs(f.value(piece)));
    return sup;
  }
  const double e = p.value();
  double sum = 0.0;
  for (auto piece : pieces(*m.skeleton)) {
    const double w = m.mass(piece);
    if (w > 0.0) sum += std::pow(std::abs(f.value(piece)), e) * w;
  }
  return e == 1.0 ? sum : std::pow(sum, 1.0 / e);
}

Complex j_p(const SimpleFunction& f, std::string_view atom, PExponent p, const Measure& m) {
  require_same(f.skeleton, m.skeleton, "j_p");
  auto i = m.skeleton->atom_index(atom);
  if (!i) throw ModelError("j_p: unknown atom '" + std::string(atom) + "'");
  const double mass = m.atom_mass[*i];
  if (!(mass > 0.0)) throw ModelError("j_p: slot '" + std::string(atom) + "' has zero mass and is not an atom");
  return f.atom_value[*i] * std::pow(mass, p.reciprocal());
}

double GeometricFamily::sup_abs() const {
  const double b = std::abs(base);
  if (b == 0.0) return 0.0;
  return ratio > 1.0 ? kInf : b;
}

double GeometricFamily::inf_abs() const {
  const double b = std::abs(base);
  if (b == 0.0) return 0.0;
  return ratio < 1.0 ? 0.0 : b;
}

double GeometricFamily::norm(PExponent p) const {
  const double b = std::abs(base);
  if (b == 0.0) return 0.0;
  if (p.is_infinite()) return sup_abs();
  if (ratio >= 1.0) return kInf;
  const double e = p.value();
  return b * std::pow(1.0 - std::pow(ratio, e), -1.0 / e);
}

double AtomSequence::norm(PExponent p) const {
  if (p.is_infinite()) {
    double sup = tail ? tail->sup_abs() : 0.0;
    for (auto c : coords) sup = std::max(sup, std::abs(c));
    return sup;
  }
  const double e = p.value();
  double sum = 0.0;
  for (auto c : coords) sum += std::pow(std::abs(c), e);
  if (tail) {
    const double t = tail->norm(p);
    if (std::isinf(t)) return kInf;
    sum += std::pow(t, e);
  }
  return std::pow(sum, 1.0 / e);
}

AtomSequence to_sequence(const SimpleFunction& f, PExponent p, const Measure& m) {
  require_same(f.skeleton, m.skeleton, "to_sequence");
  for (std::size_t i = 0; i < m.cell_density.size(); ++i)
    if (m.cell_density[i] != 0.0)
      throw ModelError("to_sequence: cell '" + m.skeleton->cells[i].id +
                       "' carries density; the measure is not purely atomic");
  AtomSequence out;
  for (std::size_t i = 0; i < m.atom_mass.size(); ++i) {
    if (!(m.atom_mass[i] > 0.0)) continue;
    out.ids.push_back(m.skeleton->atoms[i]);
    out.coords.push_back(f.atom_value[i] * std::pow(m.atom_mass[i], p.reciprocal()));
  }
  if (m.tail)
    out.tail = GeometricFamily{*f.tail_value * std::pow(m.tail->first_mass, p.reciprocal()),
                               std::pow(m.tail->ratio, p.reciprocal())};
  return out;
}

ComponentSplit split_atomic_nonatomic(const SimpleFunction& f, const Measure& m) {
  require_same(f.skeleton, m.skeleton, "split_atomic_nonatomic");
  ComponentSplit out{f, f};
  for (auto& v : out.atomic.cell_value) v = 0.0;
  for (auto& v : out.nonatomic.atom_value) v = 0.0;
  if (out.nonatomic.tail_value) out.nonatomic.tail_value = 0.0;
  return out;
}

SimpleFunction change_of_density(const SimpleFunction& f, const SimpleFunction& rho, PExponent p,
                                 const Measure& m) {
  require_same(f.skeleton, rho.skeleton, "change_of_density");
  require_same(f.skeleton, m.skeleton, "change_of_density");
  SimpleFunction out = f;
  for (auto piece : pieces(*m.skeleton)) {
    if (!(m.mass(piece) > 0.0)) continue;
    const auto r = rho.value(piece);
    if (r.imag() != 0.0 || !(r.real() > 0.0))
      throw ModelError("change_of_density: density must be real and positive on '" +
                       piece_id(*m.skeleton, piece) + "'");
    out.set(piece, f.value(piece) * std::pow(r.real(), -p.reciprocal()));
  }
  return out;
}

double equiv_constant(std::size_t n, PExponent p, PExponent q) {
  if (n == 0) throw ModelError("equiv_constant: dimension must be positive");
  if (p >= q) return 1.0;
  return std::pow(static_cast<double>(n), p.reciprocal() - q.reciprocal());
}

}  // namespace lpmult
