#include "lpmult/measure_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_set>

#include "lpmult/errors.hpp"

namespace lpmult {

std::optional<std::size_t> SpaceSkeleton::atom_index(std::string_view id) const {
  for (std::size_t i = 0; i < atoms.size(); ++i)
    if (atoms[i] == id) return i;
  return std::nullopt;
}

std::optional<std::size_t> SpaceSkeleton::cell_index(std::string_view id) const {
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (cells[i].id == id) return i;
  return std::nullopt;
}

double SpaceSkeleton::base_length() const {
  double total = 0.0;
  for (const auto& c : cells) total += c.length;
  return total;
}

SkeletonPtr make_skeleton(std::vector<std::string> atoms, std::vector<CellSpec> cells,
                          bool tail_present) {
  return std::make_shared<const SpaceSkeleton>(
      SpaceSkeleton{std::move(atoms), std::move(cells), tail_present});
}

bool same_skeleton(const SkeletonPtr& a, const SkeletonPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

std::vector<PieceRef> pieces(const SpaceSkeleton& skeleton) {
  std::vector<PieceRef> out;
  out.reserve(skeleton.atoms.size() + skeleton.cells.size() + 1);
  for (std::size_t i = 0; i < skeleton.atoms.size(); ++i) out.push_back({PieceKind::atom, i});
  for (std::size_t i = 0; i < skeleton.cells.size(); ++i) out.push_back({PieceKind::cell, i});
  if (skeleton.tail_present) out.push_back({PieceKind::tail, 0});
  return out;
}

std::string piece_id(const SpaceSkeleton& skeleton, PieceRef piece) {
  switch (piece.kind) {
    case PieceKind::atom:
      return skeleton.atoms.at(piece.index);
    case PieceKind::cell:
      return skeleton.cells.at(piece.index).id;
    case PieceKind::tail:
      break;
  }
  return std::string(kTailId);
}

Measure Measure::zero(SkeletonPtr skeleton) {
  Measure m;
  m.atom_mass.assign(skeleton->atoms.size(), 0.0);
  m.cell_density.assign(skeleton->cells.size(), 0.0);
  m.skeleton = std::move(skeleton);
  return m;
}

double Measure::cell_mass(std::size_t cell) const {
  return cell_density.at(cell) * skeleton->cells.at(cell).length;
}

double Measure::mass(PieceRef piece) const {
  switch (piece.kind) {
    case PieceKind::atom:
      return atom_mass.at(piece.index);
    case PieceKind::cell:
      return cell_mass(piece.index);
    case PieceKind::tail:
      break;
  }
  return tail ? tail->total() : 0.0;
}

double Measure::total_mass() const {
  double total = 0.0;
  for (auto piece : pieces(*skeleton)) total += mass(piece);
  return total;
}

std::vector<PieceRef> Measure::support() const {
  std::vector<PieceRef> out;
  for (auto piece : pieces(*skeleton))
    if (mass(piece) > 0.0) out.push_back(piece);
  return out;
}

Region Region::whole(const SpaceSkeleton& skeleton) {
  return of(skeleton, pieces(skeleton));
}

Region Region::of(const SpaceSkeleton& skeleton, const std::vector<PieceRef>& list) {
  Region r;
  for (auto piece : list) {
    switch (piece.kind) {
      case PieceKind::atom:
        r.atoms.insert(skeleton.atoms.at(piece.index));
        break;
      case PieceKind::cell:
        r.cells.insert(skeleton.cells.at(piece.index).id);
        break;
      case PieceKind::tail:
        r.tail = true;
        break;
    }
  }
  return r;
}

bool contains(const SpaceSkeleton& skeleton, const Region& region, PieceRef piece) {
  switch (piece.kind) {
    case PieceKind::atom:
      return region.atoms.contains(skeleton.atoms.at(piece.index));
    case PieceKind::cell:
      return region.cells.contains(skeleton.cells.at(piece.index).id);
    case PieceKind::tail:
      break;
  }
  return region.tail;
}

Region complement(const SpaceSkeleton& skeleton, const Region& region) {
  if (!region.whole_pieces())
    throw ModelError("complement: region has sub-cell fractions; split the cells first");
  std::vector<PieceRef> rest;
  for (auto piece : pieces(skeleton))
    if (!contains(skeleton, region, piece)) rest.push_back(piece);
  return Region::of(skeleton, rest);
}

std::vector<Diagnostic> validate(const SpaceSkeleton& skeleton) {
  std::vector<Diagnostic> out;
  std::unordered_set<std::string> seen;
  auto check_id = [&](const std::string& id) {
    if (id.empty()) out.push_back({id, "empty identifier"});
    if (id == kTailId) out.push_back({id, "identifier is reserved for the tail family"});
    if (!seen.insert(id).second) out.push_back({id, "duplicate identifier"});
  };
  for (const auto& a : skeleton.atoms) check_id(a);
  for (const auto& c : skeleton.cells) {
    check_id(c.id);
    if (!(c.length > 0.0) || !std::isfinite(c.length)) {
      std::ostringstream msg;
      msg << "base length must be positive and finite, got " << c.length;
      out.push_back({c.id, msg.str()});
    }
  }
  return out;
}

std::vector<Diagnostic> validate(const Measure& m) {
  if (!m.skeleton) return {{"", "measure has no skeleton"}};
  const auto& sk = *m.skeleton;
  auto out = validate(sk);
  if (m.atom_mass.size() != sk.atoms.size())
    out.push_back({"", "atom mass count does not match the skeleton"});
  if (m.cell_density.size() != sk.cells.size())
    out.push_back({"", "cell density count does not match the skeleton"});
  for (std::size_t i = 0; i < std::min(m.atom_mass.size(), sk.atoms.size()); ++i)
    if (!(m.atom_mass[i] >= 0.0) || !std::isfinite(m.atom_mass[i]))
      out.push_back({sk.atoms[i], "atom mass must be finite and nonnegative"});
  for (std::size_t i = 0; i < std::min(m.cell_density.size(), sk.cells.size()); ++i)
    if (!(m.cell_density[i] >= 0.0) || !std::isfinite(m.cell_density[i]))
      out.push_back({sk.cells[i].id, "cell density must be finite and nonnegative"});
  if (m.tail) {
    if (!sk.tail_present)
      out.push_back({std::string(kTailId), "measure has a tail but the skeleton has no tail slots"});
    if (!(m.tail->first_mass > 0.0) || !std::isfinite(m.tail->first_mass))
      out.push_back({std::string(kTailId), "tail first mass must be positive and finite"});
    if (!(m.tail->ratio > 0.0 && m.tail->ratio < 1.0))
      out.push_back({std::string(kTailId), "tail ratio must lie in (0,1)"});
  }
  return out;
}

AtomList atoms_of(const Measure& m) {
  AtomList out;
  for (std::size_t i = 0; i < m.atom_mass.size(); ++i)
    if (m.atom_mass[i] > 0.0) out.atoms.push_back(m.skeleton->atoms[i]);
  out.tail = m.tail.has_value();
  return out;
}

double measure_of(const Measure& m, const Region& region) {
  const auto& sk = *m.skeleton;
  double total = 0.0;
  for (const auto& id : region.atoms) {
    auto i = sk.atom_index(id);
    if (!i) throw ModelError("malformed region: unknown atom '" + id + "'");
    total += m.atom_mass[*i];
  }
  for (const auto& id : region.cells) {
    auto i = sk.cell_index(id);
    if (!i) throw ModelError("malformed region: unknown cell '" + id + "'");
    if (region.fractions.contains(id))
      throw ModelError("malformed region: cell '" + id + "' is both whole and fractional");
    total += m.cell_mass(*i);
  }
  for (const auto& [id, fraction] : region.fractions) {
    auto i = sk.cell_index(id);
    if (!i) throw ModelError("malformed region: unknown cell '" + id + "'");
    if (!(fraction >= 0.0 && fraction <= 1.0))
      throw ModelError("malformed region: fraction of '" + id + "' outside [0,1]");
    total += fraction * m.cell_mass(*i);
  }
  if (region.tail) {
    if (!sk.tail_present) throw ModelError("malformed region: skeleton has no tail");
    if (m.tail) total += m.tail->total();
  }
  return total;
}

PieceMap PieceMap::identity(SkeletonPtr skeleton) {
  PieceMap map;
  const auto n = skeleton->cells.size();
  map.cell_parent.resize(n);
  map.cell_offset.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) map.cell_parent[i] = i;
  map.from = skeleton;
  map.to = std::move(skeleton);
  return map;
}

Measure transport(const Measure& m, const PieceMap& map) {
  if (!same_skeleton(m.skeleton, map.from))
    throw ModelError("transport: measure does not live on the map's source skeleton");
  Measure out;
  out.skeleton = map.to;
  out.atom_mass = m.atom_mass;
  out.tail = m.tail;
  out.cell_density.reserve(map.cell_parent.size());
  for (auto parent : map.cell_parent) out.cell_density.push_back(m.cell_density.at(parent));
  return out;
}

Region transport(const Region& region, const PieceMap& map) {
  const auto& from = *map.from;
  const auto& to = *map.to;
  Region out;
  out.atoms = region.atoms;
  out.tail = region.tail;
  for (std::size_t i = 0; i < to.cells.size(); ++i) {
    const auto& parent = from.cells.at(map.cell_parent[i]);
    if (region.cells.contains(parent.id)) {
      out.cells.insert(to.cells[i].id);
      continue;
    }
    auto it = region.fractions.find(parent.id);
    if (it == region.fractions.end()) continue;
    const double cut = it->second * parent.length;
    const double lo = map.cell_offset[i];
    const double len = to.cells[i].length;
    if (cut >= lo + len) {
      out.cells.insert(to.cells[i].id);
    } else if (cut > lo) {
      out.fractions[to.cells[i].id] = (cut - lo) / len;
    }
  }
  return out;
}

namespace {

std::string fresh_id(const SpaceSkeleton& sk, const std::string& base) {
  auto taken = [&](const std::string& id) {
    return id == kTailId || sk.atom_index(id) || sk.cell_index(id);
  };
  std::string id = base;
  for (int k = 2; taken(id); ++k) id = base + "'" + std::to_string(k);
  return id;
}

}  // namespace

CellSplit split_cell(const Measure& m, std::string_view cell, double t) {
  const auto& sk = *m.skeleton;
  if (sk.atom_index(cell))
    throw ModelError("split_cell: '" + std::string(cell) + "' is an atom slot; atoms are indivisible");
  auto idx = sk.cell_index(cell);
  if (!idx) throw ModelError("split_cell: unknown cell '" + std::string(cell) + "'");
  const double length = sk.cells[*idx].length;
  const double density = m.cell_density[*idx];
  const double full = density * length;
  if (!(t >= 0.0 && t <= full))
    throw ModelError("split_cell: requested mass is outside [0, cell mass]");

  const double cut = density > 0.0 ? t / density : 0.5 * length;
  const std::string id(cell);
  if (density > 0.0 && (cut <= 0.0 || cut >= length)) {
    CellSplit out{m, {}, PieceMap::identity(m.skeleton)};
    if (t > 0.0) out.piece.cells.insert(id);
    return out;
  }

  SpaceSkeleton refined = sk;
  refined.cells.erase(refined.cells.begin() + static_cast<std::ptrdiff_t>(*idx));
  const std::string left_id = fresh_id(refined, id + ".0");
  refined.cells.insert(refined.cells.begin() + static_cast<std::ptrdiff_t>(*idx),
                       CellSpec{left_id, cut});
  const std::string right_id = fresh_id(refined, id + ".1");
  refined.cells.insert(refined.cells.begin() + static_cast<std::ptrdiff_t>(*idx) + 1,
                       CellSpec{right_id, length - cut});

  PieceMap map;
  map.from = m.skeleton;
  map.to = std::make_shared<const SpaceSkeleton>(std::move(refined));
  for (std::size_t i = 0; i < sk.cells.size(); ++i) {
    map.cell_parent.push_back(i);
    map.cell_offset.push_back(0.0);
    if (i == *idx) {
      map.cell_parent.push_back(i);
      map.cell_offset.push_back(cut);
    }
  }

  CellSplit out{transport(m, map), {}, map};
  out.piece.cells.insert(left_id);
  return out;
}

}  // namespace lpmult
