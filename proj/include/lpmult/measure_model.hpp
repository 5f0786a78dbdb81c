#pragma once

// Finite presentation of a measurable space and of finite measures on it.
//
// A space is a finite list of atom slots, a finite list of continuum cells
// laid end to end on a base interval, and optionally a countable family of
// extra atom slots (the "tail"). A measure puts a mass on each atom slot, a
// constant density on each cell, and geometric masses c*r^k on the tail.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace lpmult {

/// Reserved identifier of the tail family.
inline constexpr std::string_view kTailId = "tail";

struct CellSpec {
  std::string id;
  double length = 0.0;

  friend bool operator==(const CellSpec&, const CellSpec&) = default;
};

struct SpaceSkeleton {
  std::vector<std::string> atoms;
  std::vector<CellSpec> cells;
  bool tail_present = false;

  std::optional<std::size_t> atom_index(std::string_view id) const;
  std::optional<std::size_t> cell_index(std::string_view id) const;
  double base_length() const;

  friend bool operator==(const SpaceSkeleton&, const SpaceSkeleton&) = default;
};

using SkeletonPtr = std::shared_ptr<const SpaceSkeleton>;

SkeletonPtr make_skeleton(std::vector<std::string> atoms, std::vector<CellSpec> cells,
                          bool tail_present = false);

/// True when both pointers denote the same layout (identity or deep equality).
bool same_skeleton(const SkeletonPtr& a, const SkeletonPtr& b);

enum class PieceKind { atom, cell, tail };

struct PieceRef {
  PieceKind kind = PieceKind::atom;
  std::size_t index = 0;  // ignored for the tail

  friend bool operator==(const PieceRef&, const PieceRef&) = default;
};

/// Atoms first, then cells, then the tail when present.
std::vector<PieceRef> pieces(const SpaceSkeleton& skeleton);
std::string piece_id(const SpaceSkeleton& skeleton, PieceRef piece);

struct GeometricTail {
  double first_mass = 0.0;  // c
  double ratio = 0.0;       // r

  double total() const { return first_mass / (1.0 - ratio); }

  friend bool operator==(const GeometricTail&, const GeometricTail&) = default;
};

struct Measure {
  SkeletonPtr skeleton;
  std::vector<double> atom_mass;
  std::vector<double> cell_density;
  std::optional<GeometricTail> tail;

  static Measure zero(SkeletonPtr skeleton);

  double cell_mass(std::size_t cell) const;
  /// Total mass of a piece (the whole geometric family for the tail).
  double mass(PieceRef piece) const;
  double total_mass() const;
  /// Pieces of strictly positive measure.
  std::vector<PieceRef> support() const;
};

/// A measurable set in the presentation: whole atoms, whole cells, the
/// whole tail family, and left-anchored fractions of cells (by mass).
struct Region {
  std::set<std::string> atoms;
  std::set<std::string> cells;
  std::map<std::string, double> fractions;
  bool tail = false;

  bool empty() const { return atoms.empty() && cells.empty() && fractions.empty() && !tail; }
  bool whole_pieces() const { return fractions.empty(); }

  static Region whole(const SpaceSkeleton& skeleton);
  static Region of(const SpaceSkeleton& skeleton, const std::vector<PieceRef>& pieces);

  friend bool operator==(const Region&, const Region&) = default;
};

/// Whole-piece complement; throws ModelError when `region` has fractions.
Region complement(const SpaceSkeleton& skeleton, const Region& region);
bool contains(const SpaceSkeleton& skeleton, const Region& region, PieceRef piece);

struct Diagnostic {
  std::string piece;
  std::string message;
};

std::vector<Diagnostic> validate(const SpaceSkeleton& skeleton);
std::vector<Diagnostic> validate(const Measure& m);

struct AtomList {
  std::vector<std::string> atoms;
  bool tail = false;
};

AtomList atoms_of(const Measure& m);

double measure_of(const Measure& m, const Region& region);

/// Old-to-new correspondence produced by a refinement. Atoms and the tail
/// map to themselves; each new cell records the old cell it came from and
/// the interval [offset, offset + length) it occupies inside that cell.
struct PieceMap {
  SkeletonPtr from;
  SkeletonPtr to;
  std::vector<std::size_t> cell_parent;
  std::vector<double> cell_offset;

  static PieceMap identity(SkeletonPtr skeleton);
};

Measure transport(const Measure& m, const PieceMap& map);
Region transport(const Region& region, const PieceMap& map);

struct CellSplit {
  Measure measure;
  Region piece;  // has measure exactly t
  PieceMap map;
};

/// Sierpinski-style splitting of a continuum cell: cuts off a left part of
/// mass t. A cut at either end of the cell leaves the skeleton unchanged.
CellSplit split_cell(const Measure& m, std::string_view cell, double t);

}  // namespace lpmult
