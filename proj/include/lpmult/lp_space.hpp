#pragma once

// L_p elements of a presented measure space as simple functions, their norms
// and the structural isometries between L_p spaces (component split, atom
// evaluation, reduction of purely atomic spaces to sequence spaces, change of
// density).

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lpmult/measure_model.hpp"

namespace lpmult {

using Complex = std::complex<double>;

/// An exponent in [1, +inf].
class PExponent {
 public:
  /// Throws ModelError unless 1 <= p < inf.
  static PExponent finite(double p);
  static PExponent infinity() { return PExponent(0.0); }
  /// Accepts +inf as well as finite values >= 1.
  static PExponent from_value(double p);

  bool is_infinite() const { return reciprocal_ == 0.0; }
  double value() const;
  /// 1/p, with 1/inf = 0.
  double reciprocal() const { return reciprocal_; }
  std::string to_string() const;

  friend bool operator==(PExponent a, PExponent b) { return a.value_ == b.value_; }
  /// Ordered by the exponent itself (inf is the largest).
  friend bool operator<(PExponent a, PExponent b) { return a.reciprocal_ > b.reciprocal_; }
  friend bool operator>(PExponent a, PExponent b) { return b < a; }
  friend bool operator<=(PExponent a, PExponent b) { return !(b < a); }
  friend bool operator>=(PExponent a, PExponent b) { return !(a < b); }

 private:
  explicit PExponent(double reciprocal);
  double reciprocal_;
  double value_;
};

/// Constant value per atom slot, per cell and on the whole tail family.
struct SimpleFunction {
  SkeletonPtr skeleton;
  std::vector<Complex> atom_value;
  std::vector<Complex> cell_value;
  std::optional<Complex> tail_value;

  static SimpleFunction constant(SkeletonPtr skeleton, Complex value);
  static SimpleFunction zero(SkeletonPtr skeleton) { return constant(std::move(skeleton), 0.0); }
  /// One on the listed pieces, zero elsewhere.
  static SimpleFunction indicator(SkeletonPtr skeleton, const std::vector<PieceRef>& support);

  Complex value(PieceRef piece) const;
  void set(PieceRef piece, Complex v);
};

std::vector<Diagnostic> validate(const SimpleFunction& f);

SimpleFunction transport(const SimpleFunction& f, const PieceMap& map);

/// Pointwise product; both factors must share a skeleton.
SimpleFunction operator*(const SimpleFunction& a, const SimpleFunction& b);
SimpleFunction operator*(Complex scale, const SimpleFunction& f);
SimpleFunction operator-(const SimpleFunction& a, const SimpleFunction& b);

/// The representative of f's L_p(m) class that vanishes on m-null pieces.
SimpleFunction canonical(const SimpleFunction& f, const Measure& m);

/// rho * m: masses and densities multiplied by rho's (real, nonnegative)
/// values. A tail whose weight vanishes is dropped.
Measure density_times(const SimpleFunction& rho, const Measure& m);

double lp_norm(const SimpleFunction& f, PExponent p, const Measure& m);

/// Value times mass^{1/p} on a positive-mass atom.
Complex j_p(const SimpleFunction& f, std::string_view atom, PExponent p, const Measure& m);

/// Entries base * ratio^k for k = 0, 1, 2, ...
struct GeometricFamily {
  Complex base;
  double ratio = 0.0;

  /// sup_k |base * ratio^k| (inf when the family grows).
  double sup_abs() const;
  /// inf_k |base * ratio^k| (0 when the family decays).
  double inf_abs() const;
  /// ell_p norm of the family (inf when not summable).
  double norm(PExponent p) const;
};

struct AtomSequence {
  std::vector<std::string> ids;
  std::vector<Complex> coords;
  std::optional<GeometricFamily> tail;

  double norm(PExponent p) const;
};

/// Coordinates in ell_p of a purely atomic space; throws ModelError if any
/// cell carries density.
AtomSequence to_sequence(const SimpleFunction& f, PExponent p, const Measure& m);

struct ComponentSplit {
  SimpleFunction atomic;
  SimpleFunction nonatomic;
};

ComponentSplit split_atomic_nonatomic(const SimpleFunction& f, const Measure& m);

/// rho^{-1/p} f, an isometry L_p(m) -> L_p(rho m). On m-null pieces the
/// value of f is kept unchanged.
SimpleFunction change_of_density(const SimpleFunction& f, const SimpleFunction& rho, PExponent p,
                                 const Measure& m);

/// Smallest C with ||x||_p <= C ||x||_q on C^n.
double equiv_constant(std::size_t n, PExponent p, PExponent q);

}  // namespace lpmult
