#include <gtest/gtest.h>

#include <cmath>

#include "generators.hpp"
#include "lpmult/errors.hpp"
#include "lpmult/operator.hpp"

using namespace lpmult;
using lpmult::testing::Gen;

namespace {

PExponent P(double v) { return PExponent::finite(v); }

struct Fixture {
  SkeletonPtr sk = make_skeleton({"a"}, {{"c", 1.0}, {"d", 0.5}});
  Measure mu = [this] {
    auto m = Measure::zero(sk);
    m.atom_mass = {2.0};
    m.cell_density = {1.0, 1.0};
    return m;
  }();
};

}  // namespace

TEST(Operator, RejectsMixedSkeletons) {
  Fixture x;
  auto other = make_skeleton({"z"}, {});
  EXPECT_THROW((MultiplicationOperator{SimpleFunction::constant(other, 1.0), P(2), P(2), x.mu, x.mu}), ModelError);
}

TEST(Apply, Examples) {
  Fixture x;
  const MultiplicationOperator op{SimpleFunction::constant(x.sk, 2.0), P(2), P(2), x.mu, x.mu};
  const auto out = apply(op, SimpleFunction::constant(x.sk, 3.0));
  for (auto piece : pieces(*x.sk)) EXPECT_EQ(out.value(piece), Complex(6.0));

  auto g = SimpleFunction::constant(x.sk, 2.0);
  g.cell_value[1] = 0.0;
  const MultiplicationOperator zero_piece{g, P(2), P(2), x.mu, x.mu};
  EXPECT_EQ(apply(zero_piece, SimpleFunction::constant(x.sk, 3.0)).cell_value[1], Complex(0.0));
  for (auto piece : pieces(*x.sk)) EXPECT_EQ(apply(op, SimpleFunction::zero(x.sk)).value(piece), Complex(0.0));
}

TEST(ZeroSetMeasure, Examples) {
  Fixture x;
  auto g = SimpleFunction::constant(x.sk, 1.0);
  g.cell_value[1] = 0.0;
  const auto z = zero_set_measure({g, P(2), P(2), x.mu, x.mu});
  EXPECT_EQ(z.mu_measure, 0.5);
  EXPECT_EQ(z.region.cells, std::set<std::string>{"d"});

  EXPECT_EQ(zero_set_measure({SimpleFunction::constant(x.sk, 1.0), P(2), P(2), x.mu, x.mu}).mu_measure, 0.0);
  const auto all = zero_set_measure({SimpleFunction::zero(x.sk), P(2), P(2), x.mu, x.mu});
  EXPECT_EQ(all.mu_measure, x.mu.total_mass());
}

TEST(RestrictTo, Examples) {
  Fixture x;
  Gen gen(2);
  const MultiplicationOperator op{gen.function(x.sk), P(1), P(3), x.mu, x.mu};
  const auto whole = restrict_to(op, Region::whole(*x.sk));
  EXPECT_EQ(*whole.skeleton(), *x.sk);
  EXPECT_EQ(whole.g.atom_value, op.g.atom_value);
  EXPECT_EQ(whole.g.cell_value, op.g.cell_value);

  Region atoms;
  atoms.atoms = {"a"};
  const auto atomic = restrict_to(op, atoms);
  EXPECT_TRUE(atomic.skeleton()->cells.empty());
  EXPECT_EQ(atomic.g.atom_value, op.g.atom_value);

  auto nu = x.mu;
  auto mu = x.mu;
  mu.cell_density[0] = 0.0;
  Region null;
  null.cells = {"c"};
  const auto zero = restrict_to({op.g, P(2), P(2), mu, nu}, null);
  EXPECT_EQ(zero.mu.total_mass(), 0.0);
  EXPECT_GT(zero.nu.total_mass(), 0.0);

  Region frac;
  frac.fractions = {{"c", 0.5}};
  EXPECT_THROW(restrict_to(op, frac), ModelError);
}

TEST(ReduceDiagonal, Examples) {
  auto sk = make_skeleton({"a"}, {});
  auto mu = Measure::zero(sk);
  mu.atom_mass = {4.0};
  const auto d = reduce_diagonal({SimpleFunction::constant(sk, 3.0), P(1), P(2), mu, mu});
  ASSERT_EQ(d.entries.size(), 1u);
  EXPECT_NEAR(std::abs(d.entries[0] - 1.5), 0.0, 1e-15);
  EXPECT_EQ(reduce_diagonal({SimpleFunction::constant(sk, 3.0), P(3), P(3), mu, mu}).entries[0], Complex(3.0));

  auto nu = mu;
  nu.atom_mass = {1.0};
  EXPECT_THROW(reduce_diagonal({SimpleFunction::constant(sk, 3.0), P(1), P(2), mu, nu}), ModelError);
}

TEST(ReduceDiagonal, TailIsGeometric) {
  auto sk = make_skeleton({}, {}, true);
  auto mu = Measure::zero(sk);
  mu.tail = GeometricTail{1.0, 0.25};
  const auto d = reduce_diagonal({SimpleFunction::constant(sk, 1.0), P(1), P(2), mu, mu});
  ASSERT_TRUE(d.tail);
  // Entries (0.25^k)^{-1/2} = 2^k grow without bound.
  EXPECT_NEAR(d.tail->ratio, 2.0, 1e-15);
  EXPECT_EQ(d.tail->inf_abs(), 1.0);
  EXPECT_TRUE(std::isinf(d.tail->sup_abs()));
}

TEST(Compose, ChainsSymbolsAndChecksSpaces) {
  Fixture x;
  Gen gen(9);
  const MultiplicationOperator a{gen.function(x.sk), P(1), P(2), x.mu, x.mu};
  const MultiplicationOperator b{gen.function(x.sk), P(2), P(3), x.mu, x.mu};
  const auto ba = compose(b, a);
  EXPECT_EQ(ba.p, P(1));
  EXPECT_EQ(ba.q, P(3));
  const auto f = gen.function(x.sk);
  const auto lhs = apply(ba, f), rhs = apply(b, apply(a, f));
  for (auto piece : pieces(*x.sk)) EXPECT_NEAR(std::abs(lhs.value(piece) - rhs.value(piece)), 0.0, 1e-12);
  EXPECT_THROW(compose(a, b), ModelError);
}
