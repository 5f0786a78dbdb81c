// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "generators.hpp"
#include "lpmult/classifier.hpp"
#include "lpmult/decomposition.hpp"
#include "lpmult/errors.hpp"
#include "lpmult/hom_module.hpp"
#include "lpmult/oracle.hpp"

using namespace lpmult;
using lpmult::testing::Gen;

namespace {

PExponent P(double v) { return PExponent::finite(v); }

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects the first few failure messages of a criterion.
class Check {
 public:
  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (failures_++ < 3) (first_.empty() ? first_ : first_ += "; ") += what;
  }
  Outcome done(std::string summary) const {
    if (failures_ == 0) return {true, std::move(summary)};
    return {false, std::to_string(failures_) + " failure(s): " + first_};
  }

 private:
  int failures_ = 0;
  std::string first_;
};

std::string str(double x) {
  std::ostringstream out;
  out.precision(6);
  out << x;
  return out.str();
}

bool near_rel(double a, double b, double tol) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::abs(a - b) <= tol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

double round_trip(const MultiplicationOperator& op, const MultiplicationOperator& inv, bool left, std::mt19937_64& rng,
                  int samples) {
  double worst = 0.0;
  const auto& m = left ? op.mu : op.nu;
  const auto e = left ? op.p : op.q;
  for (int k = 0; k < samples; ++k) {
    const auto f = canonical(random_function(op.skeleton(), rng), m);
    const double nf = lp_norm(f, e, m);
    if (!(nf > 0.0)) continue;
    const auto back = left ? apply(inv, apply(op, f)) : apply(op, apply(inv, f));
    worst = std::max(worst, lp_norm(back - f, e, m) / nf);
  }
  return worst;
}

Outcome isometry_reproduction() {
  Check check;
  auto sk = make_skeleton({"a"}, {});
  auto mu = Measure::zero(sk);
  mu.atom_mass = {4.0};
  const MultiplicationOperator op{SimpleFunction::constant(sk, 2.0), P(1), P(2), mu, mu};
  const auto c = classify(op);
  check.require(c.isometric_isomorphism, "not classified as an isometric isomorphism");
  std::mt19937_64 rng(1);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const auto f = random_function(sk, rng);
    const double nf = lp_norm(f, op.p, mu);
    if (nf > 0.0) worst = std::max(worst, std::abs(lp_norm(apply(op, f), op.q, mu) / nf - 1.0));
  }
  check.require(worst <= 1e-12, "ratio deviates from 1 by " + str(worst));
  return check.done("isometric_isomorphism=true, max |ratio-1| over 100 functions = " + str(worst));
}

Outcome oracle_equivalence() {
  Check check;
  Gen gen(2002);
  double worst_closed = 0.0, worst_bracket = 0.0;
  for (int k = 0; k < 200; ++k) {
    const auto op = gen.atomic_op(8);
    const auto d = reduce_diagonal(op).entries;
    const double norm = diagonal_operator_norm(d, op.p, op.q), low = diagonal_lower_bound(d, op.p, op.q);
    const auto c = classify(op);
    const double dn = std::abs(c.operator_norm - norm) / std::max(1.0, norm);
    const double dl = std::abs(c.lower_constant - low) / std::max(1.0, low);
    worst_closed = std::max({worst_closed, dn, dl});
    check.require(dn <= 1e-9 && dl <= 1e-9, "case " + std::to_string(k) + " differs from closed forms");
    const auto est = sample_ratio_extremes(op, 10000, k);
    const double over = (est.max_ratio - c.operator_norm) / std::max(1.0, c.operator_norm);
    const double under = (c.lower_constant - est.min_ratio) / std::max(1.0, c.lower_constant);
    worst_bracket = std::max({worst_bracket, over, under});
    check.require(over <= 1e-6 && under <= 1e-6, "case " + std::to_string(k) + " escapes the bracket");
  }
  return check.done("200 operators, worst closed-form gap " + str(worst_closed) + ", worst bracket excess " +
                    str(std::max(0.0, worst_bracket)));
}

Outcome inverse_theorems() {
  Check check;
  Gen gen(3003);
  std::mt19937_64 rng(33);
  int left = 0, right = 0, isometric = 0, coisometric = 0;
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    // A third of the suite is drawn among unit-modulus symbols so that the
    // isometric and coisometric clauses are exercised.
    const auto op = k % 3 == 0 ? gen.unit_op(k % 2 == 0) : gen.op({3, 3, true}, 0.15);
    const auto c = classify(op);
    try {
      if (c.topologically_injective) {
        const auto inv = construct_left_inverse(op);
        const double r = round_trip(op, inv, true, rng, 100);
        worst = std::max(worst, r);
        check.require(r <= 1e-12, "left round trip " + str(r) + " in case " + std::to_string(k));
        if (c.isometric) {
          ++isometric;
          check.require(classify(inv).strictly_coisometric, "left inverse of an isometry not strictly coisometric");
        }
        ++left;
      }
      if (c.topologically_surjective) {
        const auto inv = construct_right_inverse(op);
        const double r = round_trip(op, inv, false, rng, 100);
        worst = std::max(worst, r);
        check.require(r <= 1e-12, "right round trip " + str(r) + " in case " + std::to_string(k));
        if (c.coisometric) {
          ++coisometric;
          check.require(classify(inv).isometric, "right inverse of a coisometry not isometric");
        }
        ++right;
      }
    } catch (const std::exception& e) {
      check.require(false, std::string("case ") + std::to_string(k) + ": " + e.what());
    }
  }
  return check.done(std::to_string(left) + " left and " + std::to_string(right) + " right inverses (" +
                    std::to_string(isometric) + " isometric, " + std::to_string(coisometric) +
                    " coisometric), worst residual " + str(worst));
}

Outcome lebesgue_decomposition() {
  Check check;
  Gen gen(4004);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    auto sk = gen.skeleton({4, 4, true});
    const auto mu = gen.measure(sk, 0.3), nu = gen.measure(sk, 0.3);
    const auto d = lebesgue_decompose(nu, mu);
    for (auto piece : pieces(*sk)) {
      const double gap = std::abs(nu.mass(piece) - d.rho.value(piece).real() * mu.mass(piece) - d.nu_s.mass(piece));
      worst = std::max(worst, gap);
      check.require(gap <= 1e-12, "nu != rho mu + nu_s in case " + std::to_string(k));
    }
    check.require(measure_of(mu, d.omega_s) == 0.0, "mu(omega_s) > 0 in case " + std::to_string(k));
    check.require(measure_of(d.nu_s, d.omega_c) == 0.0, "nu_s(omega_c) > 0 in case " + std::to_string(k));
  }
  return check.done("100 pairs, worst piecewise gap " + str(worst));
}

Outcome decomposition_law() {
  Check check;
  Gen gen(5005);
  int inj = 0, surj = 0;
  for (int k = 0; k < 50; ++k) {
    const auto op = k % 4 == 0 ? gen.unit_op(k % 8 == 0) : gen.op({4, 4, true}, 0.15);
    const auto& sk = *op.skeleton();
    std::vector<std::vector<PieceRef>> parts(3);
    for (auto piece : pieces(sk)) parts[gen.integer(0, 2)].push_back(piece);
    bool all_inj = true, all_surj = true;
    for (const auto& part : parts) {
      const auto c = classify(restrict_to(op, Region::of(sk, part)));
      all_inj = all_inj && c.topologically_injective;
      all_surj = all_surj && c.topologically_surjective;
    }
    const auto whole = classify(op);
    inj += whole.topologically_injective;
    surj += whole.topologically_surjective;
    check.require(whole.topologically_injective == all_inj, "injectivity law fails in case " + std::to_string(k));
    check.require(whole.topologically_surjective == all_surj, "surjectivity law fails in case " + std::to_string(k));
  }
  return check.done("50 operators (" + std::to_string(inj) + " top-injective, " + std::to_string(surj) +
                    " top-surjective), verdicts equal the conjunction over 3-part partitions");
}

Outcome pitt_degradation_check() {
  Check check;
  std::vector<std::size_t> ns;
  for (std::size_t n = 1; n <= 1024; ++n) ns.push_back(n);
  const auto c = pitt_degradation(
      ns, P(1), P(2), [](std::size_t, std::size_t) { return 1.0; },
      [](std::size_t, std::size_t) { return Complex(1.0); });
  double worst = 0.0;
  for (std::size_t k = 0; k < ns.size(); ++k) {
    const double expect = 1.0 / std::sqrt(static_cast<double>(ns[k]));
    worst = std::max(worst, std::abs(c[k] - expect) / expect);
    if (k > 0) check.require(c[k] < c[k - 1], "not strictly decreasing at n=" + std::to_string(ns[k]));
  }
  check.require(worst <= 1e-14, "constants differ from n^(-1/2) by " + str(worst));

  auto sk = make_skeleton({}, {}, true);
  auto mu = Measure::zero(sk);
  mu.tail = GeometricTail{1.0, 0.5};
  const auto g = SimpleFunction::constant(sk, 1.0);
  for (auto [p, q] : {std::pair{P(1), P(2)}, std::pair{P(2), P(1)}}) {
    const auto v = classify({g, p, q, mu, mu});
    check.require(!v.topologically_injective,
                  "tail analogue top-injective for p=" + p.to_string() + ", q=" + q.to_string());
  }
  return check.done("c_n = n^(-1/2) for n=1..1024 (max rel. error " + str(worst) + "), c_1024 = " + str(c.back()) +
                    "; tail analogue not top-injective for (1,2) and (2,1)");
}

Outcome hom_norm_vs_oracle() {
  Check check;
  Gen gen(7007);
  const double exps[] = {1.0, 1.5, 2.0, 3.0, INFINITY};
  int regimes[3] = {0, 0, 0};
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    auto op = gen.atomic_op(6);
    // Cycle through p > q, p = q, p < q.
    int i = gen.integer(0, 3), j = gen.integer(i + 1, 4);
    const double lo = exps[i], hi = exps[j];
    op.p = PExponent::from_value(k % 3 == 0 ? hi : lo);
    op.q = PExponent::from_value(k % 3 == 2 ? hi : lo);
    const auto r = hom_norm(op);
    ++regimes[static_cast<int>(r.regime)];
    const auto est = sample_ratio_extremes(op, 2000, k);
    const double gap = std::abs(r.norm - est.max_ratio) / std::max(1.0, r.norm);
    worst = std::max(worst, gap);
    check.require(gap <= 1e-6, "case " + std::to_string(k) + " (" + to_string(r.regime) + ") gap " + str(gap));
  }
  check.require(regimes[0] > 0 && regimes[1] > 0 && regimes[2] > 0, "a regime was not exercised");

  auto sk = make_skeleton({"a", "b"}, {});
  auto mu = Measure::zero(sk);
  mu.atom_mass = {1.0, 4.0};
  auto g = SimpleFunction::zero(sk);
  g.atom_value = {1.0, 0.5};
  const double two = hom_norm(g, P(2), P(1), mu, mu).norm;
  check.require(std::abs(two - std::sqrt(2.0)) <= 1e-12, "two-atom case gives " + str(two));
  return check.done("100 operators (" + std::to_string(regimes[0]) + " p>q, " + std::to_string(regimes[1]) +
                    " p=q, " + std::to_string(regimes[2]) + " p<q), worst gap " + str(worst) +
                    "; two-atom case = sqrt(2)");
}

Outcome certificates() {
  Check check;
  Gen gen(8008);
  double worst_res = 0.0, worst_norm = 0.0;
  int built = 0;
  for (auto mode : {CertificateMode::relative, CertificateMode::metric, CertificateMode::extreme}) {
    const bool strict = mode != CertificateMode::relative;
    for (int k = 0; k < 50; ++k) {
      // Relative mode takes any bounded-below mono/epi; the metric modes need
      // isometries/coisometries.
      MultiplicationOperator mono = gen.unit_op(true), epi = gen.unit_op(false);
      if (!strict) {
        for (;;) {
          auto cand = gen.op({3, 3, true}, 0.1);
          auto c = classify(cand);
          if (c.bounded && c.topologically_injective) {
            mono = cand;
            break;
          }
        }
        for (;;) {
          auto cand = gen.op({3, 3, true}, 0.1);
          auto c = classify(cand);
          if (c.bounded && c.topologically_surjective) {
            epi = cand;
            break;
          }
        }
      }
      const bool contractive = mode == CertificateMode::extreme;
      try {
        for (const auto& cert : {certify_injectivity(mono, gen.phi_from(mono, contractive), mode, 100, k),
                                 certify_projectivity(epi, gen.phi_into(epi, contractive), mode, 100, k)}) {
          worst_res = std::max({worst_res, cert.retraction_residual, cert.lift_residual});
          check.require(cert.retraction_residual <= 1e-12 && cert.lift_residual <= 1e-12,
                        to_string(mode) + " " + cert.kind + " residual too large");
          if (strict) {
            const double gap = std::abs(cert.psi_norm - cert.phi_norm) / std::max(1.0, cert.phi_norm);
            worst_norm = std::max(worst_norm, gap);
            check.require(gap <= 1e-12, to_string(mode) + " " + cert.kind + " norm gap " + str(gap));
          }
          ++built;
        }
      } catch (const std::exception& e) {
        check.require(false, to_string(mode) + ": " + e.what());
      }
    }
  }
  return check.done(std::to_string(built) + " certificates over 3 modes, worst residual " + str(worst_res) +
                    ", worst |psi|-|phi| gap " + str(worst_norm));
}

Outcome density_conjugation() {
  Check check;
  Gen gen(9009);
  for (int k = 0; k < 100; ++k) {
    const auto op = gen.op({3, 3, true});
    const auto rho = gen.positive(op.skeleton(), 0.25, 4.0);
    auto g = op.g;
    for (auto piece : pieces(*op.skeleton()))
      g.set(piece, op.g.value(piece) * std::pow(rho.value(piece).real(), op.p.reciprocal()));
    const auto a = classify(op);
    const auto b = classify({g, op.p, op.q, density_times(rho, op.mu), op.nu});
    const bool same = a.bounded == b.bounded && a.injective == b.injective &&
                      a.topologically_injective == b.topologically_injective && a.isometric == b.isometric &&
                      a.topologically_surjective == b.topologically_surjective && a.coisometric == b.coisometric &&
                      a.strictly_coisometric == b.strictly_coisometric && a.isomorphism == b.isomorphism &&
                      a.isometric_isomorphism == b.isometric_isomorphism;
    check.require(same, "verdicts change in case " + std::to_string(k));
    check.require(near_rel(a.operator_norm, b.operator_norm, 1e-12) &&
                      near_rel(a.lower_constant, b.lower_constant, 1e-12) &&
                      near_rel(a.surjectivity_constant, b.surjectivity_constant, 1e-12),
                  "constants change in case " + std::to_string(k));
  }
  return check.done("100 cases, all verdicts and constants invariant");
}

Outcome boundedness_gate() {
  Check check;
  Gen gen(1010);
  double smallest_peak = INFINITY;
  for (int k = 0; k < 20; ++k) {
    auto sk = gen.skeleton({2, 3, true});
    if (sk->cells.empty()) sk = make_skeleton(sk->atoms, {{"c0", gen.uniform(0.25, 2.0)}}, sk->tail_present);
    auto mu = gen.measure(sk, 0.2), nu = gen.measure(sk, 0.2);
    mu.cell_density[0] = gen.uniform(0.5, 3.0);
    nu.cell_density[0] = gen.uniform(0.5, 3.0);
    auto g = gen.function(sk);
    g.cell_value[0] = gen.complex();
    PExponent p = gen.exponent(), q = gen.exponent();
    while (!(p < q)) p = gen.exponent(), q = gen.exponent();
    const MultiplicationOperator op{g, p, q, mu, nu};
    const auto c = classify(op);
    check.require(!c.bounded && !c.hom.is_morphism, "case " + std::to_string(k) + " reported bounded");
    const auto probes = indicator_sequence(op, 0, 30);
    for (std::size_t n = 1; n < probes.size(); ++n)
      check.require(probes[n].ratio > probes[n - 1].ratio, "probe ratios not increasing in case " + std::to_string(k));
    // The growth rate is t^{1/q-1/p}: each halving multiplies the ratio by 2^{1/p-1/q} > 1.
    const double peak = probes.back().ratio / probes.front().ratio;
    const double expect = std::pow(2.0, 30.0 * (p.reciprocal() - q.reciprocal()));
    check.require(near_rel(peak, expect, 1e-9), "growth " + str(peak) + " vs " + str(expect));
    const auto est = sample_ratio_extremes(op, 200, k);
    check.require(est.max_ratio >= probes.back().ratio * (1 - 1e-12), "sampler misses the shrinking sets");
    smallest_peak = std::min(smallest_peak, peak);
  }
  return check.done("20 p<q operators with nonatomic support unbounded and non-morphism; ratios on sets of measure "
                    "2^-n (n<=30) grow by at least " + str(smallest_peak) + "x");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"isometry reproduction", isometry_reproduction},
      {"oracle equivalence", oracle_equivalence},
      {"one-sided inverses", inverse_theorems},
      {"Lebesgue decomposition", lebesgue_decomposition},
      {"decomposition law", decomposition_law},
      {"Pitt degradation", pitt_degradation_check},
      {"hom-norm vs operator norm", hom_norm_vs_oracle},
      {"certificates", certificates},
      {"change-of-density conjugation", density_conjugation},
      {"boundedness gate", boundedness_gate},
  };
  int failed = 0;
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !out.pass;
    std::printf("%s %2zu %s: %s (%.2fs)\n", out.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                out.detail.c_str(), secs);
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d of %zu criteria passed in %.2fs\n", static_cast<int>(criteria.size()) - failed, criteria.size(),
              total);
  return failed == 0 ? 0 : 1;
}
