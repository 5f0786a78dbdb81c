#include "lpmult/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <sstream>
#include <thread>

#include "lpmult/errors.hpp"

namespace lpmult {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kChunk = 256;

// 1/(1/a - 1/b) for exponents with 1/a > 1/b.
double conjugate_gap(PExponent a, PExponent b) { return 1.0 / (a.reciprocal() - b.reciprocal()); }

struct Tracker {
  double min = kInf;
  double max = -kInf;
  std::string argmin, argmax;
  std::size_t evaluated = 0;

  template <class Recipe>
  void offer(double r, Recipe&& recipe) {
    if (std::isnan(r)) return;
    ++evaluated;
    if (r < min) {
      min = r;
      argmin = recipe();
    }
    if (r > max) {
      max = r;
      argmax = recipe();
    }
  }

  void merge(const Tracker& other) {
    evaluated += other.evaluated;
    if (other.min < min) {
      min = other.min;
      argmin = other.argmin;
    }
    if (other.max > max) {
      max = other.max;
      argmax = other.argmax;
    }
  }
};

// f is an L_p(mu) class, so its values on mu-null pieces must not reach nu.
double ratio_of(const MultiplicationOperator& op, const SimpleFunction& raw) {
  const auto f = canonical(raw, op.mu);
  const double nf = lp_norm(f, op.p, op.mu);
  if (!(nf > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return lp_norm(apply(op, f), op.q, op.nu) / nf;
}

PieceRef region_cell(const SpaceSkeleton& sk, const Region& region) {
  if (region.cells.size() != 1) throw ModelError("probe: split produced an unexpected region");
  return {PieceKind::cell, *sk.cell_index(*region.cells.begin())};
}

std::string fmt(double x) {
  std::ostringstream out;
  out.precision(17);
  out << x;
  return out.str();
}

}  // namespace

double diagonal_operator_norm(const std::vector<Complex>& d, PExponent p, PExponent q) {
  if (p <= q) {
    double m = 0.0;
    for (auto v : d) m = std::max(m, std::abs(v));
    return m;
  }
  const double r = conjugate_gap(q, p);
  double sum = 0.0;
  for (auto v : d) sum += std::pow(std::abs(v), r);
  return std::pow(sum, 1.0 / r);
}

double diagonal_lower_bound(const std::vector<Complex>& d, PExponent p, PExponent q) {
  if (d.empty()) return kInf;
  if (p >= q) {
    double m = kInf;
    for (auto v : d) m = std::min(m, std::abs(v));
    return m;
  }
  const double s = conjugate_gap(p, q);
  double sum = 0.0;
  for (auto v : d) {
    if (v == Complex(0.0)) return 0.0;
    sum += std::pow(std::abs(v), -s);
  }
  return std::pow(sum, -1.0 / s);
}

SimpleFunction random_function(const SkeletonPtr& skeleton, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  auto f = SimpleFunction::zero(skeleton);
  for (auto piece : pieces(*skeleton)) {
    const double re = normal(rng);
    f.set(piece, Complex(re, normal(rng)));
  }
  return f;
}

std::vector<IndicatorProbe> indicator_sequence(const MultiplicationOperator& op, std::size_t cell, int max_n) {
  const auto& sk = *op.skeleton();
  const double mass = op.mu.cell_mass(cell);
  if (!(mass > 0.0)) throw ModelError("indicator_sequence: cell '" + sk.cells.at(cell).id + "' is mu-null");
  std::vector<IndicatorProbe> out;
  for (int n = 0; n <= max_n; ++n) {
    const double t = std::ldexp(std::min(1.0, mass), -n);
    const auto split = split_cell(op.mu, sk.cells[cell].id, t);
    const MultiplicationOperator refined{transport(op.g, split.map), op.p, op.q, split.measure,
                                         transport(op.nu, split.map)};
    const auto f = SimpleFunction::indicator(split.map.to, {region_cell(*split.map.to, split.piece)});
    out.push_back({n, t, ratio_of(refined, f)});
  }
  return out;
}

std::vector<IndicatorProbe> preimage_sequence(const MultiplicationOperator& op, std::size_t cell, int max_n) {
  const auto& sk = *op.skeleton();
  const double mass = op.nu.cell_mass(cell);
  const auto g = op.g.cell_value.at(cell);
  if (!(mass > 0.0) || !(op.mu.cell_density[cell] > 0.0) || g == Complex(0.0))
    throw ModelError("preimage_sequence: cell '" + sk.cells[cell].id +
                     "' needs positive mass under both measures and a nonzero symbol");
  std::vector<IndicatorProbe> out;
  for (int n = 0; n <= max_n; ++n) {
    const double t = std::ldexp(std::min(1.0, mass), -n);
    const auto split = split_cell(op.nu, sk.cells[cell].id, t);
    const auto mu = transport(op.mu, split.map);
    const auto target = SimpleFunction::indicator(split.map.to, {region_cell(*split.map.to, split.piece)});
    const auto preimage = (1.0 / g) * target;
    out.push_back({n, t, lp_norm(preimage, op.p, mu) / lp_norm(target, op.q, split.measure)});
  }
  return out;
}

RatioEstimate sample_ratio_extremes(const MultiplicationOperator& op, std::size_t samples, std::uint64_t seed) {
  RatioEstimate est;
  est.samples = samples;
  est.seed = seed;
  const auto& sk = *op.skeleton();
  const auto support = op.mu.support();
  if (support.empty()) return est;

  Tracker track;

  // Piece indicators; their ratios are the diagonal of the operator restricted
  // to functions constant on pieces.
  std::vector<double> d, mass;
  for (auto piece : support) {
    const double r = ratio_of(op, SimpleFunction::indicator(op.skeleton(), {piece}));
    d.push_back(r);
    mass.push_back(op.mu.mass(piece));
    track.offer(r, [&] { return "indicator(" + piece_id(sk, piece) + ")"; });
  }

  // Coordinates x_k = a_k mass_k^{1/p} turn piece-constant functions into ell_p^n.
  auto from_coordinates = [&](const std::vector<double>& x) {
    auto f = SimpleFunction::zero(op.skeleton());
    for (std::size_t k = 0; k < support.size(); ++k)
      f.set(support[k], x[k] * std::pow(mass[k], -op.p.reciprocal()));
    return f;
  };
  std::vector<double> x(support.size(), 1.0);
  track.offer(ratio_of(op, from_coordinates(x)), [] { return std::string("flat coordinates"); });
  track.offer(ratio_of(op, SimpleFunction::constant(op.skeleton(), 1.0)), [] { return std::string("constant 1"); });
  if (op.p > op.q) {
    const double r = conjugate_gap(op.q, op.p);
    for (std::size_t k = 0; k < x.size(); ++k) x[k] = op.p.is_infinite() ? 1.0 : std::pow(d[k], r / op.p.value());
    track.offer(ratio_of(op, from_coordinates(x)), [] { return std::string("hoelder norm extremizer |x_k| ~ d_k^(r/p)"); });
  }
  if (op.p < op.q && std::all_of(d.begin(), d.end(), [](double v) { return v > 0.0; })) {
    const double s = conjugate_gap(op.p, op.q);
    for (std::size_t k = 0; k < x.size(); ++k) x[k] = std::pow(d[k], -s * op.p.reciprocal());
    track.offer(ratio_of(op, from_coordinates(x)), [] { return std::string("hoelder lower extremizer |x_k| ~ d_k^(-s/p)"); });
  }

  // Random functions in fixed-size chunks with per-chunk seeds.
  const std::size_t chunks = (samples + kChunk - 1) / kChunk;
  auto run_chunk = [&](std::size_t c) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(c)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::acos(-1.0));
    std::bernoulli_distribution coin(0.5);
    Tracker local;
    const std::size_t begin = c * kChunk, end = std::min(samples, begin + kChunk);
    for (std::size_t i = begin; i < end; ++i) {
      auto f = SimpleFunction::zero(op.skeleton());
      const int pattern = static_cast<int>(i % 4);
      const bool flat = pattern == 3 || (op.p.is_infinite() && pattern == 1);
      const bool sparse = pattern >= 2;
      std::uniform_int_distribution<std::size_t> pick(0, support.size() - 1);
      const std::size_t forced = pick(rng);
      for (std::size_t k = 0; k < support.size(); ++k) {
        if (sparse && k != forced && coin(rng)) continue;
        if (flat)
          f.set(support[k], std::polar(1.0, phase(rng)));
        else {
          const double re = normal(rng);
          f.set(support[k], Complex(re, normal(rng)));
        }
      }
      local.offer(ratio_of(op, f), [&] {
        static constexpr const char* kNames[] = {"gaussian", "gaussian", "sparse", "flat-phase"};
        return "random(seed=" + std::to_string(seed) + ", index=" + std::to_string(i) +
               ", pattern=" + (flat ? std::string("flat-phase") : std::string(kNames[pattern])) + ")";
      });
    }
    return local;
  };

  std::vector<Tracker> results(chunks);
  const std::size_t workers = std::min<std::size_t>(chunks, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) results[c] = run_chunk(c);
  } else {
    std::vector<std::future<void>> jobs;
    for (std::size_t w = 0; w < workers; ++w)
      jobs.push_back(std::async(std::launch::async, [&, w] {
        for (std::size_t c = w; c < chunks; c += workers) results[c] = run_chunk(c);
      }));
    for (auto& j : jobs) j.get();
  }
  for (const auto& r : results) track.merge(r);

  for (std::size_t i = 0; i < sk.cells.size(); ++i) {
    if (!(op.mu.cell_mass(i) > 0.0)) continue;
    for (const auto& probe : indicator_sequence(op, i))
      track.offer(probe.ratio, [&] {
        return "indicator of a sub-cell of " + sk.cells[i].id + " with mu-mass " + fmt(probe.t) +
               " (n=" + std::to_string(probe.n) + ")";
      });
  }

  est.min_ratio = track.min;
  est.max_ratio = track.max;
  est.argmin = track.argmin;
  est.argmax = track.argmax;
  est.evaluated = track.evaluated;
  return est;
}

std::vector<double> pitt_degradation(const std::vector<std::size_t>& n_list, PExponent p, PExponent q,
                                     const MassRule& mass_rule, const SymbolRule& g_rule) {
  if (p == q) throw ModelError("pitt_degradation: exponents coincide, there is nothing to degrade");
  std::vector<double> out;
  for (auto n : n_list) {
    if (n == 0) throw ModelError("pitt_degradation: atom counts must be positive");
    std::vector<std::string> ids;
    for (std::size_t k = 0; k < n; ++k) ids.push_back("a" + std::to_string(k));
    auto sk = make_skeleton(std::move(ids), {});
    auto mu = Measure::zero(sk);
    auto g = SimpleFunction::zero(sk);
    for (std::size_t k = 0; k < n; ++k) {
      mu.atom_mass[k] = mass_rule(k, n);
      g.atom_value[k] = g_rule(k, n);
    }
    const MultiplicationOperator op{g, p, q, mu, mu};
    out.push_back(diagonal_lower_bound(reduce_diagonal(op).entries, p, q));
  }
  return out;
}

}  // namespace lpmult
