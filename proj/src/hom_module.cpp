#include "lpmult/hom_module.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lpmult/decomposition.hpp"
#include "lpmult/errors.hpp"
#include "weights.hpp"

namespace lpmult {

SimpleFunction module_action(const SimpleFunction& b, const SimpleFunction& f) { return b * f; }

std::string to_string(Regime r) {
  switch (r) {
    case Regime::p_greater_q:
      return "p>q";
    case Regime::p_equal_q:
      return "p=q";
    case Regime::p_less_q:
      break;
  }
  return "p<q";
}

HomNormReport hom_norm(const SimpleFunction& g, PExponent p, PExponent q, const Measure& mu, const Measure& nu) {
  return hom_norm(MultiplicationOperator{g, p, q, mu, nu});
}

HomNormReport hom_norm(const MultiplicationOperator& op) {
  const auto fwd = lebesgue_decompose(op.nu, op.mu);
  const auto weights = detail::source_weights(op, fwd);
  const auto& sk = *op.skeleton();
  const PExponent p = op.p, q = op.q;

  HomNormReport rep;
  rep.regime = p > q ? Regime::p_greater_q : (p == q ? Regime::p_equal_q : Regime::p_less_q);
  rep.derived = rep.regime == Regime::p_less_q;

  std::vector<PieceRef> violations;
  for (const auto& w : weights) {
    if (w.g_zero) continue;
    if (w.other_null || (rep.regime == Regime::p_less_q && w.piece.kind == PieceKind::cell))
      violations.push_back(w.piece);
  }

  switch (rep.regime) {
    case Regime::p_equal_q:
      for (const auto& w : weights) rep.norm = std::max(rep.norm, w.h);
      break;
    case Regime::p_greater_q: {
      const double r = 1.0 / (q.reciprocal() - p.reciprocal());
      double sum = 0.0;
      for (const auto& w : weights) sum += std::pow(w.h, r) * w.mass;
      rep.norm = std::pow(sum, 1.0 / r);
      break;
    }
    case Regime::p_less_q:
      for (const auto& w : weights) {
        if (w.h == 0.0) continue;
        if (w.piece.kind != PieceKind::atom) {
          rep.norm = std::numeric_limits<double>::infinity();
          break;
        }
        rep.norm = std::max(rep.norm, detail::atom_entry(w, p, q));
      }
      break;
  }
  if (!violations.empty()) rep.support_violation = Region::of(sk, violations);
  rep.is_morphism = std::isfinite(rep.norm) && violations.empty();
  return rep;
}

std::string to_string(CertificateMode m) {
  switch (m) {
    case CertificateMode::relative:
      return "relative";
    case CertificateMode::metric:
      return "metric";
    case CertificateMode::extreme:
      break;
  }
  return "extreme";
}

CertificateMode certificate_mode(const std::string& name) {
  if (name == "relative") return CertificateMode::relative;
  if (name == "metric") return CertificateMode::metric;
  if (name == "extreme") return CertificateMode::extreme;
  throw ModelError("unknown certificate mode '" + name + "' (expected relative, metric or extreme)");
}

}  // namespace lpmult
