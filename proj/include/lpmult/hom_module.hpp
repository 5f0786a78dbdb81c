#pragma once

// L_p spaces as modules over the bounded measurable functions: the module
// action, membership of a symbol in the morphism space with its norm, and
// retraction certificates for injectivity and projectivity.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "lpmult/lp_space.hpp"
#include "lpmult/measure_model.hpp"
#include "lpmult/operator.hpp"

namespace lpmult {

/// Pointwise b f.
SimpleFunction module_action(const SimpleFunction& b, const SimpleFunction& f);

enum class Regime { p_greater_q, p_equal_q, p_less_q };
std::string to_string(Regime r);

struct HomNormReport {
  bool is_morphism = false;
  double norm = 0.0;  // operator norm of M_g, +inf when unbounded
  Regime regime = Regime::p_equal_q;
  std::optional<Region> support_violation;
  /// The p < q norm is the derived sup over atoms of |g| rho^{1/q} m^{1/q-1/p}.
  bool derived = false;
};

/// p > q: ||g rho^{1/q}||_{L_r(mu)}, 1/r = 1/q - 1/p, which is the norm of g in
/// L_{pq/(p-q)}(rho^{p/(p-q)} mu); p = q: ess sup |g| rho^{1/p};
/// p < q: +inf unless g rho vanishes on the nonatomic part and on the tail,
/// then the sup over atoms above. The support condition asks g = 0 on the
/// mu-positive pieces off Omega_+ (and, for p < q, also off the atoms).
HomNormReport hom_norm(const SimpleFunction& g, PExponent p, PExponent q, const Measure& mu, const Measure& nu);
HomNormReport hom_norm(const MultiplicationOperator& op);

enum class CertificateMode { relative, metric, extreme };
std::string to_string(CertificateMode m);
CertificateMode certificate_mode(const std::string& name);

struct RetractionCertificate {
  std::string kind;  // "injectivity" or "projectivity"
  CertificateMode mode = CertificateMode::relative;
  MultiplicationOperator admissible;  // i for injectivity, pi for projectivity
  MultiplicationOperator companion;   // the constructed pi or i
  MultiplicationOperator extension;   // psi
  double psi_norm = 0.0;
  double phi_norm = 0.0;
  double retraction_residual = 0.0;  // max relative defect of pi o i = 1
  double lift_residual = 0.0;        // max relative defect of psi o i = phi (pi o psi = phi)
  std::size_t samples = 0;
};

/// i: L_p(mu) -> L_q(nu) admissible mono, phi: L_p(mu) -> I. Builds
/// pi = left inverse of i and psi = phi o pi. Relative mode needs i bounded
/// below; metric and extreme modes need i isometric, extreme mode also a
/// contractive phi. Throws PreconditionError carrying the witness.
RetractionCertificate certify_injectivity(const MultiplicationOperator& i, const MultiplicationOperator& phi,
                                          CertificateMode mode, std::size_t samples = 100,
                                          std::uint64_t seed = 1);

/// pi: L_p(mu) -> L_q(nu) admissible epi, phi: P -> L_q(nu). Builds
/// i = right inverse of pi and psi = i o phi.
RetractionCertificate certify_projectivity(const MultiplicationOperator& pi, const MultiplicationOperator& phi,
                                           CertificateMode mode, std::size_t samples = 100,
                                           std::uint64_t seed = 1);

}  // namespace lpmult
