#include <algorithm>
#include <cmath>
#include <random>

#include "lpmult/classifier.hpp"
#include "lpmult/errors.hpp"
#include "lpmult/hom_module.hpp"
#include "lpmult/oracle.hpp"
#include "weights.hpp"

namespace lpmult {

namespace {

double bounded_norm(const MultiplicationOperator& phi, CertificateMode mode) {
  const double n = hom_norm(phi).norm;
  if (!std::isfinite(n)) throw PreconditionError("phi must be bounded", "operator norm of phi is infinite");
  if (mode == CertificateMode::extreme && n > 1.0 + detail::kVerdictTolerance)
    throw PreconditionError("extreme mode needs a contractive phi", "operator norm of phi is " + std::to_string(n));
  return n;
}

void require_admissible(const Classification& c, CertificateMode mode, bool mono) {
  const char* property = mono ? (mode == CertificateMode::relative ? "topologically_injective" : "isometric")
                              : (mode == CertificateMode::relative ? "topologically_surjective" : "coisometric");
  const auto* w = c.witness(property);
  if (w->verdict) return;
  std::string text = std::string(property) + " fails";
  if (!w->piece.empty()) text += " at " + w->piece;
  if (!w->recipe.empty()) text += ": " + w->recipe;
  throw PreconditionError(std::string(mono ? "admissible monomorphism" : "admissible epimorphism") +
                              " must be " + property + " in " + to_string(mode) + " mode",
                          text);
}

double relative_gap(const SimpleFunction& a, const SimpleFunction& b, PExponent p, const Measure& m, double scale) {
  return lp_norm(a - b, p, m) / scale;
}

}  // namespace

RetractionCertificate certify_injectivity(const MultiplicationOperator& i, const MultiplicationOperator& phi,
                                          CertificateMode mode, std::size_t samples, std::uint64_t seed) {
  if (!(phi.p == i.p) || !same_measure(phi.mu, i.mu))
    throw ModelError("certify_injectivity: phi must start from the source space of i");
  require_admissible(classify(i), mode, true);
  const double phi_norm = bounded_norm(phi, mode);

  auto pi = construct_left_inverse(i);
  auto psi = compose(phi, pi);
  RetractionCertificate cert{"injectivity", mode, i, pi, psi, hom_norm(psi).norm, phi_norm, 0.0, 0.0, 0};

  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < samples; ++k) {
    const auto f = canonical(random_function(i.skeleton(), rng), i.mu);
    const double nf = lp_norm(f, i.p, i.mu);
    if (!(nf > 0.0)) continue;
    const auto image = apply(i, f);
    cert.retraction_residual =
        std::max(cert.retraction_residual, relative_gap(apply(pi, image), f, i.p, i.mu, nf));
    cert.lift_residual = std::max(cert.lift_residual, relative_gap(apply(psi, image), apply(phi, f), phi.q, phi.nu,
                                                                   nf * std::max(1.0, phi_norm)));
    ++cert.samples;
  }
  return cert;
}

RetractionCertificate certify_projectivity(const MultiplicationOperator& pi, const MultiplicationOperator& phi,
                                           CertificateMode mode, std::size_t samples, std::uint64_t seed) {
  if (!(phi.q == pi.q) || !same_measure(phi.nu, pi.nu))
    throw ModelError("certify_projectivity: phi must land in the target space of pi");
  require_admissible(classify(pi), mode, false);
  const double phi_norm = bounded_norm(phi, mode);

  auto i = construct_right_inverse(pi);
  auto psi = compose(i, phi);
  RetractionCertificate cert{"projectivity", mode, pi, i, psi, hom_norm(psi).norm, phi_norm, 0.0, 0.0, 0};

  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < samples; ++k) {
    const auto h = canonical(random_function(pi.skeleton(), rng), pi.nu);
    const auto f = canonical(random_function(phi.skeleton(), rng), phi.mu);
    const double nh = lp_norm(h, pi.q, pi.nu);
    const double nf = lp_norm(f, phi.p, phi.mu);
    if (nh > 0.0)
      cert.retraction_residual =
          std::max(cert.retraction_residual, relative_gap(apply(pi, apply(i, h)), h, pi.q, pi.nu, nh));
    if (nf > 0.0)
      cert.lift_residual = std::max(cert.lift_residual, relative_gap(apply(pi, apply(psi, f)), apply(phi, f), pi.q,
                                                                     pi.nu, nf * std::max(1.0, phi_norm)));
    if (nh > 0.0 || nf > 0.0) ++cert.samples;
  }
  return cert;
}

}  // namespace lpmult
