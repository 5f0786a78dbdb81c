// Command-line front end: reads a JSON problem file and writes a JSON report.
// Exit codes: 0 success, 1 internal failure, 2 invalid input, 3 unmet
// precondition (the report carries the witness).

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "lpmult/classifier.hpp"
#include "lpmult/errors.hpp"
#include "lpmult/hom_module.hpp"
#include "lpmult/json_io.hpp"
#include "lpmult/oracle.hpp"

using namespace lpmult;

namespace {

struct Options {
  std::string file, output;
  std::string nu, mu, op, side = "left", kind, admissible, phi, mode = "relative";
  std::string p = "1", q = "2";
  std::size_t samples = 100, max_n = 16;
  std::uint64_t seed = 1;
  bool text = false;
};

PExponent exponent_arg(const std::string& s) {
  if (s == "inf") return PExponent::infinity();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw ModelError("exponent '" + s + "' is neither a number nor \"inf\"");
  return PExponent::from_value(v);
}

void emit(const Options& o, const std::string& text) {
  if (o.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.output, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + o.output + "'");
  out << text;
}

void emit_report(const Options& o, const Json& report) {
  const auto violations = validate_report(report);
  if (!violations.empty()) throw std::runtime_error("report violates its schema: " + violations.front());
  emit(o, dump_report(report));
}

Json error_report(const std::string& command, const std::string& kind, const std::string& message,
                  const std::string* witness = nullptr) {
  Json err{{"kind", kind}, {"message", message}};
  if (witness) err["witness"] = *witness;
  return {{"command", command}, {"error", err}};
}

Json run_decompose(const Options& o) {
  const auto pb = load_problem(o.file);
  const auto d = lebesgue_decompose(pb.measure(o.nu), pb.measure(o.mu));
  return {{"command", "decompose"}, {"nu", o.nu}, {"mu", o.mu}, {"skeleton", to_json(*pb.skeleton)},
          {"decomposition", to_json(d)}};
}

Json run_classify(const Options& o) {
  const auto pb = load_problem(o.file);
  const auto op = pb.op(o.op);
  return {{"command", "classify"},
          {"operator", o.op},
          {"p", exponent_to_json(op.p)},
          {"q", exponent_to_json(op.q)},
          {"classification", to_json(classify(op))}};
}

Json run_invert(const Options& o) {
  const auto pb = load_problem(o.file);
  const auto op = pb.op(o.op);
  if (o.side != "left" && o.side != "right") throw ModelError("--side must be left or right");
  const bool left = o.side == "left";
  const auto inv = left ? construct_left_inverse(op) : construct_right_inverse(op);
  std::mt19937_64 rng(o.seed);
  double residual = 0.0;
  for (std::size_t k = 0; k < o.samples; ++k) {
    const auto f = canonical(random_function(op.skeleton(), rng), left ? op.mu : op.nu);
    const double nf = left ? lp_norm(f, op.p, op.mu) : lp_norm(f, op.q, op.nu);
    if (!(nf > 0.0)) continue;
    const double gap = left ? lp_norm(apply(inv, apply(op, f)) - f, op.p, op.mu)
                            : lp_norm(apply(op, apply(inv, f)) - f, op.q, op.nu);
    residual = std::max(residual, gap / nf);
  }
  return {{"command", "invert"},
          {"operator", o.op},
          {"side", o.side},
          {"inverse", to_json(inv)},
          {"round_trip_residual", number_to_json(residual)},
          {"samples", o.samples},
          {"seed", o.seed},
          {"inverse_classification", to_json(classify(inv))}};
}

Json run_hom_norm(const Options& o) {
  const auto pb = load_problem(o.file);
  return {{"command", "hom-norm"}, {"operator", o.op}, {"hom", to_json(hom_norm(pb.op(o.op)))}};
}

Json run_certify(const Options& o) {
  const auto pb = load_problem(o.file);
  const auto mode = certificate_mode(o.mode);
  const auto adm = pb.op(o.admissible);
  const auto phi = pb.op(o.phi);
  RetractionCertificate cert = [&] {
    if (o.kind == "injective") return certify_injectivity(adm, phi, mode, o.samples, o.seed);
    if (o.kind == "projective") return certify_projectivity(adm, phi, mode, o.samples, o.seed);
    throw ModelError("certificate kind must be injective or projective");
  }();
  return {{"command", "certify"}, {"kind", o.kind},  {"mode", o.mode},
          {"admissible", o.admissible}, {"phi", o.phi}, {"certificate", to_json(cert)}};
}

Json run_verify(const Options& o) {
  const auto pb = load_problem(o.file);
  const auto op = pb.op(o.op);
  const auto c = classify(op);
  const auto est = sample_ratio_extremes(op, o.samples, o.seed);
  const double slack = 1e-9;
  const bool consistent =
      est.evaluated == 0 || (est.min_ratio >= c.lower_constant * (1 - slack) - slack || !c.topologically_injective) &&
                                (est.max_ratio <= c.operator_norm * (1 + slack) + slack);
  return {{"command", "verify"},
          {"operator", o.op},
          {"estimate", to_json(est)},
          {"bracket",
           {{"operator_norm", number_to_json(c.operator_norm)},
            {"lower_constant", number_to_json(c.lower_constant)},
            {"consistent", consistent}}}};
}

Json run_pitt(const Options& o) {
  const auto p = exponent_arg(o.p), q = exponent_arg(o.q);
  if (o.max_n == 0) throw ModelError("--max-n must be positive");
  std::vector<std::size_t> ns;
  for (std::size_t n = 1; n <= o.max_n; ++n) ns.push_back(n);
  const auto cs = pitt_degradation(
      ns, p, q, [](std::size_t, std::size_t) { return 1.0; }, [](std::size_t, std::size_t) { return Complex(1.0); });
  Json table = Json::array();
  for (std::size_t k = 0; k < ns.size(); ++k) table.push_back(Json::array({ns[k], number_to_json(cs[k])}));
  return {{"command", "pitt-demo"}, {"p", exponent_to_json(p)}, {"q", exponent_to_json(q)}, {"table", table}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiplication operators between L_p spaces of presented measure spaces"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--output", o.output, "write the report to this path instead of standard output");

  auto* dec = app.add_subcommand("decompose", "Lebesgue decomposition of NU with respect to MU");
  dec->add_option("file", o.file)->required();
  dec->add_option("nu", o.nu)->required();
  dec->add_option("mu", o.mu)->required();

  auto* cls = app.add_subcommand("classify", "classify an operator");
  cls->add_option("file", o.file)->required();
  cls->add_option("operator", o.op)->required();

  auto* inv = app.add_subcommand("invert", "construct a one-sided inverse");
  inv->add_option("file", o.file)->required();
  inv->add_option("operator", o.op)->required();
  inv->add_option("--side", o.side)->check(CLI::IsMember({"left", "right"}));
  inv->add_option("--samples", o.samples, "random functions for the round-trip check");
  inv->add_option("--seed", o.seed);

  auto* hom = app.add_subcommand("hom-norm", "morphism-space membership and norm of the symbol");
  hom->add_option("file", o.file)->required();
  hom->add_option("operator", o.op)->required();

  auto* cert = app.add_subcommand("certify", "retraction certificate for injectivity or projectivity");
  cert->add_option("file", o.file)->required();
  cert->add_option("kind", o.kind)->required()->check(CLI::IsMember({"injective", "projective"}));
  cert->add_option("admissible", o.admissible, "admissible mono (injective) or epi (projective)")->required();
  cert->add_option("phi", o.phi)->required();
  cert->add_option("--mode", o.mode)->check(CLI::IsMember({"relative", "metric", "extreme"}));
  cert->add_option("--samples", o.samples);
  cert->add_option("--seed", o.seed);

  auto* ver = app.add_subcommand("verify", "sample ratio extremes and compare with the classification");
  ver->add_option("file", o.file)->required();
  ver->add_option("operator", o.op)->required();
  ver->add_option("--samples", o.samples);
  ver->add_option("--seed", o.seed);

  auto* pitt = app.add_subcommand("pitt-demo", "lower constants on n uniform atoms, n = 1..max-n");
  pitt->add_option("--p", o.p, "number or inf")->required();
  pitt->add_option("--q", o.q, "number or inf")->required();
  pitt->add_option("--max-n", o.max_n);
  pitt->add_flag("--text", o.text, "print a two-column table instead of JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const auto* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  try {
    Json report;
    if (sub == dec) report = run_decompose(o);
    if (sub == cls) report = run_classify(o);
    if (sub == inv) report = run_invert(o);
    if (sub == hom) report = run_hom_norm(o);
    if (sub == cert) report = run_certify(o);
    if (sub == ver) report = run_verify(o);
    if (sub == pitt) {
      report = run_pitt(o);
      if (o.text) {
        std::ostringstream out;
        out.precision(17);
        out << "n constant\n";
        for (const auto& row : report["table"]) out << row[0].get<std::size_t>() << ' ' << json_to_number(row[1]) << '\n';
        emit(o, out.str());
        return 0;
      }
    }
    emit_report(o, report);
    return 0;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << "\n  witness: " << e.witness() << '\n';
    try {
      emit_report(o, error_report(command, "precondition", e.what(), &e.witness()));
    } catch (const std::exception& inner) {
      std::cerr << "error: " << inner.what() << '\n';
      return 1;
    }
    return 3;
  } catch (const ModelError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    try {
      emit_report(o, error_report(command, "validation", e.what()));
    } catch (const std::exception& inner) {
      std::cerr << "error: " << inner.what() << '\n';
      return 1;
    }
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
