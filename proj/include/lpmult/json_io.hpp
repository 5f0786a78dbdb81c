#pragma once

// Problem files and JSON reports. The formats are documented in
// docs/schema.md; parse errors carry a line/column or a JSON pointer.

#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "lpmult/classifier.hpp"
#include "lpmult/decomposition.hpp"
#include "lpmult/hom_module.hpp"
#include "lpmult/oracle.hpp"

namespace lpmult {

using Json = nlohmann::ordered_json;

struct OperatorSpec {
  std::string g, mu, nu;
  PExponent p = PExponent::finite(1.0);
  PExponent q = PExponent::finite(1.0);
};

struct Problem {
  SkeletonPtr skeleton;
  std::map<std::string, Measure> measures;
  std::map<std::string, SimpleFunction> functions;
  std::map<std::string, OperatorSpec> operators;

  const Measure& measure(const std::string& name) const;
  const SimpleFunction& function(const std::string& name) const;
  MultiplicationOperator op(const std::string& name) const;
};

/// Throws ModelError with a location on malformed or invalid input.
Problem parse_problem(const std::string& text);
Problem load_problem(const std::string& path);

Json number_to_json(double x);
double json_to_number(const Json& j);  // accepts numbers and "inf"/"-inf"
Json exponent_to_json(PExponent p);

Json to_json(const SpaceSkeleton& sk);
Json to_json(const Measure& m);
Json to_json(const SimpleFunction& f);
Json to_json(const Region& r);
Json to_json(const LebesgueDecomposition& d);
Json to_json(const MultiplicationOperator& op);
Json to_json(const HomNormReport& r);
Json to_json(const Witness& w);
Json to_json(const Classification& c);
Json to_json(const RatioEstimate& e);
Json to_json(const RetractionCertificate& c);

/// Structural check of an emitted report against docs/schema.md; returns the
/// list of violations (empty when the report conforms).
std::vector<std::string> validate_report(const Json& report);

/// Two-space indented dump with a trailing newline.
std::string dump_report(const Json& report);

}  // namespace lpmult
