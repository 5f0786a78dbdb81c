#include "lpmult/json_io.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "lpmult/errors.hpp"
#include "lpmult/refinement.hpp"

namespace lpmult {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void fail(const std::string& where, const std::string& msg) {
  throw ModelError("at " + (where.empty() ? std::string("/") : where) + ": " + msg);
}

std::string child(const std::string& path, const std::string& key) {
  // JSON pointer escaping of '~' and '/'.
  std::string k;
  for (char ch : key) {
    if (ch == '~')
      k += "~0";
    else if (ch == '/')
      k += "~1";
    else
      k += ch;
  }
  return path + "/" + k;
}

const Json& object_at(const Json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  return j;
}

const Json& field(const Json& obj, const std::string& key, const std::string& path) {
  object_at(obj, path);
  auto it = obj.find(key);
  if (it == obj.end()) fail(path, "missing field '" + key + "'");
  return *it;
}

void allow_only(const Json& obj, std::initializer_list<const char*> keys, const std::string& path) {
  std::set<std::string> allowed(keys.begin(), keys.end());
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.contains(it.key())) fail(child(path, it.key()), "unknown field");
}

double number_at(const Json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  fail(path, "expected a number");
}

std::string string_at(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

Complex complex_at(const Json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (!j.is_array() || j.size() != 2) fail(path, "expected [re, im] or a real number");
  return {number_at(j[0], child(path, "0")), number_at(j[1], child(path, "1"))};
}

PExponent exponent_at(const Json& j, const std::string& path) {
  try {
    return PExponent::from_value(number_at(j, path));
  } catch (const ModelError& e) {
    fail(path, e.what());
  }
}

std::vector<CellSpec> cells_at(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of cells");
  std::vector<CellSpec> cells;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto at = child(path, std::to_string(i));
    allow_only(object_at(j[i], at), {"id", "length"}, at);
    cells.push_back({string_at(field(j[i], "id", at), child(at, "id")),
                     number_at(field(j[i], "length", at), child(at, "length"))});
  }
  return cells;
}

// Field names under which a record stores per-atom, per-cell and tail data.
struct Fields {
  const char* atoms;
  const char* cells;
  const char* tail;
};
constexpr Fields kSkeletonFields{"atoms", "cells", "tail"};
constexpr Fields kMeasureFields{"atom_mass", "cell_density", "tail"};
constexpr Fields kFunctionFields{"atom_value", "cell_value", "tail_value"};

void raise_diagnostics(const std::vector<Diagnostic>& diags, const SpaceSkeleton& sk, const std::string& path,
                       const Fields& fields, bool indexed) {
  if (diags.empty()) return;
  const auto& d = diags.front();
  std::string at = path;
  if (d.piece == kTailId) {
    at = child(path, fields.tail);
  } else if (auto i = sk.cell_index(d.piece)) {
    at = child(child(path, fields.cells), indexed ? std::to_string(*i) : d.piece);
  } else if (auto a = sk.atom_index(d.piece)) {
    at = child(child(path, fields.atoms), indexed ? std::to_string(*a) : d.piece);
  }
  fail(at, d.message);
}

// Every slot of `names` must appear exactly once in the object `j`.
template <class Set>
void fill_map(const Json& j, const std::vector<std::string>& names, const std::string& path, Set&& set) {
  object_at(j, path);
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::find(names.begin(), names.end(), it.key()) == names.end()) fail(child(path, it.key()), "unknown piece");
  for (std::size_t i = 0; i < names.size(); ++i) {
    auto it = j.find(names[i]);
    if (it == j.end()) fail(path, "missing entry for '" + names[i] + "'");
    set(i, *it, child(path, names[i]));
  }
}

std::vector<std::string> cell_ids(const SpaceSkeleton& sk) {
  std::vector<std::string> out;
  for (const auto& c : sk.cells) out.push_back(c.id);
  return out;
}

SkeletonPtr item_skeleton(const Json& j, const SkeletonPtr& base, const std::string& path, bool& overridden) {
  auto it = j.find("cells");
  if (it == j.end()) return base;
  overridden = true;
  auto sk = make_skeleton(base->atoms, cells_at(*it, child(path, "cells")), base->tail_present);
  raise_diagnostics(validate(*sk), *sk, path, kSkeletonFields, true);
  return sk;
}

Measure measure_at(const Json& j, const SkeletonPtr& base, const std::string& path, bool& overridden) {
  allow_only(object_at(j, path), {"atom_mass", "cell_density", "tail", "cells"}, path);
  auto sk = item_skeleton(j, base, path, overridden);
  auto m = Measure::zero(sk);
  fill_map(field(j, "atom_mass", path), sk->atoms, child(path, "atom_mass"),
           [&](std::size_t i, const Json& v, const std::string& at) { m.atom_mass[i] = number_at(v, at); });
  fill_map(field(j, "cell_density", path), cell_ids(*sk), child(path, "cell_density"),
           [&](std::size_t i, const Json& v, const std::string& at) { m.cell_density[i] = number_at(v, at); });
  if (auto it = j.find("tail"); it != j.end()) {
    const auto at = child(path, "tail");
    allow_only(object_at(*it, at), {"c", "r"}, at);
    m.tail = GeometricTail{number_at(field(*it, "c", at), child(at, "c")), number_at(field(*it, "r", at), child(at, "r"))};
  }
  raise_diagnostics(validate(m), *m.skeleton, path, kMeasureFields, false);
  return m;
}

SimpleFunction function_at(const Json& j, const SkeletonPtr& base, const std::string& path, bool& overridden) {
  allow_only(object_at(j, path), {"atom_value", "cell_value", "tail_value", "cells"}, path);
  auto sk = item_skeleton(j, base, path, overridden);
  auto f = SimpleFunction::zero(sk);
  fill_map(field(j, "atom_value", path), sk->atoms, child(path, "atom_value"),
           [&](std::size_t i, const Json& v, const std::string& at) { f.atom_value[i] = complex_at(v, at); });
  fill_map(field(j, "cell_value", path), cell_ids(*sk), child(path, "cell_value"),
           [&](std::size_t i, const Json& v, const std::string& at) { f.cell_value[i] = complex_at(v, at); });
  if (auto it = j.find("tail_value"); it != j.end()) {
    if (!sk->tail_present) fail(child(path, "tail_value"), "skeleton has no tail");
    f.tail_value = complex_at(*it, child(path, "tail_value"));
  } else if (sk->tail_present) {
    fail(path, "missing field 'tail_value' (the skeleton has a tail)");
  }
  raise_diagnostics(validate(f), *f.skeleton, path, kFunctionFields, false);
  return f;
}

std::string location(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

const Measure& Problem::measure(const std::string& name) const {
  auto it = measures.find(name);
  if (it == measures.end()) throw ModelError("unknown measure '" + name + "'");
  return it->second;
}

const SimpleFunction& Problem::function(const std::string& name) const {
  auto it = functions.find(name);
  if (it == functions.end()) throw ModelError("unknown function '" + name + "'");
  return it->second;
}

MultiplicationOperator Problem::op(const std::string& name) const {
  auto it = operators.find(name);
  if (it == operators.end()) throw ModelError("unknown operator '" + name + "'");
  const auto& s = it->second;
  return {function(s.g), s.p, s.q, measure(s.mu), measure(s.nu)};
}

Problem parse_problem(const std::string& text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ModelError("malformed JSON at " + location(text, e.byte) + ": " + e.what());
  }
  allow_only(object_at(root, ""), {"description", "skeleton", "measures", "functions", "operators"}, "");

  Problem pb;
  {
    const auto& sj = field(root, "skeleton", "");
    const std::string at = "/skeleton";
    allow_only(object_at(sj, at), {"atoms", "cells", "tail"}, at);
    const auto& aj = field(sj, "atoms", at);
    if (!aj.is_array()) fail("/skeleton/atoms", "expected an array of identifiers");
    std::vector<std::string> atoms;
    for (std::size_t i = 0; i < aj.size(); ++i) atoms.push_back(string_at(aj[i], "/skeleton/atoms/" + std::to_string(i)));
    const auto& tj = field(sj, "tail", at);
    if (!tj.is_boolean()) fail("/skeleton/tail", "expected true or false");
    pb.skeleton = make_skeleton(std::move(atoms), cells_at(field(sj, "cells", at), "/skeleton/cells"), tj.get<bool>());
    raise_diagnostics(validate(*pb.skeleton), *pb.skeleton, at, kSkeletonFields, true);
  }

  bool overridden = false;
  auto section = [&](const char* key) -> const Json* {
    auto it = root.find(key);
    if (it == root.end()) return nullptr;
    return &object_at(*it, std::string("/") + key);
  };
  if (const auto* ms = section("measures"))
    for (auto it = ms->begin(); it != ms->end(); ++it)
      pb.measures.emplace(it.key(), measure_at(it.value(), pb.skeleton, child("/measures", it.key()), overridden));
  if (const auto* fs = section("functions"))
    for (auto it = fs->begin(); it != fs->end(); ++it)
      pb.functions.emplace(it.key(), function_at(it.value(), pb.skeleton, child("/functions", it.key()), overridden));

  if (overridden) {
    std::vector<RefinementItem> items{Measure::zero(pb.skeleton)};
    for (const auto& [_, m] : pb.measures) items.emplace_back(m);
    for (const auto& [_, f] : pb.functions) items.emplace_back(f);
    CommonRefinement ref;
    try {
      ref = common_refinement(items);
    } catch (const ModelError& e) {
      fail("", e.what());
    }
    pb.skeleton = ref.skeleton;
    std::size_t k = 1;
    for (auto& [_, m] : pb.measures) m = std::get<Measure>(ref.items[k++]);
    for (auto& [_, f] : pb.functions) f = std::get<SimpleFunction>(ref.items[k++]);
  }

  if (const auto* os = section("operators"))
    for (auto it = os->begin(); it != os->end(); ++it) {
      const auto at = child("/operators", it.key());
      const auto& oj = it.value();
      allow_only(object_at(oj, at), {"g", "p", "q", "mu", "nu"}, at);
      OperatorSpec spec{string_at(field(oj, "g", at), child(at, "g")), string_at(field(oj, "mu", at), child(at, "mu")),
                        string_at(field(oj, "nu", at), child(at, "nu")),
                        exponent_at(field(oj, "p", at), child(at, "p")), exponent_at(field(oj, "q", at), child(at, "q"))};
      if (!pb.functions.contains(spec.g)) fail(child(at, "g"), "unknown function '" + spec.g + "'");
      if (!pb.measures.contains(spec.mu)) fail(child(at, "mu"), "unknown measure '" + spec.mu + "'");
      if (!pb.measures.contains(spec.nu)) fail(child(at, "nu"), "unknown measure '" + spec.nu + "'");
      pb.operators.emplace(it.key(), spec);
    }
  return pb;
}

Problem load_problem(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelError("cannot read problem file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_problem(buf.str());
  } catch (const ModelError& e) {
    throw ModelError(path + ": " + e.what());
  }
}

Json number_to_json(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double json_to_number(const Json& j) { return number_at(j, ""); }

Json exponent_to_json(PExponent p) { return p.is_infinite() ? Json("inf") : Json(p.value()); }

namespace {

Json complex_to_json(Complex z) { return Json::array({number_to_json(z.real()), number_to_json(z.imag())}); }

}  // namespace

Json to_json(const SpaceSkeleton& sk) {
  Json cells = Json::array();
  for (const auto& c : sk.cells) cells.push_back({{"id", c.id}, {"length", number_to_json(c.length)}});
  return {{"atoms", sk.atoms}, {"cells", cells}, {"tail", sk.tail_present}};
}

Json to_json(const Measure& m) {
  const auto& sk = *m.skeleton;
  Json atoms = Json::object(), cells = Json::object();
  for (std::size_t i = 0; i < sk.atoms.size(); ++i) atoms[sk.atoms[i]] = number_to_json(m.atom_mass[i]);
  for (std::size_t i = 0; i < sk.cells.size(); ++i) cells[sk.cells[i].id] = number_to_json(m.cell_density[i]);
  Json out{{"atom_mass", atoms}, {"cell_density", cells}};
  if (m.tail) out["tail"] = {{"c", number_to_json(m.tail->first_mass)}, {"r", number_to_json(m.tail->ratio)}};
  return out;
}

Json to_json(const SimpleFunction& f) {
  const auto& sk = *f.skeleton;
  Json atoms = Json::object(), cells = Json::object();
  for (std::size_t i = 0; i < sk.atoms.size(); ++i) atoms[sk.atoms[i]] = complex_to_json(f.atom_value[i]);
  for (std::size_t i = 0; i < sk.cells.size(); ++i) cells[sk.cells[i].id] = complex_to_json(f.cell_value[i]);
  Json out{{"atom_value", atoms}, {"cell_value", cells}};
  if (f.tail_value) out["tail_value"] = complex_to_json(*f.tail_value);
  return out;
}

Json to_json(const Region& r) {
  Json fractions = Json::object();
  for (const auto& [id, x] : r.fractions) fractions[id] = number_to_json(x);
  return {{"atoms", r.atoms}, {"cells", r.cells}, {"fractions", fractions}, {"tail", r.tail}};
}

Json to_json(const LebesgueDecomposition& d) {
  return {{"rho", to_json(d.rho)},
          {"nu_s", to_json(d.nu_s)},
          {"omega_s", to_json(d.omega_s)},
          {"omega_c", to_json(d.omega_c)},
          {"omega_plus", to_json(d.omega_plus)}};
}

Json to_json(const MultiplicationOperator& op) {
  return {{"skeleton", to_json(*op.skeleton())}, {"g", to_json(op.g)},     {"p", exponent_to_json(op.p)},
          {"q", exponent_to_json(op.q)},         {"mu", to_json(op.mu)}, {"nu", to_json(op.nu)}};
}

Json to_json(const HomNormReport& r) {
  return {{"is_morphism", r.is_morphism},
          {"norm", number_to_json(r.norm)},
          {"regime", to_string(r.regime)},
          {"support_violation", r.support_violation ? to_json(*r.support_violation) : Json(nullptr)},
          {"derived", r.derived}};
}

Json to_json(const Witness& w) {
  return {{"property", w.property},
          {"verdict", w.verdict},
          {"piece", w.piece},
          {"recipe", w.recipe},
          {"value", w.value ? number_to_json(*w.value) : Json(nullptr)}};
}

Json to_json(const Classification& c) {
  Json witnesses = Json::array();
  for (const auto& w : c.witnesses) witnesses.push_back(to_json(w));
  return {{"bounded", c.bounded},
          {"operator_norm", number_to_json(c.operator_norm)},
          {"injective", c.injective},
          {"zero_set",
           {{"mu_measure", number_to_json(c.zero_set.mu_measure)},
            {"nu_measure", number_to_json(c.zero_set.nu_measure)},
            {"region", to_json(c.zero_set.region)}}},
          {"topologically_injective", c.topologically_injective},
          {"lower_constant", number_to_json(c.lower_constant)},
          {"isometric", c.isometric},
          {"topologically_surjective", c.topologically_surjective},
          {"surjectivity_constant", number_to_json(c.surjectivity_constant)},
          {"coisometric", c.coisometric},
          {"strictly_coisometric", c.strictly_coisometric},
          {"isomorphism", c.isomorphism},
          {"isometric_isomorphism", c.isometric_isomorphism},
          {"hom", to_json(c.hom)},
          {"decomposition", {{"forward", to_json(c.forward)}, {"reverse", to_json(c.reverse)}}},
          {"witnesses", witnesses}};
}

Json to_json(const RatioEstimate& e) {
  return {{"min_ratio", number_to_json(e.min_ratio)},
          {"max_ratio", number_to_json(e.max_ratio)},
          {"argmin", e.argmin},
          {"argmax", e.argmax},
          {"evaluated", e.evaluated},
          {"samples", e.samples},
          {"seed", e.seed}};
}

Json to_json(const RetractionCertificate& c) {
  return {{"kind", c.kind},
          {"mode", to_string(c.mode)},
          {"admissible", to_json(c.admissible)},
          {"companion", to_json(c.companion)},
          {"extension", to_json(c.extension)},
          {"psi_norm", number_to_json(c.psi_norm)},
          {"phi_norm", number_to_json(c.phi_norm)},
          {"retraction_residual", number_to_json(c.retraction_residual)},
          {"lift_residual", number_to_json(c.lift_residual)},
          {"samples", c.samples}};
}

// ---------------------------------------------------------------------------
// Report schema.

namespace {

struct Checker {
  std::vector<std::string> errors;

  void error(const std::string& path, const std::string& msg) { errors.push_back((path.empty() ? "/" : path) + ": " + msg); }

  const Json* get(const Json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object()) {
      error(path, "expected an object");
      return nullptr;
    }
    auto it = obj.find(key);
    if (it == obj.end()) {
      error(path, "missing field '" + key + "'");
      return nullptr;
    }
    return &*it;
  }

  void number(const Json* j, const std::string& path) {
    if (!j) return;
    if (j->is_number()) return;
    if (j->is_string() && (*j == "inf" || *j == "-inf")) return;
    error(path, "expected a number or \"inf\"");
  }
  void boolean(const Json* j, const std::string& path) {
    if (j && !j->is_boolean()) error(path, "expected a boolean");
  }
  void string(const Json* j, const std::string& path) {
    if (j && !j->is_string()) error(path, "expected a string");
  }
  void unsigned_int(const Json* j, const std::string& path) {
    if (j && !(j->is_number_integer() && j->get<std::int64_t>() >= 0)) error(path, "expected a nonnegative integer");
  }

  // Typed fields of an object.
  void fields(const Json& obj, const std::string& path, std::initializer_list<std::pair<const char*, char>> spec) {
    for (auto [key, type] : spec) {
      const auto at = child(path, key);
      const Json* j = get(obj, key, path);
      switch (type) {
        case 'n': number(j, at); break;
        case 'b': boolean(j, at); break;
        case 's': string(j, at); break;
        case 'u': unsigned_int(j, at); break;
        case 'o': if (j && !j->is_object()) error(at, "expected an object"); break;
        case 'a': if (j && !j->is_array()) error(at, "expected an array"); break;
        default: break;
      }
    }
  }

  void number_map(const Json* j, const std::string& path, bool complex) {
    if (!j) return;
    if (!j->is_object()) return error(path, "expected an object");
    for (auto it = j->begin(); it != j->end(); ++it) {
      const auto at = child(path, it.key());
      if (complex) {
        if (!it->is_array() || it->size() != 2) {
          error(at, "expected [re, im]");
          continue;
        }
        number(&(*it)[0], at + "/0");
        number(&(*it)[1], at + "/1");
      } else {
        number(&*it, at);
      }
    }
  }

  void skeleton(const Json* j, const std::string& path) {
    if (!j) return;
    fields(*j, path, {{"atoms", 'a'}, {"cells", 'a'}, {"tail", 'b'}});
    if (auto* cells = j->is_object() ? get(*j, "cells", path) : nullptr; cells && cells->is_array())
      for (std::size_t i = 0; i < cells->size(); ++i)
        fields((*cells)[i], child(child(path, "cells"), std::to_string(i)), {{"id", 's'}, {"length", 'n'}});
  }

  void measure(const Json* j, const std::string& path) {
    if (!j) return;
    if (!j->is_object()) return error(path, "expected a measure object");
    number_map(get(*j, "atom_mass", path), child(path, "atom_mass"), false);
    number_map(get(*j, "cell_density", path), child(path, "cell_density"), false);
    if (auto it = j->find("tail"); it != j->end()) fields(*it, child(path, "tail"), {{"c", 'n'}, {"r", 'n'}});
  }

  void function(const Json* j, const std::string& path) {
    if (!j) return;
    if (!j->is_object()) return error(path, "expected a function object");
    number_map(get(*j, "atom_value", path), child(path, "atom_value"), true);
    number_map(get(*j, "cell_value", path), child(path, "cell_value"), true);
  }

  void region(const Json* j, const std::string& path) {
    if (!j) return;
    fields(*j, path, {{"atoms", 'a'}, {"cells", 'a'}, {"fractions", 'o'}, {"tail", 'b'}});
  }

  void decomposition(const Json* j, const std::string& path) {
    if (!j) return;
    if (!j->is_object()) return error(path, "expected an object");
    function(get(*j, "rho", path), child(path, "rho"));
    measure(get(*j, "nu_s", path), child(path, "nu_s"));
    for (const char* k : {"omega_s", "omega_c", "omega_plus"}) region(get(*j, k, path), child(path, k));
  }

  void op(const Json* j, const std::string& path) {
    if (!j) return;
    if (!j->is_object()) return error(path, "expected an operator object");
    skeleton(get(*j, "skeleton", path), child(path, "skeleton"));
    function(get(*j, "g", path), child(path, "g"));
    number(get(*j, "p", path), child(path, "p"));
    number(get(*j, "q", path), child(path, "q"));
    measure(get(*j, "mu", path), child(path, "mu"));
    measure(get(*j, "nu", path), child(path, "nu"));
  }

  void hom(const Json* j, const std::string& path) {
    if (!j) return;
    fields(*j, path, {{"is_morphism", 'b'}, {"norm", 'n'}, {"regime", 's'}, {"derived", 'b'}});
    if (const Json* v = get(*j, "support_violation", path); v && !v->is_null()) region(v, child(path, "support_violation"));
  }

  void classification(const Json* j, const std::string& path) {
    if (!j) return;
    fields(*j, path,
           {{"bounded", 'b'}, {"operator_norm", 'n'}, {"injective", 'b'}, {"topologically_injective", 'b'},
            {"lower_constant", 'n'}, {"isometric", 'b'}, {"topologically_surjective", 'b'},
            {"surjectivity_constant", 'n'}, {"coisometric", 'b'}, {"strictly_coisometric", 'b'},
            {"isomorphism", 'b'}, {"isometric_isomorphism", 'b'}, {"witnesses", 'a'}});
    if (!j->is_object()) return;
    if (const Json* z = get(*j, "zero_set", path)) {
      fields(*z, child(path, "zero_set"), {{"mu_measure", 'n'}, {"nu_measure", 'n'}});
      if (z->is_object()) region(get(*z, "region", child(path, "zero_set")), child(child(path, "zero_set"), "region"));
    }
    hom(get(*j, "hom", path), child(path, "hom"));
    if (const Json* d = get(*j, "decomposition", path); d && d->is_object()) {
      decomposition(get(*d, "forward", child(path, "decomposition")), child(child(path, "decomposition"), "forward"));
      decomposition(get(*d, "reverse", child(path, "decomposition")), child(child(path, "decomposition"), "reverse"));
    }
    if (auto it = j->find("witnesses"); it != j->end() && it->is_array())
      for (std::size_t i = 0; i < it->size(); ++i) {
        const auto at = child(child(path, "witnesses"), std::to_string(i));
        fields((*it)[i], at, {{"property", 's'}, {"verdict", 'b'}, {"piece", 's'}, {"recipe", 's'}});
        if (const Json* v = get((*it)[i], "value", at); v && !v->is_null()) number(v, child(at, "value"));
      }
  }
};

}  // namespace

std::vector<std::string> validate_report(const Json& report) {
  Checker ck;
  if (!report.is_object()) return {"/: report must be an object"};
  const Json* cmd = ck.get(report, "command", "");
  ck.string(cmd, "/command");
  if (!cmd || !cmd->is_string()) return ck.errors;
  const std::string command = cmd->get<std::string>();

  if (auto it = report.find("error"); it != report.end()) {
    ck.fields(*it, "/error", {{"kind", 's'}, {"message", 's'}});
    if (it->is_object() && it->contains("witness")) ck.string(&(*it)["witness"], "/error/witness");
    return ck.errors;
  }

  if (command == "decompose") {
    ck.fields(report, "", {{"nu", 's'}, {"mu", 's'}});
    ck.skeleton(ck.get(report, "skeleton", ""), "/skeleton");
    ck.decomposition(ck.get(report, "decomposition", ""), "/decomposition");
  } else if (command == "classify") {
    ck.fields(report, "", {{"operator", 's'}, {"p", 'n'}, {"q", 'n'}});
    ck.classification(ck.get(report, "classification", ""), "/classification");
  } else if (command == "invert") {
    ck.fields(report, "", {{"operator", 's'}, {"side", 's'}, {"round_trip_residual", 'n'}, {"samples", 'u'}, {"seed", 'u'}});
    ck.op(ck.get(report, "inverse", ""), "/inverse");
    ck.classification(ck.get(report, "inverse_classification", ""), "/inverse_classification");
  } else if (command == "hom-norm") {
    ck.fields(report, "", {{"operator", 's'}});
    ck.hom(ck.get(report, "hom", ""), "/hom");
  } else if (command == "certify") {
    ck.fields(report, "", {{"kind", 's'}, {"mode", 's'}, {"admissible", 's'}, {"phi", 's'}});
    if (const Json* c = ck.get(report, "certificate", "")) {
      ck.fields(*c, "/certificate",
                {{"kind", 's'}, {"mode", 's'}, {"psi_norm", 'n'}, {"phi_norm", 'n'}, {"retraction_residual", 'n'},
                 {"lift_residual", 'n'}, {"samples", 'u'}});
      if (c->is_object())
        for (const char* k : {"admissible", "companion", "extension"}) ck.op(ck.get(*c, k, "/certificate"), child("/certificate", k));
    }
  } else if (command == "verify") {
    ck.fields(report, "", {{"operator", 's'}});
    if (const Json* e = ck.get(report, "estimate", ""))
      ck.fields(*e, "/estimate",
                {{"min_ratio", 'n'}, {"max_ratio", 'n'}, {"argmin", 's'}, {"argmax", 's'}, {"evaluated", 'u'},
                 {"samples", 'u'}, {"seed", 'u'}});
    if (const Json* b = ck.get(report, "bracket", ""))
      ck.fields(*b, "/bracket", {{"operator_norm", 'n'}, {"lower_constant", 'n'}, {"consistent", 'b'}});
  } else if (command == "pitt-demo") {
    ck.fields(report, "", {{"p", 'n'}, {"q", 'n'}, {"table", 'a'}});
    if (auto it = report.find("table"); it != report.end() && it->is_array())
      for (std::size_t i = 0; i < it->size(); ++i) {
        const auto& row = (*it)[i];
        const auto at = "/table/" + std::to_string(i);
        if (!row.is_array() || row.size() != 2) {
          ck.error(at, "expected [n, constant]");
          continue;
        }
        ck.unsigned_int(&row[0], at + "/0");
        ck.number(&row[1], at + "/1");
      }
  } else {
    ck.error("/command", "unknown command '" + command + "'");
  }
  return ck.errors;
}

std::string dump_report(const Json& report) { return report.dump(2) + "\n"; }

}  // namespace lpmult
