#ifndef NULLCONE_JSON_IO_HPP
#define NULLCONE_JSON_IO_HPP

// JSON fragments shared by the catalog and the command-line tool. Rationals
// are written as decimal or "num/den" strings.

#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "nullcone/classifier.hpp"
#include "nullcone/constructor.hpp"
#include "nullcone/curvature.hpp"
#include "nullcone/frame.hpp"
#include "nullcone/rootsystem.hpp"
#include "nullcone/structure_tensor.hpp"

namespace nullcone {

using json = nlohmann::ordered_json;

/// Malformed JSON input (as opposed to a mathematical failure).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Rational rational_from_json(const json& j) {
  try {
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  throw FormatError("expected a rational as an integer or a \"num/den\" string, got " + j.dump());
}

inline json to_json(const Rational& r) { return r.str(); }

inline json to_json(const std::vector<Rational>& v) {
  json out = json::array();
  for (const auto& r : v) out.push_back(r.str());
  return out;
}

inline std::vector<Rational> rationals_from_json(const json& j) {
  if (!j.is_array()) throw FormatError("expected an array of rationals");
  std::vector<Rational> out;
  for (const auto& x : j) out.push_back(rational_from_json(x));
  return out;
}

inline int int_field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j[key].is_number_integer()) throw FormatError(std::string("missing integer field \"") + key + "\"");
  return j[key].get<int>();
}

// ---- algebra

inline json to_json(const StructureTensor& t) {
  json cs = json::array();
  for (const auto& e : t.entries()) cs.push_back({{"a", e.a}, {"b", e.b}, {"c", e.c}, {"value", e.value.str()}});
  return {{"dim", t.dim()}, {"constants", std::move(cs)}};
}

/// {"dim": n, "constants": [{"a":1,"b":2,"c":2,"value":"1"}, ...]}; only a < b
/// is accepted and each (a,b,c) at most once.
inline StructureTensor algebra_from_json(const json& j) {
  const int n = int_field(j, "dim");
  if (n < 0) throw FormatError("negative dimension");
  if (!j.contains("constants") || !j["constants"].is_array()) throw FormatError("missing \"constants\" array");
  StructureTensor::Builder b(n);
  std::set<std::tuple<int, int, int>> seen;
  for (const auto& e : j["constants"]) {
    const int a = int_field(e, "a"), bb = int_field(e, "b"), c = int_field(e, "c");
    if (a < 1 || bb < 1 || c < 1 || a > n || bb > n || c > n) throw FormatError("constant index outside 1.." + std::to_string(n) + ": " + e.dump());
    if (a >= bb) throw FormatError("constants must have a < b: " + e.dump());
    if (!seen.insert({a, bb, c}).second) throw FormatError("duplicate constant: " + e.dump());
    if (!e.contains("value")) throw FormatError("constant without value: " + e.dump());
    b.add(a, bb, c, rational_from_json(e["value"]));
  }
  return b.build();
}

// ---- layout and class

inline json to_json(const FrameLayout& L) {
  json j = {{"p", L.p()}, {"k", L.k()}};
  if (L.is_canonical()) {
    j["roles"] = "canonical";
  } else {
    json roles = json::object();
    for (int a = 1; a <= L.dim(); ++a) roles[std::to_string(a)] = L.role(a).str();
    j["roles"] = std::move(roles);
  }
  return j;
}

/// {"p":2,"k":1,"roles":"canonical"} or {"roles":{"1":"N-1","2":"N+1",...}}.
inline FrameLayout layout_from_json(const json& j) {
  if (!j.is_object() || !j.contains("roles")) throw FormatError("layout needs a \"roles\" field");
  const json& r = j["roles"];
  try {
    if (r.is_string()) {
      if (r.get<std::string>() != "canonical") throw FormatError("roles must be \"canonical\" or an object");
      return FrameLayout::canonical(int_field(j, "p"), int_field(j, "k"));
    }
    if (!r.is_object()) throw FormatError("roles must be \"canonical\" or an object");
    const int n = static_cast<int>(r.size());
    std::vector<Role> roles(n);
    for (const auto& [key, value] : r.items()) {
      std::size_t used = 0;
      int a = 0;
      try {
        a = std::stoi(key, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != key.size() || a < 1 || a > n) throw FormatError("role key '" + key + "' is not an index in 1.." + std::to_string(n));
      if (!value.is_string()) throw FormatError("role of index " + key + " is not a string");
      roles[a - 1] = Role::parse(value.get<std::string>());
    }
    FrameLayout L(std::move(roles));
    if (j.contains("p") && int_field(j, "p") != L.p()) throw FormatError("\"p\" disagrees with the roles");
    if (j.contains("k") && int_field(j, "k") != L.k()) throw FormatError("\"k\" disagrees with the roles");
    return L;
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

inline json class_to_json(const std::vector<Rational>& x) { return {{"class", to_json(x)}}; }

/// {"class": [...]} or a bare array.
inline std::vector<Rational> class_from_json(const json& j) {
  if (j.is_object() && j.contains("class")) return rationals_from_json(j["class"]);
  return rationals_from_json(j);
}

/// "2,1" or "1/2,0".
inline std::vector<Rational> parse_class_csv(const std::string& s) {
  std::vector<Rational> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      out.push_back(Rational::parse(item));
    } catch (const std::invalid_argument&) {
      throw FormatError("bad class entry '" + item + "'");
    }
  }
  if (out.empty()) throw FormatError("empty class");
  return out;
}

// ---- results

inline json to_json(const BoostWeight& b) { return json(b); }

inline json to_json(const CertifyResult& r) {
  json j = {{"certified", r.certified}};
  j["worst_margin"] = r.worst_margin ? json(r.worst_margin->str()) : json(nullptr);
  json v = json::array();
  for (const auto& w : r.violating_weights) v.push_back(w);
  j["violating_weights"] = std::move(v);
  return j;
}

inline json to_json(const MembershipReport& r) {
  json j = {{"verdict", to_string(r.verdict)}, {"signature", {r.p, r.k}}};
  if (r.class_vector) j["class"] = to_json(*r.class_vector);
  if (r.verdict == Verdict::certified) {
    j["permutation"] = r.permutation;
    j["signs"] = r.signs;
  }
  j["frames_searched"] = r.frames_searched;
  j["pruned_by_nilpotency"] = r.pruned_by_nilpotency;
  if (r.killing_nilpotent) j["killing_nilpotent"] = *r.killing_nilpotent;
  if (r.witness) j["witness"] = to_json(*r.witness);
  return j;
}

inline json to_json(const InvariantSuite& s) {
  return {{"R", s.ricci_scalar.str()},
          {"ricci_traces", to_json(s.ricci_traces)},
          {"kretschmann", s.kretschmann.str()},
          {"ricci_cubic", s.ricci_cubic.str()},
          {"riem_cubic", s.riem_cubic.str()},
          {"dRiem_sq", s.dRiem_sq.str()},
          {"killing_traces", to_json(s.killing_traces)},
          {"all_zero", s.all_zero()}};
}

inline json to_json(const ClassMultiset& m) {
  json out = json::array();
  for (const auto& [value, mult] : m) out.push_back({{"value", value}, {"multiplicity", mult}});
  return out;
}

/// {"type":"E","rank":8,"positive_roots":[[...]],"heights":[...],"dims_by_height":[...]}
inline json rootsystem_json(const CartanMatrix& C) {
  auto roots = positive_roots(C);
  json pr = json::array(), hs = json::array();
  for (const auto& r : roots) {
    pr.push_back(r.coeffs);
    hs.push_back(r.height());
  }
  return {{"type", std::string(1, C.type())},
          {"rank", C.rank()},
          {"positive_roots", std::move(pr)},
          {"heights", std::move(hs)},
          {"dims_by_height", height_grading(roots)}};
}

}  // namespace nullcone

#endif  // NULLCONE_JSON_IO_HPP
