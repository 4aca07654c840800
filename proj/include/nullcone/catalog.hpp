#ifndef NULLCONE_CATALOG_HPP
#define NULLCONE_CATALOG_HPP

// Null-frame realizations and verdicts for the low-dimensional tables, read
// from data/catalog.json (compiled in). Parameter families store constants as
// linear expressions in their parameters together with sampled values.

#include <algorithm>
#include <atomic>
#include <cctype>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "nullcone/catalog_data.hpp"
#include "nullcone/classifier.hpp"
#include "nullcone/constructor.hpp"
#include "nullcone/curvature.hpp"
#include "nullcone/json_io.hpp"
#include "nullcone/killing.hpp"

namespace nullcone {

enum class CatalogVerdict { in_null_cone, not_in_null_cone, inconclusive };

inline std::string to_string(CatalogVerdict v) {
  switch (v) {
    case CatalogVerdict::in_null_cone: return "in";
    case CatalogVerdict::not_in_null_cone: return "not_in";
    case CatalogVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

inline CatalogVerdict catalog_verdict_from_string(const std::string& s) {
  if (s == "in") return CatalogVerdict::in_null_cone;
  if (s == "not_in") return CatalogVerdict::not_in_null_cone;
  if (s == "inconclusive") return CatalogVerdict::inconclusive;
  throw FormatError("unknown verdict '" + s + "'");
}

/// c + Σ coefficient·parameter.
struct LinearValue {
  Rational constant;
  std::vector<std::pair<std::string, Rational>> terms;

  /// "1", "-1/2", "a", "-alpha", "2*a+b".
  static LinearValue parse(const std::string& text) {
    LinearValue v;
    std::size_t i = 0;
    bool any = false;
    while (i < text.size()) {
      int sign = 1;
      if (text[i] == '+' || text[i] == '-') {
        sign = text[i] == '-' ? -1 : 1;
        ++i;
      } else if (any) {
        throw FormatError("malformed value '" + text + "'");
      }
      std::size_t j = i;
      while (j < text.size() && text[j] != '+' && text[j] != '-') ++j;
      std::string term = text.substr(i, j - i);
      if (term.empty()) throw FormatError("malformed value '" + text + "'");
      auto star = term.find('*');
      std::string coeff = star == std::string::npos ? "" : term.substr(0, star);
      std::string name = star == std::string::npos ? term : term.substr(star + 1);
      try {
        if (std::isalpha(static_cast<unsigned char>(name[0]))) {
          Rational c = coeff.empty() ? Rational(1) : Rational::parse(coeff);
          v.terms.emplace_back(name, c * Rational(sign));
        } else {
          if (!coeff.empty()) throw FormatError("malformed value '" + text + "'");
          v.constant += Rational::parse(name) * Rational(sign);
        }
      } catch (const std::invalid_argument&) {
        throw FormatError("malformed value '" + text + "'");
      }
      any = true;
      i = j;
    }
    if (!any) throw FormatError("empty value");
    return v;
  }

  Rational evaluate(const std::map<std::string, Rational>& values) const {
    Rational r = constant;
    for (const auto& [name, c] : terms) {
      auto it = values.find(name);
      if (it == values.end()) throw std::invalid_argument("no value for parameter '" + name + "'");
      r += c * it->second;
    }
    return r;
  }
};

struct ParamSpec {
  std::string name;
  std::optional<Rational> min, max;
  bool exclude_zero = false;
  std::vector<Rational> samples;
};

struct CatalogLayout {
  int p = 0, k = 0;
  /// Expected class on the canonical layout; absent for negative entries.
  std::optional<std::vector<Rational>> class_vector;
  FrameLayout layout() const { return FrameLayout::canonical(p, k); }
};

/// A split algebra placed by an explicit slot table (see realize_assignment).
struct SlotConstruction {
  std::string split;
  std::vector<std::pair<std::string, std::string>> slots;
};

struct CatalogInstance {
  std::map<std::string, Rational> values;
  StructureTensor tensor;

  std::string label() const {
    std::string s;
    for (const auto& [name, v] : values) s += (s.empty() ? "" : ", ") + name + "=" + v.str();
    return s;
  }
};

struct CatalogEntry {
  struct Constant {
    int a, b, c;
    LinearValue value;
  };

  std::string name;
  /// Table row the entry belongs to; equals name unless a row needs several
  /// representatives.
  std::string row;
  int dim = 0;
  CatalogVerdict verdict = CatalogVerdict::inconclusive;
  std::string source;
  std::set<std::string> flags;
  std::vector<ParamSpec> params;
  std::optional<std::vector<Constant>> constants;
  std::optional<SlotConstruction> construction;
  std::vector<CatalogLayout> layouts;
  std::string recipe, note;

  bool has_tensor() const { return constants.has_value() || construction.has_value(); }
  bool has_flag(const std::string& f) const { return flags.count(f) != 0; }

  std::optional<std::vector<Rational>> expected_class() const {
    if (layouts.empty()) return std::nullopt;
    return layouts.front().class_vector;
  }

  StructureTensor tensor(const std::map<std::string, Rational>& values = {}) const {
    if (construction) {
      if (!expected_class()) throw std::logic_error(name + ": slot construction without a class");
      auto G = chevalley_split_form(CartanMatrix::parse(construction->split));
      return realize_assignment(G, construction->slots, *expected_class()).algebra;
    }
    if (!constants) throw std::logic_error(name + " has no stored constants");
    StructureTensor::Builder b(dim);
    for (const auto& c : *constants) b.add(c.a, c.b, c.c, c.value.evaluate(values));
    return b.build();
  }

  /// The recorded samples (parameters sampled jointly, position by position).
  std::vector<CatalogInstance> instances() const {
    if (!has_tensor()) return {};
    std::size_t count = params.empty() ? 1 : params.front().samples.size();
    std::vector<CatalogInstance> out;
    for (std::size_t i = 0; i < count; ++i) {
      std::map<std::string, Rational> values;
      for (const auto& p : params) values[p.name] = p.samples.at(i);
      out.push_back({values, tensor(values)});
    }
    return out;
  }

  /// Parameters drawn in their stated ranges with denominators up to 4.
  template <class Rng>
  CatalogInstance random_instance(Rng& rng) const {
    std::map<std::string, Rational> values;
    for (const auto& p : params) {
      Rational lo = p.min ? *p.min : (p.max ? *p.max - Rational(3) : Rational(-3));
      Rational hi = p.max ? *p.max : lo + Rational(3);
      std::uniform_int_distribution<int> den(1, 4);
      Rational v;
      do {
        int d = den(rng);
        Rational a = lo * Rational(d), bnd = hi * Rational(d);
        // integer numerators n with lo <= n/d <= hi
        std::int64_t nlo = FlowedTensor::floor(a).to_int64();
        if (Rational(nlo) < a) ++nlo;
        std::int64_t nhi = FlowedTensor::floor(bnd).to_int64();
        std::uniform_int_distribution<std::int64_t> num(nlo, nhi);
        v = Rational(num(rng), d);
      } while (p.exclude_zero && v.is_zero());
      values[p.name] = v;
    }
    return {values, tensor(values)};
  }
};

struct CatalogFilter {
  std::optional<int> dim;
  std::optional<int> max_dim;
  std::optional<std::string> flag;
  std::optional<CatalogVerdict> verdict;
  std::optional<std::string> source;
};

class Catalog {
 public:
  static Catalog from_json(const json& j) {
    if (!j.is_object() || !j.contains("entries") || !j["entries"].is_array()) throw FormatError("catalog needs an \"entries\" array");
    Catalog c;
    c.version_ = j.value("version", 0);
    for (const auto& e : j["entries"]) c.entries_.push_back(parse_entry(e));
    std::set<std::string> names;
    for (const auto& e : c.entries_)
      if (!names.insert(e.name).second) throw FormatError("duplicate catalog entry " + e.name);
    return c;
  }

  /// The catalog compiled into the library.
  static const Catalog& builtin() {
    static const Catalog c = from_json(json::parse(detail::kCatalogJson));
    return c;
  }

  int version() const { return version_; }
  const std::vector<CatalogEntry>& entries() const { return entries_; }

  const CatalogEntry& load(const std::string& name) const {
    for (const auto& e : entries_)
      if (e.name == name) return e;
    throw std::out_of_range("unknown catalog entry '" + name + "'");
  }

  /// Matching entries by dimension, then catalog order.
  std::vector<const CatalogEntry*> enumerate(const CatalogFilter& f = {}) const {
    std::vector<const CatalogEntry*> out;
    for (const auto& e : entries_) {
      if (f.dim && e.dim != *f.dim) continue;
      if (f.max_dim && e.dim > *f.max_dim) continue;
      if (f.flag && !e.has_flag(*f.flag)) continue;
      if (f.verdict && e.verdict != *f.verdict) continue;
      if (f.source && e.source != *f.source) continue;
      out.push_back(&e);
    }
    std::stable_sort(out.begin(), out.end(), [](const CatalogEntry* x, const CatalogEntry* y) { return x->dim < y->dim; });
    return out;
  }

 private:
  static CatalogEntry parse_entry(const json& j) {
    CatalogEntry e;
    if (!j.contains("name") || !j["name"].is_string()) throw FormatError("catalog entry without a name");
    e.name = j["name"].get<std::string>();
    try {
      e.row = j.value("row", e.name);
      e.dim = int_field(j, "dim");
      e.verdict = catalog_verdict_from_string(j.at("verdict").get<std::string>());
      e.source = j.value("source", "");
      for (const auto& f : j.value("flags", json::array())) e.flags.insert(f.get<std::string>());
      for (const auto& p : j.value("params", json::array())) {
        ParamSpec s;
        s.name = p.at("name").get<std::string>();
        if (p.contains("min")) s.min = rational_from_json(p["min"]);
        if (p.contains("max")) s.max = rational_from_json(p["max"]);
        s.exclude_zero = p.value("exclude_zero", false);
        s.samples = rationals_from_json(p.at("samples"));
        if (!e.params.empty() && s.samples.size() != e.params.front().samples.size())
          throw FormatError("parameters of " + e.name + " have different sample counts");
        e.params.push_back(std::move(s));
      }
      if (j.contains("constants")) {
        std::vector<CatalogEntry::Constant> cs;
        for (const auto& c : j["constants"]) {
          const int a = int_field(c, "a"), b = int_field(c, "b"), cc = int_field(c, "c");
          if (a >= b || a < 1 || b > e.dim || cc < 1 || cc > e.dim) throw FormatError("bad constant in " + e.name + ": " + c.dump());
          cs.push_back({a, b, cc, LinearValue::parse(c.at("value").get<std::string>())});
        }
        e.constants = std::move(cs);
      }
      if (j.contains("construction")) {
        SlotConstruction sc;
        sc.split = j["construction"].at("split").get<std::string>();
        for (const auto& s : j["construction"].at("slots")) sc.slots.emplace_back(s.at(0).get<std::string>(), s.at(1).get<std::string>());
        e.construction = std::move(sc);
      }
      for (const auto& l : j.value("layouts", json::array())) {
        CatalogLayout cl;
        FrameLayout fl = layout_from_json(l);
        cl.p = fl.p();
        cl.k = fl.k();
        if (cl.p * 2 + cl.k != e.dim) throw FormatError("layout of " + e.name + " does not match its dimension");
        if (l.contains("class")) cl.class_vector = rationals_from_json(l["class"]);
        e.layouts.push_back(std::move(cl));
      }
      e.recipe = j.value("recipe", "");
      e.note = j.value("note", "");
    } catch (const json::exception& ex) {
      throw FormatError("catalog entry " + e.name + ": " + ex.what());
    }
    return e;
  }

  int version_ = 0;
  std::vector<CatalogEntry> entries_;
};

inline const CatalogEntry& load(const std::string& name) { return Catalog::builtin().load(name); }

inline std::vector<const CatalogEntry*> enumerate(const CatalogFilter& f = {}) { return Catalog::builtin().enumerate(f); }

// ---- verification

struct CatalogCheck {
  std::string entry;
  std::string instance;
  int p = 0, k = 0;
  /// "realized", "negative", "inconclusive" or "skipped".
  std::string kind;
  bool passed = false;
  bool jacobi_ok = false;
  bool certified = false;
  std::optional<Rational> worst_margin;
  bool invariants_zero = false;
  bool killing_nilpotent = false;
  std::optional<Verdict> search_verdict;
  std::uint64_t frames_searched = 0;
  std::string message;
};

struct CatalogReport {
  std::vector<CatalogCheck> checks;
  bool all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CatalogCheck& c) { return c.passed; });
  }
};

struct VerifyOptions {
  unsigned threads = 1;
  bool realized = true;
  bool negative = true;
  std::optional<int> max_dim;
};

/// Checks one recorded instance of a realized entry on its canonical layout.
inline CatalogCheck check_realized(const CatalogEntry& e, const CatalogInstance& inst, const CatalogLayout& lay) {
  CatalogCheck c{e.name, inst.label(), lay.p, lay.k, "realized"};
  c.jacobi_ok = jacobi_check(inst.tensor).empty();
  FrameLayout L = lay.layout();
  if (!lay.class_vector) {
    c.message = "no expected class stored";
    return c;
  }
  auto cert = certify_class(L, inst.tensor, *lay.class_vector);
  c.certified = cert.certified;
  c.worst_margin = cert.worst_margin;
  c.invariants_zero = invariant_suite(L, inst.tensor).all_zero();
  c.killing_nilpotent = nilpotent_operator_check(killing_operator(L, inst.tensor).matrix).nilpotent;
  c.passed = c.jacobi_ok && c.certified && c.invariants_zero && c.killing_nilpotent;
  if (!c.passed)
    c.message = std::string(c.jacobi_ok ? "" : "jacobi ") + (c.certified ? "" : "class ") + (c.invariants_zero ? "" : "invariants ") +
                (c.killing_nilpotent ? "" : "killing");
  return c;
}

inline CatalogCheck check_negative(const CatalogEntry& e, const CatalogInstance& inst, const CatalogLayout& lay) {
  CatalogCheck c{e.name, inst.label(), lay.p, lay.k, e.verdict == CatalogVerdict::inconclusive ? "inconclusive" : "negative"};
  c.jacobi_ok = jacobi_check(inst.tensor).empty();
  auto r = search_frame(inst.tensor, lay.p, lay.k);
  c.search_verdict = r.verdict;
  c.frames_searched = r.frames_searched;
  if (e.verdict == CatalogVerdict::inconclusive) {
    c.passed = c.jacobi_ok;
    c.message = "search: " + to_string(r.verdict);
  } else {
    c.passed = c.jacobi_ok && r.verdict == Verdict::infeasible_for_all_searched_frames;
    if (!c.passed) c.message = "search: " + to_string(r.verdict);
  }
  return c;
}

inline std::vector<CatalogCheck> verify_entry(const CatalogEntry& e, const VerifyOptions& opt = {}) {
  std::vector<CatalogCheck> out;
  if (!e.has_tensor()) {
    CatalogCheck c{e.name, "", 0, 0, "skipped"};
    c.passed = true;
    c.message = "no tensor stored";
    out.push_back(std::move(c));
    return out;
  }
  const bool positive = e.verdict == CatalogVerdict::in_null_cone;
  if (positive ? !opt.realized : !opt.negative) return out;
  for (const auto& inst : e.instances())
    for (const auto& lay : e.layouts) out.push_back(positive ? check_realized(e, inst, lay) : check_negative(e, inst, lay));
  return out;
}

/// Every entry (up to opt.max_dim), entries spread over opt.threads workers;
/// checks are reported in catalog order.
inline CatalogReport verify_all(const VerifyOptions& opt = {}, const Catalog& catalog = Catalog::builtin()) {
  std::vector<const CatalogEntry*> todo;
  for (const auto& e : catalog.entries())
    if (!opt.max_dim || e.dim <= *opt.max_dim) todo.push_back(&e);
  std::vector<std::vector<CatalogCheck>> results(todo.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next++) < todo.size();) results[i] = verify_entry(*todo[i], opt);
  };
  const unsigned n = std::max(1u, std::min<unsigned>(opt.threads, static_cast<unsigned>(todo.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  CatalogReport r;
  for (auto& v : results)
    for (auto& c : v) r.checks.push_back(std::move(c));
  return r;
}

inline json to_json(const CatalogEntry& e) {
  json j = {{"name", e.name}, {"row", e.row}, {"dim", e.dim}, {"verdict", to_string(e.verdict)}, {"source", e.source}};
  j["flags"] = json(std::vector<std::string>(e.flags.begin(), e.flags.end()));
  json lays = json::array();
  for (const auto& l : e.layouts) {
    json x = to_json(l.layout());
    if (l.class_vector) x["class"] = to_json(*l.class_vector);
    lays.push_back(std::move(x));
  }
  j["layouts"] = std::move(lays);
  if (!e.params.empty()) {
    json ps = json::array();
    for (const auto& p : e.params) ps.push_back({{"name", p.name}, {"samples", to_json(p.samples)}});
    j["params"] = std::move(ps);
  }
  if (!e.recipe.empty()) j["recipe"] = e.recipe;
  if (!e.note.empty()) j["note"] = e.note;
  return j;
}

inline json to_json(const CatalogCheck& c) {
  json j = {{"entry", c.entry}, {"instance", c.instance}, {"signature", {c.p, c.k}}, {"kind", c.kind}, {"passed", c.passed}};
  if (c.kind == "realized") {
    j["jacobi"] = c.jacobi_ok;
    j["certified"] = c.certified;
    j["worst_margin"] = c.worst_margin ? json(c.worst_margin->str()) : json(nullptr);
    j["invariants_zero"] = c.invariants_zero;
    j["killing_nilpotent"] = c.killing_nilpotent;
  } else if (c.search_verdict) {
    j["search"] = to_string(*c.search_verdict);
    j["frames_searched"] = c.frames_searched;
  }
  if (!c.message.empty()) j["message"] = c.message;
  return j;
}

}  // namespace nullcone

#endif  // NULLCONE_CATALOG_HPP
