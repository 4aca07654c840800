#ifndef NULLCONE_TABLES_HPP
#define NULLCONE_TABLES_HPP

// Table reproduction. Every cell is recomputed: root systems for the split
// tables, the bookkeeping identities for Appendix A, certify_class and
// search_frame on catalog tensors for the low-dimensional verdict tables.
// JSON is the primary form; render_text lays the same cells out in columns.

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "nullcone/catalog.hpp"
#include "nullcone/constructor.hpp"
#include "nullcone/json_io.hpp"
#include "nullcone/rootsystem.hpp"

namespace nullcone {

struct ReproducedTable {
  std::string id;
  std::string title;
  std::vector<std::string> columns;
  /// Cells are strings, integers, integer arrays, or arrays of [value, mult]
  /// pairs for class multisets.
  std::vector<std::vector<json>> rows;
};

inline std::vector<std::string> table_ids() {
  return {"splitlcs", "splitclasses", "appendixA1", "appendixA2", "appendixA3", "dim3", "dim4", "dim5"};
}

namespace detail {

inline GradedAlgebra split_grading(const CartanMatrix& C) {
  auto dims = height_grading(positive_roots(C));
  GradedAlgebra g;
  g.delta = static_cast<int>(dims.size());
  g.dim_a = C.rank();
  g.dims[0] = C.rank();
  for (int l = 1; l <= g.delta; ++l) g.dims[l] = g.dims[-l] = dims[l - 1];
  g.origin = {"split", C.name()};
  return g;
}

inline json multiset_cell(const ClassMultiset& m) {
  json out = json::array();
  for (const auto& [v, k] : m) out.push_back(json::array({v, k}));
  return out;
}

inline json rationals_cell(const std::vector<Rational>& x) {
  json out = json::array();
  for (const auto& r : x) {
    if (r.is_integer())
      out.push_back(r.to_int64());
    else
      out.push_back(r.str());
  }
  return out;
}

inline std::string cell_text(const json& c) {
  if (c.is_string()) return c.get<std::string>();
  if (c.is_number_integer()) return std::to_string(c.get<long long>());
  if (c.is_boolean()) return c.get<bool>() ? "yes" : "no";
  if (c.is_null()) return "-";
  if (c.is_array()) {
    std::string s = "[";
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) s += ",";
      const json& e = c[i];
      if (e.is_array() && e.size() == 2) {
        s += cell_text(e[0]);
        if (e[1].get<long long>() != 1) s += "x" + cell_text(e[1]);
      } else {
        s += cell_text(e);
      }
    }
    return s + "]";
  }
  return c.dump();
}

const char* const kExceptional[] = {"G2", "F4", "E6", "E7", "E8"};

inline std::string split_name(const CartanMatrix& C) {
  std::string lower(1, static_cast<char>(C.type() - 'A' + 'a'));
  return "split " + lower + std::to_string(C.rank());
}

inline ReproducedTable split_lcs() {
  ReproducedTable t{"splitlcs", "Split exceptional algebras: dim a, dim n and the lower central series of n",
                    {"G", "dim a", "dim n", "LCS", "dim G"}, {}};
  for (const char* name : kExceptional) {
    auto C = CartanMatrix::parse(name);
    auto roots = positive_roots(C);
    const int n = static_cast<int>(roots.size());
    t.rows.push_back({std::string("split ") + name, C.rank(), n, lcs_dims(height_grading(roots)), C.rank() + 2 * n});
  }
  return t;
}

inline ReproducedTable split_classes() {
  ReproducedTable t{"splitclasses", "Split exceptional algebras plus R^m: grading dimensions and constructed class",
                    {"g", "m", "dim", "dim g_lambda>0", "class"}, {}};
  for (bool complex : {false, true})
    for (const char* name : kExceptional) {
      auto G = split_grading(CartanMatrix::parse(name));
      if (complex) G = complexified_dims(G);
      auto plan = pairing_plan(G);
      std::string label = split_name(CartanMatrix::parse(name));
      if (complex) label = label.substr(6) + "^C";
      t.rows.push_back({label + "+R^" + std::to_string(plan.m), plan.m, 2 * plan.p, G.positive_dims(), multiset_cell(plan.multiset())});
    }
  return t;
}

inline std::vector<std::vector<int>> appendix_grid(int nparams) {
  std::vector<std::vector<int>> grid;
  if (nparams == 0) grid.push_back({});
  if (nparams == 1)
    for (int n = 1; n <= 8; ++n) grid.push_back({n});
  if (nparams == 2)
    for (int p = 1; p <= 6; ++p)
      for (int q = 1; q <= 6; ++q) grid.push_back({p, q});
  return grid;
}

inline std::string bookkeeping_check(const BookkeepingRow& r) {
  std::vector<std::string> bad;
  if (!r.dims_ok) bad.push_back("dim g");
  if (!r.m_ok) bad.push_back("m");
  if (!r.total_ok) bad.push_back("total");
  if (r.roots_dim_n && *r.roots_dim_n != r.dim_n) bad.push_back("dim n vs roots");
  if (r.roots_dim_a && *r.roots_dim_a != r.dim_a) bad.push_back("dim a vs roots");
  if (bad.empty()) return "ok";
  std::string s = "FAIL:";
  for (const auto& b : bad) s += " " + b;
  return s;
}

inline ReproducedTable appendix(const std::string& id, const std::vector<std::string>& families) {
  ReproducedTable t{id, "Real forms plus R^m: Iwasawa bookkeeping over the parameter grid",
                    {"g", "params", "dim m0", "dim a", "dim n", "m", "dim g+R^m", "dim g", "check"}, {}};
  for (const auto& fam : families) {
    for (const auto& params : appendix_grid(appendix_family_params(fam))) {
      BookkeepingRow r;
      try {
        r = realform_bookkeeping(fam, params);
      } catch (const std::invalid_argument&) {
        continue;
      }
      json ps = json::array();
      for (int v : params) ps.push_back(v);
      t.rows.push_back({fam, ps, r.dim_m0, r.dim_a, r.dim_n, r.m, r.total, r.dim_g, bookkeeping_check(r)});
    }
  }
  return t;
}

inline std::vector<std::string> appendix_section(int section) {
  // Families are registered in Appendix order: 12 classical split/compact/
  // complex rows, 6 other real forms, then the exceptional rows.
  auto all = appendix_family_names();
  std::vector<std::string> out;
  for (std::size_t i = 0; i < all.size(); ++i) {
    int s = i < 12 ? 1 : (i < 18 ? 2 : 3);
    if (s == section) out.push_back(all[i]);
  }
  return out;
}

inline std::string signature_text(int p, int k) { return "(" + std::to_string(p) + "," + std::to_string(k) + ")"; }

/// Verdict rows for one catalog source. Classes are the stored ones but a
/// row only reads "in" once certify_class accepts them again; negative rows
/// rerun the exhaustive frame search.
inline ReproducedTable dimension_table(const std::string& id, const std::string& source, unsigned threads) {
  ReproducedTable t{id, "Catalog rows of " + source + " with recomputed verdicts", {"algebra", "dim", "signature", "class", "verdict"}, {}};
  for (const auto* e : enumerate({.source = source})) {
    if (!e->has_tensor()) continue;
    auto inst = e->instances().front();
    for (const auto& lay : e->layouts) {
      std::string verdict;
      json cls = nullptr;
      if (lay.class_vector) {
        cls = rationals_cell(*lay.class_vector);
        verdict = certify_class(lay.layout(), inst.tensor, *lay.class_vector).certified ? "in" : "FAILED";
      } else {
        auto rep = search_frame(inst.tensor, lay.p, lay.k, {.threads = threads});
        verdict = rep.verdict == Verdict::infeasible_for_all_searched_frames ? "not in" : to_string(rep.verdict);
      }
      std::string name = e->name;
      if (!e->params.empty()) name += " " + inst.label();
      t.rows.push_back({name, e->dim, signature_text(lay.p, lay.k), cls, verdict});
    }
  }
  return t;
}

}  // namespace detail

inline ReproducedTable reproduce_table(const std::string& which, unsigned threads = 1) {
  if (which == "splitlcs") return detail::split_lcs();
  if (which == "splitclasses") return detail::split_classes();
  if (which == "appendixA1") return detail::appendix(which, detail::appendix_section(1));
  if (which == "appendixA2") return detail::appendix(which, detail::appendix_section(2));
  if (which == "appendixA3") return detail::appendix(which, detail::appendix_section(3));
  if (which == "dim3") return detail::dimension_table(which, "Table 1", threads);
  if (which == "dim4") return detail::dimension_table(which, "Table 2", threads);
  if (which == "dim5") return detail::dimension_table(which, "Table 3", threads);
  throw std::invalid_argument("unknown table '" + which + "'");
}

inline json to_json(const ReproducedTable& t) {
  json rows = json::array();
  for (const auto& r : t.rows) {
    json o = json::object();
    for (std::size_t i = 0; i < t.columns.size(); ++i) o[t.columns[i]] = r[i];
    rows.push_back(std::move(o));
  }
  return {{"table", t.id}, {"title", t.title}, {"columns", t.columns}, {"rows", std::move(rows)}};
}

/// Left-aligned columns separated by two spaces, a dashed rule under the
/// header, trailing blanks trimmed.
inline std::string render_text(const ReproducedTable& t) {
  std::vector<std::vector<std::string>> cells;
  cells.push_back(t.columns);
  for (const auto& r : t.rows) {
    std::vector<std::string> line;
    for (const auto& c : r) line.push_back(detail::cell_text(c));
    cells.push_back(std::move(line));
  }
  std::vector<std::size_t> width(t.columns.size(), 0);
  for (const auto& line : cells)
    for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
  std::ostringstream out;
  out << "# " << t.id << ": " << t.title << "\n";
  auto emit = [&](const std::vector<std::string>& line) {
    std::string s;
    for (std::size_t i = 0; i < line.size(); ++i) {
      s += line[i];
      if (i + 1 < line.size()) s += std::string(width[i] - line[i].size() + 2, ' ');
    }
    while (!s.empty() && s.back() == ' ') s.pop_back();
    out << s << "\n";
  };
  emit(cells[0]);
  std::size_t total = 0;
  for (std::size_t i = 0; i < width.size(); ++i) total += width[i] + (i + 1 < width.size() ? 2 : 0);
  out << std::string(total, '-') << "\n";
  for (std::size_t i = 1; i < cells.size(); ++i) emit(cells[i]);
  return out.str();
}

}  // namespace nullcone

#endif  // NULLCONE_TABLES_HPP
