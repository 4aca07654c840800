#ifndef NULLCONE_CLI_HPP
#define NULLCONE_CLI_HPP

// Command-line front end. Exit status: 0 success or certified, 2 a
// well-formed negative answer, 1 any error (diagnostic on the error stream).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nullcone/catalog.hpp"
#include "nullcone/classifier.hpp"
#include "nullcone/constructor.hpp"
#include "nullcone/curvature.hpp"
#include "nullcone/feasibility.hpp"
#include "nullcone/json_io.hpp"
#include "nullcone/killing.hpp"
#include "nullcone/tables.hpp"

namespace nullcone::cli {

enum ExitCode { kOk = 0, kError = 1, kNegative = 2 };

namespace detail {

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

/// FILE, a bundle written by `build`, or catalog:NAME (first sample).
inline StructureTensor load_algebra(const std::string& spec) {
  if (spec.rfind("catalog:", 0) == 0) {
    const auto& e = load(spec.substr(8));
    if (!e.has_tensor()) throw FormatError(e.name + " has no structure constants in the catalog");
    return e.instances().front().tensor;
  }
  json j = read_json_file(spec);
  return algebra_from_json(j.contains("algebra") ? j["algebra"] : j);
}

inline std::pair<int, int> parse_signature(const std::string& s) {
  auto comma = s.find(',');
  try {
    std::size_t u1 = 0, u2 = 0;
    if (comma == std::string::npos) throw std::invalid_argument(s);
    int p = std::stoi(s.substr(0, comma), &u1);
    int k = std::stoi(s.substr(comma + 1), &u2);
    if (u1 != comma || u2 != s.size() - comma - 1 || p < 0 || k < 0) throw std::invalid_argument(s);
    return {p, k};
  } catch (const std::exception&) {
    throw FormatError("signature must be 'p,k', got '" + s + "'");
  }
}

inline FrameLayout load_layout(const std::string& file, const std::string& signature) {
  if (!file.empty()) {
    json j = read_json_file(file);
    return layout_from_json(j.contains("layout") ? j["layout"] : j);
  }
  if (!signature.empty()) {
    auto [p, k] = parse_signature(signature);
    return FrameLayout::canonical(p, k);
  }
  throw FormatError("need --layout FILE or --signature p,k");
}

/// CSV, or @FILE holding {"class": [...]} (a `build` bundle qualifies).
inline std::vector<Rational> load_class(const std::string& spec) {
  if (!spec.empty() && spec[0] == '@') return class_from_json(read_json_file(spec.substr(1)));
  return parse_class_csv(spec);
}

/// "G2", "A3", or a sum "A2+A1".
inline GradedAlgebra split_algebra(const std::string& spec) {
  std::vector<GradedAlgebra> parts;
  std::stringstream in(spec);
  std::string item;
  while (std::getline(in, item, '+')) {
    try {
      parts.push_back(chevalley_split_form(CartanMatrix::parse(item)));
    } catch (const std::invalid_argument& e) {
      throw FormatError(e.what());
    }
  }
  if (parts.empty()) throw FormatError("empty --split");
  return parts.size() == 1 ? parts[0] : semisimple_merge(parts);
}

inline unsigned resolve_threads(int flag) {
  if (flag > 0) return static_cast<unsigned>(flag);
  if (const char* env = std::getenv("NULLCONE_THREADS")) {
    try {
      int v = std::stoi(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    throw FormatError(std::string("NULLCONE_THREADS must be a positive integer, got '") + env + "'");
  }
  return 1;
}

inline json ricci_components(const FrameLayout& L, const StructureTensor& T) {
  auto R = riemann(L, T, levi_civita(L, T));
  auto ric = ricci(R);
  json out = json::array();
  const auto& m = ric.tensor.matrix();
  for (std::size_t a = 0; a < m.rows(); ++a)
    for (std::size_t b = a; b < m.cols(); ++b)
      if (!m(a, b).is_zero()) out.push_back({{"a", a + 1}, {"b", b + 1}, {"value", m(a, b).str()}});
  return out;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Null-cone membership of Lie algebras under the O(p,q) action"};
  app.name("nullcone");
  app.require_subcommand(1);
  app.fallthrough();
  int indent = 2;
  int threads_flag = 0;
  app.add_option("--json-indent", indent, "JSON indentation; negative prints one line");
  app.add_option("--threads", threads_flag, "worker threads (overrides NULLCONE_THREADS)");

  std::string algebra, layout, klass, signature, split, which, name, format = "json";
  bool pad = false;

  auto* check = app.add_subcommand("check", "Jacobi identity and structural summary");
  check->add_option("--algebra", algebra, "algebra JSON, bundle, or catalog:NAME")->required();

  auto* certify = app.add_subcommand("certify", "check a class on a layout");
  certify->add_option("--algebra", algebra)->required();
  certify->add_option("--layout", layout, "layout JSON");
  certify->add_option("--signature", signature, "canonical layout p,k");
  certify->add_option("--class", klass, "CSV or @FILE")->required();

  auto* find = app.add_subcommand("find-class", "solve for a class on a fixed layout");
  find->add_option("--algebra", algebra)->required();
  find->add_option("--layout", layout);
  find->add_option("--signature", signature);

  auto* search = app.add_subcommand("search", "exhaustive frame search at a signature");
  search->add_option("--algebra", algebra)->required();
  search->add_option("--signature", signature)->required();

  auto* build = app.add_subcommand("build", "null-frame realization of a split semisimple algebra");
  build->add_option("--split", split, "Cartan type, e.g. G2 or A2+A1")->required();
  build->add_flag("--pad", pad, "append the central R^m and emit the realization");

  auto* curv = app.add_subcommand("curvature", "curvature invariants of the left-invariant metric");
  curv->add_option("--algebra", algebra)->required();
  curv->add_option("--layout", layout);
  curv->add_option("--signature", signature);

  auto* tables = app.add_subcommand("tables", "regenerate a table");
  tables->add_option("--which", which)->required()->check(CLI::IsMember(table_ids()));
  tables->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));

  auto* cat = app.add_subcommand("catalog", "catalog queries");
  cat->require_subcommand(1);
  CatalogFilter filter;
  std::string filter_verdict;
  auto* list = cat->add_subcommand("list", "entries matching a filter");
  list->add_option("--dim", filter.dim);
  list->add_option("--max-dim", filter.max_dim);
  list->add_option("--flag", filter.flag);
  list->add_option("--verdict", filter_verdict)->check(CLI::IsMember({"in", "not_in", "inconclusive"}));
  list->add_option("--source", filter.source);
  auto* show = cat->add_subcommand("show", "one entry");
  show->add_option("name", name)->required();
  auto* verify = cat->add_subcommand("verify", "re-run every certificate and negative control");
  verify->add_option("--max-dim", filter.max_dim);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }

  auto emit = [&](const json& j) { out << j.dump(indent) << "\n"; };

  try {
    const unsigned threads = detail::resolve_threads(threads_flag);

    if (*check) {
      auto T = detail::load_algebra(algebra);
      auto violations = jacobi_check(T);
      json v = json::array();
      for (std::size_t i = 0; i < violations.size() && i < 20; ++i) {
        const auto& x = violations[i];
        v.push_back({{"a", x.a}, {"b", x.b}, {"c", x.c}, {"e", x.e}, {"residual", x.residual.str()}});
      }
      json j = {{"dim", T.dim()}, {"constants", T.entries().size()}, {"jacobi_ok", violations.empty()}, {"jacobi_violations", v}};
      if (violations.empty()) {
        auto lcs = lower_central_series(T);
        auto der = derived_series(T);
        j["lower_central_series"] = lcs.dims;
        j["derived_series"] = der.dims;
        j["nilpotent"] = lcs.reaches_zero;
        j["solvable"] = der.reaches_zero;
      }
      emit(j);
      return violations.empty() ? kOk : kNegative;
    }

    if (*certify) {
      auto T = detail::load_algebra(algebra);
      auto L = detail::load_layout(layout, signature);
      auto x = detail::load_class(klass);
      auto r = certify_class(L, T, x);
      json j = to_json(r);
      j["class"] = to_json(x);
      j["layout"] = to_json(L);
      emit(j);
      return r.certified ? kOk : kNegative;
    }

    if (*find) {
      auto T = detail::load_algebra(algebra);
      auto L = detail::load_layout(layout, signature);
      check_dims(L, T);
      auto nc = find_class({L.p(), weight_support(L, T)});
      json j = {{"layout", to_json(L)}, {"feasible", nc.has_value()}};
      if (nc) {
        std::vector<Rational> slot(L.p());
        for (std::size_t s = 0; s < nc->values.size(); ++s) slot[nc->order[s] - 1] = nc->values[s];
        j["class"] = to_json(slot);
        j["normalized"] = to_json(nc->values);
        j["certificate"] = to_json(certify_class(L, T, slot));
      }
      emit(j);
      return nc ? kOk : kNegative;
    }

    if (*search) {
      auto T = detail::load_algebra(algebra);
      auto [p, k] = detail::parse_signature(signature);
      auto reps = membership_report(T, {{p, k}}, {.threads = threads});
      emit(to_json(reps.front()));
      switch (reps.front().verdict) {
        case Verdict::certified: return kOk;
        case Verdict::infeasible_for_all_searched_frames: return kNegative;
        case Verdict::inconclusive: return kError;
      }
    }

    if (*build) {
      auto G = detail::split_algebra(split);
      auto plan = pairing_plan(G);
      json provenance = {{"kind", G.origin.kind}, {"label", G.origin.label}, {"m", plan.m}, {"grading", G.positive_dims()}};
      if (!pad) {
        emit({{"algebra", to_json(*G.bracket)}, {"labels", G.labels}, {"class", to_json(plan.class_vector())}, {"provenance", provenance}});
        return kOk;
      }
      auto R = realize(G, plan);
      json labels = json::array();
      for (int s : R.source) labels.push_back(s == 0 ? std::string("R") : G.labels[s - 1]);
      provenance["padding"] = R.padding;
      emit({{"algebra", to_json(R.algebra)},
            {"layout", to_json(R.layout)},
            {"class", to_json(R.class_vector)},
            {"labels", labels},
            {"certificate", to_json(certify_class(R.layout, R.algebra, R.class_vector))},
            {"provenance", provenance}});
      return kOk;
    }

    if (*curv) {
      auto T = detail::load_algebra(algebra);
      auto L = detail::load_layout(layout, signature);
      check_dims(L, T);
      emit({{"layout", to_json(L)},
            {"invariants", to_json(invariant_suite(L, T))},
            {"ricci", detail::ricci_components(L, T)},
            {"killing_nilpotent", nilpotent_operator_check(killing_operator(L, T).matrix).nilpotent}});
      return kOk;
    }

    if (*tables) {
      auto t = reproduce_table(which, threads);
      if (format == "text")
        out << render_text(t);
      else
        emit(to_json(t));
      return kOk;
    }

    if (*list) {
      if (!filter_verdict.empty()) filter.verdict = catalog_verdict_from_string(filter_verdict);
      json j = json::array();
      for (const auto* e : enumerate(filter))
        j.push_back({{"name", e->name}, {"dim", e->dim}, {"verdict", to_string(e->verdict)}, {"source", e->source}});
      emit(j);
      return kOk;
    }
    if (*show) {
      emit(to_json(load(name)));
      return kOk;
    }
    if (*verify) {
      auto report = verify_all({.threads = threads, .max_dim = filter.max_dim});
      json checks = json::array();
      for (const auto& c : report.checks) checks.push_back(to_json(c));
      emit({{"all_passed", report.all_passed()}, {"checks", checks}});
      if (!report.all_passed()) err << "error: catalog verification failed\n";
      return report.all_passed() ? kOk : kError;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}

}  // namespace nullcone::cli

#endif  // NULLCONE_CLI_HPP
