#pragma once

// JSON spec files. Every document is an object with a "kind" tag:
//
//   finset-map          {"dom": S, "cod": S, "table": [..]}
//   monoid, group       {"name", "order", "unit", "table": row-major Cayley table}
//                       groups may instead give {"preset": "cyclic" | "elementary-abelian", "order" | "bits"}
//   internal-category   {"name", "objects": S, "morphisms": S, "d", "c", "eta", "mu"}
//                       mu lists one result per composable pair (a, b), c(a) == d(b),
//                       in lexicographic order of (a, b)
//   internal-groupoid   as internal-category plus "iota"
//   sub-slice           {"objects": [{"size": n, "f": [..]}], "arrows": [{"src", "dst", "map"}],
//                        "close": true}
//   round-config        {"rounds": [[..], ..]}  one table per round function
//   fibration           {"base": C, "total": C, "proj": {"objects": [..], "arrows": [..]}}
//                       with C = {"objects": [keys], "arrows": [{"src", "dst", "key"}],
//                                 "identities": [..], "composites": [[g, f, g.f], ..]}
//
// where S is a size or a list of distinct labels.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "spanforge/catalog.hpp"
#include "spanforge/fib.hpp"

namespace spanforge::spec {

using nlohmann::json;

namespace detail {

[[noreturn]] inline void fail(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

inline std::size_t natural(const json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) fail(std::string(what) + " must be a non-negative integer");
  return j.get<std::size_t>();
}

inline std::vector<std::size_t> naturals(const json& j, const char* what) {
  if (!j.is_array()) fail(std::string(what) + " must be an array of non-negative integers");
  std::vector<std::size_t> out;
  for (const auto& v : j) out.push_back(natural(v, what));
  return out;
}

inline std::string text(const json& j, const char* what) {
  if (!j.is_string()) fail(std::string(what) + " must be a string");
  return j.get<std::string>();
}

}  // namespace detail

inline json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

inline json load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

inline std::string kind_of(const json& j) { return detail::text(detail::field(j, "kind"), "kind"); }

inline void require_kind(const json& j, const std::string& kind) {
  if (kind_of(j) != kind) detail::fail("expected kind \"" + kind + "\", found \"" + kind_of(j) + "\"");
}

inline FinSet finset_from_json(const json& j) {
  if (j.is_array()) {
    std::vector<std::string> labels;
    for (const auto& l : j) labels.push_back(detail::text(l, "label"));
    const auto n = labels.size();
    return FinSet(n, std::move(labels));
  }
  return FinSet(detail::natural(j, "set size"));
}

inline json finset_to_json(const FinSet& s) {
  if (s.has_labels()) return json(s.labels());
  return json(s.size());
}

inline FinMap map_from_json(const FinSet& dom, const FinSet& cod, const json& j, const char* what) {
  return FinMap(dom, cod, detail::naturals(j, what));
}

inline FinMap finset_map_from_json(const json& j) {
  require_kind(j, "finset-map");
  return map_from_json(finset_from_json(detail::field(j, "dom")), finset_from_json(detail::field(j, "cod")),
                       detail::field(j, "table"), "table");
}

inline Monoid monoid_from_json(const json& j) {
  const auto kind = kind_of(j);
  if (kind != "monoid" && kind != "group") detail::fail("expected a monoid or group, found \"" + kind + "\"");
  if (j.contains("preset")) {
    const auto preset = detail::text(j.at("preset"), "preset");
    if (preset == "cyclic") return monoids::cyclic(detail::natural(detail::field(j, "order"), "order"));
    if (preset == "elementary-abelian") {
      const auto bits = detail::natural(detail::field(j, "bits"), "bits");
      if (bits > 12) detail::fail("elementary-abelian preset supports at most 12 bits");
      return monoids::elementary_abelian(bits);
    }
    detail::fail("unknown preset \"" + preset + "\"");
  }
  Monoid m;
  m.name = j.contains("name") ? detail::text(j.at("name"), "name") : kind;
  m.order = detail::natural(detail::field(j, "order"), "order");
  m.table = detail::naturals(detail::field(j, "table"), "table");
  m.unit = detail::natural(detail::field(j, "unit"), "unit");
  if (m.table.size() != m.order * m.order) {
    throw Error(ErrorKind::MalformedTables, "Cayley table needs " + std::to_string(m.order * m.order) + " entries");
  }
  for (auto v : m.table) {
    if (v >= m.order) throw Error(ErrorKind::MalformedTables, "Cayley table entry out of range");
  }
  return m;
}

/// Throws NotAGroup if the table fails the group axioms.
inline Group group_from_json(const json& j) { return Group(monoid_from_json(j)); }

inline InternalCategory internal_category_from_json(const json& j) {
  const auto kind = kind_of(j);
  if (kind != "internal-category" && kind != "internal-groupoid") {
    detail::fail("expected an internal category, found \"" + kind + "\"");
  }
  InternalCategory ic;
  ic.name = j.contains("name") ? detail::text(j.at("name"), "name") : kind;
  ic.o = finset_from_json(detail::field(j, "objects"));
  ic.m = finset_from_json(detail::field(j, "morphisms"));
  ic.d = map_from_json(ic.m, ic.o, detail::field(j, "d"), "d");
  ic.c = map_from_json(ic.m, ic.o, detail::field(j, "c"), "c");
  ic.eta = map_from_json(ic.o, ic.m, detail::field(j, "eta"), "eta");
  const auto mu = detail::naturals(detail::field(j, "mu"), "mu");
  ic.mu = FinMap(FinSet(mu.size()), ic.m, mu);
  return ic;
}

inline InternalGroupoid internal_groupoid_from_json(const json& j) {
  require_kind(j, "internal-groupoid");
  auto ic = internal_category_from_json(j);
  auto iota = map_from_json(ic.m, ic.m, detail::field(j, "iota"), "iota");
  return InternalGroupoid{std::move(ic), std::move(iota)};
}

inline json to_json(const InternalCategory& ic) {
  return json{{"kind", "internal-category"}, {"name", ic.name},        {"objects", finset_to_json(ic.o)},
              {"morphisms", finset_to_json(ic.m)}, {"d", ic.d.table()}, {"c", ic.c.table()},
              {"eta", ic.eta.table()},         {"mu", ic.mu.table()}};
}

inline json to_json(const InternalGroupoid& g) {
  auto j = to_json(g.cat);
  j["kind"] = "internal-groupoid";
  j["iota"] = g.iota.table();
  return j;
}

/// Sub-slice over ic; with "close" (default true) identities and composites
/// are added, otherwise the arrows must already form a category.
inline SubSlice subslice_from_json(const json& j, const InternalCategoryRef& ic) {
  require_kind(j, "sub-slice");
  std::vector<SliceObject> objects;
  for (const auto& o : detail::field(j, "objects")) {
    const FinSet a(detail::natural(detail::field(o, "size"), "size"));
    objects.emplace_back(map_from_json(a, ic->o, detail::field(o, "f"), "f"));
  }
  std::vector<SubSlice::Arrow> arrows;
  if (j.contains("arrows")) {
    for (const auto& a : j.at("arrows")) {
      const auto src = detail::natural(detail::field(a, "src"), "src");
      const auto dst = detail::natural(detail::field(a, "dst"), "dst");
      if (src >= objects.size() || dst >= objects.size()) detail::fail("sub-slice arrow endpoint out of range");
      arrows.push_back(SubSlice::Arrow{src, dst, map_from_json(objects[src].a(), objects[dst].a(), detail::field(a, "map"), "map")});
    }
  }
  const bool close = !j.contains("close") || j.at("close").get<bool>();
  if (close) return SubSlice::closure(ic, std::move(objects), std::move(arrows));
  SubSlice ss{ic, std::move(objects), std::move(arrows)};
  (void)ss.category();
  return ss;
}

inline std::vector<std::vector<std::size_t>> rounds_from_json(const json& j) {
  require_kind(j, "round-config");
  std::vector<std::vector<std::size_t>> out;
  const auto& rounds = detail::field(j, "rounds");
  if (!rounds.is_array()) detail::fail("rounds must be an array of tables");
  for (const auto& r : rounds) out.push_back(detail::naturals(r, "round table"));
  return out;
}

inline FiniteCategory category_from_json(const json& j) {
  FiniteCategory cat;
  for (const auto& o : detail::field(j, "objects")) cat.add_object(detail::text(o, "object key"));
  for (const auto& a : detail::field(j, "arrows")) {
    cat.add_arrow(detail::natural(detail::field(a, "src"), "src"), detail::natural(detail::field(a, "dst"), "dst"),
                  detail::text(detail::field(a, "key"), "key"));
  }
  const auto ids = detail::naturals(detail::field(j, "identities"), "identities");
  if (ids.size() != cat.object_count()) detail::fail("one identity per object is required");
  for (std::size_t o = 0; o < ids.size(); ++o) cat.set_identity(o, ids[o]);
  for (const auto& t : detail::field(j, "composites")) {
    const auto v = detail::naturals(t, "composite");
    if (v.size() != 3) detail::fail("composites are [g, f, g.f] triples");
    for (auto x : v) {
      if (x >= cat.arrow_count()) detail::fail("composite refers to an unknown arrow");
    }
    cat.set_composite(v[0], v[1], v[2]);
  }
  return cat;
}

inline FibrationInstance fibration_from_json(const json& j) {
  require_kind(j, "fibration");
  FibrationInstance fi;
  fi.base = category_from_json(detail::field(j, "base"));
  fi.total = category_from_json(detail::field(j, "total"));
  const auto& proj = detail::field(j, "proj");
  fi.proj.object_map = detail::naturals(detail::field(proj, "objects"), "proj objects");
  fi.proj.arrow_map = detail::naturals(detail::field(proj, "arrows"), "proj arrows");
  return fi;
}

}  // namespace spanforge::spec
