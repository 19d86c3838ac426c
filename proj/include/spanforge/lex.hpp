#pragma once

// Finite-limit preserving functors between categories of finite sets,
// supplied as data: a tabulated object map and arrow map over a finite
// fragment, plus the cospans whose pullbacks they must preserve. Lex-ness is
// then decidable: the comparison maps into the canonical pullbacks are
// computed and checked for bijectivity.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "spanforge/internal.hpp"
#include "spanforge/report.hpp"

namespace spanforge {

struct LexFragment {
  std::vector<FinSet> sets;
  std::vector<FinMap> maps;
  std::vector<std::pair<FinMap, FinMap>> cospans;

  void add_set(const FinSet& s) {
    if (std::find(sets.begin(), sets.end(), s) == sets.end()) sets.push_back(s);
  }

  void add_map(const FinMap& f) {
    add_set(f.dom());
    add_set(f.cod());
    if (std::find(maps.begin(), maps.end(), f) == maps.end()) maps.push_back(f);
  }

  /// Adds a cospan, its canonical pullback and the projections.
  void add_cospan(const FinMap& f, const FinMap& g) {
    add_map(f);
    add_map(g);
    const auto pb = pullback(f, g);
    add_map(pb.proj_left);
    add_map(pb.proj_right);
    for (const auto& [x, y] : cospans) {
      if (x == f && y == g) return;
    }
    cospans.emplace_back(f, g);
  }

  void add_terminal() { add_set(terminal_set()); }

  /// Everything the transport of an internal category touches.
  void add_internal_category(const InternalCategory& ic) {
    add_terminal();
    add_map(ic.d);
    add_map(ic.c);
    add_map(ic.eta);
    add_cospan(ic.c, ic.d);
    const auto pairs = ic.composable_pairs();
    add_map(FinMap(pairs.span.apex(), ic.m, ic.mu.table()));
    add_map(FinMap::to_terminal(ic.o));
    add_map(FinMap::to_terminal(ic.m));
  }
};

class LexFunctor {
 public:
  LexFunctor() = default;

  template <class ObjFn, class MapFn>
  static LexFunctor tabulate(std::string name, const LexFragment& fragment, ObjFn&& obj, MapFn&& map) {
    LexFunctor k;
    k.name_ = std::move(name);
    k.fragment_ = fragment;
    for (const auto& s : fragment.sets) {
      k.objects_.emplace(s, obj(s));
      k.arrows_.emplace(FinMap::identity(s), map(FinMap::identity(s)));
    }
    for (const auto& f : fragment.maps) k.arrows_.emplace(f, map(f));
    for (const auto& [f, g] : fragment.cospans) {
      const auto pb = pullback(f, g);
      k.objects_.emplace(pb.apex, obj(pb.apex));
      k.arrows_.emplace(pb.proj_left, map(pb.proj_left));
      k.arrows_.emplace(pb.proj_right, map(pb.proj_right));
    }
    return k;
  }

  const std::string& name() const noexcept { return name_; }
  const LexFragment& fragment() const noexcept { return fragment_; }
  const std::map<FinSet, FinSet>& object_table() const noexcept { return objects_; }
  const std::map<FinMap, FinMap>& arrow_table() const noexcept { return arrows_; }

  bool covers(const FinSet& s) const { return objects_.count(s) > 0; }
  bool covers(const FinMap& f) const { return arrows_.count(f) > 0; }

  FinSet operator()(const FinSet& s) const {
    auto it = objects_.find(s);
    if (it == objects_.end()) {
      throw Error(ErrorKind::InvalidArgument, name_ + " is not tabulated on a set of size " + std::to_string(s.size()));
    }
    return it->second;
  }

  FinMap operator()(const FinMap& f) const {
    auto it = arrows_.find(f);
    if (it == arrows_.end()) {
      throw Error(ErrorKind::InvalidArgument, name_ + " is not tabulated on the map " + f.to_string());
    }
    return it->second;
  }

 private:
  std::string name_;
  LexFragment fragment_;
  std::map<FinSet, FinSet> objects_;
  std::map<FinMap, FinMap> arrows_;
};

/// Functoriality on the fragment, preservation of the terminal object and of
/// every listed pullback.
inline Report verify_lex(const LexFunctor& k) {
  Report r;
  std::string bad;
  for (const auto& [f, kf] : k.arrow_table()) {
    if (kf.dom() != k(f.dom()) || kf.cod() != k(f.cod())) {
      bad = "image of " + f.to_string() + " has the wrong endpoints";
      break;
    }
  }
  r.add("functor-endpoints", bad.empty(), bad);
  if (!bad.empty()) return r;

  for (const auto& [s, ks] : k.object_table()) {
    if (k(FinMap::identity(s)) != FinMap::identity(ks)) {
      bad = "identity on a set of size " + std::to_string(s.size()) + " not preserved";
      break;
    }
  }
  r.add("functor-identities", bad.empty(), bad);

  for (const auto& [f, kf] : k.arrow_table()) {
    for (const auto& [g, kg] : k.arrow_table()) {
      if (f.cod() != g.dom()) continue;
      const auto gf = compose(g, f);
      if (!k.covers(gf)) continue;
      if (k(gf) != compose(kg, kf)) {
        bad = "composite " + g.to_string() + " after " + f.to_string() + " not preserved";
        break;
      }
    }
    if (!bad.empty()) break;
  }
  r.add("functor-composition", bad.empty(), bad);

  if (k.covers(terminal_set())) {
    const auto image = k(terminal_set());
    r.add("preserves-terminal", image.size() == 1,
          image.size() == 1 ? "" : "terminal object sent to a set of size " + std::to_string(image.size()));
  }

  for (const auto& [f, g] : k.fragment().cospans) {
    const auto pb = pullback(f, g);
    const auto target = pullback(k(f), k(g));
    bool ok = false;
    try {
      ok = mediating(target, k(pb.proj_left), k(pb.proj_right)).is_bijective();
    } catch (const Error&) {
      ok = false;
    }
    if (!ok) {
      bad = "pullback of " + f.to_string() + " and " + g.to_string() + " not preserved";
      break;
    }
  }
  r.add("preserves-pullbacks", bad.empty(), bad);
  return r;
}

/// The comparison iso K(A x_O B) -> K(A) x_K(O) K(B).
inline FinMap pullback_comparison(const LexFunctor& k, const FinMap& f, const FinMap& g) {
  const auto pb = pullback(f, g);
  return mediating(pullback(k(f), k(g)), k(pb.proj_left), k(pb.proj_right));
}

inline LexFunctor identity_lex_functor(const LexFragment& fragment) {
  return LexFunctor::tabulate(
      "Id", fragment, [](const FinSet& s) { return s; }, [](const FinMap& f) { return f; });
}

namespace detail {

inline std::size_t encode_map(const std::vector<std::size_t>& table, std::size_t base) {
  std::size_t code = 0;
  for (auto v : table) code = code * base + v;
  return code;
}

}  // namespace detail

/// Hom(S, -): X |-> X^S with maps enumerated lexicographically, f |-> f . -.
inline LexFunctor hom_lex_functor(const FinSet& s, const LexFragment& fragment) {
  auto obj = [s](const FinSet& x) {
    const auto n = saturating_power(x.size(), s.size());
    require_within_cap(n, "Hom(S, X)");
    return FinSet(static_cast<std::size_t>(n));
  };
  auto map = [s, obj](const FinMap& f) {
    const auto dom = obj(f.dom());
    const auto cod = obj(f.cod());
    std::vector<std::size_t> t;
    t.reserve(dom.size());
    for_each_map(s, f.dom(), [&](const FinMap& g) {
      t.push_back(detail::encode_map(compose(f, g).table(), f.cod().size()));
    });
    return FinMap(dom, cod, std::move(t));
  };
  return LexFunctor::tabulate("Hom(" + std::to_string(s.size()) + ",-)", fragment, obj, map);
}

/// X |-> X + 1: a functor that does not preserve the terminal object.
inline LexFunctor pointed_functor(const LexFragment& fragment) {
  auto obj = [](const FinSet& x) { return FinSet(x.size() + 1); };
  auto map = [](const FinMap& f) {
    auto t = f.table();
    t.push_back(f.cod().size());
    return FinMap(FinSet(f.dom().size() + 1), FinSet(f.cod().size() + 1), std::move(t));
  };
  return LexFunctor::tabulate("(-)+1", fragment, obj, map);
}

/// second after first, tabulated over first's fragment.
inline LexFunctor compose(const LexFunctor& second, const LexFunctor& first) {
  return LexFunctor::tabulate(
      second.name() + "." + first.name(), first.fragment(),
      [&](const FinSet& s) { return second(first(s)); }, [&](const FinMap& f) { return second(first(f)); });
}

/// Transports an internal category along a lex functor.
inline InternalCategory apply_lex_functor(const LexFunctor& k, const InternalCategory& ic) {
  const auto lex = verify_lex(k);
  if (!lex.passed()) throw Error(ErrorKind::NotLex, lex.first_failure()->detail);
  if (!k.covers(terminal_set()) || k(terminal_set()).size() != 1) {
    throw Error(ErrorKind::NotLex, k.name() + " is not known to preserve the terminal object");
  }
  bool listed = false;
  for (const auto& [f, g] : k.fragment().cospans) listed = listed || (f == ic.c && g == ic.d);
  if (!listed) throw Error(ErrorKind::NotLex, k.name() + " has no preservation witness for M x_O M");

  const auto pairs = ic.composable_pairs();
  const FinMap mu(pairs.span.apex(), ic.m, ic.mu.table());
  const auto cmp = pullback_comparison(k, ic.c, ic.d);

  InternalCategory out;
  out.name = k.name() + "(" + ic.name + ")";
  out.o = k(ic.o);
  out.m = k(ic.m);
  out.d = k(ic.d);
  out.c = k(ic.c);
  out.eta = k(ic.eta);
  out.mu = compose(k(mu), cmp.inverse());
  return out;
}

}  // namespace spanforge
