#pragma once

// Internal categories and groupoids in finite sets.
//
// Composable pairs convention: mu is defined on the canonical pullback of c
// along d, so an element (a, b) of M x_O M satisfies c(a) == d(b) and
// mu(a, b) is "a, then b". This is the tensor M (x) M of the span module.
// A pairing written <later, earlier> in the usual categorical notation is
// stored here as (earlier, later).

#include <map>
#include <memory>
#include <string>

#include "spanforge/finite_category.hpp"
#include "spanforge/report.hpp"
#include "spanforge/span.hpp"

namespace spanforge {

struct InternalCategory {
  std::string name;
  FinSet o;
  FinSet m;
  FinMap d;
  FinMap c;
  FinMap eta;
  FinMap mu;

  Span span() const { return Span(o, m, d, c); }
  Span unit_span() const { return Span::unit(o); }

  /// M (x) M, whose apex is mu's domain.
  TensorProduct composable_pairs() const { return tensor(span(), span()); }

  TwoCell eta_cell() const { return TwoCell(unit_span(), span(), eta); }
  TwoCell mu_cell() const { return TwoCell(composable_pairs().span, span(), mu); }

  /// mu on a composable pair; throws if (a, b) is not composable.
  std::size_t compose_pair(std::size_t a, std::size_t b) const {
    return mu.table()[composable_pairs().pullback.at(a, b)];
  }

  friend bool operator==(const InternalCategory& x, const InternalCategory& y) {
    return x.o == y.o && x.m == y.m && x.d == y.d && x.c == y.c && x.eta == y.eta && x.mu == y.mu;
  }
};

using InternalCategoryRef = std::shared_ptr<const InternalCategory>;

inline InternalCategoryRef share(InternalCategory ic) {
  return std::make_shared<const InternalCategory>(std::move(ic));
}

struct InternalGroupoid {
  InternalCategory cat;
  FinMap iota;
};

namespace detail {

inline void require_shapes(const InternalCategory& ic) {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::MalformedTables, what); };
  if (ic.d.dom() != ic.m || ic.d.cod() != ic.o) fail("d must map M to O");
  if (ic.c.dom() != ic.m || ic.c.cod() != ic.o) fail("c must map M to O");
  if (ic.eta.dom() != ic.o || ic.eta.cod() != ic.m) fail("eta must map O to M");
  if (ic.mu.cod() != ic.m) fail("mu must land in M");
}

inline std::string pair_text(std::size_t a, std::size_t b) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

}  // namespace detail

/// Checks the internal category axioms. Stops at the first violated diagram
/// and reports it with a witness element.
inline Report check_internal_category(const InternalCategory& ic) {
  detail::require_shapes(ic);
  Report r;
  const auto& o = ic.o;

  auto first_mismatch = [](const FinMap& x, const FinMap& y) -> std::size_t {
    for (std::size_t i = 0; i < x.table().size(); ++i) {
      if (x.table()[i] != y.table()[i]) return i;
    }
    return npos;
  };

  const auto id_o = FinMap::identity(o);
  if (auto i = first_mismatch(compose(ic.d, ic.eta), id_o); i != npos) {
    r.add("unit-source", false, "d(eta(" + std::to_string(i) + ")) != " + std::to_string(i));
    return r;
  }
  r.add("unit-source", true);
  if (auto i = first_mismatch(compose(ic.c, ic.eta), id_o); i != npos) {
    r.add("unit-target", false, "c(eta(" + std::to_string(i) + ")) != " + std::to_string(i));
    return r;
  }
  r.add("unit-target", true);

  const auto mm = ic.composable_pairs();
  if (ic.mu.dom().size() != mm.span.apex().size()) {
    r.add("composition-domain", false,
          "mu has " + std::to_string(ic.mu.dom().size()) + " entries but there are " +
              std::to_string(mm.span.apex().size()) + " composable pairs");
    return r;
  }
  r.add("composition-domain", true);
  const FinMap mu(mm.span.apex(), ic.m, ic.mu.table());

  // mu is a 2-cell M (x) M => M.
  for (std::size_t i = 0; i < mu.dom().size(); ++i) {
    const auto [a, b] = mm.pullback.elems[i];
    if (ic.d.table()[mu.table()[i]] != ic.d.table()[a]) {
      r.add("composition-source", false, "d(mu" + detail::pair_text(a, b) + ") != d(" + std::to_string(a) + ")");
      return r;
    }
  }
  r.add("composition-source", true);
  for (std::size_t i = 0; i < mu.dom().size(); ++i) {
    const auto [a, b] = mm.pullback.elems[i];
    if (ic.c.table()[mu.table()[i]] != ic.c.table()[b]) {
      r.add("composition-target", false, "c(mu" + detail::pair_text(a, b) + ") != c(" + std::to_string(b) + ")");
      return r;
    }
  }
  r.add("composition-target", true);

  const auto mbar = ic.span();
  const TwoCell mu_cell(mm.span, mbar, mu);
  const auto id_m = TwoCell::identity(mbar);

  // Associativity: mu . (mu (x) id) == mu . (id (x) mu) . reassociate on (M (x) M) (x) M.
  {
    const auto lhs = compose(mu_cell, tensor_cells(mu_cell, id_m));
    const auto rhs = compose(mu_cell, compose(tensor_cells(id_m, mu_cell), reassociate(mbar, mbar, mbar)));
    const auto triples = tensor(mm.span, mbar);
    if (auto i = first_mismatch(lhs.map(), rhs.map()); i != npos) {
      const auto [ab, c] = triples.pullback.elems[i];
      const auto [a, b] = mm.pullback.elems[ab];
      r.add("associativity", false,
            "composable triple (" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) +
                "): " + std::to_string(lhs.map()(i)) + " vs " + std::to_string(rhs.map()(i)));
      return r;
    }
    r.add("associativity", true);
  }

  // Units: mu . (eta (x) id) == projection O (x) M -> M, and symmetrically.
  {
    const auto eta_cell = TwoCell(ic.unit_span(), mbar, ic.eta);
    const auto om = tensor(ic.unit_span(), mbar);
    const auto lhs = compose(mu_cell, tensor_cells(eta_cell, id_m));
    if (auto i = first_mismatch(lhs.map(), om.proj_right()); i != npos) {
      const auto [x, a] = om.pullback.elems[i];
      r.add("left-unit", false, "mu(eta(" + std::to_string(x) + ")," + std::to_string(a) + ") != " + std::to_string(a));
      return r;
    }
    r.add("left-unit", true);
    const auto mo = tensor(mbar, ic.unit_span());
    const auto rhs = compose(mu_cell, tensor_cells(id_m, eta_cell));
    if (auto i = first_mismatch(rhs.map(), mo.proj_left()); i != npos) {
      const auto [a, x] = mo.pullback.elems[i];
      r.add("right-unit", false, "mu(" + std::to_string(a) + ",eta(" + std::to_string(x) + ")) != " + std::to_string(a));
      return r;
    }
    r.add("right-unit", true);
  }
  return r;
}

/// Checks the groupoid laws on top of a valid internal category:
/// c . iota == d, d . iota == c, mu(iota a, a) == eta(c a), mu(a, iota a) == eta(d a),
/// and the derived law iota . iota == id.
inline Report check_internal_groupoid(const InternalGroupoid& g) {
  const auto& ic = g.cat;
  if (!check_internal_category(ic).passed()) {
    throw Error(ErrorKind::UnderlyingCategoryInvalid, "underlying internal category fails its axioms");
  }
  if (g.iota.dom() != ic.m || g.iota.cod() != ic.m) {
    throw Error(ErrorKind::MalformedTables, "iota must map M to M");
  }
  Report r;
  const auto n = ic.m.size();
  for (std::size_t a = 0; a < n; ++a) {
    const auto inv = g.iota(a);
    if (ic.c(inv) != ic.d(a) || ic.d(inv) != ic.c(a)) {
      r.add("inverse-endpoints", false, "iota(" + std::to_string(a) + ") does not swap domain and codomain");
      return r;
    }
  }
  r.add("inverse-endpoints", true);

  const auto mm = ic.composable_pairs();
  for (std::size_t a = 0; a < n; ++a) {
    // <id, iota> in the later-first notation: iota(a), then a.
    if (ic.mu(mm.pullback.at(g.iota(a), a)) != ic.eta(ic.c(a))) {
      r.add("inverse-then-arrow", false, "mu(iota(" + std::to_string(a) + ")," + std::to_string(a) + ") is not an identity");
      return r;
    }
  }
  r.add("inverse-then-arrow", true);
  for (std::size_t a = 0; a < n; ++a) {
    if (ic.mu(mm.pullback.at(a, g.iota(a))) != ic.eta(ic.d(a))) {
      r.add("arrow-then-inverse", false, "mu(" + std::to_string(a) + ",iota(" + std::to_string(a) + ")) is not an identity");
      return r;
    }
  }
  r.add("arrow-then-inverse", true);

  const bool involution = compose(g.iota, g.iota) == FinMap::identity(ic.m) && g.iota.is_bijective();
  r.add("iota-involution", involution, involution ? "" : "iota . iota != id");
  return r;
}

/// An internal functor given by object and morphism maps.
struct InternalFunctor {
  InternalCategoryRef src;
  InternalCategoryRef dst;
  FinMap fo;
  FinMap fm;
};

inline Report check_internal_functor(const InternalFunctor& fn) {
  const auto& s = *fn.src;
  const auto& t = *fn.dst;
  if (fn.fo.dom() != s.o || fn.fo.cod() != t.o || fn.fm.dom() != s.m || fn.fm.cod() != t.m) {
    throw Error(ErrorKind::MalformedTables, "internal functor components have the wrong shape");
  }
  Report r;
  r.add("preserves-source", compose(t.d, fn.fm) == compose(fn.fo, s.d));
  r.add("preserves-target", compose(t.c, fn.fm) == compose(fn.fo, s.c));
  r.add("preserves-units", compose(fn.fm, s.eta) == compose(t.eta, fn.fo));
  bool comp = r.passed();
  if (comp) {
    const auto spairs = s.composable_pairs();
    const auto tpairs = t.composable_pairs();
    for (std::size_t i = 0; i < spairs.pullback.elems.size() && comp; ++i) {
      const auto [a, b] = spairs.pullback.elems[i];
      comp = fn.fm(s.mu(i)) == t.mu(tpairs.pullback.at(fn.fm(a), fn.fm(b)));
    }
  }
  r.add("preserves-composition", comp);
  return r;
}

/// The category M_C: objects are maps C -> O, arrows f -> g are maps
/// alpha: C -> M with d.alpha == f and c.alpha == g, composed pointwise by mu.
struct ExternalCategory {
  FiniteCategory category;
  std::vector<FinMap> objects;
  std::vector<FinMap> arrows;

  std::size_t object_index(const FinMap& f) const {
    for (std::size_t i = 0; i < objects.size(); ++i) {
      if (objects[i] == f) return i;
    }
    return npos;
  }
  std::size_t arrow_index(const FinMap& a) const {
    for (std::size_t i = 0; i < arrows.size(); ++i) {
      if (arrows[i] == a) return i;
    }
    return npos;
  }
};

/// Composite beta . alpha in M_C (alpha first).
inline FinMap external_compose(const InternalCategory& ic, const FinMap& beta, const FinMap& alpha) {
  const auto mm = ic.composable_pairs();
  std::vector<std::size_t> t(alpha.dom().size());
  for (std::size_t x = 0; x < t.size(); ++x) t[x] = ic.mu(mm.pullback.at(alpha(x), beta(x)));
  return FinMap(alpha.dom(), ic.m, std::move(t));
}

inline ExternalCategory external_category(const InternalCategory& ic, const FinSet& c_obj) {
  require_within_cap(saturating_power(ic.o.size(), c_obj.size()), "objects of the external category");
  require_within_cap(saturating_power(ic.m.size(), c_obj.size()), "arrows of the external category");
  ExternalCategory ext;
  ext.objects = all_maps(c_obj, ic.o);
  for (const auto& f : ext.objects) ext.category.add_object(f.to_string());

  std::map<FinMap, std::size_t> obj_index;
  for (std::size_t i = 0; i < ext.objects.size(); ++i) obj_index.emplace(ext.objects[i], i);

  std::map<FinMap, std::size_t> arrow_index;
  for_each_map(c_obj, ic.m, [&](FinMap alpha) {
    const auto src = obj_index.at(compose(ic.d, alpha));
    const auto dst = obj_index.at(compose(ic.c, alpha));
    arrow_index.emplace(alpha, ext.category.add_arrow(src, dst, alpha.to_string()));
    ext.arrows.push_back(std::move(alpha));
  });
  for (std::size_t i = 0; i < ext.objects.size(); ++i) {
    ext.category.set_identity(i, arrow_index.at(compose(ic.eta, ext.objects[i])));
  }
  const auto out_of = ext.category.arrows_out_of();
  for (std::size_t f = 0; f < ext.arrows.size(); ++f) {
    for (auto g : out_of[ext.category.arrow(f).dst]) {
      ext.category.set_composite(g, f, arrow_index.at(external_compose(ic, ext.arrows[g], ext.arrows[f])));
    }
  }
  return ext;
}

}  // namespace spanforge
