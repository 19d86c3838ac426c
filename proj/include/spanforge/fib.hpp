#pragma once

// Discrete fibrations over finite sub-slices of C/O: the convolution
// fibration P (category of elements of alpha |-> alpha . phi), the fibration
// Q of simply presented Kleisli endomorphisms, the cartesian isomorphism E
// between them, and transport along morphisms (K, F) of internal categories.
//
// The slice C/O is infinite, so every statement here is checked over an
// explicitly listed subcategory closed under identities and composition.

#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "spanforge/feistel.hpp"
#include "spanforge/finite_category.hpp"
#include "spanforge/lex.hpp"
#include "spanforge/report.hpp"

namespace spanforge {

/// A finite subcategory of C/O: listed slice objects and 2-cells between them.
struct SubSlice {
  struct Arrow {
    std::size_t src;
    std::size_t dst;
    FinMap map;

    friend bool operator==(const Arrow&, const Arrow&) = default;
  };

  InternalCategoryRef ic;
  std::vector<SliceObject> objects;
  std::vector<Arrow> arrows;

  TwoCell cell(std::size_t arrow) const {
    const auto& a = arrows.at(arrow);
    return TwoCell(objects.at(a.src).span(), objects.at(a.dst).span(), a.map);
  }

  std::size_t object_index(const SliceObject& s) const {
    for (std::size_t i = 0; i < objects.size(); ++i) {
      if (objects[i] == s) return i;
    }
    return npos;
  }

  std::size_t arrow_index(std::size_t src, std::size_t dst, const FinMap& map) const {
    for (std::size_t i = 0; i < arrows.size(); ++i) {
      if (arrows[i].src == src && arrows[i].dst == dst && arrows[i].map == map) return i;
    }
    return npos;
  }

  std::size_t identity(std::size_t object) const {
    return arrow_index(object, object, FinMap::identity(objects.at(object).a()));
  }

  /// Validates the listed data and tabulates it. Throws MalformedTables if
  /// an identity or a composite is missing.
  FiniteCategory category() const {
    FiniteCategory cat;
    for (const auto& s : objects) {
      if (s.o() != ic->o) throw Error(ErrorKind::BaseMismatch, "sub-slice object is not over O");
      cat.add_object(s.f().to_string());
    }
    for (std::size_t i = 0; i < arrows.size(); ++i) {
      const auto& a = arrows[i];
      if (a.src >= objects.size() || a.dst >= objects.size()) {
        throw Error(ErrorKind::MalformedTables, "sub-slice arrow endpoint out of range");
      }
      (void)cell(i);  // triangle check
      cat.add_arrow(a.src, a.dst, a.map.to_string());
    }
    for (std::size_t o = 0; o < objects.size(); ++o) {
      const auto id = identity(o);
      if (id == npos) throw Error(ErrorKind::MalformedTables, "sub-slice lacks the identity on " + objects[o].f().to_string());
      cat.set_identity(o, id);
    }
    for (std::size_t f = 0; f < arrows.size(); ++f) {
      for (std::size_t g = 0; g < arrows.size(); ++g) {
        if (arrows[g].src != arrows[f].dst) continue;
        const auto h = arrow_index(arrows[f].src, arrows[g].dst, compose(arrows[g].map, arrows[f].map));
        if (h == npos) {
          throw Error(ErrorKind::MalformedTables, "sub-slice is not closed under composition: " + arrows[g].map.to_string() +
                                                      " after " + arrows[f].map.to_string());
        }
        cat.set_composite(g, f, h);
      }
    }
    return cat;
  }

  /// Adds identities and all composites of the generators.
  static SubSlice closure(InternalCategoryRef ic, std::vector<SliceObject> objects, std::vector<Arrow> generators) {
    SubSlice ss{std::move(ic), std::move(objects), {}};
    auto add = [&ss](Arrow a) {
      if (ss.arrow_index(a.src, a.dst, a.map) != npos) return false;
      ss.arrows.push_back(std::move(a));
      require_within_cap(ss.arrows.size(), "sub-slice closure");
      return true;
    };
    for (std::size_t o = 0; o < ss.objects.size(); ++o) add(Arrow{o, o, FinMap::identity(ss.objects[o].a())});
    for (auto& g : generators) add(std::move(g));
    for (bool grew = true; grew;) {
      grew = false;
      for (std::size_t f = 0; f < ss.arrows.size(); ++f) {
        for (std::size_t g = 0; g < ss.arrows.size(); ++g) {
          if (ss.arrows[g].src != ss.arrows[f].dst) continue;
          grew = add(Arrow{ss.arrows[f].src, ss.arrows[g].dst, compose(ss.arrows[g].map, ss.arrows[f].map)}) || grew;
        }
      }
    }
    return ss;
  }

  /// The full subcategory on the listed objects.
  static SubSlice full(InternalCategoryRef ic, std::vector<SliceObject> objects) {
    SubSlice ss{std::move(ic), std::move(objects), {}};
    for (std::size_t i = 0; i < ss.objects.size(); ++i) {
      for (std::size_t j = 0; j < ss.objects.size(); ++j) {
        for (auto& c : two_cells(ss.objects[i].span(), ss.objects[j].span())) {
          ss.arrows.push_back(Arrow{i, j, c.map()});
          require_within_cap(ss.arrows.size(), "full sub-slice");
        }
      }
    }
    return ss;
  }
};

struct FibrationInstance {
  FiniteCategory total;
  FiniteCategory base;
  FunctorData proj;
};

/// A fibration built as a category of elements: total objects are pairs
/// (base object, element), total arrows are base arrows between them.
template <class Element>
struct ElementFibration {
  FibrationInstance instance;
  std::vector<Element> elements;

  std::size_t base_of(std::size_t object) const { return instance.proj.object_map.at(object); }

  std::size_t object_index(std::size_t base_object, const FinMap& element) const {
    auto it = objects_.find({base_object, element});
    return it == objects_.end() ? npos : it->second;
  }

  std::size_t arrow_index(std::size_t base_arrow, std::size_t src, std::size_t dst) const {
    auto it = arrows_.find({base_arrow, src, dst});
    return it == arrows_.end() ? npos : it->second;
  }

  /// Total objects over a base object, in construction order.
  std::vector<std::size_t> fibre(std::size_t base_object) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < elements.size(); ++i) {
      if (base_of(i) == base_object) out.push_back(i);
    }
    return out;
  }

  std::size_t add_object(std::size_t base_object, Element e) {
    const auto id = instance.total.add_object(std::to_string(base_object) + ":" + e.map().to_string());
    objects_.emplace(std::make_pair(base_object, e.map()), id);
    instance.proj.object_map.push_back(base_object);
    elements.push_back(std::move(e));
    return id;
  }

  std::size_t add_arrow(std::size_t base_arrow, std::size_t src, std::size_t dst) {
    const auto id = instance.total.add_arrow(src, dst, instance.base.arrow(base_arrow).key + "@" + std::to_string(src) + ">" +
                                                           std::to_string(dst));
    arrows_.emplace(std::make_tuple(base_arrow, src, dst), id);
    instance.proj.arrow_map.push_back(base_arrow);
    return id;
  }

  /// Identities and composites are inherited from the base.
  void finish() {
    auto& total = instance.total;
    for (std::size_t o = 0; o < total.object_count(); ++o) {
      total.set_identity(o, arrow_index(instance.base.identity(base_of(o)), o, o));
    }
    const auto out_of = total.arrows_out_of();
    for (std::size_t f = 0; f < total.arrow_count(); ++f) {
      for (auto g : out_of[total.arrow(f).dst]) {
        const auto h = instance.base.compose(instance.proj.arrow_map[g], instance.proj.arrow_map[f]);
        const auto k = h ? arrow_index(*h, total.arrow(f).src, total.arrow(g).dst) : npos;
        if (k != npos) total.set_composite(g, f, k);
      }
    }
  }

 private:
  std::map<std::pair<std::size_t, FinMap>, std::size_t> objects_;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::size_t> arrows_;
};

using ConvFibration = ElementFibration<ConvElement>;
using EndoFibration = ElementFibration<KleisliEndo>;

/// P: objects are (f_A, alpha), arrows (f_A, alpha) -> (g_B, beta) are listed
/// 2-cells phi with beta . phi == alpha.
inline ConvFibration build_conv_fibration(const SubSlice& ss) {
  ConvFibration fib;
  fib.instance.base = ss.category();
  std::size_t count = 0;
  for (std::size_t o = 0; o < ss.objects.size(); ++o) {
    for (auto& alpha : conv_elements(ss.objects[o], ss.ic)) {
      fib.add_object(o, std::move(alpha));
      require_within_cap(++count, "convolution fibration");
    }
  }
  for (std::size_t a = 0; a < ss.arrows.size(); ++a) {
    const auto phi = ss.cell(a).map();
    for (auto s : fib.fibre(ss.arrows[a].src)) {
      for (auto t : fib.fibre(ss.arrows[a].dst)) {
        if (compose(fib.elements[t].map(), phi) == fib.elements[s].map()) fib.add_arrow(a, s, t);
      }
    }
  }
  fib.finish();
  return fib;
}

/// Q: objects are simply presented endomorphisms (pi_A . gamma == id),
/// arrows are listed sigma with (sigma (x) M) . gamma == delta . sigma.
inline EndoFibration build_endo_fibration(const SubSlice& ss) {
  EndoFibration fib;
  fib.instance.base = ss.category();
  std::size_t count = 0;
  for (std::size_t o = 0; o < ss.objects.size(); ++o) {
    const auto id = FinMap::identity(ss.objects[o].a());
    for (auto& gamma : kleisli_endos(ss.objects[o], ss.ic)) {
      if (base_component(gamma).map() != id) continue;
      fib.add_object(o, std::move(gamma));
      require_within_cap(++count, "endomorphism fibration");
    }
  }
  // (sigma (x) M) is computed once per arrow; the square is then compared on
  // raw tables. is_end_morphism gives the same answer (see the tests).
  for (std::size_t a = 0; a < ss.arrows.size(); ++a) {
    const auto sigma = ss.cell(a);
    const auto lifted = tensor_cells(sigma, TwoCell::identity(ss.ic->span())).map();
    for (auto s : fib.fibre(ss.arrows[a].src)) {
      const auto lhs = compose(lifted, fib.elements[s].map());
      for (auto t : fib.fibre(ss.arrows[a].dst)) {
        if (lhs == compose(fib.elements[t].map(), sigma.map())) fib.add_arrow(a, s, t);
      }
    }
  }
  fib.finish();
  return fib;
}

/// phi^*(beta) = beta . phi on convolution fibres.
inline ConvElement base_change(const TwoCell& phi, const ConvElement& beta, const SliceObject& src) {
  return ConvElement(src, beta.target_ref(), compose(beta.cell(), phi));
}

/// sigma^*(beta) = <id, pi_M . beta . sigma> on endomorphism fibres.
inline KleisliEndo base_change(const TwoCell& sigma, const KleisliEndo& beta, const SliceObject& src) {
  const auto bar = compose(module_projection(beta.base(), beta.target()), compose(beta.cell(), sigma));
  return KleisliEndo(src, beta.target_ref(), pair_cells(TwoCell::identity(src.span()), bar));
}

/// Functoriality of proj, then exactly one lift of every base arrow into
/// every total object over its codomain.
inline Report check_discrete_fibration(const FibrationInstance& fi) {
  auto r = check_functor(fi.proj, fi.total, fi.base);
  if (!r.passed()) return r;
  std::string bad;
  std::size_t checked = 0;
  std::vector<std::vector<std::size_t>> by_base(fi.base.arrow_count());
  for (std::size_t k = 0; k < fi.total.arrow_count(); ++k) by_base[fi.proj.arrow_map[k]].push_back(k);
  for (std::size_t b = 0; b < fi.base.arrow_count() && bad.empty(); ++b) {
    for (std::size_t e = 0; e < fi.total.object_count(); ++e) {
      if (fi.proj.object_map[e] != fi.base.arrow(b).dst) continue;
      std::size_t lifts = 0;
      for (auto k : by_base[b]) lifts += fi.total.arrow(k).dst == e ? 1 : 0;
      ++checked;
      if (lifts != 1) {
        bad = "base arrow " + fi.base.arrow(b).key + " into fibre object " + fi.total.object_key(e) + " has " +
              std::to_string(lifts) + " lifts";
        break;
      }
    }
  }
  r.add("unique-lift", bad.empty(), bad.empty() ? std::to_string(checked) + " lifting problems" : bad);
  return r;
}

/// Every convolution fibre is a group (inverse search within the fibre).
inline Report check_fibre_groups(const ConvFibration& fib) {
  Report r;
  std::string bad;
  for (std::size_t o = 0; o < fib.instance.base.object_count() && bad.empty(); ++o) {
    const auto members = fib.fibre(o);
    if (members.empty()) continue;
    const auto unit = conv_unit(fib.elements[members.front()].base(), fib.elements[members.front()].target_ref());
    for (auto x : members) {
      bool found = false;
      for (auto y : members) {
        const auto& a = fib.elements[x];
        const auto& b = fib.elements[y];
        if (conv_mult(a, b) == unit && conv_mult(b, a) == unit) {
          found = true;
          break;
        }
      }
      if (!found) {
        bad = "element " + fib.instance.total.object_key(x) + " has no inverse in its fibre";
        break;
      }
    }
  }
  r.add("fibres-are-groups", bad.empty(), bad);
  return r;
}

struct CartesianIso {
  FunctorData forward;   // E: Conv -> spEnd
  FunctorData backward;  // L: spEnd -> Conv
  Report report;
};

namespace detail {

/// The functor induced on total categories by an elementwise map over the
/// same base. Unmatched objects or arrows map to npos.
template <class From, class To, class Fn>
FunctorData elementwise_functor(const ElementFibration<From>& src, const ElementFibration<To>& dst, Fn&& fn) {
  FunctorData out;
  for (std::size_t o = 0; o < src.elements.size(); ++o) {
    out.object_map.push_back(dst.object_index(src.base_of(o), fn(src.elements[o]).map()));
  }
  const auto& total = src.instance.total;
  for (std::size_t k = 0; k < total.arrow_count(); ++k) {
    const auto s = out.object_map[total.arrow(k).src];
    const auto t = out.object_map[total.arrow(k).dst];
    out.arrow_map.push_back(s == npos || t == npos ? npos : dst.arrow_index(src.instance.proj.arrow_map[k], s, t));
  }
  return out;
}

inline bool covers(const FunctorData& fn) {
  return std::find(fn.object_map.begin(), fn.object_map.end(), npos) == fn.object_map.end() &&
         std::find(fn.arrow_map.begin(), fn.arrow_map.end(), npos) == fn.arrow_map.end();
}

}  // namespace detail

/// The cartesian isomorphism between P and Q over a sub-slice, with the
/// checks: functoriality both ways, mutual inversion, commutation with the
/// projections, naturality of E against base change, base change as a monoid
/// homomorphism on both sides, and contravariance of base change.
inline CartesianIso cartesian_iso(const SubSlice& ss, const ConvFibration& conv, const EndoFibration& endo) {
  CartesianIso out;
  auto& r = out.report;
  out.forward = detail::elementwise_functor(conv, endo, [](const ConvElement& a) { return E(a); });
  out.backward = detail::elementwise_functor(endo, conv, [](const KleisliEndo& g) { return L(g); });

  const bool fwd_total = detail::covers(out.forward);
  const bool bwd_total = detail::covers(out.backward);
  r.add("forward-defined", fwd_total, fwd_total ? "" : "some object or arrow has no image under E");
  r.add("backward-defined", bwd_total, bwd_total ? "" : "some object or arrow has no image under L");
  if (!fwd_total || !bwd_total) return out;
  r.append(check_functor(out.forward, conv.instance.total, endo.instance.total), "forward-");
  r.append(check_functor(out.backward, endo.instance.total, conv.instance.total), "backward-");

  const bool inverse = compose(out.backward, out.forward) == FunctorData::identity(conv.instance.total) &&
                       compose(out.forward, out.backward) == FunctorData::identity(endo.instance.total);
  r.add("mutual-inverse", inverse);
  const bool commute = compose(endo.instance.proj, out.forward) == conv.instance.proj &&
                       compose(conv.instance.proj, out.backward) == endo.instance.proj;
  r.add("projection-commutes", commute);

  std::string natural, conv_hom, endo_hom;
  for (std::size_t a = 0; a < ss.arrows.size(); ++a) {
    const auto phi = ss.cell(a);
    const auto& src = ss.objects[ss.arrows[a].src];
    const auto& dst = ss.objects[ss.arrows[a].dst];
    const auto cfib = conv.fibre(ss.arrows[a].dst);
    for (auto b : cfib) {
      const auto& beta = conv.elements[b];
      if (natural.empty() && E(base_change(phi, beta, src)) != base_change(phi, E(beta), src)) {
        natural = "E does not commute with base change along " + phi.map().to_string();
      }
      for (auto b2 : cfib) {
        const auto& gamma = conv.elements[b2];
        if (conv_hom.empty() &&
            base_change(phi, conv_mult(beta, gamma), src) != conv_mult(base_change(phi, beta, src), base_change(phi, gamma, src))) {
          conv_hom = "convolution not preserved along " + phi.map().to_string();
        }
      }
    }
    if (conv_hom.empty() && base_change(phi, conv_unit(dst, ss.ic), src) != conv_unit(src, ss.ic)) {
      conv_hom = "convolution unit not preserved along " + phi.map().to_string();
    }
    const auto efib = endo.fibre(ss.arrows[a].dst);
    for (auto b : efib) {
      for (auto b2 : efib) {
        const auto& x = endo.elements[b];
        const auto& y = endo.elements[b2];
        if (endo_hom.empty() &&
            base_change(phi, kleisli_compose(x, y), src) != kleisli_compose(base_change(phi, x, src), base_change(phi, y, src))) {
          endo_hom = "Kleisli composition not preserved along " + phi.map().to_string();
        }
      }
    }
    if (endo_hom.empty() && base_change(phi, kleisli_unit(dst, ss.ic), src) != kleisli_unit(src, ss.ic)) {
      endo_hom = "Kleisli unit not preserved along " + phi.map().to_string();
    }
  }
  r.add("naturality", natural.empty(), natural);
  r.add("base-change-conv-homomorphism", conv_hom.empty(), conv_hom);
  r.add("base-change-endo-homomorphism", endo_hom.empty(), endo_hom);

  std::string contra;
  for (std::size_t f = 0; f < ss.arrows.size() && contra.empty(); ++f) {
    for (std::size_t g = 0; g < ss.arrows.size() && contra.empty(); ++g) {
      if (ss.arrows[g].src != ss.arrows[f].dst) continue;
      const auto phi = ss.cell(f);
      const auto psi = ss.cell(g);
      const auto gf = compose(psi, phi);
      const auto& x = ss.objects[ss.arrows[f].src];
      const auto& y = ss.objects[ss.arrows[f].dst];
      for (auto t : conv.fibre(ss.arrows[g].dst)) {
        const auto& e = conv.elements[t];
        if (base_change(gf, e, x) != base_change(phi, base_change(psi, e, y), x)) {
          contra = "conv fibres: (" + psi.map().to_string() + " . " + phi.map().to_string() + ")^* differs";
          break;
        }
      }
      for (auto t : endo.fibre(ss.arrows[g].dst)) {
        const auto& e = endo.elements[t];
        if (contra.empty() && base_change(gf, e, x) != base_change(phi, base_change(psi, e, y), x)) {
          contra = "endo fibres: (" + psi.map().to_string() + " . " + phi.map().to_string() + ")^* differs";
          break;
        }
      }
    }
  }
  r.add("base-change-contravariance", contra.empty(), contra);
  return out;
}

inline CartesianIso cartesian_iso(const SubSlice& ss) {
  return cartesian_iso(ss, build_conv_fibration(ss), build_endo_fibration(ss));
}

// ---------------------------------------------------------------------------
// Transport along (K, F)

/// A morphism of internal categories across a lex functor: F is an internal
/// functor from K applied to the source to the target.
struct IntCatMorphism {
  InternalCategoryRef source;
  LexFunctor k;
  InternalFunctor f;
};

/// (K, F) with F the identity on K applied to the source.
inline IntCatMorphism lex_transport(InternalCategoryRef source, LexFunctor k) {
  auto moved = share(apply_lex_functor(k, *source));
  InternalFunctor f{moved, moved, FinMap::identity(moved->o), FinMap::identity(moved->m)};
  return IntCatMorphism{std::move(source), std::move(k), std::move(f)};
}

/// Everything K must be tabulated on to transport the sub-slice and both
/// fibrations: the internal category, slice maps, sub-slice arrows,
/// convolution elements, and the cospans f_A -> O <- M with their Kleisli
/// endomorphisms.
inline LexFragment transport_fragment(const SubSlice& ss) {
  LexFragment fr;
  fr.add_internal_category(*ss.ic);
  for (const auto& s : ss.objects) {
    fr.add_map(s.f());
    fr.add_cospan(s.f(), ss.ic->d);
    for (const auto& a : conv_elements(s, ss.ic)) fr.add_map(a.map());
    for (const auto& g : kleisli_endos(s, ss.ic)) {
      if (base_component(g).map() == FinMap::identity(s.a())) fr.add_map(g.map());
    }
  }
  for (const auto& a : ss.arrows) fr.add_map(a.map);
  return fr;
}

namespace detail {

inline const InternalCategory& checked_transport(const IntCatMorphism& m) {
  const auto moved = apply_lex_functor(m.k, *m.source);
  if (!(moved == *m.f.src)) {
    throw Error(ErrorKind::NotInternalFunctor, "internal functor does not start at the transported category");
  }
  const auto r = check_internal_functor(m.f);
  if (!r.passed()) throw Error(ErrorKind::NotInternalFunctor, r.first_failure()->name);
  return *m.f.dst;
}

}  // namespace detail

/// K/F_o on slice objects and arrows.
inline SliceObject transport_slice(const IntCatMorphism& m, const SliceObject& s) {
  return SliceObject(compose(m.f.fo, m.k(s.f())));
}

/// [K, F] on convolution elements: alpha |-> F_m . K(alpha).
inline ConvElement transport_conv_element(const IntCatMorphism& m, const ConvElement& alpha) {
  return ConvElement(transport_slice(m, alpha.base()), m.f.dst, compose(m.f.fm, m.k(alpha.map())));
}

/// {K, F} on Kleisli endomorphisms, computed from K(gamma) through the
/// comparison iso K(A x_O M) -> K(A) x_K(O) K(M) followed by A (x) F_m.
inline KleisliEndo transport_endo(const IntCatMorphism& m, const KleisliEndo& gamma) {
  const auto& s = gamma.base();
  const auto& ic = gamma.target();
  const auto target = transport_slice(m, s);
  const auto kg = m.k(gamma.map());
  const auto cmp = pullback_comparison(m.k, s.f(), ic.d);
  const auto kpb = pullback(m.k(s.f()), m.k(ic.d));
  const auto fm = free_module(target, *m.f.dst);
  std::vector<std::size_t> t(kg.dom().size());
  for (std::size_t x = 0; x < t.size(); ++x) {
    const auto [a, mm] = kpb.elems[cmp(kg(x))];
    t[x] = fm.pullback.at(a, m.f.fm(mm));
  }
  return KleisliEndo(target, m.f.dst, FinMap(kg.dom(), fm.span.apex(), std::move(t)));
}

/// The image of a sub-slice under K/F_o (objects and arrows deduplicated).
inline SubSlice transport_subslice(const IntCatMorphism& m, const SubSlice& ss) {
  SubSlice out{m.f.dst, {}, {}};
  for (const auto& s : ss.objects) {
    const auto t = transport_slice(m, s);
    if (out.object_index(t) == npos) out.objects.push_back(t);
  }
  for (const auto& a : ss.arrows) {
    const auto src = out.object_index(transport_slice(m, ss.objects[a.src]));
    const auto dst = out.object_index(transport_slice(m, ss.objects[a.dst]));
    const auto map = m.k(a.map);
    if (out.arrow_index(src, dst, map) == npos) out.arrows.push_back(SubSlice::Arrow{src, dst, map});
  }
  return out;
}

/// K/F_o as a functor between the tabulated sub-slices.
inline FunctorData transport_base(const IntCatMorphism& m, const SubSlice& ss, const SubSlice& image) {
  FunctorData fn;
  for (const auto& s : ss.objects) fn.object_map.push_back(image.object_index(transport_slice(m, s)));
  for (const auto& a : ss.arrows) {
    fn.arrow_map.push_back(image.arrow_index(image.object_index(transport_slice(m, ss.objects[a.src])),
                                             image.object_index(transport_slice(m, ss.objects[a.dst])), m.k(a.map)));
  }
  return fn;
}

namespace detail {

/// The functor between element fibrations over different bases induced by an
/// elementwise map and a base functor.
template <class Element, class Fn>
FunctorData transported_functor(const ElementFibration<Element>& src, const ElementFibration<Element>& dst,
                                const FunctorData& base, Fn&& fn) {
  FunctorData out;
  for (std::size_t o = 0; o < src.elements.size(); ++o) {
    const auto b = base.object_map.at(src.base_of(o));
    out.object_map.push_back(b == npos ? npos : dst.object_index(b, fn(src.elements[o]).map()));
  }
  const auto& total = src.instance.total;
  for (std::size_t k = 0; k < total.arrow_count(); ++k) {
    const auto s = out.object_map[total.arrow(k).src];
    const auto t = out.object_map[total.arrow(k).dst];
    const auto b = base.arrow_map.at(src.instance.proj.arrow_map[k]);
    out.arrow_map.push_back(s == npos || t == npos || b == npos ? npos : dst.arrow_index(b, s, t));
  }
  return out;
}

}  // namespace detail

struct Transport {
  SubSlice image;
  FunctorData base;      // K/F_o
  FunctorData conv;      // [K, F]
  FunctorData endo;      // {K, F}
  Report report;
};

/// Transports both fibrations over a sub-slice along (K, F) and checks that
/// the P-square and Q-square commute and that E intertwines the two.
inline Transport transport_conv(const IntCatMorphism& m, const SubSlice& ss) {
  if (!verify_lex(m.k).passed()) throw Error(ErrorKind::NotLex, m.k.name() + " fails lex verification");
  detail::checked_transport(m);
  if (!(*m.source == *ss.ic)) throw Error(ErrorKind::BaseMismatch, "sub-slice is over a different internal category");

  Transport out;
  out.image = transport_subslice(m, ss);
  auto& r = out.report;
  out.base = transport_base(m, ss, out.image);
  r.append(check_functor(out.base, ss.category(), out.image.category()), "base-");

  const auto conv = build_conv_fibration(ss);
  const auto endo = build_endo_fibration(ss);
  const auto conv2 = build_conv_fibration(out.image);
  const auto endo2 = build_endo_fibration(out.image);

  out.conv = detail::transported_functor(conv, conv2, out.base,
                                         [&m](const ConvElement& a) { return transport_conv_element(m, a); });
  out.endo = detail::transported_functor(endo, endo2, out.base,
                                         [&m](const KleisliEndo& g) { return transport_endo(m, g); });

  const bool p_total = detail::covers(out.conv);
  r.add("p-defined", p_total, p_total ? "" : "[K,F] sends a convolution object or arrow outside the target fibration");
  if (p_total) {
    r.append(check_functor(out.conv, conv.instance.total, conv2.instance.total), "p-");
    r.add("p-square", compose(conv2.instance.proj, out.conv) == compose(out.base, conv.instance.proj));
  }
  const bool q_total = detail::covers(out.endo);
  r.add("q-defined", q_total, q_total ? "" : "{K,F} sends an endomorphism or arrow outside the target fibration");
  if (q_total) {
    r.append(check_functor(out.endo, endo.instance.total, endo2.instance.total), "q-");
    r.add("q-square", compose(endo2.instance.proj, out.endo) == compose(out.base, endo.instance.proj));
  }
  if (p_total && q_total) {
    const auto e1 = detail::elementwise_functor(conv, endo, [](const ConvElement& a) { return E(a); });
    const auto e2 = detail::elementwise_functor(conv2, endo2, [](const ConvElement& a) { return E(a); });
    r.add("intertwining", compose(out.endo, e1) == compose(e2, out.conv));
  }
  return out;
}

/// The composite (K2 K1, F2 . K2(F1)) of two composable morphisms. K2 must
/// be tabulated on everything K1 produces.
inline IntCatMorphism compose(const IntCatMorphism& second, const IntCatMorphism& first) {
  if (!(*first.f.dst == *second.source)) {
    throw Error(ErrorKind::DomainMismatch, "morphisms of internal categories are not composable");
  }
  IntCatMorphism out;
  out.source = first.source;
  out.k = compose(second.k, first.k);
  out.f.src = share(apply_lex_functor(out.k, *out.source));
  out.f.dst = second.f.dst;
  out.f.fo = compose(second.f.fo, second.k(first.f.fo));
  out.f.fm = compose(second.f.fm, second.k(first.f.fm));
  detail::checked_transport(out);
  return out;
}

/// Transport along a composite agrees with transporting twice, on the
/// sub-slice and on both fibrations.
inline Report check_transport_functoriality(const IntCatMorphism& second, const IntCatMorphism& first,
                                            const SubSlice& ss) {
  const auto both = compose(second, first);
  Report r;
  bool ok = true;
  for (const auto& s : ss.objects) ok = ok && transport_slice(both, s) == transport_slice(second, transport_slice(first, s));
  for (const auto& a : ss.arrows) ok = ok && both.k(a.map) == second.k(first.k(a.map));
  r.add("base-composition", ok);
  ok = true;
  for (const auto& s : ss.objects) {
    for (const auto& a : conv_elements(s, ss.ic)) {
      ok = ok && transport_conv_element(both, a) == transport_conv_element(second, transport_conv_element(first, a));
    }
  }
  r.add("p-composition", ok);
  ok = true;
  for (const auto& s : ss.objects) {
    for (const auto& g : kleisli_endos(s, ss.ic)) {
      if (base_component(g).map() != FinMap::identity(s.a())) continue;
      ok = ok && transport_endo(both, g) == transport_endo(second, transport_endo(first, g));
    }
  }
  r.add("q-composition", ok);
  return r;
}

}  // namespace spanforge
