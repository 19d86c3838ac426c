#include <gtest/gtest.h>

#include <random>

#include "spanforge/catalog.hpp"
#include "spanforge/feistel.hpp"

using namespace spanforge;

namespace {

SliceObject points(std::size_t n) { return SliceObject(FinMap::to_terminal(FinSet(n))); }

/// Every slice object over o with at most max_size elements.
std::vector<SliceObject> slices(const FinSet& o, std::size_t max_size) {
  std::vector<SliceObject> out;
  for (std::size_t n = 0; n <= max_size; ++n) {
    for (auto& f : all_maps(FinSet(n), o)) out.emplace_back(std::move(f));
  }
  return out;
}

std::vector<InternalCategoryRef> small_targets() {
  std::vector<InternalCategoryRef> out;
  for (const auto& mon : monoids::catalog()) out.push_back(share(internal_categories::one_object(mon)));
  for (auto& ic : internal_categories::catalog()) {
    if (ic.o.size() > 1) out.push_back(share(std::move(ic)));
  }
  out.push_back(share(internal_categories::interval()));
  return out;
}

// Straight-line Kleisli tables on the pair list of f_A (x) M:
// gamma(a) = (a1, m1) with m1 : f(a1) -> f(a).
struct PairOracle {
  std::vector<std::pair<std::size_t, std::size_t>> elems;
  const InternalCategory* ic;

  std::size_t index(std::size_t a, std::size_t m) const {
    for (std::size_t i = 0; i < elems.size(); ++i) {
      if (elems[i] == std::make_pair(a, m)) return i;
    }
    return npos;
  }
  std::size_t mul(std::size_t first, std::size_t then) const {
    const auto pairs = ic->composable_pairs();
    return ic->mu(*pairs.pullback.index_of(first, then));
  }
  std::vector<std::size_t> e(const FinMap& alpha) const {
    std::vector<std::size_t> t;
    for (std::size_t a = 0; a < alpha.dom().size(); ++a) t.push_back(index(a, alpha(a)));
    return t;
  }
  std::vector<std::size_t> compose(const std::vector<std::size_t>& beta, const std::vector<std::size_t>& alpha) const {
    std::vector<std::size_t> t;
    for (auto x : alpha) {
      const auto [a1, m1] = elems[x];
      const auto [a2, m2] = elems[beta[a1]];
      t.push_back(index(a2, mul(m2, m1)));
    }
    return t;
  }
};

PairOracle oracle_for(const SliceObject& fa, const InternalCategory& ic) {
  PairOracle p{{}, &ic};
  for (std::size_t a = 0; a < fa.a().size(); ++a) {
    for (std::size_t m = 0; m < ic.m.size(); ++m) {
      if (ic.d(m) == fa.f()(a)) p.elems.emplace_back(a, m);
    }
  }
  return p;
}

}  // namespace

TEST(Convolution, PowerMonoidExample) {
  const auto z2 = share(internal_categories::one_object(monoids::cyclic(2)));
  const auto x = points(2);
  const ConvElement s(x, z2, FinMap(FinSet(2), z2->m, {0, 1}));
  const ConvElement t(x, z2, FinMap(FinSet(2), z2->m, {1, 1}));
  EXPECT_EQ(conv_mult(s, t).map(), FinMap(FinSet(2), z2->m, {1, 0}));
  EXPECT_EQ(conv_unit(x, z2).map(), FinMap(FinSet(2), z2->m, {0, 0}));
}

TEST(Convolution, OneObjectCaseIsPointwiseMultiplication) {
  for (const auto& mon : monoids::catalog()) {
    const auto ic = share(internal_categories::one_object(mon));
    for (std::size_t n = 0; n <= 2; ++n) {
      const auto x = points(n);
      const auto elems = conv_elements(x, ic);
      EXPECT_EQ(elems.size(), static_cast<std::size_t>(std::pow(mon.order, n)));
      for (const auto& s : elems) {
        for (const auto& t : elems) {
          const auto st = conv_mult(s, t);
          for (std::size_t a = 0; a < n; ++a) EXPECT_EQ(st.map()(a), mon.mul(s.map()(a), t.map()(a))) << mon.name;
        }
      }
    }
  }
}

TEST(Convolution, MonoidLawsOnEveryTarget) {
  for (const auto& ic : small_targets()) {
    for (const auto& fa : slices(ic->o, 2)) {
      const auto elems = conv_elements(fa, ic);
      const auto e = conv_unit(fa, ic);
      for (const auto& s : elems) {
        EXPECT_EQ(conv_mult(e, s), s);
        EXPECT_EQ(conv_mult(s, e), s);
        for (const auto& t : elems) {
          for (const auto& u : elems) EXPECT_EQ(conv_mult(conv_mult(s, t), u), conv_mult(s, conv_mult(t, u)));
        }
      }
    }
  }
}

// Convolution is composition of endo-arrows in the external category M_A.
TEST(Convolution, AgreesWithExternalCategoryComposition) {
  for (const auto& ic : internal_categories::catalog()) {
    const auto ref = share(ic);
    for (std::size_t n = 0; n <= 2; ++n) {
      const auto ext = external_category(ic, FinSet(n));
      for (const auto& f : all_maps(FinSet(n), ic.o)) {
        const SliceObject fa(f);
        const auto obj = ext.object_index(f);
        const auto endo_arrows = ext.category.hom(obj, obj);
        const auto elems = conv_elements(fa, ref);
        ASSERT_EQ(elems.size(), endo_arrows.size());
        for (const auto& s : elems) {
          for (const auto& t : elems) {
            const auto via_ext = ext.arrows[*ext.category.compose(ext.arrow_index(t.map()), ext.arrow_index(s.map()))];
            EXPECT_EQ(conv_mult(s, t).map(), via_ext);
          }
        }
      }
    }
  }
}

TEST(Kleisli, CompositionMatchesThePairOracle) {
  for (const auto& ic : small_targets()) {
    for (const auto& fa : slices(ic->o, 2)) {
      const auto oracle = oracle_for(fa, *ic);
      const auto endos = kleisli_endos(fa, ic);
      for (const auto& g : endos) {
        for (const auto& h : endos) {
          const auto span_route = kleisli_compose(h, g);
          EXPECT_EQ(span_route.map().table(), oracle.compose(h.map().table(), g.map().table()));
          EXPECT_EQ(kleisli_compose_fast(h, g), span_route);
        }
      }
    }
  }
}

TEST(Kleisli, UnitAndAssociativity) {
  for (const auto& ic : small_targets()) {
    if (ic->m.size() > 3) continue;
    for (const auto& fa : slices(ic->o, 2)) {
      const auto endos = kleisli_endos(fa, ic);
      if (endos.size() > 40) continue;
      const auto unit = kleisli_unit(fa, ic);
      for (const auto& g : endos) {
        EXPECT_EQ(kleisli_compose(unit, g), g);
        EXPECT_EQ(kleisli_compose(g, unit), g);
        for (const auto& h : endos) {
          const auto hg = kleisli_compose_fast(h, g);
          for (const auto& k : endos) {
            EXPECT_EQ(kleisli_compose_fast(k, hg), kleisli_compose_fast(kleisli_compose_fast(k, h), g));
          }
        }
      }
    }
  }
}

TEST(Kleisli, ControlledNotIsAnInvolution) {
  const auto z2 = share(internal_categories::one_object(monoids::cyclic(2)));
  const auto x = points(2);
  const auto cnot = E(ConvElement(x, z2, FinMap(FinSet(2), z2->m, {0, 1})));
  EXPECT_EQ(kleisli_compose(cnot, cnot), kleisli_unit(x, z2));
  EXPECT_NE(cnot, kleisli_unit(x, z2));
}

TEST(Kleisli, ExtensionIsTheToffoliMapOnTheModule) {
  const auto z2 = share(internal_categories::one_object(monoids::cyclic(2)));
  const auto x = points(2);
  const auto g = E(ConvElement(x, z2, FinMap(FinSet(2), z2->m, {0, 1})));
  const auto ext = kleisli_extension(g);
  const auto fm = free_module(x, *z2);
  for (std::size_t i = 0; i < fm.pullback.elems.size(); ++i) {
    const auto [a, m] = fm.pullback.elems[i];
    EXPECT_EQ(fm.pullback.elems[ext.map()(i)], std::make_pair(a, (a & 1) ^ m));
  }
}

TEST(FeistelToffoliMap, IsAHomomorphismIntoKleisliComposition) {
  for (const auto& ic : small_targets()) {
    for (const auto& fa : slices(ic->o, 2)) {
      const auto elems = conv_elements(fa, ic);
      EXPECT_EQ(E(conv_unit(fa, ic)), kleisli_unit(fa, ic));
      for (const auto& s : elems) {
        for (const auto& t : elems) EXPECT_EQ(E(conv_mult(s, t)), kleisli_compose(E(s), E(t))) << ic->name;
      }
    }
  }
}

TEST(FeistelToffoliMap, MatchesThePairOracle) {
  for (const auto& ic : small_targets()) {
    for (const auto& fa : slices(ic->o, 2)) {
      const auto oracle = oracle_for(fa, *ic);
      for (const auto& s : conv_elements(fa, ic)) EXPECT_EQ(E(s).map().table(), oracle.e(s.map()));
    }
  }
}

TEST(Inversion, LeftInverseEverywhere) {
  for (const auto& ic : small_targets()) {
    for (const auto& fa : slices(ic->o, 3)) {
      if (fa.a().size() == 3 && ic->m.size() > 2) continue;
      for (const auto& s : conv_elements(fa, ic)) EXPECT_EQ(L(E(s)), s);
    }
  }
}

// Simply presented exactly when the A-component of gamma is the identity.
TEST(Inversion, RightInverseExactlyOnSimplyPresented) {
  for (const auto& ic : small_targets()) {
    for (const auto& fa : slices(ic->o, 2)) {
      std::size_t simple = 0;
      const auto oracle = oracle_for(fa, *ic);
      for (const auto& g : kleisli_endos(fa, ic)) {
        bool base_identity = true;
        for (std::size_t a = 0; a < fa.a().size(); ++a) base_identity = base_identity && oracle.elems[g.map()(a)].first == a;
        EXPECT_EQ(is_simply_presented(g), base_identity);
        EXPECT_EQ(base_component(g) == TwoCell::identity(fa.span()), base_identity);
        simple += base_identity ? 1 : 0;
      }
      EXPECT_EQ(simple, conv_elements(fa, ic).size());
    }
  }
}

TEST(Inversion, SwapIsNotSimplyPresented) {
  const auto z2 = share(internal_categories::one_object(monoids::cyclic(2)));
  const auto x = points(2);
  const auto fm = free_module(x, *z2);
  // a |-> (1 - a, 0)
  const KleisliEndo swap(x, z2, FinMap(FinSet(2), fm.span.apex(), {fm.pullback.at(1, 0), fm.pullback.at(0, 0)}));
  EXPECT_FALSE(is_simply_presented(swap));
  EXPECT_EQ(L(swap).map(), FinMap(FinSet(2), z2->m, {0, 0}));
  EXPECT_NE(E(L(swap)), swap);
}

TEST(Inversion, GroupElementsHaveKleisliInverses) {
  for (const auto& mon : monoids::group_catalog()) {
    const Group g(mon);
    const auto gpd = internal_categories::one_object_groupoid(g);
    const auto ic = share(gpd.cat);
    for (std::size_t n = 0; n <= 3; ++n) {
      for (const auto& s : conv_elements(points(n), ic)) {
        const auto found = kleisli_inverse_search(E(s));
        ASSERT_TRUE(found.has_value()) << mon.name;
        EXPECT_EQ(*found, E(groupoid_inverse(s, gpd.iota)));
      }
    }
  }
}

TEST(Inversion, PairGroupoidElementsHaveKleisliInverses) {
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto gpd = internal_categories::pair_groupoid(n);
    const auto ic = share(gpd.cat);
    for (const auto& fa : slices(ic->o, 2)) {
      for (const auto& s : conv_elements(fa, ic)) {
        const auto found = kleisli_inverse_search(E(s));
        ASSERT_TRUE(found.has_value());
        EXPECT_EQ(*found, E(groupoid_inverse(s, gpd.iota)));
        EXPECT_EQ(kleisli_inverse(s, gpd.iota), found);
      }
    }
  }
}

TEST(Inversion, SemilatticeZeroHasNoKleisliInverse) {
  const auto ic = share(internal_categories::one_object(monoids::and_semilattice()));
  const ConvElement zero(points(1), ic, FinMap(FinSet(1), ic->m, {0}));
  EXPECT_FALSE(kleisli_inverse_search(E(zero)).has_value());
  EXPECT_FALSE(kleisli_inverse(zero, std::nullopt).has_value());
  const ConvElement one(points(1), ic, FinMap(FinSet(1), ic->m, {1}));
  EXPECT_TRUE(kleisli_inverse_search(E(one)).has_value());
}

TEST(Inversion, LargeModulesUseTheGroupoidInverse) {
  const auto gpd = internal_categories::one_object_groupoid(Group(monoids::elementary_abelian(4)));
  const auto ic = share(gpd.cat);
  std::mt19937 rng(11);
  const auto x = points(5);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::size_t> t(5);
    for (auto& v : t) v = rng() % 16;
    const ConvElement s(x, ic, FinMap(FinSet(5), ic->m, t));
    const auto inv = kleisli_inverse(s, gpd.iota);
    ASSERT_TRUE(inv.has_value());
    EXPECT_EQ(kleisli_compose_fast(*inv, E(s)), kleisli_unit(x, ic));
  }
}

TEST(EndCategory, RawSquareAgreesWithSpanRoute) {
  for (const auto& ic : small_targets()) {
    if (ic->m.size() > 3) continue;
    const auto objs = slices(ic->o, 2);
    for (const auto& fa : objs) {
      const auto fo = oracle_for(fa, *ic);
      const auto src_endos = kleisli_endos(fa, ic);
      if (src_endos.size() > 16) continue;
      for (const auto& gb : objs) {
        const auto go = oracle_for(gb, *ic);
        const auto dst_endos = kleisli_endos(gb, ic);
        if (dst_endos.size() > 16) continue;
        const auto cells = two_cells(fa.span(), gb.span());
        for (const auto& s : src_endos) {
          for (const auto& t : dst_endos) {
            for (const auto& sigma : cells) {
              for (const auto& tau : cells) {
                bool raw = true;
                for (std::size_t a = 0; a < fa.a().size() && raw; ++a) {
                  const auto [a1, m] = fo.elems[s.map()(a)];
                  raw = go.elems[t.map()(sigma.map()(a))] == std::make_pair(tau.map()(a1), m);
                }
                EXPECT_EQ(is_end_morphism(s, t, EndMorphism{sigma, tau}), raw);
              }
            }
          }
        }
      }
    }
  }
}

TEST(EndCategory, CompositionOfMorphisms) {
  const auto ic = share(internal_categories::pair_groupoid(2).cat);
  const auto objs = slices(ic->o, 2);
  std::size_t checked = 0;
  for (const auto& fa : objs) {
    for (const auto& s : kleisli_endos(fa, ic)) {
      const auto cells = two_cells(fa.span(), fa.span());
      for (const auto& m1 : cells) {
        for (const auto& m2 : cells) {
          const EndMorphism m{m1, m2};
          if (!is_end_morphism(s, s, m)) continue;
          EXPECT_TRUE(is_end_morphism(s, s, compose(m, m)));
          ++checked;
        }
      }
    }
  }
  EXPECT_GT(checked, 0u);
}

TEST(Coreflection, CounitIsAnEndMorphism) {
  for (const auto& ic : small_targets()) {
    if (ic->m.size() > 3) continue;
    for (const auto& fa : slices(ic->o, 2)) {
      for (const auto& g : kleisli_endos(fa, ic)) {
        const auto c = coreflect(g);
        EXPECT_TRUE(is_simply_presented(c.object));
        EXPECT_TRUE(is_end_morphism(c.object, g, c.counit));
        if (is_simply_presented(g)) {
          EXPECT_EQ(c.object, g);
          EXPECT_EQ(c.counit.tau, TwoCell::identity(fa.span()));
        }
      }
    }
  }
}

// Every (phi, psi): E(b) -> gamma factors through the counit by exactly one
// (sigma, sigma): E(b) -> C(gamma), found by searching all sigma.
TEST(Coreflection, UniversalPropertyByExhaustiveSearch) {
  for (const auto& ic : {share(internal_categories::one_object(monoids::cyclic(2))),
                         share(internal_categories::one_object(monoids::and_semilattice())),
                         share(internal_categories::pair_groupoid(2).cat), share(internal_categories::interval())}) {
    const auto objs = slices(ic->o, 2);
    for (const auto& fa : objs) {
      for (const auto& gamma : kleisli_endos(fa, ic)) {
        const auto c = coreflect(gamma);
        for (const auto& gb : objs) {
          const auto cells = two_cells(gb.span(), fa.span());
          for (const auto& b : conv_elements(gb, ic)) {
            const auto eb = E(b);
            for (const auto& phi : cells) {
              for (const auto& psi : cells) {
                const EndMorphism m{phi, psi};
                if (!is_end_morphism(eb, gamma, m)) continue;
                std::size_t factorizations = 0;
                for (const auto& sigma : cells) {
                  const EndMorphism into{sigma, sigma};
                  if (is_end_morphism(eb, c.object, into) && compose(c.counit, into) == m) ++factorizations;
                }
                EXPECT_EQ(factorizations, 1u);
                EXPECT_EQ(compose(c.counit, coreflection_factor(m)), m);
              }
            }
          }
        }
      }
    }
  }
}

TEST(Adjunction, HomSetsCorrespondOnSmallInstances) {
  for (const auto& ic : {share(internal_categories::one_object(monoids::cyclic(2))),
                         share(internal_categories::one_object(monoids::and_semilattice())),
                         share(internal_categories::interval())}) {
    std::vector<ConvElement> convs;
    std::vector<KleisliEndo> endos;
    for (const auto& fa : slices(ic->o, 2)) {
      for (auto& c : conv_elements(fa, ic)) convs.push_back(std::move(c));
      for (auto& g : kleisli_endos(fa, ic)) endos.push_back(std::move(g));
    }
    const auto r = verify_adjunction(convs, endos);
    EXPECT_TRUE(r.passed()) << ic->name << "\n" << r;
  }
}

TEST(Adjunction, GroupoidsLandInAutomorphisms) {
  const auto gpd = internal_categories::pair_groupoid(2);
  const auto ic = share(gpd.cat);
  std::vector<ConvElement> convs;
  std::vector<KleisliEndo> endos;
  for (const auto& fa : slices(ic->o, 1)) {
    for (auto& c : conv_elements(fa, ic)) convs.push_back(std::move(c));
    for (auto& g : kleisli_endos(fa, ic)) endos.push_back(std::move(g));
  }
  const auto r = verify_adjunction(convs, endos, gpd.iota);
  EXPECT_TRUE(r.passed()) << r;
  ASSERT_NE(r.find("lands-in-automorphisms"), nullptr);
}

TEST(Toffoli, AndGivesTheClassicalGate) {
  const auto perm = toffoli_extend(2, 1, {0, 0, 0, 1});
  std::vector<std::size_t> expect = {0, 1, 2, 3, 4, 5, 7, 6};
  EXPECT_EQ(perm, expect);
}

TEST(Toffoli, IsAnInvolutionAndRetrievesTheFunction) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::size_t> f(8);
    for (auto& v : f) v = rng() % 8;
    const auto perm = toffoli_extend(3, 3, f);
    for (std::size_t s = 0; s < 64; ++s) EXPECT_EQ(perm[perm[s]], s);
    for (std::size_t x = 0; x < 8; ++x) EXPECT_EQ(perm[x << 3] & 7u, f[x]);
  }
}

// The Toffoli permutation is the module extension of E(f) over Z2^n.
TEST(Toffoli, AgreesWithTheKleisliExtension) {
  const auto ic = share(internal_categories::one_object(monoids::elementary_abelian(2)));
  const auto x = points(4);
  std::mt19937 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::size_t> f(4);
    for (auto& v : f) v = rng() % 4;
    const auto perm = toffoli_extend(2, 2, f);
    const auto ext = kleisli_extension(E(ConvElement(x, ic, FinMap(FinSet(4), ic->m, f))));
    const auto fm = free_module(x, *ic);
    for (std::size_t i = 0; i < fm.pullback.elems.size(); ++i) {
      const auto [a, m] = fm.pullback.elems[i];
      const auto [a2, m2] = fm.pullback.elems[ext.map()(i)];
      EXPECT_EQ(perm[(a << 2) | m], (a2 << 2) | m2);
    }
  }
}

TEST(Toffoli, MalformedTablesAreRejected) {
  EXPECT_THROW(toffoli_extend(2, 1, {0, 0, 1}), Error);
  EXPECT_THROW(toffoli_extend(1, 1, {0, 2}), Error);
}

TEST(Feistel, ZeroRoundsIsTheIdentity) {
  const FeistelNetwork net(Group(monoids::cyclic(5)), {});
  for (std::size_t s = 0; s < 25; ++s) EXPECT_EQ(net.encrypt(s), s);
}

TEST(Feistel, RoundtripOverTwoNibbles) {
  std::mt19937 rng(3);
  std::vector<std::vector<std::size_t>> rounds(4, std::vector<std::size_t>(16));
  for (auto& r : rounds) {
    for (auto& v : r) v = rng() % 16;
  }
  const FeistelNetwork net(Group(monoids::elementary_abelian(4)), rounds);
  std::vector<bool> hit(256, false);
  for (std::size_t s = 0; s < 256; ++s) {
    EXPECT_EQ(net.decrypt(net.encrypt(s)), s);
    hit[net.encrypt(s)] = true;
  }
  EXPECT_EQ(std::count(hit.begin(), hit.end(), true), 256);
}

// Each round is a Toffoli extension followed by swapping the halves.
TEST(Feistel, RoundsAreSwappedToffoliExtensions) {
  std::mt19937 rng(4);
  std::vector<std::vector<std::size_t>> rounds(3, std::vector<std::size_t>(16));
  for (auto& r : rounds) {
    for (auto& v : r) v = rng() % 16;
  }
  const FeistelNetwork net(Group(monoids::elementary_abelian(4)), rounds);
  for (std::size_t s = 0; s < 256; ++s) {
    auto state = s;
    for (const auto& f : rounds) {
      const auto t = toffoli_extend(4, 4, f)[state];
      state = ((t & 15u) << 4) | (t >> 4);
    }
    EXPECT_EQ(net.encrypt(s), state);
  }
}

TEST(Feistel, RoundtripOverANonAbelianGroup) {
  // S3 as permutations of {0,1,2} in lexicographic order, composed as maps.
  std::vector<std::vector<std::size_t>> perms = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  const auto s3 = monoids::from_function("S3", 6, 0, [&](std::size_t a, std::size_t b) {
    std::vector<std::size_t> ab(3);
    for (std::size_t i = 0; i < 3; ++i) ab[i] = perms[a][perms[b][i]];
    return static_cast<std::size_t>(std::find(perms.begin(), perms.end(), ab) - perms.begin());
  });
  const Group g(s3);
  ASSERT_NE(g.mul(1, 2), g.mul(2, 1));
  const FeistelNetwork net(g, {{3, 1, 4, 1, 5, 2}, {2, 0, 1, 5, 2, 4}, {5, 5, 0, 3, 1, 2}});
  std::vector<bool> hit(36, false);
  for (std::size_t s = 0; s < 36; ++s) {
    EXPECT_EQ(net.decrypt(net.encrypt(s)), s);
    hit[net.encrypt(s)] = true;
  }
  EXPECT_EQ(std::count(hit.begin(), hit.end(), true), 36);
}

TEST(Feistel, KeyScheduleShapeIsChecked) {
  try {
    FeistelNetwork(Group(monoids::cyclic(4)), {{0, 1, 2}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::KeyScheduleMismatch);
  }
  EXPECT_THROW(FeistelNetwork(Group(monoids::cyclic(2)), {{0, 2}}), Error);
  EXPECT_THROW(Group(monoids::and_semilattice()), Error);
}
