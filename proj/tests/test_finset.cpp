#include <gtest/gtest.h>

#include <random>

#include "spanforge/finset.hpp"

using namespace spanforge;

namespace {

FinMap map_of(std::size_t dom, std::size_t cod, std::vector<std::size_t> t) {
  return FinMap(FinSet(dom), FinSet(cod), std::move(t));
}

}  // namespace

TEST(FinSet, LabelsMustMatchSizeAndBeDistinct) {
  EXPECT_NO_THROW(FinSet(2, {"a", "b"}));
  EXPECT_THROW(FinSet(3, {"a", "b"}), Error);
  EXPECT_THROW(FinSet(2, {"a", "a"}), Error);
  EXPECT_EQ(FinSet(2, {"a", "b"}).label(1), "b");
  EXPECT_EQ(FinSet(2).label(1), "1");
}

TEST(FinMap, RejectsOutOfRangeEntries) {
  EXPECT_THROW(map_of(2, 2, {0, 2}), Error);
  EXPECT_THROW(map_of(2, 2, {0}), Error);
  EXPECT_NO_THROW(map_of(0, 0, {}));
}

TEST(Compose, IdentityAfterSwapIsSwap) {
  const auto swap = map_of(2, 2, {1, 0});
  EXPECT_EQ(compose(FinMap::identity(FinSet(2)), swap), swap);
}

TEST(Compose, NegationAfterConstantZeroIsConstantOne) {
  const auto zero = map_of(3, 2, {0, 0, 0});
  const auto neg = map_of(2, 2, {1, 0});
  EXPECT_EQ(compose(neg, zero), map_of(3, 2, {1, 1, 1}));
}

TEST(Compose, DomainMismatchIsReported) {
  try {
    compose(map_of(3, 1, {0, 0, 0}), map_of(2, 2, {0, 1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DomainMismatch);
  }
}

TEST(Compose, AgreesWithPointwiseEvaluationOnRandomMaps) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t a = rng() % 6, b = 1 + rng() % 5, c = 1 + rng() % 5;
    std::vector<std::size_t> ft(a), gt(b);
    for (auto& v : ft) v = rng() % b;
    for (auto& v : gt) v = rng() % c;
    const auto h = compose(map_of(b, c, gt), map_of(a, b, ft));
    for (std::size_t i = 0; i < a; ++i) EXPECT_EQ(h(i), gt[ft[i]]);
    EXPECT_EQ(h.dom().size(), a);
    EXPECT_EQ(h.cod().size(), c);
  }
}

TEST(Compose, AssociativeAndUnitalOnAllSmallTriples) {
  for (std::size_t a = 0; a <= 2; ++a) {
    for (std::size_t b = 0; b <= 2; ++b) {
      for (std::size_t c = 0; c <= 2; ++c) {
        for (std::size_t d = 0; d <= 2; ++d) {
          const auto fs = all_maps(FinSet(a), FinSet(b));
          const auto gs = all_maps(FinSet(b), FinSet(c));
          const auto hs = all_maps(FinSet(c), FinSet(d));
          for (const auto& f : fs) {
            EXPECT_EQ(compose(FinMap::identity(FinSet(b)), f), f);
            EXPECT_EQ(compose(f, FinMap::identity(FinSet(a))), f);
            for (const auto& g : gs) {
              for (const auto& h : hs) EXPECT_EQ(compose(h, compose(g, f)), compose(compose(h, g), f));
            }
          }
        }
      }
    }
  }
}

TEST(Compose, AssociativeOnSizeThree) {
  const FinSet three(3);
  const auto maps = all_maps(three, three);
  ASSERT_EQ(maps.size(), 27u);
  for (const auto& f : maps) {
    for (const auto& g : maps) {
      const auto gf = compose(g, f);
      for (const auto& h : maps) ASSERT_EQ(compose(h, gf), compose(compose(h, g), f));
    }
  }
}

TEST(Pullback, OfIdentitiesIsTheDiagonal) {
  const auto id = FinMap::identity(FinSet(2));
  const auto pb = pullback(id, id);
  EXPECT_EQ(pb.apex.size(), 2u);
  EXPECT_EQ(pb.elems, (std::vector<std::pair<std::size_t, std::size_t>>{{0, 0}, {1, 1}}));
}

TEST(Pullback, OverTheTerminalObjectIsTheProduct) {
  const auto pb = pullback(FinMap::to_terminal(FinSet(2)), FinMap::to_terminal(FinSet(3)));
  EXPECT_EQ(pb.apex.size(), 6u);
}

TEST(Pullback, ParityAgainstIdentityMatchesPairEnumeration) {
  const auto parity = map_of(4, 2, {0, 1, 0, 1});
  const auto id = FinMap::identity(FinSet(2));
  const auto pb = pullback(parity, id);
  std::vector<std::pair<std::size_t, std::size_t>> expect;
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = 0; b < 2; ++b) {
      if (a % 2 == b) expect.emplace_back(a, b);
    }
  }
  EXPECT_EQ(pb.elems, expect);
  EXPECT_EQ(pb.apex.size(), 4u);
}

TEST(Pullback, CodomainMismatchIsReported) {
  try {
    pullback(map_of(1, 2, {0}), map_of(1, 3, {0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CodomainMismatch);
  }
}

TEST(Pullback, ElemsAreStrictlyIncreasingAndSquareCommutes) {
  const FinSet o(2);
  for (std::size_t n = 0; n <= 3; ++n) {
    for (const auto& f : all_maps(FinSet(n), o)) {
      for (const auto& g : all_maps(FinSet(3), o)) {
        const auto pb = pullback(f, g);
        for (std::size_t i = 1; i < pb.elems.size(); ++i) EXPECT_LT(pb.elems[i - 1], pb.elems[i]);
        EXPECT_EQ(compose(f, pb.proj_left), compose(g, pb.proj_right));
        std::size_t count = 0;
        for (std::size_t a = 0; a < n; ++a) {
          for (std::size_t b = 0; b < 3; ++b) count += f(a) == g(b) ? 1 : 0;
        }
        EXPECT_EQ(pb.apex.size(), count);
      }
    }
  }
}

TEST(Mediating, IdentityConeGivesTheDiagonal) {
  const auto id = FinMap::identity(FinSet(2));
  const auto pb = pullback(id, id);
  EXPECT_EQ(mediating(pb, id, id), map_of(2, 2, {0, 1}));
}

TEST(Mediating, BrokenConeIsRejected) {
  const auto id = FinMap::identity(FinSet(2));
  const auto pb = pullback(id, id);
  try {
    mediating(pb, id, map_of(2, 2, {1, 0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SquareDoesNotCommute);
  }
}

// Universal property: for every commuting cone the mediating map is the only
// map into the apex satisfying both projection equations.
TEST(Mediating, UniqueFactorizationOverSmallSets) {
  const FinSet o(2);
  for (std::size_t na : {1u, 2u}) {
    for (std::size_t nb : {1u, 2u}) {
      for (const auto& f : all_maps(FinSet(na), o)) {
        for (const auto& g : all_maps(FinSet(nb), o)) {
          const auto pb = pullback(f, g);
          for (std::size_t nc = 0; nc <= 2; ++nc) {
            const FinSet c(nc);
            for (const auto& u : all_maps(c, FinSet(na))) {
              for (const auto& v : all_maps(c, FinSet(nb))) {
                if (compose(f, u) != compose(g, v)) {
                  EXPECT_THROW(mediating(pb, u, v), Error);
                  continue;
                }
                const auto h = mediating(pb, u, v);
                EXPECT_EQ(compose(pb.proj_left, h), u);
                EXPECT_EQ(compose(pb.proj_right, h), v);
                std::size_t factorizations = 0;
                for_each_map(c, pb.apex, [&](const FinMap& k) {
                  if (compose(pb.proj_left, k) == u && compose(pb.proj_right, k) == v) ++factorizations;
                });
                EXPECT_EQ(factorizations, 1u);
              }
            }
          }
        }
      }
    }
  }
}

TEST(Mediating, UniqueFactorizationWithFourElementFeet) {
  const auto f = map_of(4, 2, {0, 1, 1, 0});
  const auto g = map_of(3, 2, {1, 0, 1});
  const auto pb = pullback(f, g);
  const FinSet c(2);
  for (const auto& u : all_maps(c, FinSet(4))) {
    for (const auto& v : all_maps(c, FinSet(3))) {
      if (compose(f, u) != compose(g, v)) continue;
      const auto h = mediating(pb, u, v);
      std::size_t factorizations = 0;
      for_each_map(c, pb.apex, [&](const FinMap& k) {
        if (compose(pb.proj_left, k) == u && compose(pb.proj_right, k) == v) ++factorizations;
      });
      EXPECT_EQ(factorizations, 1u);
      EXPECT_EQ(compose(pb.proj_left, h), u);
    }
  }
}

TEST(Product, SizesAndCoordinates) {
  const auto p = product(FinSet(2), FinSet(3));
  ASSERT_EQ(p.apex.size(), 6u);
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_EQ(p.proj_left(i), i / 3);
    EXPECT_EQ(p.proj_right(i), i % 3);
  }
  EXPECT_EQ(product(FinSet(0), FinSet(3)).apex.size(), 0u);
}

TEST(SizeCap, EnumerationBeyondTheCapIsRefused) {
  try {
    all_maps(FinSet(30), FinSet(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SizeLimitExceeded);
  }
}

TEST(SizeCap, EnvironmentOverride) {
  ::setenv("SPANFORGE_SIZE_CAP", "10", 1);
  EXPECT_EQ(size_cap(), 10u);
  EXPECT_THROW(all_maps(FinSet(4), FinSet(2)), Error);
  ::unsetenv("SPANFORGE_SIZE_CAP");
  EXPECT_EQ(size_cap(), 1'000'000u);
  EXPECT_EQ(all_maps(FinSet(4), FinSet(2)).size(), 16u);
}

TEST(Enumeration, MapsAreListedLexicographically) {
  const auto maps = all_maps(FinSet(2), FinSet(3));
  ASSERT_EQ(maps.size(), 9u);
  for (std::size_t i = 1; i < maps.size(); ++i) EXPECT_LT(maps[i - 1].table(), maps[i].table());
  EXPECT_EQ(all_maps(FinSet(0), FinSet(0)).size(), 1u);
  EXPECT_EQ(all_maps(FinSet(1), FinSet(0)).size(), 0u);
}
