#pragma once

// Small monoids, groups and internal categories with hardcoded Cayley
// tables, used as fixtures for the exhaustive suites.

#include <functional>
#include <string>
#include <vector>

#include "spanforge/internal.hpp"
#include "spanforge/report.hpp"

namespace spanforge {

/// A finite monoid on {0..order-1}; table is row-major, table[a*order+b] = a.b.
struct Monoid {
  std::string name;
  std::size_t order = 0;
  std::vector<std::size_t> table;
  std::size_t unit = 0;

  std::size_t mul(std::size_t a, std::size_t b) const { return table[a * order + b]; }

  friend bool operator==(const Monoid&, const Monoid&) = default;
};

inline Report check_monoid(const Monoid& m) {
  Report r;
  const auto n = m.order;
  bool ok = m.table.size() == n * n;
  for (auto v : m.table) ok = ok && v < n;
  r.add("closed", ok, ok ? "" : "table is not an order x order table of elements");
  if (!ok) return r;
  ok = n > 0 && m.unit < n;
  for (std::size_t a = 0; a < n && ok; ++a) ok = m.mul(m.unit, a) == a && m.mul(a, m.unit) == a;
  r.add("unit", ok, ok ? "" : "element " + std::to_string(m.unit) + " is not a two-sided unit");
  std::string bad;
  for (std::size_t a = 0; a < n && bad.empty(); ++a) {
    for (std::size_t b = 0; b < n && bad.empty(); ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        if (m.mul(m.mul(a, b), c) != m.mul(a, m.mul(b, c))) {
          bad = "(" + std::to_string(a) + "." + std::to_string(b) + ")." + std::to_string(c) + " differs";
          break;
        }
      }
    }
  }
  r.add("associative", bad.empty(), bad);
  return r;
}

/// Two-sided inverse of a, or npos.
inline std::size_t monoid_inverse(const Monoid& m, std::size_t a) {
  for (std::size_t b = 0; b < m.order; ++b) {
    if (m.mul(a, b) == m.unit && m.mul(b, a) == m.unit) return b;
  }
  return npos;
}

inline Report check_group(const Monoid& g) {
  auto r = check_monoid(g);
  if (!r.passed()) return r;
  std::string bad;
  for (std::size_t a = 0; a < g.order; ++a) {
    if (monoid_inverse(g, a) == npos) {
      bad = "element " + std::to_string(a) + " has no inverse";
      break;
    }
  }
  r.add("inverses", bad.empty(), bad);
  return r;
}

/// A monoid whose group axioms have been verified.
class Group {
 public:
  explicit Group(Monoid m) : monoid_(std::move(m)) {
    const auto r = check_group(monoid_);
    if (!r.passed()) throw Error(ErrorKind::NotAGroup, monoid_.name + ": " + r.first_failure()->detail);
    inverse_.resize(monoid_.order);
    for (std::size_t a = 0; a < monoid_.order; ++a) inverse_[a] = monoid_inverse(monoid_, a);
  }

  const Monoid& monoid() const noexcept { return monoid_; }
  std::size_t order() const noexcept { return monoid_.order; }
  std::size_t unit() const noexcept { return monoid_.unit; }
  std::size_t mul(std::size_t a, std::size_t b) const { return monoid_.mul(a, b); }
  std::size_t inverse(std::size_t a) const { return inverse_.at(a); }

 private:
  Monoid monoid_;
  std::vector<std::size_t> inverse_;
};

namespace monoids {

inline Monoid from_function(std::string name, std::size_t n, std::size_t unit,
                            const std::function<std::size_t(std::size_t, std::size_t)>& op) {
  Monoid m{std::move(name), n, std::vector<std::size_t>(n * n), unit};
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) m.table[a * n + b] = op(a, b);
  }
  return m;
}

inline Monoid cyclic(std::size_t n) {
  return from_function("Z" + std::to_string(n), n, 0, [n](std::size_t a, std::size_t b) { return (a + b) % n; });
}

/// (Z_2)^k under bitwise xor.
inline Monoid elementary_abelian(std::size_t k) {
  return from_function("Z2^" + std::to_string(k), std::size_t{1} << k, 0,
                       [](std::size_t a, std::size_t b) { return a ^ b; });
}

inline Monoid klein_four() {
  auto m = elementary_abelian(2);
  m.name = "V4";
  return m;
}

/// ({0,1}, and) with unit 1.
inline Monoid and_semilattice() { return Monoid{"and", 2, {0, 0, 0, 1}, 1}; }

/// The chain 0 < 1 < 2 under min, unit 2.
inline Monoid min_chain3() { return Monoid{"min3", 3, {0, 0, 0, 0, 1, 1, 0, 1, 2}, 2}; }

/// Left-zero semigroup on k elements (x.y = x) with an adjoined unit k.
inline Monoid left_zero_with_unit(std::size_t k) {
  return from_function("LZ" + std::to_string(k) + "+1", k + 1, k, [k](std::size_t a, std::size_t b) {
    if (a == k) return b;
    return a;
  });
}

/// Every monoid in the catalog (orders 1 to 4).
inline std::vector<Monoid> catalog() {
  auto trivial = cyclic(1);
  trivial.name = "1";
  return {trivial,          cyclic(2),  cyclic(3),   cyclic(4),
          klein_four(),     and_semilattice(), min_chain3(), left_zero_with_unit(2),
          left_zero_with_unit(3)};
}

inline std::vector<Monoid> group_catalog() {
  auto trivial = cyclic(1);
  trivial.name = "1";
  return {trivial, cyclic(2), cyclic(3), cyclic(4), klein_four()};
}

}  // namespace monoids

// ---------------------------------------------------------------------------
// Internal categories

namespace internal_categories {

inline InternalCategory from_parts(std::string name, std::size_t objects, std::size_t morphisms,
                                   std::vector<std::size_t> d, std::vector<std::size_t> c,
                                   std::vector<std::size_t> eta,
                                   const std::function<std::size_t(std::size_t, std::size_t)>& mu) {
  InternalCategory ic;
  ic.name = std::move(name);
  ic.o = FinSet(objects);
  ic.m = FinSet(morphisms);
  ic.d = FinMap(ic.m, ic.o, std::move(d));
  ic.c = FinMap(ic.m, ic.o, std::move(c));
  ic.eta = FinMap(ic.o, ic.m, std::move(eta));
  const auto pairs = ic.composable_pairs();
  std::vector<std::size_t> t;
  for (const auto& [a, b] : pairs.pullback.elems) t.push_back(mu(a, b));
  ic.mu = FinMap(pairs.span.apex(), ic.m, std::move(t));
  return ic;
}

/// One-object category of a monoid: mu(a, b) = a.b.
inline InternalCategory one_object(const Monoid& mon) {
  return from_parts("B(" + mon.name + ")", 1, mon.order, std::vector<std::size_t>(mon.order, 0),
                    std::vector<std::size_t>(mon.order, 0), {mon.unit},
                    [&mon](std::size_t a, std::size_t b) { return mon.mul(a, b); });
}

inline InternalGroupoid one_object_groupoid(const Group& g) {
  std::vector<std::size_t> inv(g.order());
  for (std::size_t a = 0; a < g.order(); ++a) inv[a] = g.inverse(a);
  auto ic = one_object(g.monoid());
  auto iota = FinMap(ic.m, ic.m, std::move(inv));
  return InternalGroupoid{std::move(ic), std::move(iota)};
}

/// Only identities: M = O.
inline InternalCategory discrete(std::size_t n) {
  std::vector<std::size_t> id(n);
  for (std::size_t i = 0; i < n; ++i) id[i] = i;
  return from_parts("Disc(" + std::to_string(n) + ")", n, n, id, id, id,
                    [](std::size_t a, std::size_t) { return a; });
}

/// M = O x O, (x,y) has index x*n+y and runs x -> y.
inline InternalGroupoid pair_groupoid(std::size_t n) {
  std::vector<std::size_t> d, c, eta, inv;
  for (std::size_t x = 0; x < n; ++x) {
    eta.push_back(x * n + x);
    for (std::size_t y = 0; y < n; ++y) {
      d.push_back(x);
      c.push_back(y);
      inv.push_back(y * n + x);
    }
  }
  auto ic = from_parts("Pair(" + std::to_string(n) + ")", n, n * n, d, c, eta, [n](std::size_t a, std::size_t b) {
    return (a / n) * n + (b % n);
  });
  auto iota = FinMap(ic.m, ic.m, std::move(inv));
  return InternalGroupoid{std::move(ic), std::move(iota)};
}

/// Action groupoid of Z_2 flipping {0,1}: arrow g*2+x runs x -> g+x mod 2.
inline InternalGroupoid z2_action_groupoid() {
  std::vector<std::size_t> d, c;
  for (std::size_t g = 0; g < 2; ++g) {
    for (std::size_t x = 0; x < 2; ++x) {
      d.push_back(x);
      c.push_back((g + x) % 2);
    }
  }
  auto ic = from_parts("Z2 acting on 2", 2, 4, d, c, {0, 1}, [](std::size_t a, std::size_t b) {
    const auto g = a / 2, x = a % 2, h = b / 2;
    return ((g + h) % 2) * 2 + x;
  });
  // (g, x) is inverted by (g, g + x).
  auto iota = FinMap(ic.m, ic.m, {0, 1, 3, 2});
  return InternalGroupoid{std::move(ic), std::move(iota)};
}

/// The arrow category 0 -> 1: identities 0, 1 and one arrow 2.
inline InternalCategory interval() {
  return from_parts("Interval", 2, 3, {0, 1, 0}, {0, 1, 1}, {0, 1}, [](std::size_t a, std::size_t b) {
    if (a == 2 || b == 2) return std::size_t{2};
    return a;
  });
}

/// The six reference instances the checker must accept.
inline std::vector<InternalCategory> catalog() {
  return {discrete(3),
          one_object(monoids::cyclic(2)),
          one_object(monoids::and_semilattice()),
          pair_groupoid(2).cat,
          pair_groupoid(3).cat,
          z2_action_groupoid().cat};
}

}  // namespace internal_categories

}  // namespace spanforge
