#pragma once

// Explicitly tabulated small categories and functors between them. Used for
// the external categories of an internal category, sub-slices of C/O, and
// the total categories of the fibrations.

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "spanforge/finset.hpp"
#include "spanforge/report.hpp"

namespace spanforge {

class FiniteCategory {
 public:
  struct Arrow {
    std::size_t src;
    std::size_t dst;
    std::string key;
  };

  std::size_t add_object(std::string key) {
    objects_.push_back(std::move(key));
    identities_.push_back(npos);
    return objects_.size() - 1;
  }

  std::size_t add_arrow(std::size_t src, std::size_t dst, std::string key) {
    if (src >= objects_.size() || dst >= objects_.size()) {
      throw Error(ErrorKind::MalformedTables, "arrow endpoint out of range");
    }
    arrows_.push_back(Arrow{src, dst, std::move(key)});
    return arrows_.size() - 1;
  }

  void set_identity(std::size_t object, std::size_t arrow) { identities_.at(object) = arrow; }

  /// Records g . f == h.
  void set_composite(std::size_t g, std::size_t f, std::size_t h) { composition_[pair_key(g, f)] = h; }

  std::size_t object_count() const noexcept { return objects_.size(); }
  std::size_t arrow_count() const noexcept { return arrows_.size(); }
  const std::string& object_key(std::size_t i) const { return objects_.at(i); }
  const Arrow& arrow(std::size_t i) const { return arrows_.at(i); }
  std::size_t identity(std::size_t object) const { return identities_.at(object); }

  /// g . f, if recorded.
  std::optional<std::size_t> compose(std::size_t g, std::size_t f) const {
    auto it = composition_.find(pair_key(g, f));
    if (it == composition_.end()) return std::nullopt;
    return it->second;
  }

  std::vector<std::size_t> hom(std::size_t a, std::size_t b) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < arrows_.size(); ++i) {
      if (arrows_[i].src == a && arrows_[i].dst == b) out.push_back(i);
    }
    return out;
  }

  /// Arrows grouped by codomain, for lift searches.
  std::vector<std::vector<std::size_t>> arrows_into() const {
    std::vector<std::vector<std::size_t>> out(objects_.size());
    for (std::size_t i = 0; i < arrows_.size(); ++i) out[arrows_[i].dst].push_back(i);
    return out;
  }

  std::vector<std::vector<std::size_t>> arrows_out_of() const {
    std::vector<std::vector<std::size_t>> out(objects_.size());
    for (std::size_t i = 0; i < arrows_.size(); ++i) out[arrows_[i].src].push_back(i);
    return out;
  }

  std::size_t composite_count() const noexcept { return composition_.size(); }

 private:
  static std::uint64_t pair_key(std::size_t g, std::size_t f) {
    return (static_cast<std::uint64_t>(g) << 32) | static_cast<std::uint64_t>(f);
  }

  std::vector<std::string> objects_;
  std::vector<Arrow> arrows_;
  std::vector<std::size_t> identities_;
  std::unordered_map<std::uint64_t, std::size_t> composition_;
};

/// Identity, unit, composability and associativity laws, checked exhaustively.
inline Report check_category_laws(const FiniteCategory& cat) {
  Report r;
  const auto out_of = cat.arrows_out_of();

  std::string bad;
  for (std::size_t o = 0; o < cat.object_count() && bad.empty(); ++o) {
    const auto id = cat.identity(o);
    if (id == npos || id >= cat.arrow_count() || cat.arrow(id).src != o || cat.arrow(id).dst != o) {
      bad = "object " + cat.object_key(o) + " has no valid identity";
    }
  }
  r.add("identities", bad.empty(), bad);
  if (!bad.empty()) return r;

  std::size_t composable = 0;
  for (std::size_t f = 0; f < cat.arrow_count() && bad.empty(); ++f) {
    for (auto g : out_of[cat.arrow(f).dst]) {
      ++composable;
      auto h = cat.compose(g, f);
      if (!h || cat.arrow(*h).src != cat.arrow(f).src || cat.arrow(*h).dst != cat.arrow(g).dst) {
        bad = "composite of " + cat.arrow(g).key + " after " + cat.arrow(f).key + " is missing or misplaced";
        break;
      }
    }
  }
  if (bad.empty() && composable != cat.composite_count()) {
    bad = "composites recorded for non-composable pairs";
  }
  r.add("composition-closed", bad.empty(), bad);
  if (!bad.empty()) return r;

  for (std::size_t f = 0; f < cat.arrow_count() && bad.empty(); ++f) {
    const auto& a = cat.arrow(f);
    if (*cat.compose(cat.identity(a.dst), f) != f || *cat.compose(f, cat.identity(a.src)) != f) {
      bad = "unit law fails at " + a.key;
    }
  }
  r.add("unit-laws", bad.empty(), bad);

  for (std::size_t f = 0; f < cat.arrow_count() && bad.empty(); ++f) {
    for (auto g : out_of[cat.arrow(f).dst]) {
      for (auto h : out_of[cat.arrow(g).dst]) {
        if (*cat.compose(h, *cat.compose(g, f)) != *cat.compose(*cat.compose(h, g), f)) {
          bad = "associativity fails at (" + cat.arrow(h).key + ", " + cat.arrow(g).key + ", " +
                cat.arrow(f).key + ")";
          break;
        }
      }
      if (!bad.empty()) break;
    }
  }
  r.add("associativity", bad.empty(), bad);
  return r;
}

/// Tabular functor: object and arrow maps.
struct FunctorData {
  std::vector<std::size_t> object_map;
  std::vector<std::size_t> arrow_map;

  static FunctorData identity(const FiniteCategory& c) {
    FunctorData f;
    for (std::size_t i = 0; i < c.object_count(); ++i) f.object_map.push_back(i);
    for (std::size_t i = 0; i < c.arrow_count(); ++i) f.arrow_map.push_back(i);
    return f;
  }

  friend bool operator==(const FunctorData&, const FunctorData&) = default;
};

/// second after first.
inline FunctorData compose(const FunctorData& second, const FunctorData& first) {
  FunctorData out;
  for (auto o : first.object_map) out.object_map.push_back(o == npos ? npos : second.object_map.at(o));
  for (auto a : first.arrow_map) out.arrow_map.push_back(a == npos ? npos : second.arrow_map.at(a));
  return out;
}

inline Report check_functor(const FunctorData& fn, const FiniteCategory& src, const FiniteCategory& dst) {
  Report r;
  std::string bad;
  if (fn.object_map.size() != src.object_count() || fn.arrow_map.size() != src.arrow_count()) {
    bad = "functor tables do not cover the source category";
  }
  for (std::size_t o = 0; o < fn.object_map.size() && bad.empty(); ++o) {
    if (fn.object_map[o] >= dst.object_count()) bad = "object " + src.object_key(o) + " has no image";
  }
  for (std::size_t a = 0; a < fn.arrow_map.size() && bad.empty(); ++a) {
    if (fn.arrow_map[a] >= dst.arrow_count()) {
      bad = "arrow " + src.arrow(a).key + " has no image";
      break;
    }
    const auto& sa = src.arrow(a);
    const auto& da = dst.arrow(fn.arrow_map[a]);
    if (da.src != fn.object_map[sa.src] || da.dst != fn.object_map[sa.dst]) {
      bad = "arrow " + sa.key + " is sent between the wrong objects";
    }
  }
  r.add("functor-well-defined", bad.empty(), bad);
  if (!bad.empty()) return r;

  for (std::size_t o = 0; o < src.object_count() && bad.empty(); ++o) {
    if (fn.arrow_map[src.identity(o)] != dst.identity(fn.object_map[o])) {
      bad = "identity of " + src.object_key(o) + " not preserved";
    }
  }
  r.add("functor-identities", bad.empty(), bad);

  const auto out_of = src.arrows_out_of();
  for (std::size_t f = 0; f < src.arrow_count() && bad.empty(); ++f) {
    for (auto g : out_of[src.arrow(f).dst]) {
      auto gf = src.compose(g, f);
      auto image = dst.compose(fn.arrow_map[g], fn.arrow_map[f]);
      if (!gf || !image || fn.arrow_map[*gf] != *image) {
        bad = "composite " + src.arrow(g).key + " after " + src.arrow(f).key + " not preserved";
        break;
      }
    }
  }
  r.add("functor-composition", bad.empty(), bad);
  return r;
}

}  // namespace spanforge
