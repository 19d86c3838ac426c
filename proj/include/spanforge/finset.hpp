#pragma once

// Finite sets and functions between them: the ambient finitely complete
// category every other module computes in. Elements are indices 0..size-1;
// labels are for display only.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "spanforge/error.hpp"

namespace spanforge {

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

class FinSet {
 public:
  FinSet() = default;
  explicit FinSet(std::size_t size) : size_(size) {}
  FinSet(std::size_t size, std::vector<std::string> labels) : size_(size), labels_(std::move(labels)) {
    if (labels_.empty()) return;
    if (labels_.size() != size_) {
      throw Error(ErrorKind::MalformedTables, "label count " + std::to_string(labels_.size()) +
                                                  " differs from set size " + std::to_string(size_));
    }
    std::set<std::string> seen(labels_.begin(), labels_.end());
    if (seen.size() != labels_.size()) {
      throw Error(ErrorKind::MalformedTables, "labels are not pairwise distinct");
    }
  }

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }
  bool has_labels() const noexcept { return !labels_.empty(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  std::string label(std::size_t i) const {
    return has_labels() ? labels_.at(i) : std::to_string(i);
  }

  friend bool operator==(const FinSet&, const FinSet&) = default;
  friend auto operator<=>(const FinSet&, const FinSet&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::string> labels_;
};

inline FinSet terminal_set() { return FinSet(1); }

class FinMap {
 public:
  FinMap() = default;
  FinMap(FinSet dom, FinSet cod, std::vector<std::size_t> table)
      : dom_(std::move(dom)), cod_(std::move(cod)), table_(std::move(table)) {
    if (table_.size() != dom_.size()) {
      throw Error(ErrorKind::MalformedTables, "table length " + std::to_string(table_.size()) +
                                                  " differs from domain size " +
                                                  std::to_string(dom_.size()));
    }
    for (std::size_t i = 0; i < table_.size(); ++i) {
      if (table_[i] >= cod_.size()) {
        throw Error(ErrorKind::MalformedTables, "entry " + std::to_string(i) + " -> " +
                                                    std::to_string(table_[i]) +
                                                    " is outside a codomain of size " +
                                                    std::to_string(cod_.size()));
      }
    }
  }

  static FinMap identity(const FinSet& s) {
    std::vector<std::size_t> t(s.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = i;
    return FinMap(s, s, std::move(t));
  }

  static FinMap constant(const FinSet& dom, const FinSet& cod, std::size_t value) {
    return FinMap(dom, cod, std::vector<std::size_t>(dom.size(), value));
  }

  /// The unique map into the one-point set.
  static FinMap to_terminal(const FinSet& dom) { return constant(dom, terminal_set(), 0); }

  const FinSet& dom() const noexcept { return dom_; }
  const FinSet& cod() const noexcept { return cod_; }
  const std::vector<std::size_t>& table() const noexcept { return table_; }
  std::size_t operator()(std::size_t i) const { return table_.at(i); }

  bool is_injective() const {
    std::vector<bool> hit(cod_.size(), false);
    for (auto v : table_) {
      if (hit[v]) return false;
      hit[v] = true;
    }
    return true;
  }
  bool is_surjective() const {
    std::vector<bool> hit(cod_.size(), false);
    for (auto v : table_) hit[v] = true;
    return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
  }
  bool is_bijective() const { return dom_.size() == cod_.size() && is_injective(); }

  FinMap inverse() const {
    if (!is_bijective()) throw Error(ErrorKind::InvalidArgument, "map is not a bijection");
    std::vector<std::size_t> inv(table_.size());
    for (std::size_t i = 0; i < table_.size(); ++i) inv[table_[i]] = i;
    return FinMap(cod_, dom_, std::move(inv));
  }

  std::string to_string() const {
    std::ostringstream out;
    out << '[';
    for (std::size_t i = 0; i < table_.size(); ++i) out << (i ? "," : "") << table_[i];
    out << ']';
    return out.str();
  }

  friend bool operator==(const FinMap&, const FinMap&) = default;
  friend auto operator<=>(const FinMap&, const FinMap&) = default;

 private:
  FinSet dom_;
  FinSet cod_;
  std::vector<std::size_t> table_;
};

/// g after f.
inline FinMap compose(const FinMap& g, const FinMap& f) {
  if (f.cod() != g.dom()) {
    throw Error(ErrorKind::DomainMismatch, "cannot compose: codomain of size " +
                                               std::to_string(f.cod().size()) +
                                               " does not match domain of size " +
                                               std::to_string(g.dom().size()));
  }
  std::vector<std::size_t> t(f.dom().size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = g.table()[f.table()[i]];
  return FinMap(f.dom(), g.cod(), std::move(t));
}

/// Canonical pullback of a cospan left -> base <- right. The apex lists the
/// pairs (a, b) with left_leg(a) == right_leg(b) in lexicographic order.
struct PullbackResult {
  FinSet apex;
  std::vector<std::pair<std::size_t, std::size_t>> elems;
  FinMap proj_left;
  FinMap proj_right;
  FinMap left_leg;
  FinMap right_leg;

  /// Position of (a, b) in the apex, if the pair lies over a common point.
  std::optional<std::size_t> index_of(std::size_t a, std::size_t b) const {
    if (a >= left_leg.dom().size() || b >= right_leg.dom().size()) return std::nullopt;
    auto idx = pair_index[a * right_leg.dom().size() + b];
    if (idx == npos) return std::nullopt;
    return idx;
  }

  std::size_t at(std::size_t a, std::size_t b) const {
    auto idx = index_of(a, b);
    if (!idx) {
      throw Error(ErrorKind::SquareDoesNotCommute, "pair (" + std::to_string(a) + "," +
                                                       std::to_string(b) +
                                                       ") does not lie in the pullback");
    }
    return *idx;
  }

  // Dense (a * right size + b) -> apex position, npos when off the pullback.
  std::vector<std::size_t> pair_index;
};

inline PullbackResult pullback(const FinMap& f, const FinMap& g) {
  if (f.cod() != g.cod()) {
    throw Error(ErrorKind::CodomainMismatch, "pullback legs have different codomains");
  }
  PullbackResult pb;
  const std::size_t nl = f.dom().size();
  const std::size_t nr = g.dom().size();
  pb.pair_index.assign(nl * nr, npos);
  std::vector<std::size_t> pl, pr;
  for (std::size_t a = 0; a < nl; ++a) {
    for (std::size_t b = 0; b < nr; ++b) {
      if (f.table()[a] == g.table()[b]) {
        pb.pair_index[a * nr + b] = pb.elems.size();
        pb.elems.emplace_back(a, b);
        pl.push_back(a);
        pr.push_back(b);
      }
    }
  }
  pb.apex = FinSet(pb.elems.size());
  pb.proj_left = FinMap(pb.apex, f.dom(), std::move(pl));
  pb.proj_right = FinMap(pb.apex, g.dom(), std::move(pr));
  pb.left_leg = f;
  pb.right_leg = g;
  return pb;
}

/// The unique h with proj_left . h == u and proj_right . h == v.
inline FinMap mediating(const PullbackResult& pb, const FinMap& u, const FinMap& v) {
  if (u.dom() != v.dom()) throw Error(ErrorKind::DomainMismatch, "cone legs have different domains");
  if (u.cod() != pb.left_leg.dom() || v.cod() != pb.right_leg.dom()) {
    throw Error(ErrorKind::DomainMismatch, "cone legs do not land in the pullback's feet");
  }
  std::vector<std::size_t> t(u.dom().size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    auto idx = pb.index_of(u.table()[i], v.table()[i]);
    if (!idx) {
      throw Error(ErrorKind::SquareDoesNotCommute,
                  "cone does not commute at element " + std::to_string(i));
    }
    t[i] = *idx;
  }
  return FinMap(u.dom(), pb.apex, std::move(t));
}

inline PullbackResult product(const FinSet& a, const FinSet& b) {
  return pullback(FinMap::to_terminal(a), FinMap::to_terminal(b));
}

// ---------------------------------------------------------------------------
// Enumeration

/// Cap on the number of objects any exhaustive enumeration may produce.
/// Overridden by SPANFORGE_SIZE_CAP.
inline std::uint64_t size_cap() {
  if (const char* env = std::getenv("SPANFORGE_SIZE_CAP")) {
    char* end = nullptr;
    auto v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return 1'000'000;
}

/// base^exp, saturating at uint64 max.
inline std::uint64_t saturating_power(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    r *= base;
  }
  return r;
}

inline void require_within_cap(std::uint64_t count, const std::string& what) {
  if (count > size_cap()) {
    throw Error(ErrorKind::SizeLimitExceeded, what + " needs " + std::to_string(count) +
                                                  " items, cap is " + std::to_string(size_cap()));
  }
}

inline std::uint64_t choice_count(const std::vector<std::vector<std::size_t>>& candidates) {
  std::uint64_t n = 1;
  for (const auto& c : candidates) {
    if (c.empty()) return 0;
    if (n > std::numeric_limits<std::uint64_t>::max() / c.size()) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    n *= c.size();
  }
  return n;
}

/// Visits every table t with t[i] drawn from candidates[i], lexicographically.
template <class Fn>
void for_each_choice(const std::vector<std::vector<std::size_t>>& candidates, Fn&& fn) {
  for (const auto& c : candidates) {
    if (c.empty()) return;
  }
  const std::size_t n = candidates.size();
  std::vector<std::size_t> pos(n, 0);
  std::vector<std::size_t> table(n);
  for (std::size_t i = 0; i < n; ++i) table[i] = candidates[i][0];
  while (true) {
    fn(static_cast<const std::vector<std::size_t>&>(table));
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++pos[i] < candidates[i].size()) {
        table[i] = candidates[i][pos[i]];
        break;
      }
      pos[i] = 0;
      table[i] = candidates[i][0];
      if (i == 0) return;
    }
    if (n == 0) return;
  }
}

template <class Fn>
void for_each_map(const FinSet& dom, const FinSet& cod, Fn&& fn) {
  std::vector<std::size_t> all(cod.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  std::vector<std::vector<std::size_t>> candidates(dom.size(), all);
  for_each_choice(candidates, [&](const std::vector<std::size_t>& t) { fn(FinMap(dom, cod, t)); });
}

inline std::vector<FinMap> all_maps(const FinSet& dom, const FinSet& cod) {
  require_within_cap(saturating_power(cod.size(), dom.size()), "enumerating maps");
  std::vector<FinMap> out;
  for_each_map(dom, cod, [&](FinMap m) { out.push_back(std::move(m)); });
  return out;
}

}  // namespace spanforge
