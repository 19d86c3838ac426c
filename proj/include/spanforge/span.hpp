#pragma once

// The monoidal category of spans O <- X -> O over a fixed finite set O.
// Morphisms are 2-cells (apex maps commuting with both legs); the tensor
// glues the right leg of the first factor to the left leg of the second by
// pullback. Coherence isomorphisms are explicit cells (see reassociate).

#include <string>
#include <utility>

#include "spanforge/finset.hpp"

namespace spanforge {

class Span {
 public:
  Span() = default;
  Span(FinSet o, FinSet apex, FinMap left, FinMap right)
      : o_(std::move(o)), apex_(std::move(apex)), left_(std::move(left)), right_(std::move(right)) {
    if (left_.dom() != apex_ || right_.dom() != apex_) {
      throw Error(ErrorKind::MalformedTables, "span legs must start at the apex");
    }
    if (left_.cod() != o_ || right_.cod() != o_) {
      throw Error(ErrorKind::MalformedTables, "span legs must end at the base object");
    }
  }

  /// Both legs given; the apex and base are read off them.
  Span(FinMap left, FinMap right) : Span(left.cod(), left.dom(), left, right) {}

  /// The monoidal unit O <- O -> O.
  static Span unit(const FinSet& o) { return Span(FinMap::identity(o), FinMap::identity(o)); }

  const FinSet& o() const noexcept { return o_; }
  const FinSet& apex() const noexcept { return apex_; }
  const FinMap& left() const noexcept { return left_; }
  const FinMap& right() const noexcept { return right_; }

  bool is_symmetric() const { return left_ == right_; }

  friend bool operator==(const Span&, const Span&) = default;

 private:
  FinSet o_;
  FinSet apex_;
  FinMap left_;
  FinMap right_;
};

/// An object f: A -> O of the slice over O, viewed as the symmetric span (f, f).
class SliceObject {
 public:
  SliceObject() = default;
  explicit SliceObject(FinMap f) : f_(std::move(f)) {}

  const FinSet& a() const noexcept { return f_.dom(); }
  const FinSet& o() const noexcept { return f_.cod(); }
  const FinMap& f() const noexcept { return f_; }
  Span span() const { return Span(f_, f_); }

  friend bool operator==(const SliceObject&, const SliceObject&) = default;
  friend auto operator<=>(const SliceObject&, const SliceObject&) = default;

 private:
  FinMap f_;
};

class TwoCell {
 public:
  TwoCell() = default;
  TwoCell(Span src, Span dst, FinMap map)
      : src_(std::move(src)), dst_(std::move(dst)), map_(std::move(map)) {
    if (src_.o() != dst_.o()) throw Error(ErrorKind::BaseMismatch, "2-cell between spans over different bases");
    if (map_.dom() != src_.apex() || map_.cod() != dst_.apex()) {
      throw Error(ErrorKind::NotATwoCell, "2-cell map does not run between the apexes");
    }
    for (std::size_t x = 0; x < map_.dom().size(); ++x) {
      const auto y = map_.table()[x];
      if (dst_.left().table()[y] != src_.left().table()[x]) {
        throw Error(ErrorKind::NotATwoCell, "left triangle fails at element " + std::to_string(x));
      }
      if (dst_.right().table()[y] != src_.right().table()[x]) {
        throw Error(ErrorKind::NotATwoCell, "right triangle fails at element " + std::to_string(x));
      }
    }
  }

  static TwoCell identity(const Span& s) { return TwoCell(s, s, FinMap::identity(s.apex())); }

  /// Whether map would be a valid 2-cell src => dst, without throwing.
  static bool is_valid(const Span& src, const Span& dst, const FinMap& map) {
    if (src.o() != dst.o() || map.dom() != src.apex() || map.cod() != dst.apex()) return false;
    for (std::size_t x = 0; x < map.dom().size(); ++x) {
      const auto y = map.table()[x];
      if (dst.left().table()[y] != src.left().table()[x]) return false;
      if (dst.right().table()[y] != src.right().table()[x]) return false;
    }
    return true;
  }

  const Span& src() const noexcept { return src_; }
  const Span& dst() const noexcept { return dst_; }
  const FinMap& map() const noexcept { return map_; }

  friend bool operator==(const TwoCell&, const TwoCell&) = default;

 private:
  Span src_;
  Span dst_;
  FinMap map_;
};

/// second after first.
inline TwoCell compose(const TwoCell& second, const TwoCell& first) {
  if (first.dst() != second.src()) {
    throw Error(ErrorKind::DomainMismatch, "2-cells are not composable");
  }
  return TwoCell(first.src(), second.dst(), compose(second.map(), first.map()));
}

/// A 2-cell f_A => g_B between slice objects is just a map over O.
inline TwoCell slice_cell(const SliceObject& fa, const SliceObject& gb, FinMap phi) {
  return TwoCell(fa.span(), gb.span(), std::move(phi));
}

struct TensorProduct {
  Span span;
  /// Pullback of the first factor's right leg along the second's left leg.
  PullbackResult pullback;

  const FinMap& proj_left() const noexcept { return pullback.proj_left; }
  const FinMap& proj_right() const noexcept { return pullback.proj_right; }
};

inline TensorProduct tensor(const Span& x, const Span& m) {
  if (x.o() != m.o()) throw Error(ErrorKind::BaseMismatch, "tensor of spans over different bases");
  auto pb = pullback(x.right(), m.left());
  Span s(x.o(), pb.apex, compose(x.left(), pb.proj_left), compose(m.right(), pb.proj_right));
  return TensorProduct{std::move(s), std::move(pb)};
}

/// t (x) s: the mediating map into the target pullback.
inline TwoCell tensor_cells(const TwoCell& t, const TwoCell& s) {
  if (t.src().o() != s.src().o()) throw Error(ErrorKind::BaseMismatch, "tensor of cells over different bases");
  const auto from = tensor(t.src(), s.src());
  const auto to = tensor(t.dst(), s.dst());
  auto map = mediating(to.pullback, compose(t.map(), from.proj_left()),
                       compose(s.map(), from.proj_right()));
  return TwoCell(from.span, to.span, std::move(map));
}

/// The diagonal f_A => f_A (x) f_A, a |-> (a, a).
inline TwoCell diagonal(const SliceObject& fa) {
  const auto sp = fa.span();
  const auto sq = tensor(sp, sp);
  std::vector<std::size_t> t(fa.a().size());
  for (std::size_t a = 0; a < t.size(); ++a) t[a] = sq.pullback.at(a, a);
  return TwoCell(sp, sq.span, FinMap(fa.a(), sq.span.apex(), std::move(t)));
}

/// <xi, alpha>: f_A => X (x) M for cells xi: f_A => X and alpha: f_A => M
/// whose ends agree (X's right leg after xi equals M's left leg after alpha).
inline TwoCell pair_cells(const TwoCell& xi, const TwoCell& alpha) {
  if (xi.src() != alpha.src()) throw Error(ErrorKind::DomainMismatch, "paired cells have different sources");
  if (xi.src().o() != alpha.dst().o()) throw Error(ErrorKind::BaseMismatch, "paired cells over different bases");
  if (compose(xi.dst().right(), xi.map()) != compose(alpha.dst().left(), alpha.map())) {
    throw Error(ErrorKind::ConditionFails, "pairing condition fails: the cells do not meet over O");
  }
  const auto target = tensor(xi.dst(), alpha.dst());
  auto map = mediating(target.pullback, xi.map(), alpha.map());
  return TwoCell(xi.src(), target.span, std::move(map));
}

/// (x (x) y) (x) z => x (x) (y (x) z), ((a,b),c) |-> (a,(b,c)).
inline TwoCell reassociate(const Span& x, const Span& y, const Span& z) {
  if (x.o() != y.o() || y.o() != z.o()) throw Error(ErrorKind::BaseMismatch, "reassociation over different bases");
  const auto xy = tensor(x, y);
  const auto xy_z = tensor(xy.span, z);
  const auto yz = tensor(y, z);
  const auto x_yz = tensor(x, yz.span);
  std::vector<std::size_t> t(xy_z.span.apex().size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    const auto [ab, c] = xy_z.pullback.elems[i];
    const auto [a, b] = xy.pullback.elems[ab];
    t[i] = x_yz.pullback.at(a, yz.pullback.at(b, c));
  }
  return TwoCell(xy_z.span, x_yz.span, FinMap(xy_z.span.apex(), x_yz.span.apex(), std::move(t)));
}

/// x (x) (y (x) z) => (x (x) y) (x) z.
inline TwoCell reassociate_inverse(const Span& x, const Span& y, const Span& z) {
  const auto fwd = reassociate(x, y, z);
  return TwoCell(fwd.dst(), fwd.src(), fwd.map().inverse());
}

/// The projection of x (x) m onto m, as a 2-cell. Valid whenever x's legs
/// agree over the shared point, e.g. for f_A (x) M and O (x) M.
inline TwoCell right_projection(const TensorProduct& tp, const Span& m) {
  return TwoCell(tp.span, m, tp.proj_right());
}

/// The projection of x (x) m onto x, as a 2-cell (valid e.g. for M (x) O).
inline TwoCell left_projection(const TensorProduct& tp, const Span& x) {
  return TwoCell(tp.span, x, tp.proj_left());
}

}  // namespace spanforge
