#pragma once

// Convolution monoids and free-module endomorphisms of an internal category
// M over a slice object f_A, the comparison maps
//
//   E : C_O(f_A, M)          -> C_O(f_A, f_A (x) M),   alpha |-> <id, alpha>
//   L : C_O(f_A, f_A (x) M)  -> C_O(f_A, M),           gamma |-> pi_M . gamma
//
// the coreflector onto simply presented endomorphisms, and the classical
// instances: the Toffoli extension (x, y) |-> (x, f(x) + y) and Feistel
// networks built from it.
//
// Everything is computed with the span machinery (tensor, pairing,
// reassociation) so that each formula is the literal composite of cells.

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "spanforge/catalog.hpp"
#include "spanforge/internal.hpp"
#include "spanforge/report.hpp"
#include "spanforge/span.hpp"

namespace spanforge {

namespace detail {

inline void require_same_target(const InternalCategoryRef& x, const InternalCategoryRef& y) {
  if (x != y && !(x && y && *x == *y)) {
    throw Error(ErrorKind::BaseMismatch, "elements live over different internal categories");
  }
}

inline void require_base(const SliceObject& fa, const InternalCategory& ic) {
  if (fa.o() != ic.o) throw Error(ErrorKind::BaseMismatch, "slice object is not over the object of objects");
}

}  // namespace detail

/// f_A (x) M: the free right M-module on f_A.
inline TensorProduct free_module(const SliceObject& fa, const InternalCategory& ic) {
  return tensor(fa.span(), ic.span());
}

/// An element of the convolution monoid C_O(f_A, M): a map alpha: A -> M
/// with d . alpha == f == c . alpha.
class ConvElement {
 public:
  ConvElement(SliceObject base, InternalCategoryRef target, TwoCell cell)
      : base_(std::move(base)), target_(std::move(target)), cell_(std::move(cell)) {
    detail::require_base(base_, *target_);
    if (cell_.src() != base_.span() || cell_.dst() != target_->span()) {
      throw Error(ErrorKind::NotATwoCell, "convolution element must be a 2-cell f_A => M");
    }
  }

  ConvElement(SliceObject base, InternalCategoryRef target, FinMap alpha)
      : ConvElement(base, target, TwoCell(base.span(), target->span(), std::move(alpha))) {}

  const SliceObject& base() const noexcept { return base_; }
  const InternalCategory& target() const noexcept { return *target_; }
  const InternalCategoryRef& target_ref() const noexcept { return target_; }
  const TwoCell& cell() const noexcept { return cell_; }
  const FinMap& map() const noexcept { return cell_.map(); }

  friend bool operator==(const ConvElement& x, const ConvElement& y) {
    return x.base_ == y.base_ && x.cell_.map() == y.cell_.map() &&
           (x.target_ == y.target_ || *x.target_ == *y.target_);
  }

 private:
  SliceObject base_;
  InternalCategoryRef target_;
  TwoCell cell_;
};

/// A Kleisli endomorphism: a 2-cell f_A => f_A (x) M.
class KleisliEndo {
 public:
  KleisliEndo(SliceObject base, InternalCategoryRef target, TwoCell cell)
      : KleisliEndo(base, target, std::move(cell), free_module(base, *target).span) {}

  /// As above, with the free module span f_A (x) M already computed.
  KleisliEndo(SliceObject base, InternalCategoryRef target, TwoCell cell, const Span& module)
      : base_(std::move(base)), target_(std::move(target)), cell_(std::move(cell)) {
    detail::require_base(base_, *target_);
    if (cell_.src() != base_.span() || cell_.dst() != module) {
      throw Error(ErrorKind::NotATwoCell, "Kleisli endomorphism must be a 2-cell f_A => f_A (x) M");
    }
  }

  KleisliEndo(SliceObject base, InternalCategoryRef target, FinMap map)
      : KleisliEndo(base, target, TwoCell(base.span(), free_module(base, *target).span, std::move(map))) {}

  const SliceObject& base() const noexcept { return base_; }
  const InternalCategory& target() const noexcept { return *target_; }
  const InternalCategoryRef& target_ref() const noexcept { return target_; }
  const TwoCell& cell() const noexcept { return cell_; }
  const FinMap& map() const noexcept { return cell_.map(); }

  friend bool operator==(const KleisliEndo& x, const KleisliEndo& y) {
    return x.base_ == y.base_ && x.cell_.map() == y.cell_.map() &&
           (x.target_ == y.target_ || *x.target_ == *y.target_);
  }

 private:
  SliceObject base_;
  InternalCategoryRef target_;
  TwoCell cell_;
};

// ---------------------------------------------------------------------------
// Convolution monoid

/// e = eta . f, the unit of C_O(f_A, M).
inline ConvElement conv_unit(const SliceObject& fa, const InternalCategoryRef& ic) {
  detail::require_base(fa, *ic);
  const TwoCell to_unit(fa.span(), ic->unit_span(), fa.f());
  return ConvElement(fa, ic, compose(ic->eta_cell(), to_unit));
}

/// alpha * beta = mu . (alpha (x) beta) . Delta.
inline ConvElement conv_mult(const ConvElement& alpha, const ConvElement& beta) {
  if (alpha.base() != beta.base()) throw Error(ErrorKind::BaseMismatch, "convolution of elements over different slices");
  detail::require_same_target(alpha.target_ref(), beta.target_ref());
  const auto& ic = alpha.target();
  const auto cell = compose(ic.mu_cell(), compose(tensor_cells(alpha.cell(), beta.cell()), diagonal(alpha.base())));
  return ConvElement(alpha.base(), alpha.target_ref(), cell);
}

// ---------------------------------------------------------------------------
// Kleisli endomorphisms

/// The Kleisli identity <id, eta . f>.
inline KleisliEndo kleisli_unit(const SliceObject& fa, const InternalCategoryRef& ic) {
  const auto e = conv_unit(fa, ic);
  return KleisliEndo(fa, ic, pair_cells(TwoCell::identity(fa.span()), e.cell()));
}

/// beta after alpha: (f_A (x) mu) . reassociate . (beta (x) M) . alpha.
inline KleisliEndo kleisli_compose(const KleisliEndo& beta, const KleisliEndo& alpha) {
  if (alpha.base() != beta.base()) throw Error(ErrorKind::BaseMismatch, "Kleisli composition over different slices");
  detail::require_same_target(alpha.target_ref(), beta.target_ref());
  const auto& ic = alpha.target();
  const auto fa = alpha.base().span();
  const auto mbar = ic.span();
  const auto lifted = tensor_cells(beta.cell(), TwoCell::identity(mbar));
  const auto assoc = reassociate(fa, mbar, mbar);
  const auto multiply = tensor_cells(TwoCell::identity(fa), ic.mu_cell());
  const auto cell = compose(multiply, compose(assoc, compose(lifted, alpha.cell())));
  return KleisliEndo(alpha.base(), alpha.target_ref(), cell);
}

/// The free-module endomorphism f_A (x) M => f_A (x) M extending gamma,
/// (f_A (x) mu) . reassociate . (gamma (x) M).
inline TwoCell kleisli_extension(const KleisliEndo& gamma) {
  const auto& ic = gamma.target();
  const auto fa = gamma.base().span();
  const auto mbar = ic.span();
  const auto lifted = tensor_cells(gamma.cell(), TwoCell::identity(mbar));
  return compose(tensor_cells(TwoCell::identity(fa), ic.mu_cell()), compose(reassociate(fa, mbar, mbar), lifted));
}

/// E(alpha) = <id, alpha>.
inline KleisliEndo E(const ConvElement& alpha) {
  return KleisliEndo(alpha.base(), alpha.target_ref(), pair_cells(TwoCell::identity(alpha.base().span()), alpha.cell()));
}

/// The projection f_A (x) M => M as a 2-cell.
inline TwoCell module_projection(const SliceObject& fa, const InternalCategory& ic) {
  return right_projection(free_module(fa, ic), ic.span());
}

/// The projection f_A (x) M -> A composed with gamma: always a 2-cell f_A => f_A.
inline TwoCell base_component(const KleisliEndo& gamma) {
  const auto fm = free_module(gamma.base(), gamma.target());
  return TwoCell(gamma.base().span(), gamma.base().span(), compose(fm.proj_left(), gamma.map()));
}

/// L(gamma) = pi_M . gamma.
inline ConvElement L(const KleisliEndo& gamma) {
  return ConvElement(gamma.base(), gamma.target_ref(),
                     compose(module_projection(gamma.base(), gamma.target()), gamma.cell()));
}

/// gamma is presented by (id, L(gamma)).
inline bool is_simply_presented(const KleisliEndo& gamma) { return E(L(gamma)) == gamma; }

// ---------------------------------------------------------------------------
// The category End of Kleisli endomorphisms and the coreflector

/// A morphism (sigma, tau): alpha -> beta of End, for alpha over f_A and
/// beta over g_B: (tau (x) M) . alpha == beta . sigma.
struct EndMorphism {
  TwoCell sigma;
  TwoCell tau;

  friend bool operator==(const EndMorphism&, const EndMorphism&) = default;
};

inline bool is_end_morphism(const KleisliEndo& src, const KleisliEndo& dst, const EndMorphism& m) {
  const auto fa = src.base().span();
  const auto gb = dst.base().span();
  if (m.sigma.src() != fa || m.sigma.dst() != gb || m.tau.src() != fa || m.tau.dst() != gb) return false;
  const auto lhs = compose(tensor_cells(m.tau, TwoCell::identity(src.target().span())), src.cell());
  const auto rhs = compose(dst.cell(), m.sigma);
  return lhs == rhs;
}

inline EndMorphism compose(const EndMorphism& second, const EndMorphism& first) {
  return EndMorphism{compose(second.sigma, first.sigma), compose(second.tau, first.tau)};
}

struct Coreflection {
  KleisliEndo object;   // C(alpha) = <id, pi_M . alpha>
  EndMorphism counit;   // (id, pi_A . alpha): C(alpha) -> alpha
};

inline Coreflection coreflect(const KleisliEndo& alpha) {
  auto object = E(L(alpha));
  EndMorphism counit{TwoCell::identity(alpha.base().span()), base_component(alpha)};
  return Coreflection{std::move(object), std::move(counit)};
}

/// For (phi, psi): beta -> alpha with beta simply presented, the unique
/// (sigma, sigma): beta -> C(alpha) through which it factors has sigma = phi.
inline EndMorphism coreflection_factor(const EndMorphism& m) { return EndMorphism{m.sigma, m.sigma}; }

// ---------------------------------------------------------------------------
// Enumeration

/// Every 2-cell src => dst.
inline std::vector<TwoCell> two_cells(const Span& src, const Span& dst) {
  if (src.o() != dst.o()) throw Error(ErrorKind::BaseMismatch, "2-cells between spans over different bases");
  std::vector<std::vector<std::size_t>> candidates(src.apex().size());
  for (std::size_t x = 0; x < src.apex().size(); ++x) {
    for (std::size_t y = 0; y < dst.apex().size(); ++y) {
      if (dst.left()(y) == src.left()(x) && dst.right()(y) == src.right()(x)) candidates[x].push_back(y);
    }
  }
  require_within_cap(choice_count(candidates), "enumerating 2-cells");
  std::vector<TwoCell> out;
  for_each_choice(candidates, [&](const std::vector<std::size_t>& t) {
    out.emplace_back(src, dst, FinMap(src.apex(), dst.apex(), t));
  });
  return out;
}

inline std::vector<ConvElement> conv_elements(const SliceObject& fa, const InternalCategoryRef& ic) {
  detail::require_base(fa, *ic);
  std::vector<ConvElement> out;
  for (auto& cell : two_cells(fa.span(), ic->span())) out.emplace_back(fa, ic, std::move(cell));
  return out;
}

inline std::vector<KleisliEndo> kleisli_endos(const SliceObject& fa, const InternalCategoryRef& ic) {
  detail::require_base(fa, *ic);
  std::vector<KleisliEndo> out;
  const auto module = free_module(fa, *ic).span;
  for (auto& cell : two_cells(fa.span(), module)) out.emplace_back(fa, ic, std::move(cell), module);
  return out;
}

namespace detail {

/// Kleisli composition on raw tables of one free module f_A (x) M. The
/// search below composes many candidates; this avoids rebuilding tensors.
/// Cross-checked against kleisli_compose in the tests.
class ModuleTable {
 public:
  ModuleTable(const SliceObject& fa, const InternalCategory& ic) : msize_(ic.m.size()) {
    const auto fm = free_module(fa, ic);
    apex_ = fm.pullback.elems;
    index_.assign(fa.a().size() * msize_, npos);
    for (std::size_t i = 0; i < apex_.size(); ++i) index_[apex_[i].first * msize_ + apex_[i].second] = i;
    const auto mm = ic.composable_pairs();
    mu_.assign(msize_ * msize_, npos);
    for (std::size_t i = 0; i < mm.pullback.elems.size(); ++i) {
      const auto [x, y] = mm.pullback.elems[i];
      mu_[x * msize_ + y] = ic.mu(i);
    }
  }

  std::size_t apex_size() const noexcept { return apex_.size(); }

  std::vector<std::size_t> compose(const std::vector<std::size_t>& beta, const std::vector<std::size_t>& alpha) const {
    std::vector<std::size_t> out(alpha.size());
    for (std::size_t a = 0; a < alpha.size(); ++a) {
      const auto [a1, m1] = apex_[alpha[a]];
      const auto [a2, m2] = apex_[beta[a1]];
      out[a] = index_[a2 * msize_ + mu_[m2 * msize_ + m1]];
    }
    return out;
  }

 private:
  std::size_t msize_;
  std::vector<std::pair<std::size_t, std::size_t>> apex_;
  std::vector<std::size_t> index_;
  std::vector<std::size_t> mu_;
};

}  // namespace detail

/// Kleisli composition through the table path; same result as kleisli_compose.
inline KleisliEndo kleisli_compose_fast(const KleisliEndo& beta, const KleisliEndo& alpha) {
  if (alpha.base() != beta.base()) throw Error(ErrorKind::BaseMismatch, "Kleisli composition over different slices");
  detail::require_same_target(alpha.target_ref(), beta.target_ref());
  const detail::ModuleTable table(alpha.base(), alpha.target());
  return KleisliEndo(alpha.base(), alpha.target_ref(),
                     FinMap(alpha.map().dom(), alpha.map().cod(), table.compose(beta.map().table(), alpha.map().table())));
}

/// Brute-force search for a two-sided Kleisli inverse among all
/// endomorphisms of the same free module.
inline std::optional<KleisliEndo> kleisli_inverse_search(const KleisliEndo& gamma) {
  const detail::ModuleTable table(gamma.base(), gamma.target());
  const auto unit = kleisli_unit(gamma.base(), gamma.target_ref()).map().table();
  const auto& g = gamma.map().table();
  for (const auto& cand : kleisli_endos(gamma.base(), gamma.target_ref())) {
    const auto& h = cand.map().table();
    if (table.compose(h, g) == unit && table.compose(g, h) == unit) return cand;
  }
  return std::nullopt;
}

/// The candidate inverse E(iota . alpha) of E(alpha) in a groupoid.
inline ConvElement groupoid_inverse(const ConvElement& alpha, const FinMap& iota) {
  return ConvElement(alpha.base(), alpha.target_ref(), compose(iota, alpha.map()));
}

/// Free modules with at most this many elements are searched exhaustively.
inline constexpr std::size_t brute_force_module_limit = 64;

/// Two-sided Kleisli inverse of E(alpha): brute force on small free modules,
/// otherwise E(iota . alpha) verified by composing both ways. Without iota
/// only the brute-force route is available.
inline std::optional<KleisliEndo> kleisli_inverse(const ConvElement& alpha, const std::optional<FinMap>& iota) {
  const auto ea = E(alpha);
  if (free_module(alpha.base(), alpha.target()).span.apex().size() <= brute_force_module_limit || !iota) {
    return kleisli_inverse_search(ea);
  }
  auto cand = E(groupoid_inverse(alpha, *iota));
  const auto unit = kleisli_unit(alpha.base(), alpha.target_ref());
  if (kleisli_compose(cand, ea) == unit && kleisli_compose(ea, cand) == unit) return cand;
  return std::nullopt;
}

/// Adjunction check between E^ : Conv -> End and L^ = L . C : End -> Conv.
/// For each conv object alpha over f_A and End object beta over g_B, both
/// hom-sets are enumerated and (phi, psi) |-> phi is checked to be a
/// bijection Hom(E alpha, beta) -> Hom(alpha, L C beta).
inline Report verify_adjunction(const std::vector<ConvElement>& convs, const std::vector<KleisliEndo>& endos,
                                const std::optional<FinMap>& iota = std::nullopt) {
  Report r;
  std::string bad;
  std::size_t pairs = 0;
  for (const auto& alpha : convs) {
    const auto ea = E(alpha);
    for (const auto& beta : endos) {
      detail::require_same_target(alpha.target_ref(), beta.target_ref());
      const auto lb = L(coreflect(beta).object);
      const auto cells = two_cells(alpha.base().span(), beta.base().span());
      require_within_cap(static_cast<std::uint64_t>(cells.size()) * cells.size(), "End hom-set");

      std::vector<FinMap> end_side;
      for (const auto& phi : cells) {
        for (const auto& psi : cells) {
          if (is_end_morphism(ea, beta, EndMorphism{phi, psi})) end_side.push_back(phi.map());
        }
      }
      std::vector<FinMap> conv_side;
      for (const auto& phi : cells) {
        if (compose(lb.cell(), phi) == alpha.cell()) conv_side.push_back(phi.map());
      }
      auto sorted = end_side;
      std::sort(sorted.begin(), sorted.end());
      const bool injective = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
      std::sort(conv_side.begin(), conv_side.end());
      if (!injective || sorted != conv_side) {
        bad = "hom-sets of sizes " + std::to_string(end_side.size()) + " and " + std::to_string(conv_side.size()) +
              " do not correspond for " + alpha.map().to_string() + " and " + beta.map().to_string();
        break;
      }
      ++pairs;
    }
    if (!bad.empty()) break;
  }
  r.add("hom-set-bijection", bad.empty(), bad.empty() ? std::to_string(pairs) + " pairs" : bad);

  if (iota) {
    std::string nope;
    for (const auto& alpha : convs) {
      const auto ea = E(alpha);
      const auto inv = E(groupoid_inverse(alpha, *iota));
      const auto unit = kleisli_unit(alpha.base(), alpha.target_ref());
      if (kleisli_compose(inv, ea) != unit || kleisli_compose(ea, inv) != unit) {
        nope = "E(" + alpha.map().to_string() + ") is not a Kleisli automorphism";
        break;
      }
    }
    r.add("lands-in-automorphisms", nope.empty(), nope);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Toffoli and Feistel

/// (x, y) |-> (x, f(x) xor y) on Z_2^(m+n); state index is (x << n) | y.
inline std::vector<std::size_t> toffoli_extend(std::size_t m_bits, std::size_t n_bits,
                                               const std::vector<std::size_t>& f) {
  if (m_bits + n_bits >= 8 * sizeof(std::size_t) - 1) {
    throw Error(ErrorKind::MalformedTable, "too many bits");
  }
  const std::size_t rows = std::size_t{1} << m_bits;
  const std::size_t cols = std::size_t{1} << n_bits;
  if (f.size() != rows) {
    throw Error(ErrorKind::MalformedTable, "truth table has " + std::to_string(f.size()) + " rows, expected " +
                                               std::to_string(rows));
  }
  for (auto v : f) {
    if (v >= cols) throw Error(ErrorKind::MalformedTable, "truth table entry " + std::to_string(v) + " exceeds n bits");
  }
  require_within_cap(rows * cols, "Toffoli extension");
  std::vector<std::size_t> perm(rows * cols);
  for (std::size_t x = 0; x < rows; ++x) {
    for (std::size_t y = 0; y < cols; ++y) perm[(x << n_bits) | y] = (x << n_bits) | (f[x] ^ y);
  }
  return perm;
}

/// Iterated rounds (x, y) |-> (f_i(x) . y, x) over a finite group; state
/// index is x * |G| + y. Each round is the Toffoli-style extension of f_i
/// followed by swapping the halves.
class FeistelNetwork {
 public:
  FeistelNetwork(Group group, std::vector<std::vector<std::size_t>> round_functions)
      : group_(std::move(group)), rounds_(std::move(round_functions)) {
    for (std::size_t i = 0; i < rounds_.size(); ++i) {
      if (rounds_[i].size() != group_.order()) {
        throw Error(ErrorKind::KeyScheduleMismatch, "round " + std::to_string(i) + " table has " +
                                                        std::to_string(rounds_[i].size()) + " entries, expected " +
                                                        std::to_string(group_.order()));
      }
      for (auto v : rounds_[i]) {
        if (v >= group_.order()) {
          throw Error(ErrorKind::KeyScheduleMismatch, "round " + std::to_string(i) + " leaves the group");
        }
      }
    }
  }

  const Group& group() const noexcept { return group_; }
  std::size_t rounds() const noexcept { return rounds_.size(); }
  std::size_t state_count() const noexcept { return group_.order() * group_.order(); }

  std::size_t encrypt(std::size_t state) const {
    const auto n = group_.order();
    auto x = state / n, y = state % n;
    for (const auto& f : rounds_) {
      const auto u = group_.mul(f[x], y);
      y = x;
      x = u;
    }
    return x * n + y;
  }

  std::size_t decrypt(std::size_t state) const {
    const auto n = group_.order();
    auto u = state / n, v = state % n;
    for (auto it = rounds_.rbegin(); it != rounds_.rend(); ++it) {
      const auto x = v;
      const auto y = group_.mul(group_.inverse((*it)[x]), u);
      u = x;
      v = y;
    }
    return u * n + v;
  }

  std::vector<std::size_t> permutation() const {
    std::vector<std::size_t> p(state_count());
    for (std::size_t s = 0; s < p.size(); ++s) p[s] = encrypt(s);
    return p;
  }

 private:
  Group group_;
  std::vector<std::vector<std::size_t>> rounds_;
};

}  // namespace spanforge
