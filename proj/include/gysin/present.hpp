#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "gysin/abelian.hpp"
#include "gysin/lattice.hpp"

namespace gysin {

/// Presentation of the subquotient span(num)/span(den) of R^ambient, with
/// chosen generator representatives and a coordinate map. This is the
/// workhorse behind homology groups, spectral pages, and long exact
/// sequence entries: "the same group" always means "the same presentation",
/// so map comparisons are exact matrix identities.
///
/// Generators are ordered torsion-first (orders ascending, from the Smith
/// form) followed by the free generators. Over Q only free generators
/// survive and coordinates may be rational; over Z and Z/p coordinates are
/// integral, with torsion coordinates reduced into [0, d).
class Presentation {
 public:
  Presentation() = default;

  Presentation(const Ring& ring, int ambient, const IntMat& num,
               const IntMat& den)
      : ring_(ring), ambient_(ambient) {
    const Ring E = engine_ring();
    lin::HnfResult hb = lin::hnf_cols(E, num);
    std::vector<int> idx(hb.pivot_rows.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = int(i);
    basis_ = hb.H.cols_subset(idx);

    IntMat y;
    if (ring_.kind == RingKind::Rationals) {
      auto sol = lin::solve_rat(basis_, to_rat(den));
      if (!sol)
        throw NotASublattice(
            "subquotient: denominator is not contained in the span of the "
            "numerator");
      y = clear_denominators(*sol);
    } else {
      auto sol = lin::solve(E, basis_, den);
      if (!sol)
        throw NotASublattice(
            "subquotient: denominator is not contained in the span of the "
            "numerator");
      y = *sol;
    }

    lin::SnfResult s = lin::snf(E, y);
    u_ = std::move(s.U);
    const int k = basis_.cols();
    std::vector<Int> d(k, Int(0));
    {
      auto diag = s.S;
      int dm = std::min(diag.rows(), diag.cols());
      for (int i = 0; i < dm; ++i) d[i] = diag(i, i);
    }
    for (int i = 0; i < k; ++i) {
      bool keep = ring_.is_field() ? (d[i] == 0) : (d[i] != 1);
      if (keep) kept_.push_back(i);
    }
    // torsion-first ordering is what the ascending Smith chain delivers
    orders_.reserve(kept_.size());
    for (int i : kept_) orders_.push_back(d[i]);
    IntMat reps = basis_ * s.Uinv;
    gens_ = reps.cols_subset(kept_);
    if (E.is_modular()) gens_ = reduce(E, gens_);

    group_.free_rank = 0;
    for (const Int& o : orders_)
      if (o == 0) ++group_.free_rank;
      else if (!ring_.is_field()) group_.torsion.push_back(o);
  }

  /// Quotient by nothing: span(num) itself.
  static Presentation span(const Ring& ring, int ambient, const IntMat& num) {
    return Presentation(ring, ambient, num, IntMat(num.rows(), 0));
  }

  const Ring& ring() const { return ring_; }
  int ambient() const { return ambient_; }
  const FGAbelianGroup& group() const { return group_; }
  int ngens() const { return int(kept_.size()); }
  /// Ambient representatives of the generators, one column each.
  const IntMat& gens() const { return gens_; }
  /// Per-generator order: 0 for free, d >= 2 for torsion.
  const std::vector<Int>& orders() const { return orders_; }

  bool contains(const IntVec& v) const {
    IntMat b(ambient_, 1);
    for (int i = 0; i < ambient_; ++i) b(i, 0) = v[i];
    if (ring_.kind == RingKind::Rationals)
      return lin::solve_rat(basis_, to_rat(b)).has_value();
    return lin::solve(engine_ring(), basis_, b).has_value();
  }

  /// Coordinates of an ambient vector in the chosen generators, modulo the
  /// denominator. nullopt when v does not lie in span(num).
  std::optional<IntVec> coords(const IntVec& v) const {
    const Ring E = engine_ring();
    IntMat b(ambient_, 1);
    for (int i = 0; i < ambient_; ++i) b(i, 0) = v[i];
    if (ring_.kind == RingKind::Rationals) {
      auto rc = coords_rat(to_rat(v));
      if (!rc) return std::nullopt;
      IntVec out(rc->size());
      for (size_t i = 0; i < rc->size(); ++i) {
        if (!is_integer((*rc)[i])) return std::nullopt;
        out[i] = (*rc)[i].get_num();
      }
      return out;
    }
    auto y = lin::solve(E, basis_, b);
    if (!y) return std::nullopt;
    IntVec c = u_.apply(y->col(0));
    IntVec out(kept_.size());
    for (size_t i = 0; i < kept_.size(); ++i) {
      Int val = c[kept_[i]];
      if (E.is_modular()) val = E.reduce(val);
      else if (orders_[i] >= 2) val = mod_floor(val, orders_[i]);
      out[i] = val;
    }
    return out;
  }

  /// Rational coordinates (ring Q; also exact for integral rings when the
  /// input is integral).
  std::optional<RatVec> coords_rat(const RatVec& v) const {
    if (ring_.kind != RingKind::Rationals) {
      IntVec vi(v.size());
      for (size_t i = 0; i < v.size(); ++i) {
        if (!is_integer(v[i])) return std::nullopt;
        vi[i] = v[i].get_num();
      }
      auto c = coords(vi);
      if (!c) return std::nullopt;
      return to_rat(*c);
    }
    RatMat b(ambient_, 1);
    for (int i = 0; i < ambient_; ++i) b(i, 0) = v[i];
    auto y = lin::solve_rat(basis_, b);
    if (!y) return std::nullopt;
    RatMat c = to_rat(u_) * *y;
    RatVec out(kept_.size());
    for (size_t i = 0; i < kept_.size(); ++i) out[i] = c(kept_[i], 0);
    return out;
  }

 private:
  Ring engine_ring() const {
    return ring_.is_modular() ? ring_ : Ring::Z();
  }

  Ring ring_ = Ring::Z();
  int ambient_ = 0;
  IntMat basis_;  // canonical basis of span(num), one column per basis vector
  IntMat u_;      // Smith transform expressing the adapted generator change
  std::vector<int> kept_;
  std::vector<Int> orders_;
  IntMat gens_;
  FGAbelianGroup group_;
};

/// Isomorphism type of span(num)/span(den); NotASublattice when the
/// denominator does not lie in the numerator span.
inline FGAbelianGroup subquotient(const Ring& ring, const IntMat& num,
                                  const IntMat& den) {
  if (num.rows() != den.rows())
    throw BadParams("subquotient: ambient dimensions differ");
  return Presentation(ring, num.rows(), num, den).group();
}

}  // namespace gysin
