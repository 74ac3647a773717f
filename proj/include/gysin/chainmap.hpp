#pragma once

#include <map>
#include <string>
#include <utility>

#include "gysin/complex.hpp"

namespace gysin {

/// Graded map f : C_k -> T_{k+shift}. The chain condition is taken in the
/// shifted target: m(k-1) d_src(k) = (-1)^shift d_tgt(k+shift) m(k).
/// Construct with validate=false for maps that are not chain maps
/// (homotopies, arbitrary graded maps fed to the filtration-order check).
class ChainMap {
 public:
  ChainMap() = default;

  ChainMap(ChainComplex source, ChainComplex target, int shift,
           std::map<int, IntMat> mats = {}, bool validate = true)
      : src_(std::move(source)), tgt_(std::move(target)), shift_(shift) {
    require_same_ring(src_.ring(), tgt_.ring(), "chain map");
    mats_.assign(src_.empty() ? 0 : src_.hi() - src_.lo() + 1, IntMat());
    for (int k = src_.lo(); k <= src_.hi(); ++k)
      mats_[k - src_.lo()] = IntMat(tgt_.rank(k + shift_), src_.rank(k));
    for (auto& [k, m] : mats) {
      if (k < src_.lo() || k > src_.hi()) {
        if (!m.is_zero())
          throw InvalidChainMap("matrix outside source degree range");
        continue;
      }
      if (m.rows() != tgt_.rank(k + shift_) || m.cols() != src_.rank(k))
        throw InvalidChainMap("matrix shape mismatch at degree " +
                              std::to_string(k));
      mats_[k - src_.lo()] = m;
    }
    if (validate) validate_chain_condition();
  }

  static ChainMap identity(const ChainComplex& c) {
    std::map<int, IntMat> mats;
    for (int k = c.lo(); k <= c.hi(); ++k)
      mats[k] = IntMat::identity(c.rank(k));
    return ChainMap(c, c, 0, std::move(mats));
  }

  static ChainMap zero(const ChainComplex& src, const ChainComplex& tgt,
                       int shift = 0) {
    return ChainMap(src, tgt, shift);
  }

  const ChainComplex& source() const { return src_; }
  const ChainComplex& target() const { return tgt_; }
  int shift() const { return shift_; }
  const Ring& ring() const { return src_.ring(); }

  IntMat mat(int k) const {
    if (src_.empty() || k < src_.lo() || k > src_.hi())
      return IntMat(tgt_.rank(k + shift_), src_.rank(k));
    return mats_[k - src_.lo()];
  }

  bool is_chain_map() const {
    for (int k = src_.lo(); k <= src_.hi() + 1; ++k) {
      IntMat lhs = mat(k - 1) * src_.diff(k);
      IntMat rhs = tgt_.diff(k + shift_) * mat(k);
      if (shift_ % 2 != 0) rhs = -rhs;
      if (!equal(ring(), lhs, rhs)) return false;
    }
    return true;
  }

  void validate_chain_condition() const {
    for (int k = src_.lo(); k <= src_.hi() + 1; ++k) {
      IntMat lhs = mat(k - 1) * src_.diff(k);
      IntMat rhs = tgt_.diff(k + shift_) * mat(k);
      if (shift_ % 2 != 0) rhs = -rhs;
      if (!equal(ring(), lhs, rhs))
        throw InvalidChainMap("chain condition fails at degree " +
                              std::to_string(k));
    }
  }

  /// Same map viewed as a shift-0 chain map into the shifted target:
  /// shift(target, s) in degree k is target_{k+s} with differential scaled
  /// by (-1)^s, matching the chain condition above.
  ChainMap as_plain() const {
    if (shift_ == 0) return *this;
    std::map<int, IntMat> mats;
    for (int k = src_.lo(); k <= src_.hi(); ++k) mats[k] = mat(k);
    return ChainMap(src_, tgt_.shift(shift_), 0, std::move(mats), false);
  }

  ChainMap compose(const ChainMap& inner) const {  // (*this) after inner
    require_same_ring(ring(), inner.ring(), "compose");
    if (inner.tgt_ != src_)
      throw InvalidChainMap("compose: inner target differs from outer source");
    std::map<int, IntMat> mats;
    for (int k = inner.src_.lo(); k <= inner.src_.hi(); ++k)
      mats[k] = mat(k + inner.shift_) * inner.mat(k);
    return ChainMap(inner.src_, tgt_, shift_ + inner.shift_, std::move(mats),
                    false);
  }

  ChainMap operator+(const ChainMap& o) const {
    std::map<int, IntMat> mats;
    for (int k = src_.lo(); k <= src_.hi(); ++k) mats[k] = mat(k) + o.mat(k);
    return ChainMap(src_, tgt_, shift_, std::move(mats), false);
  }
  ChainMap operator-(const ChainMap& o) const {
    std::map<int, IntMat> mats;
    for (int k = src_.lo(); k <= src_.hi(); ++k) mats[k] = mat(k) - o.mat(k);
    return ChainMap(src_, tgt_, shift_, std::move(mats), false);
  }

  bool operator==(const ChainMap& o) const {
    return src_ == o.src_ && tgt_ == o.tgt_ && shift_ == o.shift_ &&
           mats_ == o.mats_;
  }

 private:
  ChainComplex src_, tgt_;
  int shift_ = 0;
  std::vector<IntMat> mats_;
};

/// Matrix of the map induced on homology, H_k(src) -> H_{k+shift}(tgt), in
/// the canonical generators of the two presentations. Integral for every
/// ring: over Q the generators come from saturated integer cycle lattices.
inline IntMat induced_on_homology(const ChainMap& f, const Homology& src,
                                  const Homology& tgt, int k) {
  const Presentation& ps = src.at(k);
  const Presentation& pt = tgt.at(k + f.shift());
  IntMat out(pt.ngens(), ps.ngens());
  IntMat m = f.mat(k);
  for (int j = 0; j < ps.ngens(); ++j) {
    IntVec img = m.apply(ps.gens().col(j));
    auto co = pt.coords(img);
    if (!co)
      throw Error("induced_on_homology: image of a cycle is not a cycle");
    for (int i = 0; i < pt.ngens(); ++i) out(i, j) = (*co)[i];
  }
  return out;
}

}  // namespace gysin
