#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gysin/chainmap.hpp"

namespace gysin {

/// Chain complex with an increasing, bounded filtration given by a level
/// per generator. The differential may not increase the level; this is
/// validated over the ring at construction. Decreasing filtrations must be
/// re-indexed by the caller.
class FilteredComplex {
 public:
  FilteredComplex() = default;

  FilteredComplex(ChainComplex cx, std::map<int, std::vector<int>> levels)
      : cx_(std::move(cx)) {
    levels_.resize(cx_.empty() ? 0 : cx_.hi() - cx_.lo() + 1);
    for (int k = cx_.lo(); k <= cx_.hi(); ++k) {
      auto it = levels.find(k);
      if (it == levels.end()) {
        if (cx_.rank(k) != 0)
          throw InvalidFiltration("missing filtration levels at degree " +
                                  std::to_string(k));
        continue;
      }
      if (int(it->second.size()) != cx_.rank(k))
        throw InvalidFiltration("filtration level count mismatch at degree " +
                                std::to_string(k));
      levels_[k - cx_.lo()] = it->second;
    }
    for (int k = cx_.lo() + 1; k <= cx_.hi(); ++k) {
      IntMat d = cx_.diff(k);
      for (int r = 0; r < d.rows(); ++r)
        for (int c = 0; c < d.cols(); ++c)
          if (!cx_.ring().is_zero(d(r, c)) && level(k - 1, r) > level(k, c))
            throw InvalidFiltration(
                "differential increases filtration at degree " +
                std::to_string(k) + ", entry (" + std::to_string(r) + "," +
                std::to_string(c) + ")");
    }
    pmin_ = 0;
    pmax_ = -1;
    bool first = true;
    for (int k = cx_.lo(); k <= cx_.hi(); ++k)
      for (int i = 0; i < cx_.rank(k); ++i) {
        int l = level(k, i);
        if (first || l < pmin_) pmin_ = l;
        if (first || l > pmax_) pmax_ = l;
        first = false;
      }
  }

  const ChainComplex& complex() const { return cx_; }
  const Ring& ring() const { return cx_.ring(); }

  int level(int k, int idx) const { return levels_[k - cx_.lo()][idx]; }
  const std::vector<int>& levels(int k) const {
    return levels_[k - cx_.lo()];
  }
  int min_level() const { return pmin_; }
  int max_level() const { return pmax_; }

  /// Indices of the degree-k generators in filtration level <= p.
  std::vector<int> filt_indices(int k, int p) const {
    std::vector<int> idx;
    if (cx_.empty() || k < cx_.lo() || k > cx_.hi()) return idx;
    for (int i = 0; i < cx_.rank(k); ++i)
      if (level(k, i) <= p) idx.push_back(i);
    return idx;
  }

  bool operator==(const FilteredComplex& o) const {
    return cx_ == o.cx_ && levels_ == o.levels_;
  }

 private:
  ChainComplex cx_;
  std::vector<std::vector<int>> levels_;
  int pmin_ = 0, pmax_ = -1;
};

/// Filtration with every generator at its own degree (the tautological
/// filtration).
inline FilteredComplex degreewise_filtration(const ChainComplex& c) {
  std::map<int, std::vector<int>> lv;
  for (int k = c.lo(); k <= c.hi(); ++k)
    lv[k] = std::vector<int>(c.rank(k), k);
  return FilteredComplex(c, std::move(lv));
}

/// Minimal k with map(F_l src) inside F_{l+k} tgt, from the matrix entries;
/// 0 for maps that lower or preserve the filtration (finite data is always
/// bounded). The map need not be a chain map.
inline int filtered_order(const FilteredComplex& src,
                          const FilteredComplex& tgt, const ChainMap& K) {
  if (K.source() != src.complex() || K.target() != tgt.complex())
    throw BadParams("filtered_order: map endpoints do not match the filtered complexes");
  const Ring& R = K.ring();
  int order = 0;
  for (int k = src.complex().lo(); k <= src.complex().hi(); ++k) {
    IntMat m = K.mat(k);
    for (int r = 0; r < m.rows(); ++r)
      for (int c = 0; c < m.cols(); ++c)
        if (!R.is_zero(m(r, c))) {
          int jump = tgt.level(k + K.shift(), r) - src.level(k, c);
          if (jump > order) order = jump;
        }
  }
  return order;
}

}  // namespace gysin
