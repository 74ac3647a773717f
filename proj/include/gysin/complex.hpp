#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "gysin/present.hpp"

namespace gysin {

/// Finitely generated graded chain complex with a degree -1 differential,
/// over Z, Q, or Z/p. Matrices are stored exactly as given; d*d = 0 is
/// validated over the ring at construction and everything downstream
/// assumes it. Generator labels are carried verbatim and never affect the
/// algebra.
class ChainComplex {
 public:
  ChainComplex() : ring_(Ring::Z()) {}

  /// ranks[i] is the rank in degree lo+i; diffs[k] is the matrix of
  /// d_k : C_k -> C_{k-1}, of shape rank(k-1) x rank(k). Missing diffs are
  /// zero. An empty ranks vector is the legal empty complex.
  ChainComplex(Ring ring, int lo, std::vector<int> ranks,
               std::map<int, IntMat> diffs = {},
               std::map<int, std::vector<std::string>> labels = {})
      : ring_(std::move(ring)), lo_(lo), ranks_(std::move(ranks)) {
    for (int r : ranks_)
      if (r < 0) throw InvalidComplex("negative rank");
    diffs_.resize(ranks_.size());
    for (size_t i = 0; i < ranks_.size(); ++i)
      diffs_[i] = IntMat(rank(lo_ + int(i) - 1), ranks_[i]);
    for (auto& [k, m] : diffs) {
      if (k < lo_ || k > hi()) {
        if (!m.is_zero())
          throw InvalidComplex("differential outside degree range at degree " +
                               std::to_string(k));
        continue;
      }
      if (m.rows() != rank(k - 1) || m.cols() != rank(k))
        throw InvalidComplex("differential shape mismatch at degree " +
                             std::to_string(k));
      diffs_[k - lo_] = m;
    }
    if (!labels.empty()) {
      labels_.resize(ranks_.size());
      for (auto& [k, ls] : labels) {
        if (k < lo_ || k > hi())
          throw InvalidComplex("labels outside degree range");
        if (int(ls.size()) != rank(k))
          throw InvalidComplex("label count mismatch at degree " +
                               std::to_string(k));
        labels_[k - lo_] = ls;
      }
    }
    for (int k = lo_; k <= hi(); ++k) {
      if (rank(k) == 0 || rank(k - 2) == 0) continue;
      if (!is_zero(ring_, diff(k - 1) * diff(k)))
        throw InvalidComplex("d*d != 0 at degree " + std::to_string(k));
    }
    // canonical form: drop zero-rank degrees at both ends so that equal
    // complexes serialize identically
    size_t drop_front = 0;
    while (drop_front < ranks_.size() && ranks_[drop_front] == 0) ++drop_front;
    if (drop_front == ranks_.size()) {
      lo_ = 0;
      ranks_.clear();
      diffs_.clear();
      labels_.clear();
      return;
    }
    size_t keep_back = ranks_.size();
    while (keep_back > 0 && ranks_[keep_back - 1] == 0) --keep_back;
    if (drop_front > 0 || keep_back < ranks_.size()) {
      ranks_ = std::vector<int>(ranks_.begin() + drop_front,
                                ranks_.begin() + keep_back);
      diffs_ = std::vector<IntMat>(diffs_.begin() + drop_front,
                                   diffs_.begin() + keep_back);
      if (!labels_.empty())
        labels_ = std::vector<std::vector<std::string>>(
            labels_.begin() + drop_front, labels_.begin() + keep_back);
      lo_ += int(drop_front);
      // the first stored differential leaves a zero-rank degree
      if (!diffs_.empty()) diffs_[0] = IntMat(0, ranks_[0]);
    }
  }

  const Ring& ring() const { return ring_; }
  bool empty() const { return ranks_.empty(); }
  int lo() const { return empty() ? 0 : lo_; }
  int hi() const { return empty() ? -1 : lo_ + int(ranks_.size()) - 1; }

  int rank(int k) const {
    if (empty() || k < lo_ || k > hi()) return 0;
    return ranks_[k - lo_];
  }

  /// Matrix of d_k : C_k -> C_{k-1} (zero-shaped outside the range).
  IntMat diff(int k) const {
    if (empty() || k < lo_ || k > hi()) return IntMat(rank(k - 1), rank(k));
    return diffs_[k - lo_];
  }

  bool has_labels() const { return !labels_.empty(); }
  std::vector<std::string> labels(int k) const {
    if (labels_.empty() || k < lo_ || k > hi())
      return std::vector<std::string>(rank(k));
    return labels_[k - lo_];
  }

  bool operator==(const ChainComplex& o) const {
    return ring_ == o.ring_ && (empty() ? o.empty() : lo_ == o.lo_) &&
           ranks_ == o.ranks_ && diffs_ == o.diffs_ && labels_ == o.labels_;
  }
  bool operator!=(const ChainComplex& o) const { return !(*this == o); }

  /// Degree shift: shift(C,k) in degree n is C in degree n+k, with the
  /// differential scaled by (-1)^k.
  ChainComplex shift(int k) const {
    ChainComplex r = *this;
    if (empty()) return r;
    r.lo_ -= k;
    if (k % 2 != 0)
      for (IntMat& d : r.diffs_) d = -d;
    return r;
  }

 private:
  Ring ring_;
  int lo_ = 0;
  std::vector<int> ranks_;
  std::vector<IntMat> diffs_;
  std::vector<std::vector<std::string>> labels_;
};

inline ChainComplex shift(const ChainComplex& c, int k) { return c.shift(k); }

/// Index of the tensor generator x_a (x) y_b inside the degree block; the
/// blocks are ordered by ascending first-factor degree.
struct TensorIndexer {
  const ChainComplex* C;
  const ChainComplex* D;
  int index(int n, int i, int a, int b) const {
    int off = 0;
    for (int ii = C->lo(); ii < i; ++ii) off += C->rank(ii) * D->rank(n - ii);
    return off + a * D->rank(n - i) + b;
  }
};

/// Tensor product over the common ring, with the sign rule
/// d(x (x) y) = dx (x) y + (-1)^{|x|} x (x) dy.
inline ChainComplex tensor(const ChainComplex& C, const ChainComplex& D) {
  require_same_ring(C.ring(), D.ring(), "tensor");
  if (C.empty() || D.empty()) return ChainComplex(C.ring(), 0, {});
  int lo = C.lo() + D.lo(), hi = C.hi() + D.hi();
  std::vector<int> ranks(hi - lo + 1, 0);
  for (int n = lo; n <= hi; ++n)
    for (int i = C.lo(); i <= C.hi(); ++i)
      ranks[n - lo] += C.rank(i) * D.rank(n - i);
  TensorIndexer ix{&C, &D};
  std::map<int, IntMat> diffs;
  for (int n = lo + 1; n <= hi; ++n) {
    IntMat d(ranks[n - 1 - lo], ranks[n - lo]);
    for (int i = C.lo(); i <= C.hi(); ++i) {
      int j = n - i;
      if (C.rank(i) == 0 || D.rank(j) == 0) continue;
      IntMat dc = C.diff(i), dd = D.diff(j);
      for (int a = 0; a < C.rank(i); ++a)
        for (int b = 0; b < D.rank(j); ++b) {
          int col = ix.index(n, i, a, b);
          for (int a2 = 0; a2 < C.rank(i - 1); ++a2)
            if (dc(a2, a) != 0)
              d(ix.index(n - 1, i - 1, a2, b), col) += dc(a2, a);
          Int sign = (i % 2 == 0) ? 1 : -1;
          for (int b2 = 0; b2 < D.rank(j - 1); ++b2)
            if (dd(b2, b) != 0)
              d(ix.index(n - 1, i, a, b2), col) += sign * dd(b2, b);
        }
    }
    diffs[n] = std::move(d);
  }
  std::map<int, std::vector<std::string>> labels;
  if (C.has_labels() && D.has_labels()) {
    for (int n = lo; n <= hi; ++n) {
      std::vector<std::string> ls(ranks[n - lo]);
      for (int i = C.lo(); i <= C.hi(); ++i) {
        auto lc = C.labels(i), ld = D.labels(n - i);
        for (int a = 0; a < C.rank(i); ++a)
          for (int b = 0; b < D.rank(n - i); ++b)
            ls[ix.index(n, i, a, b)] = lc[a] + "*" + ld[b];
      }
      labels[n] = std::move(ls);
    }
  }
  return ChainComplex(C.ring(), lo, std::move(ranks), std::move(diffs),
                      std::move(labels));
}

/// Homology of a complex with cached canonical presentations per degree.
/// Presentations are deterministic, so independently computed Homology
/// objects for equal complexes agree generator-by-generator.
class Homology {
 public:
  explicit Homology(ChainComplex c) : c_(std::move(c)) {}

  const ChainComplex& complex() const { return c_; }

  const Presentation& at(int k) const {
    auto it = cache_.find(k);
    if (it != cache_.end()) return it->second;
    Ring E = c_.ring().is_modular() ? c_.ring() : Ring::Z();
    IntMat ker = lin::kernel(E, c_.diff(k));
    IntMat im = lin::image(E, c_.diff(k + 1));
    auto [pos, _] = cache_.emplace(
        k, Presentation(c_.ring(), c_.rank(k), ker, im));
    return pos->second;
  }

  FGAbelianGroup group(int k) const { return at(k).group(); }

 private:
  ChainComplex c_;
  mutable std::map<int, Presentation> cache_;
};

inline FGAbelianGroup homology(const ChainComplex& c, int k) {
  return Homology(c).group(k);
}

}  // namespace gysin
