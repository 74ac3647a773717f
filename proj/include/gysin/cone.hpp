#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "gysin/exact.hpp"

namespace gysin {

/// Mapping cone of a chain map f : A -> T[s] (any shift s): the complex
/// T[s+1] (+) A with block differential [[-d_T[s], f], [0, d_A]]. The
/// T-part generators come first in every degree.
inline ChainComplex cone(const ChainMap& f) {
  f.validate_chain_condition();
  ChainMap g = f.as_plain();
  const ChainComplex& A = g.source();
  const ChainComplex& T = g.target();
  if (A.empty() && T.empty()) return ChainComplex(A.ring(), 0, {});
  int lo = std::min(T.lo() - 1, A.lo());
  int hi = std::max(T.hi() - 1, A.hi());
  std::vector<int> ranks(hi - lo + 1);
  for (int k = lo; k <= hi; ++k) ranks[k - lo] = T.rank(k + 1) + A.rank(k);
  std::map<int, IntMat> diffs;
  for (int k = lo + 1; k <= hi; ++k)
    diffs[k] = IntMat::block2x2(-T.diff(k + 1), g.mat(k),
                                IntMat(A.rank(k - 1), T.rank(k + 1)),
                                A.diff(k));
  std::map<int, std::vector<std::string>> labels;
  if (T.has_labels() && A.has_labels()) {
    for (int k = lo; k <= hi; ++k) {
      std::vector<std::string> ls = T.labels(k + 1);
      auto la = A.labels(k);
      ls.insert(ls.end(), la.begin(), la.end());
      labels[k] = std::move(ls);
    }
  }
  return ChainComplex(A.ring(), lo, std::move(ranks), std::move(diffs),
                      std::move(labels));
}

/// The short exact sequence 0 -> T[s+1] -> cone(f) -> A -> 0.
inline SESData cone_ses(const ChainMap& f) {
  ChainMap g = f.as_plain();
  ChainComplex C = cone(f);
  ChainComplex X = g.target().shift(1);
  const ChainComplex& A = g.source();
  std::map<int, IntMat> im, pm;
  for (int k = C.lo(); k <= C.hi(); ++k) {
    int tn = X.rank(k), an = A.rank(k);
    IntMat mi(tn + an, tn);
    mi.paste(0, 0, IntMat::identity(tn));
    im[k] = std::move(mi);
    IntMat mp(an, tn + an);
    mp.paste(0, tn, IntMat::identity(an));
    pm[k] = std::move(mp);
  }
  return make_ses(X, C, A, ChainMap(X, C, 0, std::move(im), false),
                  ChainMap(C, A, 0, std::move(pm), false));
}

/// Snake-lemma output: the long exact sequence of a short exact sequence
/// of complexes, with the connecting homomorphism computed by the zig-zag
/// (lift along p, apply the middle differential, pull back along i).
struct SnakeResult {
  LongExactSequence les;
  std::shared_ptr<Homology> HA, HB, HC;
  int lo = 0, hi = -1;
  std::map<int, RatMat> istar, pstar, delta;  // delta[k] : H_k(C) -> H_{k-1}(A)

  // shape-correct zero matrices outside the computed range
  RatMat istar_at(int k) const {
    auto it = istar.find(k);
    if (it != istar.end()) return it->second;
    return RatMat(ngens(HB->group(k)), ngens(HA->group(k)));
  }
  RatMat pstar_at(int k) const {
    auto it = pstar.find(k);
    if (it != pstar.end()) return it->second;
    return RatMat(ngens(HC->group(k)), ngens(HB->group(k)));
  }
  RatMat delta_at(int k) const {
    auto it = delta.find(k);
    if (it != delta.end()) return it->second;
    return RatMat(ngens(HA->group(k - 1)), ngens(HC->group(k)));
  }
};

inline SnakeResult snake_les(const SESData& s, const std::string& la = "A",
                             const std::string& lb = "B",
                             const std::string& lc = "C") {
  const Ring& R = s.ring();
  SnakeResult out;
  out.HA = std::make_shared<Homology>(s.A);
  out.HB = std::make_shared<Homology>(s.B);
  out.HC = std::make_shared<Homology>(s.C);
  out.lo = s.lo();
  out.hi = s.hi();
  for (int k = out.hi; k >= out.lo; --k) {
    out.istar[k] = to_rat(induced_on_homology(s.i, *out.HA, *out.HB, k));
    out.pstar[k] = to_rat(induced_on_homology(s.p, *out.HB, *out.HC, k));
    const Presentation& pc = out.HC->at(k);
    const Presentation& pa = out.HA->at(k - 1);
    RatMat d(pa.ngens(), pc.ngens());
    for (int j = 0; j < pc.ngens(); ++j) {
      RatMat z(s.C.rank(k), 1);
      for (int r = 0; r < s.C.rank(k); ++r) z(r, 0) = Rat(pc.gens()(r, j));
      auto x = ring_solve(R, s.p.mat(k), z);
      if (!x) throw Error("snake: cycle cannot be lifted along p");
      RatMat w = to_rat(s.B.diff(k)) * *x;
      auto y = ring_solve(R, s.i.mat(k - 1), w);
      if (!y) throw Error("snake: boundary of a lift is not in the image of i");
      RatVec yv(s.A.rank(k - 1));
      for (int r = 0; r < s.A.rank(k - 1); ++r) yv[r] = (*y)(r, 0);
      auto co = pa.coords_rat(yv);
      if (!co) throw Error("snake: connecting image is not a cycle");
      for (int r = 0; r < pa.ngens(); ++r) d(r, j) = (*co)[r];
    }
    out.delta[k] = std::move(d);
  }
  LongExactSequence& les = out.les;
  les.ring = R;
  for (int k = out.hi; k >= out.lo; --k) {
    les.entries.push_back({la, k, out.HA->group(k)});
    les.entries.push_back({lb, k, out.HB->group(k)});
    les.entries.push_back({lc, k, out.HC->group(k)});
    les.maps.push_back(out.istar[k]);
    les.map_names.push_back("i*");
    les.maps.push_back(out.pstar[k]);
    les.map_names.push_back("p*");
    if (k > out.lo) {
      les.maps.push_back(out.delta[k]);
      les.map_names.push_back("d");
    }
  }
  auto rep = check_exactness(les);
  if (!rep.exact) throw ExactnessFailure(rep.message);
  return out;
}

/// Morphism (f, g, h) between two short exact sequences of complexes, with
/// both squares commuting.
struct SESMorphism {
  SESData src, dst;
  ChainMap f, g, h;
};

inline SESMorphism make_ses_morphism(SESData src, SESData dst, ChainMap f,
                                     ChainMap g, ChainMap h) {
  if (f.source() != src.A || f.target() != dst.A || g.source() != src.B ||
      g.target() != dst.B || h.source() != src.C || h.target() != dst.C)
    throw NotAMorphism("vertical maps do not match the two sequences");
  if (f.shift() != 0 || g.shift() != 0 || h.shift() != 0)
    throw NotAMorphism("vertical maps must have degree 0");
  f.validate_chain_condition();
  g.validate_chain_condition();
  h.validate_chain_condition();
  const Ring& R = src.ring();
  for (int k = src.lo(); k <= src.hi(); ++k) {
    if (!equal(R, g.mat(k) * src.i.mat(k), dst.i.mat(k) * f.mat(k)))
      throw NotAMorphism("left square does not commute at degree " +
                         std::to_string(k));
    if (!equal(R, h.mat(k) * src.p.mat(k), dst.p.mat(k) * g.mat(k)))
      throw NotAMorphism("right square does not commute at degree " +
                         std::to_string(k));
  }
  return SESMorphism{std::move(src), std::move(dst), std::move(f),
                     std::move(g), std::move(h)};
}

struct SquareCheck {
  std::string name;
  int degree = 0;
  bool anti = false;  // marked square: anti-commutes instead of commuting
  bool ok = false;
};

/// Report for the grid of long exact sequences induced by a morphism of
/// short exact sequences: three rows, three cone columns, all squares
/// commuting except the marked one, which anti-commutes.
struct GridReport {
  bool ok = true;
  std::string first_failure;
  std::vector<SquareCheck> squares;
  LongExactSequence row_top, row_cones, row_base;
  LongExactSequence col_a, col_b, col_c;
};

inline GridReport grid_les(const SESMorphism& m) {
  const Ring& R = m.src.ring();
  // columns: cone sequences of the three vertical maps
  SnakeResult colA = snake_les(cone_ses(m.f), "A'[1]", "cone f", "A");
  SnakeResult colB = snake_les(cone_ses(m.g), "B'[1]", "cone g", "B");
  SnakeResult colC = snake_les(cone_ses(m.h), "C'[1]", "cone h", "C");
  // middle row: 0 -> cone f -> cone g -> cone h -> 0, blockwise
  ChainComplex Cf = cone(m.f), Cg = cone(m.g), Ch = cone(m.h);
  std::map<int, IntMat> mi, mp;
  for (int k = Cg.lo(); k <= Cg.hi(); ++k) {
    mi[k] = IntMat::block2x2(
        m.dst.i.mat(k + 1), IntMat(m.dst.B.rank(k + 1), m.src.A.rank(k)),
        IntMat(m.src.B.rank(k), m.dst.A.rank(k + 1)), m.src.i.mat(k));
    mp[k] = IntMat::block2x2(
        m.dst.p.mat(k + 1), IntMat(m.dst.C.rank(k + 1), m.src.B.rank(k)),
        IntMat(m.src.C.rank(k), m.dst.B.rank(k + 1)), m.src.p.mat(k));
  }
  SESData cone_row = make_ses(Cf, Cg, Ch, ChainMap(Cf, Cg, 0, mi, false),
                              ChainMap(Cg, Ch, 0, mp, false));
  SnakeResult rowM = snake_les(cone_row, "cone f", "cone g", "cone h");
  SnakeResult rowT = snake_les(shift_ses(m.dst, 1), "A'[1]", "B'[1]", "C'[1]");
  SnakeResult rowB = snake_les(m.src, "A", "B", "C");

  GridReport rep;
  rep.row_top = rowT.les;
  rep.row_cones = rowM.les;
  rep.row_base = rowB.les;
  rep.col_a = colA.les;
  rep.col_b = colB.les;
  rep.col_c = colC.les;

  int lo = std::min({rowT.lo, rowM.lo, rowB.lo});
  int hi = std::max({rowT.hi, rowM.hi, rowB.hi}) + 1;
  auto square = [&](const std::string& name, int k, bool anti,
                    const RatMat& path1, const RatMat& path2,
                    const FGAbelianGroup& target) {
    bool ok = anti ? maps_equal_mod(R, target, path1, -path2)
                   : maps_equal_mod(R, target, path1, path2);
    rep.squares.push_back({name, k, anti, ok});
    if (!ok && rep.ok) {
      rep.ok = false;
      rep.first_failure = std::string(anti ? "anti-commuting" : "commuting") +
                          " square '" + name + "' fails at degree " +
                          std::to_string(k);
    }
  };
  for (int k = hi; k >= lo; --k) {
    // top row -> cone row (inclusions)
    square("i(B') o top.i* = cones.i* o i(A')", k, false,
           colB.istar_at(k) * rowT.istar_at(k),
           rowM.istar_at(k) * colA.istar_at(k), rowM.HB->group(k));
    square("i(C') o top.p* = cones.p* o i(B')", k, false,
           colC.istar_at(k) * rowT.pstar_at(k),
           rowM.pstar_at(k) * colB.istar_at(k), rowM.HC->group(k));
    square("i(A') o top.d = cones.d o i(C')", k, false,
           colA.istar_at(k - 1) * rowT.delta_at(k),
           rowM.delta_at(k) * colC.istar_at(k), rowM.HA->group(k - 1));
    // cone row -> base row (projections)
    square("p(B) o cones.i* = base.i* o p(A)", k, false,
           colB.pstar_at(k) * rowM.istar_at(k),
           rowB.istar_at(k) * colA.pstar_at(k), rowB.HB->group(k));
    square("p(C) o cones.p* = base.p* o p(B)", k, false,
           colC.pstar_at(k) * rowM.pstar_at(k),
           rowB.pstar_at(k) * colB.pstar_at(k), rowB.HC->group(k));
    square("p(A) o cones.d = base.d o p(C)", k, false,
           colA.pstar_at(k - 1) * rowM.delta_at(k),
           rowB.delta_at(k) * colC.pstar_at(k), rowB.HA->group(k - 1));
    // base row -> shifted top row (connecting maps of the columns = the
    // induced maps f*, g*, h*)
    square("d(B) o base.i* = top.i*[1] o d(A)", k, false,
           colB.delta_at(k) * rowB.istar_at(k),
           rowT.istar_at(k - 1) * colA.delta_at(k), rowT.HB->group(k - 1));
    square("d(C) o base.p* = top.p*[1] o d(B)", k, false,
           colC.delta_at(k) * rowB.pstar_at(k),
           rowT.pstar_at(k - 1) * colB.delta_at(k), rowT.HC->group(k - 1));
    // the marked square anti-commutes
    square("d(A) o base.d + top.d[1] o d(C) = 0", k, true,
           colA.delta_at(k - 1) * rowB.delta_at(k),
           rowT.delta_at(k - 1) * colC.delta_at(k), rowT.HA->group(k - 2));
  }
  return rep;
}

}  // namespace gysin
