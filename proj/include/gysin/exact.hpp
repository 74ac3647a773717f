#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gysin/chainmap.hpp"

namespace gysin {

/// Per-generator orders of a group, in presentation order (torsion
/// ascending, then free generators as 0).
inline std::vector<Int> generator_orders(const FGAbelianGroup& g) {
  std::vector<Int> o = g.torsion;
  o.resize(g.torsion.size() + size_t(g.free_rank), Int(0));
  return o;
}

inline int ngens(const FGAbelianGroup& g) {
  return g.free_rank + int(g.torsion.size());
}

/// Equality of two maps into a presented group, modulo the target
/// relations (entrywise congruence mod the target generator order).
inline bool maps_equal_mod(const Ring& R, const FGAbelianGroup& target,
                           const RatMat& a, const RatMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  std::vector<Int> ord = generator_orders(target);
  if (int(ord.size()) != a.rows()) return false;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      Rat d = a(i, j) - b(i, j);
      if (R.kind == RingKind::Rationals) {
        if (d != 0) return false;
        continue;
      }
      if (!is_integer(d)) return false;
      Int di = d.get_num();
      if (R.is_modular()) {
        if (!divides(R.p, di)) return false;
      } else if (ord[i] >= 2) {
        if (!divides(ord[i], di)) return false;
      } else {
        if (di != 0) return false;
      }
    }
  return true;
}

/// Entrywise reduction of a composed matrix into canonical coordinates
/// (torsion rows into [0, order)).
inline IntMat reduce_mod_orders(IntMat m, const std::vector<Int>& orders) {
  for (int i = 0; i < m.rows(); ++i)
    if (orders[i] >= 2)
      for (int j = 0; j < m.cols(); ++j)
        m(i, j) = mod_floor(m(i, j), orders[i]);
  return m;
}

/// One slot of a long exact sequence: a labeled graded group.
struct LESEntry {
  std::string label;
  int degree = 0;
  FGAbelianGroup group;
};

/// Long exact sequence as checkable data: groups plus the maps between
/// consecutive entries, written on the chosen homology generators. The
/// sequence is bounded: entries beyond either end are zero.
struct LongExactSequence {
  Ring ring = Ring::Z();
  std::vector<LESEntry> entries;
  std::vector<RatMat> maps;  // maps[i] : entries[i] -> entries[i+1]
  std::vector<std::string> map_names;
  std::string note;

  int find(const std::string& label, int degree) const {
    for (size_t i = 0; i < entries.size(); ++i)
      if (entries[i].label == label && entries[i].degree == degree)
        return int(i);
    return -1;
  }
};

struct ExactnessReport {
  bool exact = true;
  int failing_slot = -1;
  std::string message;
};

namespace detail {

inline IntMat rat_to_int_or_throw(const RatMat& m, const char* where) {
  IntMat r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      if (!is_integer(m(i, j)))
        throw Error(std::string(where) + ": non-integral entry over Z");
      r(i, j) = m(i, j).get_num();
    }
  return r;
}

// columns spanning the relation lattice of a presented group inside Z^n
inline IntMat relation_columns(const FGAbelianGroup& g) {
  std::vector<Int> ord = generator_orders(g);
  int n = int(ord.size());
  int t = int(g.torsion.size());
  IntMat L(n, t);
  for (int i = 0; i < t; ++i) L(i, i) = ord[i];
  return L;
}

inline int rank_of_rat(const RatMat& m) {
  return lin::rank(Ring::Z(), clear_denominators(m));
}

}  // namespace detail

/// Exactness of the whole sequence, im = ker at every slot. Over Z this is
/// a lattice equality in the presented groups; over a field it reduces to
/// zero composites plus a rank count.
inline ExactnessReport check_exactness(const LongExactSequence& les) {
  const Ring& R = les.ring;
  const int n = int(les.entries.size());
  auto fail = [&](int slot, const std::string& why) {
    return ExactnessReport{false, slot,
                           "exactness fails at slot " + std::to_string(slot) +
                               " (" + les.entries[slot].label + ", degree " +
                               std::to_string(les.entries[slot].degree) +
                               "): " + why};
  };
  // well-definedness over Z: each map must send the source relations into
  // the target relations
  if (R == Ring::Z()) {
    for (int i = 0; i + 1 < n; ++i) {
      std::vector<Int> os = generator_orders(les.entries[i].group);
      std::vector<Int> ot = generator_orders(les.entries[i + 1].group);
      const RatMat& m = les.maps[i];
      for (int j = 0; j < int(os.size()); ++j) {
        if (os[j] < 2) continue;
        for (int r = 0; r < int(ot.size()); ++r) {
          Rat v = m(r, j) * Rat(os[j]);
          bool ok = is_integer(v) && (ot[r] >= 2 ? divides(ot[r], v.get_num())
                                                 : v == 0);
          if (!ok)
            return fail(i, "map is not well-defined on torsion generators");
        }
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    const FGAbelianGroup& G = les.entries[i].group;
    int gn = ngens(G);
    RatMat in = (i == 0) ? RatMat(gn, 0) : les.maps[i - 1];
    RatMat out = (i + 1 == n) ? RatMat(0, gn) : les.maps[i];
    if (in.rows() != gn || out.cols() != gn)
      return fail(i, "map shape mismatch");
    if (R.is_field()) {
      if (in.cols() > 0 && out.rows() > 0) {
        RatMat comp = out * in;
        bool zero = true;
        for (int r = 0; r < comp.rows() && zero; ++r)
          for (int c = 0; c < comp.cols(); ++c)
            if (R.is_modular()
                    ? !divides(R.p, comp(r, c).get_num()) ||
                          comp(r, c).get_den() != 1
                    : comp(r, c) != 0) {
              zero = false;
              break;
            }
        if (!zero) return fail(i, "composite of consecutive maps is nonzero");
      }
      int rk_in, rk_out;
      if (R.is_modular()) {
        rk_in = lin::rank(R, detail::rat_to_int_or_throw(in, "exactness"));
        rk_out = lin::rank(R, detail::rat_to_int_or_throw(out, "exactness"));
      } else {
        rk_in = detail::rank_of_rat(in);
        rk_out = detail::rank_of_rat(out);
      }
      if (rk_in + rk_out != gn)
        return fail(i, "rank(im) + rank(next map) != dim");
      continue;
    }
    // over Z: image and kernel as lattices inside the presented group
    IntMat min = detail::rat_to_int_or_throw(in, "exactness");
    IntMat mout = detail::rat_to_int_or_throw(out, "exactness");
    IntMat lam = detail::relation_columns(G);
    IntMat lam_next = (i + 1 == n)
                          ? IntMat(0, 0)
                          : detail::relation_columns(les.entries[i + 1].group);
    IntMat im = lin::image(Ring::Z(), IntMat::hstack(min, lam));
    IntMat stacked = IntMat::hstack(mout, lam_next);
    IntMat kn = lin::kernel(Ring::Z(), stacked);
    std::vector<int> top(gn);
    for (int r = 0; r < gn; ++r) top[r] = r;
    IntMat ker = lin::image(Ring::Z(), kn.rows_subset(top));
    if (im != ker) return fail(i, "im != ker as lattices");
  }
  return ExactnessReport{};
}

/// Homology ker(mout)/im(min) at a presented group, as an abstract group.
/// min : Gin -> G and mout : G -> Gout are matrices on generators.
inline FGAbelianGroup group_homology(const Ring& R, const FGAbelianGroup& G,
                                     const FGAbelianGroup& Gout,
                                     const IntMat& min, const IntMat& mout) {
  const int gn = ngens(G);
  if (R == Ring::Z()) {
    IntMat lam = detail::relation_columns(G);
    IntMat lam_out = detail::relation_columns(Gout);
    IntMat kn = lin::kernel(Ring::Z(), IntMat::hstack(mout, lam_out));
    std::vector<int> top(gn);
    for (int r = 0; r < gn; ++r) top[r] = r;
    IntMat ker = lin::image(Ring::Z(), kn.rows_subset(top));
    IntMat im = IntMat::hstack(min, lam);
    return subquotient(R, ker, im);
  }
  const Ring E = R.is_modular() ? R : Ring::Z();
  return subquotient(R, lin::kernel(E, mout), min);
}

/// Short exact sequence of complexes 0 -> A -i-> B -p-> C -> 0; the factory
/// verifies injectivity, surjectivity, the vanishing composite, and
/// ker p = im i in every degree over the ring.
struct SESData {
  ChainComplex A, B, C;
  ChainMap i, p;

  int lo() const { return std::min({A.lo(), B.lo(), C.lo()}); }
  int hi() const { return std::max({A.hi(), B.hi(), C.hi()}); }
  const Ring& ring() const { return B.ring(); }
};

inline SESData make_ses(ChainComplex A, ChainComplex B, ChainComplex C,
                        ChainMap i, ChainMap p) {
  require_same_ring(A.ring(), B.ring(), "short exact sequence");
  require_same_ring(B.ring(), C.ring(), "short exact sequence");
  if (i.shift() != 0 || p.shift() != 0)
    throw ExactnessFailure("short exact sequence maps must have degree 0");
  if (i.source() != A || i.target() != B || p.source() != B || p.target() != C)
    throw ExactnessFailure("short exact sequence maps do not match the complexes");
  i.validate_chain_condition();
  p.validate_chain_condition();
  const Ring& R = B.ring();
  const Ring E = R.is_modular() ? R : Ring::Z();
  for (int k = std::min({A.lo(), B.lo(), C.lo()});
       k <= std::max({A.hi(), B.hi(), C.hi()}); ++k) {
    if (!is_zero(R, p.mat(k) * i.mat(k)))
      throw ExactnessFailure("p o i != 0 at degree " + std::to_string(k));
    if (lin::kernel(E, i.mat(k)).cols() != 0)
      throw ExactnessFailure("i is not injective at degree " +
                             std::to_string(k));
    if (R == Ring::Z()) {
      if (!subquotient(R, IntMat::identity(C.rank(k)), p.mat(k)).is_trivial())
        throw ExactnessFailure("p is not surjective at degree " +
                               std::to_string(k));
      if (!lin::lattice_equal(E, lin::kernel(E, p.mat(k)), i.mat(k)))
        throw ExactnessFailure("ker p != im i at degree " + std::to_string(k));
    } else {
      if (lin::rank(E, p.mat(k)) != C.rank(k))
        throw ExactnessFailure("p is not surjective at degree " +
                               std::to_string(k));
      if (lin::rank(E, i.mat(k)) + lin::rank(E, p.mat(k)) != B.rank(k))
        throw ExactnessFailure("ker p != im i at degree " + std::to_string(k));
    }
  }
  return SESData{std::move(A), std::move(B), std::move(C), std::move(i),
                 std::move(p)};
}

inline SESData shift_ses(const SESData& s, int k) {
  ChainComplex A = s.A.shift(k), B = s.B.shift(k), C = s.C.shift(k);
  std::map<int, IntMat> im, pm;
  for (int d = A.lo(); d <= A.hi(); ++d) im[d] = s.i.mat(d + k);
  for (int d = B.lo(); d <= B.hi(); ++d) pm[d] = s.p.mat(d + k);
  return SESData{A, B, C, ChainMap(A, B, 0, std::move(im), false),
                 ChainMap(B, C, 0, std::move(pm), false)};
}

/// Solve A x = b over the ring; rational solutions over Q, integral
/// otherwise.
inline std::optional<RatMat> ring_solve(const Ring& R, const IntMat& A,
                                        const RatMat& B) {
  if (R.kind == RingKind::Rationals) return lin::solve_rat(A, B);
  IntMat bi(B.rows(), B.cols());
  for (int i = 0; i < B.rows(); ++i)
    for (int j = 0; j < B.cols(); ++j) {
      if (!is_integer(B(i, j))) return std::nullopt;
      bi(i, j) = B(i, j).get_num();
    }
  const Ring E = R.is_modular() ? R : Ring::Z();
  auto x = lin::solve(E, A, bi);
  if (!x) return std::nullopt;
  return to_rat(*x);
}

}  // namespace gysin
