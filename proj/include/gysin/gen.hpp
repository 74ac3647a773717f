#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gysin/equivariant.hpp"
#include "gysin/prng.hpp"

// Deterministic generators for the fixed corpus and seeded random
// instances. Random complexes are assembled from elementary pieces (single
// generators and two-term multiplication pieces), then scrambled by random
// basis changes applied simultaneously to every registered matrix; a move
// that would push an entry past the bound is undone, so entries stay small
// and d*d = 0 holds by construction. The draw order is part of the
// reproducibility contract (see the format documentation).

namespace gysin::gen {

inline ChainComplex point(const Ring& R) {
  return ChainComplex(R, 0, {1}, {}, {{0, {"pt"}}});
}

inline ChainComplex sphere(const Ring& R, int n) {
  if (n < 0) throw BadParams("sphere: dimension must be >= 0");
  if (n == 0) return ChainComplex(R, 0, {2}, {}, {{0, {"pt+", "pt-"}}});
  std::vector<int> ranks(n + 1, 0);
  ranks[0] = ranks[n] = 1;
  return ChainComplex(R, 0, std::move(ranks), {},
                      {{0, {"v"}}, {n, {"cell" + std::to_string(n)}}});
}

inline ChainComplex rp2(const Ring& R) {
  return ChainComplex(R, 0, {1, 1, 1}, {{2, IntMat(1, 1, {Int(2)})}},
                      {{0, {"v"}}, {1, {"e"}}, {2, {"f"}}});
}

inline TwoLineComplex hopf(const Ring& R) {
  ChainComplex s2 = sphere(R, 2);
  ChainMap f(s2, s2, -2, {{2, IntMat(1, 1, {Int(1)})}});
  return make_two_line(s2, s2, f);
}

inline MorseBottS1Datum morse_bott_hopf(const Ring& R) {
  MorseBottS1Datum d;
  d.ring = R;
  d.orbits = {{2, std::nullopt, "p"}, {0, std::nullopt, "q"}};
  d.d2[{0, 1}] = 1;
  return d;
}

/// Elementary pieces: a single generator (mult = 0) or a two-term piece
/// x -> mult * y with x in the top degree.
struct Piece {
  int top = 0;
  int ix = 0, iy = 0;  // positions within the degree blocks
  Int mult = 0;
  bool single() const { return mult == 0; }
};

struct RawComplex {
  int lo = 0;
  std::vector<int> ranks;
  std::map<int, IntMat> d;
  std::vector<Piece> pieces;
  std::map<int, std::vector<std::string>> labels;  // optional
};

struct RawMap {
  int src = -1, tgt = -1, shift = 0;
  std::map<int, IntMat> mats;
};

/// A family of complexes and maps built together so that basis changes can
/// be applied consistently to all of them.
struct Workspace {
  Ring ring = Ring::Z();
  long bound = 3;
  std::vector<RawComplex> cx;
  std::vector<RawMap> maps;

  int rank(int c, int k) const {
    const RawComplex& r = cx[c];
    if (k < r.lo || k >= r.lo + int(r.ranks.size())) return 0;
    return r.ranks[k - r.lo];
  }
  IntMat& diff(int c, int k) { return cx[c].d[k]; }
  IntMat& mat(int m, int k) { return maps[m].mats[k]; }

  int add_pieces(SplitMix64& rng, int size, int lo, int span) {
    RawComplex r;
    r.lo = lo;
    r.ranks.assign(span + 1, 0);
    int gens = 0;
    while (gens < size) {
      if (span >= 1 && gens + 1 < size && rng.chance(2, 3)) {
        static const long mult_table[8] = {1, 1, 1, 2, 2, 2, 3, 3};
        int top = lo + 1 + int(rng.below(uint64_t(span)));
        Piece p;
        p.top = top;
        p.ix = r.ranks[top - lo]++;
        p.iy = r.ranks[top - 1 - lo]++;
        p.mult = mult_table[rng.below(8)];
        if (rng.chance(1, 2)) p.mult = -p.mult;
        r.pieces.push_back(p);
        gens += 2;
      } else {
        int deg = lo + int(rng.below(uint64_t(span + 1)));
        Piece p;
        p.top = deg;
        p.ix = r.ranks[deg - lo]++;
        r.pieces.push_back(p);
        gens += 1;
      }
    }
    for (int k = lo; k <= lo + span; ++k)
      r.d[k] = IntMat(k - 1 >= lo ? r.ranks[k - 1 - lo] : 0, r.ranks[k - lo]);
    r.d[lo + span + 1] = IntMat(r.ranks[span], 0);
    for (const Piece& p : r.pieces)
      if (!p.single()) r.d[p.top](p.iy, p.ix) = p.mult;
    cx.push_back(std::move(r));
    return int(cx.size()) - 1;
  }

  int add_map(int src, int tgt, int shift) {
    RawMap m;
    m.src = src;
    m.tgt = tgt;
    m.shift = shift;
    const RawComplex& s = cx[src];
    for (int k = s.lo; k < s.lo + int(s.ranks.size()); ++k)
      m.mats[k] = IntMat(rank(tgt, k + shift), rank(src, k));
    maps.push_back(std::move(m));
    return int(maps.size()) - 1;
  }

  /// Populate a registered map from per-piece patterns: the coefficients
  /// are chosen so that the chain (eta = +1) or anti-chain (eta = -1)
  /// condition phi d = eta * d phi holds piecewise.
  void fill_map(SplitMix64& rng, int mi, int eta, unsigned density_num = 1,
                unsigned density_den = 2) {
    RawMap& m = maps[mi];
    const RawComplex& S = cx[m.src];
    const RawComplex& T = cx[m.tgt];
    for (const Piece& ps : S.pieces)
      for (const Piece& pt : T.pieces) {
        if (!rng.chance(density_num, density_den)) {
          continue;
        }
        Int c = rng.chance(1, 2) ? 1 : -1;
        if (ps.single() && pt.single()) {
          if (pt.top == ps.top + m.shift)
            m.mats[ps.top](pt.ix, ps.ix) = c * Int(rng.range(1, bound));
        } else if (ps.single() && !pt.single()) {
          // only the closed slot y of the target piece can receive
          if (pt.top - 1 == ps.top + m.shift)
            m.mats[ps.top](pt.iy, ps.ix) = c * Int(rng.range(1, bound));
        } else if (!ps.single() && pt.single()) {
          // only the open slot x of the source piece can map out
          if (pt.top == ps.top + m.shift)
            m.mats[ps.top](pt.ix, ps.ix) = c * Int(rng.range(1, bound));
        } else if (pt.top == ps.top + m.shift) {
          Int g = gysin::gcd(ps.mult, pt.mult);
          Int cx = divexact(ps.mult, g) * c;
          Int cy = Int(eta) * divexact(pt.mult, g) * c;
          if (abs(cx) > bound || abs(cy) > bound) continue;
          m.mats[ps.top](pt.ix, ps.ix) = cx;
          m.mats[ps.top - 1](pt.iy, ps.iy) = cy;
        }
      }
  }

  bool within_bound(const IntMat& m) const {
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j)
        if (abs(m(i, j)) > bound) return false;
    return true;
  }

  /// One transvection at (complex c, degree k): basis change by
  /// I + eps*E(i,j), pushed through the two adjacent differentials and all
  /// registered maps. Returns false (and leaves everything unchanged) when
  /// an entry would exceed the bound.
  bool transvect(int c, int k, int i, int j, int eps) {
    auto right = [&](IntMat& m) {  // m <- m * (I - eps E(i,j))
      for (int r = 0; r < m.rows(); ++r) m(r, j) -= Int(eps) * m(r, i);
    };
    auto left = [&](IntMat& m) {  // m <- (I + eps E(i,j)) * m
      for (int cidx = 0; cidx < m.cols(); ++cidx)
        m(i, cidx) += Int(eps) * m(j, cidx);
    };
    std::vector<IntMat*> rights, lefts;
    if (cx[c].d.count(k)) rights.push_back(&cx[c].d[k]);
    if (cx[c].d.count(k + 1)) lefts.push_back(&cx[c].d[k + 1]);
    for (RawMap& m : maps) {
      if (m.src == c && m.mats.count(k)) rights.push_back(&m.mats[k]);
      if (m.tgt == c && m.mats.count(k - m.shift))
        lefts.push_back(&m.mats[k - m.shift]);
    }
    for (IntMat* m : rights) right(*m);
    for (IntMat* m : lefts) left(*m);
    bool ok = true;
    for (IntMat* m : rights) ok = ok && within_bound(*m);
    for (IntMat* m : lefts) ok = ok && within_bound(*m);
    if (!ok) {
      auto unright = [&](IntMat& m) {
        for (int r = 0; r < m.rows(); ++r) m(r, j) += Int(eps) * m(r, i);
      };
      auto unleft = [&](IntMat& m) {
        for (int cidx = 0; cidx < m.cols(); ++cidx)
          m(i, cidx) -= Int(eps) * m(j, cidx);
      };
      for (IntMat* m : rights) unright(*m);
      for (IntMat* m : lefts) unleft(*m);
    }
    return ok;
  }

  void swap_gens(int c, int k, int i, int j) {
    if (cx[c].d.count(k)) {
      IntMat& m = cx[c].d[k];
      for (int r = 0; r < m.rows(); ++r) std::swap(m(r, i), m(r, j));
    }
    if (cx[c].d.count(k + 1)) {
      IntMat& m = cx[c].d[k + 1];
      for (int cc = 0; cc < m.cols(); ++cc) std::swap(m(i, cc), m(j, cc));
    }
    for (RawMap& m : maps) {
      if (m.src == c && m.mats.count(k)) {
        IntMat& mm = m.mats[k];
        for (int r = 0; r < mm.rows(); ++r) std::swap(mm(r, i), mm(r, j));
      }
      if (m.tgt == c && m.mats.count(k - m.shift)) {
        IntMat& mm = m.mats[k - m.shift];
        for (int cc = 0; cc < mm.cols(); ++cc) std::swap(mm(i, cc), mm(j, cc));
      }
    }
  }

  void scramble(SplitMix64& rng, int moves) {
    for (int step = 0; step < moves; ++step) {
      int c = int(rng.below(uint64_t(cx.size())));
      const RawComplex& r = cx[c];
      std::vector<int> degs;
      for (int k = r.lo; k < r.lo + int(r.ranks.size()); ++k)
        if (rank(c, k) >= 2) degs.push_back(k);
      if (degs.empty()) continue;
      int k = degs[rng.below(uint64_t(degs.size()))];
      int n = rank(c, k);
      int i = int(rng.below(uint64_t(n)));
      int j = int(rng.below(uint64_t(n)));
      if (i == j) continue;
      if (rng.chance(1, 4)) swap_gens(c, k, i, j);
      else transvect(c, k, i, j, rng.chance(1, 2) ? 1 : -1);
    }
  }

  ChainComplex build(int c) const {
    const RawComplex& r = cx[c];
    return ChainComplex(ring, r.lo, r.ranks, r.d, r.labels);
  }
  ChainMap build_map(int mi, bool validate = true) const {
    const RawMap& m = maps[mi];
    return ChainMap(build(m.src), build(m.tgt), m.shift, m.mats, validate);
  }
};

inline ChainComplex random_complex(const Ring& R, uint64_t seed, int size) {
  SplitMix64 rng(seed);
  Workspace ws;
  ws.ring = R;
  ws.bound = 3;
  int span = 2 + int(rng.below(3));
  int lo = int(rng.range(-1, 1));
  ws.add_pieces(rng, std::max(size, 1), lo, span);
  ws.scramble(rng, 4 * size);
  return ws.build(0);
}

/// Degree-0 chain map between two random complexes.
inline ChainMap random_chain_map(const Ring& R, uint64_t seed, int size) {
  SplitMix64 rng(seed);
  Workspace ws;
  ws.ring = R;
  int span = 2 + int(rng.below(2));
  int lo = int(rng.range(-1, 0));
  int a = ws.add_pieces(rng, std::max(size / 2, 1), lo, span);
  int b = ws.add_pieces(rng, std::max(size / 2, 1), lo, span);
  int f = ws.add_map(a, b, 0);
  ws.fill_map(rng, f, +1);
  ws.scramble(rng, 4 * size);
  return ws.build_map(f);
}

inline TwoLineComplex random_two_line(const Ring& R, uint64_t seed, int size) {
  SplitMix64 rng(seed);
  Workspace ws;
  ws.ring = R;
  int span = 2 + int(rng.below(2));
  int lo = int(rng.range(0, 1));
  int a = ws.add_pieces(rng, std::max(size, 1), lo + 2, span);
  int b = ws.add_pieces(rng, std::max(size, 1), lo, span);
  int f = ws.add_map(a, b, -2);
  ws.fill_map(rng, f, +1);
  ws.scramble(rng, 4 * size);
  return make_two_line(ws.build(a), ws.build(b), ws.build_map(f));
}

/// Random bounded filtered complex: levels assigned greedily (never below
/// what the differential forces), bounded into [0, 3].
inline FilteredComplex random_filtered(const Ring& R, uint64_t seed,
                                       int size) {
  SplitMix64 rng(seed);
  ChainComplex c = random_complex(R, rng.next(), size);
  std::map<int, std::vector<int>> lv;
  for (int k = c.lo(); k <= c.hi(); ++k)
    lv[k] = std::vector<int>(c.rank(k), 0);
  for (int k = c.lo(); k <= c.hi(); ++k) {
    IntMat d = c.diff(k);
    for (int i = 0; i < c.rank(k); ++i) {
      int need = 0;
      for (int r = 0; r < d.rows(); ++r)
        if (!R.is_zero(d(r, i))) need = std::max(need, lv[k - 1][r]);
      lv[k][i] = std::min(need + int(rng.below(2)), 3);
    }
  }
  return FilteredComplex(std::move(c), std::move(lv));
}

/// Morphism of short exact sequences, built as the functorial morphism of
/// cone sequences of a commuting square (either post- or pre-composition).
inline SESMorphism random_ses_morphism(const Ring& R, uint64_t seed,
                                       int size) {
  SplitMix64 rng(seed);
  Workspace ws;
  ws.ring = R;
  int span = 1 + int(rng.below(2));
  int lo = 0;
  int sz = std::max(size / 3, 1);
  bool post = rng.chance(1, 2);
  if (post) {
    // psi : P -> Q, beta : Q -> Q2; morphism cone(psi) -> cone(beta o psi)
    int P = ws.add_pieces(rng, sz, lo, span);
    int Q = ws.add_pieces(rng, sz, lo, span);
    int Q2 = ws.add_pieces(rng, sz, lo, span);
    int psi = ws.add_map(P, Q, 0);
    int beta = ws.add_map(Q, Q2, 0);
    ws.fill_map(rng, psi, +1);
    ws.fill_map(rng, beta, +1);
    ws.scramble(rng, 4 * size);
    ChainMap mpsi = ws.build_map(psi);
    ChainMap mbeta = ws.build_map(beta);
    ChainMap mpsi2 = mbeta.compose(mpsi);
    SESData src = cone_ses(mpsi), dst = cone_ses(mpsi2);
    // f = beta shifted, g = diag(beta[1], id), h = id
    std::map<int, IntMat> fm, gm;
    for (int k = src.A.lo(); k <= src.A.hi(); ++k) fm[k] = mbeta.mat(k + 1);
    ChainMap f(src.A, dst.A, 0, std::move(fm), false);
    for (int k = src.B.lo(); k <= src.B.hi(); ++k)
      gm[k] = IntMat::block2x2(
          mbeta.mat(k + 1),
          IntMat(ws.rank(Q2, k + 1), ws.rank(P, k)),
          IntMat(ws.rank(P, k), ws.rank(Q, k + 1)),
          IntMat::identity(ws.rank(P, k)));
    ChainMap g(src.B, dst.B, 0, std::move(gm), false);
    ChainMap h = ChainMap::identity(src.C);
    return make_ses_morphism(src, dst, f, g, h);
  }
  // alpha : P2 -> P, psi : P -> Q; morphism cone(psi o alpha) -> cone(psi)
  int P2 = ws.add_pieces(rng, sz, lo, span);
  int P = ws.add_pieces(rng, sz, lo, span);
  int Q = ws.add_pieces(rng, sz, lo, span);
  int alpha = ws.add_map(P2, P, 0);
  int psi = ws.add_map(P, Q, 0);
  ws.fill_map(rng, alpha, +1);
  ws.fill_map(rng, psi, +1);
  ws.scramble(rng, 4 * size);
  ChainMap malpha = ws.build_map(alpha);
  ChainMap mpsi = ws.build_map(psi);
  ChainMap mpsi1 = mpsi.compose(malpha);
  SESData src = cone_ses(mpsi1), dst = cone_ses(mpsi);
  ChainMap f = ChainMap::identity(src.A);
  std::map<int, IntMat> gm;
  for (int k = src.B.lo(); k <= src.B.hi(); ++k)
    gm[k] = IntMat::block2x2(
        IntMat::identity(ws.rank(Q, k + 1)),
        IntMat(ws.rank(Q, k + 1), ws.rank(P2, k)),
        IntMat(ws.rank(P, k), ws.rank(Q, k + 1)), malpha.mat(k));
  ChainMap g(src.B, dst.B, 0, std::move(gm), false);
  return make_ses_morphism(src, dst, f, g, malpha);
}

/// Random Morse-Bott datum: a two-part inner complex (minus subcomplex,
/// plus quotient, with a connecting twist) tensored against a tower of
/// levels with identity shifts, then mixed by weight- and sign-respecting
/// basis changes.
inline MorseBottS1Datum random_mb_datum(const Ring& R, uint64_t seed,
                                        int size, bool with_signs = true) {
  SplitMix64 rng(seed);
  Workspace ws;
  ws.ring = R;
  int span = 1 + int(rng.below(2));
  int levels = int(rng.below(3));  // tower height N
  int inner = std::max(size / (levels + 1), 1);
  int szm = std::max(inner / 2, 1);
  int szp = std::max(inner - szm, 1);
  int cm = ws.add_pieces(rng, szm, 0, span);
  int cp = ws.add_pieces(rng, szp, 0, span);
  int tw = ws.add_map(cp, cm, -1);
  ws.fill_map(rng, tw, -1);  // anti-chain twist
  ws.scramble(rng, 4 * inner);

  // inner complex B = minus (+) plus with the twist in the corner
  ChainComplex Cm = ws.build(cm), Cp = ws.build(cp);
  ChainMap twist = ws.build_map(tw, false);
  int blo = std::min(Cm.lo(), Cp.lo()), bhi = std::max(Cm.hi(), Cp.hi());
  std::vector<int> ranks(bhi - blo + 1);
  for (int k = blo; k <= bhi; ++k) ranks[k - blo] = Cm.rank(k) + Cp.rank(k);
  std::map<int, IntMat> diffs;
  for (int k = blo + 1; k <= bhi; ++k)
    diffs[k] = IntMat::block2x2(Cm.diff(k), twist.mat(k),
                                IntMat(Cp.rank(k - 1), Cm.rank(k)), Cp.diff(k));
  ChainComplex B(R, blo, std::move(ranks), std::move(diffs));
  std::map<int, std::vector<bool>> is_minus;
  for (int k = blo; k <= bhi; ++k) {
    std::vector<bool> v(B.rank(k), false);
    for (int i = 0; i < Cm.rank(k); ++i) v[i] = true;
    is_minus[k] = std::move(v);
  }

  TrivialActionModel tm = trivial_action_model(B, levels);
  MorseBottS1Datum d = tm.datum;
  if (with_signs)
    for (size_t t = 0; t < tm.cells.size(); ++t)
      d.orbits[t].sign = is_minus[tm.cells[t].deg][tm.cells[t].gen]
                             ? ActionSign::Minus
                             : ActionSign::Plus;
  // weight- and sign-respecting mixing of the orbit matrices
  auto [D1, D2] = validate_mb_datum(d);
  int n = int(d.orbits.size());
  long bound = 3;
  for (int step = 0; step < 6 * n; ++step) {
    int i = int(rng.below(uint64_t(n))), j = int(rng.below(uint64_t(n)));
    if (i == j || d.orbits[i].weight != d.orbits[j].weight) continue;
    if (with_signs && d.orbits[j].sign == ActionSign::Minus &&
        d.orbits[i].sign == ActionSign::Plus)
      continue;
    int eps = rng.chance(1, 2) ? 1 : -1;
    auto conj = [&](IntMat& M) {
      for (int c = 0; c < n; ++c) M(i, c) += Int(eps) * M(j, c);
      for (int r = 0; r < n; ++r) M(r, j) -= Int(eps) * M(r, i);
    };
    auto unconj = [&](IntMat& M) {
      for (int r = 0; r < n; ++r) M(r, j) += Int(eps) * M(r, i);
      for (int c = 0; c < n; ++c) M(i, c) -= Int(eps) * M(j, c);
    };
    conj(D1);
    conj(D2);
    bool ok = true;
    for (int r = 0; r < n && ok; ++r)
      for (int c = 0; c < n && ok; ++c)
        if (abs(D1(r, c)) > bound || abs(D2(r, c)) > bound) ok = false;
    if (!ok) {
      unconj(D1);
      unconj(D2);
    }
  }
  d.d1.clear();
  d.d2.clear();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (D1(b, a) != 0) d.d1[{a, b}] = D1(b, a);
      if (D2(b, a) != 0) d.d2[{a, b}] = D2(b, a);
    }
  validate_mb_datum(d);
  return d;
}

/// Parsed example request.
struct ExampleObject {
  std::optional<ChainComplex> complex;
  std::optional<TwoLineComplex> two_line;
  std::optional<MorseBottS1Datum> datum;
  std::optional<SESMorphism> morphism;
};

/// Grammar: name or name(arg, ...); nested specs allowed as arguments
/// (e.g. trivial_borel(sphere(2), 3)). Seeded names also honor explicit
/// seed/size arguments.
inline ExampleObject generate(const std::string& spec, const Ring& ring);

namespace detail {

inline std::pair<std::string, std::vector<std::string>> parse_spec(
    const std::string& s) {
  auto open = s.find('(');
  if (open == std::string::npos) return {s, {}};
  if (s.back() != ')') throw BadParams("malformed example spec: " + s);
  std::string name = s.substr(0, open);
  std::vector<std::string> args;
  int depth = 0;
  std::string cur;
  for (size_t i = open + 1; i + 1 < s.size(); ++i) {
    char c = s[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      args.push_back(cur);
      cur.clear();
    } else if (!(c == ' ' && cur.empty())) {
      cur += c;
    }
  }
  if (!cur.empty()) args.push_back(cur);
  return {name, args};
}

inline long int_arg(const std::vector<std::string>& args, size_t i,
                    const char* what) {
  if (i >= args.size())
    throw BadParams(std::string("missing argument: ") + what);
  try {
    return std::stol(args[i]);
  } catch (...) {
    throw BadParams(std::string("bad integer argument for ") + what + ": " +
                    args[i]);
  }
}

}  // namespace detail

inline ExampleObject generate(const std::string& spec, const Ring& ring) {
  auto [name, args] = detail::parse_spec(spec);
  ExampleObject out;
  if (name == "point") {
    out.complex = point(ring);
  } else if (name == "sphere") {
    out.complex = sphere(ring, int(detail::int_arg(args, 0, "sphere(n)")));
  } else if (name == "circle") {
    out.complex = sphere(ring, 1);
  } else if (name == "cpn") {
    out.complex = cpn_complex(ring, int(detail::int_arg(args, 0, "cpn(N)")));
  } else if (name == "rp2") {
    out.complex = rp2(ring);
  } else if (name == "hopf") {
    out.two_line = hopf(ring);
  } else if (name == "morse_bott_hopf") {
    out.datum = morse_bott_hopf(ring);
  } else if (name == "trivial_borel") {
    if (args.empty()) throw BadParams("trivial_borel(inner, N)");
    ExampleObject inner = generate(args[0], ring);
    if (!inner.complex)
      throw BadParams("trivial_borel: inner spec must be a complex");
    int N = int(detail::int_arg(args, 1, "trivial_borel(inner, N)"));
    if (N < 0) throw BadParams("trivial_borel: N must be >= 0");
    out.datum = trivial_action_model(*inner.complex, N).datum;
  } else if (name == "random_complex") {
    out.complex = random_complex(ring, uint64_t(detail::int_arg(args, 0, "seed")),
                                 int(detail::int_arg(args, 1, "size")));
  } else if (name == "random_two_line") {
    out.two_line = random_two_line(ring, uint64_t(detail::int_arg(args, 0, "seed")),
                                   int(detail::int_arg(args, 1, "size")));
  } else if (name == "random_ses_morphism") {
    out.morphism = random_ses_morphism(
        ring, uint64_t(detail::int_arg(args, 0, "seed")),
        int(detail::int_arg(args, 1, "size")));
  } else if (name == "random_mb_datum") {
    out.datum = random_mb_datum(ring, uint64_t(detail::int_arg(args, 0, "seed")),
                                int(detail::int_arg(args, 1, "size")));
  } else {
    throw BadParams("unknown example: " + name);
  }
  return out;
}

}  // namespace gysin::gen
