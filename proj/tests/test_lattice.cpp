#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gysin/abelian.hpp"
#include "gysin/lattice.hpp"
#include "gysin/present.hpp"
#include "gysin/prng.hpp"

using namespace gysin;

namespace {

IntMat random_mat(SplitMix64& rng, int rows, int cols, long lo, long hi) {
  IntMat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = Int(rng.range(lo, hi));
  return m;
}

// Independent Smith-form oracle: repeated row/column gcd reduction without
// any transform bookkeeping, plus a divisibility fix via gcd/lcm of the
// diagonal. Used only to cross-check lin::snf.
std::vector<Int> snf_diag_oracle(IntMat a) {
  const int n = a.rows(), m = a.cols();
  int t = 0;
  while (t < std::min(n, m)) {
    bool placed = false;
    for (bool clean = false; !clean;) {
      int pi = -1, pj = -1;
      for (int i = t; i < n; ++i)
        for (int j = t; j < m; ++j)
          if (a(i, j) != 0 && (pi < 0 || abs(a(i, j)) < abs(a(pi, pj))))
            pi = i, pj = j;
      if (pi < 0) break;
      placed = true;
      for (int j = 0; j < m; ++j) std::swap(a(t, j), a(pi, j));
      for (int i = 0; i < n; ++i) std::swap(a(i, t), a(i, pj));
      clean = true;
      for (int i = t + 1; i < n; ++i) {
        if (a(i, t) == 0) continue;
        Int q = tdiv(a(i, t), a(t, t));
        for (int j = 0; j < m; ++j) a(i, j) -= q * a(t, j);
        if (a(i, t) != 0) clean = false;
      }
      for (int j = t + 1; j < m; ++j) {
        if (a(t, j) == 0) continue;
        Int q = tdiv(a(t, j), a(t, t));
        for (int i = 0; i < n; ++i) a(i, j) -= q * a(i, t);
        if (a(t, j) != 0) clean = false;
      }
    }
    if (!placed) break;
    t++;
  }
  std::vector<Int> d;
  for (int i = 0; i < std::min(n, m); ++i) d.push_back(abs(a(i, i)));
  // divisibility fix on the diagonal (gcd/lcm preserves the product chain)
  for (size_t i = 0; i < d.size(); ++i)
    for (size_t j = i + 1; j < d.size(); ++j) {
      if (d[i] == 0) std::swap(d[i], d[j]);
      if (d[j] == 0) continue;
      Int g = gcd(d[i], d[j]);
      if (g == 0) continue;
      Int l = divexact(d[i] * d[j], g);
      d[i] = g;
      d[j] = l;
    }
  return d;
}

}  // namespace

TEST_CASE("smith normal form on pinned examples") {
  Ring Z = Ring::Z();
  SUBCASE("2x2 example") {
    IntMat m(2, 2, {Int(2), Int(4), Int(6), Int(8)});
    auto s = lin::snf(Z, m);
    CHECK(s.S(0, 0) == 2);
    CHECK(s.S(1, 1) == 4);
    CHECK(s.S(0, 1) == 0);
    CHECK(s.S(1, 0) == 0);
    CHECK(s.U * m * s.V == s.S);
    CHECK(abs(lin::det(s.U)) == 1);
    CHECK(abs(lin::det(s.V)) == 1);
    auto d = snf_diag_oracle(m);
    CHECK(d[0] == 2);
    CHECK(d[1] == 4);
  }
  SUBCASE("identity is already in normal form") {
    IntMat id = IntMat::identity(4);
    auto s = lin::snf(Z, id);
    CHECK(s.S == id);
    CHECK(s.U == id);
    CHECK(s.V == id);
  }
  SUBCASE("zero matrix") {
    IntMat z(3, 2);
    auto s = lin::snf(Z, z);
    CHECK(s.S == z);
    CHECK(s.U * z * s.V == s.S);
  }
}

TEST_CASE("smith form properties on random matrices") {
  Ring Z = Ring::Z();
  SplitMix64 rng(20260808);
  for (int trial = 0; trial < 80; ++trial) {
    int n = int(rng.range(1, 8)), m = int(rng.range(1, 8));
    IntMat a = random_mat(rng, n, m, -5, 5);
    auto s = lin::snf(Z, a);
    CHECK(s.U * a * s.V == s.S);
    CHECK(abs(lin::det(s.U)) == 1);
    CHECK(abs(lin::det(s.V)) == 1);
    CHECK(s.U * s.Uinv == IntMat::identity(n));
    auto d = s.diag();
    for (size_t i = 0; i < d.size(); ++i) {
      CHECK(d[i] >= 0);
      if (i + 1 < d.size()) CHECK(divides(d[i], d[i + 1]));
    }
    for (int i = 0; i < s.S.rows(); ++i)
      for (int j = 0; j < s.S.cols(); ++j)
        if (i != j) CHECK(s.S(i, j) == 0);
    auto oracle = snf_diag_oracle(a);
    for (size_t i = 0; i < d.size(); ++i) CHECK(d[i] == oracle[i]);
  }
}

TEST_CASE("hermite form, image, kernel, solve over Z") {
  Ring Z = Ring::Z();
  SplitMix64 rng(77);
  for (int trial = 0; trial < 60; ++trial) {
    int n = int(rng.range(1, 7)), m = int(rng.range(1, 7));
    IntMat a = random_mat(rng, n, m, -4, 4);
    auto h = lin::hnf_cols(Z, a);
    CHECK(a * h.V == h.H);
    CHECK(abs(lin::det(h.V)) == 1);

    // the image basis is canonical: column-scrambling does not change it
    IntMat perm(m, m);
    std::vector<int> p(m);
    for (int i = 0; i < m; ++i) p[i] = i;
    for (int i = m - 1; i > 0; --i) std::swap(p[i], p[rng.range(0, i)]);
    for (int i = 0; i < m; ++i) perm(p[i], i) = rng.chance(1, 2) ? 1 : -1;
    CHECK(lin::image(Z, a) == lin::image(Z, a * perm));

    IntMat k = lin::kernel(Z, a);
    CHECK((a * k).is_zero());
    CHECK(k.cols() == m - h.rank());

    // A * (solution of A x = A y) == A y
    IntMat y = random_mat(rng, m, 1, -3, 3);
    IntMat b = a * y;
    auto x = lin::solve(Z, a, b);
    REQUIRE(x.has_value());
    CHECK(a * *x == b);
  }
}

TEST_CASE("solve detects non-membership") {
  Ring Z = Ring::Z();
  IntMat a(1, 1, {Int(2)});
  IntMat b(1, 1, {Int(1)});
  CHECK(!lin::solve(Z, a, b).has_value());
  auto xr = lin::solve_rat(a, to_rat(b));
  REQUIRE(xr.has_value());
  CHECK((*xr)(0, 0) == Rat(1, 2));
}

TEST_CASE("prime field elimination") {
  Ring F5 = Ring::Zp(5);
  SplitMix64 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    int n = int(rng.range(1, 6)), m = int(rng.range(1, 6));
    IntMat a = random_mat(rng, n, m, -6, 6);
    IntMat k = lin::kernel(F5, a);
    CHECK(is_zero(F5, a * k));
    CHECK(lin::rank(F5, a) + k.cols() == m);
    auto s = lin::snf(F5, a);
    CHECK(equal(F5, s.U * a * s.V, s.S));
    int ones = 0;
    for (const Int& d : s.diag())
      if (d == 1) ++ones;
      else CHECK(d == 0);
    CHECK(ones == lin::rank(F5, a));
  }
}

TEST_CASE("field rank equals count of smith diagonal entries nonzero in the field") {
  SplitMix64 rng(123);
  Ring Z = Ring::Z();
  for (int trial = 0; trial < 40; ++trial) {
    int n = int(rng.range(1, 6)), m = int(rng.range(1, 6));
    IntMat a = random_mat(rng, n, m, -5, 5);
    auto d = lin::snf(Z, a).diag();
    int rq = 0, r3 = 0;
    for (const Int& v : d) {
      if (v != 0) ++rq;
      if (!divides(Int(3), v) || v == 0) {
        // v nonzero mod 3 iff v != 0 and 3 does not divide v
        if (v != 0 && !divides(Int(3), v)) ++r3;
      }
    }
    CHECK(lin::rank(Z, a) == rq);
    CHECK(lin::rank(Ring::Zp(3), a) == r3);
  }
}

TEST_CASE("subquotient presentations") {
  Ring Z = Ring::Z();
  SUBCASE("Z/2") {
    IntMat num = IntMat::identity(1);
    IntMat den(1, 1, {Int(2)});
    auto g = subquotient(Z, num, den);
    CHECK(g.free_rank == 0);
    REQUIRE(g.torsion.size() == 1);
    CHECK(g.torsion[0] == 2);
  }
  SUBCASE("quotient by the full lattice is trivial") {
    auto g = subquotient(Z, IntMat::identity(2), IntMat::identity(2));
    CHECK(g.is_trivial());
  }
  SUBCASE("diag(2,3) gives Z/6") {
    IntMat den(2, 2);
    den(0, 0) = 2;
    den(1, 1) = 3;
    auto g = subquotient(Z, IntMat::identity(2), den);
    CHECK(g.free_rank == 0);
    REQUIRE(g.torsion.size() == 1);
    CHECK(g.torsion[0] == 6);
  }
  SUBCASE("not a sublattice") {
    IntMat num(1, 1, {Int(2)});
    IntMat den(1, 1, {Int(1)});
    CHECK_THROWS_AS(subquotient(Z, num, den), NotASublattice);
  }
  SUBCASE("free rank and group order") {
    SplitMix64 rng(4242);
    for (int trial = 0; trial < 40; ++trial) {
      int n = int(rng.range(1, 6));
      IntMat m = random_mat(rng, n, int(rng.range(1, 6)), -5, 5);
      auto g = subquotient(Z, IntMat::identity(n), m);
      CHECK(g.free_rank == n - lin::rank(Z, m));
    }
    for (int trial = 0; trial < 30; ++trial) {
      int n = int(rng.range(1, 5));
      IntMat m = random_mat(rng, n, n, -4, 4);
      Int dt = lin::det(m);
      if (dt == 0) continue;
      auto g = subquotient(Z, IntMat::identity(n), m);
      CHECK(g.order() == abs(dt));
    }
  }
}

TEST_CASE("presentation coordinates invert the generators") {
  SplitMix64 rng(555);
  for (Ring R : {Ring::Z(), Ring::Q(), Ring::Zp(7)}) {
    for (int trial = 0; trial < 30; ++trial) {
      int n = int(rng.range(1, 6));
      IntMat num = random_mat(rng, n, int(rng.range(1, 6)), -4, 4);
      // denominator: random integer combinations of the numerator columns,
      // scaled to create torsion
      IntMat c = random_mat(rng, num.cols(), int(rng.range(0, 4)), -2, 2);
      IntMat den = num * c * Int(rng.range(1, 3));
      Presentation pres(R, n, num, den);
      for (int j = 0; j < pres.ngens(); ++j) {
        auto co = pres.coords(pres.gens().col(j));
        REQUIRE(co.has_value());
        for (int i = 0; i < pres.ngens(); ++i)
          CHECK((*co)[i] == (i == j ? 1 : 0));
      }
      // anything in the denominator has zero coordinates
      for (int j = 0; j < den.cols(); ++j) {
        auto co = pres.coords(den.col(j));
        REQUIRE(co.has_value());
        for (const Int& v : *co) CHECK(v == 0);
      }
    }
  }
}
