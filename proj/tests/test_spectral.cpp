#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gysin/gen.hpp"
#include "gysin/spectral.hpp"

using namespace gysin;

namespace {

// page recursion at one position: H(E^r, d^r) vs E^{r+1}
bool recursion_holds(const Ring& R, const SpectralPages& ps, int r, int p,
                     int q) {
  FGAbelianGroup G = ps.at(r, p, q).group();
  FGAbelianGroup Gout = ps.at(r, p - r, q + r - 1).group();
  IntMat min = ps.dmat(r, p + r, q - r + 1);
  IntMat mout = ps.dmat(r, p, q);
  return group_homology(R, G, Gout, min, mout) == ps.at(r + 1, p, q).group();
}

void check_pages(const Ring& R, const FilteredComplex& fc, int r_max) {
  SpectralPages ps(fc, r_max);
  const ChainComplex& C = fc.complex();
  for (int r = 0; r < r_max; ++r)
    for (int n = C.lo(); n <= C.hi(); ++n)
      for (int p = ps.pmin(); p <= ps.pmax(); ++p)
        CHECK(recursion_holds(R, ps, r, p, n - p));
  // convergence: the stable page assembles the induced filtration of H
  for (int n = C.lo(); n <= C.hi(); ++n)
    for (int p = ps.pmin(); p <= ps.pmax(); ++p)
      CHECK(ps.einf(p, n - p).group() == ps.h_graded(p, n - p));
}

}  // namespace

TEST_CASE("single-level filtration collapses to homology at page 1") {
  for (int t = 0; t < 6; ++t) {
    ChainComplex c = gen::random_complex(Ring::Z(), 7100 + t, 8);
    std::map<int, std::vector<int>> lv;
    for (int k = c.lo(); k <= c.hi(); ++k)
      lv[k] = std::vector<int>(c.rank(k), 0);
    FilteredComplex fc(c, lv);
    SpectralPages ps(fc, 4);
    Homology h(c);
    for (int n = c.lo(); n <= c.hi(); ++n) {
      CHECK(ps.at(1, 0, n).group() == h.group(n));
      for (int r = 2; r <= 4; ++r) {
        CHECK(ps.at(r, 0, n).group() == h.group(n));
        CHECK(ps.dmat(r, 0, n).is_zero());
      }
    }
  }
}

TEST_CASE("the two-line pages of the Hopf datum") {
  TwoLineComplex T = gen::hopf(Ring::Z());
  FilteredComplex fc = two_line_total(T);
  SpectralPages ps(fc, 5);
  CHECK(ps.at(2, 2, 0).group() == FGAbelianGroup::free(1));
  CHECK(ps.at(2, 0, 1).group() == FGAbelianGroup::free(1));
  IntMat d2 = ps.dmat(2, 2, 0);
  REQUIRE(d2.rows() == 1);
  REQUIRE(d2.cols() == 1);
  CHECK(abs(d2(0, 0)) == 1);
  CHECK(ps.at(3, 2, 0).group().is_trivial());
  CHECK(ps.at(3, 0, 1).group().is_trivial());
  // total homology is the 3-sphere pattern
  CHECK(ps.h_total(0) == FGAbelianGroup::free(1));
  CHECK(ps.h_total(1).is_trivial());
  CHECK(ps.h_total(2).is_trivial());
  CHECK(ps.h_total(3) == FGAbelianGroup::free(1));
}

TEST_CASE("two-line spectral sequences degenerate from page 3 on") {
  for (int t = 0; t < 10; ++t) {
    TwoLineComplex T = gen::random_two_line(Ring::Z(), 7200 + t, 6);
    SpectralPages ps(two_line_total(T), 6);
    const ChainComplex& C = two_line_total(T).complex();
    for (int r = 3; r <= 6; ++r)
      for (int n = C.lo(); n <= C.hi(); ++n)
        for (int p = ps.pmin(); p <= ps.pmax(); ++p) {
          CHECK(ps.dmat(r, p, n - p).is_zero());
          CHECK(ps.at(r, p, n - p).group() == ps.at(3, p, n - p).group());
        }
  }
}

TEST_CASE("page recursion and convergence on random bounded filtrations") {
  for (Ring R : {Ring::Z(), Ring::Q()}) {
    for (int t = 0; t < 12; ++t)
      check_pages(R, gen::random_filtered(R, 7300 + t, 9), 5);
  }
  for (int t = 0; t < 6; ++t)
    check_pages(Ring::Zp(2), gen::random_filtered(Ring::Zp(2), 7350 + t, 9),
                5);
}

TEST_CASE("gysin sequence of a two-line complex") {
  SUBCASE("hopf: the connecting differential is a unit") {
    GysinResult gy = gysin_from_two_line(gen::hopf(Ring::Z()));
    RatMat d = gy.D_at(2);
    REQUIRE(d.rows() == 1);
    REQUIRE(d.cols() == 1);
    CHECK((d(0, 0) == 1 || d(0, 0) == -1));
    CHECK(check_exactness(gy.les).exact);
  }
  SUBCASE("zero map splits the sequence") {
    ChainComplex s2 = gen::sphere(Ring::Z(), 2);
    TwoLineComplex T = make_two_line(s2, s2, ChainMap(s2, s2, -2, {}));
    GysinResult gy = gysin_from_two_line(T);
    for (auto& [p, d] : gy.D) CHECK(d.is_zero());
    Homology hs(s2);
    for (int k = 0; k <= 3; ++k)
      CHECK(gy.Htot->group(k) == hs.group(k).direct_sum(hs.group(k - 1)));
  }
}

TEST_CASE("cone and gysin routes coincide") {
  SUBCASE("hopf") {
    EquivalenceReport rep = check_cone_equals_gysin(gen::hopf(Ring::Z()));
    CHECK_MESSAGE(rep.ok, rep.detail);
  }
  SUBCASE("random two-line complexes over Z, Q, Z/5") {
    for (Ring R : {Ring::Z(), Ring::Q(), Ring::Zp(5)}) {
      for (int t = 0; t < 10; ++t) {
        EquivalenceReport rep =
            check_cone_equals_gysin(gen::random_two_line(R, 7400 + t, 7));
        CHECK_MESSAGE(rep.ok, rep.detail);
      }
    }
  }
}

TEST_CASE("filtered order of graded maps") {
  TwoLineComplex T = gen::hopf(Ring::Z());
  FilteredComplex fc = two_line_total(T);
  CHECK(filtered_order(fc, fc, ChainMap::identity(fc.complex())) == 0);
  // a map raising one generator by one level
  ChainComplex c(Ring::Z(), 0, {2});
  FilteredComplex f2(c, {{0, {0, 1}}});
  ChainMap raise(c, c, 0, {{0, IntMat(2, 2, {Int(0), Int(0), Int(1), Int(0)})}},
                 false);
  CHECK(filtered_order(f2, f2, raise) == 1);
  // the weight-2 component of a two-line total differential lowers levels
  const ChainComplex& C = fc.complex();
  std::map<int, IntMat> dm;
  for (int k = C.lo(); k <= C.hi(); ++k) dm[k] = C.diff(k);
  ChainMap d(C, C, -1, dm, false);
  CHECK(filtered_order(fc, fc, d) == 0);
}

TEST_CASE("homotopic filtered maps agree on late pages") {
  SUBCASE("zero homotopy: equal maps agree everywhere") {
    FilteredComplex fc = gen::random_filtered(Ring::Z(), 7500, 8);
    ChainMap id = ChainMap::identity(fc.complex());
    ChainMap K = ChainMap::zero(fc.complex(), fc.complex(), 1);
    for (int r = 0; r <= 3; ++r) {
      auto rep = homotopy_page_agreement(fc, fc, id, id, K, r);
      CHECK(rep.agree);
      CHECK(rep.order == 0);
    }
  }
  SUBCASE("order-1 homotopies: agreement from page 2 on") {
    SplitMix64 rng(99);
    for (int t = 0; t < 10; ++t) {
      ChainComplex c = gen::random_complex(Ring::Z(), 7600 + t, 8);
      FilteredComplex fc = degreewise_filtration(c);
      std::map<int, IntMat> km;
      for (int k = c.lo(); k <= c.hi(); ++k) {
        IntMat m(c.rank(k + 1), c.rank(k));
        for (int i = 0; i < m.rows(); ++i)
          for (int j = 0; j < m.cols(); ++j) m(i, j) = Int(rng.range(-2, 2));
        km[k] = std::move(m);
      }
      ChainMap K(c, c, 1, km, false);
      ChainMap id = ChainMap::identity(c);
      std::map<int, IntMat> gm;
      for (int k = c.lo(); k <= c.hi(); ++k)
        gm[k] = id.mat(k) + c.diff(k + 1) * K.mat(k) + K.mat(k - 1) * c.diff(k);
      ChainMap g(c, c, 0, gm);
      for (int r = 2; r <= 4; ++r) {
        auto rep = homotopy_page_agreement(fc, fc, g, id, K, r);
        CHECK(rep.order <= 1);
        CHECK_MESSAGE(rep.agree, rep.detail);
      }
    }
  }
  SUBCASE("order-0 homotopies: agreement from page 1 on") {
    SplitMix64 rng(123);
    for (int t = 0; t < 10; ++t) {
      ChainComplex c = gen::random_complex(Ring::Z(), 7700 + t, 8);
      // coarse filtration: level = floor(degree / 2)
      std::map<int, std::vector<int>> lv;
      for (int k = c.lo(); k <= c.hi(); ++k) {
        int level = (k >= 0 ? k / 2 : (k - 1) / 2);
        lv[k] = std::vector<int>(c.rank(k), level);
      }
      FilteredComplex fc(c, lv);
      std::map<int, IntMat> km;
      for (int k = c.lo(); k <= c.hi(); ++k) {
        IntMat m(c.rank(k + 1), c.rank(k));
        bool level_keeps = ((k >= 0 ? k / 2 : (k - 1) / 2) ==
                            (k + 1 >= 0 ? (k + 1) / 2 : k / 2));
        if (level_keeps)
          for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) m(i, j) = Int(rng.range(-2, 2));
        km[k] = std::move(m);
      }
      ChainMap K(c, c, 1, km, false);
      ChainMap id = ChainMap::identity(c);
      std::map<int, IntMat> gm;
      for (int k = c.lo(); k <= c.hi(); ++k)
        gm[k] = id.mat(k) + c.diff(k + 1) * K.mat(k) + K.mat(k - 1) * c.diff(k);
      ChainMap g(c, c, 0, gm);
      auto rep0 = homotopy_page_agreement(fc, fc, g, id, K, 1);
      CHECK(rep0.order == 0);
      CHECK_MESSAGE(rep0.agree, rep0.detail);
    }
  }
  SUBCASE("a non-homotopy is rejected") {
    FilteredComplex fc = gen::random_filtered(Ring::Z(), 7800, 6);
    ChainMap id = ChainMap::identity(fc.complex());
    ChainMap K = ChainMap::zero(fc.complex(), fc.complex(), 1);
    bool has_gen = false;
    std::map<int, IntMat> gm;
    for (int k = fc.complex().lo(); k <= fc.complex().hi(); ++k) {
      gm[k] = id.mat(k) * Int(2);
      has_gen |= fc.complex().rank(k) > 0;
    }
    ChainMap g(fc.complex(), fc.complex(), 0, gm);
    if (has_gen)
      CHECK_THROWS_AS(homotopy_page_agreement(fc, fc, id, g, K, 2),
                      NotAHomotopy);
  }
}

TEST_CASE("filtered homotopy equivalences certify a page-2 isomorphism") {
  SUBCASE("identity with zero homotopies") {
    FilteredComplex fc = gen::random_filtered(Ring::Z(), 7900, 8);
    ChainMap id = ChainMap::identity(fc.complex());
    ChainMap K = ChainMap::zero(fc.complex(), fc.complex(), 1);
    auto rep = page_iso_from_filtered_homotopy_equivalence(fc, fc, id, id, K, K);
    CHECK(rep.ok);
    for (auto& [pq, m] : rep.forward_page2)
      CHECK(m == IntMat::identity(m.rows()));
  }
  SUBCASE("conjugation by a filtered automorphism") {
    SplitMix64 rng(5);
    for (int t = 0; t < 8; ++t) {
      FilteredComplex fc = gen::random_filtered(Ring::Z(), 8000 + t, 8);
      const ChainComplex& c = fc.complex();
      // u = id + dH + Hd with H lowering the filtration: a filtered
      // automorphism (the correction is nilpotent)
      std::map<int, IntMat> hm;
      for (int k = c.lo(); k <= c.hi(); ++k) {
        IntMat m(c.rank(k + 1), c.rank(k));
        for (int i = 0; i < m.rows(); ++i)
          for (int j = 0; j < m.cols(); ++j)
            if (fc.level(k + 1, i) < fc.level(k, j)) m(i, j) = Int(rng.range(-1, 1));
        hm[k] = std::move(m);
      }
      ChainMap H(c, c, 1, hm, false);
      std::map<int, IntMat> um, nm;
      for (int k = c.lo(); k <= c.hi(); ++k) {
        nm[k] = c.diff(k + 1) * H.mat(k) + H.mat(k - 1) * c.diff(k);
        um[k] = IntMat::identity(c.rank(k)) + nm[k];
      }
      ChainMap U(c, c, 0, um);
      // the inverse by the geometric series of the nilpotent part
      std::map<int, IntMat> vm;
      for (int k = c.lo(); k <= c.hi(); ++k) {
        IntMat acc = IntMat::identity(c.rank(k));
        IntMat pw = nm[k];
        Int sign = -1;
        for (int it = 0; it < 8 && !pw.is_zero(); ++it) {
          acc = acc + pw * sign;
          pw = nm[k] * pw;
          sign = -sign;
        }
        vm[k] = std::move(acc);
      }
      ChainMap V(c, c, 0, vm);
      ChainMap K = ChainMap::zero(c, c, 1);
      auto rep = page_iso_from_filtered_homotopy_equivalence(fc, fc, U, V, K, K);
      CHECK_MESSAGE(rep.ok, rep.detail);
    }
  }
  SUBCASE("a basis change on one level induces exactly that matrix") {
    ChainComplex c(Ring::Z(), 0, {2});
    FilteredComplex fc(c, {{0, {1, 1}}});
    IntMat u(2, 2, {Int(1), Int(1), Int(0), Int(1)});
    ChainMap U(c, c, 0, {{0, u}});
    ChainMap Uinv(c, c, 0,
                  {{0, IntMat(2, 2, {Int(1), Int(-1), Int(0), Int(1)})}});
    ChainMap K = ChainMap::zero(c, c, 1);
    auto rep = page_iso_from_filtered_homotopy_equivalence(fc, fc, U, Uinv, K, K);
    CHECK(rep.ok);
    CHECK(rep.forward_page2.at({1, -1}) == u);
  }
  SUBCASE("order-2 homotopies are rejected") {
    ChainComplex c(Ring::Z(), 0, {1, 0, 1});
    FilteredComplex fc(c, {{0, {0}}, {1, {}}, {2, {2}}});
    std::map<int, IntMat> km{{0, IntMat(0, 1)}, {1, IntMat(1, 0)}};
    // a degree +1 map raising the level by 2 exists only formally; build
    // a synthetic one on a two-generator complex
    ChainComplex c2(Ring::Z(), 0, {1, 1});
    FilteredComplex f2(c2, {{0, {0}}, {1, {2}}});
    ChainMap K(c2, c2, 1, {{0, IntMat(1, 1, {Int(1)})}}, false);
    ChainMap id = ChainMap::identity(c2);
    CHECK_THROWS_AS(
        page_iso_from_filtered_homotopy_equivalence(f2, f2, id, id, K, K),
        OrderTooHigh);
  }
}

TEST_CASE("the tautological-filtration comparison factors the assembly maps") {
  // the two-line total complex carries three filtrations: the standard one,
  // its shift, and the degreewise one; the assembly maps I and P are the
  // page-3 maps induced by the inclusion and the projection through them
  for (int t = 0; t < 6; ++t) {
    TwoLineComplex T = gen::random_two_line(Ring::Z(), 8100 + t, 6);
    GysinResult gy = gysin_from_two_line(T);
    FilteredComplex std_f = two_line_total(T);
    const ChainComplex& C = std_f.complex();
    ChainComplex Ash = T.Aprime.shift(-1);
    FilteredComplex taut_c = degreewise_filtration(C);
    FilteredComplex taut_a = degreewise_filtration(T.A);
    FilteredComplex taut_ap = degreewise_filtration(Ash);
    std::map<int, std::vector<int>> shifted;
    for (int k = C.lo(); k <= C.hi(); ++k) {
      std::vector<int> l = std_f.levels(k);
      for (int& v : l) ++v;
      shifted[k] = std::move(l);
    }
    FilteredComplex prime_c(C, shifted);

    // inclusion of the shifted second line and projection to the first
    std::map<int, IntMat> im, pm;
    for (int k = C.lo(); k <= C.hi(); ++k) {
      IntMat mi(C.rank(k), Ash.rank(k));
      mi.paste(0, 0, IntMat::identity(Ash.rank(k)));
      im[k] = std::move(mi);
      IntMat mp(T.A.rank(k), C.rank(k));
      mp.paste(0, Ash.rank(k), IntMat::identity(T.A.rank(k)));
      pm[k] = std::move(mp);
    }
    ChainMap inc(Ash, C, 0, im);
    ChainMap prj(C, T.A, 0, pm);
    ChainMap idc = ChainMap::identity(C);
    CHECK(filtered_order(taut_ap, prime_c, inc) == 0);
    CHECK(filtered_order(prime_c, taut_c, idc) == 0);
    CHECK(filtered_order(taut_c, std_f, idc) == 0);
    CHECK(filtered_order(std_f, taut_a, prj) == 0);

    SpectralPages pap(taut_ap, 3), ppr(prime_c, 3), ptc(taut_c, 3),
        pst(std_f, 3), pta(taut_a, 3);
    Homology Htot(C), HA(T.A), HAsh(Ash);
    for (int p = C.lo(); p <= C.hi(); ++p) {
      // factorization through the intermediate filtration
      IntMat step1 = page_map(pap, ppr, inc, 3, p, 0);
      IntMat step2 = page_map(ppr, ptc, idc, 3, p, 0);
      IntMat direct = page_map(pap, ptc, inc, 3, p, 0);
      CHECK(step2 * step1 == direct);
      // identification with I: on page 3 of the tautological filtrations
      // the entries are homology groups
      const Presentation& ea = pap.at(3, p, 0).pres;
      const Presentation& ec = ptc.at(3, p, 0).pres;
      IntMat ta(ngens(HAsh.group(p)), ea.ngens());
      for (int j = 0; j < ea.ngens(); ++j) {
        auto co = HAsh.at(p).coords(ea.gens().col(j));
        REQUIRE(co.has_value());
        for (size_t i = 0; i < co->size(); ++i) ta(int(i), j) = (*co)[i];
      }
      IntMat tc(ngens(Htot.group(p)), ec.ngens());
      for (int j = 0; j < ec.ngens(); ++j) {
        auto co = Htot.at(p).coords(ec.gens().col(j));
        REQUIRE(co.has_value());
        for (size_t i = 0; i < co->size(); ++i) tc(int(i), j) = (*co)[i];
      }
      CHECK(maps_equal_mod(Ring::Z(), Htot.group(p), to_rat(tc * direct),
                           gy.I_at(p) * to_rat(ta)));
      // and with P: project through the standard filtration
      IntMat stepc = page_map(ptc, pst, idc, 3, p, 0);
      IntMat stepp = page_map(pst, pta, prj, 3, p, 0);
      IntMat directp = page_map(ptc, pta, prj, 3, p, 0);
      CHECK(stepp * stepc == directp);
      const Presentation& eta = pta.at(3, p, 0).pres;
      IntMat taa(ngens(HA.group(p)), eta.ngens());
      for (int j = 0; j < eta.ngens(); ++j) {
        auto co = HA.at(p).coords(eta.gens().col(j));
        REQUIRE(co.has_value());
        for (size_t i = 0; i < co->size(); ++i) taa(int(i), j) = (*co)[i];
      }
      CHECK(maps_equal_mod(Ring::Z(), HA.group(p), to_rat(taa * directp),
                           gy.P_at(p) * to_rat(tc)));
    }
  }
}
