#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gysin/io.hpp"

using namespace gysin;
using io::json;

namespace {

json reparse(const json& j) { return json::parse(j.dump()); }

}  // namespace

TEST_CASE("round trip: load, serialize, load is the identity") {
  SUBCASE("complexes over every ring") {
    for (Ring R : {Ring::Z(), Ring::Q(), Ring::Zp(7)}) {
      for (int s = 0; s < 8; ++s) {
        ChainComplex c = gen::random_complex(R, 100 + s, 8);
        json j = io::to_json(c);
        io::Document d = io::parse_document(reparse(j));
        REQUIRE(d.complex.has_value());
        CHECK(*d.complex == c);
        CHECK(io::to_json(*d.complex).dump() == j.dump());
      }
    }
  }
  SUBCASE("filtered complexes") {
    for (int s = 0; s < 6; ++s) {
      FilteredComplex fc = gen::random_filtered(Ring::Z(), 200 + s, 8);
      json j = io::to_json(fc);
      io::Document d = io::parse_document(reparse(j));
      REQUIRE(d.filtered.has_value());
      CHECK(*d.filtered == fc);
    }
  }
  SUBCASE("two-line complexes and morse-bott data") {
    TwoLineComplex t = gen::random_two_line(Ring::Z(), 5, 7);
    io::Document d = io::parse_document(reparse(io::to_json(t)));
    REQUIRE(d.two_line.has_value());
    CHECK(d.two_line->A == t.A);
    CHECK(d.two_line->Aprime == t.Aprime);
    CHECK(d.two_line->f == t.f);

    MorseBottS1Datum mb = gen::random_mb_datum(Ring::Z(), 6, 8);
    io::Document dm = io::parse_document(reparse(io::to_json(mb)));
    REQUIRE(dm.mb_datum.has_value());
    CHECK(io::to_json(*dm.mb_datum).dump() == io::to_json(mb).dump());
  }
  SUBCASE("ses morphisms") {
    SESMorphism m = gen::random_ses_morphism(Ring::Z(), 7, 9);
    io::Document d = io::parse_document(reparse(io::to_json(m)));
    REQUIRE(d.ses_morphism.has_value());
    CHECK(d.ses_morphism->g == m.g);
  }
  SUBCASE("long exact sequences with rational entries") {
    GysinResult gy = gysin_from_two_line(gen::random_two_line(Ring::Q(), 8, 7));
    json j = io::to_json(gy.les);
    io::Document d = io::parse_document(reparse(j));
    REQUIRE(d.les.has_value());
    CHECK(io::to_json(*d.les).dump() == j.dump());
    CHECK(check_exactness(*d.les).exact);
  }
}

TEST_CASE("big integers survive interchange as decimal strings") {
  Int big("123456789012345678901234567890123456789");
  ChainComplex c(Ring::Z(), 0, {1, 1}, {{1, IntMat(1, 1, {big})}});
  io::Document d = io::parse_document(reparse(io::to_json(c)));
  CHECK(d.complex->diff(1)(0, 0) == big);
}

TEST_CASE("schema violations are rejected") {
  CHECK_THROWS_AS(io::parse_document(json{{"no_kind", 1}}), SchemaError);
  CHECK_THROWS_AS(io::parse_document(json{{"kind", "complex"}}), SchemaError);
  CHECK_THROWS_AS(
      io::parse_document(json{{"kind", "widget"}, {"ring", "Z"}}), SchemaError);
  // out-of-bounds triple
  json j{{"kind", "complex"},
         {"ring", "Z"},
         {"degrees", {{"0", 1}, {"1", 1}}},
         {"differentials", {{"1", json::array({json::array({5, 0, "1"})})}}}};
  CHECK_THROWS_AS(io::parse_document(j), SchemaError);
  // duplicate triples are forbidden in the sparse form
  json jd{{"kind", "complex"},
          {"ring", "Z"},
          {"degrees", {{"0", 1}, {"1", 1}}},
          {"differentials",
           {{"1", json::array({json::array({0, 0, "1"}),
                               json::array({0, 0, "1"})})}}}};
  CHECK_THROWS_AS(io::parse_document(jd), SchemaError);
  // invalid ring modulus
  CHECK_THROWS_AS(io::ring_from_json(json{{"Zp", "4"}}), BadParams);
}

TEST_CASE("domain invariants are re-validated on load") {
  json j{{"kind", "complex"},
         {"ring", "Z"},
         {"degrees", {{"0", 1}, {"1", 1}, {"2", 1}}},
         {"differentials",
          {{"1", json::array({json::array({0, 0, "1"})})},
           {"2", json::array({json::array({0, 0, "1"})})}}}};
  CHECK_THROWS_AS(io::parse_document(j), InvalidComplex);
  j["ring"] = json{{"Zp", "2"}};
  j["differentials"]["2"] = json::array({json::array({0, 0, "2"})});
  CHECK_NOTHROW(io::parse_document(j));
}

TEST_CASE("les problems parse") {
  LesProblem p;
  p.labels = {"A", "B", "C"};
  p.dims = {0, std::nullopt, 2};
  p.maps.resize(2);
  p.maps[1].zero = true;
  io::Document d = io::parse_document(reparse(io::to_json(p)));
  REQUIRE(d.les_problem.has_value());
  CHECK(d.les_problem->labels == p.labels);
  CHECK(d.les_problem->maps[1].zero);
  CHECK(!d.les_problem->maps[0].zero);
}
