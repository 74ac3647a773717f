#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "gysin/gen.hpp"
#include "gysin/solver.hpp"

// JSON document format, schema_version 1. One JSON object per document
// with a "kind" field; all integers are decimal strings so arbitrary
// precision survives interchange, and rationals are "n" or "n/d". Matrices
// are sparse triple lists [row, col, "value"], sorted by (row, col); maps
// keyed by degree are objects with decimal-string keys. The full schema is
// described in docs/format.md.

namespace gysin::io {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

inline json ring_to_json(const Ring& r) {
  switch (r.kind) {
    case RingKind::Integers: return "Z";
    case RingKind::Rationals: return "Q";
    case RingKind::PrimeField: return json{{"Zp", to_string(r.p)}};
  }
  return "Z";
}

inline Ring ring_from_json(const json& j) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "Z") return Ring::Z();
    if (s == "Q") return Ring::Q();
    throw SchemaError("unknown ring: " + s);
  }
  if (j.is_object() && j.contains("Zp")) {
    const json& p = j.at("Zp");
    Int pv = p.is_string() ? Int(p.get<std::string>())
                           : Int(long(p.get<long long>()));
    return Ring::Zp(pv);
  }
  throw SchemaError("malformed ring");
}

inline json int_to_json(const Int& v) { return to_string(v); }
inline Int int_from_json(const json& j) {
  if (j.is_string()) return Int(j.get<std::string>());
  if (j.is_number_integer()) return Int(long(j.get<long long>()));
  throw SchemaError("expected an integer (decimal string)");
}

inline json rat_to_json(const Rat& v) { return to_string(v); }
inline Rat rat_from_json(const json& j) {
  if (j.is_number_integer()) return Rat(long(j.get<long long>()));
  if (!j.is_string()) throw SchemaError("expected a rational (string)");
  std::string s = j.get<std::string>();
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(Int(s));
  return make_rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
}

inline json triples_to_json(const IntMat& m) {
  json out = json::array();
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      if (m(r, c) != 0) out.push_back(json::array({r, c, int_to_json(m(r, c))}));
  return out;
}

inline IntMat triples_from_json(const json& j, int rows, int cols,
                                const char* what) {
  IntMat m(rows, cols);
  if (j.is_null()) return m;
  if (!j.is_array()) throw SchemaError(std::string(what) + ": expected triple list");
  std::vector<std::pair<int, int>> seen;
  for (const json& t : j) {
    if (!t.is_array() || t.size() != 3)
      throw SchemaError(std::string(what) + ": malformed triple");
    int r = t[0].get<int>(), c = t[1].get<int>();
    if (r < 0 || r >= rows || c < 0 || c >= cols)
      throw SchemaError(std::string(what) + ": triple index out of bounds (" +
                        std::to_string(r) + "," + std::to_string(c) + ")");
    for (auto& s : seen)
      if (s.first == r && s.second == c)
        throw SchemaError(std::string(what) + ": duplicate triple (" +
                          std::to_string(r) + "," + std::to_string(c) + ")");
    seen.push_back({r, c});
    m(r, c) = int_from_json(t[2]);
  }
  return m;
}

inline json rat_triples_to_json(const RatMat& m) {
  json out = json::array();
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      if (m(r, c) != 0) out.push_back(json::array({r, c, rat_to_json(m(r, c))}));
  return out;
}

// ----- complexes -----

inline json complex_body(const ChainComplex& c) {
  json degrees = json::object();
  json diffs = json::object();
  json labels = json::object();
  for (int k = c.lo(); k <= c.hi(); ++k) {
    if (c.rank(k) > 0) degrees[std::to_string(k)] = c.rank(k);
    if (!c.diff(k).is_zero())
      diffs[std::to_string(k)] = triples_to_json(c.diff(k));
    if (c.has_labels() && c.rank(k) > 0) labels[std::to_string(k)] = c.labels(k);
  }
  json out{{"degrees", degrees}};
  if (!diffs.empty()) out["differentials"] = diffs;
  if (c.has_labels()) out["labels"] = labels;
  return out;
}

inline ChainComplex complex_from_body(const json& j, const Ring& ring) {
  if (!j.is_object() || !j.contains("degrees"))
    throw SchemaError("complex: missing degrees");
  std::map<int, int> degree_rank;
  for (auto& [key, val] : j.at("degrees").items())
    degree_rank[std::stoi(key)] = val.get<int>();
  if (degree_rank.empty()) return ChainComplex(ring, 0, {});
  int lo = degree_rank.begin()->first, hi = degree_rank.rbegin()->first;
  std::vector<int> ranks(hi - lo + 1, 0);
  for (auto& [k, r] : degree_rank) {
    if (r < 0) throw SchemaError("complex: negative rank");
    ranks[k - lo] = r;
  }
  auto rank_at = [&](int k) {
    return (k < lo || k > hi) ? 0 : ranks[k - lo];
  };
  std::map<int, IntMat> diffs;
  if (j.contains("differentials"))
    for (auto& [key, val] : j.at("differentials").items()) {
      int k = std::stoi(key);
      diffs[k] = triples_from_json(val, rank_at(k - 1), rank_at(k),
                                   "differential");
    }
  std::map<int, std::vector<std::string>> labels;
  if (j.contains("labels"))
    for (auto& [key, val] : j.at("labels").items())
      labels[std::stoi(key)] = val.get<std::vector<std::string>>();
  return ChainComplex(ring, lo, std::move(ranks), std::move(diffs),
                      std::move(labels));
}

inline json mats_to_json(const ChainMap& f) {
  json out = json::object();
  for (int k = f.source().lo(); k <= f.source().hi(); ++k)
    if (!f.mat(k).is_zero())
      out[std::to_string(k)] = triples_to_json(f.mat(k));
  return out;
}

inline std::map<int, IntMat> mats_from_json(const json& j,
                                            const ChainComplex& src,
                                            const ChainComplex& tgt, int shift,
                                            const char* what) {
  std::map<int, IntMat> mats;
  if (j.is_null()) return mats;
  for (auto& [key, val] : j.items()) {
    int k = std::stoi(key);
    mats[k] = triples_from_json(val, tgt.rank(k + shift), src.rank(k), what);
  }
  return mats;
}

inline json filtration_to_json(const FilteredComplex& fc) {
  json out = json::object();
  const ChainComplex& c = fc.complex();
  for (int k = c.lo(); k <= c.hi(); ++k)
    if (c.rank(k) > 0) out[std::to_string(k)] = fc.levels(k);
  return out;
}

// ----- documents -----

struct Document {
  std::string kind;
  Ring ring = Ring::Z();
  std::optional<ChainComplex> complex;
  std::optional<FilteredComplex> filtered;
  std::optional<TwoLineComplex> two_line;
  std::optional<ChainMap> chain_map;
  std::optional<S1MorseDatum> s1_morse;
  std::optional<MorseBottS1Datum> mb_datum;
  std::optional<SESMorphism> ses_morphism;
  std::optional<LongExactSequence> les;
  std::optional<LesProblem> les_problem;
};

inline json envelope(const std::string& kind, const Ring& ring) {
  return json{{"schema_version", kSchemaVersion},
              {"kind", kind},
              {"ring", ring_to_json(ring)}};
}

inline json to_json(const ChainComplex& c) {
  json out = envelope("complex", c.ring());
  out.update(complex_body(c));
  return out;
}

inline json to_json(const FilteredComplex& fc) {
  json out = envelope("filtered_complex", fc.ring());
  out.update(complex_body(fc.complex()));
  out["filtration"] = filtration_to_json(fc);
  return out;
}

inline json to_json(const TwoLineComplex& t) {
  json out = envelope("two_line", t.A.ring());
  out["A"] = complex_body(t.A);
  out["Aprime"] = complex_body(t.Aprime);
  out["f"] = mats_to_json(t.f);
  return out;
}

inline json to_json(const ChainMap& f) {
  json out = envelope("chain_map", f.ring());
  out["shift"] = f.shift();
  out["source"] = complex_body(f.source());
  out["target"] = complex_body(f.target());
  out["mats"] = mats_to_json(f);
  return out;
}

inline json to_json(const S1MorseDatum& d) {
  json out = envelope("s1_morse_datum", d.ring);
  json circles = json::array();
  for (const auto& c : d.circles) {
    json jc{{"index", c.index}};
    if (!c.label.empty()) jc["label"] = c.label;
    circles.push_back(jc);
  }
  out["circles"] = circles;
  json counts = json::array();
  for (auto& [pr, v] : d.counts)
    counts.push_back(json::array({pr.first, pr.second, int_to_json(v)}));
  out["counts"] = counts;
  return out;
}

inline json to_json(const MorseBottS1Datum& d) {
  json out = envelope("mb_datum", d.ring);
  json orbits = json::array();
  for (const auto& o : d.orbits) {
    json jo{{"weight", o.weight}};
    if (o.sign)
      jo["sign"] = (*o.sign == ActionSign::Minus) ? "minus" : "plus";
    if (!o.label.empty()) jo["label"] = o.label;
    orbits.push_back(jo);
  }
  out["orbits"] = orbits;
  json d1 = json::array(), d2 = json::array();
  for (auto& [pr, v] : d.d1)
    d1.push_back(json::array({pr.first, pr.second, int_to_json(v)}));
  for (auto& [pr, v] : d.d2)
    d2.push_back(json::array({pr.first, pr.second, int_to_json(v)}));
  out["d1"] = d1;
  out["d2"] = d2;
  return out;
}

inline json ses_body(const SESData& s) {
  return json{{"A", complex_body(s.A)},   {"B", complex_body(s.B)},
              {"C", complex_body(s.C)},   {"i", mats_to_json(s.i)},
              {"p", mats_to_json(s.p)}};
}

inline json to_json(const SESMorphism& m) {
  json out = envelope("ses_morphism", m.src.ring());
  out["src"] = ses_body(m.src);
  out["dst"] = ses_body(m.dst);
  out["f"] = mats_to_json(m.f);
  out["g"] = mats_to_json(m.g);
  out["h"] = mats_to_json(m.h);
  return out;
}

inline json group_to_json(const FGAbelianGroup& g) {
  json t = json::array();
  for (const Int& d : g.torsion) t.push_back(int_to_json(d));
  return json{{"free_rank", g.free_rank}, {"torsion", t}};
}

inline FGAbelianGroup group_from_json(const json& j) {
  FGAbelianGroup g;
  g.free_rank = j.at("free_rank").get<int>();
  if (j.contains("torsion"))
    for (const json& d : j.at("torsion")) g.torsion.push_back(int_from_json(d));
  if (!g.chain_valid())
    throw SchemaError("group torsion is not an invariant-factor chain");
  return g;
}

inline json to_json(const LongExactSequence& les) {
  json out = envelope("les", les.ring);
  json entries = json::array();
  for (const auto& e : les.entries) {
    json je{{"label", e.label}, {"degree", e.degree}};
    je.update(group_to_json(e.group));
    entries.push_back(je);
  }
  out["entries"] = entries;
  json maps = json::array();
  for (const auto& m : les.maps) maps.push_back(rat_triples_to_json(m));
  out["maps"] = maps;
  if (!les.map_names.empty()) out["map_names"] = les.map_names;
  if (!les.note.empty()) out["note"] = les.note;
  return out;
}

inline LongExactSequence les_from_json(const json& j, const Ring& ring) {
  LongExactSequence les;
  les.ring = ring;
  for (const json& je : j.at("entries"))
    les.entries.push_back({je.value("label", std::string()),
                           je.at("degree").get<int>(), group_from_json(je)});
  const json& maps = j.at("maps");
  if (maps.size() + 1 != les.entries.size())
    throw SchemaError("les: expected one map fewer than entries");
  for (size_t i = 0; i < maps.size(); ++i) {
    int rows = ngens(les.entries[i + 1].group);
    int cols = ngens(les.entries[i].group);
    RatMat m(rows, cols);
    for (const json& t : maps[i]) {
      int r = t[0].get<int>(), c = t[1].get<int>();
      if (r < 0 || r >= rows || c < 0 || c >= cols)
        throw SchemaError("les: map triple out of bounds");
      m(r, c) = rat_from_json(t[2]);
    }
    les.maps.push_back(std::move(m));
  }
  if (j.contains("map_names"))
    les.map_names = j.at("map_names").get<std::vector<std::string>>();
  les.note = j.value("note", std::string());
  return les;
}

inline json to_json(const LesProblem& p) {
  json out{{"schema_version", kSchemaVersion}, {"kind", "les_problem"}};
  json slots = json::array();
  for (size_t i = 0; i < p.labels.size(); ++i) {
    json s{{"label", p.labels[i]}};
    if (p.dims[i]) s["dim"] = *p.dims[i];
    if (!p.group_id.empty()) s["id"] = p.group_id[i];
    slots.push_back(s);
  }
  out["slots"] = slots;
  json maps = json::array();
  for (const MapFact& m : p.maps) {
    json f = json::array();
    if (m.zero) f.push_back("zero");
    if (m.injective) f.push_back("injective");
    if (m.surjective) f.push_back("surjective");
    maps.push_back(f);
  }
  out["maps"] = maps;
  out["bounded"] = p.bounded;
  return out;
}

inline LesProblem les_problem_from_json(const json& j) {
  LesProblem p;
  bool any_id = false;
  for (const json& s : j.at("slots")) {
    p.labels.push_back(s.value("label", std::string()));
    if (s.contains("dim"))
      p.dims.push_back(s.at("dim").get<int>());
    else
      p.dims.push_back(std::nullopt);
    any_id |= s.contains("id");
  }
  if (any_id) {
    int next = 1000000;
    for (const json& s : j.at("slots"))
      p.group_id.push_back(s.contains("id") ? s.at("id").get<int>() : next++);
  }
  for (const json& f : j.at("maps")) {
    MapFact m;
    for (const json& w : f) {
      std::string s = w.get<std::string>();
      if (s == "zero") m.zero = true;
      else if (s == "injective") m.injective = true;
      else if (s == "surjective") m.surjective = true;
      else if (s == "iso") m.injective = m.surjective = true;
      else throw SchemaError("les_problem: unknown map fact " + s);
    }
    p.maps.push_back(m);
  }
  p.bounded = j.value("bounded", true);
  if (p.maps.size() + 1 != p.labels.size())
    throw SchemaError("les_problem: expected one map fewer than slots");
  return p;
}

inline Document parse_document(const json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw SchemaError("document: missing kind");
  Document doc;
  doc.kind = j.at("kind").get<std::string>();
  if (doc.kind == "les_problem") {
    doc.les_problem = les_problem_from_json(j);
    return doc;
  }
  if (!j.contains("ring")) throw SchemaError("document: missing ring");
  doc.ring = ring_from_json(j.at("ring"));
  if (doc.kind == "complex") {
    doc.complex = complex_from_body(j, doc.ring);
  } else if (doc.kind == "filtered_complex") {
    ChainComplex c = complex_from_body(j, doc.ring);
    std::map<int, std::vector<int>> lv;
    for (auto& [key, val] : j.at("filtration").items())
      lv[std::stoi(key)] = val.get<std::vector<int>>();
    doc.filtered = FilteredComplex(std::move(c), std::move(lv));
  } else if (doc.kind == "two_line") {
    ChainComplex A = complex_from_body(j.at("A"), doc.ring);
    ChainComplex Ap = complex_from_body(j.at("Aprime"), doc.ring);
    auto mats = mats_from_json(j.value("f", json()), A, Ap, -2, "f");
    doc.two_line = make_two_line(A, Ap, ChainMap(A, Ap, -2, std::move(mats)));
  } else if (doc.kind == "chain_map") {
    int shift = j.value("shift", 0);
    ChainComplex src = complex_from_body(j.at("source"), doc.ring);
    ChainComplex tgt = complex_from_body(j.at("target"), doc.ring);
    auto mats = mats_from_json(j.value("mats", json()), src, tgt, shift, "mats");
    doc.chain_map = ChainMap(src, tgt, shift, std::move(mats));
  } else if (doc.kind == "s1_morse_datum") {
    S1MorseDatum d;
    d.ring = doc.ring;
    for (const json& c : j.at("circles"))
      d.circles.push_back(
          {c.at("index").get<int>(), c.value("label", std::string())});
    for (const json& t : j.value("counts", json::array()))
      d.counts[{t[0].get<int>(), t[1].get<int>()}] = int_from_json(t[2]);
    assemble_s1_morse(d);  // validates
    doc.s1_morse = std::move(d);
  } else if (doc.kind == "mb_datum") {
    MorseBottS1Datum d;
    d.ring = doc.ring;
    for (const json& o : j.at("orbits")) {
      MorseBottS1Datum::Orbit orb;
      orb.weight = o.at("weight").get<int>();
      if (o.contains("sign")) {
        std::string s = o.at("sign").get<std::string>();
        if (s == "minus") orb.sign = ActionSign::Minus;
        else if (s == "plus") orb.sign = ActionSign::Plus;
        else throw SchemaError("mb_datum: unknown sign " + s);
      }
      orb.label = o.value("label", std::string());
      d.orbits.push_back(std::move(orb));
    }
    for (const json& t : j.value("d1", json::array()))
      d.d1[{t[0].get<int>(), t[1].get<int>()}] = int_from_json(t[2]);
    for (const json& t : j.value("d2", json::array()))
      d.d2[{t[0].get<int>(), t[1].get<int>()}] = int_from_json(t[2]);
    validate_mb_datum(d);
    doc.mb_datum = std::move(d);
  } else if (doc.kind == "ses_morphism") {
    auto read_ses = [&](const json& js) {
      ChainComplex A = complex_from_body(js.at("A"), doc.ring);
      ChainComplex B = complex_from_body(js.at("B"), doc.ring);
      ChainComplex C = complex_from_body(js.at("C"), doc.ring);
      ChainMap i(A, B, 0, mats_from_json(js.at("i"), A, B, 0, "i"));
      ChainMap p(B, C, 0, mats_from_json(js.at("p"), B, C, 0, "p"));
      return make_ses(A, B, C, i, p);
    };
    SESData src = read_ses(j.at("src")), dst = read_ses(j.at("dst"));
    ChainMap f(src.A, dst.A, 0, mats_from_json(j.at("f"), src.A, dst.A, 0, "f"));
    ChainMap g(src.B, dst.B, 0, mats_from_json(j.at("g"), src.B, dst.B, 0, "g"));
    ChainMap h(src.C, dst.C, 0, mats_from_json(j.at("h"), src.C, dst.C, 0, "h"));
    doc.ses_morphism = make_ses_morphism(src, dst, f, g, h);
  } else if (doc.kind == "les") {
    doc.les = les_from_json(j, doc.ring);
  } else {
    throw SchemaError("unknown document kind: " + doc.kind);
  }
  return doc;
}

inline json example_to_json(const gen::ExampleObject& e) {
  if (e.complex) return to_json(*e.complex);
  if (e.two_line) return to_json(*e.two_line);
  if (e.datum) return to_json(*e.datum);
  if (e.morphism) return to_json(*e.morphism);
  throw Error("example produced no object");
}

}  // namespace gysin::io
