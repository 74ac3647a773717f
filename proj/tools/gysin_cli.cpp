// Batch command-line surface for the toolkit: load documents, run any
// pipeline, emit human tables or machine JSON. Exit codes: 0 success,
// 1 domain error (invalid data, exactness failure), 2 usage/IO error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "gysin/gysin.hpp"

using namespace gysin;
using io::json;

namespace {

struct Options {
  std::string in, out;
  std::string ring = "Z";
  int pages = 3;
  std::string format = "table";
  uint64_t seed = 0;
  int size = 8;
};

Ring parse_ring(const std::string& s) {
  if (s == "Z") return Ring::Z();
  if (s == "Q") return Ring::Q();
  if (s.rfind("Z/", 0) == 0) return Ring::Zp(Int(s.substr(2)));
  if (s.rfind("Zp", 0) == 0) return Ring::Zp(Int(s.substr(2)));
  throw BadParams("unknown ring '" + s + "' (use Z, Q, or Z/p)");
}

std::string read_input(const Options& opt) {
  if (opt.in.empty() || opt.in == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream f(opt.in);
  if (!f) throw SchemaError("cannot open input file: " + opt.in);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

json read_json(const Options& opt) {
  try {
    return json::parse(read_input(opt));
  } catch (const json::exception& e) {
    throw SchemaError(std::string("JSON parse error: ") + e.what());
  }
}

io::Document read_doc(const Options& opt) {
  return io::parse_document(read_json(opt));
}

void emit(const Options& opt, const std::string& text) {
  if (opt.out.empty() || opt.out == "-") {
    std::cout << text << "\n";
    return;
  }
  std::ofstream f(opt.out);
  if (!f) throw SchemaError("cannot open output file: " + opt.out);
  f << text << "\n";
}

void emit_json(const Options& opt, const json& j) { emit(opt, j.dump(2)); }

bool table(const Options& opt) { return opt.format == "table"; }

std::string homology_line(const ChainComplex& c) {
  Homology h(c);
  std::string s;
  for (int k = c.lo(); k <= c.hi(); ++k) {
    if (!s.empty()) s += " ";
    s += "H" + std::to_string(k) + "=" + h.group(k).to_string();
  }
  return s.empty() ? "(empty complex)" : s;
}

json homology_json(const ChainComplex& c) {
  Homology h(c);
  json out = json::object();
  for (int k = c.lo(); k <= c.hi(); ++k)
    out[std::to_string(k)] = io::group_to_json(h.group(k));
  return out;
}

std::string les_table(const LongExactSequence& les) {
  std::ostringstream ss;
  for (size_t i = 0; i < les.entries.size(); ++i) {
    const auto& e = les.entries[i];
    ss << e.label << "[" << e.degree << "] = " << e.group.to_string();
    if (i + 1 < les.entries.size()) {
      std::string name =
          i < les.map_names.size() ? les.map_names[i] : std::string("->");
      ss << "   --" << name << "-->\n";
    }
  }
  if (!les.note.empty()) ss << "\nnote: " << les.note;
  return ss.str();
}

json report_envelope(const std::string& command, bool ok) {
  return json{{"schema_version", io::kSchemaVersion},
              {"command", command},
              {"ok", ok}};
}

ChainComplex need_complex(const io::Document& doc) {
  if (doc.complex) return *doc.complex;
  if (doc.filtered) return doc.filtered->complex();
  throw SchemaError("this command needs a complex document");
}

MorseBottS1Datum need_mb(const io::Document& doc) {
  if (!doc.mb_datum) throw SchemaError("this command needs an mb_datum document");
  return *doc.mb_datum;
}

json pages_json(const SpectralPages& ps, int r_max) {
  json out = json::object();
  json pages = json::object();
  for (int r = 0; r <= r_max; ++r) {
    json page = json::array();
    for (int n = ps.filtered().complex().lo();
         n <= ps.filtered().complex().hi(); ++n)
      for (int p = ps.pmin(); p <= ps.pmax(); ++p) {
        const PageEntry& e = ps.at(r, p, n - p);
        if (e.pres.ngens() == 0) continue;
        page.push_back(json{{"p", p},
                            {"q", n - p},
                            {"group", io::group_to_json(e.group())},
                            {"d", io::triples_to_json(ps.dmat(r, p, n - p))}});
      }
    pages[std::to_string(r)] = page;
  }
  out["pages"] = pages;
  out["stable_page"] = ps.r_stab();
  json einf = json::array(), graded = json::array(), htot = json::object();
  for (int n = ps.filtered().complex().lo();
       n <= ps.filtered().complex().hi(); ++n) {
    htot[std::to_string(n)] = io::group_to_json(ps.h_total(n));
    for (int p = ps.pmin(); p <= ps.pmax(); ++p) {
      if (!ps.einf(p, n - p).group().is_trivial())
        einf.push_back(
            json{{"p", p},
                 {"q", n - p},
                 {"group", io::group_to_json(ps.einf(p, n - p).group())}});
      if (!ps.h_graded(p, n - p).is_trivial())
        graded.push_back(
            json{{"p", p},
                 {"q", n - p},
                 {"group", io::group_to_json(ps.h_graded(p, n - p))}});
    }
  }
  out["einf"] = einf;
  out["h_total"] = htot;
  out["h_graded"] = graded;
  return out;
}

std::string pages_table(const SpectralPages& ps, int r_max) {
  std::ostringstream ss;
  for (int r = 0; r <= r_max; ++r) {
    ss << "page " << r << ":\n";
    for (int n = ps.filtered().complex().lo();
         n <= ps.filtered().complex().hi(); ++n)
      for (int p = ps.pmin(); p <= ps.pmax(); ++p) {
        const PageEntry& e = ps.at(r, p, n - p);
        if (e.pres.ngens() == 0) continue;
        ss << "  E^" << r << "(" << p << "," << (n - p)
           << ") = " << e.group().to_string();
        IntMat d = ps.dmat(r, p, n - p);
        if (!d.is_zero()) ss << "   d = " << d.to_string();
        ss << "\n";
      }
  }
  ss << "stable from page " << ps.r_stab() << "; total homology:";
  for (int n = ps.filtered().complex().lo();
       n <= ps.filtered().complex().hi(); ++n)
    ss << " H" << n << "=" << ps.h_total(n).to_string();
  return ss.str();
}

int run_command(const std::string& cmd, const Options& opt) {
  if (cmd == "validate") {
    io::Document doc = read_doc(opt);
    if (table(opt)) {
      emit(opt, "ok: valid " + doc.kind + " document");
    } else {
      json out = report_envelope("validate", true);
      out["kind"] = doc.kind;
      emit_json(opt, out);
    }
    return 0;
  }
  if (cmd == "homology") {
    ChainComplex c = need_complex(read_doc(opt));
    if (table(opt)) {
      emit(opt, homology_line(c));
    } else {
      json out = report_envelope("homology", true);
      out["ring"] = io::ring_to_json(c.ring());
      out["groups"] = homology_json(c);
      emit_json(opt, out);
    }
    return 0;
  }
  if (cmd == "cone") {
    io::Document doc = read_doc(opt);
    if (!doc.chain_map) throw SchemaError("cone needs a chain_map document");
    ChainComplex c = cone(*doc.chain_map);
    if (table(opt)) emit(opt, "cone homology: " + homology_line(c));
    else emit_json(opt, io::to_json(c));
    return 0;
  }
  if (cmd == "snake") {
    io::Document doc = read_doc(opt);
    if (!doc.chain_map)
      throw SchemaError(
          "snake needs a chain_map document (its cone sequence is used)");
    SnakeResult sn = snake_les(cone_ses(*doc.chain_map), "A'[1]", "cone", "A");
    if (table(opt)) {
      emit(opt, les_table(sn.les));
    } else {
      json out = report_envelope("snake", true);
      out["les"] = io::to_json(sn.les);
      emit_json(opt, out);
    }
    return 0;
  }
  if (cmd == "grid57") {
    io::Document doc = read_doc(opt);
    if (!doc.ses_morphism)
      throw SchemaError("grid57 needs a ses_morphism document");
    GridReport rep = grid_les(*doc.ses_morphism);
    if (table(opt)) {
      std::ostringstream ss;
      ss << (rep.ok ? "ok" : "FAIL: " + rep.first_failure) << "\n"
         << rep.squares.size() << " squares checked";
      emit(opt, ss.str());
    } else {
      json out = report_envelope("grid57", rep.ok);
      out["first_failure"] = rep.first_failure;
      json sq = json::array();
      for (const auto& s : rep.squares)
        sq.push_back(json{{"name", s.name},
                          {"degree", s.degree},
                          {"anti", s.anti},
                          {"ok", s.ok}});
      out["squares"] = sq;
      out["rows"] =
          json::array({io::to_json(rep.row_top), io::to_json(rep.row_cones),
                       io::to_json(rep.row_base)});
      out["columns"] = json::array({io::to_json(rep.col_a),
                                    io::to_json(rep.col_b),
                                    io::to_json(rep.col_c)});
      emit_json(opt, out);
    }
    return rep.ok ? 0 : 1;
  }
  if (cmd == "spectral") {
    io::Document doc = read_doc(opt);
    if (!doc.filtered)
      throw SchemaError("spectral needs a filtered_complex document");
    SpectralPages ps(*doc.filtered, opt.pages);
    if (table(opt)) {
      emit(opt, pages_table(ps, opt.pages));
    } else {
      json out = report_envelope("spectral", true);
      out.update(pages_json(ps, opt.pages));
      emit_json(opt, out);
    }
    return 0;
  }
  if (cmd == "gysin") {
    io::Document doc = read_doc(opt);
    if (!doc.two_line) throw SchemaError("gysin needs a two_line document");
    GysinResult gy = gysin_from_two_line(*doc.two_line);
    if (table(opt)) {
      emit(opt, les_table(gy.les));
    } else {
      json out = report_envelope("gysin", true);
      out["les"] = io::to_json(gy.les);
      emit_json(opt, out);
    }
    return 0;
  }
  if (cmd == "check-lemma58") {
    io::Document doc = read_doc(opt);
    if (!doc.two_line)
      throw SchemaError("check-lemma58 needs a two_line document");
    EquivalenceReport rep = check_cone_equals_gysin(*doc.two_line);
    if (table(opt)) {
      emit(opt, rep.ok ? "ok: cone and Gysin sequences coincide"
                       : "MISMATCH: " + rep.detail);
    } else {
      json out = report_envelope("check-lemma58", rep.ok);
      out["groups_match"] = rep.groups_match;
      out["I_matches"] = rep.I_matches;
      out["P_matches"] = rep.P_matches;
      out["D_matches"] = rep.D_matches;
      out["detail"] = rep.detail;
      out["cone_les"] = io::to_json(rep.cone_les);
      out["gysin_les"] = io::to_json(rep.gysin_les);
      emit_json(opt, out);
    }
    return rep.ok ? 0 : 1;
  }
  if (cmd == "equivariant") {
    io::Document doc = read_doc(opt);
    if (!doc.s1_morse)
      throw SchemaError("equivariant needs an s1_morse_datum document");
    ChainComplex c = assemble_s1_morse(*doc.s1_morse);
    if (table(opt)) {
      emit(opt, homology_line(c));
    } else {
      json out = report_envelope("equivariant", true);
      out["complex"] = io::to_json(c);
      out["groups"] = homology_json(c);
      emit_json(opt, out);
    }
    return 0;
  }
  if (cmd == "mb-assemble") {
    FilteredComplex fc = assemble_morse_bott(need_mb(read_doc(opt)));
    if (table(opt)) emit(opt, homology_line(fc.complex()));
    else emit_json(opt, io::to_json(fc));
    return 0;
  }
  if (cmd == "phi") {
    PhiReport rep = phi_e1(need_mb(read_doc(opt)));
    if (table(opt)) {
      emit(opt, rep.ok ? "ok: page-1 identification certified"
                       : "FAIL: " + rep.detail);
    } else {
      json out = report_envelope("phi", rep.ok);
      out["detail"] = rep.detail;
      json phis = json::array();
      for (auto& [pq, m] : rep.phi)
        phis.push_back(json{{"p", pq.first},
                            {"q", pq.second},
                            {"matrix", io::triples_to_json(m)}});
      out["phi"] = phis;
      emit_json(opt, out);
    }
    return rep.ok ? 0 : 1;
  }
  if (cmd == "theorem11") {
    GysinResult gy = equivariant_gysin(need_mb(read_doc(opt)));
    if (table(opt)) {
      emit(opt, les_table(gy.les));
    } else {
      json out = report_envelope("theorem11", true);
      out["les"] = io::to_json(gy.les);
      emit_json(opt, out);
    }
    return 0;
  }
  if (cmd == "bv") {
    auto [delta, rep] = bv_delta(need_mb(read_doc(opt)));
    bool ok = rep.chain_map && rep.squares_to_zero && rep.equals_m_after_e;
    if (table(opt)) {
      std::ostringstream ss;
      ss << (ok ? "ok" : "FAIL") << ": chain_map=" << rep.chain_map
         << " squares_to_zero=" << rep.squares_to_zero
         << " equals_M_after_E=" << rep.equals_m_after_e;
      if (!rep.detail.empty()) ss << " (" << rep.detail << ")";
      emit(opt, ss.str());
    } else {
      json out = report_envelope("bv", ok);
      out["chain_map"] = rep.chain_map;
      out["squares_to_zero"] = rep.squares_to_zero;
      out["equals_M_after_E"] = rep.equals_m_after_e;
      out["detail"] = rep.detail;
      out["delta"] = io::to_json(delta);
      emit_json(opt, out);
    }
    return ok ? 0 : 1;
  }
  if (cmd == "borel") {
    ChainComplex c = need_complex(read_doc(opt));
    auto [model, rep] = borel_trivial_action(c, opt.size);
    bool ok = rep.groups_split && rep.d_is_projection;
    if (table(opt)) {
      std::ostringstream ss;
      ss << (ok ? "ok" : "FAIL") << ": " << homology_line(model);
      if (!rep.detail.empty()) ss << " (" << rep.detail << ")";
      emit(opt, ss.str());
    } else {
      json out = report_envelope("borel", ok);
      out["groups_split"] = rep.groups_split;
      out["d_is_projection"] = rep.d_is_projection;
      out["detail"] = rep.detail;
      out["model"] = io::to_json(model);
      emit_json(opt, out);
    }
    return ok ? 0 : 1;
  }
  if (cmd == "diagram17") {
    DiagramReport rep = gysin_diagram_check(need_mb(read_doc(opt)));
    if (table(opt)) {
      emit(opt, rep.ok ? "ok: diagram checks pass" : "FAIL: " + rep.detail);
    } else {
      json out = report_envelope("diagram17", rep.ok);
      out["detail"] = rep.detail;
      json sq = json::array();
      for (const auto& s : rep.grid.squares)
        sq.push_back(json{{"name", s.name},
                          {"degree", s.degree},
                          {"anti", s.anti},
                          {"ok", s.ok}});
      out["squares"] = sq;
      emit_json(opt, out);
    }
    return rep.ok ? 0 : 1;
  }
  if (cmd == "solve") {
    io::Document doc = read_doc(opt);
    if (!doc.les_problem)
      throw SchemaError("solve needs a les_problem document");
    SolvedReport rep = les_solve(*doc.les_problem);
    if (table(opt)) {
      std::ostringstream ss;
      for (size_t i = 0; i < rep.dims.size(); ++i) {
        ss << doc.les_problem->labels[i] << "="
           << (rep.dims[i] ? std::to_string(*rep.dims[i]) : "?");
        if (i + 1 < rep.dims.size()) {
          const MapFact& m = rep.maps[i];
          ss << " --["
             << (m.is_iso() ? "iso"
                 : m.zero  ? "0"
                 : m.injective ? "inj"
                 : m.surjective ? "surj"
                               : "?")
             << "]--> ";
        }
      }
      ss << "\ndeductions:";
      for (const auto& d : rep.deductions) ss << "\n  " << d;
      emit(opt, ss.str());
    } else {
      json out = report_envelope("solve", true);
      json dims = json::array();
      for (auto& d : rep.dims) dims.push_back(d ? json(*d) : json(nullptr));
      out["dims"] = dims;
      json maps = json::array();
      for (auto& m : rep.maps)
        maps.push_back(json{{"zero", m.zero},
                            {"injective", m.injective},
                            {"surjective", m.surjective}});
      out["maps"] = maps;
      out["deductions"] = rep.deductions;
      emit_json(opt, out);
    }
    return 0;
  }
  if (cmd == "order") {
    json j = read_json(opt);
    if (j.value("kind", "") != "chain_map")
      throw SchemaError(
          "order needs a chain_map document whose source and target carry "
          "filtration data");
    Ring ring = io::ring_from_json(j.at("ring"));
    auto read_filtered = [&](const json& body) {
      ChainComplex c = io::complex_from_body(body, ring);
      if (!body.contains("filtration"))
        throw SchemaError("order: source/target need a filtration field");
      std::map<int, std::vector<int>> lv;
      for (auto& [key, val] : body.at("filtration").items())
        lv[std::stoi(key)] = val.get<std::vector<int>>();
      return FilteredComplex(std::move(c), std::move(lv));
    };
    FilteredComplex src = read_filtered(j.at("source"));
    FilteredComplex tgt = read_filtered(j.at("target"));
    int shift = j.value("shift", 0);
    auto mats = io::mats_from_json(j.value("mats", json()), src.complex(),
                                   tgt.complex(), shift, "mats");
    // the order is defined for arbitrary graded maps, homotopies included
    ChainMap f(src.complex(), tgt.complex(), shift, std::move(mats), false);
    int k = filtered_order(src, tgt, f);
    if (table(opt)) {
      emit(opt, "order = " + std::to_string(k));
    } else {
      json out = report_envelope("order", true);
      out["order"] = k;
      emit_json(opt, out);
    }
    return 0;
  }
  throw BadParams("unknown subcommand: " + cmd);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact homological algebra toolkit"};
  app.require_subcommand(1);
  Options opt;
  std::string example_spec;

  const std::vector<std::string> commands = {
      "homology",    "cone",        "snake",       "grid57",
      "spectral",    "gysin",       "check-lemma58", "equivariant",
      "mb-assemble", "phi",         "theorem11",   "bv",
      "borel",       "diagram17",   "solve",       "order",
      "example",     "validate"};
  std::map<std::string, CLI::App*> subs;
  for (const auto& name : commands) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--in", opt.in, "input document (default: stdin)");
    sub->add_option("--out", opt.out, "output file (default: stdout)");
    sub->add_option("--ring", opt.ring, "coefficients: Z, Q, or Z/p");
    sub->add_option("--pages", opt.pages, "pages to report (spectral)");
    sub->add_option("--format", opt.format, "json or table")
        ->check(CLI::IsMember({"json", "table"}));
    sub->add_option("--seed", opt.seed, "seed for random examples");
    sub->add_option("--size", opt.size,
                    "size for random examples; truncation level for borel");
    if (name == "example")
      sub->add_option("spec", example_spec,
                      "example name: point, circle, sphere(n), cpn(N), rp2, "
                      "hopf, morse_bott_hopf, trivial_borel(inner,N), "
                      "random_complex(seed,size), random_two_line(seed,size), "
                      "random_ses_morphism(seed,size), "
                      "random_mb_datum(seed,size)");
    subs[name] = sub;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::string cmd;
  for (const auto& [name, sub] : subs)
    if (sub->parsed()) cmd = name;

  try {
    if (cmd == "example") {
      if (example_spec.empty())
        throw BadParams("example needs a spec argument");
      std::string spec = example_spec;
      if (spec.find('(') == std::string::npos && spec.rfind("random_", 0) == 0)
        spec += "(" + std::to_string(opt.seed) + "," +
                std::to_string(opt.size) + ")";
      gen::ExampleObject e = gen::generate(spec, parse_ring(opt.ring));
      emit_json(opt, io::example_to_json(e));
      return 0;
    }
    return run_command(cmd, opt);
  } catch (const SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const BadParams& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
