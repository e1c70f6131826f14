#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "chevalley/json_io.hpp"
#include "chevalley/suites.hpp"

using namespace chevalley;

namespace {

int g_exit = 0;

Json load_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw parse_error("cannot read " + path);
  try {
    return Json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    throw parse_error("invalid JSON in " + path + ": " + e.what());
  }
}

void emit(const Json& j, const std::string& outpath) {
  std::string s = j.dump(2) + "\n";
  if (outpath.empty()) {
    std::cout << s;
    return;
  }
  std::ofstream f(outpath);
  if (!f) throw error("cannot write " + outpath);
  f << s;
}

char parse_type(const std::string& t) {
  if (t.size() != 1) throw invalid_type("type must be a single letter, got: " + t);
  return t[0];
}

long parse_int(const std::string& s) {
  try {
    std::size_t used = 0;
    long v = std::stol(s, &used);
    if (used != s.size()) throw parse_error("bad integer: " + s);
    return v;
  } catch (const std::exception&) {
    throw parse_error("bad integer: " + s);
  }
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

AlgebraPtr make_alg(char type, int rank, const RingPtr& ring) {
  return LieAlgebra::make(build_structure_table(build_root_system(type, rank)), ring);
}

AlgebraPtr alg_from_file_header(const Json& j) {
  if (!j.contains("type") || !j["type"].is_string() || !j.contains("rank") ||
      !j["rank"].is_number_integer())
    throw parse_error("file needs type and rank fields");
  RingPtr ring = j.contains("ring") ? parse_ring(j["ring"].get<std::string>()) : Ring::rationals();
  return make_alg(parse_type(j["type"].get<std::string>()), j["rank"].get<int>(), ring);
}

struct Opts {
  std::string type = "A";
  int rank = 2;
  std::string ring = "Q";
  std::uint64_t seed = 0;
  long count = 0;
  bool timings = false;
  std::string out;
  std::string file;
  std::string check;
  std::string kind;
  std::string coords;
  std::string delta;
  std::string word;
  std::string sigma;
  std::string in;
  std::string at = "0";
  long atm = 3;
  long p = 2, q = 3, d = 1;
  // cross-check flags for file-driven subcommands
  std::string xtype;
  int xrank = -1;
  std::string xring;
};

void cross_check(const Json& j, const Opts& o) {
  if (!o.xtype.empty() && (!j.contains("type") || j["type"].get<std::string>() != o.xtype))
    throw parse_error("--type does not match the file");
  if (o.xrank >= 0 && (!j.contains("rank") || j["rank"].get<int>() != o.xrank))
    throw parse_error("--rank does not match the file");
  if (!o.xring.empty()) {
    std::string have = j.contains("ring") ? j["ring"].get<std::string>() : "Q";
    if (ring_descriptor(parse_ring(have)) != ring_descriptor(parse_ring(o.xring)))
      throw parse_error("--ring does not match the file");
  }
}

int run_suites(const std::vector<std::string>& names, const Opts& o) {
  SuiteConfig cfg;
  cfg.type = parse_type(o.type);
  cfg.rank = o.rank;
  cfg.ring = parse_ring(o.ring);
  cfg.seed = o.seed;
  cfg.count = o.count;
  if (cfg.rank < 2) throw unsupported("suite runs require rank >= 2");

  Json suites = Json::object();
  long passed = 0, failed = 0;
  for (const std::string& name : names) {
    auto t0 = std::chrono::steady_clock::now();
    CheckReport rep = run_suite(name, cfg);
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    Json rj = report_to_json(rep);
    if (o.timings) rj["duration_ms"] = ms;
    suites[name] = std::move(rj);
    passed += rep.passed;
    failed += rep.failed;
    std::cerr << "suite " << name << ": " << rep.passed << " passed, " << rep.failed
              << " failed (" << ms << " ms)\n";
  }
  Json out{{"format", "chevalley-report"},
           {"type", std::string(1, cfg.type)},
           {"rank", cfg.rank},
           {"ring", ring_descriptor(cfg.ring)},
           {"seed", cfg.seed},
           {"suites", std::move(suites)},
           {"passed", passed},
           {"failed", failed}};
  emit(out, o.out);
  std::cerr << "total: " << passed << " passed, " << failed << " failed\n";
  return failed == 0 ? 0 : 1;
}

SemilinearAut load_automorphism(const Opts& o) {
  Json j = load_json(o.file);
  cross_check(j, o);
  return aut_from_json(j);
}

void require_automorphism(const SemilinearAut& f) {
  if (!is_semilinear_automorphism(f))
    throw not_an_automorphism("the loaded matrix does not preserve the bracket");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Chevalley algebra and group calculator"};
  app.require_subcommand(1);
  Opts o;

  auto add_system = [&](CLI::App* c) {
    c->add_option("--type", o.type, "root system type letter (A..G)");
    c->add_option("--rank", o.rank, "root system rank");
  };
  auto add_ring = [&](CLI::App* c) {
    c->add_option("--ring", o.ring, "coefficient ring descriptor (Q, Q^d, Q[t], Q[t]/(t^k))");
  };
  auto add_out = [&](CLI::App* c) { c->add_option("--out", o.out, "write JSON here instead of stdout"); };
  auto add_seed = [&](CLI::App* c) {
    c->add_option("--seed", o.seed, "random seed")->envname("CHEVALLEY_SEED");
    c->add_option("--count", o.count, "sample count override for randomized suites");
  };
  auto add_crosscheck = [&](CLI::App* c) {
    c->add_option("--type", o.xtype, "cross-check: expected root system type");
    c->add_option("--rank", o.xrank, "cross-check: expected rank");
    c->add_option("--ring", o.xring, "cross-check: expected ring descriptor");
  };

  // ---- roots ----
  CLI::App* roots = app.add_subcommand("roots", "root system data");
  CLI::App* roots_show = roots->add_subcommand("show", "enumerate roots, Cartan matrix, symmetries");
  add_system(roots_show);
  add_out(roots_show);
  roots_show->callback([&] {
    RootSystemPtr rs = build_root_system(parse_type(o.type), o.rank);
    Json cartan = Json::array();
    for (int i = 0; i < rs->rank; ++i) {
      Json row = Json::array();
      for (int j = 0; j < rs->rank; ++j) row.push_back(rs->cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
      cartan.push_back(std::move(row));
    }
    Json roots_js = Json::array();
    for (int k = 0; k < rs->count(); ++k) {
      Json coord = Json::array();
      for (long v : rs->coord(k)) coord.push_back(v);
      roots_js.push_back(Json{{"label", rs->label(k)},
                              {"coord", std::move(coord)},
                              {"height", rs->height(k)}});
    }
    Json syms = Json::array();
    for (const DynkinSymmetry& d : dynkin_symmetries(*rs)) {
      Json s = Json::array();
      for (int v : d) s.push_back(v + 1);
      syms.push_back(std::move(s));
    }
    emit(Json{{"format", "chevalley-roots"},
              {"type", std::string(1, rs->type)},
              {"rank", rs->rank},
              {"count", rs->count()},
              {"positive", rs->npos},
              {"cartan", std::move(cartan)},
              {"roots", std::move(roots_js)},
              {"symmetries", std::move(syms)}},
         o.out);
  });

  // ---- algebra ----
  CLI::App* algebra = app.add_subcommand("algebra", "structure tables and their verification");
  CLI::App* algebra_build = algebra->add_subcommand("build", "emit the structure table as JSON");
  add_system(algebra_build);
  add_out(algebra_build);
  algebra_build->callback([&] {
    emit(table_to_json(build_structure_table(build_root_system(parse_type(o.type), o.rank))),
         o.out);
  });
  CLI::App* algebra_verify =
      algebra->add_subcommand("verify", "check a loaded table: jacobi or antisymmetry");
  algebra_verify->add_option("check", o.check, "jacobi | antisymmetry")->required();
  algebra_verify->add_option("file", o.file, "table JSON path")->required();
  add_ring(algebra_verify);
  add_out(algebra_verify);
  algebra_verify->callback([&] {
    StructureTable t = table_from_json(load_json(o.file));
    CheckReport rep;
    if (o.check == "jacobi")
      rep = verify_jacobi(t, parse_ring(o.ring));
    else if (o.check == "antisymmetry")
      rep = verify_antisymmetry(t, parse_ring(o.ring));
    else
      throw parse_error("unknown check: " + o.check);
    emit(report_to_json(rep), o.out);
    std::cerr << "suite " << rep.suite << ": " << rep.passed << " passed, " << rep.failed
              << " failed\n";
    g_exit = rep.ok() ? 0 : 1;
  });

  // ---- group ----
  CLI::App* group = app.add_subcommand("group", "elementary group elements and unipotence");
  CLI::App* group_steinberg = group->add_subcommand("steinberg", "generator relation grid");
  add_system(group_steinberg);
  add_ring(group_steinberg);
  add_out(group_steinberg);
  group_steinberg->callback([&] {
    AlgebraPtr alg = make_alg(parse_type(o.type), o.rank, parse_ring(o.ring));
    CheckReport rep = verify_steinberg(alg, default_steinberg_samples(alg->roots()));
    emit(report_to_json(rep), o.out);
    g_exit = rep.ok() ? 0 : 1;
  });
  CLI::App* group_certify =
      group->add_subcommand("certify", "unipotence certificate for a group element file");
  group_certify->add_option("file", o.file, "group element JSON path")->required();
  group_certify->add_option("--p", o.p, "first power probe");
  group_certify->add_option("--q", o.q, "base of the second power probe");
  group_certify->add_option("--d", o.d, "exponent of the second power probe");
  add_out(group_certify);
  group_certify->callback([&] {
    Json j = load_json(o.file);
    AlgebraPtr alg = alg_from_file_header(j);
    GroupElement g = group_from_json(alg, j);
    Lemma1Result res = lemma1_certificate(g.m, o.p, o.q, o.d, alg->dim);
    const char* kind = res.kind == Lemma1Result::Kind::certified         ? "certified"
                       : res.kind == Lemma1Result::Kind::hypothesis_failed ? "hypothesis_failed"
                                                                           : "inconclusive";
    emit(Json{{"kind", kind}, {"m", res.m}}, o.out);
  });
  CLI::App* group_power =
      group->add_subcommand("power", "evaluate the formal power polynomial at an integer");
  group_power->add_option("file", o.file, "group element JSON path")->required();
  group_power->add_option("--at", o.atm, "exponent to evaluate at");
  add_out(group_power);
  group_power->callback([&] {
    Json j = load_json(o.file);
    AlgebraPtr alg = alg_from_file_header(j);
    GroupElement g = group_from_json(alg, j);
    Matrix<RElem> P = unipotent_power_polynomial(g.m, "m");
    Matrix<RElem> direct = Matrix<RElem>::identity(alg->dim, RElem::one(alg->ring));
    Matrix<RElem> step = o.atm < 0 ? group_inverse(g).m : g.m;
    for (long i = 0; i < (o.atm < 0 ? -o.atm : o.atm); ++i) direct = direct * step;
    Matrix<RElem> evaluated(alg->dim, alg->dim, RElem::zero(alg->ring));
    for (int i = 0; i < alg->dim; ++i)
      for (int k = 0; k < alg->dim; ++k)
        evaluated.at(i, k) = eval_poly(P.at(i, k), RElem::integer(alg->ring, o.atm));
    bool matches = evaluated == direct;
    emit(Json{{"at", o.atm}, {"matches", matches}, {"power", matrix_to_json(evaluated)}}, o.out);
    g_exit = matches ? 0 : 1;
  });

  // ---- curves ----
  CLI::App* curves = app.add_subcommand("curves", "polynomial curves in the elementary group");
  CLI::App* curves_tangent = curves->add_subcommand("tangent", "tangent vector of a curve file");
  curves_tangent->add_option("file", o.file, "curve JSON path")->required();
  add_out(curves_tangent);
  curves_tangent->callback([&] {
    Json j = load_json(o.file);
    AlgebraPtr base = alg_from_file_header(j);
    Curve c = curve_from_json(curve_space(base), j);
    LieElement v = tangent_vector(c);
    Json out = lie_to_json(v);
    out["level"] = c.level;
    emit(out, o.out);
  });
  CLI::App* curves_evaluate = curves->add_subcommand("evaluate", "evaluate a curve at a rational");
  curves_evaluate->add_option("file", o.file, "curve JSON path")->required();
  curves_evaluate->add_option("--at", o.at, "parameter value (rational)");
  add_out(curves_evaluate);
  curves_evaluate->callback([&] {
    Json j = load_json(o.file);
    AlgebraPtr base = alg_from_file_header(j);
    Curve c = curve_from_json(curve_space(base), j);
    GroupElement g = evaluate(c, RElem::constant(base->ring, parse_rat(o.at)));
    emit(group_to_json(g), o.out);
  });
  CLI::App* curves_level = curves->add_subcommand("level", "filtration level of a curve file");
  curves_level->add_option("file", o.file, "curve JSON path")->required();
  add_out(curves_level);
  curves_level->callback([&] {
    Json j = load_json(o.file);
    AlgebraPtr base = alg_from_file_header(j);
    Curve c = curve_from_json(curve_space(base), j);
    Json out;
    if (c.level >= valuation_infinity)
      out = Json{{"level", "infinity"}};
    else
      out = Json{{"level", c.level}};
    emit(out, o.out);
  });

  // ---- autos ----
  CLI::App* autos = app.add_subcommand("autos", "Lie algebra automorphisms and decomposition");
  CLI::App* autos_make = autos->add_subcommand("make", "construct an automorphism file");
  autos_make->add_option("kind", o.kind, "torus | diagram | weyl | inner | twist")->required();
  add_system(autos_make);
  add_ring(autos_make);
  add_out(autos_make);
  autos_make->add_option("--coords", o.coords, "torus coordinates, e.g. 2,3");
  autos_make->add_option("--delta", o.delta, "diagram symmetry images (1-based), e.g. 2,1");
  autos_make->add_option("--word", o.word, "Weyl word as simple-root labels, e.g. a1,a2");
  autos_make->add_option("--sigma", o.sigma, "component images (1-based) for a ring twist");
  autos_make->add_option("--in", o.in, "group element JSON for kind inner");
  autos_make->callback([&] {
    AlgebraPtr alg = make_alg(parse_type(o.type), o.rank, parse_ring(o.ring));
    SemilinearAut f = SemilinearAut::identity(alg);
    if (o.kind == "torus") {
      if (o.coords.empty()) throw parse_error("torus needs --coords");
      std::vector<RElem> c;
      for (const std::string& s : split_list(o.coords))
        c.push_back(RElem::constant(alg->ring, parse_rat(s)));
      f = torus(alg, c);
    } else if (o.kind == "diagram") {
      if (o.delta.empty()) throw parse_error("diagram needs --delta");
      DynkinSymmetry d;
      for (const std::string& s : split_list(o.delta)) d.push_back(static_cast<int>(parse_int(s)) - 1);
      f = diagram(alg, {{RElem::one(alg->ring), d}});
    } else if (o.kind == "weyl") {
      WeylWord w;
      if (!o.word.empty())
        for (const std::string& s : split_list(o.word)) w.push_back(alg->roots().parse_label(s));
      f = weyl(alg, w);
    } else if (o.kind == "inner") {
      if (o.in.empty()) throw parse_error("inner needs --in with a group element file");
      Json j = load_json(o.in);
      f = inner(group_from_json(alg, j));
    } else if (o.kind == "twist") {
      if (o.sigma.empty()) throw parse_error("twist needs --sigma");
      RingAutDescriptor s;
      for (const std::string& p : split_list(o.sigma)) s.push_back(static_cast<int>(parse_int(p)) - 1);
      f = ring_twist(alg, s);
    } else {
      throw parse_error("unknown automorphism kind: " + o.kind);
    }
    emit(aut_to_json(f), o.out);
  });
  CLI::App* autos_decompose =
      autos->add_subcommand("decompose", "diagram x torus x Weyl factors of a monomial map");
  autos_decompose->add_option("file", o.file, "automorphism JSON path")->required();
  add_crosscheck(autos_decompose);
  add_out(autos_decompose);
  autos_decompose->callback([&] {
    SemilinearAut f = load_automorphism(o);
    require_automorphism(f);
    MonomialDecomposition dec = decompose_monomial(f);
    emit(decomposition_to_json(f.alg->roots(), dec), o.out);
  });
  CLI::App* autos_split = autos->add_subcommand("split", "blockwise components along idempotents");
  autos_split->add_option("file", o.file, "automorphism JSON path")->required();
  add_crosscheck(autos_split);
  add_out(autos_split);
  autos_split->callback([&] {
    SemilinearAut f = load_automorphism(o);
    require_automorphism(f);
    Json parts = Json::array();
    for (const SemilinearAut& p : split_by_idempotents(f)) parts.push_back(aut_to_json(p));
    emit(Json{{"components", std::move(parts)}}, o.out);
  });
  CLI::App* autos_extract =
      autos->add_subcommand("extract-ring", "factor off the coordinate permutation");
  autos_extract->add_option("file", o.file, "automorphism JSON path")->required();
  add_crosscheck(autos_extract);
  add_out(autos_extract);
  autos_extract->callback([&] {
    SemilinearAut f = load_automorphism(o);
    require_automorphism(f);
    auto [sigma, linear] = extract_ring_automorphism(f);
    Json s = Json::array();
    for (int v : sigma) s.push_back(v + 1);
    emit(Json{{"sigma", std::move(s)}, {"linear", aut_to_json(linear)}}, o.out);
  });
  CLI::App* autos_probe =
      autos->add_subcommand("probe-centralizer", "find a generator the map fails to commute with");
  autos_probe->add_option("file", o.file, "automorphism JSON path")->required();
  add_crosscheck(autos_probe);
  add_out(autos_probe);
  autos_probe->callback([&] {
    SemilinearAut f = load_automorphism(o);
    require_automorphism(f);
    CheckReport rep = centralizer_probe(f);
    emit(report_to_json(rep), o.out);
    g_exit = rep.ok() ? 0 : 1;
  });

  // ---- suite ----
  CLI::App* suite = app.add_subcommand("suite", "named verification suites");
  suite->require_subcommand(1);
  CLI::App* suite_list = suite->add_subcommand("list", "registry of suite names");
  add_out(suite_list);
  suite_list->callback([&] {
    Json out = Json::array();
    for (const SuiteInfo& s : suite_registry())
      out.push_back(Json{{"name", s.name}, {"description", s.description}});
    emit(Json{{"suites", std::move(out)}}, o.out);
  });
  CLI::App* suite_all = suite->add_subcommand("all", "run every registered suite");
  add_system(suite_all);
  add_ring(suite_all);
  add_seed(suite_all);
  add_out(suite_all);
  suite_all->add_flag("--timings", o.timings, "include volatile durations in the JSON report");
  suite_all->callback([&] {
    std::vector<std::string> names;
    for (const SuiteInfo& s : suite_registry()) names.push_back(s.name);
    g_exit = run_suites(names, o);
  });
  for (const SuiteInfo& s : suite_registry()) {
    CLI::App* one = suite->add_subcommand(s.name, s.description);
    add_system(one);
    add_ring(one);
    add_seed(one);
    add_out(one);
    one->add_flag("--timings", o.timings, "include volatile durations in the JSON report");
    std::string name = s.name;
    one->callback([&, name] { g_exit = run_suites({name}, o); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const invalid_type& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const unsupported_ring& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const unsupported& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const error& e) {
    std::cout << Json{{"error", Json{{"message", e.what()}}}}.dump(2) << "\n";
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return g_exit;
}
