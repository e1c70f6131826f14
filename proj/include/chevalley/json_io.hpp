#pragma once

#include <string>
#include <utility>
#include <vector>

#include "chevalley/autos.hpp"
#include "chevalley/curves.hpp"
#include "json.hpp"

namespace chevalley {

using Json = nlohmann::ordered_json;

// ---- ring descriptors ----
//
// Grammar: "Q" | "Q^d" for the d-fold product, with polynomial suffixes
// "[t]" and truncations "[t]/(t^k)" applied left to right, e.g.
// "Q[t]", "Q^2[t]/(t^3)", "Q[t][u]".

inline std::string ring_descriptor(const RingPtr& r) {
  switch (r->kind) {
    case RingKind::rationals: return "Q";
    case RingKind::product: return ring_descriptor(r->factor) + "^" + std::to_string(r->count);
    case RingKind::poly: return ring_descriptor(r->base) + "[" + r->var + "]";
    case RingKind::truncated:
      return ring_descriptor(r->base) + "[" + r->var + "]/(" + r->var + "^" +
             std::to_string(r->order) + ")";
  }
  throw error("unhandled ring kind");
}

inline RingPtr parse_ring(const std::string& s) {
  std::size_t pos = 0;
  auto fail = [&]() -> void { throw parse_error("bad ring descriptor: " + s); };
  auto want = [&](char c) {
    if (pos >= s.size() || s[pos] != c) fail();
    ++pos;
  };
  auto number = [&]() {
    std::size_t start = pos;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
    if (pos == start || pos - start > 6) fail();
    return std::stoi(s.substr(start, pos - start));
  };
  auto name = [&]() {
    std::size_t start = pos;
    while (pos < s.size() && ((s[pos] >= 'a' && s[pos] <= 'z') || s[pos] == '\'')) ++pos;
    if (pos == start) fail();
    return s.substr(start, pos - start);
  };

  want('Q');
  RingPtr r = Ring::rationals();
  if (pos < s.size() && s[pos] == '^') {
    ++pos;
    int d = number();
    if (d < 1) fail();
    r = Ring::product(d, r);
  }
  while (pos < s.size()) {
    want('[');
    std::string var = name();
    want(']');
    if (pos < s.size() && s[pos] == '/') {
      ++pos;
      want('(');
      if (name() != var) fail();
      want('^');
      int k = number();
      want(')');
      r = Ring::truncated(r, var, k);
    } else {
      r = Ring::poly(r, var);
    }
  }
  return r;
}

// ---- ring elements ----
//
// Rationals are strings ("2/3"); product elements are arrays of component
// values; polynomial elements are arrays of coefficients from degree 0.

inline Json elem_to_json(const RElem& a) {
  if (a.kind() == RingKind::rationals) return Json(format_rat(a.rat_value()));
  Json out = Json::array();
  for (const RElem& p : a.parts()) out.push_back(elem_to_json(p));
  return out;
}

inline RElem elem_from_json(const RingPtr& ring, const Json& j) {
  if (ring->kind == RingKind::rationals) {
    if (!j.is_string()) throw parse_error("rational values must be JSON strings");
    return RElem::rational(parse_rat(j.get<std::string>()));
  }
  if (!j.is_array()) throw parse_error("element of " + ring_descriptor(ring) + " must be an array");
  std::vector<RElem> parts;
  if (ring->kind == RingKind::product) {
    if (static_cast<int>(j.size()) != ring->count)
      throw parse_error("expected " + std::to_string(ring->count) + " components");
    for (const Json& p : j) parts.push_back(elem_from_json(ring->factor, p));
    return RElem::tuple(ring, std::move(parts));
  }
  for (const Json& p : j) parts.push_back(elem_from_json(ring->base, p));
  return RElem::poly(ring, std::move(parts));
}

inline Json matrix_to_json(const Matrix<RElem>& m) {
  Json out = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(elem_to_json(m.at(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

inline Matrix<RElem> matrix_from_json(const RingPtr& ring, const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty())
    throw parse_error("matrix must be a non-empty array of rows");
  int rows = static_cast<int>(j.size());
  int cols = static_cast<int>(j[0].size());
  Matrix<RElem> m(rows, cols, RElem::zero(ring));
  for (int i = 0; i < rows; ++i) {
    if (!j[static_cast<std::size_t>(i)].is_array() ||
        static_cast<int>(j[static_cast<std::size_t>(i)].size()) != cols)
      throw parse_error("ragged matrix rows");
    for (int k = 0; k < cols; ++k)
      m.at(i, k) = elem_from_json(ring, j[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]);
  }
  return m;
}

// ---- Lie elements ----

inline Json lie_to_json(const LieElement& v) {
  Json labels = Json::array(), coords = Json::array();
  for (int i = 0; i < v.alg->dim; ++i) {
    labels.push_back(v.alg->basis_label(i));
    coords.push_back(elem_to_json(v.c[static_cast<std::size_t>(i)]));
  }
  return Json{{"basis", std::move(labels)}, {"coords", std::move(coords)}};
}

inline LieElement lie_from_json(const AlgebraPtr& alg, const Json& j) {
  if (!j.contains("coords") || !j["coords"].is_array() ||
      static_cast<int>(j["coords"].size()) != alg->dim)
    throw parse_error("expected a coords array of length " + std::to_string(alg->dim));
  LieElement v = LieElement::zero(alg);
  for (int i = 0; i < alg->dim; ++i)
    v.c[static_cast<std::size_t>(i)] = elem_from_json(alg->ring, j["coords"][static_cast<std::size_t>(i)]);
  return v;
}

// ---- structure tables ----
//
// The n matrix is count x count with N_{a,b} at (a, b) when a+b is a root
// and 0 elsewhere; loading rebuilds the root system from (type, rank) and
// takes the structure constants from the file, so verification runs on the
// loaded data.

inline Json table_to_json(const StructureTable& t) {
  const RootSystem& rs = *t.rs;
  Json roots = Json::array();
  for (int k = 0; k < rs.count(); ++k) roots.push_back(rs.label(k));
  Json n = Json::array();
  for (int a = 0; a < rs.count(); ++a) {
    Json row = Json::array();
    for (int b = 0; b < rs.count(); ++b) row.push_back(t.nval(a, b));
    n.push_back(std::move(row));
  }
  return Json{{"format", "chevalley-table"},
              {"type", std::string(1, rs.type)},
              {"rank", rs.rank},
              {"dim", rs.rank + rs.count()},
              {"roots", std::move(roots)},
              {"n", std::move(n)}};
}

inline StructureTable table_from_json(const Json& j) {
  if (!j.contains("type") || !j["type"].is_string() || j["type"].get<std::string>().size() != 1 ||
      !j.contains("rank") || !j["rank"].is_number_integer() || !j.contains("n"))
    throw parse_error("table needs a one-letter type, an integer rank, and an n matrix");
  StructureTable t = build_structure_table(
      build_root_system(j["type"].get<std::string>()[0], j["rank"].get<int>()));
  const RootSystem& rs = *t.rs;
  const Json& n = j["n"];
  if (!n.is_array() || static_cast<int>(n.size()) != rs.count())
    throw parse_error("n must be a " + std::to_string(rs.count()) + "-row matrix");
  t.n.clear();
  for (int a = 0; a < rs.count(); ++a) {
    const Json& row = n[static_cast<std::size_t>(a)];
    if (!row.is_array() || static_cast<int>(row.size()) != rs.count())
      throw parse_error("ragged n matrix");
    for (int b = 0; b < rs.count(); ++b) {
      const Json& cell = row[static_cast<std::size_t>(b)];
      if (!cell.is_number_integer()) throw parse_error("structure constants must be integers");
      long v = cell.get<long>();
      Coord sum = rs.coord(a);
      for (int i = 0; i < rs.rank; ++i) sum[static_cast<std::size_t>(i)] += rs.coord(b)[static_cast<std::size_t>(i)];
      bool pair = b != rs.negate(a) && rs.find(sum) >= 0;
      if (pair)
        t.n[{a, b}] = v;
      else if (v != 0)
        throw parse_error("structure constant set where " + rs.label(a) + " + " + rs.label(b) +
                          " is not a root");
    }
  }
  return t;
}

// ---- automorphisms ----
//
// sigma is serialized 1-based (component k maps to sigma[k]); matrices are
// always over Q in the block layout of SemilinearAut.

inline Json aut_to_json(const SemilinearAut& f) {
  const RootSystem& rs = f.alg->roots();
  Json sigma = Json::array();
  for (int v : f.sigma) sigma.push_back(v + 1);
  return Json{{"format", "chevalley-aut"},
              {"type", std::string(1, rs.type)},
              {"rank", rs.rank},
              {"ring", ring_descriptor(f.alg->ring)},
              {"sigma", std::move(sigma)},
              {"matrix", matrix_to_json(f.m)}};
}

inline SemilinearAut aut_from_json(const Json& j) {
  if (!j.contains("type") || !j["type"].is_string() || j["type"].get<std::string>().size() != 1 ||
      !j.contains("rank") || !j["rank"].is_number_integer() || !j.contains("matrix"))
    throw parse_error("automorphism needs type, rank, and matrix fields");
  RingPtr ring = j.contains("ring") ? parse_ring(j["ring"].get<std::string>()) : Ring::rationals();
  AlgebraPtr alg = LieAlgebra::make(
      build_structure_table(build_root_system(j["type"].get<std::string>()[0], j["rank"].get<int>())),
      ring);
  int d = ring_components(ring);
  RingAutDescriptor sigma = identity_descriptor(d);
  if (j.contains("sigma")) {
    const Json& sj = j["sigma"];
    if (!sj.is_array() || static_cast<int>(sj.size()) != d)
      throw parse_error("sigma must list " + std::to_string(d) + " component images");
    for (int k = 0; k < d; ++k) {
      if (!sj[static_cast<std::size_t>(k)].is_number_integer()) throw parse_error("sigma entries must be integers");
      int v = sj[static_cast<std::size_t>(k)].get<int>();
      if (v < 1 || v > d) throw parse_error("sigma entries must lie in 1.." + std::to_string(d));
      sigma[static_cast<std::size_t>(k)] = v - 1;
    }
  }
  Matrix<RElem> m = matrix_from_json(Ring::rationals(), j["matrix"]);
  if (m.rows() != d * alg->dim || m.cols() != d * alg->dim)
    throw parse_error("matrix must be " + std::to_string(d * alg->dim) + " x " +
                      std::to_string(d * alg->dim));
  return SemilinearAut{alg, std::move(sigma), std::move(m)};
}

inline Json decomposition_to_json(const RootSystem& rs, const MonomialDecomposition& d) {
  Json delta = Json::array();
  for (int v : d.delta) delta.push_back(v + 1);
  Json torus = Json::object();
  for (std::size_t i = 0; i < d.torus.size(); ++i)
    torus[std::to_string(i + 1)] = elem_to_json(d.torus[i]);
  Json weyl = Json::array();
  for (int i : d.weyl) weyl.push_back(rs.label(i));
  return Json{{"delta", std::move(delta)},
              {"torus", std::move(torus)},
              {"weyl", std::move(weyl)},
              {"exact", d.exact}};
}

// ---- group elements and curves (as generator words) ----

inline Json word_to_json(const RootSystem& rs, const std::vector<std::pair<int, RElem>>& word) {
  Json out = Json::array();
  for (const auto& [k, r] : word)
    out.push_back(Json{{"root", rs.label(k)}, {"param", elem_to_json(r)}});
  return out;
}

inline std::vector<std::pair<int, RElem>> word_from_json(const AlgebraPtr& alg, const Json& j) {
  if (!j.is_array()) throw parse_error("word must be an array of {root, param} factors");
  std::vector<std::pair<int, RElem>> word;
  for (const Json& f : j) {
    if (!f.contains("root") || !f["root"].is_string() || !f.contains("param"))
      throw parse_error("word factors need root and param fields");
    int k = alg->roots().parse_label(f["root"].get<std::string>());
    word.push_back({k, elem_from_json(alg->ring, f["param"])});
  }
  return word;
}

inline Json group_to_json(const GroupElement& g) {
  const RootSystem& rs = g.alg->roots();
  return Json{{"format", "chevalley-group"},
              {"type", std::string(1, rs.type)},
              {"rank", rs.rank},
              {"ring", ring_descriptor(g.alg->ring)},
              {"word", word_to_json(rs, g.word)},
              {"matrix", matrix_to_json(g.m)}};
}

inline GroupElement group_from_json(const AlgebraPtr& alg, const Json& j) {
  if (!j.contains("word")) throw parse_error("group element needs a word field");
  GroupElement g = GroupElement::identity(alg);
  for (const auto& [k, r] : word_from_json(alg, j["word"])) g = g * exp_generator(alg, k, r);
  return g;
}

inline Json curve_to_json(const Curve& c) {
  const RootSystem& rs = c.alg->roots();
  return Json{{"format", "chevalley-curve"},
              {"type", std::string(1, rs.type)},
              {"rank", rs.rank},
              {"ring", ring_descriptor(base_space(c.alg)->ring)},
              {"word", word_to_json(rs, c.word)},
              {"level", c.level}};
}

inline Curve curve_from_json(const AlgebraPtr& curves, const Json& j) {
  if (!j.contains("word")) throw parse_error("curve needs a word field");
  return curve_from_word(curves, word_from_json(curves, j["word"]));
}

// ---- reports ----

inline Json report_to_json(const CheckReport& rep) {
  Json failures = Json::array();
  for (const auto& f : rep.failures)
    failures.push_back(Json{{"check", f.check}, {"input", f.input}});
  return Json{{"suite", rep.suite},
              {"passed", rep.passed},
              {"failed", rep.failed},
              {"failures", std::move(failures)}};
}

}  // namespace chevalley
