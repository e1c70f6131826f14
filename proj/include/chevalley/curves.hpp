#pragma once

#include <string>
#include <utility>
#include <vector>

#include "chevalley/group.hpp"

namespace chevalley {

// A curve is a group element over R[t] built from a generator word. Words are
// the membership certificate: raw matrices are never decided to be curves.
struct Curve {
  AlgebraPtr alg;  // over a polynomial ring R[t]
  Matrix<RElem> m{0, 0, RElem()};
  std::vector<std::pair<int, RElem>> word;  // (root index, polynomial)
  int level = 0;                            // filtration level; valuation_infinity for the identity
};

inline AlgebraPtr curve_space(const AlgebraPtr& base, const std::string& var = "t") {
  return LieAlgebra::make(base->table, Ring::poly(base->ring, var));
}

inline AlgebraPtr base_space(const AlgebraPtr& curvealg) {
  return LieAlgebra::make(curvealg->table, curvealg->ring->base);
}

inline int matrix_filtration_level(const Matrix<RElem>& m) {
  int lvl = valuation_infinity;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      RElem e = m.at(i, j);
      if (i == j) e = e - RElem::one(e.ring());
      lvl = std::min(lvl, valuation(e));
    }
  return lvl;
}

inline Curve curve_from_word(const AlgebraPtr& alg, std::vector<std::pair<int, RElem>> word) {
  if (alg->ring->kind != RingKind::poly)
    throw descriptor_mismatch("curves live over a polynomial ring R[t]");
  GroupElement g = GroupElement::identity(alg);
  for (const auto& [k, f] : word) g = g * exp_generator(alg, k, f);
  Curve c{alg, std::move(g.m), std::move(word), 0};
  c.level = matrix_filtration_level(c.m);
  return c;
}

inline Curve identity_curve(const AlgebraPtr& alg) { return curve_from_word(alg, {}); }

inline int filtration_level(const Curve& c) { return c.level; }

inline Curve operator*(const Curve& a, const Curve& b) {
  if (!compatible_algebras(a.alg, b.alg)) throw descriptor_mismatch("curves over different spaces");
  Curve out{a.alg, a.m * b.m, a.word, 0};
  out.word.insert(out.word.end(), b.word.begin(), b.word.end());
  out.level = matrix_filtration_level(out.m);
  return out;
}

inline Curve curve_inverse(const Curve& c) {
  Curve out{c.alg, Matrix<RElem>{0, 0, RElem()}, {}, c.level};
  for (auto it = c.word.rbegin(); it != c.word.rend(); ++it)
    out.word.push_back({it->first, scale_int(it->second, -1)});
  out.m = inverse(c.m);
  return out;
}

inline Curve curve_commutator(const Curve& a, const Curve& b) {
  return a * b * curve_inverse(a) * curve_inverse(b);
}

// REP_f: entrywise substitution t -> f(t), word substituted likewise.
inline Curve rep(const RElem& f, const Curve& c) {
  RElem g = embed(f, c.alg->ring);  // constants and integer-coefficient polys lift
  Curve out{c.alg, c.m, {}, 0};
  for (int i = 0; i < out.m.rows(); ++i)
    for (int j = 0; j < out.m.cols(); ++j) out.m.at(i, j) = substitute(c.m.at(i, j), g);
  for (const auto& [k, p] : c.word) out.word.push_back({k, substitute(p, g)});
  out.level = matrix_filtration_level(out.m);
  return out;
}

// Retraction evaluation t -> r: a group element over the base ring.
inline GroupElement evaluate(const Curve& c, const RElem& point) {
  AlgebraPtr base = base_space(c.alg);
  GroupElement g = GroupElement::identity(base);
  for (int i = 0; i < c.m.rows(); ++i)
    for (int j = 0; j < c.m.cols(); ++j) g.m.at(i, j) = eval_poly(c.m.at(i, j), point);
  for (const auto& [k, p] : c.word) g.word.push_back({k, eval_poly(p, point)});
  return g;
}

// The t-coefficient of a level->=1 curve, pulled back through ad into L.
inline LieElement tangent_vector(const Curve& c) {
  if (c.level < 1) throw not_based_at_identity("tangent vectors need a curve based at the identity");
  AlgebraPtr base = base_space(c.alg);
  Matrix<RElem> x(c.m.rows(), c.m.cols(), RElem::zero(base->ring));
  for (int i = 0; i < c.m.rows(); ++i)
    for (int j = 0; j < c.m.cols(); ++j) x.at(i, j) = poly_coeff(c.m.at(i, j), 1);
  return lie_from_ad(base, x);
}

// A curve whose tangent is the given basis vector: [(k, t)] realizes x-vectors
// and the five-factor word below realizes h_i (its t-coefficient is exactly h_i).
inline Curve basis_tangent_curve(const AlgebraPtr& curves, int basis) {
  RElem t = poly_var(curves->ring);
  RElem one = RElem::one(curves->ring);
  if (curves->is_x(basis)) return curve_from_word(curves, {{curves->root_of(basis), t}});
  int i = basis, neg = curves->roots().negate(i);
  return curve_from_word(
      curves, {{i, one}, {neg, t}, {i, scale_int(one, -1)}, {i, t}, {neg, scale_int(t, -1)}});
}

namespace detail {

inline std::string word_label(const RootSystem& rs, const std::vector<std::pair<int, RElem>>& word) {
  if (word.empty()) return "(identity)";
  std::string out;
  for (const auto& [k, f] : word) out += "(" + rs.label(k) + ": " + to_string(f) + ")";
  return out;
}

}  // namespace detail

// Commutator congruence mod t^3: [c1, c2] = 1 + t^2 [X1, X2] + o(t^2).
inline CheckReport verify_formula1(const Curve& c1, const Curve& c2) {
  if (c1.level < 1 || c2.level < 1)
    throw not_based_at_identity("formula (1) applies to curves based at the identity");
  CheckReport rep;
  rep.suite = "formula1";
  const RingPtr& pring = c1.alg->ring;
  RingPtr t3 = Ring::truncated(pring->base, pring->var, 3);
  auto cut = [&](const Matrix<RElem>& m) {
    Matrix<RElem> out(m.rows(), m.cols(), RElem::zero(t3));
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) out.at(i, j) = truncate_to(m.at(i, j), t3);
    return out;
  };
  Matrix<RElem> a = cut(c1.m), b = cut(c2.m);
  Matrix<RElem> comm = a * b * inverse(a) * inverse(b);

  LieElement xb = bracket(tangent_vector(c1), tangent_vector(c2));
  Matrix<RElem> ad = ad_matrix(xb);
  Matrix<RElem> expect(comm.rows(), comm.cols(), RElem::zero(t3));
  const RingPtr& base = pring->base;
  for (int i = 0; i < comm.rows(); ++i)
    for (int j = 0; j < comm.cols(); ++j) {
      std::vector<RElem> parts = {i == j ? RElem::one(base) : RElem::zero(base), RElem::zero(base),
                                  ad.at(i, j)};
      expect.at(i, j) = RElem::poly(t3, std::move(parts));
    }
  rep.check(comm == expect, "commutator congruence mod t^3",
            detail::word_label(c1.alg->roots(), c1.word) + " against " +
                detail::word_label(c2.alg->roots(), c2.word));
  return rep;
}

// h_i = x_i(1) o x_{-i} + x_i - x_{-i} for every simple i, plus an explicit
// curve whose tangent is each Chevalley basis vector.
inline CheckReport prop6_identities(const AlgebraPtr& alg) {
  CheckReport rep;
  rep.suite = "prop6";
  const RootSystem& rs = alg->roots();
  for (int i = 0; i < rs.rank; ++i) {
    int y = alg->xindex(rs.negate(i));
    LieElement lhs = apply(exp_generator(alg, i, RElem::one(alg->ring)), LieElement::basis(alg, y)) +
                     LieElement::basis(alg, alg->xindex(i)) - LieElement::basis(alg, y);
    rep.check(lhs == LieElement::basis(alg, i), "h_i identity", "i = " + std::to_string(i + 1));
  }
  AlgebraPtr curves = curve_space(alg);
  for (int i = 0; i < rs.rank; ++i) {
    // the identity above, read as a curve: tangent of
    // x_i(1) x_{-i}(t) x_i(-1) x_i(t) x_{-i}(-t) is h_i
    Curve c = basis_tangent_curve(curves, i);
    rep.check(tangent_vector(c) == LieElement::basis(alg, i), "tangent realizes h",
              "i = " + std::to_string(i + 1));
  }
  for (int k = 0; k < rs.count(); ++k) {
    Curve c = basis_tangent_curve(curves, alg->xindex(k));
    rep.check(tangent_vector(c) == LieElement::basis(alg, alg->xindex(k)), "tangent realizes x",
              rs.label(k));
  }
  return rep;
}

struct RetractionSamples {
  std::vector<std::vector<std::pair<int, RElem>>> words;
  std::vector<std::pair<Rat, Rat>> rr;
};

inline RetractionSamples default_retraction_samples(const AlgebraPtr& curves) {
  const RootSystem& rs = curves->roots();
  RElem t = poly_var(curves->ring);
  RetractionSamples s;
  s.words.push_back({{0, t}});
  if (rs.rank >= 2) s.words.push_back({{0, t}, {1, scale_int(t, -1)}});
  s.words.push_back({{rs.npos - 1, t * t + t}});
  s.rr = {{rat(1, 2), rat(1, 3)}, {rat(2), rat(3)}, {rat(2), rat(0)}, {rat(-1), rat(1, 2)}};
  return s;
}

// Formula (3) in two variables plus idempotence of the retractions: in
// (R[t])[u], t -> t+u and t -> t*u evaluated at (r, r') agree with REP_{r+r'}
// and REP_{rr'}.
inline CheckReport retraction_laws(const AlgebraPtr& alg, const RetractionSamples& samples) {
  CheckReport out;
  out.suite = "retraction-laws";
  AlgebraPtr curves = curve_space(alg);
  const RingPtr& pring = curves->ring;
  RingPtr two = Ring::poly(pring, "u");
  RElem tconst = embed(poly_var(pring), two);
  RElem u = poly_var(two);

  for (const auto& w : samples.words) {
    Curve c = curve_from_word(curves, w);
    std::string wl = detail::word_label(curves->roots(), w);
    for (const auto& [r, rp] : samples.rr) {
      std::string input = wl + ", r = " + r.get_str() + ", r' = " + rp.get_str();
      for (bool additive : {true, false}) {
        RElem f2 = additive ? tconst + u : tconst * u;
        Rat combined = additive ? Rat(r + rp) : Rat(r * rp);
        bool ok = true;
        for (int i = 0; ok && i < c.m.rows(); ++i)
          for (int j = 0; ok && j < c.m.cols(); ++j) {
            RElem g = substitute(c.m.at(i, j), f2);
            RElem at_rp = eval_poly(g, embed_rat(rp, pring));
            RElem at_both = eval_poly(at_rp, embed_rat(r, pring->base));
            if (!(at_both == eval_poly(c.m.at(i, j), embed_rat(combined, pring->base)))) ok = false;
          }
        out.check(ok, additive ? "additive law" : "multiplicative law", input);
      }
      Curve retracted = rep(embed_rat(r, pring), c);
      out.check(rep(embed_rat(r, pring), retracted).m == retracted.m, "retraction idempotence", input);
    }
  }
  return out;
}

}  // namespace chevalley
