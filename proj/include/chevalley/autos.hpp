#pragma once

#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chevalley/curves.hpp"

namespace chevalley {

// Ring automorphisms of the supported coefficient rings. Aut Q is trivial and
// Aut Q^d permutes the coordinates, so a descriptor is just the permutation
// (component k of the source lands in component sigma[k] of the target).
using RingAutDescriptor = std::vector<int>;

inline int ring_components(const RingPtr& r) {
  if (r->kind == RingKind::rationals) return 1;
  if (r->kind == RingKind::product && r->factor->kind == RingKind::rationals) return r->count;
  throw unsupported_ring("semilinear automorphisms are supported over Q and Q^d only");
}

inline RingAutDescriptor identity_descriptor(int d) {
  RingAutDescriptor s(static_cast<std::size_t>(d));
  std::iota(s.begin(), s.end(), 0);
  return s;
}

inline bool is_identity_descriptor(const RingAutDescriptor& s) {
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] != static_cast<int>(i)) return false;
  return true;
}

inline bool is_permutation_descriptor(const RingAutDescriptor& s, int d) {
  if (static_cast<int>(s.size()) != d) return false;
  std::vector<char> seen(static_cast<std::size_t>(d), 0);
  for (int v : s) {
    if (v < 0 || v >= d || seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = 1;
  }
  return true;
}

inline void require_descriptor(const RingAutDescriptor& s, int d) {
  if (!is_permutation_descriptor(s, d))
    throw not_semilinear("ring descriptor is not a permutation of the coordinates");
}

// (f o g)(k) = f(g(k))
inline RingAutDescriptor compose_descriptors(const RingAutDescriptor& f,
                                             const RingAutDescriptor& g) {
  RingAutDescriptor out(g.size());
  for (std::size_t k = 0; k < g.size(); ++k)
    out[k] = f[static_cast<std::size_t>(g[k])];
  return out;
}

inline RingAutDescriptor invert_descriptor(const RingAutDescriptor& s) {
  RingAutDescriptor inv(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) inv[static_cast<std::size_t>(s[k])] = static_cast<int>(k);
  return inv;
}

namespace detail {

inline const Rat& rat_component(const RElem& e, int k) {
  if (e.kind() == RingKind::rationals) return e.rat_value();
  return e.parts()[static_cast<std::size_t>(k)].rat_value();
}

inline RElem from_rat_components(const RingPtr& r, const std::vector<Rat>& comps) {
  if (r->kind == RingKind::rationals) return RElem::rational(comps[0]);
  std::vector<RElem> parts;
  parts.reserve(comps.size());
  for (const Rat& q : comps) parts.push_back(RElem::rational(q));
  return RElem::tuple(r, std::move(parts));
}

}  // namespace detail

// Additive bijection of L(Phi,R) for R = Q or Q^d: a coordinate permutation of
// the ring plus a matrix over Q acting on the flattened module Q^(d*dim),
// index k*dim + i for component k, basis vector i. For a semilinear map the
// only blocks that may be nonzero are (sigma[k], k).
struct SemilinearAut {
  AlgebraPtr alg;
  RingAutDescriptor sigma;
  Matrix<RElem> m{0, 0, RElem()};

  static SemilinearAut identity(const AlgebraPtr& a) {
    int d = ring_components(a->ring);
    return {a, identity_descriptor(d),
            Matrix<RElem>::identity(d * a->dim, RElem::one(Ring::rationals()))};
  }
};

inline bool operator==(const SemilinearAut& a, const SemilinearAut& b) {
  return a.sigma == b.sigma && a.m == b.m;
}

// R-linear dim x dim matrix -> block-diagonal matrix over Q.
inline Matrix<RElem> expand_linear(const AlgebraPtr& alg, const Matrix<RElem>& m) {
  int d = ring_components(alg->ring), n = alg->dim;
  if (m.rows() != n || m.cols() != n)
    throw descriptor_mismatch("matrix size does not match the algebra");
  Matrix<RElem> big(d * n, d * n, RElem::zero(Ring::rationals()));
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const Rat& v = detail::rat_component(m.at(i, j), k);
        if (v != 0) big.at(k * n + i, k * n + j) = RElem::rational(v);
      }
  return big;
}

// Inverse of expand_linear; empty when an off-diagonal component block is hit.
inline std::optional<Matrix<RElem>> try_contract(const AlgebraPtr& alg, const Matrix<RElem>& big) {
  int d = ring_components(alg->ring), n = alg->dim;
  if (big.rows() != d * n || big.cols() != d * n) return std::nullopt;
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l) {
      if (l == k) continue;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (!big.at(l * n + i, k * n + j).is_zero()) return std::nullopt;
    }
  Matrix<RElem> out(n, n, RElem::zero(alg->ring));
  std::vector<Rat> comps(static_cast<std::size_t>(d));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < d; ++k)
        comps[static_cast<std::size_t>(k)] = big.at(k * n + i, k * n + j).rat_value();
      out.at(i, j) = detail::from_rat_components(alg->ring, comps);
    }
  return out;
}

inline LieElement apply(const SemilinearAut& f, const LieElement& v) {
  if (!compatible_algebras(f.alg, v.alg))
    throw descriptor_mismatch("automorphism and element over different algebras");
  int d = ring_components(f.alg->ring), n = f.alg->dim;
  std::vector<RElem> flat(static_cast<std::size_t>(d) * n, RElem::zero(Ring::rationals()));
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < n; ++i)
      flat[static_cast<std::size_t>(k) * n + i] =
          RElem::rational(detail::rat_component(v.c[static_cast<std::size_t>(i)], k));
  std::vector<RElem> img = mat_vec(f.m, flat);
  LieElement out = LieElement::zero(f.alg);
  std::vector<Rat> comps(static_cast<std::size_t>(d));
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < d; ++k)
      comps[static_cast<std::size_t>(k)] = img[static_cast<std::size_t>(k) * n + i].rat_value();
    out.c[static_cast<std::size_t>(i)] = detail::from_rat_components(f.alg->ring, comps);
  }
  return out;
}

inline SemilinearAut compose(const SemilinearAut& f, const SemilinearAut& g) {
  if (!compatible_algebras(f.alg, g.alg))
    throw descriptor_mismatch("composing automorphisms over different algebras");
  return {f.alg, compose_descriptors(f.sigma, g.sigma), f.m * g.m};
}

inline SemilinearAut aut_inverse(const SemilinearAut& f) {
  return {f.alg, invert_descriptor(f.sigma), inverse(f.m)};
}

// Full invariant check: permutation descriptor, block support pattern
// matching it, invertibility, and bracket preservation on the Q-basis.
inline bool is_semilinear_automorphism(const SemilinearAut& f) {
  int d = ring_components(f.alg->ring), n = f.alg->dim;
  if (!is_permutation_descriptor(f.sigma, d)) return false;
  if (f.m.rows() != d * n || f.m.cols() != d * n) return false;
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l) {
      if (l == f.sigma[static_cast<std::size_t>(k)]) continue;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (!f.m.at(l * n + i, k * n + j).is_zero()) return false;
    }
  if (is_identity_descriptor(f.sigma)) {
    auto m = try_contract(f.alg, f.m);
    return m && is_lie_automorphism(f.alg, *m);
  }
  if (!try_gj_inverse(f.m)) return false;  // over Q elimination decides invertibility
  // e_k b_i basis: images as elements of L, brackets compared over R
  std::vector<LieElement> img;
  img.reserve(static_cast<std::size_t>(d) * n);
  std::vector<Rat> ind(static_cast<std::size_t>(d), Rat(0));
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < n; ++i) {
      LieElement v = LieElement::zero(f.alg);
      ind[static_cast<std::size_t>(k)] = 1;
      v.c[static_cast<std::size_t>(i)] = detail::from_rat_components(f.alg->ring, ind);
      ind[static_cast<std::size_t>(k)] = 0;
      img.push_back(apply(f, v));
    }
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < d; ++l)
        for (int j = 0; j < n; ++j) {
          LieElement rhs = bracket(img[static_cast<std::size_t>(k) * n + i],
                                   img[static_cast<std::size_t>(l) * n + j]);
          LieElement lhs = LieElement::zero(f.alg);
          if (k == l)
            for (auto [r, c] : f.alg->basis_bracket(i, j)) {
              const LieElement& fr = img[static_cast<std::size_t>(k) * n + r];
              for (int row = 0; row < n; ++row)
                lhs.c[static_cast<std::size_t>(row)] =
                    lhs.c[static_cast<std::size_t>(row)] +
                    scale_int(fr.c[static_cast<std::size_t>(row)], c);
            }
          if (!(lhs == rhs)) return false;
        }
  return true;
}

inline SemilinearAut inner(const GroupElement& g) {
  if (!is_lie_automorphism(g.alg, g.m))
    throw not_an_automorphism("conjugating element does not act as an automorphism of L");
  return {g.alg, identity_descriptor(ring_components(g.alg->ring)), expand_linear(g.alg, g.m)};
}

namespace detail {

// x_{+-simple} -> x_{+-delta(simple)}, h_j -> h_{delta(j)}, extended to the
// remaining root vectors through the extraspecial pairs:
//   phi(x_g) = [phi(x_e), phi(x_h)] / N_{e,h}  for g = e + h.
// The caller verifies the result; signs on non-simple vectors are fixed by
// this extension order, not by any external convention.
inline Matrix<RElem> symmetry_action(const StructureTable& t, const DynkinSymmetry& delta) {
  const RootSystem& rs = *t.rs;
  int l = rs.rank, n = t.dim();
  if (static_cast<int>(delta.size()) != l || !is_permutation_descriptor(delta, l))
    throw extension_inconsistent("assignment is not a permutation of the simple roots");
  std::vector<int> imroot(static_cast<std::size_t>(rs.count()), -1);
  std::vector<Rat> coeff(static_cast<std::size_t>(rs.count()), Rat(0));
  for (int i = 0; i < l; ++i) {
    imroot[static_cast<std::size_t>(i)] = delta[static_cast<std::size_t>(i)];
    coeff[static_cast<std::size_t>(i)] = 1;
    imroot[static_cast<std::size_t>(rs.negate(i))] = rs.negate(delta[static_cast<std::size_t>(i)]);
    coeff[static_cast<std::size_t>(rs.negate(i))] = 1;
  }
  auto extend = [&](int target, int e, int h) {
    int ie = imroot[static_cast<std::size_t>(e)], ih = imroot[static_cast<std::size_t>(h)];
    Coord s = rs.coord(ie);
    for (int i = 0; i < l; ++i) s[static_cast<std::size_t>(i)] += rs.coord(ih)[static_cast<std::size_t>(i)];
    int g = rs.find(s);
    long nsrc = t.nval(e, h);
    long nim = g < 0 ? 0 : t.nval(ie, ih);
    if (nsrc == 0 || nim == 0)
      throw extension_inconsistent("bracket extension broke down at " + rs.label(target));
    imroot[static_cast<std::size_t>(target)] = g;
    coeff[static_cast<std::size_t>(target)] =
        coeff[static_cast<std::size_t>(e)] * coeff[static_cast<std::size_t>(h)] * Rat(nim) / Rat(nsrc);
  };
  for (int k = l; k < rs.npos; ++k) {  // positives come sorted by height
    auto [e, h] = rs.extraspecial(k);
    extend(k, e, h);
    extend(rs.negate(k), rs.negate(e), rs.negate(h));
  }
  Matrix<RElem> mq(n, n, RElem::zero(Ring::rationals()));
  for (int j = 0; j < l; ++j) mq.at(delta[static_cast<std::size_t>(j)], j) = RElem::rational(Rat(1));
  for (int k = 0; k < rs.count(); ++k)
    mq.at(l + imroot[static_cast<std::size_t>(k)], l + k) =
        RElem::rational(coeff[static_cast<std::size_t>(k)]);
  return mq;
}

}  // namespace detail

using DiagramAssignment = std::vector<std::pair<RElem, DynkinSymmetry>>;

inline SemilinearAut diagram(const AlgebraPtr& alg, const DiagramAssignment& assignment) {
  int d = ring_components(alg->ring), n = alg->dim;
  if (assignment.empty()) throw bad_idempotents("empty idempotent assignment");
  RElem sum = RElem::zero(alg->ring);
  for (const auto& [e, delta] : assignment) {
    (void)delta;
    if (!same_ring(e.ring(), alg->ring)) throw bad_idempotents("idempotent from a different ring");
    if (!(e * e == e)) throw bad_idempotents("not an idempotent: " + to_string(e));
    sum = sum + e;
  }
  for (std::size_t a = 0; a < assignment.size(); ++a)
    for (std::size_t b = a + 1; b < assignment.size(); ++b)
      if (!(assignment[a].first * assignment[b].first).is_zero())
        throw bad_idempotents("idempotents are not orthogonal");
  if (!sum.is_one()) throw bad_idempotents("idempotents do not sum to 1");

  AlgebraPtr algq = LieAlgebra::make(alg->table, Ring::rationals());
  std::map<DynkinSymmetry, Matrix<RElem>> actions;
  for (const auto& [e, delta] : assignment) {
    (void)e;
    if (actions.count(delta)) continue;
    Matrix<RElem> a = detail::symmetry_action(alg->table, delta);
    if (!is_lie_automorphism(algq, a))
      throw extension_inconsistent("bracket extension failed verification");
    actions.emplace(delta, std::move(a));
  }

  Matrix<RElem> big(d * n, d * n, RElem::zero(Ring::rationals()));
  for (int k = 0; k < d; ++k)
    for (const auto& [e, delta] : assignment) {
      Rat w = detail::rat_component(e, k);
      if (w == 0) continue;
      const Matrix<RElem>& a = actions.at(delta);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (!a.at(i, j).is_zero())
            big.at(k * n + i, k * n + j) = big.at(k * n + i, k * n + j) + scale_rat(a.at(i, j), w);
    }
  return {alg, identity_descriptor(d), std::move(big)};
}

// h_j -> h_j, x_a -> (prod c_i^{n_i}) x_a for a = sum n_i a_i.
inline SemilinearAut torus(const AlgebraPtr& alg, const std::vector<RElem>& c) {
  const RootSystem& rs = alg->roots();
  if (static_cast<int>(c.size()) != rs.rank)
    throw descriptor_mismatch("torus needs one coordinate per simple root");
  for (const RElem& u : c) {
    if (!same_ring(u.ring(), alg->ring))
      throw descriptor_mismatch("torus coordinate from a different ring");
    if (!try_invert(u)) throw not_a_unit("torus coordinate is not a unit: " + to_string(u));
  }
  Matrix<RElem> m = Matrix<RElem>::identity(alg->dim, RElem::one(alg->ring));
  for (int k = 0; k < rs.count(); ++k) {
    RElem v = RElem::one(alg->ring);
    const Coord& a = rs.coord(k);
    for (int i = 0; i < rs.rank; ++i)
      if (a[static_cast<std::size_t>(i)] != 0)
        v = v * pow_elem(c[static_cast<std::size_t>(i)], a[static_cast<std::size_t>(i)]);
    m.at(alg->xindex(k), alg->xindex(k)) = v;
  }
  return {alg, identity_descriptor(ring_components(alg->ring)), expand_linear(alg, m)};
}

// Product of the w_{a_i}(1) along the word; permutes root lines like the
// corresponding Weyl element, up to signs absorbed by the torus factor.
inline SemilinearAut weyl(const AlgebraPtr& alg, const WeylWord& w) {
  GroupElement g = GroupElement::identity(alg);
  RElem one = RElem::one(alg->ring);
  for (int i : w) {
    if (i < 0 || i >= alg->rank()) throw not_a_root("weyl word entry is not a simple index");
    g = g * weyl_torus_elements(alg, i, one).first;
  }
  return inner(g);
}

// The pure semilinear part: e_k b_i -> e_{sigma(k)} b_i.
inline SemilinearAut ring_twist(const AlgebraPtr& alg, const RingAutDescriptor& sigma) {
  int d = ring_components(alg->ring), n = alg->dim;
  require_descriptor(sigma, d);
  Matrix<RElem> big(d * n, d * n, RElem::zero(Ring::rationals()));
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < n; ++i)
      big.at(sigma[static_cast<std::size_t>(k)] * n + i, k * n + i) = RElem::rational(Rat(1));
  return {alg, sigma, std::move(big)};
}

struct MonomialDecomposition {
  DynkinSymmetry delta;
  std::vector<RElem> torus;  // unit of R per simple root
  WeylWord weyl;
  bool exact = false;  // recomposition reproduced the input
};

// Theorem-1 factorization for Cartan-stabilizing, root-line-permuting maps:
// f = diagram(delta) o torus(c) o weyl(w), recomposition checked exactly.
inline MonomialDecomposition decompose_monomial(const SemilinearAut& f) {
  const AlgebraPtr& alg = f.alg;
  const RootSystem& rs = alg->roots();
  int l = rs.rank, n = alg->dim;
  if (!is_permutation_descriptor(f.sigma, ring_components(alg->ring)) ||
      !is_identity_descriptor(f.sigma))
    throw not_monomial("the ring part is not the identity");
  auto mo = try_contract(alg, f.m);
  if (!mo) throw not_monomial("the map does not commute with the idempotents");
  const Matrix<RElem>& m = *mo;

  for (int j = 0; j < l; ++j)
    for (int i = l; i < n; ++i)
      if (!m.at(i, j).is_zero())
        throw not_monomial("the Cartan span is not stabilized: image of " + alg->basis_label(j));
  std::vector<int> image(static_cast<std::size_t>(rs.count()), -1);
  std::vector<char> taken(static_cast<std::size_t>(rs.count()), 0);
  for (int k = 0; k < rs.count(); ++k) {
    for (int i = 0; i < l; ++i)
      if (!m.at(i, alg->xindex(k)).is_zero())
        throw not_monomial("a root vector image meets the Cartan: " + rs.label(k));
    int row = -1;
    for (int i = 0; i < rs.count(); ++i)
      if (!m.at(alg->xindex(i), alg->xindex(k)).is_zero()) {
        if (row >= 0) throw not_monomial("the image of a root line is not a line: " + rs.label(k));
        row = i;
      }
    if (row < 0) throw not_monomial("a root line is annihilated: " + rs.label(k));
    if (taken[static_cast<std::size_t>(row)])
      throw not_monomial("two root lines share an image: " + rs.label(k));
    taken[static_cast<std::size_t>(row)] = 1;
    image[static_cast<std::size_t>(k)] = row;
  }

  // the permutation must come from a lattice map, pinned by the simple images
  Matrix<long> pi(l, l, 0L);
  for (int j = 0; j < l; ++j)
    for (int i = 0; i < l; ++i) pi.at(i, j) = rs.coord(image[static_cast<std::size_t>(j)])[i];
  for (int k = 0; k < rs.count(); ++k) {
    std::vector<long> v(rs.coord(k).begin(), rs.coord(k).end());
    std::vector<long> im(rs.coord(image[static_cast<std::size_t>(k)]).begin(),
                         rs.coord(image[static_cast<std::size_t>(k)]).end());
    if (mat_vec(pi, v) != im) throw not_monomial("the root permutation is not additive");
  }

  RootAutFactors rf;
  try {
    rf = reduce_to_diagram_symmetry(rs, pi);
  } catch (const not_an_automorphism& e) {
    throw not_monomial(e.what());
  }
  // rf gives pi = W' * D; rewrite as D * W via delta^-1 s_i delta = s_{delta^-1(i)}
  DynkinSymmetry inv = inverse_symmetry(rf.delta);
  WeylWord word;
  word.reserve(rf.word.size());
  for (int i : rf.word) word.push_back(inv[static_cast<std::size_t>(i)]);
  if (symmetry_matrix(rs, rf.delta) * weyl_eval(rs, word) != pi)
    throw error("diagram-weyl commutation failed");  // unreachable

  SemilinearAut dgr = diagram(alg, {{RElem::one(alg->ring), rf.delta}});
  SemilinearAut wl = weyl(alg, word);
  Matrix<RElem> resid = inverse(dgr.m) * f.m * inverse(wl.m);
  auto to = try_contract(alg, resid);
  if (!to) throw residual_not_torus("the residual does not commute with the idempotents");
  const Matrix<RElem>& t = *to;
  RElem one = RElem::one(alg->ring), zero = RElem::zero(alg->ring);
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j)
      if (!(t.at(i, j) == (i == j ? one : zero)))
        throw residual_not_torus("the residual moves the Cartan");
  std::vector<RElem> c;
  c.reserve(static_cast<std::size_t>(l));
  for (int i = 0; i < l; ++i) {
    RElem u = t.at(alg->xindex(i), alg->xindex(i));
    if (!try_invert(u))
      throw residual_not_torus("residual coordinate is not a unit: " + to_string(u));
    c.push_back(std::move(u));
  }
  SemilinearAut tor;
  try {
    tor = torus(alg, c);
  } catch (const not_a_unit& e) {
    throw residual_not_torus(e.what());
  }
  if (!(tor.m == resid))
    throw residual_not_torus("the residual is not multiplicative on the root lines");
  SemilinearAut back = compose(dgr, compose(tor, wl));
  if (!(back.m == f.m)) throw residual_not_torus("recomposition mismatch");
  return {rf.delta, std::move(c), std::move(word), true};
}

// Componentwise restrictions along the primitive idempotents of Q^d.
inline std::vector<SemilinearAut> split_by_idempotents(const SemilinearAut& f) {
  int d = ring_components(f.alg->ring), n = f.alg->dim;
  if (!is_permutation_descriptor(f.sigma, d) || !is_identity_descriptor(f.sigma))
    throw not_linear("the ring part is not the identity");
  if (f.m.rows() != d * n || f.m.cols() != d * n)
    throw descriptor_mismatch("matrix size does not match the algebra");
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l) {
      if (l == k) continue;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (!f.m.at(l * n + i, k * n + j).is_zero())
            throw not_linear("component " + std::to_string(k + 1) + " is moved off itself");
    }
  AlgebraPtr algq =
      d == 1 ? f.alg : LieAlgebra::make(f.alg->table, f.alg->ring->factor);
  std::vector<SemilinearAut> out;
  out.reserve(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) {
    Matrix<RElem> blk(n, n, RElem::zero(Ring::rationals()));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) blk.at(i, j) = f.m.at(k * n + i, k * n + j);
    out.push_back({algq, identity_descriptor(1), std::move(blk)});
  }
  return out;
}

// Inverse of split_by_idempotents: block-diagonal assembly over Q^d.
inline SemilinearAut assemble_blockwise(const AlgebraPtr& alg,
                                        const std::vector<SemilinearAut>& parts) {
  int d = ring_components(alg->ring), n = alg->dim;
  if (static_cast<int>(parts.size()) != d)
    throw descriptor_mismatch("one component per idempotent expected");
  Matrix<RElem> big(d * n, d * n, RElem::zero(Ring::rationals()));
  for (int k = 0; k < d; ++k) {
    const SemilinearAut& p = parts[static_cast<std::size_t>(k)];
    if (p.alg->roots().type != alg->roots().type || p.alg->roots().rank != alg->roots().rank ||
        ring_components(p.alg->ring) != 1 || !is_identity_descriptor(p.sigma))
      throw descriptor_mismatch("component is not a linear automorphism over Q");
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) big.at(k * n + i, k * n + j) = p.m.at(i, j);
  }
  return {alg, identity_descriptor(d), std::move(big)};
}

// Lemma-2(v) style splitting: the coordinate permutation sigma with
// f(e_k L) = e_{sigma(k)} L, and the R-linear remainder twist(sigma)^-1 o f.
inline std::pair<RingAutDescriptor, SemilinearAut> extract_ring_automorphism(
    const SemilinearAut& f) {
  int d = ring_components(f.alg->ring), n = f.alg->dim;
  if (f.m.rows() != d * n || f.m.cols() != d * n)
    throw descriptor_mismatch("matrix size does not match the algebra");
  RingAutDescriptor sigma(static_cast<std::size_t>(d), -1);
  std::vector<char> used(static_cast<std::size_t>(d), 0);
  for (int k = 0; k < d; ++k) {
    int target = -1;
    for (int l = 0; l < d; ++l) {
      bool nonzero = false;
      for (int i = 0; i < n && !nonzero; ++i)
        for (int j = 0; j < n && !nonzero; ++j)
          if (!f.m.at(l * n + i, k * n + j).is_zero()) nonzero = true;
      if (!nonzero) continue;
      if (target >= 0)
        throw not_semilinear("a component image spreads over several components");
      target = l;
    }
    if (target < 0) throw not_semilinear("a component is annihilated");
    if (used[static_cast<std::size_t>(target)])
      throw not_semilinear("two components share an image");
    used[static_cast<std::size_t>(target)] = 1;
    sigma[static_cast<std::size_t>(k)] = target;
  }
  SemilinearAut twist = ring_twist(f.alg, sigma);
  SemilinearAut linear{f.alg, identity_descriptor(d), inverse(twist.m) * f.m};
  return {std::move(sigma), std::move(linear)};
}

// g -> f g f^-1, the standardness map on group elements.
inline GroupElement standardness_map(const SemilinearAut& f, const GroupElement& g) {
  if (!compatible_algebras(f.alg, g.alg))
    throw descriptor_mismatch("automorphism and group element over different algebras");
  Matrix<RElem> big = f.m * expand_linear(g.alg, g.m) * inverse(f.m);
  auto m = try_contract(g.alg, big);
  if (!m) throw not_semilinear("conjugation left the R-linear maps");
  return {g.alg, std::move(*m), {}};
}

// Reads d(phi) off generator curves: the image of 1 + tX + o(t) under
// entrywise conjugation is 1 + t d(phi)(X) + o(t). Verified to preserve
// brackets, intertwine the group action, and agree with f's linear matrix.
inline Matrix<RElem> differential_of_standard(const SemilinearAut& f) {
  const AlgebraPtr& alg = f.alg;
  if (!is_identity_descriptor(f.sigma))
    throw not_linear("the differential needs a linear automorphism");
  auto fo = try_contract(alg, f.m);
  if (!fo) throw not_linear("the map does not commute with the idempotents");
  const Matrix<RElem>& lin = *fo;
  AlgebraPtr curves = curve_space(alg);
  Matrix<RElem> ft = embed_matrix(lin, curves->ring);
  Matrix<RElem> ftinv = embed_matrix(inverse(lin), curves->ring);
  Matrix<RElem> dphi(alg->dim, alg->dim, RElem::zero(alg->ring));
  for (int b = 0; b < alg->dim; ++b) {
    Curve c = basis_tangent_curve(curves, b);
    Curve img{curves, ft * c.m * ftinv, {}, 0};
    img.level = matrix_filtration_level(img.m);
    LieElement tv = tangent_vector(img);
    for (int i = 0; i < alg->dim; ++i) dphi.at(i, b) = tv.c[static_cast<std::size_t>(i)];
  }
  if (!(dphi == lin)) throw error("differential disagrees with the linear action");
  if (!is_lie_automorphism(alg, dphi)) throw error("differential is not an automorphism");
  RElem one = RElem::one(alg->ring);
  for (int i = 0; i < alg->rank(); ++i) {
    GroupElement gi = exp_generator(alg, i, one);
    GroupElement fg = standardness_map(f, gi);
    if (!(dphi * gi.m == fg.m * dphi)) throw error("differential fails equivariance");
  }
  return dphi;
}

// Conjugation against every simple generator x_i(1); failures carry the
// witness generator.
inline CheckReport centralizer_probe(const SemilinearAut& f) {
  CheckReport out;
  out.suite = "centralizer";
  const AlgebraPtr& alg = f.alg;
  RElem one = RElem::one(alg->ring);
  Matrix<RElem> finv = inverse(f.m);
  for (int i = 0; i < alg->rank(); ++i) {
    Matrix<RElem> g = expand_linear(alg, exp_generator(alg, i, one).m);
    out.check(f.m * g * finv == g, "commutes with the generator",
              "x(" + alg->roots().label(i) + ")(1)");
  }
  return out;
}

}  // namespace chevalley
