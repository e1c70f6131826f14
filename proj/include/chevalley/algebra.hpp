#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "chevalley/matrix.hpp"
#include "chevalley/report.hpp"
#include "chevalley/ring.hpp"
#include "chevalley/roots.hpp"

namespace chevalley {

// Integer structure data of the basis h_1..h_l, x_a. Plain data: a table
// loaded from disk is verified as-is, never silently rebuilt.
struct StructureTable {
  RootSystemPtr rs;
  std::vector<std::vector<long>> pairing;  // [root k][simple i] = <a_k, a_i~>
  std::vector<Coord> coroots;              // [root k] = coefficients of h_{a_k} over h_i
  std::map<std::pair<int, int>, long> n;   // (a, b) -> N_{a,b}, only when a+b is a root

  int dim() const { return rs->rank + rs->count(); }
  long nval(int a, int b) const {
    auto it = n.find({a, b});
    return it == n.end() ? 0 : it->second;
  }
};

namespace detail {

inline long exact_div(long num, long den, const char* what) {
  if (den == 0 || num % den != 0) throw error(std::string("inexact integer division in ") + what);
  return num / den;
}

// Extraspecial-pair sign convention: for each non-simple positive g with
// minimal decomposition g = e + h, seed N_{e,h} = +(p+1) from the e-string
// through h; everything else propagates through antisymmetry, the cyclic
// identity for a+b+c = 0, and the Jacobi recursion on (x_{-e}, x_a, x_b).
class nbuilder {
 public:
  explicit nbuilder(const RootSystem& rs) : rs_(rs) {}

  long n(int a, int b) {
    auto key = std::make_pair(a, b);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    long v = compute(a, b);
    memo_[key] = v;
    return v;
  }

 private:
  const RootSystem& rs_;
  std::map<std::pair<int, int>, long> memo_;

  int sum_index(int a, int b) const {
    Coord s = rs_.coord(a);
    for (int i = 0; i < rs_.rank; ++i) s[static_cast<std::size_t>(i)] += rs_.coord(b)[static_cast<std::size_t>(i)];
    return rs_.find(s);
  }

  long compute(int a, int b) {
    int g = sum_index(a, b);
    if (g < 0) throw error("structure constant requested for a non-root sum");
    if (!rs_.positive(a) && !rs_.positive(b)) return -n(rs_.negate(a), rs_.negate(b));
    if (rs_.positive(a) && rs_.positive(b)) {
      auto [e, h] = rs_.extraspecial(g);
      if (a == e && b == h) return root_string(rs_, e, h).first + 1;
      if (a > b) return -n(b, a);  // positive indices follow the pinned order
      // Jacobi on (x_{-e}, x_a, x_b); divisor N_{g,-e} is never zero
      long denom = n(g, rs_.negate(e));
      long t = 0;
      int ae = sum_index(a, rs_.negate(e));
      if (ae >= 0) t += n(rs_.negate(e), a) * n(ae, b);
      int be = sum_index(b, rs_.negate(e));
      if (be >= 0) t += n(b, rs_.negate(e)) * n(be, a);
      return exact_div(-t, denom, "the extraspecial recursion");
    }
    if (!rs_.positive(a)) return -n(b, a);
    // a positive, b negative
    if (!rs_.positive(g)) return n(rs_.negate(b), rs_.negate(a));
    // cyclic identity for a + b + (-g) = 0
    long v = -n(rs_.negate(b), g) * rs_.norm2(g);
    return exact_div(v, rs_.norm2(a), "the cyclic identity");
  }
};

}  // namespace detail

inline StructureTable build_structure_table(const RootSystemPtr& rs) {
  StructureTable t;
  t.rs = rs;
  for (int k = 0; k < rs->count(); ++k) {
    std::vector<long> row;
    for (int i = 0; i < rs->rank; ++i) row.push_back(cartan_pairing(*rs, k, i));
    t.pairing.push_back(row);
    t.coroots.push_back(rs->coroot(k));
  }
  detail::nbuilder nb(*rs);
  for (int a = 0; a < rs->count(); ++a)
    for (int b = 0; b < rs->count(); ++b) {
      if (b == rs->negate(a)) continue;
      Coord s = rs->coord(a);
      for (int i = 0; i < rs->rank; ++i) s[static_cast<std::size_t>(i)] += rs->coord(b)[static_cast<std::size_t>(i)];
      int g = rs->find(s);
      if (g < 0) continue;
      long v = nb.n(a, b);
      auto [p, q] = root_string(*rs, a, b);
      (void)q;
      if (std::abs(v) != p + 1) throw error("structure constant magnitude differs from its root string");
      t.n[{a, b}] = v;
    }
  return t;
}

class LieAlgebra;
using AlgebraPtr = std::shared_ptr<const LieAlgebra>;

// Chevalley algebra over a ring of the tower: the structure table plus the
// coefficient ring, with basis brackets precomputed sparsely.
class LieAlgebra {
 public:
  StructureTable table;
  RingPtr ring;
  int dim = 0;

  using SparseVec = std::vector<std::pair<int, long>>;  // (basis index, integer coeff)

  static AlgebraPtr make(StructureTable t, RingPtr r) {
    auto alg = std::make_shared<LieAlgebra>();
    alg->table = std::move(t);
    alg->ring = std::move(r);
    alg->dim = alg->table.dim();
    alg->fill_brackets();
    return alg;
  }

  const RootSystem& roots() const { return *table.rs; }
  int rank() const { return table.rs->rank; }
  int xindex(int rootk) const { return rank() + rootk; }
  bool is_x(int basis) const { return basis >= rank(); }
  int root_of(int basis) const { return basis - rank(); }

  const SparseVec& basis_bracket(int i, int j) const {
    return bb_[static_cast<std::size_t>(i) * dim + j];
  }

  std::string basis_label(int i) const {
    if (i < rank()) return "h" + std::to_string(i + 1);
    return "x(" + table.rs->label(root_of(i)) + ")";
  }

  // integer adjoint matrix of a basis vector
  Matrix<long> ad_basis_int(int i) const {
    Matrix<long> m(dim, dim, 0L);
    for (int j = 0; j < dim; ++j)
      for (auto [k, c] : basis_bracket(i, j)) m.at(k, j) += c;
    return m;
  }

 private:
  std::vector<SparseVec> bb_;

  void fill_brackets() {
    const RootSystem& rs = *table.rs;
    int l = rank();
    bb_.assign(static_cast<std::size_t>(dim) * dim, {});
    for (int i = 0; i < l; ++i)
      for (int k = 0; k < rs.count(); ++k) {
        long p = table.pairing[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
        if (p == 0) continue;
        bb_[static_cast<std::size_t>(i) * dim + xindex(k)] = {{xindex(k), p}};
        bb_[static_cast<std::size_t>(xindex(k)) * dim + i] = {{xindex(k), -p}};
      }
    for (int a = 0; a < rs.count(); ++a)
      for (int b = 0; b < rs.count(); ++b) {
        if (b == rs.negate(a)) {
          SparseVec v;
          for (int i = 0; i < l; ++i) {
            long c = table.coroots[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)];
            if (c != 0) v.push_back({i, c});
          }
          bb_[static_cast<std::size_t>(xindex(a)) * dim + xindex(b)] = v;
          continue;
        }
        long nv = table.nval(a, b);
        if (nv == 0) continue;
        Coord s = rs.coord(a);
        for (int i = 0; i < l; ++i) s[static_cast<std::size_t>(i)] += rs.coord(b)[static_cast<std::size_t>(i)];
        int g = rs.find(s);
        if (g < 0) continue;  // a loaded table may claim nonsense; verification reports it
        bb_[static_cast<std::size_t>(xindex(a)) * dim + xindex(b)] = {{xindex(g), nv}};
      }
  }
};

struct LieElement {
  AlgebraPtr alg;
  std::vector<RElem> c;

  static LieElement zero(const AlgebraPtr& a) {
    return {a, std::vector<RElem>(static_cast<std::size_t>(a->dim), RElem::zero(a->ring))};
  }
  static LieElement basis(const AlgebraPtr& a, int i) {
    LieElement e = zero(a);
    e.c[static_cast<std::size_t>(i)] = RElem::one(a->ring);
    return e;
  }
  static LieElement x(const AlgebraPtr& a, int rootk, const RElem& coeff) {
    LieElement e = zero(a);
    e.c[static_cast<std::size_t>(a->xindex(rootk))] = coeff;
    return e;
  }

  bool is_zero() const {
    for (const auto& v : c)
      if (!v.is_zero()) return false;
    return true;
  }
  friend bool operator==(const LieElement& p, const LieElement& q) { return p.c == q.c; }
  friend LieElement operator+(const LieElement& p, const LieElement& q) {
    LieElement r = p;
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = r.c[i] + q.c[i];
    return r;
  }
  friend LieElement operator-(const LieElement& p, const LieElement& q) {
    LieElement r = p;
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = r.c[i] - q.c[i];
    return r;
  }
};

inline bool compatible_algebras(const AlgebraPtr& a, const AlgebraPtr& b) {
  if (a == b) return true;
  return a && b && a->roots().type == b->roots().type && a->roots().rank == b->roots().rank &&
         same_ring(a->ring, b->ring);
}

inline void require_same_algebra(const LieElement& a, const LieElement& b) {
  if (!compatible_algebras(a.alg, b.alg))
    throw descriptor_mismatch("elements of different Chevalley algebras");
}

inline LieElement bracket(const LieElement& a, const LieElement& b) {
  require_same_algebra(a, b);
  LieElement out = LieElement::zero(a.alg);
  for (int i = 0; i < a.alg->dim; ++i) {
    if (a.c[static_cast<std::size_t>(i)].is_zero()) continue;
    for (int j = 0; j < a.alg->dim; ++j) {
      if (b.c[static_cast<std::size_t>(j)].is_zero()) continue;
      const auto& sv = a.alg->basis_bracket(i, j);
      if (sv.empty()) continue;
      RElem prod = a.c[static_cast<std::size_t>(i)] * b.c[static_cast<std::size_t>(j)];
      for (auto [k, coef] : sv)
        out.c[static_cast<std::size_t>(k)] = out.c[static_cast<std::size_t>(k)] + scale_int(prod, coef);
    }
  }
  return out;
}

inline Matrix<RElem> ad_matrix(const LieElement& a) {
  Matrix<RElem> m(a.alg->dim, a.alg->dim, RElem::zero(a.alg->ring));
  for (int j = 0; j < a.alg->dim; ++j) {
    LieElement col = bracket(a, LieElement::basis(a.alg, j));
    for (int i = 0; i < a.alg->dim; ++i) m.at(i, j) = col.c[static_cast<std::size_t>(i)];
  }
  return m;
}

// Inverse of ad on its image. The x coordinates are read from the h columns,
// the h coordinates from the diagonal on the negative-simple lines; the
// result is verified by recomputing ad.
inline LieElement lie_from_ad(const AlgebraPtr& alg, const Matrix<RElem>& m) {
  const RootSystem& rs = alg->roots();
  int l = alg->rank();
  LieElement out = LieElement::zero(alg);
  for (int k = 0; k < rs.count(); ++k) {
    int j = -1;
    for (int i = 0; i < l && j < 0; ++i)
      if (alg->table.pairing[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] != 0) j = i;
    if (j < 0) throw error("root with zero pairing row");
    Rat f(-1, alg->table.pairing[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]);
    f.canonicalize();
    out.c[static_cast<std::size_t>(alg->xindex(k))] = scale_rat(m.at(alg->xindex(k), j), f);
  }
  // diagonal entries on x_{-a_j}: D_j = -sum_i cartan[j][i] a_i
  Matrix<RElem> cart(l, l, RElem::zero(alg->ring));
  std::vector<RElem> rhs;
  for (int j = 0; j < l; ++j) {
    for (int i = 0; i < l; ++i) cart.at(j, i) = RElem::integer(alg->ring, rs.cartan[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);
    int line = alg->xindex(rs.negate(j));
    rhs.push_back(scale_int(m.at(line, line), -1));
  }
  Matrix<RElem> inv = inverse(cart);
  std::vector<RElem> hcoords = mat_vec(inv, rhs);
  for (int i = 0; i < l; ++i) out.c[static_cast<std::size_t>(i)] = hcoords[static_cast<std::size_t>(i)];
  if (ad_matrix(out) != m) throw error("matrix is not in the image of ad");
  return out;
}

inline CheckReport verify_antisymmetry(const StructureTable& t, const RingPtr& ring) {
  CheckReport rep;
  rep.suite = "antisymmetry";
  auto alg = LieAlgebra::make(t, ring);
  for (int i = 0; i < alg->dim; ++i)
    for (int j = 0; j <= i; ++j) {
      LieElement bi = LieElement::basis(alg, i), bj = LieElement::basis(alg, j);
      bool ok = (bracket(bi, bj) + bracket(bj, bi)).is_zero();
      if (i == j) ok = ok && bracket(bi, bi).is_zero();
      rep.check(ok, "antisymmetry", "(" + alg->basis_label(i) + ", " + alg->basis_label(j) + ")");
    }
  return rep;
}

inline CheckReport verify_jacobi(const StructureTable& t, const RingPtr& ring) {
  CheckReport rep;
  rep.suite = "jacobi";
  auto alg = LieAlgebra::make(t, ring);
  std::vector<LieElement> basis;
  for (int i = 0; i < alg->dim; ++i) basis.push_back(LieElement::basis(alg, i));
  for (int i = 0; i < alg->dim; ++i)
    for (int j = 0; j < alg->dim; ++j) {
      LieElement bij = bracket(basis[static_cast<std::size_t>(i)], basis[static_cast<std::size_t>(j)]);
      for (int k = 0; k < alg->dim; ++k) {
        LieElement s = bracket(bij, basis[static_cast<std::size_t>(k)]) +
                       bracket(bracket(basis[static_cast<std::size_t>(j)], basis[static_cast<std::size_t>(k)]), basis[static_cast<std::size_t>(i)]) +
                       bracket(bracket(basis[static_cast<std::size_t>(k)], basis[static_cast<std::size_t>(i)]), basis[static_cast<std::size_t>(j)]);
        rep.check(s.is_zero(), "jacobi",
                  "(" + alg->basis_label(i) + ", " + alg->basis_label(j) + ", " + alg->basis_label(k) + ")");
      }
    }
  return rep;
}

// ---- classical matrix models; the independent magnitude route ----

namespace detail {

struct EpsBasis {
  int n = 0;                        // ambient matrix size
  std::vector<std::vector<long>> simple_eps;  // rank vectors in the eps coordinates

  // signed index -> matrix row: B uses 0, +1..l, -1..-l; C/D use +1..l, -1..-l
  int row(char type, int l, long signed_i) const {
    if (type == 'B') return signed_i == 0 ? 0 : (signed_i > 0 ? static_cast<int>(signed_i) : l + static_cast<int>(-signed_i));
    return signed_i > 0 ? static_cast<int>(signed_i) - 1 : l + static_cast<int>(-signed_i) - 1;
  }
};

inline Matrix<long> eij(int n, int i, int j) {
  Matrix<long> m(n, n, 0L);
  m.at(i, j) = 1;
  return m;
}

inline Matrix<long> scale_longmat(Matrix<long> m, long c) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) m.at(i, j) *= c;
  return m;
}

}  // namespace detail

// |N| magnitudes from the trace-zero / orthogonal / symplectic models, keyed
// by root index pairs of build_root_system(type, rank).
inline std::map<std::pair<int, int>, long> classical_oracle(char type, int rank) {
  if (type != 'A' && type != 'B' && type != 'C' && type != 'D')
    throw unsupported("classical models exist for A, B, C, D only");
  auto rs = build_root_system(type, rank);
  const int l = rank;
  detail::EpsBasis eb;
  int epsdim = (type == 'A') ? l + 1 : l;
  eb.n = (type == 'A') ? l + 1 : (type == 'B' ? 2 * l + 1 : 2 * l);
  for (int i = 0; i + 1 < (type == 'A' ? l + 1 : l); ++i) {
    std::vector<long> v(static_cast<std::size_t>(epsdim), 0);
    v[static_cast<std::size_t>(i)] = 1;
    v[static_cast<std::size_t>(i) + 1] = -1;
    eb.simple_eps.push_back(v);
  }
  {
    std::vector<long> v(static_cast<std::size_t>(epsdim), 0);
    if (type == 'B') v[static_cast<std::size_t>(l - 1)] = 1;
    if (type == 'C') v[static_cast<std::size_t>(l - 1)] = 2;
    if (type == 'D') {
      v[static_cast<std::size_t>(l - 2)] = 1;
      v[static_cast<std::size_t>(l - 1)] = 1;
    }
    if (type != 'A') eb.simple_eps.push_back(v);
  }

  auto xmatrix = [&](int k) -> Matrix<long> {
    std::vector<long> v(static_cast<std::size_t>(epsdim), 0);
    for (int i = 0; i < l; ++i)
      for (int c = 0; c < epsdim; ++c) v[static_cast<std::size_t>(c)] += rs->coord(k)[static_cast<std::size_t>(i)] * eb.simple_eps[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
    std::vector<int> sup;
    for (int c = 0; c < epsdim; ++c)
      if (v[static_cast<std::size_t>(c)] != 0) sup.push_back(c);
    auto E = [&](long si, long sj) { return detail::eij(eb.n, eb.row(type, l, si), eb.row(type, l, sj)); };
    if (type == 'A') {
      int i = -1, j = -1;
      for (int c : sup) (v[static_cast<std::size_t>(c)] == 1 ? i : j) = c;
      return detail::eij(eb.n, i, j);
    }
    if (sup.size() == 1) {
      long i = sup[0] + 1, w = v[static_cast<std::size_t>(sup[0])];
      if (type == 'B') {
        if (w == 1) return detail::scale_longmat(E(i, 0), 2) - E(0, -i);
        return E(0, i) - detail::scale_longmat(E(-i, 0), 2);
      }
      // C: w = +-2
      return w > 0 ? E(i, -i) : E(-i, i);
    }
    long i = sup[0] + 1, j = sup[1] + 1;
    long wi = v[static_cast<std::size_t>(sup[0])], wj = v[static_cast<std::size_t>(sup[1])];
    if (wi == 1 && wj == -1) return E(i, j) - E(-j, -i);
    if (wi == -1 && wj == 1) return E(j, i) - E(-i, -j);
    if (wi == 1 && wj == 1) return type == 'C' ? E(i, -j) + E(j, -i) : E(i, -j) - E(j, -i);
    // wi == wj == -1
    return type == 'C' ? E(-i, j) + E(-j, i) : E(-j, i) - E(-i, j);
  };

  std::map<std::pair<int, int>, long> mag;
  std::vector<Matrix<long>> xs;
  for (int k = 0; k < rs->count(); ++k) xs.push_back(xmatrix(k));
  for (int a = 0; a < rs->count(); ++a)
    for (int b = 0; b < rs->count(); ++b) {
      if (b == rs->negate(a)) continue;
      Coord s = rs->coord(a);
      for (int i = 0; i < l; ++i) s[static_cast<std::size_t>(i)] += rs->coord(b)[static_cast<std::size_t>(i)];
      int g = rs->find(s);
      if (g < 0) continue;
      Matrix<long> c = xs[static_cast<std::size_t>(a)] * xs[static_cast<std::size_t>(b)] - xs[static_cast<std::size_t>(b)] * xs[static_cast<std::size_t>(a)];
      long coef = 0;
      for (int i = 0; coef == 0 && i < eb.n; ++i)
        for (int j = 0; coef == 0 && j < eb.n; ++j)
          if (xs[static_cast<std::size_t>(g)].at(i, j) != 0)
            coef = detail::exact_div(c.at(i, j), xs[static_cast<std::size_t>(g)].at(i, j), "the classical model");
      if (coef == 0) throw error("vanishing bracket in the classical model");
      Matrix<long> check = xs[static_cast<std::size_t>(g)];
      for (int i = 0; i < eb.n; ++i)
        for (int j = 0; j < eb.n; ++j) check.at(i, j) *= coef;
      if (check != c) throw error("classical bracket is not proportional to the target root vector");
      mag[{a, b}] = std::abs(coef);
    }
  return mag;
}

}  // namespace chevalley
