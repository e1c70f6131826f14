#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chevalley/algebra.hpp"
#include "chevalley/matrix.hpp"
#include "chevalley/report.hpp"

namespace chevalley {

// An element of the adjoint elementary group: a dim x dim matrix acting on
// L(Phi, R), carrying the generator word it was built from when one is known.
// Words make inverses exact: x_a(r)^-1 = x_a(-r), no matrix inversion needed.
struct GroupElement {
  AlgebraPtr alg;
  Matrix<RElem> m{0, 0, RElem()};
  std::vector<std::pair<int, RElem>> word;  // (root index, parameter)

  static GroupElement identity(const AlgebraPtr& a) {
    return {a, Matrix<RElem>::identity(a->dim, RElem::one(a->ring)), {}};
  }
};

inline void require_same_group(const GroupElement& a, const GroupElement& b) {
  if (!compatible_algebras(a.alg, b.alg))
    throw descriptor_mismatch("group elements over different algebras");
}

inline GroupElement operator*(const GroupElement& a, const GroupElement& b) {
  require_same_group(a, b);
  GroupElement out{a.alg, a.m * b.m, a.word};
  out.word.insert(out.word.end(), b.word.begin(), b.word.end());
  return out;
}

inline GroupElement group_inverse(const GroupElement& g) {
  GroupElement out{g.alg, Matrix<RElem>{0, 0, RElem()}, {}};
  for (auto it = g.word.rbegin(); it != g.word.rend(); ++it)
    out.word.push_back({it->first, scale_int(it->second, -1)});
  out.m = inverse(g.m);
  return out;
}

inline LieElement apply(const GroupElement& g, const LieElement& v) {
  require_same_algebra(LieElement::zero(g.alg), v);
  LieElement out = LieElement::zero(g.alg);
  out.c = mat_vec(g.m, v.c);
  return out;
}

// x_a(r) = exp(ad r x_a). The divided powers (ad x_a)^k / k! are integer
// matrices; the series stops at the nilpotency index, computed on the spot.
inline GroupElement exp_generator(const AlgebraPtr& alg, int rootk, const RElem& r) {
  if (rootk < 0 || rootk >= alg->roots().count()) throw not_a_root("generator index out of range");
  if (!same_ring(r.ring(), alg->ring)) throw descriptor_mismatch("generator parameter from a different ring");
  Matrix<long> ad = alg->ad_basis_int(alg->xindex(rootk));
  Matrix<RElem> out = Matrix<RElem>::identity(alg->dim, RElem::one(alg->ring));
  Matrix<long> divided = ad;  // (ad x)^k / k!
  RElem rpow = r;
  for (long k = 1;; ++k) {
    bool zero = true;
    for (int i = 0; i < alg->dim; ++i)
      for (int j = 0; j < alg->dim; ++j) {
        long c = divided.at(i, j);
        if (c == 0) continue;
        zero = false;
        out.at(i, j) = out.at(i, j) + scale_int(rpow, c);
      }
    if (zero) break;
    divided = divided * ad;
    for (int i = 0; i < alg->dim; ++i)
      for (int j = 0; j < alg->dim; ++j)
        divided.at(i, j) = detail::exact_div(divided.at(i, j), k + 1, "the divided power series");
    rpow = rpow * r;
  }
  return {alg, std::move(out), {{rootk, r}}};
}

inline bool is_lie_automorphism(const AlgebraPtr& alg, const Matrix<RElem>& m) {
  if (m.rows() != alg->dim || m.cols() != alg->dim) return false;
  // invertible over R iff det is a unit; a successful elimination settles it cheaply
  if (!try_gj_inverse(m) && !try_invert(determinant(m))) return false;
  std::vector<LieElement> img;
  for (int j = 0; j < alg->dim; ++j) {
    LieElement e = LieElement::zero(alg);
    for (int i = 0; i < alg->dim; ++i) e.c[static_cast<std::size_t>(i)] = m.at(i, j);
    img.push_back(std::move(e));
  }
  for (int i = 0; i < alg->dim; ++i)
    for (int j = 0; j < alg->dim; ++j) {
      LieElement lhs = LieElement::zero(alg);
      for (auto [k, c] : alg->basis_bracket(i, j)) {
        for (int row = 0; row < alg->dim; ++row)
          lhs.c[static_cast<std::size_t>(row)] =
              lhs.c[static_cast<std::size_t>(row)] + scale_int(m.at(row, k), c);
      }
      if (!(lhs == bracket(img[static_cast<std::size_t>(i)], img[static_cast<std::size_t>(j)])))
        return false;
    }
  return true;
}

// w_a(s) = x_a(s) x_{-a}(-s^-1) x_a(s); h_a(s) = w_a(s) w_a(1)^-1.
inline std::pair<GroupElement, GroupElement> weyl_torus_elements(const AlgebraPtr& alg, int rootk,
                                                                 const RElem& s) {
  int neg = alg->roots().negate(rootk);
  auto w_of = [&](const RElem& u) {
    // invert throws NotAUnit when u isn't one
    return exp_generator(alg, rootk, u) * exp_generator(alg, neg, scale_int(invert(u), -1)) *
           exp_generator(alg, rootk, u);
  };
  GroupElement w = w_of(s);
  GroupElement h = w * group_inverse(w_of(RElem::one(alg->ring)));
  return {std::move(w), std::move(h)};
}

struct SteinbergSamples {
  std::vector<int> roots;       // root indices to exercise
  std::vector<Rat> rs;          // additive parameters
  std::vector<Rat> ss;          // torus parameters (units)
};

inline SteinbergSamples default_steinberg_samples(const RootSystem& rs) {
  SteinbergSamples g;
  for (int i = 0; i < rs.rank; ++i) g.roots.push_back(i);
  g.roots.push_back(rs.npos - 1);  // highest root
  g.rs = {rat(1), rat(-1), rat(1, 2), rat(-1, 2), rat(3)};
  g.ss = {rat(2), rat(3), rat(1, 2)};
  return g;
}

// (EX) additivity, (R5) torus conjugation, and (PC) power-vs-conjugate for
// integer s^2, all exact on the sample grid.
inline CheckReport verify_steinberg(const AlgebraPtr& alg, const SteinbergSamples& samples) {
  if (alg->rank() < 2) throw unsupported("group-level verification requires rank >= 2");
  CheckReport rep;
  rep.suite = "steinberg";
  for (int k : samples.roots) {
    std::string lab = alg->roots().label(k);
    for (const Rat& sq : samples.ss) {
      RElem s = RElem::constant(alg->ring, sq);
      auto [w, h] = weyl_torus_elements(alg, k, s);
      (void)w;
      Matrix<RElem> hinv = group_inverse(h).m;
      for (const Rat& rq : samples.rs) {
        RElem r = RElem::constant(alg->ring, rq);
        std::string input = "root " + lab + ", r = " + rq.get_str() + ", s = " + sq.get_str();
        GroupElement xr = exp_generator(alg, k, r);
        GroupElement xs = exp_generator(alg, k, s);
        rep.check(xr.m * xs.m == exp_generator(alg, k, r + s).m, "additivity", input);
        Matrix<RElem> conj = h.m * xr.m * hinv;
        rep.check(conj == exp_generator(alg, k, r * s * s).m, "torus conjugation", input);
        Rat s2 = sq * sq;
        if (s2.get_den() == 1) {
          rep.check(pow_matrix(xr.m, Int(s2.get_num())) == conj, "power against conjugate", input);
        }
      }
    }
  }
  return rep;
}

struct Lemma1Result {
  enum class Kind { certified, hypothesis_failed, inconclusive } kind;
  int m = 0;  // minimal (A-1)^m = 0 when certified

  bool certified() const { return kind == Kind::certified; }
};

// Unipotence certificate: if det A = 1 and the characteristic polynomials of
// A, A^p and A^(q^d) coincide, look for the minimal m <= m_max with
// (A-1)^m = 0. Equal polynomials with no such m is reported as inconclusive,
// never as a failure of the hypothesis.
inline Lemma1Result lemma1_certificate(const Matrix<RElem>& A, long p, long q, long d, int m_max) {
  if (p < 2 || q < 2 || d < 1 || m_max < 1) throw unsupported("lemma1_certificate needs p,q >= 2, d >= 1, m_max >= 1");
  if (q > (1L << 20)) throw exponent_too_large("q exceeds 2^20");
  Int qd(1);
  for (long i = 0; i < d; ++i) {
    qd *= q;
    if (mpz_sizeinbase(qd.get_mpz_t(), 2) > 25) throw exponent_too_large("q^d exceeds 2^25");
  }
  if (A.rows() != A.cols()) throw descriptor_mismatch("certificate input must be square");
  const RElem one = RElem::one(A.sample().ring());
  std::vector<RElem> ca = charpoly(A);
  RElem det = (A.rows() % 2 == 0) ? ca.back() : scale_int(ca.back(), -1);
  if (!(det == one)) return {Lemma1Result::Kind::hypothesis_failed, 0};
  if (charpoly(pow_matrix(A, Int(p))) != ca) return {Lemma1Result::Kind::hypothesis_failed, 0};
  if (charpoly(pow_matrix(A, qd)) != ca) return {Lemma1Result::Kind::hypothesis_failed, 0};
  Matrix<RElem> B = A - Matrix<RElem>::identity(A.rows(), A.sample());
  Matrix<RElem> acc = Matrix<RElem>::identity(A.rows(), A.sample());
  for (int m = 1; m <= m_max; ++m) {
    acc = acc * B;
    bool zero = true;
    for (int i = 0; zero && i < acc.rows(); ++i)
      for (int j = 0; zero && j < acc.cols(); ++j)
        if (!acc.at(i, j).is_zero()) zero = false;
    if (zero) return {Lemma1Result::Kind::certified, m};
  }
  return {Lemma1Result::Kind::inconclusive, 0};
}

// U^m as a matrix of polynomials in the formal variable:
// sum_k binom(m, k) (U-1)^k, stopping at the nilpotency index of U-1.
inline Matrix<RElem> unipotent_power_polynomial(const Matrix<RElem>& U, const std::string& var = "m") {
  if (U.rows() != U.cols()) throw descriptor_mismatch("power polynomial input must be square");
  const RingPtr base = U.sample().ring();
  Matrix<RElem> B = U - Matrix<RElem>::identity(U.rows(), U.sample());
  // nilpotency certificate first: index <= dim or the input is rejected
  {
    Matrix<RElem> acc = B;
    int idx = 1;
    auto iszero = [](const Matrix<RElem>& m) {
      for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
          if (!m.at(i, j).is_zero()) return false;
      return true;
    };
    while (idx <= U.rows() && !iszero(acc)) {
      acc = acc * B;
      ++idx;
    }
    if (idx > U.rows() && !iszero(acc)) throw not_unipotent("U - 1 is not nilpotent");
  }
  RingPtr S = Ring::poly(base, var);
  RElem mvar = RElem::poly(S, {RElem::zero(base), RElem::one(base)});
  Matrix<RElem> out = Matrix<RElem>::identity(U.rows(), RElem::one(S));
  Matrix<RElem> bk = Matrix<RElem>::identity(U.rows(), U.sample());  // (U-1)^k
  RElem binom = RElem::one(S);                                       // binom(m, k)
  for (int k = 1;; ++k) {
    bk = bk * B;
    bool zero = true;
    for (int i = 0; i < bk.rows(); ++i)
      for (int j = 0; j < bk.cols(); ++j)
        if (!bk.at(i, j).is_zero()) zero = false;
    if (zero) break;
    binom = scale_rat(binom * (mvar - RElem::integer(S, k - 1)), Rat(1, k));
    for (int i = 0; i < bk.rows(); ++i)
      for (int j = 0; j < bk.cols(); ++j)
        if (!bk.at(i, j).is_zero())
          out.at(i, j) = out.at(i, j) + binom * embed(bk.at(i, j), S);
  }
  return out;
}

}  // namespace chevalley
