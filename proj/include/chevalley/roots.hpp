#pragma once

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <map>
#include <memory>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "chevalley/error.hpp"
#include "chevalley/matrix.hpp"

namespace chevalley {

using Coord = std::vector<long>;          // coordinates over the simple roots
using WeylWord = std::vector<int>;        // simple indices, leftmost applied last
using DynkinSymmetry = std::vector<int>;  // i -> image[i], Cartan-preserving

class RootSystem;
using RootSystemPtr = std::shared_ptr<const RootSystem>;

// Reduced irreducible root system in simple-root coordinates. Positive roots
// are stored first, ordered by height and then by the pinned tie break (at the
// first differing coordinate the larger entry comes first); negatives mirror
// the positives, so negate() is index +- npos.
class RootSystem {
 public:
  char type = 0;
  int rank = 0;
  std::vector<std::vector<long>> cartan;  // cartan[i][j] = pairing of a_i with the coroot of a_j
  std::vector<long> sym;                  // d_i: (a_i, a_j) = cartan[i][j] * d_j, minimal integers
  std::vector<Coord> roots;
  int npos = 0;

  static RootSystemPtr build(char type, int rank);

  int count() const { return static_cast<int>(roots.size()); }
  const Coord& coord(int k) const { return roots[static_cast<std::size_t>(k)]; }

  int find(const Coord& c) const {
    auto it = index_.find(c);
    return it == index_.end() ? -1 : it->second;
  }
  bool is_root(const Coord& c) const { return find(c) >= 0; }
  bool positive(int k) const { return k < npos; }
  int negate(int k) const { return k < npos ? k + npos : k - npos; }

  long height(int k) const {
    const Coord& c = coord(k);
    return std::accumulate(c.begin(), c.end(), 0L);
  }
  bool is_simple(int k) const { return k < rank; }  // positives sorted by height

  long bilinear(int k, int j) const {
    const Coord &b = coord(k), &c = coord(j);
    long s = 0;
    for (int p = 0; p < rank; ++p)
      for (int q = 0; q < rank; ++q) s += b[p] * c[q] * cartan[p][q] * sym[q];
    return s;
  }
  long norm2(int k) const { return bilinear(k, k); }

  // coefficients of the coroot of roots[k] over the simple coroots; integral
  Coord coroot(int k) const {
    const Coord& b = coord(k);
    long n2 = norm2(k);
    Coord out(b.size());
    for (int i = 0; i < rank; ++i) {
      long num = 2 * b[i] * sym[i];
      if (num % n2 != 0) throw error("coroot coefficient not integral");
      out[i] = num / n2;
    }
    return out;
  }

  // minimal pair (e, g - e) of positive roots summing to the non-simple
  // positive root g, minimality in the stored order of the first component
  std::pair<int, int> extraspecial(int k) const {
    if (!positive(k) || is_simple(k)) throw error("extraspecial pair needs a non-simple positive root");
    const Coord& g = coord(k);
    for (int e = 0; e < npos; ++e) {
      if (height(e) >= height(k)) break;
      Coord rest(g.size());
      for (std::size_t i = 0; i < g.size(); ++i) rest[i] = g[i] - coord(e)[i];
      int r = find(rest);
      if (r >= 0 && positive(r)) return {e, r};
    }
    throw error("positive root with no positive decomposition");
  }

  std::string label(int k) const;
  int parse_label(const std::string& s) const;

 private:
  std::map<Coord, int> index_;
  void finish();  // sorts, mirrors negatives, builds the index
};

// (p, q): the longest string beta - p*alpha, ..., beta + q*alpha inside the
// root set. Throws for beta = +-alpha.
inline std::pair<int, int> root_string(const RootSystem& rs, int alpha, int beta) {
  const Coord &a = rs.coord(alpha), &b = rs.coord(beta);
  // reduced system: proportional means equal or opposite
  if (alpha == beta || alpha == rs.negate(beta))
    throw proportional_roots("root string through a proportional root");
  int p = 0, q = 0;
  Coord c = b;
  for (;;) {
    for (std::size_t i = 0; i < c.size(); ++i) c[i] -= a[i];
    if (!rs.is_root(c)) break;
    ++p;
  }
  c = b;
  for (;;) {
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += a[i];
    if (!rs.is_root(c)) break;
    ++q;
  }
  return {p, q};
}

// Cartan integer <beta, alpha~> read off the alpha-string through beta
inline long cartan_pairing(const RootSystem& rs, int beta, int alpha) {
  if (beta == alpha) return 2;
  if (beta == rs.negate(alpha)) return -2;
  auto [p, q] = root_string(rs, alpha, beta);
  return p - q;
}

inline int reflect_root(const RootSystem& rs, int k, int j) {
  long t = cartan_pairing(rs, k, j);
  Coord c = rs.coord(k);
  for (int i = 0; i < rs.rank; ++i) c[i] -= t * rs.coord(j)[i];
  int out = rs.find(c);
  if (out < 0) throw error("reflection left the root set");
  return out;
}

// matrix of the simple reflection s_i on simple-root coordinates
inline Matrix<long> simple_reflection_matrix(const RootSystem& rs, int i) {
  Matrix<long> m = Matrix<long>::identity(rs.rank, 1L);
  for (int j = 0; j < rs.rank; ++j) m.at(i, j) -= rs.cartan[j][i];
  return m;
}

// evaluation of a word: s_{w[0]} applied last
inline Matrix<long> weyl_eval(const RootSystem& rs, const WeylWord& w) {
  Matrix<long> m = Matrix<long>::identity(rs.rank, 1L);
  for (int i : w) m = m * simple_reflection_matrix(rs, i);
  return m;
}

inline Matrix<long> symmetry_matrix(const RootSystem& rs, const DynkinSymmetry& d) {
  Matrix<long> m(rs.rank, rs.rank, 0L);
  for (int j = 0; j < rs.rank; ++j) m.at(d[static_cast<std::size_t>(j)], j) = 1;
  return m;
}

inline std::vector<DynkinSymmetry> dynkin_symmetries(const RootSystem& rs) {
  std::vector<int> p(static_cast<std::size_t>(rs.rank));
  std::iota(p.begin(), p.end(), 0);
  std::vector<DynkinSymmetry> out;
  do {
    bool ok = true;
    for (int i = 0; ok && i < rs.rank; ++i)
      for (int j = 0; ok && j < rs.rank; ++j)
        if (rs.cartan[static_cast<std::size_t>(p[i])][static_cast<std::size_t>(p[j])] !=
            rs.cartan[i][j])
          ok = false;
    if (ok) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  std::sort(out.begin(), out.end());
  return out;
}

inline DynkinSymmetry inverse_symmetry(const DynkinSymmetry& d) {
  DynkinSymmetry inv(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) inv[static_cast<std::size_t>(d[i])] = static_cast<int>(i);
  return inv;
}

struct RootAutFactors {
  WeylWord word;
  DynkinSymmetry delta;
};

// Factors a lattice map permuting the roots as pi = weyl_eval(word) composed
// after the symmetry: pi = W * D exactly. Word is the canonical descent word
// (smallest simple index sent negative is cleared first).
inline RootAutFactors reduce_to_diagram_symmetry(const RootSystem& rs, const Matrix<long>& pi) {
  if (pi.rows() != rs.rank || pi.cols() != rs.rank)
    throw not_an_automorphism("wrong matrix size for the root lattice");
  std::vector<int> image(static_cast<std::size_t>(rs.count()));
  std::set<int> seen;
  for (int k = 0; k < rs.count(); ++k) {
    std::vector<long> v(rs.coord(k).begin(), rs.coord(k).end());
    int im = rs.find(mat_vec(pi, v));
    if (im < 0) throw not_an_automorphism("image of a root is not a root");
    image[static_cast<std::size_t>(k)] = im;
    seen.insert(im);
  }
  if (static_cast<int>(seen.size()) != rs.count())
    throw not_an_automorphism("root images collide");

  // invert via the image permutation: column j of pi^-1 is the preimage of a_j
  Matrix<long> tau(rs.rank, rs.rank, 0L);
  for (int j = 0; j < rs.rank; ++j) {
    int pre = -1;
    for (int k = 0; k < rs.count(); ++k)
      if (image[static_cast<std::size_t>(k)] == j) pre = k;
    if (pre < 0) throw not_an_automorphism("no preimage for a simple root");
    for (int i = 0; i < rs.rank; ++i) tau.at(i, j) = rs.coord(pre)[i];
  }

  WeylWord word;
  for (int guard = 0; guard <= rs.npos; ++guard) {
    int neg = -1;
    for (int j = 0; j < rs.rank && neg < 0; ++j) {
      long h = 0;
      for (int i = 0; i < rs.rank; ++i) h += tau.at(i, j);
      if (h < 0) neg = j;
    }
    if (neg < 0) break;
    if (guard == rs.npos) throw not_an_automorphism("descent did not terminate");
    word.push_back(neg);
    tau = tau * simple_reflection_matrix(rs, neg);
  }

  // tau is now a permutation matrix of the simples: tau = matrix of delta'
  DynkinSymmetry dprime(static_cast<std::size_t>(rs.rank), -1);
  for (int j = 0; j < rs.rank; ++j) {
    int hit = -1;
    for (int i = 0; i < rs.rank; ++i) {
      if (tau.at(i, j) == 1 && hit < 0)
        hit = i;
      else if (tau.at(i, j) != 0)
        hit = -2;
    }
    if (hit < 0) throw not_an_automorphism("descent residue is not a symmetry");
    dprime[static_cast<std::size_t>(j)] = hit;
  }
  RootAutFactors out{word, inverse_symmetry(dprime)};
  if (pi != weyl_eval(rs, out.word) * symmetry_matrix(rs, out.delta))
    throw not_an_automorphism("factorization failed to recompose");
  return out;
}

inline RootSystemPtr build_root_system(char type, int rank) { return RootSystem::build(type, rank); }

// ---- implementation ----

inline std::string RootSystem::label(int k) const {
  const Coord& c = coord(k);
  std::string s;
  for (int i = 0; i < rank; ++i) {
    long n = c[i];
    if (n == 0) continue;
    if (n > 0 && !s.empty()) s += '+';
    if (n < 0) s += '-';
    if (std::abs(n) != 1) s += std::to_string(std::abs(n));
    s += 'a';
    s += std::to_string(i + 1);
  }
  return s;
}

inline int RootSystem::parse_label(const std::string& s) const {
  Coord c(static_cast<std::size_t>(rank), 0);
  std::size_t p = 0;
  if (s.empty()) throw parse_error("empty root label");
  while (p < s.size()) {
    long sign = 1;
    if (s[p] == '+' || s[p] == '-') {
      if (s[p] == '-') sign = -1;
      ++p;
    } else if (p != 0) {
      throw parse_error("expected sign in root label: " + s);
    }
    long mult = 1;
    if (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) {
      mult = 0;
      while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p])))
        mult = mult * 10 + (s[p++] - '0');
      if (mult == 0) throw parse_error("zero coefficient in root label: " + s);
    }
    if (p >= s.size() || s[p] != 'a') throw parse_error("expected 'a<index>' in root label: " + s);
    ++p;
    if (p >= s.size() || !std::isdigit(static_cast<unsigned char>(s[p])))
      throw parse_error("missing simple index in root label: " + s);
    long idx = 0;
    while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p])))
      idx = idx * 10 + (s[p++] - '0');
    if (idx < 1 || idx > rank) throw parse_error("simple index out of range in root label: " + s);
    if (c[static_cast<std::size_t>(idx - 1)] != 0) throw parse_error("repeated simple index in root label: " + s);
    c[static_cast<std::size_t>(idx - 1)] = sign * mult;
  }
  int k = find(c);
  if (k < 0) throw not_a_root("not a root: " + s);
  return k;
}

namespace detail {

inline std::vector<std::vector<long>> cartan_matrix(char type, int rank) {
  const int l = rank;
  auto bad = [&] {
    return invalid_type("no reduced irreducible system " + std::string(1, type) + std::to_string(rank) +
                        "; valid: A1-A8, B2-B8, C3-C8, D4-D8, E6-E8, F4, G2");
  };
  std::vector<std::vector<long>> c(static_cast<std::size_t>(l), std::vector<long>(static_cast<std::size_t>(l), 0));
  for (int i = 0; i < l; ++i) c[i][i] = 2;
  auto chain = [&](int upto) {
    for (int i = 0; i + 1 < upto; ++i) c[i][i + 1] = c[i + 1][i] = -1;
  };
  switch (type) {
    case 'A':
      if (l < 1 || l > 8) throw bad();
      chain(l);
      break;
    case 'B':
      if (l < 2 || l > 8) throw bad();
      chain(l - 1);
      c[l - 2][l - 1] = -2;
      c[l - 1][l - 2] = -1;
      break;
    case 'C':
      if (l < 3 || l > 8) throw bad();
      chain(l - 1);
      c[l - 2][l - 1] = -1;
      c[l - 1][l - 2] = -2;
      break;
    case 'D':
      if (l < 4 || l > 8) throw bad();
      chain(l - 1);
      c[l - 3][l - 1] = c[l - 1][l - 3] = -1;
      break;
    case 'E': {
      if (l < 6 || l > 8) throw bad();
      // Bourbaki: chain 1-3-4-5-...-l, node 2 attached to 4
      auto link = [&](int i, int j) { c[i - 1][j - 1] = c[j - 1][i - 1] = -1; };
      link(1, 3);
      link(3, 4);
      link(2, 4);
      for (int i = 4; i < l; ++i) link(i, i + 1);
      break;
    }
    case 'F':
      if (l != 4) throw bad();
      c = {{2, -1, 0, 0}, {-1, 2, -2, 0}, {0, -1, 2, -1}, {0, 0, -1, 2}};
      break;
    case 'G':
      if (l != 2) throw bad();
      c = {{2, -1}, {-3, 2}};
      break;
    default:
      throw bad();
  }
  return c;
}

inline std::vector<long> symmetrizer(const std::vector<std::vector<long>>& c) {
  const int l = static_cast<int>(c.size());
  std::vector<long> d(static_cast<std::size_t>(l), 0);
  d[0] = 6;  // divisible by every edge ratio; rescaled below
  std::vector<int> stack{0};
  while (!stack.empty()) {
    int i = stack.back();
    stack.pop_back();
    for (int j = 0; j < l; ++j) {
      if (j == i || c[i][j] == 0) continue;
      long v = d[static_cast<std::size_t>(i)] * c[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
      if (v % c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != 0)
        throw error("symmetrizer is not integral");
      v /= c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (d[static_cast<std::size_t>(j)] == 0) {
        d[static_cast<std::size_t>(j)] = v;
        stack.push_back(j);
      } else if (d[static_cast<std::size_t>(j)] != v) {
        throw error("symmetrizer is inconsistent");
      }
    }
  }
  long g = 0;
  for (long v : d) g = std::gcd(g, v);
  if (g == 0) throw error("disconnected diagram");
  for (long& v : d) v /= g;
  return d;
}

}  // namespace detail

inline RootSystemPtr RootSystem::build(char type, int rank) {
  auto rs = std::make_shared<RootSystem>();
  rs->type = type;
  rs->rank = rank;
  rs->cartan = detail::cartan_matrix(type, rank);
  rs->sym = detail::symmetrizer(rs->cartan);

  // closure by height: q = p - <b, a_i~> new roots live one height up
  std::set<Coord> pos;
  std::vector<Coord> level;
  for (int i = 0; i < rank; ++i) {
    Coord e(static_cast<std::size_t>(rank), 0);
    e[static_cast<std::size_t>(i)] = 1;
    pos.insert(e);
    level.push_back(e);
  }
  while (!level.empty()) {
    std::vector<Coord> next;
    for (const Coord& b : level) {
      for (int i = 0; i < rank; ++i) {
        long pair = 0;
        for (int j = 0; j < rank; ++j) pair += b[static_cast<std::size_t>(j)] * rs->cartan[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
        int p = 0;
        Coord down = b;
        for (;;) {
          down[static_cast<std::size_t>(i)] -= 1;
          bool neg = false;
          for (long v : down)
            if (v < 0) neg = true;
          if (neg || !pos.count(down)) break;
          ++p;
        }
        if (p - pair >= 1) {
          Coord up = b;
          up[static_cast<std::size_t>(i)] += 1;
          if (pos.insert(up).second) next.push_back(up);
        }
      }
    }
    level = std::move(next);
  }

  rs->roots.assign(pos.begin(), pos.end());
  rs->finish();
  return rs;
}

inline void RootSystem::finish() {
  auto before = [this](const Coord& x, const Coord& y) {
    long hx = std::accumulate(x.begin(), x.end(), 0L);
    long hy = std::accumulate(y.begin(), y.end(), 0L);
    if (hx != hy) return hx < hy;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i] != y[i]) return x[i] > y[i];  // pinned tie break
    return false;
  };
  std::sort(roots.begin(), roots.end(), before);
  npos = static_cast<int>(roots.size());
  for (int k = 0; k < npos; ++k) {
    Coord n = roots[static_cast<std::size_t>(k)];
    for (long& v : n) v = -v;
    roots.push_back(n);
  }
  for (int k = 0; k < count(); ++k) index_[roots[static_cast<std::size_t>(k)]] = k;
  // reduced: 2a never lands in the set
  for (int k = 0; k < npos; ++k) {
    Coord twice = roots[static_cast<std::size_t>(k)];
    for (long& v : twice) v *= 2;
    if (index_.count(twice)) throw error("root system is not reduced");
  }
}

}  // namespace chevalley
