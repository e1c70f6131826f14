#pragma once

#include <algorithm>
#include <cassert>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chevalley/error.hpp"
#include "chevalley/rational.hpp"

namespace chevalley {

enum class RingKind { rationals, product, poly, truncated };

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

// Descriptor tree for the supported coefficient rings:
//   Q, finite products R^d, polynomial rings R[t], truncations R[t]/(t^k).
// Descriptors are immutable and compared structurally. Nesting depth is
// capped at 3 (deepest supported shape: product of truncated, or (R[t])[u]).
class Ring {
 public:
  RingKind kind = RingKind::rationals;
  int count = 0;     // product arity
  RingPtr factor;    // product factor
  RingPtr base;      // poly/truncated coefficient ring
  std::string var;   // poly/truncated variable name
  int order = 0;     // truncation order k (residues mod t^k)

  static const RingPtr& rationals() {
    static const RingPtr q = std::make_shared<Ring>();
    return q;
  }

  static RingPtr product(int d, RingPtr f) {
    if (d < 1) throw unsupported_ring("product arity must be >= 1");
    check_depth(f);
    auto r = std::make_shared<Ring>();
    r->kind = RingKind::product;
    r->count = d;
    r->factor = std::move(f);
    return r;
  }

  static RingPtr poly(RingPtr b, std::string v = "t") {
    check_var(b, v);
    check_depth(b);
    auto r = std::make_shared<Ring>();
    r->kind = RingKind::poly;
    r->base = std::move(b);
    r->var = std::move(v);
    return r;
  }

  static RingPtr truncated(RingPtr b, std::string v, int k) {
    if (k < 1) throw unsupported_ring("truncation order must be >= 1");
    check_var(b, v);
    check_depth(b);
    auto r = std::make_shared<Ring>();
    r->kind = RingKind::truncated;
    r->base = std::move(b);
    r->var = std::move(v);
    r->order = k;
    return r;
  }

  int depth() const {
    switch (kind) {
      case RingKind::rationals: return 1;
      case RingKind::product: return 1 + factor->depth();
      default: return 1 + base->depth();
    }
  }

  bool uses_var(const std::string& v) const {
    switch (kind) {
      case RingKind::rationals: return false;
      case RingKind::product: return factor->uses_var(v);
      default: return var == v || base->uses_var(v);
    }
  }

  std::string to_string() const {
    switch (kind) {
      case RingKind::rationals: return "Q";
      case RingKind::product: return factor->to_string() + "^" + std::to_string(count);
      case RingKind::poly: return base->to_string() + "[" + var + "]";
      case RingKind::truncated:
        return base->to_string() + "[" + var + "]/(" + var + "^" + std::to_string(order) + ")";
    }
    return "?";
  }

 private:
  static void check_depth(const RingPtr& child) {
    if (!child) throw unsupported_ring("null ring descriptor");
    if (child->depth() >= 3) throw unsupported_ring("ring nesting depth capped at 3");
  }
  static void check_var(const RingPtr& b, const std::string& v) {
    if (v.empty()) throw unsupported_ring("empty variable name");
    if (b && b->uses_var(v)) throw unsupported_ring("variable '" + v + "' already used by base ring");
  }
};

inline bool same_ring(const Ring& a, const Ring& b) {
  if (&a == &b) return true;
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case RingKind::rationals: return true;
    case RingKind::product: return a.count == b.count && same_ring(*a.factor, *b.factor);
    case RingKind::poly: return a.var == b.var && same_ring(*a.base, *b.base);
    case RingKind::truncated:
      return a.var == b.var && a.order == b.order && same_ring(*a.base, *b.base);
  }
  return false;
}

inline bool same_ring(const RingPtr& a, const RingPtr& b) {
  return a == b || (a && b && same_ring(*a, *b));
}

// One element of one of the tower rings, always kept in canonical form:
//  - rationals: reduced fraction (mpq invariant)
//  - product:   exactly `count` components
//  - poly:      ascending coefficients, no trailing zeros (empty = 0)
//  - truncated: like poly, length < order after reduction mod t^k
class RElem {
 public:
  RElem() = default;

  bool valid() const { return ring_ != nullptr; }
  const RingPtr& ring() const { return ring_; }
  RingKind kind() const { return ring_->kind; }

  const Rat& rat_value() const {
    assert(kind() == RingKind::rationals);
    return q_;
  }
  const std::vector<RElem>& parts() const { return parts_; }

  static RElem rational(Rat v) {
    RElem e;
    e.ring_ = Ring::rationals();
    e.q_ = std::move(v);
    return e;
  }

  static RElem tuple(const RingPtr& r, std::vector<RElem> comps) {
    assert(r->kind == RingKind::product);
    if (static_cast<int>(comps.size()) != r->count)
      throw descriptor_mismatch("tuple arity does not match product descriptor");
    RElem e;
    e.ring_ = r;
    e.parts_ = std::move(comps);
    return e;
  }

  // Canonicalizes: truncates (for truncated rings) and strips trailing zeros.
  static RElem poly(const RingPtr& r, std::vector<RElem> coeffs) {
    assert(r->kind == RingKind::poly || r->kind == RingKind::truncated);
    if (r->kind == RingKind::truncated && static_cast<int>(coeffs.size()) > r->order)
      coeffs.resize(r->order);
    while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
    RElem e;
    e.ring_ = r;
    e.parts_ = std::move(coeffs);
    return e;
  }

  static RElem zero(const RingPtr& r) {
    switch (r->kind) {
      case RingKind::rationals: return rational(Rat(0));
      case RingKind::product:
        return tuple(r, std::vector<RElem>(r->count, zero(r->factor)));
      default: return poly(r, {});
    }
  }

  static RElem one(const RingPtr& r) {
    switch (r->kind) {
      case RingKind::rationals: return rational(Rat(1));
      case RingKind::product:
        return tuple(r, std::vector<RElem>(r->count, one(r->factor)));
      default: return poly(r, {one(r->base)});
    }
  }

  // n * 1 in r (diagonal embedding of an integer/rational constant).
  static RElem constant(const RingPtr& r, const Rat& q) {
    switch (r->kind) {
      case RingKind::rationals: return rational(q);
      case RingKind::product:
        return tuple(r, std::vector<RElem>(r->count, constant(r->factor, q)));
      default:
        if (q == 0) return poly(r, {});
        return poly(r, {constant(r->base, q)});
    }
  }

  static RElem integer(const RingPtr& r, long n) { return constant(r, Rat(n)); }

  bool is_zero() const {
    switch (kind()) {
      case RingKind::rationals: return q_ == 0;
      case RingKind::product:
        for (const auto& p : parts_)
          if (!p.is_zero()) return false;
        return true;
      default: return parts_.empty();
    }
  }

  bool is_one() const {
    switch (kind()) {
      case RingKind::rationals: return q_ == 1;
      case RingKind::product:
        for (const auto& p : parts_)
          if (!p.is_one()) return false;
        return true;
      default: return parts_.size() == 1 && parts_[0].is_one();
    }
  }

  friend bool operator==(const RElem& a, const RElem& b) {
    assert(a.valid() && b.valid());
    if (!same_ring(a.ring_, b.ring_)) return false;
    if (a.kind() == RingKind::rationals) return a.q_ == b.q_;
    if (a.parts_.size() != b.parts_.size()) return false;
    for (std::size_t i = 0; i < a.parts_.size(); ++i)
      if (!(a.parts_[i] == b.parts_[i])) return false;
    return true;
  }
  friend bool operator!=(const RElem& a, const RElem& b) { return !(a == b); }

 private:
  RingPtr ring_;
  Rat q_;
  std::vector<RElem> parts_;
};

inline void require_same_ring(const RElem& a, const RElem& b, const char* op) {
  if (!same_ring(a.ring(), b.ring()))
    throw descriptor_mismatch(std::string(op) + ": elements of " + a.ring()->to_string() +
                              " and " + b.ring()->to_string());
}

inline RElem operator+(const RElem& a, const RElem& b) {
  require_same_ring(a, b, "add");
  switch (a.kind()) {
    case RingKind::rationals: return RElem::rational(a.rat_value() + b.rat_value());
    case RingKind::product: {
      std::vector<RElem> out;
      out.reserve(a.parts().size());
      for (std::size_t i = 0; i < a.parts().size(); ++i) out.push_back(a.parts()[i] + b.parts()[i]);
      return RElem::tuple(a.ring(), std::move(out));
    }
    default: {
      const auto& x = a.parts();
      const auto& y = b.parts();
      std::vector<RElem> out;
      out.reserve(std::max(x.size(), y.size()));
      for (std::size_t i = 0; i < std::max(x.size(), y.size()); ++i) {
        if (i >= x.size()) out.push_back(y[i]);
        else if (i >= y.size()) out.push_back(x[i]);
        else out.push_back(x[i] + y[i]);
      }
      return RElem::poly(a.ring(), std::move(out));
    }
  }
}

inline RElem operator-(const RElem& a) {
  switch (a.kind()) {
    case RingKind::rationals: return RElem::rational(-a.rat_value());
    case RingKind::product: {
      std::vector<RElem> out;
      out.reserve(a.parts().size());
      for (const auto& p : a.parts()) out.push_back(-p);
      return RElem::tuple(a.ring(), std::move(out));
    }
    default: {
      std::vector<RElem> out;
      out.reserve(a.parts().size());
      for (const auto& p : a.parts()) out.push_back(-p);
      return RElem::poly(a.ring(), std::move(out));
    }
  }
}

inline RElem operator-(const RElem& a, const RElem& b) { return a + (-b); }

inline RElem operator*(const RElem& a, const RElem& b) {
  require_same_ring(a, b, "mul");
  switch (a.kind()) {
    case RingKind::rationals: return RElem::rational(a.rat_value() * b.rat_value());
    case RingKind::product: {
      std::vector<RElem> out;
      out.reserve(a.parts().size());
      for (std::size_t i = 0; i < a.parts().size(); ++i) out.push_back(a.parts()[i] * b.parts()[i]);
      return RElem::tuple(a.ring(), std::move(out));
    }
    default: {
      const auto& x = a.parts();
      const auto& y = b.parts();
      if (x.empty() || y.empty()) return RElem::zero(a.ring());
      std::size_t n = x.size() + y.size() - 1;
      if (a.kind() == RingKind::truncated)
        n = std::min<std::size_t>(n, static_cast<std::size_t>(a.ring()->order));
      std::vector<RElem> out(n, RElem::zero(a.ring()->base));
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t j = 0; j < y.size() && i + j < n; ++j) {
          if (y[j].is_zero()) continue;
          out[i + j] = out[i + j] + x[i] * y[j];
        }
      }
      return RElem::poly(a.ring(), std::move(out));
    }
  }
}

// Cheap scalar actions used all over the structure-constant paths.
inline RElem scale_int(const RElem& a, long n) {
  if (n == 0) return RElem::zero(a.ring());
  if (n == 1) return a;
  return a * RElem::integer(a.ring(), n);
}

inline RElem scale_rat(const RElem& a, const Rat& q) {
  if (q == 0) return RElem::zero(a.ring());
  if (q == 1) return a;
  return a * RElem::constant(a.ring(), q);
}

inline bool is_nilpotent(const RElem& a) {
  switch (a.kind()) {
    case RingKind::rationals: return a.rat_value() == 0;
    case RingKind::product:
      for (const auto& p : a.parts())
        if (!is_nilpotent(p)) return false;
      return true;
    case RingKind::poly:
      for (const auto& c : a.parts())
        if (!is_nilpotent(c)) return false;
      return true;
    case RingKind::truncated:
      // x = c0 + (multiple of t); t is nilpotent here, so x is nilpotent iff c0 is.
      return a.parts().empty() || is_nilpotent(a.parts()[0]);
  }
  return false;
}

inline std::optional<RElem> try_invert(const RElem& a) {
  switch (a.kind()) {
    case RingKind::rationals: {
      if (a.rat_value() == 0) return std::nullopt;
      return RElem::rational(1 / a.rat_value());
    }
    case RingKind::product: {
      std::vector<RElem> out;
      out.reserve(a.parts().size());
      for (const auto& p : a.parts()) {
        auto inv = try_invert(p);
        if (!inv) return std::nullopt;
        out.push_back(std::move(*inv));
      }
      return RElem::tuple(a.ring(), std::move(out));
    }
    default: {
      // a = c0 + n. Invertible iff c0 is a unit of the base and n is nilpotent;
      // then a^-1 = sum_i u (-n u)^i with u = c0^-1 lifted as a constant.
      RElem c0 = a.parts().empty() ? RElem::zero(a.ring()->base) : a.parts()[0];
      auto u0 = try_invert(c0);
      if (!u0) return std::nullopt;
      std::vector<RElem> rest;
      if (!a.parts().empty()) {
        rest.assign(a.parts().begin(), a.parts().end());
        rest[0] = RElem::zero(a.ring()->base);
      }
      RElem n = RElem::poly(a.ring(), std::move(rest));
      RElem u = RElem::poly(a.ring(), {*u0});
      if (n.is_zero()) return u;
      if (!is_nilpotent(n)) return std::nullopt;
      RElem acc = u;
      RElem step = -(n * u);
      RElem term = u;
      for (int guard = 0; guard < 1024; ++guard) {
        term = term * step;
        if (term.is_zero()) return acc;
        acc = acc + term;
      }
      throw error("inversion series failed to terminate");
    }
  }
}

inline bool is_unit(const RElem& a) { return try_invert(a).has_value(); }

inline RElem invert(const RElem& a) {
  auto inv = try_invert(a);
  if (!inv) throw not_a_unit("not a unit in " + a.ring()->to_string());
  return *inv;
}

inline RElem pow_elem(const RElem& a, long e) {
  if (e < 0) return pow_elem(invert(a), -e);
  RElem acc = RElem::one(a.ring());
  RElem base = a;
  unsigned long n = static_cast<unsigned long>(e);
  while (n) {
    if (n & 1) acc = acc * base;
    base = base * base;
    n >>= 1;
  }
  return acc;
}

// --- embeddings -------------------------------------------------------------

inline bool can_embed(const RingPtr& src, const RingPtr& dst) {
  if (same_ring(src, dst)) return true;
  switch (dst->kind) {
    case RingKind::rationals: return false;
    case RingKind::product:
      if (src->kind == RingKind::product && src->count == dst->count &&
          can_embed(src->factor, dst->factor))
        return true;
      return can_embed(src, dst->factor);
    default:
      if (src->kind == RingKind::poly && src->var == dst->var && can_embed(src->base, dst->base))
        return true;
      return can_embed(src, dst->base);
  }
}

// Structural embedding: identity, diagonal into products, constants into
// polynomial rings, coefficientwise lift of same-variable polynomials
// (including Q[t] -> R[t] and R[t] -> R[t]/(t^k)).
inline RElem embed(const RElem& e, const RingPtr& target) {
  if (same_ring(e.ring(), target)) return e;
  switch (target->kind) {
    case RingKind::rationals:
      throw descriptor_mismatch("cannot embed " + e.ring()->to_string() + " into Q");
    case RingKind::product: {
      if (e.kind() == RingKind::product && e.ring()->count == target->count &&
          can_embed(e.ring()->factor, target->factor)) {
        std::vector<RElem> out;
        out.reserve(e.parts().size());
        for (const auto& p : e.parts()) out.push_back(embed(p, target->factor));
        return RElem::tuple(target, std::move(out));
      }
      RElem c = embed(e, target->factor);
      return RElem::tuple(target, std::vector<RElem>(target->count, c));
    }
    default: {
      if (e.kind() == RingKind::poly && e.ring()->var == target->var &&
          can_embed(e.ring()->base, target->base)) {
        std::vector<RElem> out;
        out.reserve(e.parts().size());
        for (const auto& c : e.parts()) out.push_back(embed(c, target->base));
        return RElem::poly(target, std::move(out));
      }
      return RElem::poly(target, {embed(e, target->base)});
    }
  }
}

inline RElem embed_rat(const Rat& q, const RingPtr& target) { return RElem::constant(target, q); }

// --- polynomial access ------------------------------------------------------

inline bool is_poly_like(const RElem& e) {
  return e.kind() == RingKind::poly || e.kind() == RingKind::truncated;
}

inline int poly_degree(const RElem& e) {
  assert(is_poly_like(e));
  return static_cast<int>(e.parts().size()) - 1;  // -1 for the zero polynomial
}

inline RElem poly_coeff(const RElem& e, int i) {
  assert(is_poly_like(e));
  if (i < 0 || i >= static_cast<int>(e.parts().size())) return RElem::zero(e.ring()->base);
  return e.parts()[i];
}

inline RElem poly_var(const RingPtr& r) {
  assert(r->kind == RingKind::poly || r->kind == RingKind::truncated);
  if (r->kind == RingKind::truncated && r->order == 1) return RElem::zero(r);
  return RElem::poly(r, {RElem::zero(r->base), RElem::one(r->base)});
}

// Smallest exponent with nonzero coefficient; INT_MAX-like marker for 0.
inline constexpr int valuation_infinity = 1 << 30;

inline int valuation(const RElem& e) {
  if (e.is_zero()) return valuation_infinity;
  if (!is_poly_like(e)) return 0;
  for (std::size_t i = 0; i < e.parts().size(); ++i)
    if (!e.parts()[i].is_zero()) return static_cast<int>(i);
  return valuation_infinity;
}

// f(g) for a polynomial f; g may live in any polynomial/truncated ring the
// coefficients of f embed into. Plain Horner.
inline RElem substitute(const RElem& f, const RElem& g) {
  if (f.kind() != RingKind::poly)
    throw descriptor_mismatch("substitute: first argument must be a polynomial");
  const RingPtr& target = g.ring();
  if (target->kind != RingKind::poly && target->kind != RingKind::truncated)
    throw descriptor_mismatch("substitute: target must be a polynomial or truncated ring");
  if (!can_embed(f.ring()->base, target))
    throw descriptor_mismatch("substitute: coefficients of " + f.ring()->to_string() +
                              " do not embed into " + target->to_string());
  RElem acc = RElem::zero(target);
  for (int i = poly_degree(f); i >= 0; --i)
    acc = acc * g + embed(poly_coeff(f, i), target);
  return acc;
}

// Evaluation homomorphism R[t] -> S at a point of S (R must embed into S).
inline RElem eval_poly(const RElem& f, const RElem& point) {
  if (f.kind() != RingKind::poly)
    throw descriptor_mismatch("eval_poly: first argument must be a polynomial");
  if (!can_embed(f.ring()->base, point.ring()))
    throw descriptor_mismatch("eval_poly: coefficients do not embed into the point's ring");
  RElem acc = RElem::zero(point.ring());
  for (int i = poly_degree(f); i >= 0; --i)
    acc = acc * point + embed(poly_coeff(f, i), point.ring());
  return acc;
}

// Reduction R[t] -> R[t]/(t^k) (same base, same variable).
inline RElem truncate_to(const RElem& f, const RingPtr& trunc_ring) {
  assert(trunc_ring->kind == RingKind::truncated);
  if (f.kind() != RingKind::poly || f.ring()->var != trunc_ring->var ||
      !same_ring(f.ring()->base, trunc_ring->base))
    throw descriptor_mismatch("truncate_to: incompatible rings");
  return RElem::poly(trunc_ring, f.parts());
}

// --- idempotents ------------------------------------------------------------

// Complete list of primitive idempotents for the shapes where that list is
// finite and computable here: Q, truncated-over-Q, and products of such.
inline std::vector<RElem> primitive_idempotents(const RingPtr& r) {
  switch (r->kind) {
    case RingKind::rationals: return {RElem::one(r)};
    case RingKind::truncated:
      if (r->base->kind != RingKind::rationals)
        throw unsupported_ring("idempotents: truncated ring must have base Q");
      // e = e^2 forces e in {0, 1}: the nilpotent part of an idempotent unit
      // complement vanishes degree by degree.
      return {RElem::one(r)};
    case RingKind::product: {
      std::vector<RElem> inner = primitive_idempotents(r->factor);
      std::vector<RElem> out;
      for (int j = 0; j < r->count; ++j) {
        for (const auto& e : inner) {
          std::vector<RElem> comps(r->count, RElem::zero(r->factor));
          comps[j] = e;
          out.push_back(RElem::tuple(r, std::move(comps)));
        }
      }
      return out;
    }
    case RingKind::poly:
      throw unsupported_ring("idempotents: polynomial rings not supported");
  }
  throw unsupported_ring("idempotents: unsupported ring");
}

// --- printing ---------------------------------------------------------------

inline std::string to_string(const RElem& e) {
  switch (e.kind()) {
    case RingKind::rationals: return format_rat(e.rat_value());
    case RingKind::product: {
      std::string s = "(";
      for (std::size_t i = 0; i < e.parts().size(); ++i) {
        if (i) s += ", ";
        s += to_string(e.parts()[i]);
      }
      return s + ")";
    }
    default: {
      if (e.parts().empty()) return "0";
      std::string s;
      const std::string& v = e.ring()->var;
      for (std::size_t i = 0; i < e.parts().size(); ++i) {
        if (e.parts()[i].is_zero()) continue;
        if (!s.empty()) s += " + ";
        std::string c = to_string(e.parts()[i]);
        bool needs_parens = c.find_first_of("+ ") != std::string::npos;
        if (i == 0) {
          s += c;
        } else {
          if (needs_parens) c = "(" + c + ")";
          if (c == "1") c.clear();
          s += c.empty() ? "" : c + "*";
          s += v;
          if (i > 1) s += "^" + std::to_string(i);
        }
      }
      return s.empty() ? "0" : s;
    }
  }
}

}  // namespace chevalley
