#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "chevalley/ring.hpp"

namespace chevalley {

// Deterministic sampling. mt19937_64 output is pinned by the standard, and we
// avoid std distributions (whose mapping is implementation-defined) so the
// same seed yields the same stream on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}

  std::uint64_t next() { return g_(); }

  long below(long n) {
    assert(n > 0);
    return static_cast<long>(next() % static_cast<std::uint64_t>(n));
  }

  bool coin() { return (next() & 1) != 0; }

  // Small exact rationals, numerators in [-9, 9], denominators in {1,2,3}.
  Rat small_rat() {
    long num = below(19) - 9;
    static const long dens[3] = {1, 2, 3};
    return rat(num, dens[below(3)]);
  }

  Rat small_rat_nonzero() {
    for (;;) {
      Rat q = small_rat();
      if (q != 0) return q;
    }
  }

  // Units drawn from a pool that includes values of absolute value != 1 so
  // that torus elements built from them act non-trivially.
  Rat unit_rat() {
    static const std::pair<long, long> pool[] = {{2, 1}, {3, 1}, {1, 2}, {-2, 1}, {5, 1},
                                                 {2, 3}, {-1, 1}, {3, 2}, {1, 3}, {-3, 1}};
    auto [n, d] = pool[below(10)];
    return rat(n, d);
  }

  RElem sample(const RingPtr& r, int poly_degree_cap = 2) {
    switch (r->kind) {
      case RingKind::rationals: return RElem::rational(small_rat());
      case RingKind::product: {
        std::vector<RElem> parts;
        for (int i = 0; i < r->count; ++i) parts.push_back(sample(r->factor, poly_degree_cap));
        return RElem::tuple(r, std::move(parts));
      }
      default: {
        int deg = static_cast<int>(below(poly_degree_cap + 1));
        std::vector<RElem> coeffs;
        for (int i = 0; i <= deg; ++i) coeffs.push_back(sample(r->base, 0));
        return RElem::poly(r, std::move(coeffs));
      }
    }
  }

  RElem sample_nonzero(const RingPtr& r) {
    for (;;) {
      RElem e = sample(r);
      if (!e.is_zero()) return e;
    }
  }

  RElem sample_unit(const RingPtr& r) {
    switch (r->kind) {
      case RingKind::rationals: return RElem::rational(unit_rat());
      case RingKind::product: {
        std::vector<RElem> parts;
        for (int i = 0; i < r->count; ++i) parts.push_back(sample_unit(r->factor));
        return RElem::tuple(r, std::move(parts));
      }
      default: {
        // unit constant term, nilpotent tail if the ring has one
        std::vector<RElem> coeffs;
        coeffs.push_back(sample_unit(r->base));
        if (r->kind == RingKind::truncated) {
          for (int i = 1; i < r->order && i <= 2; ++i) coeffs.push_back(sample(r->base, 0));
        }
        return RElem::poly(r, std::move(coeffs));
      }
    }
  }

  template <class T>
  const T& pick(const std::vector<T>& v) {
    assert(!v.empty());
    return v[static_cast<std::size_t>(below(static_cast<long>(v.size())))];
  }

 private:
  std::mt19937_64 g_;
};

}  // namespace chevalley
