#include <catch2/catch_amalgamated.hpp>

#include "chevalley/matrix.hpp"
#include "chevalley/random.hpp"
#include "chevalley/ring.hpp"

using namespace chevalley;

namespace {

std::vector<RingPtr> tower_samples() {
  auto Q = Ring::rationals();
  return {
      Q,
      Ring::product(2, Q),
      Ring::product(3, Q),
      Ring::poly(Q, "t"),
      Ring::truncated(Q, "t", 3),
      Ring::poly(Ring::product(2, Q), "t"),
      Ring::truncated(Ring::product(2, Q), "t", 4),
      Ring::poly(Ring::poly(Q, "t"), "u"),
      Ring::product(2, Ring::truncated(Q, "t", 3)),
  };
}

RElem qp(const RingPtr& polyring, std::initializer_list<long> coeffs) {
  std::vector<RElem> c;
  for (long v : coeffs) c.push_back(RElem::integer(polyring->base, v));
  return RElem::poly(polyring, std::move(c));
}

}  // namespace

TEST_CASE("rational parsing and formatting") {
  CHECK(parse_rat("5/6") == rat(5, 6));
  CHECK(parse_rat("-3") == rat(-3));
  CHECK(parse_rat("4/6") == rat(2, 3));
  CHECK(format_rat(rat(5, 6)) == "5/6");
  CHECK(format_rat(rat(-4, 2)) == "-2");
  CHECK_THROWS_AS(parse_rat("1/0"), parse_error);
  CHECK_THROWS_AS(parse_rat("a"), parse_error);
  CHECK_THROWS_AS(parse_rat("1.5"), parse_error);
  CHECK_THROWS_AS(parse_rat(""), parse_error);
}

TEST_CASE("descriptor construction and validation") {
  auto Q = Ring::rationals();
  CHECK(Q->to_string() == "Q");
  CHECK(Ring::product(2, Q)->to_string() == "Q^2");
  CHECK(Ring::poly(Q, "t")->to_string() == "Q[t]");
  CHECK(Ring::truncated(Q, "t", 3)->to_string() == "Q[t]/(t^3)");
  CHECK(Ring::poly(Ring::poly(Q, "t"), "u")->to_string() == "Q[t][u]");

  CHECK_THROWS_AS(Ring::product(0, Q), unsupported_ring);
  CHECK_THROWS_AS(Ring::truncated(Q, "t", 0), unsupported_ring);
  // same variable twice
  CHECK_THROWS_AS(Ring::poly(Ring::poly(Q, "t"), "t"), unsupported_ring);
  // depth cap: (Q[t])[u] has depth 3 already
  CHECK_THROWS_AS(Ring::poly(Ring::poly(Ring::poly(Q, "t"), "u"), "v"), unsupported_ring);
}

TEST_CASE("canonical forms") {
  auto Q = Ring::rationals();
  auto P = Ring::poly(Q, "t");
  auto T3 = Ring::truncated(Q, "t", 3);

  // trailing zeros are stripped
  RElem f = RElem::poly(P, {RElem::integer(Q, 1), RElem::integer(Q, 0), RElem::integer(Q, 0)});
  CHECK(poly_degree(f) == 0);

  // truncation drops t^3 and above
  RElem g = RElem::poly(T3, {RElem::integer(Q, 1), RElem::integer(Q, 1), RElem::integer(Q, 1),
                             RElem::integer(Q, 7)});
  CHECK(poly_degree(g) == 2);

  // t * t^2 = 0 in Q[t]/(t^3)
  RElem t = poly_var(T3);
  CHECK((t * t * t).is_zero());
  CHECK_FALSE((t * t).is_zero());

  // zero polynomial has empty coefficient list
  CHECK(RElem::zero(P).parts().empty());
}

TEST_CASE("ring axioms on random samples") {
  for (const auto& r : tower_samples()) {
    Rng rng(0xC0FFEE ^ std::hash<std::string>{}(r->to_string()));
    for (int i = 0; i < 1000; ++i) {
      RElem a = rng.sample(r), b = rng.sample(r), c = rng.sample(r);
      CHECK(a + b == b + a);
      CHECK((a + b) + c == a + (b + c));
      CHECK(a * b == b * a);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a + RElem::zero(r) == a);
      CHECK(a * RElem::one(r) == a);
      CHECK((a - a).is_zero());
    }
  }
}

TEST_CASE("inversion in the tower") {
  auto Q = Ring::rationals();
  auto Q2 = Ring::product(2, Q);
  auto T3 = Ring::truncated(Q, "t", 3);
  auto P = Ring::poly(Q, "t");

  SECTION("(1,0) is not a unit of Q^2") {
    RElem e = RElem::tuple(Q2, {RElem::integer(Q, 1), RElem::integer(Q, 0)});
    CHECK_FALSE(is_unit(e));
    CHECK_THROWS_AS(invert(e), not_a_unit);
    CHECK(e * e == e);  // it is an idempotent though
  }

  SECTION("1 + t is invertible mod t^3 with inverse 1 - t + t^2") {
    RElem f = qp(T3, {1, 1});
    RElem expect = qp(T3, {1, -1, 1});
    CHECK(invert(f) == expect);
    CHECK((f * expect).is_one());
  }

  SECTION("t is not invertible, in Q[t] or mod t^3") {
    CHECK_FALSE(is_unit(poly_var(P)));
    CHECK_FALSE(is_unit(poly_var(T3)));
  }

  SECTION("units of Q[t] are the nonzero constants") {
    CHECK(is_unit(qp(P, {7})));
    CHECK_FALSE(is_unit(qp(P, {7, 1})));
  }

  SECTION("random units invert exactly") {
    for (const auto& r : tower_samples()) {
      Rng rng(7);
      for (int i = 0; i < 200; ++i) {
        RElem u = rng.sample_unit(r);
        RElem v = invert(u);
        CHECK((u * v).is_one());
      }
    }
  }
}

TEST_CASE("nilpotency detection") {
  auto Q = Ring::rationals();
  auto T3 = Ring::truncated(Q, "t", 3);
  CHECK(is_nilpotent(poly_var(T3)));
  CHECK_FALSE(is_nilpotent(qp(T3, {1, 1})));
  CHECK_FALSE(is_nilpotent(poly_var(Ring::poly(Q, "t"))));
  CHECK(is_nilpotent(RElem::zero(Q)));
}

TEST_CASE("primitive idempotents") {
  auto Q = Ring::rationals();

  SECTION("Q has only 1") {
    auto es = primitive_idempotents(Q);
    REQUIRE(es.size() == 1);
    CHECK(es[0].is_one());
  }

  SECTION("Q^3 has the three coordinate vectors") {
    auto Q3 = Ring::product(3, Q);
    auto es = primitive_idempotents(Q3);
    REQUIRE(es.size() == 3);
    RElem sum = RElem::zero(Q3);
    for (const auto& e : es) {
      CHECK(e * e == e);
      sum = sum + e;
    }
    CHECK(sum.is_one());
    for (std::size_t i = 0; i < es.size(); ++i)
      for (std::size_t j = i + 1; j < es.size(); ++j) CHECK((es[i] * es[j]).is_zero());
  }

  SECTION("Q[t]/(t^3) has only 1, matching a brute coefficientwise solve") {
    auto T3 = Ring::truncated(Q, "t", 3);
    auto es = primitive_idempotents(T3);
    REQUIRE(es.size() == 1);
    CHECK(es[0].is_one());

    // oracle: solve e^2 = e degree by degree; a0 in {0,1} and the higher
    // coefficients are then forced, giving exactly {0, 1}.
    std::vector<RElem> found;
    for (long a0 : {0L, 1L}) {
      std::vector<Rat> coef{Rat(a0)};
      for (int i = 1; i < 3; ++i) {
        Rat conv(0);
        for (int j = 1; j < i; ++j) conv += coef[j] * coef[i - j];
        // (2 a0 - 1) a_i + conv = 0
        Rat ai = -conv / Rat(2 * a0 - 1);
        coef.push_back(ai);
      }
      std::vector<RElem> lift;
      for (const Rat& q : coef) lift.push_back(RElem::rational(q));
      RElem e = RElem::poly(T3, lift);
      REQUIRE(e * e == e);
      if (!e.is_zero()) found.push_back(e);
    }
    REQUIRE(found.size() == 1);
    CHECK(found[0] == es[0]);
  }

  SECTION("polynomial rings are rejected") {
    CHECK_THROWS_AS(primitive_idempotents(Ring::poly(Q, "t")), unsupported_ring);
  }

  SECTION("product of truncated") {
    auto r = Ring::product(2, Ring::truncated(Q, "t", 2));
    auto es = primitive_idempotents(r);
    REQUIRE(es.size() == 2);
    CHECK((es[0] * es[1]).is_zero());
    CHECK((es[0] + es[1]).is_one());
  }
}

TEST_CASE("substitution") {
  auto Q = Ring::rationals();
  auto P = Ring::poly(Q, "t");
  auto T3 = Ring::truncated(Q, "t", 3);

  SECTION("f(t) = t^2 + 1 composed with g(t) = t + 2") {
    RElem f = qp(P, {1, 0, 1});
    RElem g = qp(P, {2, 1});
    // (t+2)^2 + 1 = t^2 + 4t + 5
    CHECK(substitute(f, g) == qp(P, {5, 4, 1}));
  }

  SECTION("composition into a truncated ring truncates") {
    RElem f = qp(P, {0, 0, 0, 1});  // t^3
    RElem g = qp(T3, {0, 1, 1});    // t + t^2
    CHECK(substitute(f, g).is_zero());
  }

  SECTION("degree multiplies over Q for nonconstant g") {
    Rng rng(11);
    for (int i = 0; i < 100; ++i) {
      RElem f = rng.sample(P, 3);
      RElem g = rng.sample(P, 3);
      if (poly_degree(f) < 1 || poly_degree(g) < 1) continue;
      CHECK(poly_degree(substitute(f, g)) == poly_degree(f) * poly_degree(g));
    }
  }

  SECTION("two-variable substitution t -> t + u") {
    auto P2 = Ring::poly(P, "u");
    RElem tpu = RElem::poly(P2, {poly_var(P), RElem::one(P)});  // t + u
    RElem f = qp(P, {0, 0, 1});                                 // t^2
    RElem F = substitute(f, tpu);
    // evaluate u = 3 then t = 2 gives (2+3)^2
    RElem at_u = eval_poly(F, RElem::integer(P, 3));
    RElem at_t = eval_poly(at_u, RElem::integer(Q, 2));
    CHECK(at_t == RElem::integer(Q, 25));
  }

  SECTION("non-polynomial first argument is rejected") {
    CHECK_THROWS_AS(substitute(RElem::integer(Q, 1), qp(P, {0, 1})), descriptor_mismatch);
  }
}

TEST_CASE("embedding") {
  auto Q = Ring::rationals();
  auto Q2 = Ring::product(2, Q);
  auto P = Ring::poly(Q, "t");
  auto PQ2 = Ring::poly(Q2, "t");

  CHECK(embed(RElem::rational(rat(1, 2)), Q2) ==
        RElem::tuple(Q2, {RElem::rational(rat(1, 2)), RElem::rational(rat(1, 2))}));
  // Q[t] -> Q^2[t] coefficientwise
  RElem f = qp(P, {1, 2});
  RElem g = embed(f, PQ2);
  CHECK(poly_degree(g) == 1);
  CHECK(g.parts()[1] == RElem::integer(Q2, 2));
  CHECK_THROWS_AS(embed(RElem::integer(Q2, 1), Q), descriptor_mismatch);
}

TEST_CASE("matrix arithmetic over the tower") {
  auto Q = Ring::rationals();

  SECTION("charpoly of a 2x2 companion matrix") {
    Matrix<RElem> a(2, 2, RElem::zero(Q));
    a.at(0, 0) = RElem::integer(Q, 1);
    a.at(0, 1) = RElem::integer(Q, 2);
    a.at(1, 0) = RElem::integer(Q, 3);
    a.at(1, 1) = RElem::integer(Q, 4);
    auto c = charpoly(a);  // x^2 - 5x - 2
    REQUIRE(c.size() == 2);
    CHECK(c[0] == RElem::integer(Q, -5));
    CHECK(c[1] == RElem::integer(Q, -2));
    CHECK(determinant(a) == RElem::integer(Q, -2));
  }

  SECTION("random invertible matrices: inverse and charpoly consistency") {
    Rng rng(23);
    for (int trial = 0; trial < 50; ++trial) {
      Matrix<RElem> a(3, 3, RElem::zero(Q));
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) a.at(i, j) = RElem::rational(rng.small_rat());
      if (!is_unit(determinant(a))) continue;
      auto inv = inverse(a);
      CHECK(is_identity(a * inv));
      CHECK(is_identity(inv * a));
      // FL inverse agrees with Gauss-Jordan
      CHECK(fl_inverse(a) == inv);
    }
  }

  SECTION("inverse over a product ring without unit pivots in column 0") {
    auto Q2 = Ring::product(2, Q);
    auto e1 = RElem::tuple(Q2, {RElem::integer(Q, 1), RElem::integer(Q, 0)});
    auto e2 = RElem::tuple(Q2, {RElem::integer(Q, 0), RElem::integer(Q, 1)});
    Matrix<RElem> a(2, 2, RElem::zero(Q2));
    a.at(0, 0) = e1;
    a.at(0, 1) = e2;
    a.at(1, 0) = e2;
    a.at(1, 1) = e1;
    REQUIRE(is_unit(determinant(a)));
    auto inv = inverse(a);
    CHECK(is_identity(a * inv));
  }

  SECTION("pow_matrix with big exponents") {
    Matrix<RElem> n(2, 2, RElem::zero(Q));
    n.at(0, 0) = RElem::integer(Q, 1);
    n.at(0, 1) = RElem::integer(Q, 1);
    n.at(1, 1) = RElem::integer(Q, 1);
    Int e;
    mpz_ui_pow_ui(e.get_mpz_t(), 3, 5);  // 243
    auto p = pow_matrix(n, e);
    CHECK(p.at(0, 1) == RElem::integer(Q, 243));
  }
}

TEST_CASE("deterministic sampling") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
}
