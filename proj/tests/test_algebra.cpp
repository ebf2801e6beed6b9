#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "sosforge/cnf.hpp"
#include "sosforge/polynomial.hpp"
#include "sosforge/rational.hpp"

using namespace sosforge;

namespace {

Polynomial X(const char* n) { return Polynomial::variable(var_by_name(n)); }
Polynomial C(long c) { return Polynomial::constant(c); }

}  // namespace

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(to_string(parse_rational("6/4")), "3/2");
  EXPECT_EQ(to_string(parse_rational("-7")), "-7");
  EXPECT_THROW(parse_rational("1/"), std::invalid_argument);
  EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
}

TEST(Rational, FourSquares) {
  for (long n = 0; n < 400; ++n) {
    auto s = four_squares(Integer(n));
    Integer sum = 0;
    for (const auto& a : s) sum += a * a;
    EXPECT_EQ(sum, n);
  }
  Integer big("123456789012345678901234567");
  auto s = four_squares(big);
  EXPECT_EQ(s[0] * s[0] + s[1] * s[1] + s[2] * s[2] + s[3] * s[3], big);
}

TEST(Rational, SquareSplit) {
  for (const char* t : {"0", "1", "7", "3/5", "22/7", "1/1000003"}) {
    Rational r = parse_rational(t);
    Rational sum = 0;
    auto parts = rational_square_split(r);
    EXPECT_LE(parts.size(), 4u);
    for (const auto& a : parts) sum += a * a;
    EXPECT_EQ(sum, r) << t;
  }
}

TEST(Rational, Approximate) {
  EXPECT_EQ(approximate(0.3333333, 10), Rational(1, 3));
  EXPECT_EQ(approximate(-2.5, 4), Rational(-5, 2));
  EXPECT_EQ(approximate(3.14159265, 1000), Rational(355, 113));
}

TEST(Variable, RegistryAndNames) {
  VarId a = var("x", {2, 5});
  EXPECT_EQ(var_name(a), "x(2,5)");
  EXPECT_EQ(var_by_name("x(2,5)"), a);
  EXPECT_EQ(domain_index(a), 2);
  EXPECT_FALSE(domain_index(var("s", {3})).has_value());
  EXPECT_EQ(var_name(rename_domain(a, 7)), "x(7,5)");
  EXPECT_THROW(var("x", {2, 5}, false), std::invalid_argument);
  EXPECT_THROW(parse_var_name("x(1"), std::invalid_argument);
}

TEST(Multilinear, ReduceIdempotent) {
  VarId x = var_by_name("a(1)"), y = var_by_name("a(2)"), z = var_by_name("a(3)");
  EXPECT_EQ(multilinear_reduce({{{x, x}, 1}}), Polynomial::variable(x));
  // (1-x)^2 = 1 - 2x + x^2
  EXPECT_EQ(multilinear_reduce({{{}, 1}, {{x}, -2}, {{x, x}, 1}}), C(1) - Polynomial::variable(x));
  EXPECT_EQ(multilinear_reduce({{{x, y, y, z}, 1}}), Polynomial::term({x, y, z}, 1));
  EXPECT_TRUE(multilinear_reduce({{{x}, 1}, {{x, x}, -1}}).is_zero());
}

TEST(Multilinear, Indicator) {
  VarId x1 = var_by_name("b(1)"), x2 = var_by_name("b(2)"), x3 = var_by_name("b(3)");
  EXPECT_EQ(indicator_poly({x1}, {true}), Polynomial::variable(x1));
  EXPECT_EQ(indicator_poly({x1, x2}, {false, true}), Polynomial::variable(x2) - Polynomial::term({x1, x2}, 1));
  PolynomialBuilder sum;
  std::vector<VarId> vs{x1, x2, x3};
  for (int b = 0; b < 8; ++b) sum.add(indicator_poly(vs, {bool(b & 1), bool(b & 2), bool(b & 4)}));
  EXPECT_EQ(sum.build(), C(1));
  for (int b = 0; b < 8; ++b)
    for (int a = 0; a < 8; ++a) {
      Assignment pt{{x1, bool(a & 1)}, {x2, bool(a & 2)}, {x3, bool(a & 4)}};
      EXPECT_EQ(eval_poly(indicator_poly(vs, {bool(b & 1), bool(b & 2), bool(b & 4)}), pt), a == b ? 1 : 0);
    }
}

TEST(Multilinear, RestrictAndEval) {
  VarId x = var_by_name("c(1)"), y = var_by_name("c(2)");
  Polynomial xy = Polynomial::term({x, y}, 1);
  EXPECT_EQ(restrict_poly(xy, {{x, true}}), Polynomial::variable(y));
  EXPECT_TRUE(restrict_poly(xy, {{x, false}}).is_zero());
  EXPECT_EQ(restrict_poly(Polynomial::variable(x) + Polynomial::variable(y), {{x, true}}),
            C(1) + Polynomial::variable(y));
  EXPECT_EQ(eval_poly(xy, {{x, true}, {y, true}}), 1);
  EXPECT_THROW(eval_poly(xy, {{x, true}}), std::invalid_argument);
}

TEST(Multilinear, Substitute) {
  VarId x = var_by_name("d(1)"), y = var_by_name("d(2)");
  Polynomial p = Polynomial::term({x, y}, 3) + C(1);
  std::unordered_map<VarId, Polynomial> sigma{{x, C(1) - Polynomial::variable(y)}};
  EXPECT_EQ(substitute(p, sigma), C(1));
}

TEST(Multilinear, TextRoundTrip) {
  std::mt19937_64 rng(7);
  std::vector<VarId> vs;
  for (int i = 1; i <= 5; ++i) vs.push_back(var("e", {i}));
  for (int t = 0; t < 200; ++t) {
    PolynomialBuilder b;
    for (int j = 0; j < 6; ++j) {
      Monomial m;
      for (VarId v : vs)
        if (rng() % 3 == 0) m.push_back(v);
      b.add(m, Rational(static_cast<long>(rng() % 21) - 10, static_cast<long>(rng() % 5) + 1));
    }
    Polynomial p = b.build();
    EXPECT_EQ(parse_polynomial(to_text(p)), p) << to_text(p);
  }
  EXPECT_EQ(to_text(Polynomial()), "0");
  EXPECT_EQ(parse_polynomial("(1 - e(1))*(1 - e(1))"), C(1) - X("e(1)"));
}

TEST(Multilinear, PointwiseProductAgrees) {
  std::mt19937_64 rng(11);
  std::vector<VarId> vs;
  for (int i = 1; i <= 4; ++i) vs.push_back(var("f", {i}));
  for (int t = 0; t < 50; ++t) {
    PolynomialBuilder a, b;
    for (int j = 0; j < 4; ++j) {
      Monomial m1, m2;
      for (VarId v : vs) {
        if (rng() & 1) m1.push_back(v);
        if (rng() & 1) m2.push_back(v);
      }
      a.add(m1, static_cast<long>(rng() % 7) - 3);
      b.add(m2, static_cast<long>(rng() % 7) - 3);
    }
    Polynomial p = a.build(), q = b.build(), pq = p * q;
    for (int bits = 0; bits < 16; ++bits) {
      oracle::Point pt;
      for (int i = 0; i < 4; ++i) pt[vs[i]] = (bits >> i) & 1;
      EXPECT_EQ(oracle::value(pq, pt), oracle::value(p, pt) * oracle::value(q, pt));
    }
  }
}

TEST(ClauseEncoding, Examples) {
  VarId x = var_by_name("g(1)"), y = var_by_name("g(2)");
  auto c = encode_clause(Clause({{x, true}, {y, false}}));
  EXPECT_EQ(c.rel, Relation::GeqZero);
  EXPECT_EQ(c.poly, Polynomial::variable(x) - Polynomial::variable(y));
  EXPECT_EQ(encode_clause(Clause()).poly, C(-1));
  EXPECT_EQ(encode_clause(Clause({{x, true}})).poly, Polynomial::variable(x) - C(1));
}

TEST(ClauseEncoding, NonnegativeIffSatisfied) {
  std::vector<VarId> vs;
  for (int i = 1; i <= 4; ++i) vs.push_back(var("h", {i}));
  for (int mask = 0; mask < 81; ++mask) {
    std::vector<Literal> lits;
    int m = mask;
    for (VarId v : vs) {
      if (m % 3 == 1) lits.push_back({v, true});
      if (m % 3 == 2) lits.push_back({v, false});
      m /= 3;
    }
    Clause c(lits);
    auto enc = encode_clause(c);
    for (int bits = 0; bits < 16; ++bits) {
      Assignment a;
      for (int i = 0; i < 4; ++i) a[vs[i]] = (bits >> i) & 1;
      EXPECT_EQ(eval_poly(enc.poly, a) >= 0, satisfied_by(c, a));
      EXPECT_EQ(eval_poly(falsifier_indicator(c), a), satisfied_by(c, a) ? 0 : 1);
    }
  }
}

TEST(Clause, Invariants) {
  VarId x = var_by_name("k(1)");
  EXPECT_THROW(Clause({{x, true}, {x, false}}), std::invalid_argument);
  Clause c({{x, true}, {x, true}});
  EXPECT_EQ(c.width(), 1u);
  Clause d({{var("x", {3, 1}), false}, {var("x", {4, 2}), false}, {var("x", {3, 2}), true}});
  EXPECT_EQ(d.domain_width(), 2);
}

TEST(Dimacs, RoundTrip) {
  CnfFormula f;
  f.domain_size = 2;
  f.meta["generator"] = "test";
  f.add(Clause({{var("x", {1, 1}), true}, {var("s", {2}), false}}));
  f.add(Clause({{var("x", {2, 1}), false}}));
  f.add(Clause());
  auto g = read_dimacs(write_dimacs(f));
  EXPECT_TRUE(g.formula.same_clauses(f));
  EXPECT_EQ(g.formula.domain_size, 2);
  EXPECT_EQ(g.formula.meta.at("generator"), "test");
  EXPECT_EQ(write_dimacs(g.formula), write_dimacs(f));
}
