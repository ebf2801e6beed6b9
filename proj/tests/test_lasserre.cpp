#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include "oracles.hpp"
#include "sosforge/cnf.hpp"
#include "sosforge/formulas.hpp"
#include "sosforge/lasserre.hpp"
#include "sosforge/sdp.hpp"

using namespace sosforge;

namespace {

Polynomial X(VarId v) { return Polynomial::variable(v); }

ConstraintSystem contradiction() {
  VarId x = var("t", {1});
  ConstraintSystem s;
  s.constraints = {{X(x), Relation::EqZero}, {X(x) - Polynomial::constant(1), Relation::EqZero}};
  s.collect_vars();
  return s;
}

ConstraintSystem xor_pair() { return encode_xor({3, {{{1, 2, 3}, 0}, {{1, 2, 3}, 1}}}); }

ConstraintSystem two_block_non_edge() {
  Graph g;
  g.vertices = {"a", "b"};
  g.partition = std::vector<std::vector<int>>{{0}, {1}};
  return gen_block(g, 2);
}

double column_value(const std::vector<MapEntry>& col, const std::vector<double>& l) {
  double s = 0;
  for (const auto& e : col) s += e.value.get_d() * l[e.row];
  return s;
}

// Checks that the functional vanishes on every multiplier column and that
// every localized moment matrix is psd.
void expect_valid_evidence(const CoefficientSystem& cs, const SdpOutcome& o) {
  ASSERT_EQ(o.evidence.size(), cs.basis.size());
  std::size_t one = 0;
  while (one < cs.basis.size() && !cs.basis[one].empty()) ++one;
  ASSERT_LT(one, cs.basis.size());
  EXPECT_NEAR(o.evidence[one], 1.0, 1e-9);
  for (const auto& mb : cs.multipliers)
    for (const auto& col : mb.columns) EXPECT_NEAR(column_value(col, o.evidence), 0.0, 1e-6);
  for (const auto& gb : cs.grams) {
    const int n = static_cast<int>(gb.basis.size());
    Eigen::MatrixXd m(n, n);
    std::size_t c = 0;
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b, ++c) {
        double v = column_value(gb.columns[c], o.evidence);
        m(a, b) = m(b, a) = a == b ? v : v / 2;
      }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    EXPECT_GE(es.eigenvalues().minCoeff(), -1e-6);
  }
}

}  // namespace

TEST(Sdp, TwoByTwoMinimumEigenvalue) {
  SdpProblem p;
  p.blocks = {2};
  Eigen::MatrixXd c(2, 2);
  c << 2, 1, 1, 2;
  p.c = {c};
  p.a = {{Eigen::MatrixXd::Identity(2, 2)}};
  p.b = Eigen::VectorXd::Ones(1);
  auto r = solve_sdp(p, 1e-9, 100);
  ASSERT_TRUE(r.converged);
  EXPECT_NEAR(r.primal_objective, 1.0, 1e-6);
  EXPECT_NEAR(r.dual_objective, 1.0, 1e-6);
  EXPECT_GE(min_eigenvalue(r.x), -1e-9);
}

TEST(Sdp, BlockDiagonalLinearProgram) {
  // min x1 + 2 x2 + 3 x3 with x1 + x2 + x3 = 1 and x2 - x3 = 0.5
  SdpProblem p;
  p.blocks = {1, 1, 1};
  auto scal = [](double v) { return Eigen::MatrixXd::Constant(1, 1, v); };
  p.c = {scal(1), scal(2), scal(3)};
  p.a = {{scal(1), scal(1), scal(1)}, {scal(0), scal(1), scal(-1)}};
  p.b = Eigen::Vector2d(1, 0.5);
  auto r = solve_sdp(p, 1e-9, 100);
  ASSERT_TRUE(r.converged);
  EXPECT_NEAR(r.primal_objective, 1.5, 1e-6);
  EXPECT_NEAR(r.x[1](0, 0), 0.5, 1e-6);
}

TEST(Coefficients, ContradictionHasPureIdealSolution) {
  auto cs = build_coefficient_system(contradiction(), 1);
  ASSERT_EQ(cs.multipliers.size(), 2u);
  // g = (-1, 1) on the constant multiplier monomials
  std::vector<Rational> lhs(cs.basis.size());
  for (std::size_t b = 0; b < 2; ++b) {
    const auto& mb = cs.multipliers[b];
    for (std::size_t j = 0; j < mb.basis.size(); ++j)
      if (mb.basis[j].empty())
        for (const auto& e : mb.columns[j]) lhs[e.row] += e.value * (b == 0 ? -1 : 1);
  }
  EXPECT_EQ(lhs, cs.rhs);
}

TEST(Coefficients, XorPairMinusOneSolution) {
  auto cs = build_coefficient_system(xor_pair(), 3);
  ASSERT_EQ(cs.multipliers.size(), 8u);
  std::vector<Rational> lhs(cs.basis.size());
  for (const auto& mb : cs.multipliers)
    for (std::size_t j = 0; j < mb.basis.size(); ++j)
      if (mb.basis[j].empty())
        for (const auto& e : mb.columns[j]) lhs[e.row] -= e.value;
  EXPECT_EQ(lhs, cs.rhs);
  // below degree 3 no axiom can be multiplied
  EXPECT_TRUE(build_coefficient_system(xor_pair(), 2).multipliers.empty());
}

TEST(Feasibility, XorPairDegreeTwoIsInfeasible) {
  auto cs = build_coefficient_system(xor_pair(), 2);
  auto o = solve_feasibility(cs);
  EXPECT_EQ(o.status, SdpStatus::Infeasible) << o.message;
  expect_valid_evidence(cs, o);
}

TEST(Feasibility, XorPairDegreeThreeIsFeasible) {
  auto cs = build_coefficient_system(xor_pair(), 3);
  auto o = solve_feasibility(cs);
  EXPECT_EQ(o.status, SdpStatus::Feasible) << o.message;
  EXPECT_LE(o.residual, 1e-6);
  for (double e : o.min_eigenvalues) EXPECT_GE(e, -1e-8);
  auto exact = extract_exact(o, cs);
  ASSERT_TRUE(exact.has_value());
  auto m = check_certificate(xor_pair(), *exact);
  EXPECT_LE(m.degree, 3);
  EXPECT_TRUE(oracle::identity_on_cube(xor_pair(), *exact));
}

TEST(Feasibility, SatisfiableSystemIsNeverRefuted) {
  VarId x = var("t", {5});
  ConstraintSystem s;
  s.constraints = {{X(x), Relation::EqZero}};
  s.collect_vars();
  ASSERT_TRUE(oracle::system_model(s).has_value());
  for (int d = 1; d <= 4; ++d) {
    auto cs = build_coefficient_system(s, d);
    auto o = solve_feasibility(cs);
    EXPECT_EQ(o.status, SdpStatus::Infeasible) << d;
    expect_valid_evidence(cs, o);
  }
}

TEST(Feasibility, SatisfiableInequalities) {
  VarId x = var("t", {6}), y = var("t", {7});
  ConstraintSystem s;
  s.constraints = {{Polynomial::constant(1) - X(x) - X(y), Relation::GeqZero}, {X(x) - X(y), Relation::GeqZero}};
  s.collect_vars();
  auto cs = build_coefficient_system(s, 2);
  auto o = solve_feasibility(cs);
  EXPECT_NE(o.status, SdpStatus::Feasible);
}

TEST(Extract, IdentityOnlyCase) {
  auto s = contradiction();
  auto cs = build_coefficient_system(s, 1);
  auto o = solve_feasibility(cs);
  ASSERT_EQ(o.status, SdpStatus::Feasible);
  auto exact = extract_exact(o, cs);
  ASSERT_TRUE(exact.has_value());
  EXPECT_NO_THROW(check_certificate(s, *exact));
}

TEST(Extract, TwoBlockNonEdge) {
  auto s = two_block_non_edge();
  ASSERT_FALSE(oracle::system_model(s).has_value());
  auto search = min_degree(s, 3);
  ASSERT_TRUE(search.degree.has_value());
  ASSERT_TRUE(search.exact);
  auto m = check_certificate(s, *search.certificate);
  EXPECT_LE(m.degree, 2);
  EXPECT_TRUE(oracle::identity_on_cube(s, *search.certificate));
}

TEST(MinDegree, KnownValues) {
  auto a = min_degree(xor_pair(), 4);
  ASSERT_TRUE(a.degree.has_value());
  EXPECT_EQ(*a.degree, 3);
  EXPECT_TRUE(a.exact);
  auto b = min_degree(contradiction(), 3);
  ASSERT_TRUE(b.degree.has_value());
  EXPECT_EQ(*b.degree, 1);
  VarId x = var("t", {8});
  ConstraintSystem sat;
  sat.constraints = {{X(x), Relation::EqZero}};
  sat.collect_vars();
  EXPECT_FALSE(min_degree(sat, 3).degree.has_value());
}

TEST(Report, JsonLabelsConstantMonomial) {
  auto cs = build_coefficient_system(xor_pair(), 2);
  auto o = solve_feasibility(cs);
  auto j = outcome_to_json(o, cs);
  EXPECT_EQ(j["status"], status_text(o.status));
  EXPECT_EQ(j.dump().find("\"1\"") != std::string::npos, true);
}

TEST(MinDegree, PigeonholeClausesNeedSquares) {
  CnfFormula f;
  auto p = [](int i, int j) { return var("p", {i, j}, false); };
  for (int i = 1; i <= 3; ++i) f.add(Clause({{p(i, 1), true}, {p(i, 2), true}}));
  for (int j = 1; j <= 2; ++j)
    for (int a = 1; a <= 3; ++a)
      for (int b = a + 1; b <= 3; ++b) f.add(Clause({{p(a, j), false}, {p(b, j), false}}));
  ConstraintSystem s;
  for (const auto& c : f.clauses()) s.constraints.push_back(encode_clause(c));
  s.collect_vars();
  ASSERT_FALSE(oracle::system_model(s).has_value());
  auto r = min_degree(s, 4);
  ASSERT_TRUE(r.degree.has_value());
  ASSERT_TRUE(r.exact);
  EXPECT_NO_THROW(check_certificate(s, *r.certificate));
  EXPECT_TRUE(oracle::identity_on_cube(s, *r.certificate));
  bool used_square = false;
  for (const auto& t : r.certificate->inequality) used_square |= !t.q.empty();
  EXPECT_TRUE(used_square || !r.certificate->free.empty());
  for (const auto& o : r.outcomes)
    if (o.status == SdpStatus::Infeasible) expect_valid_evidence(build_coefficient_system(s, o.degree), o);
}
