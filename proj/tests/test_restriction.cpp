#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sosforge/builders.hpp"
#include "sosforge/compile.hpp"
#include "sosforge/formulas.hpp"
#include "sosforge/restriction.hpp"
#include "sosforge/symmetric.hpp"

using namespace sosforge;

namespace {

CnfFormula base_c5() { return gen_clique(cycle_graph(5), 3); }

// Exact probability that at least l of lp fixed indices land in a uniform
// k-subset of [m] and every one outside draws a 1.
double exact_survival(int m, int k, int l, int lp) {
  auto choose = [](int n, int r) {
    if (r < 0 || r > n) return 0.0;
    double c = 1;
    for (int i = 0; i < r; ++i) c = c * (n - i) / (i + 1);
    return c;
  };
  double total = 0;
  for (int j = l; j <= std::min(k, lp); ++j)
    total += choose(lp, j) * choose(m - lp, k - j) / choose(m, k) * std::pow(0.5, lp - j);
  return total;
}

}  // namespace

TEST(Sample, FullDomainForcesAllSelectors) {
  CnfFormula rel = relativize(base_c5(), 3, 3);
  auto r = sample_restriction(rel, 17);
  EXPECT_EQ(r.survivors, (std::vector<int>{1, 2, 3}));
  for (int i = 1; i <= 3; ++i) EXPECT_TRUE(r.assignment.at(thr_s(i)));
  auto rec = check_recovers_base(rel, r, base_c5());
  EXPECT_TRUE(rec.ok);
  for (auto [a, b] : rec.renaming) EXPECT_EQ(a, b);
}

TEST(Sample, Deterministic) {
  CnfFormula rel = relativize(base_c5(), 3, 7);
  auto a = sample_restriction(rel, 5), b = sample_restriction(rel, 5);
  EXPECT_EQ(a.survivors, b.survivors);
  EXPECT_EQ(a.assignment, b.assignment);
  EXPECT_EQ(restriction_to_json(a), restriction_to_json(b));
  bool differs = false;
  for (std::uint64_t s = 6; s < 16 && !differs; ++s) differs = sample_restriction(rel, s).assignment != a.assignment;
  EXPECT_TRUE(differs);
}

TEST(Sample, AssignmentCoversNonSurvivors) {
  CnfFormula rel = relativize(base_c5(), 3, 6);
  auto r = sample_restriction(rel, 3);
  std::set<int> d(r.survivors.begin(), r.survivors.end());
  for (VarId v : rel.variables()) {
    auto idx = domain_index(v);
    bool must = !idx || !d.count(*idx);
    EXPECT_EQ(r.assignment.count(v) != 0, must) << var_name(v);
  }
}

TEST(Apply, ThresholdAndForeignClausesVanish) {
  CnfFormula rel = relativize(base_c5(), 3, 6);
  auto r = sample_restriction(rel, 9);
  CnfFormula out = apply_restriction(rel, r);
  std::set<int> d(r.survivors.begin(), r.survivors.end());
  for (const auto& c : out.clauses())
    for (const auto& l : c.literals()) {
      auto idx = domain_index(l.var);
      ASSERT_TRUE(idx.has_value()) << clause_text(c);
      EXPECT_TRUE(d.count(*idx));
    }
  CnfFormula thr = gen_threshold(3, 6);
  for (const auto& c : thr.clauses()) EXPECT_FALSE(restrict_clause(c, r.assignment).has_value());
}

TEST(Recover, HundredSeeds) {
  for (int m = 4; m <= 7; ++m) {
    CnfFormula rel = relativize(base_c5(), 3, m);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      auto r = sample_restriction(rel, seed);
      auto rec = check_recovers_base(rel, r, base_c5());
      ASSERT_TRUE(rec.ok) << m << " " << seed;
      std::map<int, int> want;
      for (std::size_t i = 0; i < r.survivors.size(); ++i) want[r.survivors[i]] = static_cast<int>(i) + 1;
      EXPECT_EQ(rec.renaming, want);
    }
  }
}

TEST(Recover, MissingSelectorIsReported) {
  CnfFormula rel = relativize(base_c5(), 3, 5);
  CnfFormula bad;
  bad.domain_size = rel.domain_size;
  bad.meta = rel.meta;
  bool dropped = false;
  for (const auto& c : rel.clauses()) {
    if (!dropped && c.contains({thr_s(1), false}) && c.contains({thr_s(2), false})) {
      bad.add(c.without(thr_s(2)));
      dropped = true;
      continue;
    }
    bad.add(c);
  }
  ASSERT_TRUE(dropped);
  int caught = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    auto r = sample_restriction(bad, seed);
    auto rec = check_recovers_base(bad, r, base_c5());
    if (!rec.ok) {
      ++caught;
      EXPECT_TRUE(rec.counterexample.has_value());
    }
  }
  EXPECT_GT(caught, 0);
}

TEST(Recover, RestrictedRefutationStillRefutes) {
  CnfFormula base = base_c5();
  CnfFormula rel = relativize(base, 3, 5);
  auto pi = build_relativized_refutation(base, 3, 5, build_clique_refutation(cycle_graph(5), 3, true));
  auto r = sample_restriction(rel, 4);
  auto m = check_proof(apply_restriction(rel, r), restrict_proof(pi, r.assignment));
  EXPECT_TRUE(m.refutation);
}

TEST(RestrictCertificate, IdentityPreserved) {
  CnfFormula f = gen_clique(cycle_graph(4), 3);
  auto sys = encode_formula(f);
  auto cert = compile_resolution(f, build_clique_refutation(cycle_graph(4), 3, true));
  Assignment rho{{clique_x(1, 2), false}, {clique_x(3, 1), true}, {clique_z(2, 0), true}};
  auto [rs, rc] = restrict_certificate(sys, cert, rho);
  EXPECT_NO_THROW(check_certificate(rs, rc));
  EXPECT_TRUE(oracle::identity_on_cube(rs, rc));
  EXPECT_LE(measure_certificate(rs, rc).degree, measure_certificate(sys, cert).degree);
}

TEST(Shrinkage, AnalyticPieces) {
  EXPECT_EQ(shrinkage_tail(64, 8, 4), Rational(1, 64 * 64 * 64 * 64));
  // C(5,2) C(14,2) / C(16,4) = 910 / 1820
  EXPECT_EQ(shrinkage_union(16, 4, 2, 5), Rational(1, 2));
  Rational b = default_bound(64, 8, 4);
  EXPECT_GE(b, shrinkage_tail(64, 8, 4));
  EXPECT_EQ(b, shrinkage_union(64, 8, 4, 32));
}

TEST(Shrinkage, DegreeBelowThresholdNeverSurvives) {
  for (int lp = 0; lp < 4; ++lp) EXPECT_EQ(shrinkage_experiment(32, 6, 4, lp, 2000, 1).survived, 0);
}

TEST(Shrinkage, EmpiricalMatchesExactProbability) {
  struct Case {
    int m, k, l, lp;
  };
  for (auto c : {Case{16, 4, 1, 6}, Case{20, 6, 2, 8}, Case{32, 8, 2, 12}}) {
    auto r = shrinkage_experiment(c.m, c.k, c.l, c.lp, 40000, 11);
    double p = exact_survival(c.m, c.k, c.l, c.lp);
    double sigma = std::sqrt(p * (1 - p) / 40000);
    EXPECT_NEAR(r.empirical_survival, p, 4 * sigma + 1e-12);
    EXPECT_LE(p, shrinkage_union(c.m, c.k, c.l, c.lp).get_d() + 1e-12);
  }
}

TEST(Shrinkage, ChiSquareIsCalibrated) {
  // Under the null the p-values are roughly uniform.
  int low = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) low += shrinkage_experiment(24, 5, 1, 2, 3000, seed).chi_square_p < 0.1;
  EXPECT_LE(low, 12);
  EXPECT_GE(low, 1);
}

TEST(Shrinkage, Criterion) {
  auto r = shrinkage_experiment(64, 8, 4, 32, 10000, 2024);
  EXPECT_LE(r.empirical_survival, r.bound.get_d() + 3 * r.stderr_survival);
  EXPECT_GT(r.chi_square_p, 0.01);
  EXPECT_NEAR(r.empirical_survival, exact_survival(64, 8, 4, 32), 4 * r.stderr_survival + 1e-4);
}

TEST(SizeLowerBound, BoundFunctions) {
  EXPECT_EQ(size_lower_bound(64, 8, 4, [](int, int, int) { return Rational(1); }), 1);
  EXPECT_EQ(size_lower_bound(64, 8, 4, shrinkage_tail), Rational(64 * 64 * 64 * 64));
  EXPECT_THROW(size_lower_bound(64, 8, 4, [](int, int, int) { return Rational(0); }), ParameterError);
  EXPECT_THROW(size_lower_bound(8, 8, 4), ParameterError);
}
