#include <gtest/gtest.h>

#include <algorithm>

#include "oracles.hpp"
#include "sosforge/formulas.hpp"
#include "sosforge/symmetric.hpp"

using namespace sosforge;

namespace {

Literal P(VarId v) { return {v, true}; }
Literal N(VarId v) { return {v, false}; }

Graph isolated(int n) {
  Graph g;
  for (int i = 0; i < n; ++i) g.vertices.push_back(std::string(1, char('a' + i)));
  return g;
}

Graph petersen() {
  Graph g;
  for (int i = 0; i < 10; ++i) g.vertices.push_back(std::to_string(i));
  for (int i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);
    g.add_edge(i, i + 5);
    g.add_edge(5 + i, 5 + (i + 2) % 5);
  }
  return g;
}

std::set<std::vector<std::pair<VarId, bool>>> as_sets(const CnfFormula& f) {
  std::set<std::vector<std::pair<VarId, bool>>> out;
  for (const auto& c : f.clauses()) {
    std::vector<std::pair<VarId, bool>> row;
    for (const auto& l : c.literals()) row.emplace_back(l.var, l.positive);
    out.insert(row);
  }
  return out;
}

}  // namespace

TEST(Clique, SingleVertex) {
  CnfFormula f = gen_clique(isolated(1), 1);
  CnfFormula want;
  want.add(Clause({P(clique_z(1, 0))}));
  want.add(Clause({N(clique_z(1, 0)), P(clique_x(1, 1)), P(clique_z(1, 1))}));
  want.add(Clause({N(clique_z(1, 1))}));
  EXPECT_TRUE(f.same_clauses(want));
}

TEST(Clique, TwoIsolatedVertices) {
  CnfFormula f = gen_clique(isolated(2), 2);
  EXPECT_TRUE(f.contains(Clause({N(clique_x(1, 1)), N(clique_x(2, 2))})));
  EXPECT_TRUE(f.contains(Clause({N(clique_x(1, 2)), N(clique_x(2, 1))})));
  for (int i : {1, 2}) EXPECT_TRUE(f.contains(Clause({N(clique_x(i, 1)), N(clique_x(i, 2))})));
}

TEST(Clique, MatchesClauseEnumeration) {
  for (const Graph& g : {cycle_graph(5), petersen(), complete_graph(4), isolated(3)})
    for (int k = 1; k <= 4; ++k) {
      CnfFormula f = gen_clique(g, k);
      EXPECT_EQ(oracle::clause_strings(f), oracle::clique_clause_strings(g, k));
      EXPECT_LE(f.width(), 3);
      EXPECT_EQ(f.domain_width(), k >= 2 ? 2 : 1);
    }
}

TEST(Clique, SatisfiableIffCliqueExists) {
  for (const Graph& g : {cycle_graph(4), cycle_graph(5), complete_graph(3), petersen()})
    for (int k = 1; k <= 4; ++k) {
      bool has = oracle::clique_by_subsets(g, k).has_value();
      EXPECT_EQ(oracle::cnf_model(gen_clique(g, k)).has_value(), has) << k;
      EXPECT_EQ(find_clique(g, k).has_value(), has);
    }
}

TEST(Graph, JsonRoundTripAndValidation) {
  Graph g = petersen();
  g.partition = std::vector<std::vector<int>>{{0, 1, 2, 3, 4}, {5, 6, 7, 8, 9}};
  EXPECT_EQ(graph_from_json(graph_to_json(g)), g);
  Graph bad = g;
  bad.partition = std::vector<std::vector<int>>{{0, 1}, {1, 2}};
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  EXPECT_THROW(g.add_edge(3, 3), std::invalid_argument);
}

TEST(Block, SmallInstances) {
  Graph one = isolated(1);
  one.partition = std::vector<std::vector<int>>{{0}};
  auto s = gen_block(one, 1);
  ASSERT_EQ(s.constraints.size(), 1u);
  EXPECT_EQ(s.constraints[0].rel, Relation::EqZero);
  EXPECT_EQ(s.constraints[0].poly, Polynomial::variable(clique_x(1, 1)) - Polynomial::constant(1));

  Graph two = isolated(2);
  two.partition = std::vector<std::vector<int>>{{0}, {1}};
  s = gen_block(two, 2);
  ASSERT_EQ(s.constraints.size(), 3u);
  EXPECT_EQ(s.constraints[2].rel, Relation::GeqZero);
  EXPECT_EQ(s.constraints[2].poly, Polynomial::constant(1) - Polynomial::variable(clique_x(1, 1)) -
                                       Polynomial::variable(clique_x(2, 2)));
  EXPECT_FALSE(oracle::system_model(s).has_value());
  EXPECT_THROW(gen_block(isolated(2), 2), std::invalid_argument);
}

TEST(Block, ConstraintCountAndFeasibility) {
  Graph g = petersen();
  g.partition = std::vector<std::vector<int>>{{0, 2, 4}, {1, 3, 5, 7}, {6, 8, 9}};
  auto block = g.block_of();
  std::size_t cross = 0;
  for (int u = 0; u < 10; ++u)
    for (int v = u + 1; v < 10; ++v) cross += block[u] != block[v] && !g.adjacent(u, v);
  auto s = gen_block(g, 3);
  EXPECT_EQ(s.constraints.size(), 3 + cross);
  // a feasible point is a transversal clique
  bool transversal = false;
  for (int a : (*g.partition)[0])
    for (int b : (*g.partition)[1])
      for (int c : (*g.partition)[2]) transversal |= g.adjacent(a, b) && g.adjacent(b, c) && g.adjacent(a, c);
  EXPECT_EQ(oracle::system_model(s).has_value(), transversal);
}

TEST(Xor, GeneratorContract) {
  auto s = gen_random_3xor(3, 8, 5);
  EXPECT_EQ(s.equations.size(), 24u);
  for (const auto& e : s.equations) EXPECT_EQ(e.vars, (std::array<int, 3>{1, 2, 3}));
  EXPECT_EQ(gen_random_3xor(10, 8, 99), gen_random_3xor(10, 8, 99));
  auto t = gen_random_3xor(10, 8, 99);
  EXPECT_EQ(t.equations.size(), 80u);
  for (const auto& e : t.equations)
    EXPECT_TRUE(e.vars[0] < e.vars[1] && e.vars[1] < e.vars[2] && e.vars[0] >= 1 && e.vars[2] <= 10);
  EXPECT_THROW(gen_random_3xor(2, 8, 1), std::invalid_argument);
  EXPECT_EQ(xor_from_json(xor_to_json(t)), t);
}

TEST(Xor, EncodingIsTheFalsifyingProducts) {
  VarId x = xor_var(1), y = xor_var(2), z = xor_var(3);
  auto lit = [](VarId v, int b) { return b ? Polynomial::variable(v) : Polynomial::constant(1) - Polynomial::variable(v); };
  for (int rhs : {0, 1}) {
    XorSystem s{3, {{{1, 2, 3}, rhs}}};
    auto sys = encode_xor(s);
    ASSERT_EQ(sys.constraints.size(), 4u);
    std::set<std::vector<std::pair<Monomial, Rational>>> got, want;
    for (const auto& c : sys.constraints) {
      EXPECT_EQ(c.rel, Relation::EqZero);
      got.insert(c.poly.terms());
    }
    for (int b = 0; b < 8; ++b) {
      int bx = b & 1, by = (b >> 1) & 1, bz = (b >> 2) & 1;
      if ((bx ^ by ^ bz) != rhs) want.insert((lit(x, bx) * lit(y, by) * lit(z, bz)).terms());
    }
    EXPECT_EQ(got, want);
    for (int b = 0; b < 8; ++b) {
      oracle::Point pt{{x, bool(b & 1)}, {y, bool(b & 2)}, {z, bool(b & 4)}};
      bool sat = (((b & 1) ^ ((b >> 1) & 1) ^ ((b >> 2) & 1)) == rhs);
      for (const auto& c : sys.constraints)
        if (sat) EXPECT_EQ(oracle::value(c.poly, pt), 0);
    }
  }
}

TEST(Xor, MaxSatisfiable) {
  EXPECT_EQ(max_satisfiable({3, {{{1, 2, 3}, 0}}}), 1);
  EXPECT_EQ(max_satisfiable({3, {{{1, 2, 3}, 0}, {{1, 2, 3}, 1}}}), 1);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto s = gen_random_3xor(6, 8, seed);
    EXPECT_EQ(max_satisfiable(s), oracle::xor_max_sat(s));
  }
}

TEST(XorGraph, ContradictoryPairHasNoCrossEdge) {
  XorSystem s{3, {{{1, 2, 3}, 0}, {{1, 2, 3}, 1}}};
  auto xg = build_xor_graph(s, 2);
  EXPECT_TRUE(xg.graph.edges.empty());
  EXPECT_FALSE(oracle::clique_by_subsets(xg.graph, 2).has_value());
  EXPECT_THROW(build_xor_graph(s, 3), std::invalid_argument);
}

TEST(XorGraph, CliqueIffSatisfiable) {
  int sat = 0, unsat = 0;
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    for (int k : {3, 6}) {
      auto s = gen_random_3xor(6, 1, seed);
      auto xg = build_xor_graph(s, k);
      bool has = oracle::clique_by_subsets(xg.graph, k).has_value();
      bool satisfiable = oracle::xor_max_sat(s) == static_cast<int>(s.equations.size());
      EXPECT_EQ(has, satisfiable) << seed << " " << k;
      (satisfiable ? sat : unsat)++;
      auto block = xg.graph.block_of();
      for (auto [u, v] : xg.graph.edges) EXPECT_NE(block[u], block[v]);
      int per = static_cast<int>(s.equations.size()) / k;
      for (const auto& b : *xg.graph.partition) EXPECT_LE(b.size(), 1u << (3 * per));
    }
  }
  EXPECT_GT(sat, 0);
  EXPECT_GT(unsat, 0);
}

TEST(Threshold, SmallestInstance) {
  CnfFormula f = gen_threshold(1, 1);
  CnfFormula want;
  want.add(Clause({P(thr_y(1, 0))}));
  want.add(Clause({N(thr_y(1, 0)), P(thr_p(1, 1)), P(thr_y(1, 1))}));
  want.add(Clause({N(thr_y(1, 1))}));
  want.add(Clause({N(thr_p(1, 1)), P(thr_s(1))}));
  EXPECT_TRUE(f.same_clauses(want));
  EXPECT_THROW(gen_threshold(3, 2), std::invalid_argument);
}

TEST(Threshold, ClauseCount) {
  for (int k = 1; k <= 4; ++k)
    for (int m = k; m <= 6; ++m) {
      std::size_t want = k + k * m + k + static_cast<std::size_t>(m) * k * (k - 1) / 2 + k * m;
      EXPECT_EQ(gen_threshold(k, m).size(), want);
    }
}

TEST(Threshold, ExtendsExactlyWhenEnoughSelectors) {
  for (int k = 1; k <= 4; ++k)
    for (int m = k; m <= 4; ++m) {
      CnfFormula thr = gen_threshold(k, m);
      for (int mask = 0; mask < (1 << m); ++mask) {
        CnfFormula f = thr;
        for (int i = 1; i <= m; ++i) f.add(Clause({{thr_s(i), bool(mask >> (i - 1) & 1)}}));
        EXPECT_EQ(oracle::cnf_model(f).has_value(), __builtin_popcount(mask) >= k) << k << m << mask;
      }
    }
}

TEST(Symmetric, CliqueTemplate) {
  auto t = symmetric_template(gen_clique(cycle_graph(5), 3));
  EXPECT_EQ(t.domain_width, 2);
  ASSERT_EQ(t.parts.size(), 3u);
  EXPECT_TRUE(t.parts[0].empty());
  EXPECT_FALSE(t.parts[1].empty());
  EXPECT_FALSE(t.parts[2].empty());
  for (int eta = 0; eta <= 2; ++eta)
    for (const auto& c : t.parts[eta]) {
      auto idx = clause_indices(c);
      EXPECT_EQ(static_cast<int>(idx.size()), eta);
      for (int i = 0; i < eta; ++i) EXPECT_EQ(idx[i], i + 1);
    }
}

TEST(Symmetric, AsymmetricFormulaReportsWitness) {
  CnfFormula f;
  f.domain_size = 2;
  f.add(Clause({P(clique_x(1, 1)), P(clique_x(2, 2))}));
  try {
    symmetric_template(f);
    FAIL() << "expected a symmetry error";
  } catch (const SymmetryError& e) {
    EXPECT_FALSE(f.contains(e.missing));
    EXPECT_EQ(e.permutation.size(), 2u);
  }
}

TEST(Symmetric, NoDomainIndex) {
  CnfFormula f;
  f.add(Clause({P(var("s", {1})), N(var("s", {2}))}));
  auto t = symmetric_template(f);
  EXPECT_EQ(t.domain_width, 0);
  ASSERT_EQ(t.parts.size(), 1u);
  EXPECT_EQ(t.parts[0].size(), 1u);
}

TEST(Symmetric, GeneralizeRoundTripAndCopies) {
  Graph g = cycle_graph(5);
  CnfFormula f = gen_clique(g, 3);
  auto t = symmetric_template(f);
  EXPECT_TRUE(generalize_domain(t, 3).same_clauses(f));
  for (int m = 3; m <= 6; ++m)
    EXPECT_EQ(oracle::clause_strings(generalize_domain(t, m)), oracle::clique_clause_strings(g, m));
  CnfFormula big = generalize_domain(t, 5);
  std::vector<bool> mask(5, false);
  std::fill(mask.begin(), mask.begin() + 3, true);
  do {
    std::map<int, int> ren;
    int j = 1;
    for (int i = 0; i < 5; ++i)
      if (mask[i]) ren[j++] = i + 1;
    for (const auto& c : f.clauses()) EXPECT_TRUE(big.contains(rename_clause(c, ren)));
  } while (std::prev_permutation(mask.begin(), mask.end()));
  EXPECT_THROW(generalize_domain(t, 1), std::invalid_argument);
}

TEST(Relativize, ShapeAndCounts) {
  Graph g = cycle_graph(5);
  CnfFormula base = gen_clique(g, 3);
  for (int m = 3; m <= 6; ++m) {
    CnfFormula rel = relativize(base, 3, m);
    EXPECT_LE(rel.width(), 4);
    EXPECT_EQ(rel.size(), gen_threshold(3, m).size() + oracle::clique_clause_strings(g, m).size());
    EXPECT_TRUE(rel.contains(Clause({N(thr_s(1)), N(thr_s(2)), N(clique_x(1, 1)), N(clique_x(2, 3))})));
    CnfFormula thr = gen_threshold(3, m);
    for (const auto& c : thr.clauses()) EXPECT_TRUE(rel.contains(c)) << clause_text(c);
  }
  CnfFormula plain;
  plain.add(Clause({P(var("w", {9}))}));
  plain.add(Clause({N(clique_x(1, 1))}));
  plain.domain_size = 1;
  CnfFormula rel = relativize(plain, 1, 2);
  EXPECT_TRUE(rel.contains(Clause({P(var("w", {9}))})));
  EXPECT_TRUE(rel.contains(Clause({N(thr_s(2)), N(clique_x(2, 1))})));
}

TEST(Relativize, SatisfiabilityFollowsBase) {
  Graph tri = complete_graph(3);
  EXPECT_TRUE(oracle::cnf_model(relativize(gen_clique(tri, 2), 2, 3)).has_value());
  EXPECT_FALSE(oracle::cnf_model(relativize(gen_clique(cycle_graph(4), 3), 3, 4)).has_value());
}

TEST(Gadget, SmallestInstance) {
  CnfFormula f = gen_bruteforce_gadget(1, {1});
  CnfFormula want;
  want.add(Clause({P(gadget_y(1, 0))}));
  want.add(Clause({N(gadget_y(1, 0)), P(gadget_x(1, 1)), P(gadget_y(1, 1))}));
  want.add(Clause({N(gadget_y(1, 1))}));
  want.add(Clause({N(gadget_x(1, 1))}));
  EXPECT_TRUE(f.same_clauses(want));
  EXPECT_EQ(as_sets(f), as_sets(want));
}

TEST(Gadget, AxiomCountAndUnsatisfiable) {
  for (int k = 1; k <= 3; ++k) {
    std::vector<int> m(k, 1);
    for (;;) {
      int sum = 0, prod = 1;
      for (int x : m) sum += x, prod *= x;
      CnfFormula f = gen_bruteforce_gadget(k, m);
      EXPECT_EQ(static_cast<int>(f.size()), 2 * k + sum + prod);
      EXPECT_FALSE(oracle::cnf_model(f).has_value());
      int i = 0;
      while (i < k && m[i] == 3) m[i++] = 1;
      if (i == k) break;
      ++m[i];
    }
  }
}
