#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "json.hpp"
#include "sosforge/cnf.hpp"
#include "sosforge/graph.hpp"
#include "sosforge/system.hpp"

namespace sosforge {

// Variable naming shared by the generators. Vertex and domain indices are 1-based.
VarId clique_x(int index, int vertex);
VarId clique_z(int index, int j);
VarId thr_s(int i);
VarId thr_p(int j, int i);
VarId thr_y(int j, int i);
VarId gadget_x(int i, int j);
VarId gadget_y(int i, int j);
VarId xor_var(int i);

/// k-clique formula over the vertex enumeration of g; domain [k].
CnfFormula gen_clique(const Graph& g, int k);

/// Block equalities and cross-block non-edge inequalities.
/// Block variables reuse clique_x(block, vertex).
ConstraintSystem gen_block(const Graph& g, int k);

struct XorEquation {
  std::array<int, 3> vars{};  // increasing, 1-based
  int rhs = 0;
  bool operator==(const XorEquation&) const = default;
};

struct XorSystem {
  int n = 0;
  std::vector<XorEquation> equations;
  bool operator==(const XorSystem&) const = default;
};

nlohmann::json xor_to_json(const XorSystem& s);
XorSystem xor_from_json(const nlohmann::json& j);

XorSystem gen_random_3xor(int n, int delta, std::uint64_t seed);

/// Four falsifying indicator products per equation, in increasing bit order
/// of the falsifying assignment.
ConstraintSystem encode_xor(const XorSystem& s);

/// Exhaustive over 2^n assignments, n <= 24.
int max_satisfiable(const XorSystem& s);

struct XorVertex {
  int block = 0;                                // 0-based
  std::vector<std::pair<int, bool>> assignment;  // over the block's variables, increasing
};

struct XorGraph {
  Graph graph;
  std::vector<XorVertex> info;
  std::vector<std::vector<int>> block_vars;
  std::vector<std::vector<int>> block_equations;
  bool keep_violating = false;
};

/// First equation among eqs fully assigned and violated by a, or -1.
int xor_block_violation(const XorSystem& s, const std::vector<int>& eqs,
                        const std::vector<std::pair<int, bool>>& a);

/// Assignments violating one of the block's own equations are dropped unless
/// keep_violating is set.
XorGraph build_xor_graph(const XorSystem& s, int k, bool keep_violating = false);

/// Whether two partial assignments agree on their common variables.
bool xor_compatible(const std::vector<std::pair<int, bool>>& a, const std::vector<std::pair<int, bool>>& b);
/// Index of an equation fully assigned and violated by the union, or -1.
int xor_violated(const XorSystem& s, const std::vector<std::pair<int, bool>>& a,
                 const std::vector<std::pair<int, bool>>& b);

CnfFormula gen_threshold(int k, int m);

CnfFormula gen_bruteforce_gadget(int k, const std::vector<int>& m);

}  // namespace sosforge
