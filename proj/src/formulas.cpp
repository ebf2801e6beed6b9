#include "sosforge/formulas.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>

#include "sosforge/rng.hpp"

namespace sosforge {

VarId clique_x(int index, int vertex) { return var("x", {index, vertex}, true); }
VarId clique_z(int index, int j) { return var("z", {index, j}, true); }
VarId thr_s(int i) { return var("s", {i}, false); }
VarId thr_p(int j, int i) { return var("p", {j, i}, false); }
VarId thr_y(int j, int i) { return var("y", {j, i}, false); }
VarId gadget_x(int i, int j) { return var("x", {i, j}, true); }
VarId gadget_y(int i, int j) { return var("y", {i, j}, false); }
VarId xor_var(int i) { return var("x", {i}, false); }

namespace {
Literal pos(VarId v) { return {v, true}; }
Literal neg(VarId v) { return {v, false}; }
}  // namespace

CnfFormula gen_clique(const Graph& g, int k) {
  if (k < 1) throw std::invalid_argument("gen_clique: k must be positive");
  const int n = g.size();
  CnfFormula f;
  f.domain_size = k;
  f.meta["generator"] = "clique";
  f.meta["k"] = std::to_string(k);
  f.meta["vertices"] = std::to_string(n);
  for (int i = 1; i <= k; ++i)
    for (int i2 = i + 1; i2 <= k; ++i2)
      for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
          if (u == v || !g.adjacent(u, v)) f.add(Clause({neg(clique_x(i, u + 1)), neg(clique_x(i2, v + 1))}));
  for (int i = 1; i <= k; ++i)
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) f.add(Clause({neg(clique_x(i, u + 1)), neg(clique_x(i, v + 1))}));
  for (int i = 1; i <= k; ++i) f.add(Clause({pos(clique_z(i, 0))}));
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= n; ++j)
      f.add(Clause({neg(clique_z(i, j - 1)), pos(clique_x(i, j)), pos(clique_z(i, j))}));
  for (int i = 1; i <= k; ++i) f.add(Clause({neg(clique_z(i, n))}));
  return f;
}

ConstraintSystem gen_block(const Graph& g, int k) {
  if (!g.partition) throw std::invalid_argument("gen_block: graph has no partition");
  const auto& blocks = *g.partition;
  if (static_cast<int>(blocks.size()) != k)
    throw std::invalid_argument("gen_block: partition has " + std::to_string(blocks.size()) +
                                " blocks, expected " + std::to_string(k));
  auto block = g.block_of();
  ConstraintSystem s;
  for (int b = 0; b < k; ++b)
    for (int v : blocks[b]) s.vars.push_back(clique_x(b + 1, v + 1));
  for (int b = 0; b < k; ++b) {
    Polynomial p = Polynomial::constant(-1);
    for (int v : blocks[b]) p = p + Polynomial::variable(clique_x(b + 1, v + 1));
    s.constraints.push_back({p, Relation::EqZero});
  }
  for (int u = 0; u < g.size(); ++u)
    for (int v = u + 1; v < g.size(); ++v) {
      if (block[u] == block[v] || g.adjacent(u, v)) continue;
      Polynomial p = Polynomial::constant(1) - Polynomial::variable(clique_x(block[u] + 1, u + 1)) -
                     Polynomial::variable(clique_x(block[v] + 1, v + 1));
      s.constraints.push_back({p, Relation::GeqZero});
    }
  return s;
}

nlohmann::json xor_to_json(const XorSystem& s) {
  nlohmann::json j;
  j["n"] = s.n;
  j["equations"] = nlohmann::json::array();
  for (const auto& e : s.equations) j["equations"].push_back({e.vars[0], e.vars[1], e.vars[2], e.rhs});
  return j;
}

XorSystem xor_from_json(const nlohmann::json& j) {
  XorSystem s;
  s.n = j.at("n").get<int>();
  for (const auto& e : j.at("equations")) {
    if (!e.is_array() || e.size() != 4) throw std::invalid_argument("equation must be [i,j,l,b]");
    XorEquation eq;
    for (int t = 0; t < 3; ++t) eq.vars[t] = e[t].get<int>();
    eq.rhs = e[3].get<int>();
    std::sort(eq.vars.begin(), eq.vars.end());
    if (eq.vars[0] < 1 || eq.vars[2] > s.n || eq.vars[0] == eq.vars[1] || eq.vars[1] == eq.vars[2])
      throw std::invalid_argument("equation variables must be distinct and in [n]");
    if (eq.rhs != 0 && eq.rhs != 1) throw std::invalid_argument("right-hand side must be 0 or 1");
    s.equations.push_back(eq);
  }
  return s;
}

XorSystem gen_random_3xor(int n, int delta, std::uint64_t seed) {
  if (n < 3) throw std::invalid_argument("gen_random_3xor: n must be at least 3");
  if (delta < 1) throw std::invalid_argument("gen_random_3xor: delta must be positive");
  Rng rng(seed);
  XorSystem s;
  s.n = n;
  for (int e = 0; e < delta * n; ++e) {
    auto pick = rng.subset(n, 3);
    XorEquation eq;
    std::copy(pick.begin(), pick.end(), eq.vars.begin());
    eq.rhs = rng.bit() ? 1 : 0;
    s.equations.push_back(eq);
  }
  return s;
}

ConstraintSystem encode_xor(const XorSystem& s) {
  ConstraintSystem out;
  for (int i = 1; i <= s.n; ++i) out.vars.push_back(xor_var(i));
  for (const auto& e : s.equations) {
    std::vector<VarId> vs = {xor_var(e.vars[0]), xor_var(e.vars[1]), xor_var(e.vars[2])};
    for (int beta = 0; beta < 8; ++beta) {
      std::vector<bool> bits = {(beta & 4) != 0, (beta & 2) != 0, (beta & 1) != 0};
      int parity = (bits[0] + bits[1] + bits[2]) & 1;
      if (parity == e.rhs) continue;
      out.constraints.push_back({indicator_poly(vs, bits), Relation::EqZero});
    }
  }
  return out;
}

int max_satisfiable(const XorSystem& s) {
  if (s.n > 24) throw std::invalid_argument("max_satisfiable: n must be at most 24");
  std::vector<std::uint32_t> masks;
  std::vector<int> rhs;
  for (const auto& e : s.equations) {
    masks.push_back((1u << (e.vars[0] - 1)) | (1u << (e.vars[1] - 1)) | (1u << (e.vars[2] - 1)));
    rhs.push_back(e.rhs);
  }
  int best = 0;
  for (std::uint32_t a = 0; a < (1u << s.n); ++a) {
    int sat = 0;
    for (std::size_t i = 0; i < masks.size(); ++i)
      if ((std::popcount(a & masks[i]) & 1) == rhs[i]) ++sat;
    best = std::max(best, sat);
  }
  return best;
}

bool xor_compatible(const std::vector<std::pair<int, bool>>& a, const std::vector<std::pair<int, bool>>& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first < b[j].first) {
      ++i;
    } else if (b[j].first < a[i].first) {
      ++j;
    } else {
      if (a[i].second != b[j].second) return false;
      ++i;
      ++j;
    }
  }
  return true;
}

int xor_violated(const XorSystem& s, const std::vector<std::pair<int, bool>>& a,
                 const std::vector<std::pair<int, bool>>& b) {
  std::map<int, bool> val(a.begin(), a.end());
  for (const auto& [v, bit] : b) val[v] = bit;
  for (std::size_t e = 0; e < s.equations.size(); ++e) {
    const auto& eq = s.equations[e];
    int parity = 0;
    bool all = true;
    for (int v : eq.vars) {
      auto it = val.find(v);
      if (it == val.end()) {
        all = false;
        break;
      }
      parity ^= it->second ? 1 : 0;
    }
    if (all && parity != eq.rhs) return static_cast<int>(e);
  }
  return -1;
}

int xor_block_violation(const XorSystem& s, const std::vector<int>& eqs,
                        const std::vector<std::pair<int, bool>>& a) {
  for (int e : eqs) {
    int parity = 0, seen = 0;
    for (int x : s.equations[e].vars)
      for (const auto& [y, val] : a)
        if (y == x) {
          parity ^= val ? 1 : 0;
          ++seen;
        }
    if (seen == 3 && parity != s.equations[e].rhs) return e;
  }
  return -1;
}

XorGraph build_xor_graph(const XorSystem& s, int k, bool keep_violating) {
  const int total = static_cast<int>(s.equations.size());
  if (k < 1 || total % k != 0)
    throw std::invalid_argument("build_xor_graph: k must divide the number of equations");
  const int per = total / k;
  XorGraph xg;
  xg.keep_violating = keep_violating;
  xg.graph.partition = std::vector<std::vector<int>>(k);
  for (int b = 0; b < k; ++b) {
    std::vector<int> eqs, vars;
    for (int e = b * per; e < (b + 1) * per; ++e) {
      eqs.push_back(e);
      for (int v : s.equations[e].vars) vars.push_back(v);
    }
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    if (vars.size() > 24) throw std::invalid_argument("build_xor_graph: block has more than 24 variables");
    xg.block_vars.push_back(vars);
    xg.block_equations.push_back(eqs);
    const int t = static_cast<int>(vars.size());
    for (std::uint32_t a = 0; a < (1u << t); ++a) {
      std::vector<std::pair<int, bool>> asg;
      for (int i = 0; i < t; ++i) asg.emplace_back(vars[i], ((a >> (t - 1 - i)) & 1u) != 0);
      if (!keep_violating && xor_block_violation(s, eqs, asg) >= 0) continue;
      std::string label = "b" + std::to_string(b + 1) + ":";
      for (int i = 0; i < t; ++i) {
        if (i) label += ",";
        label += "x" + std::to_string(asg[i].first) + "=" + (asg[i].second ? "1" : "0");
      }
      (*xg.graph.partition)[b].push_back(xg.graph.size());
      xg.graph.vertices.push_back(label);
      xg.info.push_back({b, asg});
    }
  }
  for (int u = 0; u < xg.graph.size(); ++u)
    for (int v = u + 1; v < xg.graph.size(); ++v) {
      if (xg.info[u].block == xg.info[v].block) continue;
      if (!xor_compatible(xg.info[u].assignment, xg.info[v].assignment)) continue;
      if (xor_violated(s, xg.info[u].assignment, xg.info[v].assignment) >= 0) continue;
      xg.graph.add_edge(u, v);
    }
  return xg;
}

CnfFormula gen_threshold(int k, int m) {
  if (k < 1 || k > m) throw std::invalid_argument("gen_threshold: need 1 <= k <= m");
  CnfFormula f;
  f.meta["generator"] = "threshold";
  f.meta["k"] = std::to_string(k);
  f.meta["m"] = std::to_string(m);
  for (int j = 1; j <= k; ++j) f.add(Clause({pos(thr_y(j, 0))}));
  for (int j = 1; j <= k; ++j)
    for (int i = 1; i <= m; ++i) f.add(Clause({neg(thr_y(j, i - 1)), pos(thr_p(j, i)), pos(thr_y(j, i))}));
  for (int j = 1; j <= k; ++j) f.add(Clause({neg(thr_y(j, m))}));
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= k; ++j)
      for (int j2 = j + 1; j2 <= k; ++j2) f.add(Clause({neg(thr_p(j, i)), neg(thr_p(j2, i))}));
  for (int j = 1; j <= k; ++j)
    for (int i = 1; i <= m; ++i) f.add(Clause({neg(thr_p(j, i)), pos(thr_s(i))}));
  return f;
}

CnfFormula gen_bruteforce_gadget(int k, const std::vector<int>& m) {
  if (k < 1 || static_cast<int>(m.size()) != k) throw std::invalid_argument("gadget: need k sizes");
  for (int mi : m)
    if (mi < 1) throw std::invalid_argument("gadget: sizes must be positive");
  CnfFormula f;
  f.domain_size = k;
  f.meta["generator"] = "bruteforce";
  f.meta["k"] = std::to_string(k);
  for (int i = 1; i <= k; ++i) f.add(Clause({pos(gadget_y(i, 0))}));
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= m[i - 1]; ++j)
      f.add(Clause({neg(gadget_y(i, j - 1)), pos(gadget_x(i, j)), pos(gadget_y(i, j))}));
  for (int i = 1; i <= k; ++i) f.add(Clause({neg(gadget_y(i, m[i - 1]))}));
  std::vector<int> tuple(k, 1);
  for (;;) {
    std::vector<Literal> lits;
    for (int i = 0; i < k; ++i) lits.push_back(neg(gadget_x(i + 1, tuple[i])));
    f.add(Clause(lits));
    int i = k - 1;
    while (i >= 0 && tuple[i] == m[i]) tuple[i--] = 1;
    if (i < 0) break;
    ++tuple[i];
  }
  return f;
}

}  // namespace sosforge
