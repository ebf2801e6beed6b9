#include "sosforge/builders.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "sosforge/formulas.hpp"
#include "sosforge/symmetric.hpp"

namespace sosforge {

namespace {

Literal neg(VarId v) { return {v, false}; }
Literal pos(VarId v) { return {v, true}; }

struct GadgetBuilder {
  ResolutionProof& pi;
  const GadgetShape& shape;
  const WideFn& wide;
  const PruneFn& prune;
  std::vector<int> order;

  std::size_t derive(std::vector<std::pair<int, int>>& prefix) {
    const std::size_t d = prefix.size();
    if (d == order.size()) {
      std::vector<int> tuple(order.size());
      for (auto [level, j] : prefix) tuple[level - 1] = j;
      return wide(pi, tuple);
    }
    const int level = order[d];
    const int m = shape.m[level - 1];
    std::vector<std::size_t> child(m + 1);
    for (int j = 1; j <= m; ++j) {
      std::optional<std::size_t> direct;
      if (prune) direct = prune(pi, prefix, level, j);
      if (direct) {
        child[j] = *direct;
      } else {
        prefix.emplace_back(level, j);
        child[j] = derive(prefix);
        prefix.pop_back();
      }
    }
    std::size_t cur = pi.axiom(Clause({pos(shape.y(level, 0))}));
    for (int j = 1; j <= m; ++j) {
      std::size_t link =
          pi.axiom(Clause({neg(shape.y(level, j - 1)), pos(shape.x(level, j)), pos(shape.y(level, j))}));
      cur = pi.resolve(cur, link, shape.y(level, j - 1));
      cur = pi.resolve(cur, child[j], shape.x(level, j));
    }
    std::size_t last = pi.axiom(Clause({neg(shape.y(level, m))}));
    return pi.resolve(cur, last, shape.y(level, m));
  }
};

Clause tuple_clause(const GadgetShape& shape, const std::vector<int>& tuple) {
  std::vector<Literal> lits;
  for (std::size_t i = 0; i < tuple.size(); ++i) lits.push_back(neg(shape.x(static_cast<int>(i) + 1, tuple[i])));
  return Clause(std::move(lits));
}

template <typename F>
void for_each_subset(int m, int k, F&& fn) {
  std::vector<int> cur(k);
  std::iota(cur.begin(), cur.end(), 1);
  for (;;) {
    fn(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == m - k + i + 1) --i;
    if (i < 0) return;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
}

}  // namespace

std::size_t build_gadget_refutation(ResolutionProof& pi, const GadgetShape& shape, const WideFn& wide,
                                    const PruneFn& prune) {
  std::vector<int> order(shape.m.size());
  std::iota(order.begin(), order.end(), 1);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return shape.m[a - 1] < shape.m[b - 1]; });
  GadgetBuilder b{pi, shape, wide, prune, order};
  std::vector<std::pair<int, int>> prefix;
  return b.derive(prefix);
}

ResolutionProof build_bruteforce_refutation(int k, const std::vector<int>& m) {
  if (k < 1 || static_cast<int>(m.size()) != k) throw std::invalid_argument("gadget: need k sizes");
  GadgetShape shape{m, gadget_x, gadget_y};
  ResolutionProof pi;
  build_gadget_refutation(pi, shape, [&](ResolutionProof& p, const std::vector<int>& tuple) {
    return p.axiom(tuple_clause(shape, tuple));
  });
  return pi;
}

CliqueExists::CliqueExists(std::vector<int> c)
    : std::runtime_error("graph has a clique of the requested size"), clique(std::move(c)) {}

ResolutionProof build_clique_refutation(const Graph& g, int k, bool prune) {
  if (k < 1) throw std::invalid_argument("clique refutation: k must be positive");
  if (auto c = find_clique(g, k)) throw CliqueExists(*c);
  const int n = g.size();
  GadgetShape shape{std::vector<int>(k, n), clique_x, clique_z};
  auto conflict = [&](int u, int v) { return u == v || !g.adjacent(u - 1, v - 1); };
  ResolutionProof pi;
  WideFn wide = [&](ResolutionProof& p, const std::vector<int>& tuple) -> std::size_t {
    for (int a = 0; a < k; ++a)
      for (int b = a + 1; b < k; ++b)
        if (conflict(tuple[a], tuple[b])) {
          std::size_t ax = p.axiom(Clause({neg(clique_x(a + 1, tuple[a])), neg(clique_x(b + 1, tuple[b]))}));
          return p.weaken_to(ax, tuple_clause(shape, tuple));
        }
    throw std::logic_error("clique refutation: tuple is a clique");
  };
  PruneFn cut;
  if (prune)
    cut = [&](ResolutionProof& p, const std::vector<std::pair<int, int>>& prefix, int level,
              int j) -> std::optional<std::size_t> {
      for (auto [l2, u] : prefix)
        if (conflict(u, j)) {
          std::size_t ax = p.axiom(Clause({neg(clique_x(l2, u)), neg(clique_x(level, j))}));
          std::vector<Literal> lits = {neg(clique_x(level, j))};
          for (auto [l3, w] : prefix) lits.push_back(neg(clique_x(l3, w)));
          return p.weaken_to(ax, Clause(std::move(lits)));
        }
      return std::nullopt;
    };
  build_gadget_refutation(pi, shape, wide, cut);
  return pi;
}

CnfFormula threshold_closure_formula(int k, int m) {
  CnfFormula f = gen_threshold(k, m);
  for_each_subset(m, k, [&](const std::vector<int>& d) {
    std::vector<Literal> lits;
    for (int i : d) lits.push_back(neg(thr_s(i)));
    f.add(Clause(std::move(lits)));
  });
  return f;
}

namespace {

std::size_t threshold_into(ResolutionProof& pi, int k, int m, const SelectorFn& selector) {
  if (k < 1 || k > m) throw std::invalid_argument("threshold refutation: need 1 <= k <= m");
  GadgetShape shape{std::vector<int>(k, m), thr_p, thr_y};
  WideFn wide = [&](ResolutionProof& p, const std::vector<int>& tuple) -> std::size_t {
    for (int a = 0; a < k; ++a)
      for (int b = a + 1; b < k; ++b)
        if (tuple[a] == tuple[b]) {
          std::size_t ax = p.axiom(Clause({neg(thr_p(a + 1, tuple[a])), neg(thr_p(b + 1, tuple[b]))}));
          return p.weaken_to(ax, tuple_clause(shape, tuple));
        }
    std::vector<int> d(tuple);
    std::sort(d.begin(), d.end());
    std::size_t cur;
    if (selector) {
      cur = selector(p, d);
    } else {
      std::vector<Literal> lits;
      for (int i : d) lits.push_back(neg(thr_s(i)));
      cur = p.axiom(Clause(std::move(lits)));
    }
    for (int j = 1; j <= k; ++j) {
      std::size_t count = p.axiom(Clause({neg(thr_p(j, tuple[j - 1])), pos(thr_s(tuple[j - 1]))}));
      cur = p.resolve(count, cur, thr_s(tuple[j - 1]));
    }
    return cur;
  };
  return build_gadget_refutation(pi, shape, wide);
}

}  // namespace

ResolutionProof build_threshold_refutation(int k, int m, const SelectorFn& selector) {
  ResolutionProof pi;
  threshold_into(pi, k, m, selector);
  return pi;
}

std::size_t append_proof(ResolutionProof& dst, const ResolutionProof& src) {
  const std::size_t offset = dst.steps.size();
  for (ProofStep s : src.steps) {
    s.left += offset;
    s.right += offset;
    dst.steps.push_back(std::move(s));
  }
  return offset;
}

ResolutionProof build_relativized_refutation(const CnfFormula& base, int k, int m, const ResolutionProof& inner) {
  if (k < 1 || k > m) throw std::invalid_argument("relativized refutation: need 1 <= k <= m");
  CnfFormula rel = relativize(base, k, m);
  CnfFormula base_k = generalize_domain(symmetric_template(base), k);
  ProofMeasures im = check_proof(base_k, inner);
  if (!im.refutation) throw std::invalid_argument("relativized refutation: inner proof is not a refutation");

  ResolutionProof pi;
  std::map<std::vector<int>, std::size_t> lifted;
  for_each_subset(m, k, [&](const std::vector<int>& d) {
    std::map<int, int> tau;
    for (int i = 0; i < k; ++i) tau[i + 1] = d[i];
    Assignment rho;
    for (int i : d) rho[thr_s(i)] = true;
    ResolutionProof piece = lift_proof(rename_proof(inner, tau), rel, rho);
    std::size_t offset = append_proof(pi, piece);
    lifted[d] = offset + piece.size() - 1;
  });
  threshold_into(pi, k, m, [&](ResolutionProof&, const std::vector<int>& d) { return lifted.at(d); });
  return pi;
}

}  // namespace sosforge
