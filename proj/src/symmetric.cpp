#include "sosforge/symmetric.hpp"

#include <algorithm>
#include <set>

#include "sosforge/formulas.hpp"

namespace sosforge {

std::vector<int> clause_indices(const Clause& c) {
  std::vector<int> out;
  for (const auto& l : c.literals())
    if (auto d = domain_index(l.var)) out.push_back(*d);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Clause rename_clause(const Clause& c, const std::map<int, int>& map) {
  std::vector<Literal> lits;
  lits.reserve(c.width());
  for (const auto& l : c.literals()) {
    auto d = domain_index(l.var);
    if (!d) {
      lits.push_back(l);
      continue;
    }
    auto it = map.find(*d);
    lits.push_back({it == map.end() ? l.var : rename_domain(l.var, it->second), l.positive});
  }
  return Clause(std::move(lits));
}

namespace {

// Order-preserving [eta] -> subset, extended to a permutation of [m].
std::vector<int> extend_to_permutation(const std::vector<int>& subset, int m) {
  std::vector<int> perm(subset);
  std::set<int> used(subset.begin(), subset.end());
  for (int i = 1; i <= m; ++i)
    if (!used.count(i)) perm.push_back(i);
  return perm;
}

std::map<int, int> as_map(const std::vector<int>& perm) {
  std::map<int, int> out;
  for (std::size_t i = 0; i < perm.size(); ++i) out[static_cast<int>(i) + 1] = perm[i];
  return out;
}

std::vector<int> inverse(const std::vector<int>& perm) {
  std::vector<int> inv(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i] - 1] = static_cast<int>(i) + 1;
  return inv;
}

std::string perm_text(const std::vector<int>& perm) {
  std::string s = "[";
  for (std::size_t i = 0; i < perm.size(); ++i) s += (i ? "," : "") + std::to_string(perm[i]);
  return s + "]";
}

template <typename F>
void for_each_subset(int m, int eta, F&& fn) {
  std::vector<int> cur(eta);
  for (int i = 0; i < eta; ++i) cur[i] = i + 1;
  for (;;) {
    fn(cur);
    int i = eta - 1;
    while (i >= 0 && cur[i] == m - eta + i + 1) --i;
    if (i < 0) return;
    ++cur[i];
    for (int j = i + 1; j < eta; ++j) cur[j] = cur[j - 1] + 1;
  }
}

}  // namespace

SymmetricTemplate symmetric_template(const CnfFormula& f) {
  int m = f.domain_size;
  std::map<std::vector<int>, std::vector<Clause>> groups;
  int w = 0;
  for (const auto& c : f.clauses()) {
    auto idx = clause_indices(c);
    for (int i : idx) m = std::max(m, i);
    if (!idx.empty() && idx.front() < 1) throw std::invalid_argument("domain index below 1");
    w = std::max(w, static_cast<int>(idx.size()));
    groups[idx].push_back(c);
  }
  SymmetricTemplate t;
  t.domain_width = w;
  t.meta = f.meta;
  t.parts.resize(w + 1);
  for (int eta = 0; eta <= w; ++eta) {
    std::vector<int> canon(eta);
    for (int i = 0; i < eta; ++i) canon[i] = i + 1;
    auto it = groups.find(canon);
    if (it != groups.end()) t.parts[eta] = it->second;
    CnfFormula part;
    for (const auto& c : t.parts[eta]) part.add(c);
    for (int i = 1; i < eta; ++i) {
      std::vector<int> perm(m);
      for (int p = 0; p < m; ++p) perm[p] = p + 1;
      std::swap(perm[i - 1], perm[i]);
      auto map = as_map(perm);
      for (const auto& c : t.parts[eta]) {
        Clause img = rename_clause(c, map);
        if (!part.contains(img))
          throw SymmetryError("formula not invariant under " + perm_text(perm) + ": missing " + clause_text(img),
                              perm, img);
      }
    }
    for_each_subset(m, eta, [&](const std::vector<int>& subset) {
      auto perm = extend_to_permutation(subset, m);
      auto map = as_map(perm);
      for (const auto& c : t.parts[eta]) {
        Clause img = rename_clause(c, map);
        if (!f.contains(img))
          throw SymmetryError("formula not invariant under " + perm_text(perm) + ": missing " + clause_text(img),
                              perm, img);
      }
      auto g = groups.find(subset);
      std::size_t have = g == groups.end() ? 0 : g->second.size();
      if (have != t.parts[eta].size()) {
        auto inv = inverse(perm);
        auto inv_map = as_map(inv);
        for (const auto& c : g->second) {
          Clause pre = rename_clause(c, inv_map);
          if (!part.contains(pre))
            throw SymmetryError("formula not invariant under " + perm_text(inv) + ": missing " + clause_text(pre),
                                inv, pre);
        }
      }
    });
  }
  return t;
}

CnfFormula generalize_domain(const SymmetricTemplate& t, int m) {
  if (m < t.domain_width) throw std::invalid_argument("generalize_domain: m below the domain width");
  CnfFormula out;
  out.domain_size = m;
  out.meta = t.meta;
  for (int eta = 0; eta <= t.domain_width; ++eta) {
    if (t.parts[eta].empty()) continue;
    for_each_subset(m, eta, [&](const std::vector<int>& subset) {
      std::map<int, int> map;
      for (int i = 0; i < eta; ++i) map[i + 1] = subset[i];
      for (const auto& c : t.parts[eta]) out.add(rename_clause(c, map));
    });
  }
  return out;
}

CnfFormula relativize(const CnfFormula& f, int k, int m) {
  if (k < 1 || k > m) throw std::invalid_argument("relativize: need 1 <= k <= m");
  for (VarId v : f.variables()) {
    const auto& key = var_key(v);
    if (!key.has_domain && (key.kind == "s" || key.kind == "p" || key.kind == "y"))
      throw std::invalid_argument("relativize: base formula uses reserved variable " + var_name(v));
  }
  SymmetricTemplate t = symmetric_template(f);
  CnfFormula base = generalize_domain(t, m);
  CnfFormula out = gen_threshold(k, m);
  out.meta.clear();
  for (const auto& [key, value] : f.meta) out.meta["base_" + key] = value;
  out.meta["generator"] = "relativized";
  out.meta["relativized"] = "1";
  out.meta["k"] = std::to_string(k);
  out.meta["m"] = std::to_string(m);
  out.meta["base_domain"] = std::to_string(f.domain_size);
  out.domain_size = m;
  for (const auto& c : base.clauses()) {
    std::vector<Literal> lits = c.literals();
    for (int i : clause_indices(c)) lits.push_back({thr_s(i), false});
    out.add(Clause(std::move(lits)));
  }
  return out;
}

}  // namespace sosforge
