#include "sosforge/transform.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace sosforge {

namespace {

Polynomial one() { return Polynomial::constant(1); }

void verify_bridge(const ConstraintSystem& source, std::size_t i, const Polynomial& image,
                   const ConstraintSystem& target, const SosCertificate& bridge) {
  if (!(bridge.target == image))
    throw TransformError("bridge for constraint " + std::to_string(i) + " derives " + to_text(bridge.target) +
                         ", expected " + to_text(image));
  if (source.constraints[i].rel == Relation::EqZero && (!bridge.inequality.empty() || !bridge.free.empty()))
    throw TransformError("bridge for equality constraint " + std::to_string(i) + " uses squares");
  try {
    check_certificate(target, bridge);
  } catch (const CertificateError& e) {
    throw TransformError("bridge for constraint " + std::to_string(i) + " is invalid: " + e.what());
  }
}

}  // namespace

SosCertificate substitute_certificate(const ConstraintSystem& source, const SosCertificate& cert,
                                      const Substitution& sigma, const ConstraintSystem& target,
                                      const Bridges& bridges) {
  std::set<std::size_t> used;
  for (const auto& t : cert.equality) used.insert(t.f);
  for (const auto& t : cert.inequality) used.insert(t.h);
  for (std::size_t i : used) {
    if (i >= source.constraints.size()) throw TransformError("constraint index out of range");
    auto it = bridges.find(i);
    if (it == bridges.end()) throw TransformError("no bridge for constraint " + std::to_string(i));
    verify_bridge(source, i, substitute(source.constraints[i].poly, sigma), target, it->second);
  }

  SosCertificate out;
  out.target = substitute(cert.target, sigma);
  auto push_free = [&](Polynomial p) {
    if (!p.is_zero()) out.free.push_back(std::move(p));
  };
  for (const auto& t : cert.equality) {
    Polynomial g = substitute(t.g, sigma);
    if (g.is_zero()) continue;
    for (const auto& b : bridges.at(t.f).equality) {
      Polynomial p = g * b.g;
      if (!p.is_zero()) out.equality.push_back({std::move(p), b.f});
    }
  }
  for (const auto& t : cert.inequality) {
    const SosCertificate& br = bridges.at(t.h);
    for (const auto& q : t.q) {
      Polynomial s = substitute(q, sigma);
      if (s.is_zero()) continue;
      Polynomial s2 = s * s;
      for (const auto& b : br.equality) {
        Polynomial p = s2 * b.g;
        if (!p.is_zero()) out.equality.push_back({std::move(p), b.f});
      }
      for (const auto& b : br.inequality) {
        InequalityTerm it;
        it.h = b.h;
        for (const auto& r : b.q) {
          Polynomial p = s * r;
          if (!p.is_zero()) it.q.push_back(std::move(p));
        }
        if (!it.q.empty()) out.inequality.push_back(std::move(it));
      }
      for (const auto& r : br.free) push_free(s * r);
    }
  }
  for (const auto& q : cert.free) push_free(substitute(q, sigma));
  return out;
}

SosCertificate derive_functional_bridge(const Graph& g, int u, int v) {
  if (!g.partition) throw TransformError("functional bridge: graph has no partition");
  auto block = g.block_of();
  if (u == v || u < 0 || v < 0 || u >= g.size() || v >= g.size() || block[u] < 0 || block[u] != block[v])
    throw TransformError("functional bridge: vertices must be distinct and share a block");
  const int b = block[u];
  SosCertificate cert;
  cert.target = one() - Polynomial::variable(clique_x(b + 1, u + 1)) - Polynomial::variable(clique_x(b + 1, v + 1));
  cert.equality.push_back({Polynomial::constant(-1), static_cast<std::size_t>(b)});
  for (int w : (*g.partition)[b])
    if (w != u && w != v) cert.free.push_back(Polynomial::variable(clique_x(b + 1, w + 1)));
  return cert;
}

namespace {

using PartialAssignment = std::vector<std::pair<int, bool>>;

Polynomial assignment_indicator(const PartialAssignment& a) {
  std::vector<VarId> vs;
  std::vector<bool> bits;
  for (auto [x, b] : a) {
    vs.push_back(xor_var(x));
    bits.push_back(b);
  }
  return indicator_poly(vs, bits);
}

// Index in encode_xor of the constraint of equation e falsified by the given
// values of its three variables.
std::size_t falsifier_index(const XorSystem& s, int e, const std::array<bool, 3>& bits) {
  const int rhs = s.equations[e].rhs;
  int rank = 0;
  for (int beta = 0; beta < 8; ++beta) {
    std::array<bool, 3> bb = {(beta & 4) != 0, (beta & 2) != 0, (beta & 1) != 0};
    if (((bb[0] + bb[1] + bb[2]) & 1) == rhs) continue;
    if (bb == bits) return static_cast<std::size_t>(4 * e + rank);
    ++rank;
  }
  throw TransformError("assignment does not falsify equation " + std::to_string(e));
}

std::optional<bool> lookup(const PartialAssignment& a, int x) {
  for (auto [y, b] : a)
    if (y == x) return b;
  return std::nullopt;
}

}  // namespace

Polynomial vertex_indicator(const XorGraph& xg, int v) { return assignment_indicator(xg.info.at(v).assignment); }

SosCertificate derive_block_bridge(const XorSystem& s, const XorGraph& xg, int u, int v) {
  if (u < 0 || v < 0 || u >= xg.graph.size() || v >= xg.graph.size())
    throw TransformError("block bridge: vertex out of range");
  if (xg.info[u].block == xg.info[v].block) throw TransformError("block bridge: vertices share a block");
  if (xg.graph.adjacent(u, v)) throw TransformError("block bridge: vertices are adjacent");
  const auto& au = xg.info[u].assignment;
  const auto& av = xg.info[v].assignment;
  Polynomial du = assignment_indicator(au), dv = assignment_indicator(av);
  SosCertificate cert;
  cert.target = one() - du - dv;
  if (!xor_compatible(au, av)) {
    cert.free.push_back(one() - du - dv);
    return cert;
  }
  int c = xor_violated(s, au, av);
  if (c < 0) throw TransformError("block bridge: assignments are consistent");
  PartialAssignment fu, fv;
  std::array<bool, 3> bits{};
  for (int i = 0; i < 3; ++i) {
    int x = s.equations[c].vars[i];
    if (auto b = lookup(au, x)) {
      fu.emplace_back(x, *b);
      bits[i] = *b;
    } else {
      bool bv = *lookup(av, x);
      fv.emplace_back(x, bv);
      bits[i] = bv;
    }
  }
  Polynomial pu = assignment_indicator(fu), pv = assignment_indicator(fv);
  cert.free = {one() - pu - pv, pu - du, pv - dv};
  cert.equality.push_back({Polynomial::constant(-2), falsifier_index(s, c, bits)});
  return cert;
}

namespace {

// Finds a derivation of p from a single target constraint, a constant, or the
// square (1 - x)^2.
std::optional<SosCertificate> simple_bridge(const Polynomial& p, const ConstraintSystem& target) {
  SosCertificate cert;
  cert.target = p;
  if (p.is_zero()) return cert;
  for (std::size_t j = 0; j < target.constraints.size(); ++j) {
    const auto& c = target.constraints[j];
    if (c.poly == p) {
      if (c.rel == Relation::EqZero)
        cert.equality.push_back({one(), j});
      else
        cert.inequality.push_back({{one()}, j});
      return cert;
    }
    if (c.rel == Relation::EqZero && c.poly == p * Rational(-1)) {
      cert.equality.push_back({Polynomial::constant(-1), j});
      return cert;
    }
  }
  if (p.is_constant() && p.constant_term() > 0) {
    for (const auto& r : rational_square_split(p.constant_term())) cert.free.push_back(Polynomial::constant(r));
    return cert;
  }
  auto vars = p.variables();
  if (vars.size() == 1 && p == one() - Polynomial::variable(vars[0])) {
    cert.free.push_back(p);
    return cert;
  }
  return std::nullopt;
}

}  // namespace

Transformed clique_to_block(const Graph& g, int k, const ConstraintSystem& clique_system,
                            const SosCertificate& cert) {
  g.validate();
  Transformed out;
  out.system = gen_block(g, k);
  auto block = g.block_of();
  const int n = g.size();
  Substitution sigma;
  for (int i = 1; i <= k; ++i) {
    for (int v = 1; v <= n; ++v)
      if (block[v - 1] != i - 1) sigma[clique_x(i, v)] = Polynomial();
    for (int j = 0; j <= n; ++j) {
      Polynomial z;
      for (int t = j + 1; t <= n; ++t)
        if (block[t - 1] == i - 1) z = z + Polynomial::variable(clique_x(i, t));
      sigma[clique_z(i, j)] = z;
    }
  }
  Bridges bridges;
  for (std::size_t i = 0; i < clique_system.constraints.size(); ++i) {
    Polynomial p = substitute(clique_system.constraints[i].poly, sigma);
    if (auto b = simple_bridge(p, out.system)) {
      bridges[i] = std::move(*b);
      continue;
    }
    auto vars = p.variables();
    if (vars.size() == 2) {
      int u = var_key(vars[0]).indices.at(1) - 1, v = var_key(vars[1]).indices.at(1) - 1;
      SosCertificate fb = derive_functional_bridge(g, u, v);
      if (fb.target == p) {
        bridges[i] = std::move(fb);
        continue;
      }
    }
    throw TransformError("clique_to_block: no bridge for constraint " + std::to_string(i) + " (" + to_text(p) +
                         ")");
  }
  out.certificate = substitute_certificate(clique_system, cert, sigma, out.system, bridges);

  // The images of z are not idempotent, so the substituted identity holds only
  // up to monomials with two or more variables of one block. Each such product
  // P_S is G(S) * E, with G(S) = (P_S - sum_{w not in S} G(S + w)) / (|S| - 1).
  Polynomial residual = certificate_sum(out.system, out.certificate) - out.certificate.target;
  std::vector<std::map<Monomial, Polynomial>> memo(k);
  std::function<Polynomial(int, const Monomial&)> gfun = [&](int b, const Monomial& sub) -> Polynomial {
    auto it = memo[b].find(sub);
    if (it != memo[b].end()) return it->second;
    Polynomial acc = Polynomial::term(sub, 1);
    for (int w : (*g.partition)[b]) {
      VarId x = clique_x(b + 1, w + 1);
      if (std::binary_search(sub.begin(), sub.end(), x)) continue;
      acc = acc - gfun(b, monomial_product(sub, {x}));
    }
    Polynomial res = acc * Rational(1, static_cast<long>(sub.size()) - 1);
    memo[b].emplace(sub, res);
    return res;
  };
  std::vector<PolynomialBuilder> correction(k);
  std::vector<bool> used(k, false);
  for (const auto& [m, c] : residual.terms()) {
    std::map<int, Monomial> by_block;
    for (VarId v : m) {
      const auto& key = var_key(v);
      if (key.kind == "x" && key.indices.size() == 2) by_block[key.indices[0] - 1].push_back(v);
    }
    int b = -1;
    for (const auto& [blk, vs] : by_block)
      if (vs.size() >= 2) {
        b = blk;
        break;
      }
    if (b < 0) throw TransformError("clique_to_block: residual monomial " + monomial_text(m) + " is not reducible");
    const Monomial& sub = by_block[b];
    Monomial rest;
    std::set_difference(m.begin(), m.end(), sub.begin(), sub.end(), std::back_inserter(rest));
    correction[b].add_product(Polynomial::term(rest, -c), gfun(b, sub));
    used[b] = true;
  }
  for (int b = 0; b < k; ++b)
    if (used[b]) {
      Polynomial gb = correction[b].build();
      if (!gb.is_zero()) out.certificate.equality.push_back({std::move(gb), static_cast<std::size_t>(b)});
    }
  return out;
}

Transformed block_to_xor(const XorSystem& s, const XorGraph& xg, const ConstraintSystem& block_system,
                         const SosCertificate& cert) {
  const int k = static_cast<int>(xg.block_vars.size());
  Transformed out;
  out.system = encode_xor(s);
  Substitution sigma;
  for (int v = 0; v < xg.graph.size(); ++v) sigma[clique_x(xg.info[v].block + 1, v + 1)] = vertex_indicator(xg, v);

  Bridges bridges;
  for (std::size_t i = 0; i < block_system.constraints.size(); ++i) {
    const auto& c = block_system.constraints[i];
    Polynomial image = substitute(c.poly, sigma);
    if (c.rel == Relation::EqZero) {
      if (static_cast<int>(i) >= k) throw TransformError("block_to_xor: unexpected equality constraint");
      const int b = static_cast<int>(i);
      SosCertificate br;
      br.target = image;
      if (!xg.keep_violating) {
        const auto& vars = xg.block_vars[b];
        const int t = static_cast<int>(vars.size());
        for (std::uint32_t a = 0; a < (1u << t); ++a) {
          PartialAssignment asg;
          for (int j = 0; j < t; ++j) asg.emplace_back(vars[j], ((a >> (t - 1 - j)) & 1u) != 0);
          int e = xor_block_violation(s, xg.block_equations[b], asg);
          if (e < 0) continue;
          std::array<bool, 3> bits{};
          PartialAssignment rest;
          for (auto [x, val] : asg) {
            const auto& ev = s.equations[e].vars;
            auto pos = std::find(ev.begin(), ev.end(), x);
            if (pos != ev.end())
              bits[pos - ev.begin()] = val;
            else
              rest.emplace_back(x, val);
          }
          br.equality.push_back({assignment_indicator(rest) * Rational(-1), falsifier_index(s, e, bits)});
        }
      }
      bridges[i] = std::move(br);
    } else {
      auto vars = c.poly.variables();
      if (vars.size() != 2) throw TransformError("block_to_xor: unexpected inequality constraint");
      int u = var_key(vars[0]).indices.at(1) - 1, v = var_key(vars[1]).indices.at(1) - 1;
      bridges[i] = derive_block_bridge(s, xg, u, v);
    }
  }
  out.certificate = substitute_certificate(block_system, cert, sigma, out.system, bridges);
  return out;
}

}  // namespace sosforge
