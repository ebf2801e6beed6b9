#include "sosforge/resolution.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include "sosforge/symmetric.hpp"

namespace sosforge {

std::size_t ResolutionProof::axiom(const Clause& c) {
  steps.push_back({StepKind::Axiom, 0, 0, 0, c});
  return steps.size() - 1;
}

std::size_t ResolutionProof::weaken(std::size_t src, const Clause& c) {
  if (!clause(src).subset_of(c)) throw std::logic_error("weakening must enlarge the clause");
  steps.push_back({StepKind::Weaken, src, 0, 0, c});
  return steps.size() - 1;
}

std::size_t ResolutionProof::weaken_to(std::size_t src, const Clause& c) {
  if (clause(src) == c) return src;
  return weaken(src, c);
}

std::size_t ResolutionProof::resolve(std::size_t left, std::size_t right, VarId pivot) {
  const Clause& a = clause(left);
  const Clause& b = clause(right);
  if (a.polarity_of(pivot) != std::optional<bool>(true) || b.polarity_of(pivot) != std::optional<bool>(false))
    throw std::logic_error("resolve: premises do not contain the pivot " + var_name(pivot) +
                           " with the expected polarities");
  Clause r = a.without(pivot).merged(b.without(pivot));
  steps.push_back({StepKind::Resolve, left, right, pivot, std::move(r)});
  return steps.size() - 1;
}

ProofMeasures measure_proof(const ResolutionProof& pi) {
  ProofMeasures m;
  m.size = pi.steps.size();
  std::vector<int> uses(pi.steps.size(), 0);
  for (const auto& s : pi.steps) {
    m.width = std::max(m.width, static_cast<int>(s.clause.width()));
    m.domain_width = std::max(m.domain_width, s.clause.domain_width());
    if (s.kind == StepKind::Weaken) ++uses[s.left];
    if (s.kind == StepKind::Resolve) {
      ++uses[s.left];
      ++uses[s.right];
    }
  }
  for (int u : uses)
    if (u > 1) m.tree_like = false;
  m.refutation = !pi.steps.empty() && pi.steps.back().clause.empty();
  return m;
}

ProofMeasures check_proof(const CnfFormula& f, const ResolutionProof& pi) {
  for (std::size_t i = 0; i < pi.steps.size(); ++i) {
    const auto& s = pi.steps[i];
    switch (s.kind) {
      case StepKind::Axiom:
        if (!f.contains(s.clause)) throw ProofError(i, "axiom not in formula: " + clause_text(s.clause));
        break;
      case StepKind::Weaken:
        if (s.left >= i) throw ProofError(i, "weakening refers to a later step");
        if (!pi.steps[s.left].clause.subset_of(s.clause))
          throw ProofError(i, "bad weakening: " + clause_text(pi.steps[s.left].clause) + " is not contained in " +
                                  clause_text(s.clause));
        break;
      case StepKind::Resolve: {
        if (s.left >= i || s.right >= i) throw ProofError(i, "resolution refers to a later step");
        const Clause& a = pi.steps[s.left].clause;
        const Clause& b = pi.steps[s.right].clause;
        if (a.polarity_of(s.pivot) != std::optional<bool>(true))
          throw ProofError(i, "bad pivot: left premise lacks " + var_name(s.pivot));
        if (b.polarity_of(s.pivot) != std::optional<bool>(false))
          throw ProofError(i, "bad pivot: right premise lacks ~" + var_name(s.pivot));
        Clause r;
        try {
          r = a.without(s.pivot).merged(b.without(s.pivot));
        } catch (const std::invalid_argument&) {
          throw ProofError(i, "resolvent is tautological");
        }
        if (!(r == s.clause))
          throw ProofError(i, "wrong resolvent: expected " + clause_text(r) + ", got " + clause_text(s.clause));
        break;
      }
    }
  }
  return measure_proof(pi);
}

ResolutionProof lift_proof(const ResolutionProof& pi, const CnfFormula& f, const Assignment& rho) {
  std::vector<Literal> falsified;
  for (const auto& [v, b] : rho) falsified.push_back({v, !b});
  const Clause a(falsified);
  std::unordered_map<Clause, const Clause*, ClauseHash> origin;
  for (const auto& c : f.clauses())
    if (auto r = restrict_clause(c, rho)) origin.try_emplace(*r, &c);

  ResolutionProof out;
  std::vector<std::size_t> image(pi.steps.size());
  for (std::size_t i = 0; i < pi.steps.size(); ++i) {
    const auto& s = pi.steps[i];
    for (const auto& l : s.clause.literals())
      if (rho.count(l.var)) throw ProofError(i, "clause mentions assigned variable " + var_name(l.var));
    switch (s.kind) {
      case StepKind::Axiom: {
        auto it = origin.find(s.clause);
        if (it == origin.end()) throw ProofError(i, "axiom not in restricted formula: " + clause_text(s.clause));
        image[i] = out.axiom(*it->second);
        break;
      }
      case StepKind::Weaken: {
        if (s.left >= i || !pi.steps[s.left].clause.subset_of(s.clause)) throw ProofError(i, "bad weakening");
        const Clause& src = out.clause(image[s.left]);
        image[i] = out.weaken_to(image[s.left], src.merged(s.clause));
        break;
      }
      case StepKind::Resolve:
        if (s.left >= i || s.right >= i) throw ProofError(i, "resolution refers to a later step");
        try {
          image[i] = out.resolve(image[s.left], image[s.right], s.pivot);
        } catch (const std::exception& e) {
          throw ProofError(i, e.what());
        }
        if (!out.clause(image[i]).subset_of(a.merged(s.clause)) || !s.clause.subset_of(out.clause(image[i])))
          throw ProofError(i, "resolution step does not match its lifted premises");
        break;
    }
  }
  if (!pi.steps.empty()) {
    Clause goal = a.merged(pi.steps.back().clause);
    out.weaken_to(out.size() - 1, goal);
  }
  return out;
}

ResolutionProof restrict_proof(const ResolutionProof& pi, const Assignment& rho) {
  ResolutionProof out;
  // nullopt marks a step whose clause is satisfied by rho
  std::vector<std::optional<std::size_t>> image(pi.steps.size());
  for (std::size_t i = 0; i < pi.steps.size(); ++i) {
    const auto& s = pi.steps[i];
    switch (s.kind) {
      case StepKind::Axiom:
        if (auto r = restrict_clause(s.clause, rho)) image[i] = out.axiom(*r);
        break;
      case StepKind::Weaken:
        image[i] = image[s.left];
        break;
      case StepKind::Resolve: {
        auto it = rho.find(s.pivot);
        if (it != rho.end()) {
          image[i] = it->second ? image[s.right] : image[s.left];
          break;
        }
        const auto& l = image[s.left];
        const auto& r = image[s.right];
        bool l_has = l && out.clause(*l).polarity_of(s.pivot) == std::optional<bool>(true);
        bool r_has = r && out.clause(*r).polarity_of(s.pivot) == std::optional<bool>(false);
        if (l && !l_has) {
          image[i] = l;
        } else if (r && !r_has) {
          image[i] = r;
        } else if (l_has && r_has) {
          image[i] = out.resolve(*l, *r, s.pivot);
        }
        break;
      }
    }
  }
  if (pi.steps.empty() || !image.back()) throw std::logic_error("restrict_proof: final clause satisfied");
  return prune_from(out, *image.back());
}

ResolutionProof prune_unreachable(const ResolutionProof& pi) {
  if (pi.steps.empty()) return pi;
  return prune_from(pi, pi.steps.size() - 1);
}

ResolutionProof prune_from(const ResolutionProof& pi, std::size_t root) {
  std::vector<char> live(pi.steps.size(), 0);
  live.at(root) = 1;
  for (std::size_t i = root + 1; i-- > 0;) {
    if (!live[i]) continue;
    const auto& s = pi.steps[i];
    if (s.kind != StepKind::Axiom) live[s.left] = 1;
    if (s.kind == StepKind::Resolve) live[s.right] = 1;
  }
  ResolutionProof out;
  std::vector<std::size_t> remap(pi.steps.size());
  for (std::size_t i = 0; i <= root; ++i) {
    if (!live[i]) continue;
    ProofStep s = pi.steps[i];
    s.left = remap[s.left];
    s.right = remap[s.right];
    remap[i] = out.steps.size();
    out.steps.push_back(std::move(s));
  }
  return out;
}

ResolutionProof rename_proof(const ResolutionProof& pi, const std::map<int, int>& map) {
  ResolutionProof out = pi;
  for (auto& s : out.steps) {
    s.clause = rename_clause(s.clause, map);
    if (s.kind == StepKind::Resolve) {
      auto d = domain_index(s.pivot);
      if (d && map.count(*d)) s.pivot = rename_domain(s.pivot, map.at(*d));
    }
  }
  return out;
}

std::string write_trace(const ResolutionProof& pi, const CnfFormula& f) {
  auto ids = dimacs_numbering(f);
  int next = static_cast<int>(ids.size()) + 1;
  std::ostringstream head, body;
  auto id_of = [&](VarId v) {
    auto it = ids.find(v);
    if (it != ids.end()) return it->second;
    int id = next++;
    ids.emplace(v, id);
    auto d = domain_index(v);
    head << "c varmap " << id << " " << var_name(v) << " " << (d ? *d : 0) << "\n";
    return id;
  };
  auto lits = [&](const Clause& c) {
    for (const auto& l : c.literals()) body << " " << (l.positive ? "" : "-") << id_of(l.var);
    body << " 0\n";
  };
  for (const auto& s : pi.steps) {
    switch (s.kind) {
      case StepKind::Axiom:
        body << "a";
        break;
      case StepKind::Weaken:
        body << "w " << s.left + 1;
        break;
      case StepKind::Resolve:
        body << "r " << s.left + 1 << " " << s.right + 1 << " " << id_of(s.pivot);
        break;
    }
    lits(s.clause);
  }
  return head.str() + body.str();
}

ResolutionProof read_trace(const std::string& text, const DimacsFile& cnf) {
  std::map<int, VarId> ids = cnf.ids;
  ResolutionProof pi;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  auto lookup = [&](long id) {
    auto it = ids.find(static_cast<int>(id));
    if (it == ids.end()) throw std::invalid_argument("trace line " + std::to_string(lineno) + ": unknown variable id " + std::to_string(id));
    return it->second;
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "c") {
      std::string what;
      ls >> what;
      if (what == "varmap") {
        int id = 0, dom = 0;
        std::string name;
        if (!(ls >> id >> name >> dom)) throw std::invalid_argument("malformed varmap in trace");
        ids[id] = var_by_name(name, dom != 0);
      }
      continue;
    }
    ProofStep s;
    auto ref = [&]() {
      long r = 0;
      if (!(ls >> r) || r < 1 || static_cast<std::size_t>(r) > pi.steps.size())
        throw std::invalid_argument("trace line " + std::to_string(lineno) + ": bad step reference");
      return static_cast<std::size_t>(r - 1);
    };
    if (tag == "a") {
      s.kind = StepKind::Axiom;
    } else if (tag == "w") {
      s.kind = StepKind::Weaken;
      s.left = ref();
    } else if (tag == "r") {
      s.kind = StepKind::Resolve;
      s.left = ref();
      s.right = ref();
      long p = 0;
      if (!(ls >> p) || p <= 0) throw std::invalid_argument("trace line " + std::to_string(lineno) + ": bad pivot");
      s.pivot = lookup(p);
    } else {
      throw std::invalid_argument("trace line " + std::to_string(lineno) + ": unknown step kind " + tag);
    }
    std::vector<Literal> lits;
    long lit = 0;
    bool closed = false;
    while (ls >> lit) {
      if (lit == 0) {
        closed = true;
        break;
      }
      lits.push_back({lookup(lit < 0 ? -lit : lit), lit > 0});
    }
    if (!closed) throw std::invalid_argument("trace line " + std::to_string(lineno) + ": missing terminating 0");
    s.clause = Clause(std::move(lits));
    pi.steps.push_back(std::move(s));
  }
  return pi;
}

}  // namespace sosforge
