#include "sosforge/cnf.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace sosforge {

Clause::Clause(std::vector<Literal> lits) : lits_(std::move(lits)) {
  std::sort(lits_.begin(), lits_.end());
  lits_.erase(std::unique(lits_.begin(), lits_.end()), lits_.end());
  for (std::size_t i = 1; i < lits_.size(); ++i)
    if (lits_[i].var == lits_[i - 1].var)
      throw std::invalid_argument("clause contains complementary literals on " + var_name(lits_[i].var));
}

int Clause::domain_width() const {
  std::set<int> seen;
  for (const auto& l : lits_)
    if (auto d = domain_index(l.var)) seen.insert(*d);
  return static_cast<int>(seen.size());
}

bool Clause::contains(const Literal& l) const { return std::binary_search(lits_.begin(), lits_.end(), l); }

bool Clause::subset_of(const Clause& other) const {
  return std::includes(other.lits_.begin(), other.lits_.end(), lits_.begin(), lits_.end());
}

std::optional<bool> Clause::polarity_of(VarId v) const {
  auto it = std::lower_bound(lits_.begin(), lits_.end(), Literal{v, false});
  if (it != lits_.end() && it->var == v) return it->positive;
  return std::nullopt;
}

Clause Clause::merged(const Clause& other) const {
  std::vector<Literal> all = lits_;
  all.insert(all.end(), other.lits_.begin(), other.lits_.end());
  return Clause(std::move(all));
}

Clause Clause::without(VarId v) const {
  std::vector<Literal> out;
  for (const auto& l : lits_)
    if (l.var != v) out.push_back(l);
  Clause c;
  c.lits_ = std::move(out);
  return c;
}

std::size_t ClauseHash::operator()(const Clause& c) const noexcept {
  std::size_t h = 0x84222325cbf29ce4ULL;
  for (const auto& l : c.literals()) h ^= (l.var * 2u + (l.positive ? 1u : 0u)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::string clause_text(const Clause& c) {
  if (c.empty()) return "[]";
  std::string s;
  for (std::size_t i = 0; i < c.literals().size(); ++i) {
    if (i) s += " | ";
    if (!c.literals()[i].positive) s += "~";
    s += var_name(c.literals()[i].var);
  }
  return s;
}

bool CnfFormula::add(const Clause& c) {
  auto [it, inserted] = index_.try_emplace(c, clauses_.size());
  if (inserted) clauses_.push_back(c);
  return inserted;
}

std::optional<std::size_t> CnfFormula::index_of(const Clause& c) const {
  auto it = index_.find(c);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<VarId> CnfFormula::variables() const {
  std::vector<VarId> out;
  std::unordered_set<VarId> seen;
  for (const auto& c : clauses_)
    for (const auto& l : c.literals())
      if (seen.insert(l.var).second) out.push_back(l.var);
  return out;
}

int CnfFormula::width() const {
  std::size_t w = 0;
  for (const auto& c : clauses_) w = std::max(w, c.width());
  return static_cast<int>(w);
}

int CnfFormula::domain_width() const {
  int w = 0;
  for (const auto& c : clauses_) w = std::max(w, c.domain_width());
  return w;
}

bool CnfFormula::same_clauses(const CnfFormula& other) const {
  if (size() != other.size()) return false;
  for (const auto& c : clauses_)
    if (!other.contains(c)) return false;
  return true;
}

PolynomialConstraint encode_clause(const Clause& c) {
  Polynomial p = Polynomial::constant(-1);
  for (const auto& l : c.literals()) p = p + literal_poly(l.var, l.positive);
  return {p, Relation::GeqZero};
}

Polynomial falsifier_indicator(const Clause& c) {
  Polynomial p = Polynomial::constant(1);
  for (const auto& l : c.literals()) p = p * literal_poly(l.var, !l.positive);
  return p;
}

bool satisfied_by(const Clause& c, const Assignment& rho) {
  for (const auto& l : c.literals()) {
    auto it = rho.find(l.var);
    if (it != rho.end() && it->second == l.positive) return true;
  }
  return false;
}

std::optional<Clause> restrict_clause(const Clause& c, const Assignment& rho) {
  std::vector<Literal> rest;
  for (const auto& l : c.literals()) {
    auto it = rho.find(l.var);
    if (it == rho.end()) {
      rest.push_back(l);
    } else if (it->second == l.positive) {
      return std::nullopt;
    }
  }
  return Clause(std::move(rest));
}

CnfFormula restrict_formula(const CnfFormula& f, const Assignment& rho) {
  CnfFormula out;
  out.domain_size = f.domain_size;
  out.meta = f.meta;
  for (const auto& c : f.clauses())
    if (auto r = restrict_clause(c, rho)) out.add(*r);
  return out;
}

std::unordered_map<VarId, int> dimacs_numbering(const CnfFormula& f) {
  std::unordered_map<VarId, int> ids;
  int next = 1;
  for (VarId v : f.variables()) ids.emplace(v, next++);
  return ids;
}

std::string write_dimacs(const CnfFormula& f) {
  std::ostringstream out;
  auto vars = f.variables();
  auto ids = dimacs_numbering(f);
  for (const auto& [k, v] : f.meta) out << "c param " << k << " " << v << "\n";
  out << "c param domain_size " << f.domain_size << "\n";
  for (VarId v : vars) {
    auto d = domain_index(v);
    out << "c varmap " << ids.at(v) << " " << var_name(v) << " " << (d ? *d : 0) << "\n";
  }
  out << "p cnf " << vars.size() << " " << f.size() << "\n";
  for (const auto& c : f.clauses()) {
    for (const auto& l : c.literals()) out << (l.positive ? "" : "-") << ids.at(l.var) << " ";
    out << "0\n";
  }
  return out.str();
}

DimacsFile read_dimacs(const std::string& text) {
  DimacsFile file;
  std::istringstream in(text);
  std::string line;
  bool header = false;
  std::vector<Literal> pending;
  auto lookup = [&](int id) {
    auto it = file.ids.find(id);
    if (it != file.ids.end()) return it->second;
    VarId v = var("v", {id}, false);
    file.ids.emplace(id, v);
    return v;
  };
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == 'c') {
      std::istringstream ls(line);
      std::string c, tag;
      ls >> c >> tag;
      if (tag == "varmap") {
        int id = 0, dom = 0;
        std::string name;
        if (!(ls >> id >> name >> dom)) throw std::invalid_argument("malformed varmap line: " + line);
        VarId v = var_by_name(name, dom != 0);
        if (dom != 0 && domain_index(v) != dom)
          throw std::invalid_argument("varmap domain index disagrees with name: " + line);
        file.ids[id] = v;
      } else if (tag == "param") {
        std::string key, value;
        ls >> key;
        std::getline(ls, value);
        auto b = value.find_first_not_of(' ');
        value = b == std::string::npos ? "" : value.substr(b);
        if (key == "domain_size") {
          file.formula.domain_size = std::stoi(value);
        } else {
          file.formula.meta[key] = value;
        }
      }
      continue;
    }
    if (line[0] == 'p') {
      header = true;
      continue;
    }
    if (!header) throw std::invalid_argument("clause before DIMACS header");
    std::istringstream ls(line);
    long lit = 0;
    while (ls >> lit) {
      if (lit == 0) {
        file.formula.add(Clause(pending));
        pending.clear();
      } else {
        int id = static_cast<int>(lit < 0 ? -lit : lit);
        pending.push_back({lookup(id), lit > 0});
      }
    }
  }
  if (!pending.empty()) throw std::invalid_argument("unterminated clause in DIMACS input");
  return file;
}

}  // namespace sosforge
