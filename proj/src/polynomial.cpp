#include "sosforge/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>

namespace sosforge {

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (VarId v : m) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

Monomial monomial_product(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

int monomial_domain_degree(const Monomial& m) {
  std::vector<int> seen;
  for (VarId v : m) {
    auto d = domain_index(v);
    if (d && std::find(seen.begin(), seen.end(), *d) == seen.end()) seen.push_back(*d);
  }
  return static_cast<int>(seen.size());
}

std::string monomial_text(const Monomial& m) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) s += "*";
    s += var_name(m[i]);
  }
  return s;
}

Polynomial Polynomial::constant(const Rational& c) { return term({}, c); }

Polynomial Polynomial::variable(VarId v) { return term({v}, 1); }

Polynomial Polynomial::term(Monomial m, const Rational& c) {
  Polynomial p;
  std::sort(m.begin(), m.end());
  m.erase(std::unique(m.begin(), m.end()), m.end());
  if (c != 0) {
    p.terms_.emplace_back(std::move(m), c);
    p.terms_.back().second.canonicalize();
  }
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].first.empty());
}

Rational Polynomial::constant_term() const { return coefficient({}); }

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& key) { return t.first < key; });
  if (it != terms_.end() && it->first == m) return it->second;
  return 0;
}

int Polynomial::degree() const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.first.size()));
  return d;
}

int Polynomial::domain_degree() const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, monomial_domain_degree(t.first));
  return d;
}

std::vector<VarId> Polynomial::variables() const {
  std::vector<VarId> out;
  for (const auto& t : terms_) out.insert(out.end(), t.first.begin(), t.first.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial p = *this;
  for (auto& t : p.terms_) t.second = -t.second;
  return p;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial p;
  auto a = terms_.begin(), b = o.terms_.begin();
  while (a != terms_.end() || b != o.terms_.end()) {
    if (b == o.terms_.end() || (a != terms_.end() && a->first < b->first)) {
      p.terms_.push_back(*a++);
    } else if (a == terms_.end() || b->first < a->first) {
      p.terms_.push_back(*b++);
    } else {
      Rational c = a->second + b->second;
      if (c != 0) p.terms_.emplace_back(a->first, c);
      ++a;
      ++b;
    }
  }
  return p;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  PolynomialBuilder b;
  b.add_product(*this, o);
  return b.build();
}

Polynomial Polynomial::operator*(const Rational& c) const {
  if (c == 0) return {};
  Polynomial p = *this;
  for (auto& t : p.terms_) t.second *= c;
  return p;
}

Polynomial operator*(const Rational& c, const Polynomial& p) { return p * c; }

void PolynomialBuilder::add(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = acc_.try_emplace(m, c);
  if (!inserted) it->second += c;
}

void PolynomialBuilder::add(const Polynomial& p, const Rational& scale) {
  if (scale == 0) return;
  for (const auto& [m, c] : p.terms()) add(m, c * scale);
}

void PolynomialBuilder::add_product(const Polynomial& a, const Polynomial& b, const Rational& scale) {
  if (scale == 0) return;
  Rational tmp;
  for (const auto& [ma, ca] : a.terms()) {
    Rational cas = ca * scale;
    for (const auto& [mb, cb] : b.terms()) {
      tmp = cas * cb;
      add(monomial_product(ma, mb), tmp);
    }
  }
}

Polynomial PolynomialBuilder::build() const {
  Polynomial p;
  p.terms_.reserve(acc_.size());
  for (const auto& [m, c] : acc_)
    if (c != 0) {
      p.terms_.emplace_back(m, c);
      p.terms_.back().second.canonicalize();
    }
  std::sort(p.terms_.begin(), p.terms_.end(),
            [](const Polynomial::Term& x, const Polynomial::Term& y) { return x.first < y.first; });
  return p;
}

Polynomial multilinear_reduce(const std::vector<std::pair<std::vector<VarId>, Rational>>& raw) {
  PolynomialBuilder b;
  for (const auto& [vars, c] : raw) {
    Monomial m = vars;
    std::sort(m.begin(), m.end());
    m.erase(std::unique(m.begin(), m.end()), m.end());
    b.add(m, c);
  }
  return b.build();
}

Polynomial literal_poly(VarId v, bool positive) {
  if (positive) return Polynomial::variable(v);
  return Polynomial::constant(1) - Polynomial::variable(v);
}

Polynomial indicator_poly(const std::vector<VarId>& vars, const std::vector<bool>& bits) {
  if (vars.size() != bits.size()) throw std::invalid_argument("indicator_poly: length mismatch");
  Polynomial p = Polynomial::constant(1);
  for (std::size_t i = 0; i < vars.size(); ++i) p = p * literal_poly(vars[i], bits[i]);
  return p;
}

std::string relation_text(Relation r) { return r == Relation::EqZero ? "eq0" : "ge0"; }

Relation parse_relation(std::string_view s) {
  if (s == "eq0") return Relation::EqZero;
  if (s == "ge0") return Relation::GeqZero;
  throw std::invalid_argument("unknown relation: " + std::string(s));
}

Polynomial restrict_poly(const Polynomial& p, const Assignment& rho) {
  PolynomialBuilder b;
  for (const auto& [m, c] : p.terms()) {
    Monomial rest;
    bool zero = false;
    for (VarId v : m) {
      auto it = rho.find(v);
      if (it == rho.end()) {
        rest.push_back(v);
      } else if (!it->second) {
        zero = true;
        break;
      }
    }
    if (!zero) b.add(rest, c);
  }
  return b.build();
}

Rational eval_poly(const Polynomial& p, const Assignment& alpha) {
  Rational total = 0;
  for (const auto& [m, c] : p.terms()) {
    bool one = true;
    for (VarId v : m) {
      auto it = alpha.find(v);
      if (it == alpha.end()) throw std::invalid_argument("eval_poly: unassigned variable " + var_name(v));
      if (!it->second) one = false;
    }
    if (one) total += c;
  }
  return total;
}

Polynomial substitute(const Polynomial& p, const std::unordered_map<VarId, Polynomial>& sigma) {
  PolynomialBuilder out;
  for (const auto& [m, c] : p.terms()) {
    Polynomial prod = Polynomial::constant(c);
    Monomial kept;
    for (VarId v : m) {
      auto it = sigma.find(v);
      if (it == sigma.end()) {
        kept.push_back(v);
      } else {
        prod = prod * it->second;
        if (prod.is_zero()) break;
      }
    }
    if (prod.is_zero()) continue;
    out.add_product(prod, Polynomial::term(kept, 1));
  }
  return out.build();
}

std::string to_text(const Polynomial& p) {
  if (p.is_zero()) return "0";
  struct Entry {
    std::vector<std::string> names;
    const Rational* coef;
  };
  std::vector<Entry> entries;
  for (const auto& [m, c] : p.terms()) {
    Entry e{{}, &c};
    for (VarId v : m) e.names.push_back(var_name(v));
    std::sort(e.names.begin(), e.names.end());
    entries.push_back(std::move(e));
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.names.size() != b.names.size()) return a.names.size() < b.names.size();
    return a.names < b.names;
  });
  std::string s;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i) s += " + ";
    s += to_string(*entries[i].coef);
    if (!entries[i].names.empty()) {
      s += " * ";
      for (std::size_t j = 0; j < entries[i].names.size(); ++j) {
        if (j) s += "*";
        s += entries[i].names[j];
      }
    }
  }
  return s;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return p;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("polynomial parse error at " + std::to_string(pos_) + ": " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  Polynomial expr() {
    Polynomial acc = term();
    for (;;) {
      if (peek('+')) {
        ++pos_;
        acc = acc + term();
      } else if (peek('-')) {
        ++pos_;
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  Polynomial term() {
    bool neg = false;
    while (peek('-') || peek('+')) {
      if (s_[pos_] == '-') neg = !neg;
      ++pos_;
    }
    Polynomial acc = factor();
    while (peek('*')) {
      ++pos_;
      acc = acc * factor();
    }
    return neg ? -acc : acc;
  }

  Polynomial factor() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial p = expr();
      if (!peek(')')) fail("expected )");
      ++pos_;
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        std::size_t dstart = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (dstart == pos_) fail("missing denominator");
      }
      return Polynomial::constant(parse_rational(s_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      if (pos_ < s_.size() && s_[pos_] == '(') {
        auto close = s_.find(')', pos_);
        if (close == std::string_view::npos) fail("unterminated index list");
        pos_ = close + 1;
      }
      std::string name(s_.substr(start, pos_ - start));
      std::string compact;
      for (char ch : name)
        if (!std::isspace(static_cast<unsigned char>(ch))) compact += ch;
      return Polynomial::variable(var_by_name(compact));
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

Polynomial parse_polynomial(std::string_view text) { return Parser(text).parse(); }

}  // namespace sosforge
