#include "sosforge/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace sosforge {

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto b = s.find_first_not_of(" \t");
  auto e = s.find_last_not_of(" \t");
  if (b == std::string::npos) throw std::invalid_argument("empty rational");
  s = s.substr(b, e - b + 1);
  auto slash = s.find('/');
  auto valid_int = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!num.empty() && num[0] == '+') num = num.substr(1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-')
    throw std::invalid_argument("malformed rational: " + std::string(text));
  Rational r{Integer(num), Integer(den)};
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
  r.canonicalize();
  return r;
}

namespace {

Integer isqrt(const Integer& n) {
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

bool is_square(const Integer& n, Integer& root) {
  if (n < 0) return false;
  root = isqrt(n);
  return root * root == n;
}

// p prime, p = 1 mod 4: returns (a, b) with a^2 + b^2 = p (Hermite-Serret).
std::pair<Integer, Integer> two_squares_prime(const Integer& p, gmp_randclass& rng) {
  Integer t;
  Integer exponent = (p - 1) / 4;
  for (;;) {
    Integer c = rng.get_z_range(p - 2) + 2;
    if (mpz_legendre(c.get_mpz_t(), p.get_mpz_t()) != -1) continue;
    mpz_powm(t.get_mpz_t(), c.get_mpz_t(), exponent.get_mpz_t(), p.get_mpz_t());
    break;
  }
  Integer a = p, b = t;
  while (b * b > p) {
    Integer r = a % b;
    a = b;
    b = r;
  }
  Integer w;
  if (!is_square(p - b * b, w)) throw std::logic_error("two_squares_prime: descent failed");
  return {b, w};
}

}  // namespace

std::array<Integer, 4> four_squares(const Integer& input) {
  if (input < 0) throw std::invalid_argument("four_squares: negative argument");
  if (input == 0) return {0, 0, 0, 0};
  Integer n = input, scale = 1;
  while (n % 4 == 0) {
    n /= 4;
    scale *= 2;
  }
  std::array<Integer, 4> out;
  if (n < 4096) {
    long m = n.get_si();
    for (long a = 0; a * a <= m; ++a)
      for (long b = a; a * a + b * b <= m; ++b)
        for (long c = b; a * a + b * b + c * c <= m; ++c) {
          long rest = m - a * a - b * b - c * c;
          long d = static_cast<long>(std::llround(std::sqrt(static_cast<double>(rest))));
          while (d * d > rest) --d;
          while ((d + 1) * (d + 1) <= rest) ++d;
          if (d * d == rest) {
            out = {Integer(a) * scale, Integer(b) * scale, Integer(c) * scale, Integer(d) * scale};
            return out;
          }
        }
    throw std::logic_error("four_squares: exhaustive search failed");
  }
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(0x5eedULL);
  const long residue = mpz_fdiv_ui(n.get_mpz_t(), 4);
  // Parities chosen so that n - x^2 - y^2 = 1 mod 4.
  const int x_par = residue == 3 ? 1 : 0;
  const int y_par = residue == 1 ? 0 : 1;
  for (;;) {
    Integer root = isqrt(n);
    Integer x = rng.get_z_range(root + 1);
    if (mpz_fdiv_ui(x.get_mpz_t(), 2) != static_cast<unsigned long>(x_par)) {
      if (x == 0) continue;
      x -= 1;
    }
    Integer left = n - x * x;
    Integer yroot = isqrt(left);
    Integer y = rng.get_z_range(yroot + 1);
    if (mpz_fdiv_ui(y.get_mpz_t(), 2) != static_cast<unsigned long>(y_par)) {
      if (y == 0) continue;
      y -= 1;
    }
    Integer p = left - y * y;
    if (p < 0) continue;
    if (p == 1) {
      out = {x, y, 1, 0};
    } else if (mpz_probab_prime_p(p.get_mpz_t(), 30) == 0) {
      continue;
    } else {
      auto [z, w] = two_squares_prime(p, rng);
      out = {x, y, z, w};
    }
    for (auto& v : out) v *= scale;
    return out;
  }
}

std::vector<Rational> rational_square_split(const Rational& r) {
  if (r < 0) throw std::invalid_argument("rational_square_split: negative weight");
  std::vector<Rational> out;
  if (r == 0) return out;
  Integer root_num, root_den;
  if (is_square(r.get_num(), root_num) && is_square(r.get_den(), root_den)) {
    out.emplace_back(Rational(root_num, root_den));
    return out;
  }
  // r = p/q = (p q) / q^2
  Integer n = r.get_num() * r.get_den();
  for (auto& a : four_squares(n)) {
    if (a == 0) continue;
    Rational v(a, r.get_den());
    v.canonicalize();
    out.push_back(v);
  }
  return out;
}

Rational approximate(double x, long max_den) {
  if (!std::isfinite(x)) throw std::invalid_argument("approximate: non-finite value");
  if (max_den < 1) max_den = 1;
  // Continued-fraction convergents with a semiconvergent at the bound.
  bool negative = x < 0;
  double v = std::fabs(x);
  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = v;
  for (int iter = 0; iter < 64; ++iter) {
    double a_d = std::floor(frac);
    if (a_d > 1e18) break;
    Integer a(static_cast<unsigned long>(a_d));
    Integer q2 = a * q1 + q0;
    if (q2 > max_den) {
      Integer k = (Integer(max_den) - q0) / q1;
      Integer ps = k * p1 + p0, qs = k * q1 + q0;
      Rational semi(ps, qs), conv(p1, q1);
      semi.canonicalize();
      conv.canonicalize();
      Rational target(v);
      Rational best = abs(semi - target) < abs(conv - target) ? semi : conv;
      return negative ? Rational(-best) : best;
    }
    Integer p2 = a * p1 + p0;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    double rem = frac - a_d;
    if (rem < 1e-15) break;
    frac = 1.0 / rem;
  }
  Rational out(p1, q1);
  out.canonicalize();
  return negative ? Rational(-out) : out;
}

}  // namespace sosforge
