#include "etalg/rational.hpp"

#include <algorithm>
#include <cctype>

#include "etalg/error.hpp"

namespace etalg {

Rational make_rational(long num, long den) {
  require(den != 0, ErrorKind::invalid_input, "zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const Integer& z) { return z.get_str(); }

namespace {

bool is_integer_text(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

Integer parse_integer(std::string_view s) {
  std::string t(s);
  if (!t.empty() && t[0] == '+') t.erase(0, 1);
  return Integer(t, 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  if (!is_integer_text(num))
    fail(ErrorKind::schema, "malformed rational '" + std::string(text) + "'");
  Rational q;
  q.get_num() = parse_integer(num);
  if (slash == std::string_view::npos) {
    q.get_den() = 1;
    return q;
  }
  std::string_view den = text.substr(slash + 1);
  if (!is_integer_text(den))
    fail(ErrorKind::schema, "malformed rational '" + std::string(text) + "'");
  q.get_den() = parse_integer(den);
  if (q.get_den() == 0)
    fail(ErrorKind::schema, "zero denominator in '" + std::string(text) + "'");
  q.canonicalize();
  return q;
}

double to_double(const Rational& q) { return q.get_d(); }

Rational rabs(const Rational& q) { return q < 0 ? Rational(-q) : q; }
Rational rmin(const Rational& a, const Rational& b) { return a < b ? a : b; }
Rational rmax(const Rational& a, const Rational& b) { return a < b ? b : a; }

Integer floor_of(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil_of(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

void sort_unique(std::vector<Rational>& xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
}

}  // namespace etalg
