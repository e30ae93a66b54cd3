#include "guardgrid/scalar.hpp"

#include <cmath>
#include <stdexcept>

namespace gg {

Scalar make_scalar(long num, long den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Scalar s(num, den);
  s.canonicalize();
  return s;
}

namespace {

bool valid_integer_text(std::string_view t) {
  if (t.empty()) return false;
  std::size_t i = 0;
  if (t[0] == '-' || t[0] == '+') i = 1;
  if (i == t.size()) return false;
  for (; i < t.size(); ++i)
    if (t[i] < '0' || t[i] > '9') return false;
  return true;
}

Integer parse_integer(std::string_view t) {
  std::string s(t);
  if (!s.empty() && s[0] == '+') s.erase(0, 1);
  return Integer(s, 10);
}

}  // namespace

Scalar parse_scalar(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    if (!valid_integer_text(text))
      throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
    return Scalar(parse_integer(text));
  }
  auto num = text.substr(0, slash);
  auto den = text.substr(slash + 1);
  if (!valid_integer_text(num) || !valid_integer_text(den) || den[0] == '-' ||
      den[0] == '+')
    throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
  Integer d = parse_integer(den);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Scalar s(parse_integer(num), d);
  s.canonicalize();
  return s;
}

std::string to_string(const Scalar& s) {
  if (s.get_den() == 1) return s.get_num().get_str();
  return s.get_num().get_str() + "/" + s.get_den().get_str();
}

Scalar pow(const Scalar& base, int exponent) {
  if (exponent < 0) {
    if (base == 0) throw std::domain_error("zero to a negative power");
    Scalar inv = 1 / base;
    return pow(inv, -exponent);
  }
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(exponent));
  Scalar r(num, den);
  r.canonicalize();
  return r;
}

Integer floor(const Scalar& s) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
  return r;
}

Integer ceil(const Scalar& s) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
  return r;
}

Integer ceil_sqrt(const Scalar& s) {
  if (s < 0) throw std::domain_error("sqrt of negative");
  Integer c = ceil(s);
  Integer r;
  mpz_sqrt(r.get_mpz_t(), c.get_mpz_t());
  if (r * r < c) r += 1;
  return r;
}

int sign(const Scalar& s) { return sgn(s); }

Scalar abs(const Scalar& s) { return s < 0 ? Scalar(-s) : s; }

int compare(const Scalar& a, double a_approx, const Scalar& b, double b_approx) {
  double diff = a_approx - b_approx;
  double tol = 1e-13 * (std::fabs(a_approx) + std::fabs(b_approx));
  if (std::isfinite(diff) && std::fabs(diff) > tol && tol > 1e-250) return diff > 0 ? 1 : -1;
  return cmp(a, b) < 0 ? -1 : (cmp(a, b) > 0 ? 1 : 0);
}

}  // namespace gg
