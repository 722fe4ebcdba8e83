#include "hadamard/rational.hpp"

#include <ostream>

#include "hadamard/errors.hpp"

namespace hadamard {

Rational::Rational(long num, long den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DomainError("division by zero");
  value_ /= o.value_;
  return *this;
}

long Rational::floor_long() const {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  if (!q.fits_slong_p()) throw DomainError("rational floor does not fit in a long");
  return q.get_si();
}

Rational Rational::numerator() const { return Rational(mpq_class(value_.get_num())); }
Rational Rational::denominator() const { return Rational(mpq_class(value_.get_den())); }

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  const auto first = s.find_first_not_of(" \t");
  const auto last = s.find_last_not_of(" \t");
  if (first == std::string::npos) throw DomainError("empty rational literal");
  s = s.substr(first, last - first + 1);
  // decimal literals such as "0.25" are accepted and converted exactly
  if (const auto dot = s.find('.'); dot != std::string::npos && s.find('/') == std::string::npos) {
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    const std::size_t scale = s.size() - dot - 1;
    if (digits.empty() || digits == "-" || digits == "+") {
      throw DomainError("malformed rational literal '" + s + "'");
    }
    if (digits.front() == '+') digits.erase(0, 1);
    mpz_class num;
    if (num.set_str(digits, 10) != 0) throw DomainError("malformed rational literal '" + s + "'");
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, scale);
    mpq_class q(num, den);
    q.canonicalize();
    return Rational(q);
  }
  if (s.front() == '+') s.erase(0, 1);
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw DomainError("malformed rational literal '" + std::string(text) + "'");
  if (q.get_den() == 0) throw DomainError("rational with zero denominator");
  q.canonicalize();
  return Rational(q);
}

std::string Rational::str() const { return value_.get_str(); }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace hadamard
