#include "bcca/rat.hpp"

#include <cctype>

namespace bcca {

namespace {

bool valid_integer_token(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rat Rat::parse(const std::string& text) {
  const auto slash = text.find('/');
  std::string num = (slash == std::string::npos) ? text : text.substr(0, slash);
  std::string den = (slash == std::string::npos) ? "1" : text.substr(slash + 1);
  if (!valid_integer_token(num) || !valid_integer_token(den)) {
    throw DomainError("malformed rational: '" + text + "'");
  }
  mpz_class d(den);
  if (d == 0) throw DomainError("rational with zero denominator: '" + text + "'");
  mpq_class q(mpz_class(num), d);
  q.canonicalize();
  return Rat(q);
}

std::string Rat::str() const {
  if (is_integer()) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rat Rat::pow(long e) const {
  if (e == 0) return Rat(1);
  if (is_zero()) {
    if (e < 0) throw DomainError("negative power of zero");
    return Rat(0);
  }
  const unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
  mpz_class num_pow, den_pow;
  mpz_pow_ui(num_pow.get_mpz_t(), v_.get_num().get_mpz_t(), k);
  mpz_pow_ui(den_pow.get_mpz_t(), v_.get_den().get_mpz_t(), k);
  mpq_class r = (e > 0) ? mpq_class(num_pow, den_pow) : mpq_class(den_pow, num_pow);
  r.canonicalize();
  return Rat(r);
}

Rat rat_binom(long n, long k) {
  if (k < 0 || k > n) return Rat(0);
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rat(b);
}

Rat rat_factorial(long k) {
  if (k < 0) throw DomainError("factorial of negative integer");
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(k));
  return Rat(f);
}

}  // namespace bcca
