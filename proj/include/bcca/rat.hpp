#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace bcca {

// Bad input to an operation (caller's fault). The CLI maps this to exit code 2.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Broken internal invariant (our fault). The CLI maps this to exit code 3.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

// Exact rational scalar. mpq_class already keeps values reduced with a
// positive denominator; this wrapper pins down construction, "p/q" string
// I/O, and integer powers, and never rounds.
class Rat {
 public:
  Rat() : v_(0) {}
  Rat(long n) : v_(n) {}  // NOLINT: implicit by design, mirrors integer literals
  Rat(long num, long den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }
  explicit Rat(const mpz_class& z) : v_(z) {}
  explicit Rat(const mpq_class& q) : v_(q) { v_.canonicalize(); }

  // Accepts "p", "-p", "p/q" with arbitrary-precision decimal digits.
  static Rat parse(const std::string& text);

  std::string str() const;

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }
  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }

  Rat operator-() const { return Rat(mpq_class(-v_)); }
  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o) {
    if (o.is_zero()) throw DomainError("division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rat operator+(Rat a, const Rat& b) { a += b; return a; }
  friend Rat operator-(Rat a, const Rat& b) { a -= b; return a; }
  friend Rat operator*(Rat a, const Rat& b) { a *= b; return a; }
  friend Rat operator/(Rat a, const Rat& b) { a /= b; return a; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

  // e may be negative only for nonzero values.
  Rat pow(long e) const;

  const mpq_class& raw() const { return v_; }

 private:
  mpq_class v_;
};

// n choose k as an exact integer-valued rational; zero when k < 0 or k > n.
Rat rat_binom(long n, long k);

// k! for k >= 0.
Rat rat_factorial(long k);

}  // namespace bcca
