#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bcca/identity.hpp"
#include "bcca/laurent.hpp"
#include "bcca/rat.hpp"

using namespace bcca;

namespace {

LaurentPoly mono(long exp, long num, long den = 1) {
  return LaurentPoly::monomial(exp, Rat(num, den));
}

LaurentPoly random_sparse(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> exp_dist(-8, 8);
  std::uniform_int_distribution<long> coeff_dist(-9, 9);
  std::uniform_int_distribution<int> nterms(1, 5);
  LaurentPoly p;
  const int n = nterms(rng);
  for (int i = 0; i < n; ++i) p.add_term(exp_dist(rng), Rat(coeff_dist(rng)));
  return p;
}

}  // namespace

TEST_CASE("rational parsing, printing, arithmetic") {
  CHECK(Rat::parse("3/6") == Rat(1, 2));
  CHECK(Rat::parse("-4/2").str() == "-2");
  CHECK(Rat::parse("0/5").str() == "0");
  CHECK(Rat(7, -3).str() == "-7/3");
  CHECK(Rat(1, 3) + Rat(1, 6) == Rat(1, 2));
  CHECK(Rat(2, 3).pow(-2) == Rat(9, 4));
  CHECK(Rat(0).pow(3) == Rat(0));
  CHECK_THROWS_AS(Rat(1, 0), DomainError);
  CHECK_THROWS_AS(Rat::parse("1/~"), DomainError);
  CHECK_THROWS_AS(Rat(0).pow(-1), DomainError);
  CHECK_THROWS_AS(Rat(1) / Rat(0), DomainError);
  CHECK(rat_binom(5, 2) == Rat(10));
  CHECK(rat_binom(4, 7) == Rat(0));
  CHECK(rat_factorial(5) == Rat(120));
}

TEST_CASE("Laurent polynomial normalization and round trips") {
  LaurentPoly p;
  p.add_term(2, Rat(1));
  p.add_term(2, Rat(-1));
  CHECK(p.is_zero());
  CHECK(p.str() == "0");
  CHECK(LaurentPoly::parse("0") == p);

  LaurentPoly q = mono(-2, -3, 2) + mono(0, 5) + mono(3, 1, 7);
  CHECK(q.str() == "-3/2*t^-2 + 5*t^0 + 1/7*t^3");
  CHECK(LaurentPoly::parse(q.str()) == q);
  CHECK(q.coeff(0) == Rat(5));
  CHECK(q.coeff(1) == Rat(0));
  CHECK(q.min_exp() == -2);
  CHECK(q.max_exp() == 3);
  CHECK_THROWS_AS(LaurentPoly().min_exp(), DomainError);
  CHECK_THROWS_AS(LaurentPoly::parse("2t^3"), DomainError);
}

TEST_CASE("Laurent evaluation and variable scaling") {
  const LaurentPoly q = mono(1, 1) + mono(-1, 1);  // t + 1/t
  CHECK(q.eval(Rat(2)) == Rat(5, 2));
  CHECK_THROWS_AS(q.eval(Rat(0)), DomainError);
  CHECK(q.scale_var(Rat(3)) == mono(1, 3) + mono(-1, 1, 3));
  CHECK_THROWS_AS(q.scale_var(Rat(0)), DomainError);
}

TEST_CASE("derivative examples") {
  CHECK(lp_derive(mono(2, 1)) == mono(1, 2));
  CHECK(lp_derive(LaurentPoly()).is_zero());
  // d/dt (t + t^-1) = 1 - t^-2
  CHECK(lp_derive(mono(1, 1) + mono(-1, 1)) == mono(0, 1) + mono(-2, -1));
}

TEST_CASE("vector-field bracket examples") {
  // [-t^2 d/dt, -1 d/dt] has coefficient -2t.
  CHECK(lp_witt_bracket(mono(2, -1), mono(0, -1)) == mono(1, -2));

  const LaurentPoly f = mono(2, 1) + mono(0, -1);  // t^2 - 1
  CHECK(lp_witt_bracket(f, f).is_zero());

  // (t^2-1) against (t+1/t)(t^2-1) = t^3 - 1/t.
  const LaurentPoly g = mono(3, 1) + mono(-1, -1);
  const LaurentPoly expect =
      mono(4, 1) + mono(2, -3) + mono(0, 3) + mono(-2, -1);
  CHECK(lp_witt_bracket(f, g) == expect);
}

TEST_CASE("central pairing examples") {
  CHECK(lp_vir_cocycle(mono(3, -1), mono(-1, -1)) == Rat(1, 2));
  CHECK(lp_vir_cocycle(mono(2, -1), mono(0, -1)) == Rat(0));
  CHECK(lp_vir_cocycle(mono(4, -1), mono(-2, 1)) == Rat(-2));
}

TEST_CASE("central pairing matches n(n^2-1)/12 on the monomial basis") {
  for (long n = -6; n <= 6; ++n) {
    const LaurentPoly ln = mono(n + 1, -1);
    const LaurentPoly lm = mono(-n + 1, -1);
    CHECK(lp_vir_cocycle(ln, lm) == Rat(n * (n * n - 1), 12));
    CHECK(lp_vir_cocycle(ln, lm) + lp_vir_cocycle(lm, ln) == Rat(0));
  }
}

TEST_CASE("derivative satisfies Leibniz on random sparse polynomials") {
  std::mt19937_64 rng(20260822);
  for (int trial = 0; trial < 200; ++trial) {
    const LaurentPoly p = random_sparse(rng);
    const LaurentPoly q = random_sparse(rng);
    CHECK(lp_derive(p * q) == lp_derive(p) * q + p * lp_derive(q));
  }
}

TEST_CASE("vector-field bracket satisfies Jacobi") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const LaurentPoly f = random_sparse(rng);
    const LaurentPoly g = random_sparse(rng);
    const LaurentPoly h = random_sparse(rng);
    LaurentPoly acc = lp_witt_bracket(f, lp_witt_bracket(g, h));
    acc += lp_witt_bracket(g, lp_witt_bracket(h, f));
    acc += lp_witt_bracket(h, lp_witt_bracket(f, g));
    CHECK(acc.is_zero());
  }
}

TEST_CASE("identity test: trivial equal and planted unequal") {
  const ParamExpr zero = [](const ParamValues&) { return LaurentPoly(); };
  CHECK(identity_test(zero, zero, {{"x", 1}}, 42));

  // x*t versus x^2*t agree only at x = 0 and x = 1.
  const ParamExpr lin = [](const ParamValues& v) {
    return LaurentPoly::monomial(1, v.at("x"));
  };
  const ParamExpr quad = [](const ParamValues& v) {
    return LaurentPoly::monomial(1, v.at("x") * v.at("x"));
  };
  std::optional<IdentityWitness> witness;
  CHECK_FALSE(identity_test(lin, quad, {{"x", 2}}, 42, {}, &witness));
  REQUIRE(witness.has_value());
  const Rat x = witness->point.at("x");
  CHECK(witness->lhs_value == LaurentPoly::monomial(1, x));
  CHECK(witness->rhs_value == LaurentPoly::monomial(1, x * x));

  CHECK_THROWS_AS(identity_test(zero, zero, {{"x", 0}}, 42), DomainError);
}

TEST_CASE("identity test: determinism and exclusions") {
  const ParamExpr diff = [](const ParamValues& v) {
    const Rat& lam = v.at("lam");
    const Rat& mu = v.at("mu");
    // 1/(lam^2 - mu) is only defined off the excluded locus.
    return LaurentPoly(Rat(1) / (lam * lam - mu));
  };
  const Exclusion on_locus = [](const ParamValues& v) {
    return v.at("lam") * v.at("lam") == v.at("mu");
  };
  // Same seed: identical sampling; the call must not throw despite the
  // singular locus, and disagreement with zero is detected.
  const ParamExpr zero = [](const ParamValues&) { return LaurentPoly(); };
  std::optional<IdentityWitness> w1, w2;
  CHECK_FALSE(identity_test(diff, zero, {{"lam", 3}, {"mu", 2}}, 7, {on_locus}, &w1));
  CHECK_FALSE(identity_test(diff, zero, {{"lam", 3}, {"mu", 2}}, 7, {on_locus}, &w2));
  REQUIRE(w1.has_value());
  REQUIRE(w2.has_value());
  CHECK(w1->point == w2->point);
}
