#include "uqcn/qnumbers.hpp"
#include "uqcn/scalar.hpp"

#include <doctest.h>

#include <random>

using namespace uqcn;

namespace {

ExactScalar P(const char* s) { return ExactScalar::parse(s); }

// Value at s = 2, i.e. q = 16; an independent numeric oracle for the canonical form.
mpq_class at2(const ExactScalar& x) { return *x.eval_at(mpq_class(2)); }

ExactScalar random_scalar(std::mt19937& rng) {
  std::uniform_int_distribution<int> coef(-4, 4), deg(0, 3), sh(-6, 6);
  auto poly = [&] {
    std::vector<Int> c;
    int d = deg(rng);
    for (int k = 0; k <= d; ++k) c.emplace_back(coef(rng));
    return IntPoly(std::move(c));
  };
  IntPoly den = poly();
  while (den.is_zero()) den = poly();
  return ExactScalar::from_polys(poly(), den, sh(rng));
}

} // namespace

TEST_CASE("q_power examples") {
  CHECK(q_power(half(0)).is_one());
  CHECK(q_power(half(1)) == P("q^1/2"));
  CHECK(at2(q_power(half(1))) == 4);
  CHECK(q_power(half(-2)) == P("q^-1"));
  CHECK(q_power(half(-2)) == P("1/q"));
  CHECK(q_power(half(3)) * q_power(half(-7)) == q_power(half(-4)));
}

TEST_CASE("q_int examples") {
  CHECK(q_int(0, mpq_class(1, 2)).is_zero());
  CHECK(q_int(2, mpq_class(1, 2)) == P("q+q^-1"));
  CHECK(q_int(3, mpq_class(1, 4)) == P("q+1+q^-1"));
  CHECK(at2(q_int(3, mpq_class(1, 4))) == mpq_class(17 * 16 + 1, 16));
  CHECK_THROWS_AS(q_int(2, mpq_class(0)), std::invalid_argument);
}

TEST_CASE("q_int_frac examples") {
  CHECK(q_int_frac(half(1), 2).is_one());
  CHECK(q_int_frac(half(1), 1) == P("(q^1/2+q^-1/2)^-1"));
  CHECK(at2(q_int_frac(half(1), 1)) == mpq_class(4, 17));
  CHECK(q_int_frac(half(-2), 3) == -P("q^2+1+q^-2"));
  CHECK(q_int_frac(half(3), 1) == P("(q^3/2-q^-3/2)/(q-q^-1)"));
}

TEST_CASE("q_binom examples") {
  CHECK(q_binom(3, 0, mpq_class(1, 2)).is_one());
  CHECK(q_binom(2, 1, mpq_class(1, 4)) == P("q^1/2+q^-1/2"));
  CHECK(q_binom(3, 1, mpq_class(1, 4)) == P("q+1+q^-1"));
  CHECK(q_binom(4, 2, mpq_class(1, 2)) == P("q^4+q^2+2+q^-2+q^-4"));
  CHECK(q_binom(4, 2, mpq_class(1, 2)).is_laurent());
  CHECK_THROWS_AS(q_binom(2, 3, mpq_class(1, 2)), std::invalid_argument);
}

TEST_CASE("classical_limit examples") {
  CHECK(classical_limit(q_int(5, mpq_class(1, 2))) == 5);
  CHECK(classical_limit(q_binom(4, 2, mpq_class(1, 2))) == 6);
  CHECK(classical_limit(q_power(half(1))) == 1);
  CHECK_THROWS_WITH_AS(classical_limit(P("(q-1)^-1")), "pole at u=1", std::domain_error);
  CHECK(classical_limit(P("(q^2-1)/(q-1)")) == 2);
}

TEST_CASE("canonical text round trip") {
  CHECK(P("q^2+1+q^-2").to_string() == "(q^2+1+q^-2)");
  CHECK(P("(q^1/2+q^-1/2)^-1").to_string() == "(q^1/2+q^-1/2)^-1");
  CHECK(P("q^1/4").to_string() == "(q^1/4)");
  CHECK(P("-3q^-3/4+2").to_string() == "(2-3q^-3/4)");
  CHECK(ExactScalar().to_string() == "(0)");
  CHECK(P("(q)/(q+1)").to_string() == "(q^1/2)/(q^1/2+q^-1/2)");
  std::mt19937 rng(7);
  for (int k = 0; k < 200; ++k) {
    ExactScalar x = random_scalar(rng);
    CHECK(P(x.to_string().c_str()) == x);
  }
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_AS(P("q^1/3"), ParseError);
  CHECK_THROWS_AS(P("(q+1"), ParseError);
  CHECK_THROWS_AS(P("q+x"), ParseError);
  try {
    P("q+x");
  } catch (const ParseError& e) {
    CHECK(e.position == 2);
  }
}

TEST_CASE("canonical form makes equality structural") {
  ExactScalar a = P("(q^2-1)/(q-1)");
  CHECK(a == P("q+1"));
  CHECK(a.is_laurent());
  ExactScalar b = P("(2q-2)/(4q^2-4)");
  CHECK(b == P("(2q+2)^-1"));
  CHECK(b.den_part().lead().sign() > 0);
  CHECK(P("(-q+1)^-1") == -P("(q-1)^-1"));
  CHECK(P("q^1/2") * P("q^1/2") == P("q"));
}

TEST_CASE("field axioms on random samples") {
  std::mt19937 rng(20241016);
  for (int k = 0; k < 300; ++k) {
    ExactScalar a = random_scalar(rng), b = random_scalar(rng), c = random_scalar(rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a - a).is_zero());
    if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
    if (!b.is_zero()) {
      auto lhs = (a / b).eval_at(mpq_class(3));
      auto na = a.eval_at(mpq_class(3)), nb = b.eval_at(mpq_class(3));
      if (lhs && na && nb && *nb != 0) CHECK(*lhs == *na / *nb);
    }
  }
}

TEST_CASE("q-integer recurrence and symmetries") {
  const mpq_class base(1, 2);
  for (long m = 1; m <= 12; ++m) {
    CHECK(q_int(m + 1, base) == q_power(half(2)) * q_int(m, base) + q_power(half(-2 * m)));
    CHECK(q_int(-m, base) == -q_int(m, base));
  }
  for (long m = 0; m <= 8; ++m)
    for (long r = 0; r <= m; ++r)
      for (auto d : {mpq_class(1, 4), mpq_class(1, 2), mpq_class(1)}) {
        CHECK(q_binom(m, r, d) == q_binom(m, m - r, d));
        CHECK(q_binom(m, r, d).is_laurent());
      }
  for (long m = 1; m <= 12; ++m)
    for (auto d : {mpq_class(1, 4), mpq_class(1, 2), mpq_class(1)}) CHECK(classical_limit(q_int(m, d)) == m);
}

TEST_CASE("gcd recovers planted common factors") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> coef(-9, 9);
  for (int k = 0; k < 100; ++k) {
    auto poly = [&](int d) {
      std::vector<Int> c;
      for (int j = 0; j <= d; ++j) c.emplace_back(coef(rng));
      c.back() = c.back().is_zero() ? Int(1) : c.back();
      return IntPoly(std::move(c));
    };
    IntPoly f = poly(3), a = poly(4), b = poly(5);
    IntPoly g = gcd(f * a, f * b);
    IntPoly q;
    CHECK(try_divexact(g, f.primitive_part(), q));
    CHECK(try_divexact(f * a, g, q));
    CHECK(try_divexact(f * b, g, q));
  }
}

TEST_CASE("rational constructor canonicalizes") {
  CHECK(ExactScalar(mpq_class(2, 2)).is_one());
  CHECK(ExactScalar(mpq_class(-4, 6)) == ExactScalar(mpq_class(-2, 3)));
  CHECK(ExactScalar(mpq_class(3, -6)).to_string() == ExactScalar(mpq_class(-1, 2)).to_string());
}
