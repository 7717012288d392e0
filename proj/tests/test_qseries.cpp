#include "uqcn/qnumbers.hpp"
#include "uqcn/series.hpp"

#include <doctest.h>

#include <random>

using namespace uqcn;

namespace {

ExactScalar P(const char* s) { return ExactScalar::parse(s); }
HalfExponent I(long v) { return HalfExponent::integer(v); }

TruncatedSeries poly(std::vector<ExactScalar> c, long order) { return TruncatedSeries::polynomial(c, I(order)); }

std::vector<HalfExponent> exponent_set() {
  std::vector<HalfExponent> as;
  for (long d : {1, 2, 3, 4}) {
    as.push_back(half(d));
    as.push_back(half(-d));
  }
  std::mt19937 rng(99);
  std::uniform_int_distribution<long> pick(-8, 8);
  for (int k = 0; k < 5; ++k) as.push_back(half(pick(rng)));
  return as;
}

} // namespace

TEST_CASE("qpow_exp examples") {
  CHECK(series_equal(qpow_exp(I(1), I(5)), poly({1, -1}, 5), I(5)));
  CHECK(series_equal(qpow_exp(I(0), I(6)), poly({1}, 6), I(6)));
  CHECK(series_coeff(qpow_exp(half(1), I(4)), I(1)) == -P("(q^1/2+q^-1/2)^-1"));
  CHECK_THROWS_AS(qpow_exp(I(1), I(0)), std::invalid_argument);
}

TEST_CASE("qpow_product examples") {
  CHECK(series_equal(qpow_product(I(2), I(8)), poly({1, -P("q+q^-1"), 1}, 8), I(8)));
  TruncatedSeries expected(HalfExponent(), I(8));
  for (long k = 0; k < 8; ++k) expected.set(I(k), 1);
  CHECK(series_equal(qpow_product(I(-1), I(8)), expected, I(8)));
  CHECK(series_equal(qpow_product(half(1), I(12)), qpow_exp(half(1), I(12)), I(12)));
}

TEST_CASE("ring operations") {
  TruncatedSeries one_minus_z = poly({1, -1}, 10);
  CHECK(series_equal(series_mul(one_minus_z, series_inv(one_minus_z)), poly({1}, 10), I(10)));
  CHECK(series_equal(series_scale_var(one_minus_z, I(1)), poly({1, -P("q")}, 10), I(10)));
  CHECK(series_coeff(qpow_exp(I(2), I(8)), I(1)) == -P("q+q^-1"));
  CHECK_THROWS_AS(series_coeff(one_minus_z, I(10)), std::out_of_range);
  CHECK_THROWS_AS(series_inv(TruncatedSeries(HalfExponent(), I(4))), std::domain_error);
  CHECK_THROWS_AS(series_equal(one_minus_z, poly({1}, 3), I(5)), std::out_of_range);
  CHECK_FALSE(series_equal(one_minus_z, poly({1, -P("q")}, 10), I(10)));
}

TEST_CASE("truncation propagates conservatively") {
  TruncatedSeries a = poly({1, 1}, 4);
  TruncatedSeries b(I(-1), I(2));
  b.set(I(-1), 1);
  TruncatedSeries p = series_mul(a, b);
  CHECK(p.min_exponent() == I(-1));
  CHECK(p.order() == I(2)); // min(4 + (-1), 2 + 0)
  TruncatedSeries inv = series_inv(b);
  CHECK(inv.min_exponent() == I(1));
  CHECK(inv.order() == I(4));
  TruncatedSeries h(half(1), I(3));
  h.set(half(1), 2);
  h.set(half(3), 1);
  TruncatedSeries hi = series_inv(h);
  CHECK(series_equal(series_mul(h, hi), TruncatedSeries::constant(1, hi.order() + h.min_exponent()), I(2)));
}

TEST_CASE("series text is sorted by exponent") {
  TruncatedSeries s(half(-1), I(2));
  s.set(I(1), P("q"));
  s.set(half(-1), 3);
  CHECK(s.to_string() == "(3) z^-1/2 + (q) z^1 + O(z^2)");
}

TEST_CASE("exponential and product formulas agree") {
  for (HalfExponent a : exponent_set()) {
    CAPTURE(a.to_string());
    CHECK(series_equal(qpow_exp(a, I(16)), qpow_product(a, I(16)), I(16)));
  }
}

TEST_CASE("qpow(a) qpow(-a) = 1") {
  for (HalfExponent a : exponent_set()) {
    CAPTURE(a.to_string());
    CHECK(series_equal(series_mul(qpow_exp(a, I(16)), qpow_exp(-a, I(16))), poly({1}, 16), I(16)));
  }
}

TEST_CASE("integer powers match finite telescoped products") {
  // (1-z)^m_{q^2} = prod_{j=0}^{m-1} (1 - q^(1-m+2j) z) for m >= 1.
  for (long m = 1; m <= 4; ++m) {
    TruncatedSeries prod = poly({1}, 12);
    for (long j = 0; j < m; ++j) prod = series_mul(prod, poly({1, -ExactScalar::q_quarter(4 * (1 - m + 2 * j))}, 12));
    CHECK(series_equal(qpow_product(I(m), I(12)), prod, I(12)));
    CHECK(series_equal(qpow_exp(I(m), I(12)), prod, I(12)));
  }
}

TEST_CASE("merge identity of the R7 contraction") {
  TruncatedSeries lhs = series_mul(qpow_exp(half(-1), I(12)), series_scale_var(qpow_exp(half(-1), I(12)), I(-1)));
  TruncatedSeries rhs = series_scale_var(qpow_exp(I(-1), I(12)), half(-1));
  CHECK(series_equal(lhs, rhs, I(12)));
  CHECK(series_equal(series_mul(qpow_exp(half(-1), I(12)), qpow_exp(half(1), I(12))), poly({1}, 12), I(12)));
}

TEST_CASE("classical limit of qpow is the binomial series") {
  TruncatedSeries s = qpow_exp(half(3), I(6));
  // (1-z)^(3/2) = 1 - 3/2 z + 3/8 z^2 + 1/16 z^3 + 3/128 z^4 + ...
  CHECK(classical_limit(series_coeff(s, I(1))) == mpq_class(-3, 2));
  CHECK(classical_limit(series_coeff(s, I(2))) == mpq_class(3, 8));
  CHECK(classical_limit(series_coeff(s, I(3))) == mpq_class(1, 16));
  CHECK(classical_limit(series_coeff(s, I(4))) == mpq_class(3, 128));
}
