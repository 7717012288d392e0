#pragma once

#include "uqcn/exponent.hpp"
#include "uqcn/scalar.hpp"

#include <map>
#include <string>

namespace uqcn {

// Laurent series in one variable z with exponents in (1/2)Z.
// Coefficients at exponents below `order` are exact; nothing is known at or above it.
class TruncatedSeries {
public:
  TruncatedSeries(HalfExponent min_exponent, HalfExponent order);

  static TruncatedSeries constant(const ExactScalar& c, HalfExponent order);
  // c0 + c1 z + ... from a coefficient list at integer exponents 0, 1, ...
  static TruncatedSeries polynomial(const std::vector<ExactScalar>& coeffs, HalfExponent order);

  HalfExponent order() const { return order_; }
  HalfExponent min_exponent() const { return min_; }
  const std::map<HalfExponent, ExactScalar>& terms() const { return terms_; }

  // Sets the coefficient at e (min_exponent <= e < order); zero erases.
  void set(HalfExponent e, const ExactScalar& c);
  void add(HalfExponent e, const ExactScalar& c);

  std::string to_string() const;

private:
  HalfExponent min_;
  HalfExponent order_;
  std::map<HalfExponent, ExactScalar> terms_;
};

TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries series_inv(const TruncatedSeries& s);
// z -> q^c z.
TruncatedSeries series_scale_var(const TruncatedSeries& s, HalfExponent c);
ExactScalar series_coeff(const TruncatedSeries& s, HalfExponent e);
bool series_equal(const TruncatedSeries& a, const TruncatedSeries& b, HalfExponent order);

// (1-z)^a_{q^2} = exp(-sum_{n>=1} [an]/(n[n]) z^n), below `order`.
TruncatedSeries qpow_exp(HalfExponent a, HalfExponent order);

// (1-z)^a_{q^2} = (z q^(-a+1); q^2)_inf / (z q^(a+1); q^2)_inf, below `order`.
// The numerator and the inverse denominator are expanded separately by
// Euler's formulas for (x;p)_inf and 1/(x;p)_inf, then multiplied.
TruncatedSeries qpow_product(HalfExponent a, HalfExponent order);

// (x;p)_inf and 1/(x;p)_inf with x = q^(xq/4) z and p = q^(pq/4), below `order`.
TruncatedSeries pochhammer_inf(long x_quarters, long p_quarters, HalfExponent order);
TruncatedSeries pochhammer_inf_inverse(long x_quarters, long p_quarters, HalfExponent order);

} // namespace uqcn
