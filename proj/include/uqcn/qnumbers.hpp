#pragma once

#include "uqcn/exponent.hpp"
#include "uqcn/scalar.hpp"

#include <gmpxx.h>

namespace uqcn {

// q^e.
ExactScalar q_power(HalfExponent e);

// (b^m - b^-m)/(b - b^-1) with b = q^(2d); d = 1/2 gives the plain [m].
// d must be a nonzero multiple of 1/8.
ExactScalar q_int(long m, const mpq_class& d);

// [m] with base q^(quarters/4); the kernel behind q_int.
ExactScalar q_int_quarters(long m, long base_quarters);

// [a n] = (q^(an) - q^(-an))/(q - q^-1) for half-integer a.
ExactScalar q_int_frac(HalfExponent a, long n);

// Gaussian binomial [m over r] with base q^(2d).
ExactScalar q_binom(long m, long r, const mpq_class& d);

// Value at q = 1; throws std::domain_error("pole at u=1") on a pole.
mpq_class classical_limit(const ExactScalar& s);

} // namespace uqcn
