#pragma once

#include "uqcn/exponent.hpp"
#include "uqcn/poly.hpp"

#include <gmpxx.h>

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace uqcn {

// Exact element of Q(s), s = q^(1/4).
//
// Stored as s^shift * num(s) / den(s) with num(0) != 0, den(0) != 0,
// gcd(num, den) = 1 and a positive leading coefficient on den, so equal
// values have identical representations. Zero is num = 0, den = 1, shift = 0.
class ExactScalar {
public:
  ExactScalar() : den_(1L) {}
  ExactScalar(long v); // NOLINT: integers convert implicitly
  explicit ExactScalar(const mpz_class& v);
  explicit ExactScalar(const mpq_class& v);

  // q^(quarters/4).
  static ExactScalar q_quarter(long quarters);
  // Builds s^shift * num / den from arbitrary polynomials (den != 0).
  static ExactScalar from_polys(const IntPoly& num, const IntPoly& den, long shift = 0);

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return shift_ == 0 && num_.is_one() && den_.is_one(); }
  bool is_laurent() const { return den_.is_constant(); }

  // Canonical numerator and denominator as polynomials in s.
  IntPoly numerator() const;
  IntPoly denominator() const;
  long shift() const { return shift_; }
  const IntPoly& num_part() const { return num_; }
  const IntPoly& den_part() const { return den_; }

  ExactScalar operator-() const;
  ExactScalar& operator+=(const ExactScalar& o);
  ExactScalar& operator-=(const ExactScalar& o);
  ExactScalar& operator*=(const ExactScalar& o);
  ExactScalar& operator/=(const ExactScalar& o);
  ExactScalar inverse() const;
  ExactScalar pow(long e) const;
  // Multiplies by q^(quarters/4) in place.
  ExactScalar& mul_q_quarter(long quarters);

  friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
  friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }
  friend ExactScalar operator*(const ExactScalar& a, const ExactScalar& b);
  friend ExactScalar operator/(ExactScalar a, const ExactScalar& b) { return a /= b; }
  friend bool operator==(const ExactScalar& a, const ExactScalar& b) {
    return a.shift_ == b.shift_ && a.num_ == b.num_ && a.den_ == b.den_;
  }

  // Value at a rational point s = x; nullopt on a pole.
  std::optional<mpq_class> eval_at(const mpq_class& x) const;

  std::size_t hash() const;
  std::string to_string() const;
  static ExactScalar parse(std::string_view text);

private:
  void normalize();
  long shift_ = 0;
  IntPoly num_;
  IntPoly den_;
};

std::ostream& operator<<(std::ostream& os, const ExactScalar& s);

struct ParseError : std::runtime_error {
  ParseError(const std::string& what, std::size_t pos)
      : std::runtime_error(what + " at position " + std::to_string(pos)), position(pos) {}
  std::size_t position;
};

} // namespace uqcn
