#pragma once

#include "uqcn/bigint.hpp"

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace uqcn {

// Dense polynomial over Z in one variable, lowest degree first.
// The zero polynomial has no coefficients; otherwise the top coefficient is nonzero.
class IntPoly {
public:
  IntPoly() = default;
  explicit IntPoly(long c);
  explicit IntPoly(const Int& c);
  explicit IntPoly(std::vector<Int> coeffs);

  static IntPoly monomial(const Int& c, std::size_t degree);

  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  bool is_constant() const { return c_.size() <= 1; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const Int& lead() const { return c_.back(); }
  const std::vector<Int>& coeffs() const { return c_; }
  Int coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Int(); }

  // Number of trailing zero coefficients (x-adic valuation); 0 for the zero polynomial.
  std::size_t valuation() const;
  IntPoly shifted_down(std::size_t k) const;
  IntPoly shifted_up(std::size_t k) const;

  Int content() const;
  IntPoly primitive_part() const;
  mpz_class eval(const mpz_class& x) const;
  mpq_class eval(const mpq_class& x) const;

  IntPoly operator-() const;
  IntPoly& operator+=(const IntPoly& o);
  IntPoly& operator-=(const IntPoly& o);
  IntPoly& operator*=(const Int& k);
  IntPoly& divexact(const Int& k);

  friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(IntPoly a, const Int& k) { return a *= k; }
  friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }

  std::size_t hash() const;
  std::string debug_string() const;

private:
  void trim();
  std::vector<Int> c_;
};

// Exact quotient a / b; throws std::domain_error if b does not divide a over Z.
IntPoly divexact(const IntPoly& a, const IntPoly& b);

// Quotient if b divides a over Z, otherwise false.
bool try_divexact(const IntPoly& a, const IntPoly& b, IntPoly& quotient);

// Greatest common divisor over Z with positive leading coefficient
// (content included); gcd(0, 0) = 0.
IntPoly gcd(const IntPoly& a, const IntPoly& b);

} // namespace uqcn
