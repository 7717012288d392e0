#pragma once

#include "uqcn/scalar.hpp"

#include <map>
#include <string>
#include <vector>

namespace uqcn {

// Laurent polynomial in a fixed number of formal variables over Q(q^(1/4)).
class MultiPoly {
public:
  using Exps = std::vector<int>;

  explicit MultiPoly(int nvars = 0) : nvars_(nvars) {}
  static MultiPoly constant(int nvars, const ExactScalar& c);
  static MultiPoly var(int nvars, int k, const ExactScalar& c = ExactScalar(1));
  static MultiPoly monomial(const Exps& e, const ExactScalar& c = ExactScalar(1));

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Exps, ExactScalar>& terms() const { return terms_; }

  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const ExactScalar& c);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(const ExactScalar& c, MultiPoly a) { return a *= c; }
  friend MultiPoly operator*(MultiPoly a, const ExactScalar& c) { return a *= c; }
  MultiPoly operator-() const;
  bool operator==(const MultiPoly& o) const;

  // Variable k goes to variable perm[k].
  MultiPoly permuted(const std::vector<int>& perm) const;
  // Variable k replaced by the scalar c (c must be nonzero if negative powers occur).
  MultiPoly substitute(int k, const ExactScalar& c) const;

  // Terms in a fixed order, e.g. "(q+1) z1^2 w".
  std::string to_string(const std::vector<std::string>& names) const;

private:
  void add_term(const Exps& e, const ExactScalar& c);
  int nvars_;
  std::map<Exps, ExactScalar> terms_;
};

} // namespace uqcn
