#pragma once

#include "uqcn/exponent.hpp"
#include "uqcn/report.hpp"

#include <gmpxx.h>

#include <vector>

namespace uqcn {

// lambda in P = Z e_1 + ... + Z e_n, by its e-coordinates.
struct WeightC {
  std::vector<long> m;
  bool operator==(const WeightC&) const = default;
};

// lambda~ in the A_{n-1} weight lattice, by the pairings t_j = 2(alpha~_j | lambda~).
struct WeightA {
  std::vector<long> t;
  bool operator==(const WeightA&) const = default;
};

// Root and weight data of C_n together with its auxiliary A_{n-1} copy.
// Indices of simple roots are 1-based throughout.
class Lattice {
public:
  explicit Lattice(int n);

  int rank() const { return n_; }

  HalfExponent inner_P(const WeightC& a, const WeightC& b) const;
  mpq_class inner_tilde(const WeightA& a, const WeightA& b) const;

  // (alpha_i | alpha_j).
  HalfExponent root_inner(int i, int j) const;
  // (alpha~_i | alpha~_j); zero when either index is n.
  HalfExponent tilde_root_inner(int i, int j) const;
  int cartan(int i, int j) const;
  // d_i = (alpha_i|alpha_i)/2: 1/2 for i < n, 1 for i = n.
  HalfExponent d(int i) const;

  // 2(alpha_i | lambda), always an integer.
  long pair2(int i, const WeightC& lambda) const;
  // 2(alpha~_i | lambda~) = t_i, and 0 for i = n.
  long pair2_tilde(int i, const WeightA& lt) const;

  WeightC zero() const { return WeightC{std::vector<long>(n_, 0)}; }
  WeightA zero_tilde() const { return WeightA{std::vector<long>(n_ - 1, 0)}; }
  WeightC alpha(int i) const;
  WeightA alpha_tilde(int i) const;
  // lambda_i = e_1 + ... + e_i, lambda_0 = 0.
  WeightC fundamental(int i) const;
  // lambda~_i with t = unit vector i for 0 < i < n; zero for i = 0 and i = n.
  WeightA fundamental_tilde(int i) const;

  // Simple-root coordinates of an element of Q; throws if lambda is not in Q.
  std::vector<long> root_coords(const WeightC& lambda) const;
  WeightC from_root_coords(const std::vector<long>& r) const;

  // Parities (m_1 .. m_{n-1}) mod 2 in the alpha~ basis; the alpha_n coordinate is dropped.
  std::vector<long> bar(const std::vector<long>& root_coords) const;
  // The A_{n-1} weight with the given alpha~-coordinates.
  WeightA tilde_from_root_coords(const std::vector<long>& r) const;

  // eps(alpha_i, alpha_j) from the three-case table.
  int eps_simple(int i, int j) const;
  // eps(alpha_i, lambda), lambda written as base + sum r_j alpha_j with base in {0, lambda_1}.
  int eps_char(int i, const WeightC& lambda) const;
  // eps(alpha, theta) on Q x P, alpha in root coordinates: multiplicative over the
  // simple roots of alpha, times the parity twist (-1)^(bar(alpha) - sum r_i bar(alpha_i) | bar(theta)).
  int eps(const std::vector<long>& alpha, const WeightC& theta) const;

  // (m_i - m_{i+1}) = t_i mod 2 for i = 1..n-1.
  bool constraint_check(const WeightC& lambda, const WeightA& lt) const;

  void add_alpha(WeightC& lambda, int i, long times) const;
  void add_alpha_tilde(WeightA& lt, int i, long times) const;

private:
  void check_index(int i) const;
  int n_;
  std::vector<std::vector<mpq_class>> ginv_; // inverse Gram matrix of the alpha~
};

// All four quasi-cocycle axioms over simple roots and sums of two simple roots,
// plus the product table and the commutation table of the shift operators
// e^{alpha_i} eps_i on a window of P.
VerificationReport check_quasi_cocycle_axioms(int n);

} // namespace uqcn
