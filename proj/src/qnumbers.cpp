#include "uqcn/qnumbers.hpp"

#include <stdexcept>

namespace uqcn {

ExactScalar q_power(HalfExponent e) { return ExactScalar::q_quarter(2 * e.doubled); }

namespace {

long base_quarters_of(const mpq_class& d) {
  mpq_class b = d * 8;
  if (b.get_den() != 1) throw std::invalid_argument("q_int base q^(2d) must be a power of q^(1/4)");
  if (b == 0) throw std::invalid_argument("q_int with d = 0 divides by zero");
  return b.get_num().get_si();
}

} // namespace

ExactScalar q_int_quarters(long m, long b) {
  if (b == 0) throw std::invalid_argument("q-integer with base 1");
  if (m == 0) return ExactScalar();
  if (m < 0) return -q_int_quarters(-m, b);
  if (b < 0) return q_int_quarters(m, -b);
  // sum_{j=0}^{m-1} s^(b(m-1-2j)): coefficients on a stride-2b grid from -b(m-1).
  std::vector<Int> c(static_cast<std::size_t>(2 * b * (m - 1) + 1));
  for (long j = 0; j < m; ++j) c[static_cast<std::size_t>(2 * b * j)] = 1;
  return ExactScalar::from_polys(IntPoly(std::move(c)), IntPoly(1L), -b * (m - 1));
}

ExactScalar q_int(long m, const mpq_class& d) { return q_int_quarters(m, base_quarters_of(d)); }

ExactScalar q_int_frac(HalfExponent a, long n) {
  const long doubled = a.doubled * n;
  if (doubled % 2 == 0) return q_int_quarters(doubled / 2, 4);
  // (s^(2x) - s^(-2x)) / (s^4 - s^-4) with x = doubled.
  const long x = doubled < 0 ? -doubled : doubled;
  std::vector<Int> nc(static_cast<std::size_t>(4 * x + 1));
  nc.front() = -1;
  nc.back() = 1;
  std::vector<Int> dc(9);
  dc.front() = -1;
  dc.back() = 1;
  ExactScalar r = ExactScalar::from_polys(IntPoly(std::move(nc)), IntPoly(std::move(dc)), -2 * x + 4);
  return doubled < 0 ? -r : r;
}

ExactScalar q_binom(long m, long r, const mpq_class& d) {
  if (r < 0 || r > m) throw std::invalid_argument("q_binom: r out of range");
  const long b = base_quarters_of(d);
  ExactScalar num(1L), den(1L);
  for (long k = 1; k <= r; ++k) {
    num *= q_int_quarters(m - r + k, b);
    den *= q_int_quarters(k, b);
  }
  return num / den;
}

mpq_class classical_limit(const ExactScalar& s) {
  auto v = s.eval_at(mpq_class(1));
  if (!v) throw std::domain_error("pole at u=1");
  return *v;
}

} // namespace uqcn
