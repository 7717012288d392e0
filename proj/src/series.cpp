#include "uqcn/series.hpp"

#include "uqcn/qnumbers.hpp"

#include <stdexcept>

namespace uqcn {

TruncatedSeries::TruncatedSeries(HalfExponent min_exponent, HalfExponent order)
    : min_(min_exponent), order_(order) {
  if (order < min_exponent) order_ = min_exponent;
}

TruncatedSeries TruncatedSeries::constant(const ExactScalar& c, HalfExponent order) {
  TruncatedSeries s(HalfExponent(), order);
  if (HalfExponent() < order) s.set(HalfExponent(), c);
  return s;
}

TruncatedSeries TruncatedSeries::polynomial(const std::vector<ExactScalar>& coeffs, HalfExponent order) {
  TruncatedSeries s(HalfExponent(), order);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    HalfExponent e = HalfExponent::integer(static_cast<long>(k));
    if (e < order) s.set(e, coeffs[k]);
  }
  return s;
}

void TruncatedSeries::set(HalfExponent e, const ExactScalar& c) {
  if (e < min_ || !(e < order_)) throw std::out_of_range("series exponent outside the known range");
  if (c.is_zero()) terms_.erase(e);
  else terms_[e] = c;
}

void TruncatedSeries::add(HalfExponent e, const ExactScalar& c) {
  if (c.is_zero()) return;
  if (e < min_ || !(e < order_)) throw std::out_of_range("series exponent outside the known range");
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

std::string TruncatedSeries::to_string() const {
  std::string out;
  for (const auto& [e, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += c.to_string();
    if (e != HalfExponent()) out += " z^" + e.to_string();
  }
  if (out.empty()) out = "0";
  return out + " + O(z^" + order_.to_string() + ")";
}

TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b) {
  HalfExponent lo = a.min_exponent() + b.min_exponent();
  HalfExponent hi = std::min(a.order() + b.min_exponent(), b.order() + a.min_exponent());
  TruncatedSeries r(lo, hi);
  for (const auto& [ea, ca] : a.terms())
    for (const auto& [eb, cb] : b.terms()) {
      HalfExponent e = ea + eb;
      if (e < hi) r.add(e, ca * cb);
    }
  return r;
}

TruncatedSeries series_inv(const TruncatedSeries& s) {
  if (s.terms().empty()) throw std::domain_error("series has no invertible leading term");
  const HalfExponent e0 = s.terms().begin()->first;
  const ExactScalar c0inv = s.terms().begin()->second.inverse();
  const long steps = (s.order() - e0).doubled; // known relative precision in half steps
  std::vector<ExactScalar> a(static_cast<std::size_t>(steps)), b(static_cast<std::size_t>(steps));
  for (const auto& [e, c] : s.terms()) a[static_cast<std::size_t>((e - e0).doubled)] = c;
  TruncatedSeries r(-e0, -e0 + HalfExponent::from_doubled(steps));
  for (long d = 0; d < steps; ++d) {
    ExactScalar acc;
    if (d == 0) {
      acc = c0inv;
    } else {
      for (long j = 1; j <= d; ++j) {
        const auto& aj = a[static_cast<std::size_t>(j)];
        const auto& bk = b[static_cast<std::size_t>(d - j)];
        if (!aj.is_zero() && !bk.is_zero()) acc -= aj * bk;
      }
      acc *= c0inv;
    }
    b[static_cast<std::size_t>(d)] = acc;
    r.set(-e0 + HalfExponent::from_doubled(d), acc);
  }
  return r;
}

TruncatedSeries series_scale_var(const TruncatedSeries& s, HalfExponent c) {
  TruncatedSeries r(s.min_exponent(), s.order());
  for (const auto& [e, v] : s.terms()) {
    ExactScalar x = v;
    r.set(e, x.mul_q_quarter(c.doubled * e.doubled));
  }
  return r;
}

ExactScalar series_coeff(const TruncatedSeries& s, HalfExponent e) {
  if (!(e < s.order())) throw std::out_of_range("coefficient at or beyond the truncation order");
  auto it = s.terms().find(e);
  return it == s.terms().end() ? ExactScalar() : it->second;
}

bool series_equal(const TruncatedSeries& a, const TruncatedSeries& b, HalfExponent order) {
  if (a.order() < order || b.order() < order) throw std::out_of_range("comparison order exceeds a truncation");
  auto known = [&](const TruncatedSeries& s) {
    std::map<HalfExponent, ExactScalar> m;
    for (const auto& [e, c] : s.terms())
      if (e < order) m.emplace(e, c);
    return m;
  };
  return known(a) == known(b);
}

namespace {

long integer_count(HalfExponent order) {
  // number of integer exponents m >= 0 with m < order
  if (order.doubled <= 0) return 0;
  return (order.doubled + 1) / 2;
}

} // namespace

TruncatedSeries qpow_exp(HalfExponent a, HalfExponent order) {
  if (order.doubled <= 0) throw std::invalid_argument("qpow order must be positive");
  const long terms = integer_count(order);
  std::vector<ExactScalar> l(static_cast<std::size_t>(terms)), f(static_cast<std::size_t>(terms));
  for (long n = 1; n < terms; ++n)
    l[static_cast<std::size_t>(n)] = -q_int_frac(a, n) / (ExactScalar(n) * q_int_quarters(n, 4));
  // f = exp(L): m f_m = sum_k k L_k f_{m-k}.
  f[0] = ExactScalar(1L);
  for (long m = 1; m < terms; ++m) {
    ExactScalar acc;
    for (long k = 1; k <= m; ++k) {
      const auto& lk = l[static_cast<std::size_t>(k)];
      const auto& fm = f[static_cast<std::size_t>(m - k)];
      if (!lk.is_zero() && !fm.is_zero()) acc += ExactScalar(k) * lk * fm;
    }
    f[static_cast<std::size_t>(m)] = acc / ExactScalar(m);
  }
  return TruncatedSeries::polynomial(f, order);
}

namespace {

// (p;p)_m with p = q^(p_quarters/4).
ExactScalar p_factorial(long m, long p_quarters) {
  ExactScalar r(1L);
  for (long j = 1; j <= m; ++j) r *= ExactScalar(1L) - ExactScalar::q_quarter(p_quarters * j);
  return r;
}

} // namespace

TruncatedSeries pochhammer_inf(long x_quarters, long p_quarters, HalfExponent order) {
  // (x;p)_inf = sum_m (-1)^m p^(m(m-1)/2) x^m / (p;p)_m
  const long terms = integer_count(order);
  std::vector<ExactScalar> c(static_cast<std::size_t>(terms));
  for (long m = 0; m < terms; ++m) {
    ExactScalar v = ExactScalar::q_quarter(p_quarters * m * (m - 1) / 2 + x_quarters * m) / p_factorial(m, p_quarters);
    c[static_cast<std::size_t>(m)] = m % 2 ? -v : v;
  }
  return TruncatedSeries::polynomial(c, order);
}

TruncatedSeries pochhammer_inf_inverse(long x_quarters, long p_quarters, HalfExponent order) {
  // 1/(x;p)_inf = sum_m x^m / (p;p)_m
  const long terms = integer_count(order);
  std::vector<ExactScalar> c(static_cast<std::size_t>(terms));
  for (long m = 0; m < terms; ++m)
    c[static_cast<std::size_t>(m)] = ExactScalar::q_quarter(x_quarters * m) / p_factorial(m, p_quarters);
  return TruncatedSeries::polynomial(c, order);
}

TruncatedSeries qpow_product(HalfExponent a, HalfExponent order) {
  if (order.doubled <= 0) throw std::invalid_argument("qpow order must be positive");
  // q^(-a+1) and q^(a+1) in quarters; p = q^2.
  const long num_x = 2 * (-a.doubled + 2);
  const long den_x = 2 * (a.doubled + 2);
  return series_mul(pochhammer_inf(num_x, 8, order), pochhammer_inf_inverse(den_x, 8, order));
}

} // namespace uqcn
