#include "uqcn/scalar.hpp"

#include <cctype>
#include <ostream>
#include <sstream>

namespace uqcn {

ExactScalar::ExactScalar(long v) : num_(v), den_(1L) {}

ExactScalar::ExactScalar(const mpz_class& v) : num_(Int(v)), den_(1L) {}

ExactScalar::ExactScalar(const mpq_class& v) {
  mpq_class c = v; // callers may pass an uncanonicalized mpq_class(a, b)
  c.canonicalize();
  num_ = IntPoly(Int(mpz_class(c.get_num())));
  den_ = IntPoly(Int(mpz_class(c.get_den())));
}

ExactScalar ExactScalar::q_quarter(long quarters) {
  ExactScalar r(1L);
  r.shift_ = quarters;
  return r;
}

ExactScalar ExactScalar::from_polys(const IntPoly& num, const IntPoly& den, long shift) {
  if (den.is_zero()) throw std::domain_error("zero denominator");
  ExactScalar r;
  r.num_ = num;
  r.den_ = den;
  r.shift_ = shift;
  r.normalize();
  return r;
}

void ExactScalar::normalize() {
  if (num_.is_zero()) {
    shift_ = 0;
    den_ = IntPoly(1L);
    return;
  }
  if (std::size_t v = num_.valuation(); v > 0) {
    num_ = num_.shifted_down(v);
    shift_ += static_cast<long>(v);
  }
  if (std::size_t w = den_.valuation(); w > 0) {
    den_ = den_.shifted_down(w);
    shift_ -= static_cast<long>(w);
  }
  IntPoly g = gcd(num_, den_);
  if (!g.is_one()) {
    num_ = divexact(num_, g);
    den_ = divexact(den_, g);
  }
  if (den_.lead().sign() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
}

IntPoly ExactScalar::numerator() const {
  return shift_ > 0 ? num_.shifted_up(static_cast<std::size_t>(shift_)) : num_;
}

IntPoly ExactScalar::denominator() const {
  return shift_ < 0 ? den_.shifted_up(static_cast<std::size_t>(-shift_)) : den_;
}

ExactScalar ExactScalar::operator-() const {
  ExactScalar r = *this;
  r.num_ = -r.num_;
  return r;
}

ExactScalar& ExactScalar::operator+=(const ExactScalar& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  const long m = std::min(shift_, o.shift_);
  IntPoly a = shift_ > m ? num_.shifted_up(static_cast<std::size_t>(shift_ - m)) : num_;
  IntPoly b = o.shift_ > m ? o.num_.shifted_up(static_cast<std::size_t>(o.shift_ - m)) : o.num_;
  shift_ = m;
  if (den_ == o.den_) {
    num_ = std::move(a) + b;
    if (num_.is_zero()) return *this = ExactScalar();
    if (std::size_t v = num_.valuation(); v > 0) {
      num_ = num_.shifted_down(v);
      shift_ += static_cast<long>(v);
    }
    if (!den_.is_one()) {
      IntPoly g = gcd(num_, den_);
      if (!g.is_one()) {
        num_ = divexact(num_, g);
        den_ = divexact(den_, g);
      }
    }
    return *this;
  }
  // Henrici: with g = gcd(d1, d2), gcd(a d2/g + b d1/g, d1 d2/g) = gcd(that, g).
  IntPoly g = gcd(den_, o.den_);
  IntPoly d1 = g.is_one() ? den_ : divexact(den_, g);
  IntPoly d2 = g.is_one() ? o.den_ : divexact(o.den_, g);
  num_ = a * d2 + b * d1;
  den_ = den_ * d2;
  if (num_.is_zero()) return *this = ExactScalar();
  if (std::size_t v = num_.valuation(); v > 0) {
    num_ = num_.shifted_down(v);
    shift_ += static_cast<long>(v);
  }
  if (!g.is_one()) {
    IntPoly h = gcd(num_, g);
    if (!h.is_one()) {
      num_ = divexact(num_, h);
      den_ = divexact(den_, h);
    }
  }
  return *this;
}

ExactScalar& ExactScalar::operator-=(const ExactScalar& o) { return *this += -o; }

ExactScalar operator*(const ExactScalar& a, const ExactScalar& b) {
  if (a.is_zero() || b.is_zero()) return ExactScalar();
  ExactScalar r;
  r.shift_ = a.shift_ + b.shift_;
  if (a.den_.is_one() && b.den_.is_one()) {
    r.num_ = a.num_ * b.num_;
    r.den_ = IntPoly(1L);
    return r;
  }
  IntPoly g1 = b.den_.is_one() ? IntPoly(1L) : gcd(a.num_, b.den_);
  IntPoly g2 = a.den_.is_one() ? IntPoly(1L) : gcd(b.num_, a.den_);
  IntPoly n1 = g1.is_one() ? a.num_ : divexact(a.num_, g1);
  IntPoly d2 = g1.is_one() ? b.den_ : divexact(b.den_, g1);
  IntPoly n2 = g2.is_one() ? b.num_ : divexact(b.num_, g2);
  IntPoly d1 = g2.is_one() ? a.den_ : divexact(a.den_, g2);
  r.num_ = n1 * n2;
  r.den_ = d1 * d2;
  if (r.den_.lead().sign() < 0) {
    r.num_ = -r.num_;
    r.den_ = -r.den_;
  }
  return r;
}

ExactScalar& ExactScalar::operator*=(const ExactScalar& o) { return *this = *this * o; }

ExactScalar ExactScalar::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  ExactScalar r;
  r.shift_ = -shift_;
  r.num_ = den_;
  r.den_ = num_;
  if (r.den_.lead().sign() < 0) {
    r.num_ = -r.num_;
    r.den_ = -r.den_;
  }
  return r;
}

ExactScalar& ExactScalar::operator/=(const ExactScalar& o) { return *this = *this * o.inverse(); }

ExactScalar ExactScalar::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  ExactScalar r(1L), b = *this;
  while (e > 0) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return r;
}

ExactScalar& ExactScalar::mul_q_quarter(long quarters) {
  if (!is_zero()) shift_ += quarters;
  return *this;
}

std::optional<mpq_class> ExactScalar::eval_at(const mpq_class& x) const {
  mpq_class d = den_.eval(x);
  if (d == 0) return std::nullopt;
  if (x == 0 && shift_ != 0) {
    if (shift_ < 0) return std::nullopt;
    return mpq_class(0);
  }
  mpq_class v = num_.eval(x) / d;
  mpq_class p = 1;
  for (long k = 0; k < std::abs(shift_); ++k) p *= x;
  if (shift_ >= 0) return mpq_class(v * p);
  return mpq_class(v / p);
}

std::size_t ExactScalar::hash() const {
  std::size_t h = num_.hash();
  h ^= den_.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h ^ static_cast<std::size_t>(shift_ * 1000003L);
}

namespace {

std::string exponent_text(long quarters) {
  long num = quarters, den = 4;
  while (den > 1 && num % 2 == 0) {
    num /= 2;
    den /= 2;
  }
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

// Laurent polynomial sum_k c_k s^(low + k), highest power first.
std::string laurent_text(const IntPoly& p, long low) {
  std::string out;
  const auto& c = p.coeffs();
  bool first = true;
  for (std::size_t k = c.size(); k-- > 0;) {
    if (c[k] == 0) continue;
    long e = low + static_cast<long>(k);
    Int a = abs(c[k]);
    if (c[k].sign() < 0) out += "-";
    else if (!first) out += "+";
    first = false;
    if (e == 0) {
      out += a.get_str();
      continue;
    }
    if (!a.is_one()) out += a.get_str();
    out += "q";
    if (e != 4) out += "^" + exponent_text(e);
  }
  return out.empty() ? "0" : out;
}

} // namespace

std::string ExactScalar::to_string() const {
  if (is_zero()) return "(0)";
  if (den_.is_one()) return "(" + laurent_text(num_, shift_) + ")";
  // Balance the denominator around s^0 so that it reads as a symmetric Laurent polynomial.
  const long b = -static_cast<long>(den_.degree() / 2);
  const std::string d = "(" + laurent_text(den_, b) + ")";
  const long nshift = shift_ + b;
  if (num_.is_one() && nshift == 0) return d + "^-1";
  return "(" + laurent_text(num_, nshift) + ")/" + d;
}

std::ostream& operator<<(std::ostream& os, const ExactScalar& s) { return os << s.to_string(); }

namespace {

class ScalarParser {
public:
  explicit ScalarParser(std::string_view t) : t_(t) {}

  ExactScalar run() {
    ExactScalar v = expr();
    skip();
    if (p_ != t_.size()) throw ParseError("unexpected '" + std::string(1, t_[p_]) + "' in scalar", p_);
    return v;
  }

private:
  void skip() {
    while (p_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[p_]))) ++p_;
  }
  bool peek(char c) {
    skip();
    return p_ < t_.size() && t_[p_] == c;
  }
  bool starts_factor() {
    skip();
    if (p_ >= t_.size()) return false;
    char c = t_[p_];
    return c == 'q' || c == '(' || std::isdigit(static_cast<unsigned char>(c));
  }
  long integer() {
    skip();
    std::size_t start = p_;
    while (p_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[p_]))) ++p_;
    if (start == p_) throw ParseError("expected integer", p_);
    return std::stol(std::string(t_.substr(start, p_ - start)));
  }
  mpz_class big_integer() {
    skip();
    std::size_t start = p_;
    while (p_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[p_]))) ++p_;
    if (start == p_) throw ParseError("expected number", p_);
    return mpz_class(std::string(t_.substr(start, p_ - start)));
  }
  // Exponent as a multiple of 1/4; "1/2" binds as a fraction.
  long exponent_quarters(bool allow_fraction) {
    skip();
    bool neg = false;
    if (p_ < t_.size() && (t_[p_] == '-' || t_[p_] == '+')) {
      neg = t_[p_] == '-';
      ++p_;
    }
    std::size_t at = p_;
    long num = integer();
    long den = 1;
    if (p_ < t_.size() && t_[p_] == '/' && allow_fraction) {
      ++p_;
      den = integer();
    }
    if (den != 1 && den != 2 && den != 4) throw ParseError("exponent denominator must be 1, 2 or 4", at);
    long quarters = num * (4 / den);
    return neg ? -quarters : quarters;
  }
  ExactScalar atom() {
    skip();
    if (p_ >= t_.size()) throw ParseError("unexpected end of scalar", p_);
    char c = t_[p_];
    if (c == '(') {
      ++p_;
      ExactScalar v = expr();
      if (!peek(')')) throw ParseError("expected ')'", p_);
      ++p_;
      return v;
    }
    if (c == 'q') {
      ++p_;
      if (peek('^')) {
        ++p_;
        return ExactScalar::q_quarter(exponent_quarters(true));
      }
      return ExactScalar::q_quarter(4);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return ExactScalar(big_integer());
    throw ParseError("unexpected '" + std::string(1, c) + "' in scalar", p_);
  }
  ExactScalar factor() {
    ExactScalar v = atom();
    if (peek('^')) {
      ++p_;
      std::size_t at = p_;
      long quarters = exponent_quarters(false);
      if (quarters % 4 != 0) throw ParseError("non-integer power of a compound scalar", at);
      if (v.is_zero() && quarters < 0) throw ParseError("zero raised to a negative power", at);
      v = v.pow(quarters / 4);
    }
    return v;
  }
  ExactScalar term() {
    ExactScalar v = factor();
    for (;;) {
      if (peek('*')) {
        ++p_;
        v *= factor();
      } else if (peek('/')) {
        ++p_;
        std::size_t at = p_;
        ExactScalar d = factor();
        if (d.is_zero()) throw ParseError("division by zero", at);
        v /= d;
      } else if (starts_factor()) {
        v *= factor();
      } else {
        return v;
      }
    }
  }
  ExactScalar expr() {
    bool neg = false;
    if (peek('-')) {
      neg = true;
      ++p_;
    } else if (peek('+')) {
      ++p_;
    }
    ExactScalar v = term();
    if (neg) v = -v;
    for (;;) {
      if (peek('+')) {
        ++p_;
        v += term();
      } else if (peek('-')) {
        ++p_;
        v -= term();
      } else {
        return v;
      }
    }
  }

  std::string_view t_;
  std::size_t p_ = 0;
};

} // namespace

ExactScalar ExactScalar::parse(std::string_view text) { return ScalarParser(text).run(); }

} // namespace uqcn
