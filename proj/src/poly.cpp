#include "uqcn/poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace uqcn {

IntPoly::IntPoly(long c) {
  if (c != 0) c_.emplace_back(c);
}

IntPoly::IntPoly(const Int& c) {
  if (!c.is_zero()) c_.push_back(c);
}

IntPoly::IntPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }

IntPoly IntPoly::monomial(const Int& c, std::size_t degree) {
  IntPoly p;
  if (c.is_zero()) return p;
  p.c_.resize(degree + 1);
  p.c_[degree] = c;
  return p;
}

void IntPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

std::size_t IntPoly::valuation() const {
  std::size_t k = 0;
  while (k < c_.size() && c_[k].is_zero()) ++k;
  return k == c_.size() ? 0 : k;
}

IntPoly IntPoly::shifted_down(std::size_t k) const {
  IntPoly p;
  if (k >= c_.size()) return p;
  p.c_.assign(c_.begin() + static_cast<std::ptrdiff_t>(k), c_.end());
  return p;
}

IntPoly IntPoly::shifted_up(std::size_t k) const {
  IntPoly p;
  if (is_zero()) return p;
  p.c_.reserve(c_.size() + k);
  p.c_.resize(k);
  p.c_.insert(p.c_.end(), c_.begin(), c_.end());
  return p;
}

Int IntPoly::content() const {
  Int g;
  for (const auto& x : c_) {
    if (x.is_zero()) continue;
    g = gcd(g, x);
    if (g.is_one()) break;
  }
  return g;
}

IntPoly IntPoly::primitive_part() const {
  if (is_zero()) return *this;
  Int g = content();
  if (c_.back().sign() < 0) g = -g;
  IntPoly p = *this;
  if (!g.is_one()) p.divexact(g);
  return p;
}

mpz_class IntPoly::eval(const mpz_class& x) const {
  mpz_class r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + it->to_mpz();
  return r;
}

mpq_class IntPoly::eval(const mpq_class& x) const {
  mpq_class r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + mpq_class(it->to_mpz());
  return r;
}

IntPoly IntPoly::operator-() const {
  IntPoly p = *this;
  for (auto& x : p.c_) x = -x;
  return p;
}

IntPoly& IntPoly::operator+=(const IntPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k)
    if (!o.c_[k].is_zero()) c_[k] += o.c_[k];
  trim();
  return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k)
    if (!o.c_[k].is_zero()) c_[k] -= o.c_[k];
  trim();
  return *this;
}

IntPoly& IntPoly::operator*=(const Int& k) {
  if (k.is_zero()) {
    c_.clear();
    return *this;
  }
  if (k.is_one()) return *this;
  for (auto& x : c_)
    if (!x.is_zero()) x *= k;
  return *this;
}

IntPoly& IntPoly::divexact(const Int& k) {
  for (auto& x : c_)
    if (!x.is_zero()) x = uqcn::divexact(x, k);
  return *this;
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  IntPoly p;
  if (a.is_zero() || b.is_zero()) return p;
  if (b.c_.size() == 1) return IntPoly(a) *= b.c_[0];
  if (a.c_.size() == 1) return IntPoly(b) *= a.c_[0];
  p.c_.resize(a.c_.size() + b.c_.size() - 1);
  std::vector<std::size_t> nz;
  for (std::size_t j = 0; j < b.c_.size(); ++j)
    if (!b.c_[j].is_zero()) nz.push_back(j);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j : nz) p.c_[i + j].addmul(a.c_[i], b.c_[j]);
  }
  p.trim();
  return p;
}

std::size_t IntPoly::hash() const {
  std::size_t h = c_.size();
  for (const auto& x : c_) h ^= x.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::string IntPoly::debug_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t k = 0; k < c_.size(); ++k) os << (k ? "," : "") << c_[k].get_str();
  os << "]";
  return os.str();
}

namespace {

// gcd of the exponents carrying nonzero coefficients (0 for constants).
std::size_t stride_of(const IntPoly& p, std::size_t k = 0) {
  const auto& c = p.coeffs();
  for (std::size_t i = 1; i < c.size() && k != 1; ++i)
    if (!c[i].is_zero()) k = std::gcd(k, i);
  return k;
}

// p(s) = r(s^k) -> r, reading the residue class `offset` mod k.
IntPoly compress(const IntPoly& p, std::size_t k, std::size_t offset = 0) {
  const auto& c = p.coeffs();
  std::vector<Int> r;
  if (c.size() > offset) r.reserve((c.size() - offset + k - 1) / k);
  for (std::size_t i = offset; i < c.size(); i += k) r.push_back(c[i]);
  return IntPoly(std::move(r));
}

IntPoly expand(const IntPoly& p, std::size_t k) {
  if (p.is_zero()) return p;
  const auto& c = p.coeffs();
  std::vector<Int> r((c.size() - 1) * k + 1);
  for (std::size_t i = 0; i < c.size(); ++i) r[i * k] = c[i];
  return IntPoly(std::move(r));
}

bool divexact_dense(const IntPoly& a, const IntPoly& b, IntPoly& quotient) {
  if (a.is_zero()) {
    quotient = IntPoly();
    return true;
  }
  if (a.degree() < b.degree()) return false;
  const auto& bc = b.coeffs();
  const int db = b.degree();
  const Int& lb = b.lead();
  std::vector<Int> r = a.coeffs();
  std::vector<Int> q(static_cast<std::size_t>(a.degree() - db + 1));
  const bool plus_one = lb.is_one();
  const bool minus_one = !plus_one && lb == Int(-1);
  for (int k = a.degree() - db; k >= 0; --k) {
    Int& top = r[static_cast<std::size_t>(k + db)];
    if (top.is_zero()) continue;
    Int t;
    if (plus_one) {
      t = top;
    } else if (minus_one) {
      t = -top;
    } else {
      if (!divisible(top, lb)) return false;
      t = divexact(top, lb);
    }
    for (int j = 0; j <= db; ++j) {
      const Int& bj = bc[static_cast<std::size_t>(j)];
      if (!bj.is_zero()) r[static_cast<std::size_t>(k + j)].submul(t, bj);
    }
    q[static_cast<std::size_t>(k)] = std::move(t);
  }
  for (int k = 0; k < db; ++k)
    if (!r[static_cast<std::size_t>(k)].is_zero()) return false;
  quotient = IntPoly(std::move(q));
  return true;
}

} // namespace

bool try_divexact(const IntPoly& a, const IntPoly& b, IntPoly& quotient) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.is_zero()) {
    quotient = IntPoly();
    return true;
  }
  if (a.degree() < b.degree()) return false;
  const std::size_t k = stride_of(b);
  if (k <= 1) return divexact_dense(a, b, quotient);
  // b(s) = b'(s^k): each residue class of a mod k must be divisible by b' on its own.
  const IntPoly bc = compress(b, k);
  std::vector<Int> q;
  for (std::size_t r = 0; r < k; ++r) {
    IntPoly part = compress(a, k, r), pq;
    if (part.is_zero()) continue;
    if (!divexact_dense(part, bc, pq)) return false;
    const auto& pc = pq.coeffs();
    if (q.size() < (pc.size() - 1) * k + r + 1) q.resize((pc.size() - 1) * k + r + 1);
    for (std::size_t i = 0; i < pc.size(); ++i) q[i * k + r] = pc[i];
  }
  quotient = IntPoly(std::move(q));
  return true;
}

IntPoly divexact(const IntPoly& a, const IntPoly& b) {
  IntPoly q;
  if (!try_divexact(a, b, q)) throw std::domain_error("inexact polynomial division");
  return q;
}

namespace {

// Pseudo-remainder of a by b (a, b nonzero, deg a >= deg b).
IntPoly pseudo_rem(const IntPoly& a, const IntPoly& b) {
  std::vector<Int> r = a.coeffs();
  const auto& bc = b.coeffs();
  const int db = b.degree();
  const Int& lb = b.lead();
  int dr = a.degree();
  while (dr >= db) {
    Int top = r[static_cast<std::size_t>(dr)];
    for (int k = 0; k <= dr; ++k) r[static_cast<std::size_t>(k)] *= lb;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(dr - db + j)].submul(top, bc[static_cast<std::size_t>(j)]);
    r.resize(static_cast<std::size_t>(dr));
    while (!r.empty() && r.back().is_zero()) r.pop_back();
    dr = static_cast<int>(r.size()) - 1;
  }
  return IntPoly(std::move(r));
}

IntPoly gcd_prs(IntPoly a, IntPoly b) {
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    IntPoly r = pseudo_rem(a, b);
    a = std::move(b);
    b = r.primitive_part();
  }
  return a.primitive_part();
}

// Symmetric x-adic digits of h: the polynomial whose value at x is h.
IntPoly interpolate(mpz_class h, const mpz_class& x) {
  std::vector<Int> c;
  mpz_class half = x / 2, d;
  while (h != 0) {
    mpz_fdiv_r(d.get_mpz_t(), h.get_mpz_t(), x.get_mpz_t());
    if (d > half) d -= x;
    c.emplace_back(d);
    h -= d;
    mpz_divexact(h.get_mpz_t(), h.get_mpz_t(), x.get_mpz_t());
  }
  return IntPoly(std::move(c));
}

mpz_class max_norm(const IntPoly& p) {
  mpz_class m = 0;
  for (const auto& x : p.coeffs()) {
    mpz_class v = abs(x.to_mpz());
    if (v > m) m = v;
  }
  return m;
}

// Heuristic gcd of primitive polynomials by evaluation at a large integer;
// every candidate is confirmed by exact division, so a wrong guess only costs time.
bool gcd_heuristic(const IntPoly& f, const IntPoly& g, IntPoly& out) {
  mpz_class nf = max_norm(f), ng = max_norm(g);
  mpz_class b = 2 * (nf < ng ? nf : ng) + 29;
  mpz_class s = sqrt(b);
  mpz_class x = 99 * s;
  if (b < x) x = b;
  mpz_class rf = nf / abs(f.lead().to_mpz()), rg = ng / abs(g.lead().to_mpz());
  mpz_class alt = 2 * (rf < rg ? rf : rg) + 2;
  if (alt > x) x = alt;
  IntPoly q;
  for (int attempt = 0; attempt < 6; ++attempt) {
    mpz_class ff = f.eval(x), gg = g.eval(x);
    if (ff != 0 && gg != 0) {
      mpz_class h;
      mpz_gcd(h.get_mpz_t(), ff.get_mpz_t(), gg.get_mpz_t());
      IntPoly cand = interpolate(h, x).primitive_part();
      if (!cand.is_zero() && try_divexact(f, cand, q) && try_divexact(g, cand, q)) {
        out = cand;
        return true;
      }
      IntPoly cf = interpolate(ff / h, x);
      if (!cf.is_zero() && try_divexact(f, cf, q)) {
        cand = q.primitive_part();
        IntPoly q2;
        if (try_divexact(g, cand, q2)) {
          out = cand;
          return true;
        }
      }
    }
    mpz_class r4 = sqrt(sqrt(x));
    x = 73794 * x * r4 / 27011;
  }
  return false;
}

} // namespace

IntPoly gcd(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero()) return b.is_zero() ? b : b.primitive_part() * b.content();
  if (b.is_zero()) return a.primitive_part() * a.content();
  Int c = gcd(a.content(), b.content());
  if (a.is_constant() || b.is_constant()) return IntPoly(c);
  IntPoly pa = a.primitive_part(), pb = b.primitive_part();
  if (pa == pb) return pa * c;
  if (std::size_t k = stride_of(pb, stride_of(pa)); k > 1)
    return expand(gcd(compress(pa, k), compress(pb, k)), k) * c;
  IntPoly q;
  if (pa.degree() <= pb.degree() && try_divexact(pb, pa, q)) return pa * c;
  if (pb.degree() < pa.degree() && try_divexact(pa, pb, q)) return pb * c;
  IntPoly g;
  if (!gcd_heuristic(pa, pb, g)) g = gcd_prs(pa, pb);
  return g * c;
}

} // namespace uqcn
