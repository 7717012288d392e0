#include "uqcn/bigint.hpp"

#include <functional>

namespace uqcn {

struct Int::View {
  explicit View(const Int& x) {
    if (x.big_) {
      p = x.z_;
    } else {
      mpz_init_set_si(tmp, x.small_);
      owned = true;
      p = tmp;
    }
  }
  ~View() {
    if (owned) mpz_clear(tmp);
  }
  View(const View&) = delete;
  View& operator=(const View&) = delete;
  mpz_srcptr p;
  mpz_t tmp;
  bool owned = false;
};

void Int::assign(mpz_srcptr v) {
  if (big_) {
    mpz_clear(z_);
    big_ = false;
  }
  if (mpz_fits_slong_p(v)) {
    small_ = mpz_get_si(v);
  } else {
    mpz_init_set(z_, v);
    big_ = true;
  }
}

void Int::normalize() {
  if (big_ && mpz_fits_slong_p(z_)) {
    long v = mpz_get_si(z_);
    mpz_clear(z_);
    big_ = false;
    small_ = v;
  }
}

mpz_class Int::to_mpz() const {
  if (big_) return mpz_class(z_);
  return mpz_class(small_);
}

std::string Int::get_str() const { return big_ ? to_mpz().get_str() : std::to_string(small_); }

Int Int::operator-() const {
  if (!big_ && small_ != LONG_MIN) return Int(-small_);
  mpz_class t = -to_mpz();
  return Int(t);
}

Int& Int::operator+=(const Int& o) {
  long r;
  if (!big_ && !o.big_ && !__builtin_add_overflow(small_, o.small_, &r)) {
    small_ = r;
    return *this;
  }
  mpz_class t = to_mpz() + o.to_mpz();
  assign(t.get_mpz_t());
  return *this;
}

Int& Int::operator-=(const Int& o) {
  long r;
  if (!big_ && !o.big_ && !__builtin_sub_overflow(small_, o.small_, &r)) {
    small_ = r;
    return *this;
  }
  mpz_class t = to_mpz() - o.to_mpz();
  assign(t.get_mpz_t());
  return *this;
}

Int& Int::operator*=(const Int& o) {
  long r;
  if (!big_ && !o.big_ && !__builtin_mul_overflow(small_, o.small_, &r)) {
    small_ = r;
    return *this;
  }
  mpz_class t = to_mpz() * o.to_mpz();
  assign(t.get_mpz_t());
  return *this;
}

void Int::addmul(const Int& a, const Int& b) {
  long p, r;
  if (!big_ && !a.big_ && !b.big_ && !__builtin_mul_overflow(a.small_, b.small_, &p) &&
      !__builtin_add_overflow(small_, p, &r)) {
    small_ = r;
    return;
  }
  if (big_) {
    View va(a), vb(b);
    mpz_class t;
    mpz_mul(t.get_mpz_t(), va.p, vb.p);
    mpz_add(z_, z_, t.get_mpz_t());
    normalize();
    return;
  }
  mpz_class t = to_mpz() + a.to_mpz() * b.to_mpz();
  assign(t.get_mpz_t());
}

void Int::submul(const Int& a, const Int& b) {
  long p, r;
  if (!big_ && !a.big_ && !b.big_ && !__builtin_mul_overflow(a.small_, b.small_, &p) &&
      !__builtin_sub_overflow(small_, p, &r)) {
    small_ = r;
    return;
  }
  if (big_) {
    View va(a), vb(b);
    mpz_class t;
    mpz_mul(t.get_mpz_t(), va.p, vb.p);
    mpz_sub(z_, z_, t.get_mpz_t());
    normalize();
    return;
  }
  mpz_class t = to_mpz() - a.to_mpz() * b.to_mpz();
  assign(t.get_mpz_t());
}

bool operator==(const Int& a, const Int& b) {
  if (!a.big_ && !b.big_) return a.small_ == b.small_;
  if (a.big_ != b.big_) return false; // values are normalized: big never fits a word
  return mpz_cmp(a.z_, b.z_) == 0;
}

int Int::cmp(const Int& a, const Int& b) {
  if (!a.big_ && !b.big_) return (a.small_ > b.small_) - (a.small_ < b.small_);
  Int::View va(a), vb(b);
  int c = mpz_cmp(va.p, vb.p);
  return (c > 0) - (c < 0);
}

Int gcd(const Int& a, const Int& b) {
  if (!a.big_ && !b.big_ && a.small_ != LONG_MIN && b.small_ != LONG_MIN) {
    unsigned long x = static_cast<unsigned long>(a.small_ < 0 ? -a.small_ : a.small_);
    unsigned long y = static_cast<unsigned long>(b.small_ < 0 ? -b.small_ : b.small_);
    while (y) {
      unsigned long t = x % y;
      x = y;
      y = t;
    }
    return Int(static_cast<long>(x));
  }
  Int::View va(a), vb(b);
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), va.p, vb.p);
  return Int(g);
}

Int divexact(const Int& a, const Int& b) {
  if (!a.big_ && !b.big_ && !(a.small_ == LONG_MIN && b.small_ == -1)) return Int(a.small_ / b.small_);
  Int::View va(a), vb(b);
  mpz_class q;
  mpz_divexact(q.get_mpz_t(), va.p, vb.p);
  return Int(q);
}

bool divisible(const Int& a, const Int& b) {
  if (!a.big_ && !b.big_) {
    if (b.small_ == -1) return true;
    return a.small_ % b.small_ == 0;
  }
  Int::View va(a), vb(b);
  return mpz_divisible_p(va.p, vb.p) != 0;
}

Int fdiv(const Int& a, const Int& b) {
  Int::View va(a), vb(b);
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), va.p, vb.p);
  return Int(q);
}

std::size_t Int::hash() const {
  if (!big_) return std::hash<long>()(small_);
  return std::hash<std::string>()(get_str());
}

} // namespace uqcn
