#pragma once

#include <gmpxx.h>

#include <climits>
#include <cstdint>
#include <string>
#include <utility>

namespace uqcn {

// Arbitrary-precision integer that stays in a machine word while it fits
// and falls back to GMP only on overflow.
class Int {
public:
  Int() = default;
  Int(long v) : small_(v) {} // NOLINT: implicit by design
  explicit Int(const mpz_class& v) { assign(v.get_mpz_t()); }
  Int(const Int& o) {
    if (o.big_) {
      big_ = true;
      mpz_init_set(z_, o.z_);
    } else {
      small_ = o.small_;
    }
  }
  Int(Int&& o) noexcept {
    if (o.big_) {
      big_ = true;
      z_[0] = o.z_[0];
      o.big_ = false;
      o.small_ = 0;
    } else {
      small_ = o.small_;
    }
  }
  Int& operator=(const Int& o) {
    if (this != &o) {
      Int t(o);
      swap(t);
    }
    return *this;
  }
  Int& operator=(Int&& o) noexcept {
    swap(o);
    return *this;
  }
  ~Int() {
    if (big_) mpz_clear(z_);
  }
  void swap(Int& o) noexcept {
    // both representations are trivially relocatable
    std::swap(raw_, o.raw_);
    std::swap(big_, o.big_);
  }

  bool is_zero() const { return !big_ && small_ == 0; }
  bool is_one() const { return !big_ && small_ == 1; }
  int sign() const { return big_ ? mpz_sgn(z_) : (small_ > 0) - (small_ < 0); }
  bool is_small() const { return !big_; }
  long small() const { return small_; }

  mpz_class to_mpz() const;
  std::string get_str() const;

  Int operator-() const;
  Int& operator+=(const Int& o);
  Int& operator-=(const Int& o);
  Int& operator*=(const Int& o);
  friend Int operator+(Int a, const Int& b) { return a += b; }
  friend Int operator-(Int a, const Int& b) { return a -= b; }
  friend Int operator*(Int a, const Int& b) { return a *= b; }

  // this += a * b, this -= a * b
  void addmul(const Int& a, const Int& b);
  void submul(const Int& a, const Int& b);

  friend bool operator==(const Int& a, const Int& b);
  friend bool operator<(const Int& a, const Int& b) { return cmp(a, b) < 0; }
  friend bool operator>(const Int& a, const Int& b) { return cmp(a, b) > 0; }
  static int cmp(const Int& a, const Int& b);

  friend Int abs(const Int& a) { return a.sign() < 0 ? -a : a; }
  friend Int gcd(const Int& a, const Int& b);
  // Exact quotient; b must divide a.
  friend Int divexact(const Int& a, const Int& b);
  friend bool divisible(const Int& a, const Int& b);
  // Floor quotient (used by the heuristic gcd only).
  friend Int fdiv(const Int& a, const Int& b);

  std::size_t hash() const;

private:
  void assign(mpz_srcptr v);
  void normalize();
  // Temporary mpz view of a small value.
  struct View;

  union {
    long small_ = 0;
    __mpz_struct z_[1];
    struct {
      long a, b;
    } raw_;
  };
  bool big_ = false;
};

Int gcd(const Int& a, const Int& b);
Int divexact(const Int& a, const Int& b);
bool divisible(const Int& a, const Int& b);
Int fdiv(const Int& a, const Int& b);

} // namespace uqcn
