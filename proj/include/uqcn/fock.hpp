#pragma once

#include "uqcn/lattice.hpp"
#include "uqcn/scalar.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace uqcn {

enum class Family : std::uint8_t { A = 0, B = 1 };

// a_i(mode) or b_i(mode); negative modes create.
struct HeisenGen {
  Family family = Family::A;
  int index = 1;
  long mode = 0;
};

// Creation part (sorted multiset of generator codes) and the lattice label
// e^lambda e^lambda~, packed into one buffer: [n | lambda (n) | t (n-1) | codes...].
class FockMonomial {
public:
  FockMonomial() = default;
  FockMonomial(const WeightC& lambda, const WeightA& lt);

  // Code of a_i(-level) / b_i(-level); codes sort by family, index, level.
  static std::int32_t code(Family f, int index, long level) {
    return (static_cast<std::int32_t>(f) << 28) | (index << 16) | static_cast<std::int32_t>(level);
  }
  static Family code_family(std::int32_t c) { return static_cast<Family>(c >> 28); }
  static int code_index(std::int32_t c) { return (c >> 16) & 0xfff; }
  static long code_level(std::int32_t c) { return c & 0xffff; }

  int rank() const { return d_.empty() ? 0 : d_[0]; }
  long lam(int k) const { return d_[1 + k]; }   // e-coordinate k, 0-based
  long t(int j) const { return d_[rank() + 1 + j]; } // t_{j+1}, 0-based
  WeightC lambda() const;
  WeightA lambda_tilde() const;
  std::span<const std::int32_t> creation() const {
    std::size_t off = 2 * static_cast<std::size_t>(rank());
    return {d_.data() + off, d_.size() - off};
  }
  long level() const;

  // Lattice shift by k alpha_i and k' alpha~_i (no constraint check).
  void shift_alpha(int i, long k);
  void shift_alpha_tilde(int i, long k);
  void shift(const WeightC& dl, const WeightA& dt);
  // Inserts creation codes, keeping the multiset sorted.
  void add_creation(std::span<const std::int32_t> codes);
  void add_creation(std::int32_t c) { add_creation(std::span<const std::int32_t>(&c, 1)); }
  // Removes one copy of code c; the code must be present.
  void remove_creation(std::int32_t c);
  // Same lattice label, given creation part.
  FockMonomial with_creation(std::span<const std::int32_t> codes) const;

  bool operator==(const FockMonomial& o) const { return d_ == o.d_; }
  bool operator<(const FockMonomial& o) const;
  std::size_t hash() const;

private:
  std::vector<std::int32_t> d_;
};

struct FockMonomialHash {
  std::size_t operator()(const FockMonomial& m) const { return m.hash(); }
};

// Finite linear combination of monomials; zero coefficients are never stored.
class FockVector {
public:
  using Map = std::unordered_map<FockMonomial, ExactScalar, FockMonomialHash>;

  FockVector() = default;
  explicit FockVector(const FockMonomial& m, const ExactScalar& c = ExactScalar(1)) { add(m, c); }

  void add(const FockMonomial& m, const ExactScalar& c);
  void add(FockMonomial&& m, const ExactScalar& c);
  // this += c * v
  void add_scaled(const FockVector& v, const ExactScalar& c);

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const Map& terms() const { return terms_; }
  std::vector<std::pair<FockMonomial, ExactScalar>> sorted_terms() const;
  ExactScalar coeff(const FockMonomial& m) const;

  FockVector& operator+=(const FockVector& o);
  FockVector& operator-=(const FockVector& o);
  FockVector& operator*=(const ExactScalar& c);
  friend FockVector operator+(FockVector a, const FockVector& b) { return a += b; }
  friend FockVector operator-(FockVector a, const FockVector& b) { return a -= b; }
  friend FockVector operator*(const ExactScalar& c, FockVector v) { return v *= c; }
  bool operator==(const FockVector& o) const;

private:
  Map terms_;
};

enum class HeisenbergNorm {
  drinfeld, // [a_i(m), a_j(-m)] = [(a_i|a_j) m][m]/m, the gamma = q case of the loop relation
  literal   // [(a_i|a_j)][m]/m
};

// The Fock space of a fixed rank: lattices, Heisenberg brackets, zero modes,
// grading, and the text grammar for vectors. Brackets are memoized, so an
// instance should not be shared between threads.
class FockSpace {
public:
  explicit FockSpace(int n, HeisenbergNorm norm = HeisenbergNorm::drinfeld);

  int rank() const { return lat_.rank(); }
  const Lattice& lattice() const { return lat_; }
  HeisenbergNorm norm() const { return norm_; }

  ExactScalar heis_bracket(const HeisenGen& g1, const HeisenGen& g2) const;
  // [g_i(m), g_j(-m)] for m > 0 within one family.
  const ExactScalar& pair_bracket(Family f, int i, int j, long m) const;

  FockVector apply_heisenberg(const HeisenGen& g, const FockVector& v) const;
  FockVector zero_mode_a(int i, const FockVector& v) const;
  FockVector zero_mode_b(int j, const FockVector& v) const;
  // Throws std::invalid_argument if a shifted label violates the constraint.
  FockVector translate(const WeightC& dl, const WeightA& dt, const FockVector& v) const;
  FockVector sign_two_a(int j, const FockVector& v) const;

  mpq_class grade(const FockMonomial& m) const;
  // Throws std::domain_error unless v is homogeneous.
  mpq_class grade(const FockVector& v) const;
  // ((a_1|lambda), ..., (a_n|lambda)); throws std::domain_error unless homogeneous.
  std::vector<HalfExponent> weight(const FockVector& v) const;
  static constexpr int level = 1;

  FockMonomial lattice_monomial(const WeightC& lambda, const WeightA& lt) const;
  FockVector vacuum() const { return FockVector(lattice_monomial(lat_.zero(), lat_.zero_tilde())); }
  // e^{lambda_i} e^{lambda~_i}, i = 0..n.
  FockVector highest_weight_vector(int i) const;

  // Grammar: term ('+' term)*, term = ['-'] [coeff] gen* 'e[' ints ']' ['t[' ints ']'],
  // gen = (a|b) INDEX '(-' LEVEL ')' ['^' POW], coeff = '(' scalar ')' ['/(' scalar ')' | '^-1'] or an integer.
  FockVector parse(std::string_view text) const;
  std::string print(const FockVector& v) const;
  std::string print(const FockMonomial& m) const;

  // Vacuum, the e^{lambda_i} e^{lambda~_i}, each hit by a_j(-1), a_j(-2), b_j(-1),
  // and each shifted by +-(alpha_j, alpha~_j).
  std::vector<FockVector> default_test_vectors() const;

private:
  Lattice lat_;
  HeisenbergNorm norm_;
  mutable std::map<std::tuple<int, int, int, long>, ExactScalar> brackets_;
};

} // namespace uqcn
