#include "uqcn/fock.hpp"

#include "uqcn/qnumbers.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace uqcn {

// ---------------------------------------------------------------- monomials

FockMonomial::FockMonomial(const WeightC& lambda, const WeightA& lt) {
  const int n = static_cast<int>(lambda.m.size());
  d_.reserve(2 * n + 4);
  d_.push_back(n);
  for (long x : lambda.m) d_.push_back(static_cast<std::int32_t>(x));
  for (long x : lt.t) d_.push_back(static_cast<std::int32_t>(x));
}

WeightC FockMonomial::lambda() const {
  WeightC w;
  for (int k = 0; k < rank(); ++k) w.m.push_back(lam(k));
  return w;
}

WeightA FockMonomial::lambda_tilde() const {
  WeightA w;
  for (int k = 0; k + 1 < rank(); ++k) w.t.push_back(t(k));
  return w;
}

long FockMonomial::level() const {
  long s = 0;
  for (auto c : creation()) s += code_level(c);
  return s;
}

void FockMonomial::shift_alpha(int i, long k) {
  const int n = rank();
  if (i < n) {
    d_[i] += static_cast<std::int32_t>(k);
    d_[i + 1] -= static_cast<std::int32_t>(k);
  } else {
    d_[n] += static_cast<std::int32_t>(2 * k);
  }
}

void FockMonomial::shift_alpha_tilde(int i, long k) {
  const int n = rank();
  if (i >= n) return;
  std::int32_t* t = d_.data() + n + 1;
  t[i - 1] += static_cast<std::int32_t>(2 * k);
  if (i > 1) t[i - 2] -= static_cast<std::int32_t>(k);
  if (i < n - 1) t[i] -= static_cast<std::int32_t>(k);
}

void FockMonomial::shift(const WeightC& dl, const WeightA& dt) {
  const int n = rank();
  for (int k = 0; k < n; ++k) d_[1 + k] += static_cast<std::int32_t>(dl.m[k]);
  for (int k = 0; k + 1 < n; ++k) d_[1 + n + k] += static_cast<std::int32_t>(dt.t[k]);
}

void FockMonomial::add_creation(std::span<const std::int32_t> codes) {
  if (codes.empty()) return;
  const std::size_t off = 2 * static_cast<std::size_t>(rank());
  const std::size_t old = d_.size();
  d_.insert(d_.end(), codes.begin(), codes.end());
  if (!std::is_sorted(codes.begin(), codes.end())) std::sort(d_.begin() + old, d_.end());
  std::inplace_merge(d_.begin() + off, d_.begin() + old, d_.end());
}

void FockMonomial::remove_creation(std::int32_t c) {
  const std::size_t off = 2 * static_cast<std::size_t>(rank());
  auto it = std::lower_bound(d_.begin() + off, d_.end(), c);
  if (it == d_.end() || *it != c) throw std::logic_error("creation generator not present");
  d_.erase(it);
}

FockMonomial FockMonomial::with_creation(std::span<const std::int32_t> codes) const {
  FockMonomial m;
  const std::size_t off = 2 * static_cast<std::size_t>(rank());
  m.d_.reserve(off + codes.size());
  m.d_.assign(d_.begin(), d_.begin() + off);
  m.d_.insert(m.d_.end(), codes.begin(), codes.end());
  return m;
}

bool FockMonomial::operator<(const FockMonomial& o) const {
  // lattice label first, then fewer and lower creation generators
  const std::size_t off = 2 * static_cast<std::size_t>(rank());
  auto a = std::span(d_).subspan(0, off), b = std::span(o.d_).subspan(0, std::min(off, o.d_.size()));
  if (!std::equal(a.begin(), a.end(), b.begin(), b.end()))
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  auto ca = creation(), cb = o.creation();
  if (ca.size() != cb.size()) return ca.size() < cb.size();
  return std::lexicographical_compare(ca.begin(), ca.end(), cb.begin(), cb.end());
}

std::size_t FockMonomial::hash() const {
  std::uint64_t h = 1469598103934665603ull;
  for (std::int32_t x : d_) {
    h ^= static_cast<std::uint32_t>(x);
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h ^ (h >> 29));
}

// ---------------------------------------------------------------- vectors

void FockVector::add(const FockMonomial& m, const ExactScalar& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.try_emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void FockVector::add(FockMonomial&& m, const ExactScalar& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.try_emplace(std::move(m), c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void FockVector::add_scaled(const FockVector& v, const ExactScalar& c) {
  if (c.is_zero()) return;
  if (c.is_one()) {
    *this += v;
    return;
  }
  for (const auto& [m, x] : v.terms_) add(m, x * c);
}

std::vector<std::pair<FockMonomial, ExactScalar>> FockVector::sorted_terms() const {
  std::vector<std::pair<FockMonomial, ExactScalar>> out(terms_.begin(), terms_.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

ExactScalar FockVector::coeff(const FockMonomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? ExactScalar() : it->second;
}

FockVector& FockVector::operator+=(const FockVector& o) {
  for (const auto& [m, c] : o.terms_) add(m, c);
  return *this;
}

FockVector& FockVector::operator-=(const FockVector& o) {
  for (const auto& [m, c] : o.terms_) add(m, -c);
  return *this;
}

FockVector& FockVector::operator*=(const ExactScalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, x] : terms_) x *= c;
  return *this;
}

bool FockVector::operator==(const FockVector& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (const auto& [m, c] : terms_) {
    auto it = o.terms_.find(m);
    if (it == o.terms_.end() || !(it->second == c)) return false;
  }
  return true;
}

// ---------------------------------------------------------------- Fock space

FockSpace::FockSpace(int n, HeisenbergNorm norm) : lat_(n), norm_(norm) {}

const ExactScalar& FockSpace::pair_bracket(Family f, int i, int j, long m) const {
  auto key = std::make_tuple(static_cast<int>(f), i, j, m);
  auto it = brackets_.find(key);
  if (it != brackets_.end()) return it->second;
  HalfExponent ip = f == Family::A ? lat_.root_inner(i, j) : lat_.tilde_root_inner(i, j);
  ExactScalar v;
  if (ip.doubled != 0) {
    if (norm_ == HeisenbergNorm::drinfeld)
      v = q_int_frac(ip, m) * q_int(m, mpq_class(1, 2)) / ExactScalar(m);
    else
      v = q_int_frac(ip, 1) * q_int(m, mpq_class(1, 2)) / ExactScalar(m);
  }
  return brackets_.emplace(key, v).first->second;
}

ExactScalar FockSpace::heis_bracket(const HeisenGen& g1, const HeisenGen& g2) const {
  if (g1.family != g2.family || g1.mode + g2.mode != 0 || g1.mode == 0) return ExactScalar();
  if (g1.family == Family::B && (g1.index >= rank() || g2.index >= rank()))
    throw std::out_of_range("b-family index must be below the rank");
  const ExactScalar& v = pair_bracket(g1.family, g1.index, g2.index, g1.mode > 0 ? g1.mode : -g1.mode);
  return g1.mode > 0 ? v : -v;
}

FockVector FockSpace::apply_heisenberg(const HeisenGen& g, const FockVector& v) const {
  if (g.index < 1 || g.index > rank() || (g.family == Family::B && g.index >= rank()))
    throw std::out_of_range("Heisenberg generator index out of range");
  if (g.mode == 0) return g.family == Family::A ? zero_mode_a(g.index, v) : zero_mode_b(g.index, v);
  FockVector out;
  if (g.mode < 0) {
    const std::int32_t c = FockMonomial::code(g.family, g.index, -g.mode);
    for (const auto& [m, x] : v.terms()) {
      FockMonomial m2 = m;
      m2.add_creation(c);
      out.add(std::move(m2), x);
    }
    return out;
  }
  for (const auto& [m, x] : v.terms()) {
    auto cr = m.creation();
    for (std::size_t k = 0; k < cr.size();) {
      std::size_t e = k;
      while (e < cr.size() && cr[e] == cr[k]) ++e;
      const std::int32_t c = cr[k];
      if (FockMonomial::code_family(c) == g.family && FockMonomial::code_level(c) == g.mode) {
        const ExactScalar& h = pair_bracket(g.family, g.index, FockMonomial::code_index(c), g.mode);
        if (!h.is_zero()) {
          FockMonomial m2 = m;
          m2.remove_creation(c);
          out.add(std::move(m2), x * h * ExactScalar(static_cast<long>(e - k)));
        }
      }
      k = e;
    }
  }
  return out;
}

FockVector FockSpace::zero_mode_a(int i, const FockVector& v) const {
  FockVector out;
  for (const auto& [m, x] : v.terms()) {
    long p = lat_.pair2(i, m.lambda());
    if (p != 0) out.add(m, x * ExactScalar(mpq_class(p, 2)));
  }
  return out;
}

FockVector FockSpace::zero_mode_b(int j, const FockVector& v) const {
  if (j < 1 || j >= rank()) throw std::out_of_range("b-family index must be below the rank");
  FockVector out;
  for (const auto& [m, x] : v.terms()) {
    long p = m.t(j - 1);
    if (p != 0) out.add(m, x * ExactScalar(mpq_class(p, 2)));
  }
  return out;
}

FockVector FockSpace::translate(const WeightC& dl, const WeightA& dt, const FockVector& v) const {
  FockVector out;
  for (const auto& [m, x] : v.terms()) {
    FockMonomial m2 = m;
    m2.shift(dl, dt);
    if (!lat_.constraint_check(m2.lambda(), m2.lambda_tilde()))
      throw std::invalid_argument("translation violates the Fock constraint");
    out.add(std::move(m2), x);
  }
  return out;
}

FockVector FockSpace::sign_two_a(int j, const FockVector& v) const {
  if (j < 1 || j >= rank()) throw std::out_of_range("sign operator index must be below the rank");
  FockVector out;
  for (const auto& [m, x] : v.terms()) out.add(m, lat_.pair2(j, m.lambda()) % 2 == 0 ? x : -x);
  return out;
}

mpq_class FockSpace::grade(const FockMonomial& m) const {
  WeightC l = m.lambda();
  WeightA t = m.lambda_tilde();
  mpq_class g = mpq_class(m.level()) + mpq_class(lat_.inner_P(l, l).doubled, 4) + lat_.inner_tilde(t, t) / 2;
  g.canonicalize();
  return -g;
}

mpq_class FockSpace::grade(const FockVector& v) const {
  if (v.is_zero()) throw std::domain_error("grade of the zero vector");
  mpq_class g = grade(v.terms().begin()->first);
  for (const auto& [m, x] : v.terms())
    if (grade(m) != g) throw std::domain_error("vector is not homogeneous");
  return g;
}

std::vector<HalfExponent> FockSpace::weight(const FockVector& v) const {
  if (v.is_zero()) throw std::domain_error("weight of the zero vector");
  auto of = [&](const FockMonomial& m) {
    std::vector<HalfExponent> w;
    WeightC l = m.lambda();
    for (int i = 1; i <= rank(); ++i) w.push_back(HalfExponent::from_doubled(lat_.pair2(i, l)));
    return w;
  };
  auto w = of(v.terms().begin()->first);
  for (const auto& [m, x] : v.terms())
    if (of(m) != w) throw std::domain_error("vector is not a weight vector");
  return w;
}

FockMonomial FockSpace::lattice_monomial(const WeightC& lambda, const WeightA& lt) const {
  if (!lat_.constraint_check(lambda, lt)) throw std::invalid_argument("lattice label violates the Fock constraint");
  return FockMonomial(lambda, lt);
}

FockVector FockSpace::highest_weight_vector(int i) const {
  return FockVector(lattice_monomial(lat_.fundamental(i), lat_.fundamental_tilde(i)));
}

std::vector<FockVector> FockSpace::default_test_vectors() const {
  const int n = rank();
  std::vector<FockVector> base;
  for (int i = 0; i <= n; ++i) base.push_back(highest_weight_vector(i));
  std::vector<FockVector> out = base;
  for (const auto& b : base) {
    for (int j = 1; j <= n; ++j) {
      out.push_back(apply_heisenberg({Family::A, j, -1}, b));
      out.push_back(apply_heisenberg({Family::A, j, -2}, b));
      if (j < n) out.push_back(apply_heisenberg({Family::B, j, -1}, b));
    }
    for (int j = 1; j <= n; ++j)
      for (long s : {1L, -1L}) {
        WeightC dl = lat_.zero();
        WeightA dt = lat_.zero_tilde();
        lat_.add_alpha(dl, j, s);
        lat_.add_alpha_tilde(dt, j, s);
        out.push_back(translate(dl, dt, b));
      }
  }
  return out;
}

// ---------------------------------------------------------------- text form

std::string FockSpace::print(const FockMonomial& m) const {
  std::ostringstream os;
  auto cr = m.creation();
  for (std::size_t k = 0; k < cr.size();) {
    std::size_t e = k;
    while (e < cr.size() && cr[e] == cr[k]) ++e;
    os << (FockMonomial::code_family(cr[k]) == Family::A ? 'a' : 'b') << FockMonomial::code_index(cr[k]) << "(-"
       << FockMonomial::code_level(cr[k]) << ')';
    if (e - k > 1) os << '^' << (e - k);
    os << ' ';
    k = e;
  }
  os << "e[";
  for (int k = 0; k < rank(); ++k) os << (k ? "," : "") << m.lam(k);
  os << "] t[";
  bool zero_t = true;
  for (int k = 0; k + 1 < rank(); ++k) zero_t = zero_t && m.t(k) == 0;
  if (!zero_t)
    for (int k = 0; k + 1 < rank(); ++k) os << (k ? "," : "") << m.t(k);
  os << ']';
  return os.str();
}

std::string FockSpace::print(const FockVector& v) const {
  if (v.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : v.sorted_terms()) {
    std::string coef;
    bool neg = false;
    if (c.is_one()) {
    } else if ((-c).is_one()) {
      neg = true;
    } else {
      coef = c.to_string() + " ";
    }
    if (first)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    out += coef + print(m);
    first = false;
  }
  return out;
}

namespace {

class VectorParser {
public:
  VectorParser(std::string_view s, const FockSpace& fs) : s_(s), fs_(fs) {}

  FockVector run() {
    FockVector out;
    skip();
    if (peek() == '0' && rest_is_zero()) return out;
    bool first = true;
    for (;;) {
      skip();
      bool neg = false;
      if (peek() == '+' && !first) {
        ++p_;
      } else if (peek() == '-') {
        ++p_;
        neg = true;
      } else if (!first) {
        fail("expected '+' or '-' between terms");
      }
      skip();
      auto [m, c] = term();
      out.add(std::move(m), neg ? -c : c);
      first = false;
      skip();
      if (p_ >= s_.size()) break;
    }
    return out;
  }

private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, p_); }
  char peek() const { return p_ < s_.size() ? s_[p_] : '\0'; }
  void skip() {
    while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
  }
  bool rest_is_zero() const {
    std::size_t k = p_ + 1;
    while (k < s_.size() && std::isspace(static_cast<unsigned char>(s_[k]))) ++k;
    return k == s_.size();
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++p_;
  }
  long integer() {
    bool neg = false;
    if (peek() == '-') {
      neg = true;
      ++p_;
    } else if (peek() == '+') {
      ++p_;
    }
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an integer");
    long v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = 10 * v + (s_[p_] - '0');
      if (v > 1000000) fail("integer too large");
      ++p_;
    }
    return neg ? -v : v;
  }
  std::size_t balanced() {
    std::size_t start = p_;
    int depth = 0;
    do {
      if (p_ >= s_.size()) throw ParseError("unbalanced parenthesis", start);
      if (s_[p_] == '(') ++depth;
      if (s_[p_] == ')') --depth;
      ++p_;
    } while (depth > 0);
    return start;
  }
  ExactScalar coefficient() {
    if (std::isdigit(static_cast<unsigned char>(peek()))) return ExactScalar(integer());
    std::size_t start = balanced();
    for (;;) {
      if (peek() == '/' && p_ + 1 < s_.size() && s_[p_ + 1] == '(') {
        ++p_;
        balanced();
      } else if (peek() == '^') {
        ++p_;
        integer();
      } else {
        break;
      }
    }
    try {
      return ExactScalar::parse(s_.substr(start, p_ - start));
    } catch (const ParseError& e) {
      throw ParseError("bad coefficient", start + e.position);
    }
  }
  std::vector<long> int_list() {
    expect('[');
    std::vector<long> v;
    skip();
    if (peek() == ']') {
      ++p_;
      return v;
    }
    for (;;) {
      skip();
      v.push_back(integer());
      skip();
      if (peek() == ']') break;
      expect(',');
    }
    ++p_;
    return v;
  }
  std::pair<FockMonomial, ExactScalar> term() {
    const int n = fs_.rank();
    ExactScalar c(1);
    if (peek() == '(' || std::isdigit(static_cast<unsigned char>(peek()))) {
      c = coefficient();
      skip();
    }
    std::vector<std::int32_t> codes;
    while (peek() == 'a' || peek() == 'b') {
      std::size_t at = p_;
      Family f = s_[p_++] == 'a' ? Family::A : Family::B;
      long idx = integer();
      if (idx < 1 || idx > n || (f == Family::B && idx >= n)) throw ParseError("generator index out of range", at);
      expect('(');
      expect('-');
      long lev = integer();
      if (lev < 1 || lev > 0xffff) throw ParseError("creation level must be positive", at);
      expect(')');
      long pw = 1;
      if (peek() == '^') {
        ++p_;
        pw = integer();
        if (pw < 1) throw ParseError("power must be positive", at);
      }
      for (long k = 0; k < pw; ++k) codes.push_back(FockMonomial::code(f, static_cast<int>(idx), lev));
      skip();
    }
    std::size_t at = p_;
    if (peek() != 'e') fail("expected lattice label e[...]");
    ++p_;
    std::vector<long> lam = int_list();
    if (lam.size() != static_cast<std::size_t>(n)) throw ParseError("e[...] must have rank entries", at);
    skip();
    std::vector<long> t(n - 1, 0);
    if (peek() == 't') {
      at = p_;
      ++p_;
      std::vector<long> tt = int_list();
      if (!tt.empty()) {
        if (tt.size() != static_cast<std::size_t>(n - 1)) throw ParseError("t[...] must have rank-1 entries", at);
        t = tt;
      }
    }
    WeightC wl{lam};
    WeightA wt{t};
    if (!fs_.lattice().constraint_check(wl, wt)) throw ParseError("lattice label violates the Fock constraint", at);
    FockMonomial m(wl, wt);
    std::sort(codes.begin(), codes.end());
    m.add_creation(codes);
    return {std::move(m), c};
  }

  std::string_view s_;
  const FockSpace& fs_;
  std::size_t p_ = 0;
};

} // namespace

FockVector FockSpace::parse(std::string_view text) const { return VectorParser(text, *this).run(); }

} // namespace uqcn
