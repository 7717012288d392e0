#include "uqcn/vertex.hpp"

#include "uqcn/qnumbers.hpp"

#include <cctype>
#include <map>
#include <stdexcept>
#include <tuple>

namespace uqcn {

namespace {

using Terms = std::vector<std::pair<FockMonomial, ExactScalar>>;
using Codes = std::vector<std::int32_t>;

// Per-level coefficient of an exponential: sign q^{qexp l/4} / [l], or sign (q - q^-1).
struct Rule {
  int kind = 0;
  int sign = 1;
  long qexp = 0;
  auto key() const { return std::make_tuple(kind, sign, qexp); }
};

struct CacheKey {
  std::int64_t op;
  FockMonomial m;
  bool operator==(const CacheKey& o) const { return op == o.op && m == o.m; }
};

struct CacheKeyHash {
  std::size_t operator()(const CacheKey& k) const {
    return k.m.hash() ^ (static_cast<std::size_t>(k.op) * 0x9e3779b97f4a7c15ull);
  }
};

std::int64_t op_code(int tag, int sign, int i, long k, int branch) {
  return (static_cast<std::int64_t>(tag) << 56) | (static_cast<std::int64_t>(sign + 1) << 52) |
         (static_cast<std::int64_t>(branch + 1) << 48) | (static_cast<std::int64_t>(i) << 32) |
         static_cast<std::uint32_t>(static_cast<std::int32_t>(k));
}

long binom(long n, long r) {
  long b = 1;
  for (long k = 1; k <= r; ++k) b = b * (n - r + k) / k;
  return b;
}

} // namespace

struct VertexAlgebra::Impl {
  const FockSpace& fs;
  Construction construction;
  std::unordered_map<CacheKey, Terms, CacheKeyHash> cache;
  std::map<std::tuple<int, int, long, long>, ExactScalar> rule_values;
  std::map<std::tuple<int, int, std::tuple<int, int, long>, long>, std::vector<std::pair<ExactScalar, Codes>>> parts;
  std::map<std::tuple<int, int, int, int, bool, long>, std::vector<std::pair<ExactScalar, Codes>>> creations;

  Impl(const FockSpace& f, Construction c) : fs(f), construction(c) {}

  int n() const { return fs.rank(); }

  const ExactScalar& rule_value(const Rule& r, long l) {
    auto key = std::make_tuple(r.kind, r.sign, r.qexp, l);
    auto it = rule_values.find(key);
    if (it != rule_values.end()) return it->second;
    ExactScalar v;
    if (r.kind == 0) {
      v = ExactScalar::q_quarter(r.qexp * l) / q_int(l, mpq_class(1, 2));
    } else {
      v = ExactScalar::q_quarter(4) - ExactScalar::q_quarter(-4);
    }
    if (r.sign < 0) v = -v;
    return rule_values.emplace(key, v).first->second;
  }

  // exp(sum_l d(l) g_i(-l) w^l): the terms of total level N, with d given by the rule.
  const std::vector<std::pair<ExactScalar, Codes>>& partitions(Family f, int i, const Rule& r, long N) {
    auto key = std::make_tuple(static_cast<int>(f), i, r.key(), N);
    auto it = parts.find(key);
    if (it != parts.end()) return it->second;
    std::vector<std::pair<ExactScalar, Codes>> out;
    // parts in decreasing order; mult[p] copies of part p
    std::vector<long> mult(N + 1, 0);
    auto rec = [&](auto&& self, long rem, long maxp) -> void {
      if (rem == 0) {
        ExactScalar c(1);
        Codes codes;
        for (long p = 1; p <= N; ++p) {
          if (mult[p] == 0) continue;
          ExactScalar dp = rule_value(r, p).pow(mult[p]);
          long fact = 1;
          for (long k = 2; k <= mult[p]; ++k) fact *= k;
          c *= dp;
          if (fact != 1) c /= ExactScalar(fact);
          for (long k = 0; k < mult[p]; ++k) codes.push_back(FockMonomial::code(f, i, p));
        }
        std::sort(codes.begin(), codes.end());
        out.emplace_back(std::move(c), std::move(codes));
        return;
      }
      for (long p = std::min(rem, maxp); p >= 1; --p) {
        for (long m = 1; m * p <= rem; ++m) {
          mult[p] = m;
          self(self, rem - m * p, p - 1);
        }
        mult[p] = 0;
      }
    };
    rec(rec, N, N);
    return parts.emplace(key, std::move(out)).first->second;
  }

  // Creation part of X^s_i on one branch: Y contributes a_i(-l), U^eta(q^{sigma/2} z) contributes b_i(-l).
  const std::vector<std::pair<ExactScalar, Codes>>& creation_terms(int s, int i, int eta, int sigma, bool has_u, long N) {
    auto key = std::make_tuple(s, i, eta, sigma, has_u, N);
    auto it = creations.find(key);
    if (it != creations.end()) return it->second;
    std::vector<std::pair<ExactScalar, Codes>> out;
    Rule ra{0, s, -2L * s};
    Rule rb{0, eta, 2L * sigma};
    for (long na = 0; na <= N; ++na) {
      long nb = N - na;
      if (!has_u && nb > 0) continue;
      const auto& pa = partitions(Family::A, i, ra, na);
      if (!has_u) {
        out.insert(out.end(), pa.begin(), pa.end());
        continue;
      }
      const auto& pb = partitions(Family::B, i, rb, nb);
      for (const auto& [ca, xa] : pa)
        for (const auto& [cb, xb] : pb) {
          Codes codes = xa;
          codes.insert(codes.end(), xb.begin(), xb.end()); // A codes sort before B codes
          out.emplace_back(ca * cb, std::move(codes));
        }
    }
    return creations.emplace(key, std::move(out)).first->second;
  }

  struct AnnState {
    ExactScalar coef;
    long removed;
    Codes kept;
  };

  // exp(sum_l c(l) g_i(l) w^{-l}) applied to the creation part of m.
  // ra / rb are the rules for the A and B families (nullptr: that family is untouched).
  std::vector<AnnState> annihilate(const FockMonomial& m, int i, const Rule* ra, const Rule* rb) {
    std::vector<AnnState> states{{ExactScalar(1), 0, {}}};
    auto cr = m.creation();
    for (std::size_t k = 0; k < cr.size();) {
      std::size_t e = k;
      while (e < cr.size() && cr[e] == cr[k]) ++e;
      const std::int32_t c = cr[k];
      const long mult = static_cast<long>(e - k);
      const Family f = FockMonomial::code_family(c);
      const Rule* r = f == Family::A ? ra : rb;
      ExactScalar h;
      if (r) {
        const ExactScalar& br = fs.pair_bracket(f, i, FockMonomial::code_index(c), FockMonomial::code_level(c));
        if (!br.is_zero()) h = br * rule_value(*r, FockMonomial::code_level(c));
      }
      if (h.is_zero()) {
        for (auto& s : states) s.kept.insert(s.kept.end(), mult, c);
      } else {
        const long l = FockMonomial::code_level(c);
        std::vector<AnnState> next;
        next.reserve(states.size() * (mult + 1));
        ExactScalar hp(1);
        for (long rr = 0; rr <= mult; ++rr) {
          ExactScalar f2 = hp * ExactScalar(binom(mult, rr));
          for (const auto& s : states) {
            AnnState t{s.coef * f2, s.removed + rr * l, s.kept};
            t.kept.insert(t.kept.end(), mult - rr, c);
            next.push_back(std::move(t));
          }
          hp *= h;
        }
        states = std::move(next);
      }
      k = e;
    }
    return states;
  }

  struct Branch {
    bool has_u;
    int eta;    // U (+1) or U* (-1)
    int sigma;  // argument q^{sigma/2} z
    bool sign2a; // carries (-1)^{2a_i(0)}
    int overall;
  };

  Branch branch_data(int s, int i, int br) const {
    const bool rep = construction == Construction::repaired;
    if (i == n()) return {false, 0, 0, false, rep ? s : 1};
    if (rep) return {true, s * br, s * br, br < 0, s};
    if (s > 0) return {true, br, br, br < 0, 1};
    return {true, br, -br, br < 0, 1};
  }

  void x_branch(int s, int i, long k, int br, const FockMonomial& m, FockVector& out) {
    const Branch b = branch_data(s, i, br);
    const WeightC lam = m.lambda();
    const long p = fs.lattice().pair2(i, lam);
    const long ti = i < n() ? m.t(i - 1) : 0;
    const long p0d = s * p + (b.has_u ? b.eta * ti : 0);
    if (p0d % 2 != 0) throw std::logic_error("half-integer z-exponent in a vertex operator term");
    const long p0 = p0d / 2;

    int sign = b.overall * fs.lattice().eps_char(i, lam);
    if (b.sign2a && p % 2 != 0) sign = -sign;
    ExactScalar unit = ExactScalar::q_quarter(b.has_u ? b.sigma * b.eta * ti : 0);
    if (sign < 0) unit = -unit;

    FockMonomial base = m.with_creation({});
    base.shift_alpha(i, s);
    if (b.has_u) base.shift_alpha_tilde(i, b.eta);

    Rule ra{0, -s, -2L * s};
    Rule rb{0, -b.eta, -2L * b.sigma};
    for (auto& st : annihilate(m, i, &ra, b.has_u ? &rb : nullptr)) {
      const long N = -k - 1 - p0 + st.removed;
      if (N < 0) continue;
      ExactScalar c0 = unit * st.coef;
      for (const auto& [cc, codes] : creation_terms(s, i, b.eta, b.sigma, b.has_u, N)) {
        FockMonomial mm = base.with_creation(st.kept);
        mm.add_creation(codes);
        out.add(std::move(mm), c0 * cc);
      }
    }
  }

  const Terms& x_mono(int s, int i, long k, int br, const FockMonomial& m) {
    CacheKey key{op_code(1, s, i, k, br), m};
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    FockVector out;
    if (i == n() || br != 0) {
      x_branch(s, i, k, i == n() ? 0 : br, m, out);
    } else {
      for (const auto& [mm, c] : x_mono(s, i, k, +1, m)) out.add(mm, c);
      for (const auto& [mm, c] : x_mono(s, i, k, -1, m)) out.add(mm, c);
    }
    Terms t(out.terms().begin(), out.terms().end());
    return cache.emplace(std::move(key), std::move(t)).first->second;
  }

  const Terms& psi_mono(int i, long mm, bool phi, const FockMonomial& m) {
    CacheKey key{op_code(phi ? 3 : 2, 0, i, mm, 0), m};
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    FockVector out;
    const long p = fs.lattice().pair2(i, m.lambda());
    ExactScalar K = ExactScalar::q_quarter(phi ? -2 * p : 2 * p);
    if (!phi) {
      Rule r{1, 1, 0};
      for (auto& st : annihilate(m, i, &r, nullptr))
        if (st.removed == mm) out.add(m.with_creation(st.kept), K * st.coef);
    } else {
      Rule r{1, -1, 0};
      for (const auto& [c, codes] : partitions(Family::A, i, r, mm)) {
        FockMonomial m2 = m;
        m2.add_creation(codes);
        out.add(std::move(m2), K * c);
      }
    }
    Terms t(out.terms().begin(), out.terms().end());
    return cache.emplace(std::move(key), std::move(t)).first->second;
  }
};

VertexAlgebra::VertexAlgebra(int n, Construction c, HeisenbergNorm h)
    : fock_(n, h), construction_(c), impl_(std::make_unique<Impl>(fock_, c)) {}

VertexAlgebra::~VertexAlgebra() = default;

std::size_t VertexAlgebra::cache_entries() const { return impl_->cache.size(); }
void VertexAlgebra::clear_cache() { impl_->cache.clear(); }

namespace {

void accumulate(FockVector& out, const Terms& t, const ExactScalar& c) {
  if (c.is_one()) {
    for (const auto& [m, x] : t) out.add(m, x);
  } else {
    for (const auto& [m, x] : t) out.add(m, x * c);
  }
}

} // namespace

FockVector VertexAlgebra::x(int sign, int i, long k, const FockVector& v, int branch) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
  if (i < 1 || i > rank()) throw std::out_of_range("vertex operator index out of range");
  if (branch != 0 && branch != 1 && branch != -1) throw std::invalid_argument("branch must be 0, +1 or -1");
  if (branch != 0 && i == rank()) throw std::invalid_argument("X_n has no split");
  FockVector out;
  for (const auto& [m, c] : v.terms()) accumulate(out, impl_->x_mono(sign, i, k, branch, m), c);
  return out;
}

FockVector VertexAlgebra::psi(int i, long m, const FockVector& v) {
  if (i < 1 || i > rank()) throw std::out_of_range("psi index out of range");
  FockVector out;
  if (m < 0) return out;
  for (const auto& [mm, c] : v.terms()) accumulate(out, impl_->psi_mono(i, m, false, mm), c);
  return out;
}

FockVector VertexAlgebra::phi(int i, long m, const FockVector& v) {
  if (i < 1 || i > rank()) throw std::out_of_range("phi index out of range");
  FockVector out;
  if (m < 0) return out;
  for (const auto& [mm, c] : v.terms()) accumulate(out, impl_->psi_mono(i, m, true, mm), c);
  return out;
}

FockVector VertexAlgebra::K(int i, const FockVector& v, int power) {
  if (i < 1 || i > rank()) throw std::out_of_range("K index out of range");
  FockVector out;
  for (const auto& [m, c] : v.terms())
    out.add(m, c * ExactScalar::q_quarter(2L * power * lattice().pair2(i, m.lambda())));
  return out;
}

BracketSpec VertexAlgebra::default_e0_spec() const {
  const int n = rank();
  BracketSpec s;
  for (int j = 1; j <= n; ++j) s.ops.push_back({OpKind::XMinus, j, 0, 0});
  for (int j = n - 1; j >= 2; --j) s.ops.push_back({OpKind::XMinus, j, 0, 0});
  s.ops.push_back({OpKind::XMinus, 1, 1, 0});
  for (int k = 0; k < n - 2; ++k) s.params.push_back(ExactScalar::q_quarter(-2));
  s.params.push_back(ExactScalar::q_quarter(-4));
  for (int k = 0; k < n - 2; ++k) s.params.push_back(ExactScalar::q_quarter(-2));
  s.params.push_back(ExactScalar(1));
  return s;
}

FockVector VertexAlgebra::multibracket(const BracketSpec& spec, const FockVector& v) {
  const std::size_t m = spec.ops.size();
  if (m == 0) throw std::invalid_argument("empty multibracket");
  if (spec.params.size() + 1 != m) throw std::invalid_argument("multibracket needs one parameter per bracket");
  // inner(k, w) = [o_k, [o_{k+1}, ...]] w
  auto inner = [&](auto&& self, std::size_t k, const FockVector& w) -> FockVector {
    if (k + 1 == m) return apply(spec.ops[k], w);
    const ExactScalar& par = spec.params[m - 2 - k];
    FockVector r = apply(spec.ops[k], self(self, k + 1, w));
    FockVector r2 = self(self, k + 1, apply(spec.ops[k], w));
    r.add_scaled(r2, -par);
    return r;
  };
  return inner(inner, 0, v);
}

FockVector VertexAlgebra::e0(const FockVector& v, const BracketSpec& spec) {
  // gamma K_theta^{-1} acts first; K_theta = K_1^2 ... K_{n-1}^2 K_n.
  FockVector w;
  for (const auto& [m, c] : v.terms()) {
    long quarters = 0;
    WeightC lam = m.lambda();
    for (int j = 1; j <= rank(); ++j) quarters -= 2L * (j < rank() ? 2 : 1) * lattice().pair2(j, lam);
    w.add(m, c * ExactScalar::q_quarter(quarters + 4));
  }
  return multibracket(spec, w);
}

FockVector VertexAlgebra::apply(const ModeOp& op, const FockVector& v) {
  switch (op.kind) {
  case OpKind::XPlus:
    return x(+1, op.index, op.mode, v, op.branch);
  case OpKind::XMinus:
    return x(-1, op.index, op.mode, v, op.branch);
  case OpKind::Psi:
    return psi(op.index, op.mode, v);
  case OpKind::Phi:
    return phi(op.index, -op.mode, v);
  case OpKind::K:
    return K(op.index, v, 1);
  case OpKind::Kinv:
    return K(op.index, v, -1);
  case OpKind::A:
    return fock_.apply_heisenberg({Family::A, op.index, op.mode}, v);
  case OpKind::B:
    return fock_.apply_heisenberg({Family::B, op.index, op.mode}, v);
  case OpKind::E:
    return e(op.index, v);
  case OpKind::E0:
    return e0(v);
  }
  throw std::logic_error("unknown operator kind");
}

FockVector VertexAlgebra::apply(const std::vector<ModeOp>& ops, const FockVector& v) {
  FockVector w = v;
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) w = apply(*it, w);
  return w;
}

std::string ModeOp::to_string() const {
  std::string idx = std::to_string(index);
  std::string br = branch > 0 ? "{+}" : branch < 0 ? "{-}" : "";
  switch (kind) {
  case OpKind::XPlus:
    return "x+_" + idx + "[" + std::to_string(mode) + "]" + br;
  case OpKind::XMinus:
    return "x-_" + idx + "[" + std::to_string(mode) + "]" + br;
  case OpKind::Psi:
    return "psi_" + idx + "[" + std::to_string(mode) + "]";
  case OpKind::Phi:
    return "phi_" + idx + "[" + std::to_string(mode) + "]";
  case OpKind::K:
    return "K_" + idx;
  case OpKind::Kinv:
    return "Kinv_" + idx;
  case OpKind::A:
    return "a_" + idx + "[" + std::to_string(mode) + "]";
  case OpKind::B:
    return "b_" + idx + "[" + std::to_string(mode) + "]";
  case OpKind::E:
    return "e_" + idx;
  case OpKind::E0:
    return "e0";
  }
  return "?";
}

std::vector<ModeOp> VertexAlgebra::parse_ops(std::string_view s) const {
  std::vector<ModeOp> ops;
  std::size_t p = 0;
  auto skip = [&] {
    while (p < s.size() && std::isspace(static_cast<unsigned char>(s[p]))) ++p;
  };
  auto starts = [&](std::string_view w) { return s.substr(p, w.size()) == w; };
  auto integer = [&]() -> long {
    std::size_t at = p;
    bool neg = false;
    if (p < s.size() && (s[p] == '-' || s[p] == '+')) neg = s[p++] == '-';
    if (p >= s.size() || !std::isdigit(static_cast<unsigned char>(s[p]))) throw ParseError("expected an integer", at);
    long v = 0;
    while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) {
      v = 10 * v + (s[p++] - '0');
      if (v > 100000) throw ParseError("integer too large", at);
    }
    return neg ? -v : v;
  };
  auto expect = [&](char c) {
    if (p >= s.size() || s[p] != c) throw ParseError(std::string("expected '") + c + "'", p);
    ++p;
  };
  auto index = [&](int hi) {
    std::size_t at = p;
    long i = integer();
    if (i < 1 || i > hi) throw ParseError("operator index out of range", at);
    return static_cast<int>(i);
  };
  auto bracketed = [&] {
    expect('[');
    long v = integer();
    expect(']');
    return v;
  };
  const int n = rank();
  skip();
  if (p == s.size()) throw ParseError("empty operator string", 0);
  while (p < s.size()) {
    std::size_t at = p;
    ModeOp op;
    if (starts("x+_") || starts("x-_")) {
      op.kind = s[p + 1] == '+' ? OpKind::XPlus : OpKind::XMinus;
      p += 3;
      op.index = index(n);
      op.mode = bracketed();
      if (p < s.size() && s[p] == '{') {
        ++p;
        if (p < s.size() && (s[p] == '+' || s[p] == '-')) op.branch = s[p++] == '+' ? 1 : -1;
        else throw ParseError("expected branch sign", p);
        expect('}');
        if (op.index == n) throw ParseError("X_n has no split", at);
      }
    } else if (starts("psi_")) {
      p += 4;
      op.kind = OpKind::Psi;
      op.index = index(n);
      op.mode = bracketed();
      if (op.mode < 0) throw ParseError("psi modes are nonnegative", at);
    } else if (starts("phi_")) {
      p += 4;
      op.kind = OpKind::Phi;
      op.index = index(n);
      op.mode = bracketed();
      if (op.mode > 0) throw ParseError("phi modes are nonpositive", at);
    } else if (starts("Kinv_")) {
      p += 5;
      op.kind = OpKind::Kinv;
      op.index = index(n);
    } else if (starts("K_")) {
      p += 2;
      op.kind = OpKind::K;
      op.index = index(n);
    } else if (starts("a_")) {
      p += 2;
      op.kind = OpKind::A;
      op.index = index(n);
      op.mode = bracketed();
    } else if (starts("b_")) {
      p += 2;
      op.kind = OpKind::B;
      op.index = index(n - 1);
      op.mode = bracketed();
    } else if (starts("e0")) {
      p += 2;
      op.kind = OpKind::E0;
    } else if (starts("e_")) {
      p += 2;
      op.kind = OpKind::E;
      op.index = index(n);
    } else {
      throw ParseError("unknown operator", at);
    }
    if (p < s.size() && !std::isspace(static_cast<unsigned char>(s[p]))) throw ParseError("expected whitespace", p);
    ops.push_back(op);
    skip();
  }
  return ops;
}

} // namespace uqcn
