#include "uqcn/qnumbers.hpp"
#include "uqcn/vertex.hpp"

#include <doctest.h>

#include <map>

using namespace uqcn;

namespace {

// Truncated series in z with FockVector coefficients, integer exponents >= 0.
using OpSeries = std::map<long, FockVector>;

// exp(sum_{k>=1} c_k g(-k) z^k) |v>, multiplied out factor by factor up to z^D.
OpSeries creation_exp(const FockSpace& fs, Family f, int idx, const std::vector<ExactScalar>& c, long D,
                      const FockVector& v) {
  OpSeries cur{{0, v}};
  for (long k = 1; k <= D; ++k) {
    OpSeries next;
    for (const auto& [e, w] : cur) {
      // sum_r (c_k z^k g(-k))^r / r!
      FockVector term = w;
      ExactScalar fact(1);
      for (long r = 0; e + r * k <= D; ++r) {
        if (r > 0) {
          term = fs.apply_heisenberg({f, idx, -k}, term);
          term *= c[k];
          fact *= ExactScalar(r);
        }
        next[e + r * k].add_scaled(term, fact.inverse());
      }
    }
    cur = std::move(next);
  }
  return cur;
}

// x^s_{i,k} on an oscillator-free vector, straight from
//   X^s_i = s Y^s_i [U^s_i(q^{s/2} z) + (-1)^{2a_i(0)} U^{-s}_i(q^{-s/2} z)],  X^s_n = s Y^s_n,
//   Y^s_i = exp(s sum a_i(-k) q^{-sk/2} z^k/[k]) exp(...) e^{s a_i} z^{s a_i(0)} eps_i,
//   U^h_j = exp(h sum b_j(-k) z^k/[k]) exp(...) e^{h a~_j} z^{h b_j(0)}.
FockVector oracle_x(const FockSpace& fs, int s, int i, long k, int branch, const WeightC& lam, const WeightA& lt) {
  const Lattice& L = fs.lattice();
  const int n = fs.rank();
  const long D = 8;
  FockVector out;
  std::vector<int> branches = i == n ? std::vector<int>{0} : (branch ? std::vector<int>{branch} : std::vector<int>{1, -1});
  for (int eb : branches) {
    ExactScalar unit(s * L.eps_char(i, lam));
    long zq = L.pair2(i, lam) * s; // doubled z exponent so far
    WeightC l2 = lam;
    WeightA t2 = lt;
    L.add_alpha(l2, i, s);
    std::vector<ExactScalar> cu(D + 1);
    if (eb != 0) {
      const int h = s * eb;         // U^h
      const long c2 = s * eb;       // argument q^{c2/2} z
      const long t = L.pair2_tilde(i, lt);
      if (eb < 0 && L.pair2(i, lam) % 2) unit = -unit;
      // (q^{c2/2} z)^{h t/2}
      unit *= ExactScalar::q_quarter(c2 * h * t);
      zq += h * t;
      L.add_alpha_tilde(t2, i, h);
      for (long m = 1; m <= D; ++m)
        cu[m] = ExactScalar(h) * ExactScalar::q_quarter(2 * c2 * m) / q_int(m, mpq_class(1, 2));
    }
    REQUIRE(zq % 2 == 0);
    const long N = -k - 1 - zq / 2;
    if (N < 0) continue;
    REQUIRE(N <= D);
    std::vector<ExactScalar> ca(D + 1);
    for (long m = 1; m <= D; ++m)
      ca[m] = ExactScalar(s) * ExactScalar::q_quarter(-2 * s * m) / q_int(m, mpq_class(1, 2));
    const FockVector base(fs.lattice_monomial(l2, t2));
    OpSeries sb = eb != 0 ? creation_exp(fs, Family::B, i, cu, D, base) : OpSeries{{0, base}};
    for (const auto& [e, w] : sb) {
      if (e > N) continue;
      OpSeries sa = creation_exp(fs, Family::A, i, ca, N - e, w);
      auto it = sa.find(N - e);
      if (it != sa.end()) out.add_scaled(it->second, unit);
    }
  }
  return out;
}

} // namespace

TEST_CASE("act examples") {
  VertexAlgebra va(2);
  const FockSpace& fs = va.fock();
  CHECK(fs.print(va.x(+1, 2, -1, fs.vacuum())) == "e[0,2] t[]");
  // X_1^-(0) e^{lambda_1} e^{lambda~_1} = -q^{1/4} eps(a_1, lambda_1) e^{lambda_1 - a_1} e^{lambda~_1 - a~_1}
  FockVector r = va.x(-1, 1, 0, fs.parse("e[1,0] t[1]"));
  const int eps = fs.lattice().eps_char(1, fs.lattice().fundamental(1));
  CHECK(r == ExactScalar(-eps) * ExactScalar::q_quarter(1) * fs.parse("e[0,1] t[-1]"));
}

TEST_CASE("modes agree with the generating-function definition on lattice vectors") {
  for (int n : {2, 3}) {
    VertexAlgebra va(n);
    const FockSpace& fs = va.fock();
    for (const auto& v : fs.default_test_vectors()) {
      const auto& [m, c] = *v.terms().begin();
      if (v.size() != 1 || m.level() != 0) continue;
      for (int s : {1, -1})
        for (int i = 1; i <= n; ++i)
          for (int b : {0, 1, -1}) {
            if (i == n && b != 0) continue;
            for (long k = -4; k <= 3; ++k) {
              FockVector want = oracle_x(fs, s, i, k, b, m.lambda(), m.lambda_tilde());
              want *= c;
              CHECK_MESSAGE(va.x(s, i, k, v, b) == want,
                            "s=" << s << " i=" << i << " k=" << k << " b=" << b << " v=" << fs.print(v));
            }
          }
    }
  }
}

TEST_CASE("branches sum to the full mode and shift lambda~ as stated") {
  for (int n : {2, 3}) {
    VertexAlgebra va(n);
    const FockSpace& fs = va.fock();
    for (const auto& v : fs.default_test_vectors())
      for (int s : {1, -1})
        for (int i = 1; i < n; ++i)
          for (long k = -2; k <= 2; ++k) {
            FockVector p = va.x(s, i, k, v, +1), m = va.x(s, i, k, v, -1);
            CHECK(va.x(s, i, k, v) == p + m);
          }
  }
  VertexAlgebra va(2);
  const FockSpace& fs = va.fock();
  const FockVector v = fs.highest_weight_vector(1);
  for (long k = -3; k <= 1; ++k) {
    for (const auto& [m, c] : va.x(+1, 1, k, v, +1).terms()) CHECK(m.t(0) == 1 + 2);
    for (const auto& [m, c] : va.x(+1, 1, k, v, -1).terms()) CHECK(m.t(0) == 1 - 2);
  }
}

TEST_CASE("degree shift") {
  for (int n : {2, 3}) {
    VertexAlgebra va(n);
    const FockSpace& fs = va.fock();
    for (const auto& v : fs.default_test_vectors()) {
      const mpq_class g = fs.grade(v);
      for (int s : {1, -1})
        for (int i = 1; i <= n; ++i)
          for (long k = -2; k <= 2; ++k) {
            FockVector w = va.x(s, i, k, v);
            if (!w.is_zero()) CHECK(fs.grade(w) == g + k);
          }
    }
  }
}

TEST_CASE("psi and phi modes") {
  VertexAlgebra va(2);
  const FockSpace& fs = va.fock();
  for (const auto& v : fs.default_test_vectors())
    for (int i = 1; i <= 2; ++i) {
      const auto w = fs.weight(v);
      CHECK(va.psi(i, 0, v) == q_power(w[i - 1]) * v);
      CHECK(va.phi(i, 0, v) == q_power(-w[i - 1]) * v);
      long lev = 0;
      for (const auto& [m, c] : v.terms()) lev = std::max(lev, m.level());
      for (long m = lev + 1; m <= lev + 3; ++m) CHECK(va.psi(i, m, v).is_zero());
    }
  CHECK(va.psi(1, 1, fs.vacuum()).is_zero());
  // psi_{1,1} a_1(-1)|0> = (q - q^-1) [a_1(1), a_1(-1)] |0>
  CHECK(va.psi(1, 1, fs.parse("a1(-1) e[0,0]")) == (q_power(half(2)) - q_power(half(-2))) * fs.vacuum());
  CHECK(va.phi(1, 1, fs.vacuum()) == -(q_power(half(2)) - q_power(half(-2))) * fs.parse("a1(-1) e[0,0]"));
}

TEST_CASE("K acts by q^{a_i(0)}") {
  VertexAlgebra va(3);
  const FockSpace& fs = va.fock();
  for (const auto& v : fs.default_test_vectors())
    for (int i = 1; i <= 3; ++i) {
      CHECK(va.K(i, va.K(i, v, -1)) == v);
      CHECK(va.K(i, v) == q_power(fs.weight(v)[i - 1]) * v);
    }
}

TEST_CASE("Chevalley raising operators") {
  for (int n : {2, 3}) {
    VertexAlgebra va(n);
    const FockSpace& fs = va.fock();
    for (int j = 0; j <= n; ++j) {
      const FockVector h = fs.highest_weight_vector(j);
      for (int i = 1; i <= n; ++i) {
        CHECK(va.e(i, h).is_zero());
        CHECK(va.e(i, h) == va.x(+1, i, 0, h));
      }
      CHECK(va.e0(h).is_zero());
    }
    // e_0 is not the zero operator
    std::size_t nonzero = 0;
    for (const auto& v : fs.default_test_vectors()) nonzero += !va.e0(v).is_zero();
    CHECK(nonzero > 0);
    // sl2 string: e_n x^-_{n,0} e^{lambda_n} is a nonzero multiple of e^{lambda_n}
    const FockVector h = fs.highest_weight_vector(n);
    const FockVector low = va.x(-1, n, 0, h);
    CHECK_FALSE(low.is_zero());
    const FockVector back = va.e(n, low);
    REQUIRE(back.size() == 1);
    CHECK(back.terms().begin()->first == h.terms().begin()->first);
    CHECK_FALSE(back.terms().begin()->second.is_zero());
  }
}

TEST_CASE("q-multibracket") {
  VertexAlgebra va(2);
  const FockSpace& fs = va.fock();
  auto ops = va.parse_ops("x-_1[0] x-_2[0]");
  const FockVector v = fs.highest_weight_vector(1);
  BracketSpec plain{ops, {ExactScalar(1)}};
  CHECK(va.multibracket(plain, v) == va.apply(ops, v) - va.apply(std::vector<ModeOp>{ops[1], ops[0]}, v));
  const ExactScalar p = q_power(half(-1));
  BracketSpec tw{ops, {p}};
  CHECK(va.multibracket(tw, v) == va.apply(ops, v) - p * va.apply(std::vector<ModeOp>{ops[1], ops[0]}, v));
  BracketSpec d = va.default_e0_spec();
  CHECK(d.ops.size() == 3);
  REQUIRE(d.params.size() == 2);
  CHECK(d.params[0] == q_power(half(-2)));
  CHECK(d.params[1].is_one());
  VertexAlgebra va3(3);
  BracketSpec d3 = va3.default_e0_spec();
  CHECK(d3.ops.size() == 5);
  REQUIRE(d3.params.size() == 4);
  CHECK(d3.params[0] == q_power(half(-1)));
  CHECK(d3.params[1] == q_power(half(-2)));
  CHECK(d3.params[2] == q_power(half(-1)));
  CHECK(d3.params[3].is_one());
}

TEST_CASE("operator grammar") {
  VertexAlgebra va(2);
  const FockSpace& fs = va.fock();
  auto ops = va.parse_ops("x+_1[-1] x-_1[0]{+} psi_1[2] phi_2[-1] a_1[-2] b_1[1] K_2 Kinv_1 e_1 e0");
  REQUIRE(ops.size() == 10);
  CHECK(ops[0].kind == OpKind::XPlus);
  CHECK(ops[0].mode == -1);
  CHECK(ops[1].branch == 1);
  CHECK(ops[3].kind == OpKind::Phi);
  CHECK(ops[3].mode == -1);
  CHECK(ops[9].kind == OpKind::E0);
  for (const auto& o : ops) CHECK(va.parse_ops(o.to_string())[0].to_string() == o.to_string());
  CHECK_THROWS_AS(va.parse_ops("x+_3[0]"), ParseError);
  CHECK_THROWS_AS(va.parse_ops("x*_1[0]"), ParseError);
  CHECK_THROWS_AS(va.parse_ops("psi_1[-1]"), ParseError);
  CHECK_THROWS_AS(va.parse_ops("phi_1[1]"), ParseError);
  CHECK_THROWS_AS(va.parse_ops("x+_2[0]{+}"), ParseError);
  // rightmost acts first
  auto two = va.parse_ops("x+_1[0] x-_1[0]");
  const FockVector v = fs.highest_weight_vector(1);
  CHECK(va.apply(two, v) == va.x(+1, 1, 0, va.x(-1, 1, 0, v)));
}

TEST_CASE("the literal construction breaks the x+/x- relation") {
  VertexAlgebra lit(2, Construction::literal);
  const FockSpace& fs = lit.fock();
  // [x+_{1,1}, x-_{1,-1}] |0> should be (q - q^-1)/(q^{1/2} - q^{-1/2}) |0> = (q^{1/2} + q^{-1/2}) |0>
  FockVector c = lit.x(+1, 1, 1, lit.x(-1, 1, -1, fs.vacuum())) - lit.x(-1, 1, -1, lit.x(+1, 1, 1, fs.vacuum()));
  CHECK_FALSE(c == q_int(2, mpq_class(1, 4)) * fs.vacuum());
  VertexAlgebra rep(2);
  FockVector d = rep.x(+1, 1, 1, rep.x(-1, 1, -1, fs.vacuum())) - rep.x(-1, 1, -1, rep.x(+1, 1, 1, fs.vacuum()));
  CHECK(d == q_int(2, mpq_class(1, 4)) * fs.vacuum());
}

TEST_CASE("cache can be cleared without changing results") {
  VertexAlgebra va(2);
  const FockSpace& fs = va.fock();
  const FockVector v = fs.parse("a1(-1) e[1,0] t[1]");
  FockVector r1 = va.x(+1, 1, -2, v);
  CHECK(va.cache_entries() > 0);
  va.clear_cache();
  CHECK(va.cache_entries() == 0);
  CHECK(va.x(+1, 1, -2, v) == r1);
}
