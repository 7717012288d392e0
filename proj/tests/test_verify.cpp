#include "uqcn/multipoly.hpp"
#include "uqcn/qnumbers.hpp"
#include "uqcn/verify.hpp"

#include <doctest.h>

#include <map>

using namespace uqcn;

namespace {

CheckConfig small(int n, long lo = -1, long hi = 1) {
  CheckConfig c;
  c.rank = n;
  c.mode_min = lo;
  c.mode_max = hi;
  return c;
}

CheckConfig vacuum_only(int n, long lo = -1, long hi = 1) {
  CheckConfig c = small(n, lo, hi);
  c.vectors = {algebra_for(c).fock().vacuum()};
  return c;
}

bool all_pass(const VerificationReport& r) { return r.total() > 0 && r.failed() == 0; }

// Words in modes of two generating series, with scalar coefficients.
// A word is a sequence of (series id, mode); series ids are small integers.
using Word = std::vector<std::pair<int, long>>;
using Combo = std::map<Word, ExactScalar>;

void add(Combo& c, const Word& w, const ExactScalar& x) {
  c[w] += x;
  if (c[w].is_zero()) c.erase(w);
}

} // namespace

// The mode forms used by verify_r7 / verify_r8 are cross-checked against a
// brute-force coefficient extraction of the generating-function identities.
TEST_CASE("R8 mode form matches coefficient extraction from the delta functions") {
  // psi(w q^{1/2}) delta(wq/z)/(zw) - phi(w q^{-1/2}) delta(w q^{-1}/z)/(zw), with
  // psi(u) = sum_a psi_a u^-a, phi(u) = sum_b phi_-b u^b, delta(x) = sum_k x^k.
  // Series id 0 is psi (mode a), id 1 is phi (mode -b).
  const long W = 2, R = 12;
  for (long m = -W; m <= W; ++m)
    for (long n = -W; n <= W; ++n) {
      Combo brute;
      for (long a = 0; a <= R; ++a)
        for (long k = -R; k <= R; ++k) {
          // z^{-k-1} w^{-a+k-1}, coefficient q^{-a/2} q^k
          if (-k - 1 == -m - 1 && -a + k - 1 == -n - 1) add(brute, {{0, a}}, q_power(half(2 * k - a)));
        }
      for (long b = 0; b <= R; ++b)
        for (long k = -R; k <= R; ++k) {
          // phi_{-b} q^{-b/2} w^b (w/(qz))^k / (zw): z^{-k-1} w^{b+k-1}
          if (-k - 1 == -m - 1 && b + k - 1 == -n - 1) add(brute, {{1, -b}}, -q_power(half(-b - 2 * k)));
        }
      Combo closed;
      if (m + n >= 0) add(closed, {{0, m + n}}, q_power(half(m - n)));
      if (m + n <= 0) add(closed, {{1, m + n}}, -q_power(half(n - m)));
      CHECK(brute == closed);
    }
}

TEST_CASE("R7 mode form matches coefficient extraction") {
  // (z - a w) X_i(z) X_j(w) + (w - a z) X_j(w) X_i(z), X(z) = sum_p x_p z^{-p-1}; id 0 = x_i, id 1 = x_j.
  const ExactScalar a = q_power(half(-1));
  const long W = 2, R = 6;
  for (long m = -W; m <= W; ++m)
    for (long n = -W; n <= W; ++n) {
      Combo brute;
      for (long p = -R; p <= R; ++p)
        for (long r = -R; r <= R; ++r) {
          // z x_p z^{-p-1} x_r w^{-r-1}
          if (-p == -m - 1 && -r - 1 == -n - 1) add(brute, {{0, p}, {1, r}}, 1);
          if (-p - 1 == -m - 1 && -r == -n - 1) add(brute, {{0, p}, {1, r}}, -a);
          if (-r == -n - 1 && -p - 1 == -m - 1) add(brute, {{1, r}, {0, p}}, 1);
          if (-r - 1 == -n - 1 && -p == -m - 1) add(brute, {{1, r}, {0, p}}, -a);
        }
      Combo closed;
      add(closed, {{0, m + 1}, {1, n}}, 1);
      add(closed, {{0, m}, {1, n + 1}}, -a);
      add(closed, {{1, n + 1}, {0, m}}, 1);
      add(closed, {{1, n}, {0, m + 1}}, -a);
      CHECK(brute == closed);
    }
}

TEST_CASE("R7 examples") {
  CHECK(all_pass(verify_r7(vacuum_only(2), 1, 2, +1)));
  CHECK(all_pass(verify_r7(vacuum_only(3), 1, 3, +1)));
  CHECK(all_pass(verify_r7(vacuum_only(3), 2, 3, -1)));
  // the four contraction cases (a_i|a_j) = -1/2, -1, 1, 2 at rank 3 on the full vector set
  CheckConfig c = small(3, -1, 0);
  for (auto [i, j] : {std::pair{1, 2}, std::pair{2, 3}, std::pair{1, 1}, std::pair{3, 3}})
    for (int s : {1, -1}) CHECK(all_pass(verify_r7(c, i, j, s)));
}

TEST_CASE("R8 examples") {
  CHECK(all_pass(verify_r8(vacuum_only(2), 1, 2)));
  CHECK(all_pass(verify_r8(vacuum_only(2), 1, 1)));
  CheckConfig c = vacuum_only(2, 0, 0);
  c.vectors = {algebra_for(c).fock().highest_weight_vector(2)};
  CHECK(all_pass(verify_r8(c, 2, 2)));
  // On the vacuum with m = 1, n = -1 the relation reads
  // [x+, x-]|0> = (q psi_0 - q^-1 phi_0)/(q^{1/2} - q^{-1/2}) |0> = (q^{1/2} + q^{-1/2}) |0>.
  VertexAlgebra& va = algebra_for(c);
  const FockVector vac = va.fock().vacuum();
  FockVector comm = va.x(+1, 1, 1, va.x(-1, 1, -1, vac)) - va.x(-1, 1, -1, va.x(+1, 1, 1, vac));
  CHECK(comm == q_int(2, mpq_class(1, 4)) * vac);
}

TEST_CASE("literal construction and literal bracket fail where expected") {
  CheckConfig lit = small(2, -1, 1);
  lit.construction = Construction::literal;
  CHECK(verify_r8(lit, 1, 1).failed() > 0);
  CheckConfig ln = small(2, -2, 2); // the two brackets agree at |k| = 1
  ln.norm = HeisenbergNorm::literal;
  CHECK(verify_r2(ln).failed() > 0);
  CHECK(verify_r6(ln).failed() > 0);
}

TEST_CASE("R2, R4, R5, R6 at rank 2") {
  CheckConfig c = small(2, -1, 1);
  CHECK(all_pass(verify_r2(c)));
  CHECK(all_pass(verify_r4(c)));
  CHECK(all_pass(verify_r5(c)));
  CHECK(all_pass(verify_r6(c)));
}

TEST_CASE("a wrong constant is detected") {
  // R7 with q^{(a_i|a_j)} replaced by q^{(a_i|a_j) + 1/2} must leave residuals.
  CheckConfig c = small(2, -1, 1);
  VertexAlgebra& va = algebra_for(c);
  const ExactScalar a = q_power(va.lattice().root_inner(1, 2) + half(1));
  std::size_t bad = 0;
  for (const auto& v : test_vectors(c)) {
    FockVector r = va.x(1, 1, 1, va.x(1, 2, 0, v));
    r.add_scaled(va.x(1, 1, 0, va.x(1, 2, 1, v)), -a);
    r += va.x(1, 2, 1, va.x(1, 1, 0, v));
    r.add_scaled(va.x(1, 2, 0, va.x(1, 1, 1, v)), -a);
    bad += !r.is_zero();
  }
  CHECK(bad > 0);
}

TEST_CASE("Serre examples") {
  CheckConfig c3 = vacuum_only(3);
  CHECK(all_pass(verify_serre(c3, 1, 3)));
  CHECK(all_pass(verify_serre(c3, 1, 2)));
  CHECK(all_pass(verify_serre(c3, 3, 2)));
  VerificationReport quartic = verify_serre(c3, 2, 3);
  CHECK(all_pass(quartic));
  CHECK(quartic.checks().front().params["order"] == 4);
  CHECK(all_pass(verify_serre_branches(c3, 1, 2)));
  CHECK_THROWS_AS(verify_serre(c3, 2, 2), std::invalid_argument);
  CHECK_THROWS_AS(verify_serre_branches(c3, 2, 3), std::invalid_argument);
}

TEST_CASE("identities") {
  for (auto f : {check_identity1, check_identity2, check_identity3, check_ope_factors}) {
    VerificationReport r = f();
    CHECK(all_pass(r));
  }
  VerificationReport r2 = check_identity2();
  bool saw_defect = false;
  for (const auto& c : r2.checks())
    if (c.params.contains("part") && c.params["part"].get<std::string>().find("nonzero") != std::string::npos)
      saw_defect = true;
  CHECK(saw_defect);
}

TEST_CASE("lemma and highest weight vectors") {
  for (int n : {2, 3}) {
    CheckConfig c = small(n, -2, 2);
    CHECK(all_pass(verify_lemma(c)));
    VerificationReport h = verify_hwv(c);
    CHECK(all_pass(h));
    CHECK(h.total() == static_cast<std::size_t>(n + 1));
  }
}

TEST_CASE("relation dispatcher and configuration") {
  CheckConfig c = vacuum_only(2);
  VerificationReport all = verify_relations(c, "all");
  CHECK(all_pass(all));
  CHECK_THROWS_AS(verify_relations(c, "r3"), std::invalid_argument);
  CheckConfig bad = c;
  bad.rank = 1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = c;
  bad.mode_min = 2;
  bad.mode_max = 1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  CheckConfig sw;
  CHECK(sw.serre_lo() == -1);
  CHECK(sw.serre_hi() == 1);
  CheckConfig lvl = small(2);
  lvl.max_level = 0;
  for (const auto& v : test_vectors(lvl))
    for (const auto& [m, x] : v.terms()) CHECK(m.level() == 0);
}

TEST_CASE("reports are deterministic and schema-shaped") {
  CheckConfig c = vacuum_only(2);
  auto j1 = verify_relations(c, "r7").to_json(false).dump();
  auto j2 = verify_relations(c, "r7").to_json(false).dump();
  CHECK(j1 == j2);
  auto j = verify_relations(c, "r8").to_json();
  CHECK(j["command"] == "relations");
  CHECK(j["rank"] == 2);
  REQUIRE(j["checks"].size() > 0);
  for (const char* key : {"name", "params", "status", "residual", "elapsed_ms"}) CHECK(j["checks"][0].contains(key));
  CHECK(j["summary"]["failed"] == 0);
  CHECK(j["summary"]["total"] == j["checks"].size());
}

TEST_CASE("residual printing") {
  FockSpace fs(2);
  FockVector v;
  for (long k = 1; k <= 20; ++k) v.add(fs.parse("e[0,0]").terms().begin()->first.with_creation(
                                           std::vector<std::int32_t>{FockMonomial::code(Family::A, 1, k)}),
                                       ExactScalar(k));
  auto r = residual_terms(fs, v, 5);
  CHECK(r.size() == 6);
  CHECK(r.back() == "... 15 more terms");
  CHECK(residual_terms(fs, FockVector()).empty());
}

TEST_CASE("MultiPoly arithmetic") {
  const MultiPoly x = MultiPoly::var(2, 0), y = MultiPoly::var(2, 1);
  const MultiPoly one = MultiPoly::constant(2, 1);
  CHECK((x + y) * (x - y) == x * x - y * y);
  CHECK((x - x).is_zero());
  CHECK((x * y).permuted({1, 0}) == x * y);
  CHECK((x + y).substitute(0, q_power(half(2))) == MultiPoly::constant(2, q_power(half(2))) + y);
  const MultiPoly xinv = MultiPoly::monomial({-1, 0});
  CHECK(x * xinv == one);
  CHECK((x * MultiPoly::constant(2, q_power(half(1)))).to_string({"x", "y"}) == "(q^1/2) x");
}
