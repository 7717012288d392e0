// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.
#include "uqcn/lattice.hpp"
#include "uqcn/qnumbers.hpp"
#include "uqcn/series.hpp"
#include "uqcn/verify.hpp"

#include <gmpxx.h>

#include <cstdio>
#include <functional>
#include <iostream>
#include <string>

using namespace uqcn;

namespace {

HalfExponent I(long v) { return HalfExponent::integer(v); }

struct Outcome {
  std::size_t checks = 0;
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) failures.push_back(what);
  }
  void absorb(const VerificationReport& r) {
    for (const auto& c : r.checks()) {
      ++checks;
      if (!c.pass()) {
        std::string line = c.name + ' ' + c.params.dump();
        if (!c.residual.empty()) line += "  residual: " + c.residual.front();
        failures.push_back(line);
      }
    }
  }
};

Outcome qpower_identities() {
  Outcome o;
  const TruncatedSeries one = TruncatedSeries::constant(1, I(16));
  for (long d : {1, 2, 3, 4})
    for (long s : {1, -1}) {
      const HalfExponent a = half(s * d);
      o.expect(series_equal(qpow_exp(a, I(16)), qpow_product(a, I(16)), I(16)), "exp vs product at a = " + a.to_string());
      o.expect(series_equal(series_mul(qpow_exp(a, I(16)), qpow_exp(-a, I(16))), one, I(16)),
               "qpow(a) qpow(-a) at a = " + a.to_string());
    }
  const TruncatedSeries rhs = series_mul(TruncatedSeries::polynomial({1, -q_power(I(1))}, I(16)),
                                         TruncatedSeries::polynomial({1, -q_power(I(-1))}, I(16)));
  o.expect(series_equal(qpow_exp(I(2), I(16)), rhs, I(16)), "(1-z)^2 = (1-qz)(1-q^-1 z)");
  o.expect(series_equal(qpow_product(I(2), I(16)), rhs, I(16)), "(1-z)^2 product form");
  return o;
}

Outcome identities() {
  Outcome o;
  o.absorb(check_identity1());
  o.absorb(check_identity2());
  o.absorb(check_identity3());
  return o;
}

Outcome ope() {
  Outcome o;
  o.absorb(check_ope_factors());
  return o;
}

Outcome cocycle() {
  Outcome o;
  for (int n : {2, 3, 4}) o.absorb(check_quasi_cocycle_axioms(n));
  return o;
}

CheckConfig window(int n) {
  CheckConfig c;
  c.rank = n;
  c.mode_min = -2;
  c.mode_max = 2;
  c.validate();
  return c;
}

Outcome relation_sweeps() {
  Outcome o;
  for (int n : {2, 3}) {
    const CheckConfig c = window(n);
    o.expect(test_vectors(c).size() >= 20, "fewer than 20 test vectors at rank " + std::to_string(n));
    for (const char* r : {"r2", "r4", "r5", "r6", "r7", "r8"}) o.absorb(verify_relations(c, r));
  }
  return o;
}

Outcome serre() {
  Outcome o;
  for (int n : {2, 3}) {
    const CheckConfig c = window(n);
    o.expect(c.serre_lo() == -1 && c.serre_hi() == 1, "Serre window is not [-1, 1]");
    const VerificationReport r = verify_relations(c, "serre");
    o.absorb(r);
    bool quartic = false, mixed = false, equal = false;
    for (const auto& rec : r.checks()) {
      quartic |= rec.name == "serre" && rec.params.value("order", 0) == 4;
      mixed |= rec.name == "serre.branch.mixed";
      equal |= rec.name == "serre.branch.equal";
    }
    o.expect(quartic, "no fourth-order Serre checks at rank " + std::to_string(n));
    // adjacent short-root pairs (i, i+1), i + 1 < n, exist only from rank 3 on
    if (n >= 3) o.expect(mixed && equal, "branch-wise checks missing at rank " + std::to_string(n));
  }
  return o;
}

Outcome highest_weight() {
  Outcome o;
  for (int n : {2, 3}) {
    const CheckConfig c = window(n);
    const VerificationReport h = verify_hwv(c);
    o.expect(h.total() == static_cast<std::size_t>(n + 1), "expected one hwv record per i = 0..n");
    o.absorb(h);
    o.absorb(verify_lemma(c));
  }
  return o;
}

// Every q-number family the criteria above rely on, at the parameters they use.
Outcome classical_limits() {
  Outcome o;
  const mpq_class bases[] = {mpq_class(1, 4), mpq_class(1, 2), mpq_class(1), mpq_class(2)};
  for (const mpq_class& d : bases)
    for (long m = -12; m <= 12; ++m)
      o.expect(classical_limit(q_int(m, d)) == m, "[" + std::to_string(m) + "] with base " + d.get_str());
  for (const mpq_class& d : bases)
    for (long m = 0; m <= 4; ++m)
      for (long r = 0; r <= m; ++r) {
        mpz_class exact;
        mpz_bin_uiui(exact.get_mpz_t(), m, r);
        o.expect(classical_limit(q_binom(m, r, d)) == exact,
                 "binomial (" + std::to_string(m) + " " + std::to_string(r) + ") with base " + d.get_str());
      }
  // [a k] / k as used by the oscillator brackets, for every inner product value.
  for (long twice : {-4, -2, -1, 0, 1, 2, 4})
    for (long k = 1; k <= 16; ++k)
      o.expect(classical_limit(q_int_frac(half(twice), k)) == mpq_class(twice * k) / 2,
               "[a k] at a = " + std::to_string(twice) + "/2");
  // The q-power series reduce to the binomial series of (1-z)^a.
  for (long twice : {-4, -3, -2, -1, 1, 2, 3, 4}) {
    const mpq_class a = mpq_class(twice) / 2;
    const TruncatedSeries s = qpow_exp(half(twice), I(12));
    mpq_class c = 1;
    for (long k = 0; k < 12; ++k) {
      o.expect(classical_limit(series_coeff(s, I(k))) == c, "binomial series coefficient at a = " + a.get_str());
      c = c * (k - a) / (k + 1);
    }
  }
  return o;
}

} // namespace

int main() {
  struct Criterion {
    int number;
    const char* title;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {1, "q-power identities", qpower_identities},
      {2, "combinatorial identities", identities},
      {3, "OPE factor suite", ope},
      {4, "cocycle tables and quasi-cocycle axioms, n = 2, 3, 4", cocycle},
      {5, "relation sweeps R2 R4 R5 R6 R7 R8, n = 2, 3, modes [-2, 2]", relation_sweeps},
      {6, "Serre relations and branch-wise sub-Serre, n = 2, 3", serre},
      {7, "highest weight vectors and lowering lemma, n = 2, 3", highest_weight},
      {8, "classical limits", classical_limits},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Stopwatch sw;
    Outcome o;
    std::string error;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      error = e.what();
    }
    const bool ok = error.empty() && o.failures.empty() && o.checks > 0;
    failed += !ok;
    std::printf("%s criterion %d: %s  (%zu checks, %zu failed, %.1f s)\n", ok ? "PASS" : "FAIL", c.number, c.title,
                o.checks, o.failures.size(), sw.ms() / 1000);
    if (!error.empty()) std::printf("    exception: %s\n", error.c_str());
    for (std::size_t k = 0; k < o.failures.size() && k < 10; ++k) std::printf("    %s\n", o.failures[k].c_str());
    std::fflush(stdout);
  }
  std::printf("%d of 8 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
