#pragma once

#include "uqcn/fock.hpp"
#include "uqcn/report.hpp"
#include "uqcn/vertex.hpp"

#include <optional>
#include <string>
#include <vector>

namespace uqcn {

struct CheckConfig {
  int rank = 2;
  long mode_min = -2;
  long mode_max = 2;
  // Serre window; unset means the mode window clipped to [-1, 1].
  std::optional<long> serre_min, serre_max;
  // Test vectors deeper than this (total creation level) are skipped.
  long max_level = 2;
  // Empty means FockSpace::default_test_vectors().
  std::vector<FockVector> vectors;
  Construction construction = Construction::repaired;
  HeisenbergNorm norm = HeisenbergNorm::drinfeld;

  // Throws std::invalid_argument on a bad rank or window.
  void validate() const;
  long serre_lo() const;
  long serre_hi() const;
};

// The shared operator cache for a configuration (one per thread and
// (rank, construction, norm)).
VertexAlgebra& algebra_for(const CheckConfig& cfg);
std::vector<FockVector> test_vectors(const CheckConfig& cfg);

// Residual as printed terms, at most `limit` of them plus a count line.
std::vector<std::string> residual_terms(const FockSpace& fock, const FockVector& r, std::size_t limit = 16);

// x_{i,m+1}x_{j,n} - a x_{i,m}x_{j,n+1} + x_{j,n+1}x_{i,m} - a x_{j,n}x_{i,m+1} = 0, a = q^{sign (a_i|a_j)}.
VerificationReport verify_r7(const CheckConfig& cfg, int i, int j, int sign);
// [x+_{i,m}, x-_{j,n}] = d_ij/(q_i - q_i^-1) (q^{(m-n)/2} psi_{i,m+n} - q^{(n-m)/2} phi_{i,m+n}).
VerificationReport verify_r8(const CheckConfig& cfg, int i, int j);
VerificationReport verify_r5(const CheckConfig& cfg);
VerificationReport verify_r6(const CheckConfig& cfg);
VerificationReport verify_r4(const CheckConfig& cfg);
VerificationReport verify_r2(const CheckConfig& cfg);
// Order 1 - A_ij Serre relation for both signs.
VerificationReport verify_serre(const CheckConfig& cfg, int i, int j);
// The two branch-wise cubic identities for a short adjacent pair (i, j), both < n:
// mixed branches (e1 != e2) and equal branches (e1 = e2), for either sign of X.
VerificationReport verify_serre_branches(const CheckConfig& cfg, int i, int j);

// Sweeps: "r2", "r4", "r5", "r6", "r7", "r8", "serre" or "all".
// Throws std::invalid_argument on an unknown relation name.
VerificationReport verify_relations(const CheckConfig& cfg, const std::string& relation);

VerificationReport check_identity1();
VerificationReport check_identity2();
VerificationReport check_identity3();
VerificationReport check_ope_factors();

VerificationReport verify_lemma(const CheckConfig& cfg);
VerificationReport verify_hwv(const CheckConfig& cfg);

} // namespace uqcn
