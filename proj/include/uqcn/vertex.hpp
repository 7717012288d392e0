#pragma once

#include "uqcn/fock.hpp"

#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace uqcn {

// Which form of the X^- vertex operator to use.
//   repaired: X^s_i = s Y^s_i [U^s_i(q^{s/2} z) + (-1)^{2a_i(0)} U^{-s}_i(q^{-s/2} z)],
//             with U^+ = U and U^- = U*; X^+ is unchanged, X^- swaps U and U* and carries -1.
//   literal:  X^-_i = Y^-_i [U_i(q^{-1/2} z) + (-1)^{2a_i(0)} U*_i(q^{1/2} z)], X^-_n = Y^-_n.
enum class Construction { repaired, literal };

enum class OpKind { XPlus, XMinus, Psi, Phi, K, Kinv, A, B, E, E0 };

// One operator of the CLI grammar. For Phi, mode holds -m (the operator phi_{i,-m}).
// branch selects one summand of the split X = X_+ + X_- (0 = both).
struct ModeOp {
  OpKind kind = OpKind::XPlus;
  int index = 0;
  long mode = 0;
  int branch = 0;

  std::string to_string() const;
};

// Right-nested q-multibracket [o_1, [o_2, ... [o_{m-1}, o_m]_{v_1} ...]]_{v_{m-1}}.
struct BracketSpec {
  std::vector<ModeOp> ops;
  std::vector<ExactScalar> params; // v_1 (innermost) .. v_{m-1} (outermost)
};

// Mode-by-mode action of the vertex operators on the Fock space.
// Results per (operator, monomial) are memoized; not thread-safe.
class VertexAlgebra {
public:
  explicit VertexAlgebra(int n, Construction c = Construction::repaired,
                         HeisenbergNorm h = HeisenbergNorm::drinfeld);
  ~VertexAlgebra();
  VertexAlgebra(const VertexAlgebra&) = delete;
  VertexAlgebra& operator=(const VertexAlgebra&) = delete;

  int rank() const { return fock_.rank(); }
  const FockSpace& fock() const { return fock_; }
  const Lattice& lattice() const { return fock_.lattice(); }
  Construction construction() const { return construction_; }

  // x^{sign}_{i,k} v, the coefficient of z^{-k-1} in X^{sign}_i(z) v.
  // branch = +1 / -1 keeps one summand of the split (i < n only), 0 keeps both.
  FockVector x(int sign, int i, long k, const FockVector& v, int branch = 0);
  // psi_{i,m} and phi_{i,-m}, m >= 0.
  FockVector psi(int i, long m, const FockVector& v);
  FockVector phi(int i, long m, const FockVector& v);
  // K_i^power = q^{power a_i(0)}.
  FockVector K(int i, const FockVector& v, int power = 1);
  FockVector e(int i, const FockVector& v) { return x(+1, i, 0, v); }
  FockVector e0(const FockVector& v, const BracketSpec& spec);
  FockVector e0(const FockVector& v) { return e0(v, default_e0_spec()); }
  // [X_1^-(0), ..., X_n^-(0), X_{n-1}^-(0), ..., X_1^-(1)] with parameters
  // (n-2) x q^{-1/2}, q^{-1}, (n-2) x q^{-1/2}, 1.
  BracketSpec default_e0_spec() const;
  FockVector multibracket(const BracketSpec& spec, const FockVector& v);

  FockVector apply(const ModeOp& op, const FockVector& v);
  // Operator product: the rightmost operator acts first.
  FockVector apply(const std::vector<ModeOp>& ops, const FockVector& v);

  // Grammar: whitespace-separated x+_i[k] x-_i[k] psi_i[m] phi_i[-m] a_i[k] b_i[k]
  // K_i Kinv_i e_i e0; an X term may carry a branch suffix {+} or {-}.
  std::vector<ModeOp> parse_ops(std::string_view text) const;

  std::size_t cache_entries() const;
  void clear_cache();

private:
  struct Impl;
  FockSpace fock_;
  Construction construction_;
  std::unique_ptr<Impl> impl_;
};

} // namespace uqcn
