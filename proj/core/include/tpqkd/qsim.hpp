#pragma once

// Minimal pure-state simulator over dynamically merged "entanglement
// islands". An island is the set of qubits whose joint state cannot be
// factored; single-qubit gates act inside one island, and a two-qubit
// projective measurement merges the islands of its targets first. Qubits are
// removed from the register when measured, so a live QubitId is always an
// unmeasured one.

#include <array>
#include <compare>
#include <complex>
#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tpqkd/rng.hpp"

namespace tpqkd {

using Amp = std::complex<double>;

inline constexpr double kInvSqrt2 = 0.70710678118654752440;

// 2x2 unitary, row-major.
struct Gate {
  std::array<Amp, 4> m{};

  Amp at(int row, int col) const { return m[static_cast<std::size_t>(row * 2 + col)]; }

  // Max-norm of G*G^dagger - I.
  double unitarity_defect() const;
};

// Matrix product outer * inner; `inner` acts on the state first.
Gate compose(const Gate& outer, const Gate& inner);

struct GateSet {
  Gate id;         // [[1,0],[0,1]]
  Gate sigma_x;    // [[0,1],[1,0]]
  Gate i_sigma_y;  // [[0,1],[-1,0]]
  Gate sigma_z;    // [[1,0],[0,-1]]
  Gate hadamard;   // (1/sqrt2)[[1,1],[1,-1]]
};

// The five named single-qubit operations used throughout the protocols.
const GateSet& gate_constants();

enum class BellLabel { PhiPlus = 0, PhiMinus = 1, PsiPlus = 2, PsiMinus = 3 };

// Normalized complex amplitude vector over 1..8 qubits. Index i encodes the
// basis ket |b_{k-1}...b_0> where the island's first qubit is the most
// significant bit.
class StateVector {
 public:
  StateVector(int num_qubits, std::vector<Amp> amps);

  static StateVector basis_ket(int num_qubits, std::uint64_t index);

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  const std::vector<Amp>& amps() const { return amps_; }
  Amp amp(std::size_t i) const { return amps_[i]; }
  double norm() const;

  bool operator==(const StateVector&) const = default;

 private:
  int num_qubits_;
  std::vector<Amp> amps_;
};

// <a|b>, conjugate-linear in the first argument.
Amp inner_product(const StateVector& a, const StateVector& b);

// True iff there is a unit scalar c with ||a - c*b|| <= tol. The candidate c
// is read off the largest-magnitude component of b.
bool equal_up_to_global_phase(const StateVector& a, const StateVector& b, double tol);

// min over unit c of ||a - c*b|| for unit vectors: sqrt(2 - 2|<a|b>|).
double phase_distance(const StateVector& a, const StateVector& b);

enum class BasisKind { Bell, Eve, Custom };

// Four orthonormal two-qubit states; the projective measurement outcomes of
// measure_pair_in_basis are indices into `vectors`.
struct FourStateBasis {
  BasisKind kind = BasisKind::Custom;
  std::array<StateVector, 4> vectors;

  // Max-norm of the Gram matrix minus identity.
  double orthonormality_defect() const;
};

struct QubitId {
  std::uint64_t value = 0;
  friend constexpr auto operator<=>(QubitId, QubitId) = default;
};

// Owns all live qubits and the session's random stream. Single-threaded;
// distinct Heaps are fully independent.
class Heap {
 public:
  static constexpr int kMaxIslandQubits = 8;

  explicit Heap(std::uint64_t seed) : rng_(seed) {}

  // Fresh single-qubit island in |bit>.
  QubitId new_qubit(int bit);

  // Fresh two-qubit island in the named Bell state; the first id is particle 1.
  std::pair<QubitId, QubitId> new_epr_pair(BellLabel which);

  void apply_gate(QubitId q, const Gate& g);

  // Born-rule sample in the computational basis; collapses the island,
  // removes q and renormalizes the survivors.
  int measure_computational(QubitId q);

  // Projective measurement of (q1, q2) onto the four basis vectors, taken in
  // the (q1, q2) qubit order regardless of island layout. Merges islands if
  // needed, removes both qubits, and leaves any residual qubits in the
  // renormalized post-measurement state. Returns the outcome index 0..3.
  int measure_pair_in_basis(QubitId q1, QubitId q2, const FourStateBasis& basis);

  bool is_live(QubitId q) const;
  std::size_t live_count() const;
  std::size_t island_count() const { return islands_.size(); }
  std::vector<QubitId> island_members(QubitId q) const;
  StateVector island_state(QubitId q) const;

  // Single-qubit density matrix (row-major 2x2) after tracing out the rest
  // of q's island.
  std::array<Amp, 4> reduced_density(QubitId q) const;

  Rng& rng() { return rng_; }

 private:
  struct Island {
    std::vector<QubitId> qubits;
    std::vector<Amp> amps;  // 2^qubits.size(); first qubit = most significant bit
  };

  std::size_t index_of(QubitId q) const;
  int position_of(const Island& island, QubitId q) const;
  // Tensor product with `a`'s qubits first; returns the merged island index.
  std::size_t merge(std::size_t a, std::size_t b);
  void drop_island(std::size_t idx);
  void remove_qubit_entry(QubitId q);

  std::vector<Island> islands_;
  std::unordered_map<std::uint64_t, std::size_t> where_;  // qubit value -> islands_ index
  std::uint64_t next_id_ = 1;
  Rng rng_;
};

}  // namespace tpqkd
