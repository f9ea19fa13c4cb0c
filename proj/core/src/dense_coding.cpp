#include "tpqkd/dense_coding.hpp"

#include <stdexcept>

namespace tpqkd {

const FourStateBasis& bell_basis() {
  const double d = kInvSqrt2;
  static const FourStateBasis basis{
      .kind = BasisKind::Bell,
      .vectors = {StateVector(2, {d, 0, 0, d}),    // Phi+
                  StateVector(2, {d, 0, 0, -d}),   // Phi-
                  StateVector(2, {0, d, d, 0}),    // Psi+
                  StateVector(2, {0, d, -d, 0})},  // Psi-
  };
  return basis;
}

const FourStateBasis& eve_basis() {
  const double d = kInvSqrt2;
  static const FourStateBasis basis{
      .kind = BasisKind::Eve,
      .vectors = {StateVector(2, {0, d, -d, 0}),            // Psi-
                  StateVector(2, {d, 0, 0, d}),             // Phi+
                  StateVector(2, {0.5, -0.5, -0.5, -0.5}),  // Omega
                  StateVector(2, {0.5, 0.5, 0.5, -0.5})},   // Gamma
  };
  return basis;
}

Gate dense_encode(TwoBits msg) {
  const GateSet& g = gate_constants();
  switch (msg.hi * 2 + msg.lo) {
    case 0: return g.id;
    case 1: return g.sigma_x;
    case 2: return g.i_sigma_y;
    case 3: return g.sigma_z;
    default: throw std::invalid_argument("dense_encode: bits must be 0 or 1");
  }
}

TwoBits dense_decode(BellLabel outcome) {
  switch (outcome) {
    case BellLabel::PhiPlus:  return {0, 0};
    case BellLabel::PsiPlus:  return {0, 1};
    case BellLabel::PsiMinus: return {1, 0};
    case BellLabel::PhiMinus: return {1, 1};
  }
  throw std::invalid_argument("dense_decode: bad label");
}

TwoBits attack_decode(int eve_outcome) {
  switch (eve_outcome) {
    case 0: return {0, 0};  // Psi-
    case 1: return {1, 0};  // Phi+
    case 2: return {0, 1};  // Omega
    case 3: return {1, 1};  // Gamma
    default: throw std::invalid_argument("attack_decode: outcome must be 0..3");
  }
}

Gate attack_replay_gate(int eve_outcome) {
  const GateSet& g = gate_constants();
  switch (eve_outcome) {
    case 0: return g.id;
    case 1: return g.i_sigma_y;
    case 2: return g.hadamard;
    case 3: return compose(g.hadamard, g.i_sigma_y);
    default: throw std::invalid_argument("attack_replay_gate: outcome must be 0..3");
  }
}

}  // namespace tpqkd
