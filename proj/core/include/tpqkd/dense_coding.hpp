#pragma once

// Named measurement bases and the dense-coding encode/decode maps: two
// classical bits ride on one transmitted half of an entangled pair via a
// local unitary, and a joint measurement recovers them. The Eve basis is the
// analogous construction seeded from |Psi->, which distinguishes the four
// combined key/basis encodings in one shot.

#include "tpqkd/qsim.hpp"

namespace tpqkd {

struct TwoBits {
  int hi = 0;  // key / message bit
  int lo = 0;  // basis / second bit
  bool operator==(const TwoBits&) const = default;
};

// {Phi+, Phi-, Psi+, Psi-}; indices match BellLabel.
const FourStateBasis& bell_basis();

// {Psi-, Phi+, Omega, Gamma} with
//   Omega = (1/2)(|00> - |01> - |10> - |11>)
//   Gamma = (1/2)(|00> + |01> + |10> - |11>)
const FourStateBasis& eve_basis();

enum class EveOutcome { PsiMinus = 0, PhiPlus = 1, Omega = 2, Gamma = 3 };

// Message -> local unitary: 00->I, 01->sigma_x, 10->i*sigma_y, 11->sigma_z.
Gate dense_encode(TwoBits msg);

// Bell outcome -> message, for pairs prepared in Phi+.
TwoBits dense_decode(BellLabel outcome);

// Eve-basis outcome -> (key bit, basis bit):
//   Psi- -> (0,0), Phi+ -> (1,0), Omega -> (0,1), Gamma -> (1,1).
TwoBits attack_decode(int eve_outcome);

// Eve-basis outcome -> the unitary that reproduces the sender's combined
// operation: Psi- -> I, Phi+ -> i*sigma_y, Omega -> H, Gamma -> H*i*sigma_y.
Gate attack_replay_gate(int eve_outcome);

}  // namespace tpqkd
