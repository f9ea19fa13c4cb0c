#pragma once

// Pluggable eavesdropping strategies attached to the three quantum-channel
// taps (center->Alice, Alice->Bob, Bob->center). Each tap receives the
// in-flight qubit sequence by reference and may measure, replace or forward
// it; the classical board is observed read-only.
//
// DenseCoding is the entangled-substitution attack: Eve swaps the center's
// |0> qubits for halves of her own |Psi-> pairs, lets Alice encode on them,
// then reads both the key bit and the basis bit of every position with one
// collective measurement per pair and replays the identified operation onto
// the stored genuine qubits, so the channel Bob sees is exactly the honest
// one. InterceptResend is the naive baseline: it cannot distinguish the four
// nonorthogonal carrier states, so it disturbs them and gets caught by the
// checksum.

#include <memory>
#include <optional>
#include <vector>

#include "tpqkd/bits.hpp"
#include "tpqkd/protocol.hpp"
#include "tpqkd/qsim.hpp"

namespace tpqkd {

enum class AdversaryKind { None, PassiveListen, InterceptResend, DenseCoding };

struct AttackReport {
  double key_bit_accuracy = 0.0;  // over all n bits of K||h
  bool key_exact_match = false;   // the u key bits, exactly
  double b1_bit_accuracy = 0.0;
  bool detected = false;  // session verdict was Reject
  double disturbance = 0.0;  // max per-qubit up-to-phase deviation at Bob's doorstep
};

struct KeyGuess {
  BitString key_hash;
  std::optional<BitString> b1;
};

class Adversary {
 public:
  virtual ~Adversary() = default;
  virtual AdversaryKind kind() const = 0;

  virtual void tap_center_to_alice(Heap&, std::vector<QubitId>&) {}
  virtual void tap_alice_to_bob(Heap&, std::vector<QubitId>&) {}
  virtual void tap_bob_to_center(Heap&, std::vector<QubitId>&) {}

  // Called after every append to the public board.
  virtual void observe_board(const ClassicalBoard&) {}

  virtual std::optional<KeyGuess> key_guess() const { return std::nullopt; }
};

class PassiveListenAdversary final : public Adversary {
 public:
  AdversaryKind kind() const override { return AdversaryKind::PassiveListen; }
  void observe_board(const ClassicalBoard& board) override { log_ = board.records(); }
  const std::vector<BoardRecord>& overheard() const { return log_; }

 private:
  std::vector<BoardRecord> log_;
};

// Measures every transiting qubit in the computational basis and forwards a
// re-prepared copy of whatever it saw.
class InterceptResendAdversary final : public Adversary {
 public:
  AdversaryKind kind() const override { return AdversaryKind::InterceptResend; }
  void tap_alice_to_bob(Heap& heap, std::vector<QubitId>& qubits) override;
  const BitString& observed_bits() const { return observed_; }
  std::optional<KeyGuess> key_guess() const override;

 private:
  BitString observed_;
};

struct EveState {
  std::vector<QubitId> fake_halves;   // Eve's halves of the substituted pairs
  std::vector<QubitId> stored_legal;  // the intercepted genuine qubits
  std::vector<int> outcomes;          // collective-measurement outcomes, 0..3
  BitString inferred_key_hash;
  BitString inferred_b1;
};

class DenseCodingAdversary final : public Adversary {
 public:
  AdversaryKind kind() const override { return AdversaryKind::DenseCoding; }
  void tap_center_to_alice(Heap& heap, std::vector<QubitId>& qubits) override;
  void tap_alice_to_bob(Heap& heap, std::vector<QubitId>& qubits) override;
  std::optional<KeyGuess> key_guess() const override;
  const EveState& state() const { return state_; }

 private:
  EveState state_;
  bool substituted_ = false;
};

// Outcome list -> (inferred K||h, inferred B1), bitwise attack_decode.
std::pair<BitString, BitString> eve_extract(const std::vector<int>& outcomes);

// Returns nullptr for AdversaryKind::None.
std::unique_ptr<Adversary> make_adversary(AdversaryKind kind);

// Scores the adversary's guess against the transcript's ground truth.
AttackReport build_report(const SessionTranscript& transcript, const Adversary* adversary,
                          double disturbance);

}  // namespace tpqkd
