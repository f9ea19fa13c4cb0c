#include "tpqkd/adversary.hpp"

#include <stdexcept>

#include "tpqkd/dense_coding.hpp"

namespace tpqkd {

void InterceptResendAdversary::tap_alice_to_bob(Heap& heap, std::vector<QubitId>& qubits) {
  observed_ = BitString(qubits.size());
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    const int bit = heap.measure_computational(qubits[i]);
    observed_.set(i, bit);
    qubits[i] = heap.new_qubit(bit);
  }
}

std::optional<KeyGuess> InterceptResendAdversary::key_guess() const {
  if (observed_.empty()) return std::nullopt;
  return KeyGuess{observed_, std::nullopt};
}

void DenseCodingAdversary::tap_center_to_alice(Heap& heap, std::vector<QubitId>& qubits) {
  if (substituted_) throw std::logic_error("DenseCodingAdversary: one session per instance");
  substituted_ = true;
  state_.stored_legal = qubits;
  state_.fake_halves.reserve(qubits.size());
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    auto [to_alice, kept] = heap.new_epr_pair(BellLabel::PsiMinus);
    qubits[i] = to_alice;
    state_.fake_halves.push_back(kept);
  }
}

void DenseCodingAdversary::tap_alice_to_bob(Heap& heap, std::vector<QubitId>& qubits) {
  if (!substituted_ || qubits.size() != state_.fake_halves.size())
    throw std::logic_error("DenseCodingAdversary: substitution did not happen");
  state_.outcomes.reserve(qubits.size());
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    const int outcome = heap.measure_pair_in_basis(qubits[i], state_.fake_halves[i], eve_basis());
    state_.outcomes.push_back(outcome);
    heap.apply_gate(state_.stored_legal[i], attack_replay_gate(outcome));
  }
  auto [key_hash, b1] = eve_extract(state_.outcomes);
  state_.inferred_key_hash = std::move(key_hash);
  state_.inferred_b1 = std::move(b1);
  qubits = state_.stored_legal;  // forward the genuine sequence to Bob
}

std::optional<KeyGuess> DenseCodingAdversary::key_guess() const {
  if (state_.outcomes.empty()) return std::nullopt;
  return KeyGuess{state_.inferred_key_hash, state_.inferred_b1};
}

std::pair<BitString, BitString> eve_extract(const std::vector<int>& outcomes) {
  BitString key_hash(outcomes.size());
  BitString b1(outcomes.size());
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const TwoBits bits = attack_decode(outcomes[i]);
    key_hash.set(i, bits.hi);
    b1.set(i, bits.lo);
  }
  return {key_hash, b1};
}

std::unique_ptr<Adversary> make_adversary(AdversaryKind kind) {
  switch (kind) {
    case AdversaryKind::None: return nullptr;
    case AdversaryKind::PassiveListen: return std::make_unique<PassiveListenAdversary>();
    case AdversaryKind::InterceptResend: return std::make_unique<InterceptResendAdversary>();
    case AdversaryKind::DenseCoding: return std::make_unique<DenseCodingAdversary>();
  }
  throw std::invalid_argument("make_adversary: bad kind");
}

AttackReport build_report(const SessionTranscript& transcript, const Adversary* adversary,
                          double disturbance) {
  AttackReport report;
  report.detected = transcript.verdict == Verdict::Reject;
  report.disturbance = disturbance;
  if (!adversary) return report;

  const std::optional<KeyGuess> guess = adversary->key_guess();
  if (!guess) return report;

  const std::size_t n = transcript.key_hash.size();
  if (guess->key_hash.size() == n) {
    report.key_bit_accuracy =
        1.0 - static_cast<double>(guess->key_hash.hamming_distance(transcript.key_hash)) /
                  static_cast<double>(n);
    const std::size_t u = transcript.key.size();
    report.key_exact_match = guess->key_hash.slice(0, u) == transcript.key;
  }
  if (guess->b1 && guess->b1->size() == n) {
    report.b1_bit_accuracy =
        1.0 - static_cast<double>(guess->b1->hamming_distance(transcript.b1)) /
                  static_cast<double>(n);
  }
  return report;
}

}  // namespace tpqkd
