#include "tpqkd/session.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tpqkd {

namespace {

// What the honest channel would deliver to Bob at position i: the combined
// coding operation applied to |0>. Alice's optional pre-encoding shuffle
// only reorders identical |0> qubits, so it does not show up here.
StateVector counterfactual_state(int key_bit, int basis_bit) {
  const GateSet& g = gate_constants();
  const Gate op = compose(basis_bit ? g.hadamard : g.id, key_bit ? g.i_sigma_y : g.id);
  return StateVector(1, {op.at(0, 0), op.at(1, 0)});
}

// Up-to-phase deviation of the delivered qubit from the honest state. For a
// pure single-qubit island this is sqrt(2 - 2|<psi|phi>|); if the qubit is
// still entangled it generalizes through the fidelity <psi|rho|psi>.
double delivered_deviation(const Heap& heap, QubitId q, const StateVector& honest) {
  if (heap.island_members(q).size() == 1) return phase_distance(honest, heap.island_state(q));
  const std::array<Amp, 4> rho = heap.reduced_density(q);
  Amp f{0, 0};
  const Amp c0 = honest.amp(0), c1 = honest.amp(1);
  f += std::conj(c0) * rho[0] * c0 + std::conj(c0) * rho[1] * c1;
  f += std::conj(c1) * rho[2] * c0 + std::conj(c1) * rho[3] * c1;
  const double fidelity = std::max(0.0, f.real());
  return std::sqrt(std::max(0.0, 2.0 - 2.0 * std::sqrt(fidelity)));
}

void post_tap_check(const Heap& heap, const std::vector<QubitId>& qubits, std::size_t n) {
  if (qubits.size() != n) throw std::logic_error("run_session: tap changed the sequence length");
  for (QubitId q : qubits)
    if (!heap.is_live(q)) throw std::logic_error("run_session: tap forwarded a dead qubit");
}

void append_and_notify(SessionTranscript& transcript, Adversary* adversary, BoardRecord record) {
  transcript.board.append(std::move(record));
  if (adversary) adversary->observe_board(transcript.board);
}

}  // namespace

SessionResult run_session(const ProtocolParams& params, Adversary* adversary) {
  params.validate();
  const std::size_t n = static_cast<std::size_t>(params.n);

  Heap heap(params.base_seed);
  SessionTranscript transcript;
  transcript.params = params;

  // Party randomness, in a fixed draw order so that a countermeasure toggle
  // or an adversary cannot shift anyone else's strings. The candidate
  // pre-encoding shuffle is drawn even when unused for the same reason.
  transcript.key = BitString::random(heap.rng(), static_cast<std::size_t>(params.u));
  transcript.hash = checksum(transcript.key, params.m);
  transcript.key_hash = transcript.key.concat(transcript.hash);
  transcript.b1 = BitString::random(heap.rng(), n);
  if (params.variant == Variant::Qkdp1) {
    transcript.b2 = BitString::random(heap.rng(), n);
    transcript.r2 = BitString::random(heap.rng(), n);
  } else {
    transcript.bob_shuffle = Permutation::random(heap.rng(), n);
  }
  Permutation alice_shuffle_draw = Permutation::random(heap.rng(), n);
  if (params.countermeasure_shuffle) transcript.alice_shuffle = alice_shuffle_draw;

  // The center prepares n qubits |0> and sends them to Alice.
  std::vector<QubitId> qubits;
  qubits.reserve(n);
  for (std::size_t i = 0; i < n; ++i) qubits.push_back(heap.new_qubit(0));
  if (adversary) {
    adversary->tap_center_to_alice(heap, qubits);
    post_tap_check(heap, qubits, n);
  }

  // Alice encodes K||h and B1 (shuffling first under the countermeasure).
  alice_encode(heap, qubits, transcript.key_hash, transcript.b1,
               transcript.alice_shuffle ? &*transcript.alice_shuffle : nullptr);
  if (adversary) {
    adversary->tap_alice_to_bob(heap, qubits);
    post_tap_check(heap, qubits, n);
  }

  // Counterfactual check at Bob's doorstep: how far is each delivered qubit
  // from the state the honest run would have produced with the same strings?
  double disturbance = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const StateVector honest = counterfactual_state(transcript.key_hash.bit(i), transcript.b1.bit(i));
    disturbance = std::max(disturbance, delivered_deviation(heap, qubits[i], honest));
  }

  FinalizeResult fin;
  if (params.variant == Variant::Qkdp1) {
    bob_encode_qkdp1(heap, qubits, transcript.r2, transcript.b2);
    if (adversary) {
      adversary->tap_bob_to_center(heap, qubits);
      post_tap_check(heap, qubits, n);
    }
    append_and_notify(transcript, adversary, {"center", "ack", {}, ""});
    append_and_notify(transcript, adversary, {"alice", "B1", transcript.b1, ""});
    append_and_notify(transcript, adversary, {"bob", "B2", transcript.b2, ""});
    transcript.cprime = center_recover_and_measure(heap, qubits, transcript.b1 ^ transcript.b2);
    append_and_notify(transcript, adversary, {"center", "C'", transcript.cprime, ""});
    fin = bob_finalize_qkdp1(transcript.cprime, transcript.r2, params.u, params.m);
  } else {
    append_and_notify(transcript, adversary, {"alice", "B1", transcript.b1, ""});
    qubits = bob_recover_shuffle_qkdp2(heap, std::move(qubits), transcript.b1,
                                       *transcript.bob_shuffle);
    if (adversary) {
      adversary->tap_bob_to_center(heap, qubits);
      post_tap_check(heap, qubits, n);
    }
    transcript.cprime = center_recover_and_measure(heap, qubits, BitString(n));
    append_and_notify(transcript, adversary, {"center", "C'", transcript.cprime, ""});
    fin = bob_finalize_qkdp2(transcript.cprime, *transcript.bob_shuffle, params.u, params.m);
  }

  transcript.verdict = fin.verdict;
  transcript.bob_key_hash = fin.key_hash;
  transcript.bob_key = fin.key;
  append_and_notify(transcript, adversary,
                    {"bob", "result", {}, fin.verdict == Verdict::Accept ? "accept" : "reject"});

  AttackReport report = build_report(transcript, adversary, disturbance);
  return SessionResult{std::move(transcript), std::move(report)};
}

}  // namespace tpqkd
