#pragma once

// State machines for the two three-party key distribution protocols.
//
// Variant 1 (honest center): the center prepares n qubits |0> and sends them
// to Alice; Alice encodes the session key K and its checksum h with I/i*sigma_y
// and hides the basis with I/H under a random string B1; Bob re-encodes with
// his own random R2/B2 and returns the sequence; after B1 and B2 are
// disclosed the center undoes the basis masking, measures, and announces
// C' = R2 xor (K||h); Bob unmasks with R2 and accepts iff h = H(K).
//
// Variant 2 (untrusted center): same first two steps; Bob learns B1, undoes
// the basis masking himself, shuffles the qubit order with a private
// permutation and forwards the sequence; the center measures blind and
// announces the shuffled string, which only Bob can rearrange.
//
// The quantum channel is ideal. The classical board is listen-only: everyone
// (including an eavesdropper) can read it, nobody can rewrite it.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tpqkd/bits.hpp"
#include "tpqkd/qsim.hpp"

namespace tpqkd {

enum class Variant { Qkdp1, Qkdp2 };
enum class Verdict { Accept, Reject };

struct ProtocolParams {
  Variant variant = Variant::Qkdp1;
  int n = 64;  // qubits per session
  int u = 48;  // key bits
  int m = 16;  // checksum bits; u + m == n
  bool countermeasure_shuffle = false;  // Alice shuffles before encoding
  std::uint64_t base_seed = 0;

  void validate() const;  // throws std::invalid_argument
};

// m-bit checksum of a key: pack the bits MSB-first into bytes (zero-padding
// the last byte), run 64-bit FNV-1a over them, return the low m bits
// MSB-first. Fixed constants so every implementation reproduces it bit for
// bit. Requires 1 <= m <= 64.
BitString checksum(const BitString& key, int m);

struct BoardRecord {
  std::string sender;
  std::string label;
  BitString bits;
  std::string note;
  bool operator==(const BoardRecord&) const = default;
};

// Append-only public log; adversaries only ever see it by const reference.
class ClassicalBoard {
 public:
  void append(BoardRecord record) { records_.push_back(std::move(record)); }
  const std::vector<BoardRecord>& records() const { return records_; }
  bool operator==(const ClassicalBoard&) const = default;

 private:
  std::vector<BoardRecord> records_;
};

struct SessionTranscript {
  ProtocolParams params;
  BitString key;       // Alice's K (u bits)
  BitString hash;      // h = checksum(K, m)
  BitString key_hash;  // K || h
  BitString b1;
  BitString b2;  // variant 1 only
  BitString r2;  // variant 1 only
  std::optional<Permutation> alice_shuffle;  // countermeasure only
  std::optional<Permutation> bob_shuffle;    // variant 2 only
  ClassicalBoard board;
  BitString cprime;        // the center's announced measurement string
  BitString bob_key_hash;  // Bob's recovered K || h
  BitString bob_key;       // Bob's recovered K
  Verdict verdict = Verdict::Reject;
};

// Alice's coding step: optionally reorder the sequence by `shuffle`, then
// apply compose(H^{b1_i}, (i*sigma_y)^{key_hash_i}) to qubit i.
void alice_encode(Heap& heap, std::vector<QubitId>& qubits, const BitString& key_hash,
                  const BitString& b1, const Permutation* shuffle);

// Bob's variant-1 coding step: compose(H^{b2_i}, (i*sigma_y)^{r2_i}) on qubit i.
void bob_encode_qkdp1(Heap& heap, const std::vector<QubitId>& qubits, const BitString& r2,
                      const BitString& b2);

// Applies H to qubit i iff basis_correction_i = 1, then measures everything
// in the computational basis. Returns the outcome string C'.
BitString center_recover_and_measure(Heap& heap, const std::vector<QubitId>& qubits,
                                     const BitString& basis_correction);

struct FinalizeResult {
  Verdict verdict = Verdict::Reject;
  BitString key;       // recovered K
  BitString key_hash;  // recovered K || h
};

// Bob's variant-1 verification: K||h = R2 xor C', accept iff h = H(K).
FinalizeResult bob_finalize_qkdp1(const BitString& cprime, const BitString& r2, int u, int m);

// Bob's variant-2 recovery: H where b1_i = 1, then reorder by his private
// shuffle. Returns the sequence in transmission order.
std::vector<QubitId> bob_recover_shuffle_qkdp2(Heap& heap, std::vector<QubitId> qubits,
                                               const BitString& b1, const Permutation& shuffle);

// Bob's variant-2 verification: un-shuffle C', split, accept iff h = H(K).
FinalizeResult bob_finalize_qkdp2(const BitString& cprime, const Permutation& shuffle, int u,
                                  int m);

}  // namespace tpqkd
