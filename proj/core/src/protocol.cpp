#include "tpqkd/protocol.hpp"

#include <stdexcept>

namespace tpqkd {

void ProtocolParams::validate() const {
  if (n < 2 || n > 4096) throw std::invalid_argument("params: n must be in [2, 4096]");
  if (u < 1) throw std::invalid_argument("params: u must be >= 1");
  if (m < 1) throw std::invalid_argument("params: m must be >= 1");
  if (m > 64) throw std::invalid_argument("params: m must be <= 64");
  if (u + m != n) throw std::invalid_argument("params: u + m must equal n");
}

BitString checksum(const BitString& key, int m) {
  if (m < 1 || m > 64) throw std::invalid_argument("checksum: m must be in [1, 64]");

  std::vector<std::uint8_t> packed((key.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < key.size(); ++i)
    packed[i / 8] |= static_cast<std::uint8_t>(key.bit(i) << (7 - i % 8));

  std::uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a 64
  for (std::uint8_t byte : packed) {
    h ^= byte;
    h *= 0x100000001b3ull;
  }

  BitString out(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) out.set(static_cast<std::size_t>(i), static_cast<int>((h >> (m - 1 - i)) & 1));
  return out;
}

namespace {

// The combined per-qubit coding operation: the key gate first, the basis
// gate on top of it.
Gate coding_gate(int key_bit, int basis_bit) {
  const GateSet& g = gate_constants();
  return compose(basis_bit ? g.hadamard : g.id, key_bit ? g.i_sigma_y : g.id);
}

void check_lengths(std::size_t qubits, std::size_t a, std::size_t b, const char* where) {
  if (qubits != a || qubits != b) throw std::invalid_argument(std::string(where) + ": length mismatch");
}

}  // namespace

void alice_encode(Heap& heap, std::vector<QubitId>& qubits, const BitString& key_hash,
                  const BitString& b1, const Permutation* shuffle) {
  check_lengths(qubits.size(), key_hash.size(), b1.size(), "alice_encode");
  if (shuffle) {
    if (shuffle->size() != qubits.size())
      throw std::invalid_argument("alice_encode: shuffle size mismatch");
    qubits = shuffle->apply(qubits);
  }
  for (std::size_t i = 0; i < qubits.size(); ++i)
    heap.apply_gate(qubits[i], coding_gate(key_hash.bit(i), b1.bit(i)));
}

void bob_encode_qkdp1(Heap& heap, const std::vector<QubitId>& qubits, const BitString& r2,
                      const BitString& b2) {
  check_lengths(qubits.size(), r2.size(), b2.size(), "bob_encode_qkdp1");
  for (std::size_t i = 0; i < qubits.size(); ++i)
    heap.apply_gate(qubits[i], coding_gate(r2.bit(i), b2.bit(i)));
}

BitString center_recover_and_measure(Heap& heap, const std::vector<QubitId>& qubits,
                                     const BitString& basis_correction) {
  if (qubits.size() != basis_correction.size())
    throw std::invalid_argument("center_recover_and_measure: length mismatch");
  const GateSet& g = gate_constants();
  BitString out(qubits.size());
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    if (basis_correction.bit(i)) heap.apply_gate(qubits[i], g.hadamard);
    out.set(i, heap.measure_computational(qubits[i]));
  }
  return out;
}

namespace {

FinalizeResult verify_split(const BitString& key_hash, int u, int m) {
  FinalizeResult result;
  result.key_hash = key_hash;
  result.key = key_hash.slice(0, static_cast<std::size_t>(u));
  const BitString claimed = key_hash.slice(static_cast<std::size_t>(u), static_cast<std::size_t>(m));
  result.verdict = (checksum(result.key, m) == claimed) ? Verdict::Accept : Verdict::Reject;
  return result;
}

}  // namespace

FinalizeResult bob_finalize_qkdp1(const BitString& cprime, const BitString& r2, int u, int m) {
  if (cprime.size() != r2.size() || cprime.size() != static_cast<std::size_t>(u + m))
    throw std::invalid_argument("bob_finalize_qkdp1: length mismatch");
  return verify_split(r2 ^ cprime, u, m);
}

std::vector<QubitId> bob_recover_shuffle_qkdp2(Heap& heap, std::vector<QubitId> qubits,
                                               const BitString& b1, const Permutation& shuffle) {
  if (qubits.size() != b1.size() || qubits.size() != shuffle.size())
    throw std::invalid_argument("bob_recover_shuffle_qkdp2: length mismatch");
  const GateSet& g = gate_constants();
  for (std::size_t i = 0; i < qubits.size(); ++i)
    if (b1.bit(i)) heap.apply_gate(qubits[i], g.hadamard);
  return shuffle.apply(qubits);
}

FinalizeResult bob_finalize_qkdp2(const BitString& cprime, const Permutation& shuffle, int u,
                                  int m) {
  if (cprime.size() != shuffle.size() || cprime.size() != static_cast<std::size_t>(u + m))
    throw std::invalid_argument("bob_finalize_qkdp2: length mismatch");
  return verify_split(shuffle.inverse().apply(cprime), u, m);
}

}  // namespace tpqkd
