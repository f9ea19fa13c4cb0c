#include "tpqkd/qsim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tpqkd {

namespace {

bool finite(Amp a) { return std::isfinite(a.real()) && std::isfinite(a.imag()); }

// Drops bit `b` from `x`, closing the gap.
std::uint64_t remove_bit(std::uint64_t x, int b) {
  const std::uint64_t low = x & ((std::uint64_t{1} << b) - 1);
  return ((x >> (b + 1)) << b) | low;
}

}  // namespace

double Gate::unitarity_defect() const {
  // G * G^dagger - I
  double worst = 0.0;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      Amp e = at(r, 0) * std::conj(at(c, 0)) + at(r, 1) * std::conj(at(c, 1));
      if (r == c) e -= 1.0;
      worst = std::max(worst, std::abs(e));
    }
  }
  return worst;
}

Gate compose(const Gate& outer, const Gate& inner) {
  Gate out;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      out.m[static_cast<std::size_t>(r * 2 + c)] =
          outer.at(r, 0) * inner.at(0, c) + outer.at(r, 1) * inner.at(1, c);
  return out;
}

const GateSet& gate_constants() {
  static const GateSet set{
      .id = Gate{{1, 0, 0, 1}},
      .sigma_x = Gate{{0, 1, 1, 0}},
      .i_sigma_y = Gate{{0, 1, -1, 0}},
      .sigma_z = Gate{{1, 0, 0, -1}},
      .hadamard = Gate{{kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2}},
  };
  return set;
}

StateVector::StateVector(int num_qubits, std::vector<Amp> amps)
    : num_qubits_(num_qubits), amps_(std::move(amps)) {
  if (num_qubits_ < 1 || num_qubits_ > Heap::kMaxIslandQubits)
    throw std::invalid_argument("StateVector: qubit count out of range");
  if (amps_.size() != (std::size_t{1} << num_qubits_))
    throw std::invalid_argument("StateVector: amplitude count != 2^num_qubits");
  for (Amp a : amps_)
    if (!finite(a)) throw std::invalid_argument("StateVector: non-finite amplitude");
}

StateVector StateVector::basis_ket(int num_qubits, std::uint64_t index) {
  std::vector<Amp> amps(std::size_t{1} << num_qubits, Amp{0, 0});
  amps.at(index) = 1.0;
  return StateVector(num_qubits, std::move(amps));
}

double StateVector::norm() const {
  double s = 0.0;
  for (Amp a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

Amp inner_product(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("inner_product: dimension mismatch");
  Amp s{0, 0};
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a.amp(i)) * b.amp(i);
  return s;
}

bool equal_up_to_global_phase(const StateVector& a, const StateVector& b, double tol) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("equal_up_to_global_phase: dimension mismatch");
  std::size_t ref = 0;
  for (std::size_t i = 1; i < b.dim(); ++i)
    if (std::abs(b.amp(i)) > std::abs(b.amp(ref))) ref = i;
  Amp c{1, 0};
  if (std::abs(b.amp(ref)) > 0 && std::abs(a.amp(ref)) > 0) {
    c = a.amp(ref) / b.amp(ref);
    c /= std::abs(c);
  }
  double diff = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) diff += std::norm(a.amp(i) - c * b.amp(i));
  return std::sqrt(diff) <= tol;
}

double phase_distance(const StateVector& a, const StateVector& b) {
  const double overlap = std::abs(inner_product(a, b));
  return std::sqrt(std::max(0.0, 2.0 - 2.0 * overlap));
}

double FourStateBasis::orthonormality_defect() const {
  double worst = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      Amp g = inner_product(vectors[i], vectors[j]);
      if (i == j) g -= 1.0;
      worst = std::max(worst, std::abs(g));
    }
  }
  return worst;
}

QubitId Heap::new_qubit(int bit) {
  if (bit != 0 && bit != 1) throw std::invalid_argument("new_qubit: bit must be 0 or 1");
  QubitId id{next_id_++};
  Island island;
  island.qubits = {id};
  island.amps = {Amp{bit == 0 ? 1.0 : 0.0, 0.0}, Amp{bit == 1 ? 1.0 : 0.0, 0.0}};
  where_[id.value] = islands_.size();
  islands_.push_back(std::move(island));
  return id;
}

std::pair<QubitId, QubitId> Heap::new_epr_pair(BellLabel which) {
  QubitId first{next_id_++};
  QubitId second{next_id_++};
  const double d = kInvSqrt2;
  Island island;
  island.qubits = {first, second};
  switch (which) {
    case BellLabel::PhiPlus:  island.amps = {d, 0, 0, d};  break;
    case BellLabel::PhiMinus: island.amps = {d, 0, 0, -d}; break;
    case BellLabel::PsiPlus:  island.amps = {0, d, d, 0};  break;
    case BellLabel::PsiMinus: island.amps = {0, d, -d, 0}; break;
  }
  where_[first.value] = islands_.size();
  where_[second.value] = islands_.size();
  islands_.push_back(std::move(island));
  return {first, second};
}

std::size_t Heap::index_of(QubitId q) const {
  auto it = where_.find(q.value);
  if (it == where_.end()) throw std::invalid_argument("Heap: unknown or measured qubit");
  return it->second;
}

int Heap::position_of(const Island& island, QubitId q) const {
  for (std::size_t p = 0; p < island.qubits.size(); ++p)
    if (island.qubits[p] == q) return static_cast<int>(p);
  throw std::logic_error("Heap: qubit index out of sync");
}

void Heap::apply_gate(QubitId q, const Gate& g) {
  Island& island = islands_[index_of(q)];
  const int n = static_cast<int>(island.qubits.size());
  const int bit = n - 1 - position_of(island, q);
  const std::uint64_t stride = std::uint64_t{1} << bit;
  const std::uint64_t dim = island.amps.size();
  for (std::uint64_t i = 0; i < dim; ++i) {
    if (i & stride) continue;
    const Amp a0 = island.amps[i];
    const Amp a1 = island.amps[i | stride];
    island.amps[i] = g.m[0] * a0 + g.m[1] * a1;
    island.amps[i | stride] = g.m[2] * a0 + g.m[3] * a1;
  }
}

int Heap::measure_computational(QubitId q) {
  const std::size_t idx = index_of(q);
  Island& island = islands_[idx];
  const int n = static_cast<int>(island.qubits.size());
  const int bit = n - 1 - position_of(island, q);
  const std::uint64_t stride = std::uint64_t{1} << bit;

  double p0 = 0.0, p1 = 0.0;
  for (std::uint64_t i = 0; i < island.amps.size(); ++i)
    ((i & stride) ? p1 : p0) += std::norm(island.amps[i]);

  const double u = rng_.next_double();
  const int outcome = (u < p1) ? 1 : 0;
  const double weight = outcome ? p1 : p0;

  remove_qubit_entry(q);
  if (n == 1) {
    drop_island(idx);
    return outcome;
  }

  const double scale = 1.0 / std::sqrt(weight);
  std::vector<Amp> next(island.amps.size() / 2);
  for (std::uint64_t i = 0; i < island.amps.size(); ++i) {
    if (static_cast<int>((i >> bit) & 1) != outcome) continue;
    next[remove_bit(i, bit)] = island.amps[i] * scale;
  }
  island.amps = std::move(next);
  island.qubits.erase(island.qubits.begin() + position_of(island, q));
  return outcome;
}

int Heap::measure_pair_in_basis(QubitId q1, QubitId q2, const FourStateBasis& basis) {
  if (q1 == q2) throw std::invalid_argument("measure_pair_in_basis: identical qubits");
  for (const StateVector& v : basis.vectors)
    if (v.dim() != 4) throw std::invalid_argument("measure_pair_in_basis: basis must be two-qubit");
  if (basis.orthonormality_defect() > 1e-9)
    throw std::invalid_argument("measure_pair_in_basis: basis not orthonormal");

  std::size_t i1 = index_of(q1);
  const std::size_t i2 = index_of(q2);
  if (i1 != i2) i1 = merge(i1, i2);
  Island& island = islands_[i1];

  const int n = static_cast<int>(island.qubits.size());
  const int b1 = n - 1 - position_of(island, q1);
  const int b2 = n - 1 - position_of(island, q2);
  const int b_hi = std::max(b1, b2);
  const int b_lo = std::min(b1, b2);

  // Residual amplitudes conditioned on each outcome, indexed over the
  // remaining qubits in island order.
  const std::size_t rdim = island.amps.size() / 4;
  std::array<std::vector<Amp>, 4> cond;
  for (auto& v : cond) v.assign(rdim, Amp{0, 0});
  for (std::uint64_t i = 0; i < island.amps.size(); ++i) {
    const int v1 = static_cast<int>((i >> b1) & 1);
    const int v2 = static_cast<int>((i >> b2) & 1);
    const std::size_t r = remove_bit(remove_bit(i, b_hi), b_lo);
    const std::size_t component = static_cast<std::size_t>(v1 * 2 + v2);
    for (int k = 0; k < 4; ++k)
      cond[static_cast<std::size_t>(k)][r] +=
          std::conj(basis.vectors[static_cast<std::size_t>(k)].amp(component)) * island.amps[i];
  }

  std::array<double, 4> prob{};
  for (int k = 0; k < 4; ++k)
    for (const Amp& a : cond[static_cast<std::size_t>(k)]) prob[static_cast<std::size_t>(k)] += std::norm(a);

  const double u = rng_.next_double();
  int outcome = 3;
  double cum = 0.0;
  for (int k = 0; k < 4; ++k) {
    cum += prob[static_cast<std::size_t>(k)];
    if (u < cum) {
      outcome = k;
      break;
    }
  }

  remove_qubit_entry(q1);
  remove_qubit_entry(q2);
  if (n == 2) {
    drop_island(i1);
    return outcome;
  }

  const double scale = 1.0 / std::sqrt(prob[static_cast<std::size_t>(outcome)]);
  island.amps = std::move(cond[static_cast<std::size_t>(outcome)]);
  for (Amp& a : island.amps) a *= scale;
  island.qubits.erase(island.qubits.begin() + position_of(island, q1));
  island.qubits.erase(island.qubits.begin() + position_of(island, q2));
  return outcome;
}

bool Heap::is_live(QubitId q) const { return where_.contains(q.value); }

std::size_t Heap::live_count() const { return where_.size(); }

std::vector<QubitId> Heap::island_members(QubitId q) const {
  return islands_[index_of(q)].qubits;
}

StateVector Heap::island_state(QubitId q) const {
  const Island& island = islands_[index_of(q)];
  return StateVector(static_cast<int>(island.qubits.size()), island.amps);
}

std::array<Amp, 4> Heap::reduced_density(QubitId q) const {
  const Island& island = islands_[index_of(q)];
  const int n = static_cast<int>(island.qubits.size());
  const int bit = n - 1 - position_of(island, q);
  const std::uint64_t stride = std::uint64_t{1} << bit;
  std::array<Amp, 4> rho{};
  for (std::uint64_t i = 0; i < island.amps.size(); ++i) {
    if (i & stride) continue;
    const Amp a0 = island.amps[i];
    const Amp a1 = island.amps[i | stride];
    rho[0] += a0 * std::conj(a0);
    rho[1] += a0 * std::conj(a1);
    rho[2] += a1 * std::conj(a0);
    rho[3] += a1 * std::conj(a1);
  }
  return rho;
}

std::size_t Heap::merge(std::size_t a, std::size_t b) {
  Island& ia = islands_[a];
  Island& ib = islands_[b];
  const std::size_t na = ia.qubits.size();
  const std::size_t nb = ib.qubits.size();
  if (na + nb > static_cast<std::size_t>(kMaxIslandQubits))
    throw std::length_error("Heap: merged island would exceed the qubit cap");

  Island merged;
  merged.qubits.reserve(na + nb);
  merged.qubits.insert(merged.qubits.end(), ia.qubits.begin(), ia.qubits.end());
  merged.qubits.insert(merged.qubits.end(), ib.qubits.begin(), ib.qubits.end());
  merged.amps.resize(ia.amps.size() * ib.amps.size());
  for (std::size_t x = 0; x < ia.amps.size(); ++x)
    for (std::size_t y = 0; y < ib.amps.size(); ++y)
      merged.amps[(x << nb) | y] = ia.amps[x] * ib.amps[y];

  // Replace a, drop b; swap-erase keeps the bookkeeping O(island size).
  const std::uint64_t anchor = merged.qubits.front().value;
  islands_[a] = std::move(merged);
  for (QubitId q : islands_[a].qubits) where_[q.value] = a;
  drop_island(b);
  return where_[anchor];
}

void Heap::drop_island(std::size_t idx) {
  const std::size_t last = islands_.size() - 1;
  if (idx != last) {
    islands_[idx] = std::move(islands_[last]);
    for (QubitId q : islands_[idx].qubits) where_[q.value] = idx;
  }
  islands_.pop_back();
}

void Heap::remove_qubit_entry(QubitId q) { where_.erase(q.value); }

}  // namespace tpqkd
