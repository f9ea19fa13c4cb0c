#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <set>
#include <vector>

#include "oracle.hpp"
#include "tpqkd/dense_coding.hpp"
#include "tpqkd/qsim.hpp"

using namespace tpqkd;

namespace {

constexpr double kD = kInvSqrt2;

bool amp_close(Amp a, Amp b, double tol = 1e-12) { return std::abs(a - b) <= tol; }

bool state_close(const StateVector& s, const std::vector<Amp>& expect, double tol = 1e-12) {
  if (s.dim() != expect.size()) return false;
  for (std::size_t i = 0; i < expect.size(); ++i)
    if (!amp_close(s.amp(i), expect[i], tol)) return false;
  return true;
}

// U3-style random unitary for property tests.
Gate random_gate(Rng& rng) {
  const double theta = rng.next_double() * 3.14159265358979323846;
  const double phi = rng.next_double() * 6.28318530717958647692;
  const double lam = rng.next_double() * 6.28318530717958647692;
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  const Amp i{0, 1};
  return Gate{{Amp{c, 0}, -std::exp(i * lam) * s, std::exp(i * phi) * s,
               std::exp(i * (phi + lam)) * c}};
}

}  // namespace

TEST_CASE("gate constants match the printed matrices and are unitary to 1e-12") {
  const GateSet& g = gate_constants();

  CHECK(amp_close(g.id.at(0, 0), 1.0));
  CHECK(amp_close(g.id.at(1, 1), 1.0));
  CHECK(amp_close(g.sigma_x.at(0, 1), 1.0));
  CHECK(amp_close(g.sigma_x.at(1, 0), 1.0));
  CHECK(amp_close(g.i_sigma_y.at(0, 1), 1.0));
  CHECK(amp_close(g.i_sigma_y.at(1, 0), -1.0));
  CHECK(amp_close(g.sigma_z.at(0, 0), 1.0));
  CHECK(amp_close(g.sigma_z.at(1, 1), -1.0));
  CHECK(amp_close(g.hadamard.at(0, 0), kD));
  CHECK(amp_close(g.hadamard.at(1, 1), -kD));

  for (const Gate* gate : {&g.id, &g.sigma_x, &g.i_sigma_y, &g.sigma_z, &g.hadamard})
    CHECK(gate->unitarity_defect() <= 1e-12);
}

TEST_CASE("single gates act as the hand oracle says") {
  const GateSet& g = gate_constants();
  const oracle::Vec ket0 = {1, 0};

  // i*sigma_y |0> = -|1>
  oracle::Vec expect = oracle::matvec(oracle::gate_to_mat(g.i_sigma_y), ket0);
  CHECK(amp_close(expect[0], 0.0));
  CHECK(amp_close(expect[1], -1.0));

  // H |0> = (|0> + |1>)/sqrt2
  expect = oracle::matvec(oracle::gate_to_mat(g.hadamard), ket0);
  CHECK(amp_close(expect[0], kD));
  CHECK(amp_close(expect[1], kD));

  Heap heap(1);
  QubitId q = heap.new_qubit(0);
  heap.apply_gate(q, g.i_sigma_y);
  CHECK(state_close(heap.island_state(q), {0.0, -1.0}));
  heap.apply_gate(q, g.id);  // identity leaves any state alone
  CHECK(state_close(heap.island_state(q), {0.0, -1.0}));
}

TEST_CASE("compose is the matrix product with the outer gate applied last") {
  const GateSet& g = gate_constants();

  // H * (i*sigma_y) |0> = -(|0> - |1>)/sqrt2, frozen from the 2x2 oracle.
  const oracle::Mat product =
      oracle::matmul(oracle::gate_to_mat(g.hadamard), oracle::gate_to_mat(g.i_sigma_y));
  const oracle::Vec via_oracle = oracle::matvec(product, {1, 0});
  CHECK(amp_close(via_oracle[0], -kD));
  CHECK(amp_close(via_oracle[1], kD));

  const Gate combined = compose(g.hadamard, g.i_sigma_y);
  CHECK(amp_close(combined.at(0, 0), -kD));
  CHECK(amp_close(combined.at(1, 0), kD));
  CHECK(combined.unitarity_defect() <= 1e-12);

  // compose(I, G) = G, and H^2 = I.
  const Gate same = compose(g.id, g.sigma_z);
  for (int i = 0; i < 4; ++i) CHECK(amp_close(same.m[i], g.sigma_z.m[i]));
  const Gate hh = compose(g.hadamard, g.hadamard);
  for (int i = 0; i < 4; ++i) CHECK(amp_close(hh.m[i], g.id.m[i]));
}

TEST_CASE("new_qubit prepares basis kets in disjoint islands") {
  Heap heap(3);
  QubitId zero = heap.new_qubit(0);
  QubitId one = heap.new_qubit(1);
  CHECK(state_close(heap.island_state(zero), {1.0, 0.0}));
  CHECK(state_close(heap.island_state(one), {0.0, 1.0}));

  std::set<std::uint64_t> ids;
  for (int i = 0; i < 64; ++i) {
    QubitId q = heap.new_qubit(0);
    CHECK(heap.island_members(q).size() == 1);
    ids.insert(q.value);
  }
  CHECK(ids.size() == 64);
  CHECK(heap.live_count() == 66);
}

TEST_CASE("new_epr_pair prepares the printed Bell amplitudes") {
  Heap heap(5);
  auto [p1, p2] = heap.new_epr_pair(BellLabel::PsiMinus);
  CHECK(state_close(heap.island_state(p1), {0.0, kD, -kD, 0.0}));
  CHECK(heap.island_members(p1) == std::vector<QubitId>{p1, p2});

  auto [q1, q2] = heap.new_epr_pair(BellLabel::PhiPlus);
  (void)q2;
  StateVector phi_plus = heap.island_state(q1);
  CHECK(state_close(phi_plus, {kD, 0.0, 0.0, kD}));
  CHECK(phi_plus.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("apply_gate on one half of a pair matches the tensor-product oracle") {
  const GateSet& g = gate_constants();
  const oracle::Vec psi_minus = {0, kD, -kD, 0};

  // (i*sigma_y on particle 1) |Psi-> = -(1/sqrt2)(|00> + |11>) = -|Phi+>.
  oracle::Vec expect =
      oracle::matvec(oracle::embed_single(2, 0, oracle::gate_to_mat(g.i_sigma_y)), psi_minus);
  CHECK(amp_close(expect[0], -kD));
  CHECK(amp_close(expect[3], -kD));

  Heap heap(7);
  auto [p1, p2] = heap.new_epr_pair(BellLabel::PsiMinus);
  (void)p2;
  heap.apply_gate(p1, g.i_sigma_y);
  StateVector got = heap.island_state(p1);
  CHECK(state_close(got, {-kD, 0.0, 0.0, -kD}));
  CHECK(equal_up_to_global_phase(got, bell_basis().vectors[0], 1e-12));

  // H on particle 1 of a fresh |Psi-> lands on Omega up to phase.
  auto [r1, r2] = heap.new_epr_pair(BellLabel::PsiMinus);
  (void)r2;
  heap.apply_gate(r1, g.hadamard);
  CHECK(equal_up_to_global_phase(heap.island_state(r1), eve_basis().vectors[2], 1e-12));
}

TEST_CASE("apply_gate rejects unknown and measured qubits") {
  Heap heap(11);
  QubitId q = heap.new_qubit(1);
  CHECK(heap.measure_computational(q) == 1);
  CHECK(!heap.is_live(q));
  CHECK_THROWS_AS(heap.apply_gate(q, gate_constants().sigma_x), std::invalid_argument);
  CHECK_THROWS_AS(heap.measure_computational(QubitId{991}), std::invalid_argument);
}

TEST_CASE("measure_computational samples the Born rule") {
  // Eigenstate: always 1.
  Heap heap(13);
  for (int i = 0; i < 32; ++i) {
    QubitId q = heap.new_qubit(1);
    CHECK(heap.measure_computational(q) == 1);
  }

  // (|0> + |1>)/sqrt2: frequency 0.5 +- 0.02 over 1e4 seeded samples.
  int zeros = 0;
  for (int i = 0; i < 10000; ++i) {
    QubitId q = heap.new_qubit(0);
    heap.apply_gate(q, gate_constants().hadamard);
    zeros += heap.measure_computational(q) == 0;
  }
  CHECK(std::abs(zeros / 10000.0 - 0.5) <= 0.02);
}

TEST_CASE("Bell pairs reproduce the printed correlations in every sample") {
  Heap heap(17);
  for (int trial = 0; trial < 200; ++trial) {
    auto [a1, a2] = heap.new_epr_pair(BellLabel::PhiPlus);
    CHECK(heap.measure_computational(a1) == heap.measure_computational(a2));
    auto [b1, b2] = heap.new_epr_pair(BellLabel::PhiMinus);
    CHECK(heap.measure_computational(b1) == heap.measure_computational(b2));
    auto [c1, c2] = heap.new_epr_pair(BellLabel::PsiPlus);
    CHECK(heap.measure_computational(c1) != heap.measure_computational(c2));
    auto [d1, d2] = heap.new_epr_pair(BellLabel::PsiMinus);
    CHECK(heap.measure_computational(d1) != heap.measure_computational(d2));
  }
  CHECK(heap.live_count() == 0);
}

TEST_CASE("measure_pair_in_basis is deterministic on basis elements") {
  Heap heap(19);

  // A pair already in |Phi+> measured in the Eve basis: outcome 1, always.
  for (int i = 0; i < 16; ++i) {
    auto [q1, q2] = heap.new_epr_pair(BellLabel::PhiPlus);
    CHECK(heap.measure_pair_in_basis(q1, q2, eve_basis()) == 1);
  }

  // Honest encoding (k=1, b1=1) on |Psi->: outcome Gamma, always.
  const Gate op = compose(gate_constants().hadamard, gate_constants().i_sigma_y);
  for (int i = 0; i < 16; ++i) {
    auto [q1, q2] = heap.new_epr_pair(BellLabel::PsiMinus);
    heap.apply_gate(q1, op);
    CHECK(heap.measure_pair_in_basis(q1, q2, eve_basis()) == 3);
  }
}

TEST_CASE("measure_pair_in_basis honors the requested qubit order") {
  // |01> measured in the computational product basis: outcome |q1 q2> = 01
  // one way round, 10 the other.
  const FourStateBasis computational{
      BasisKind::Custom,
      {StateVector::basis_ket(2, 0), StateVector::basis_ket(2, 1), StateVector::basis_ket(2, 2),
       StateVector::basis_ket(2, 3)}};
  Heap heap(23);
  QubitId a = heap.new_qubit(0);
  QubitId b = heap.new_qubit(1);
  CHECK(heap.measure_pair_in_basis(a, b, computational) == 1);
  QubitId c = heap.new_qubit(0);
  QubitId d = heap.new_qubit(1);
  CHECK(heap.measure_pair_in_basis(d, c, computational) == 2);
}

TEST_CASE("measure_pair_in_basis rejects identical and dead qubits") {
  Heap heap(29);
  auto [q1, q2] = heap.new_epr_pair(BellLabel::PhiPlus);
  CHECK_THROWS_AS(heap.measure_pair_in_basis(q1, q1, eve_basis()), std::invalid_argument);
  CHECK(heap.measure_pair_in_basis(q1, q2, eve_basis()) == 1);
  CHECK_THROWS_AS(heap.measure_pair_in_basis(q1, q2, eve_basis()), std::invalid_argument);
}

TEST_CASE("halves of two distinct pairs give uniform outcomes") {
  // Brute force first: the joint state of (one half of pair A, one half of
  // pair B) projects onto each Eve-basis vector with probability 1/4.
  const oracle::Vec psi_minus = {0, kD, -kD, 0};
  const oracle::Vec joint = oracle::kron_vec(psi_minus, psi_minus);
  std::array<oracle::Vec, 4> basis;
  for (int k = 0; k < 4; ++k) basis[k] = eve_basis().vectors[k].amps();
  // Pair A contributes positions 0/1, pair B positions 2/3; Eve measures the
  // traveling half of A (position 0) against her half of B (position 3).
  const std::array<double, 4> probs = oracle::pair_projection_probs(joint, 4, 0, 3, basis);
  for (double p : probs) CHECK(p == doctest::Approx(0.25).epsilon(1e-12));

  Heap heap(31);
  std::array<std::uint64_t, 4> counts{};
  const int samples = 10000;
  for (int s = 0; s < samples; ++s) {
    auto [a1, a2] = heap.new_epr_pair(BellLabel::PsiMinus);
    auto [b1, b2] = heap.new_epr_pair(BellLabel::PsiMinus);
    counts[static_cast<std::size_t>(heap.measure_pair_in_basis(a1, b2, eve_basis()))]++;
    // Clean up the leftover halves.
    heap.measure_computational(a2);
    heap.measure_computational(b1);
  }
  for (int k = 0; k < 4; ++k)
    CHECK(std::abs(counts[static_cast<std::size_t>(k)] / static_cast<double>(samples) - 0.25) <= 0.02);
}

TEST_CASE("cross-island measurement leaves the right residual state") {
  // Pair A in |Phi+>, single qubit C in |1>. Measuring (A1, C) in the
  // computational product basis collapses A2 to whatever A1 showed.
  const FourStateBasis computational{
      BasisKind::Custom,
      {StateVector::basis_ket(2, 0), StateVector::basis_ket(2, 1), StateVector::basis_ket(2, 2),
       StateVector::basis_ket(2, 3)}};
  Heap heap(37);
  for (int i = 0; i < 64; ++i) {
    auto [a1, a2] = heap.new_epr_pair(BellLabel::PhiPlus);
    QubitId c = heap.new_qubit(1);
    const int outcome = heap.measure_pair_in_basis(a1, c, computational);
    const int a1_bit = outcome >> 1;
    CHECK((outcome & 1) == 1);  // C was |1>
    CHECK(heap.island_members(a2).size() == 1);
    CHECK(state_close(heap.island_state(a2),
                      a1_bit ? std::vector<Amp>{0.0, 1.0} : std::vector<Amp>{1.0, 0.0}, 1e-9));
    CHECK(heap.measure_computational(a2) == a1_bit);
  }
}

TEST_CASE("equal_up_to_global_phase handles sign flips and orthogonality") {
  const StateVector plus(1, {kD, kD});
  const StateVector minus_plus(1, {-kD, -kD});
  CHECK(equal_up_to_global_phase(plus, minus_plus, 1e-12));
  CHECK(equal_up_to_global_phase(StateVector::basis_ket(1, 0), StateVector::basis_ket(1, 0), 0.0));
  CHECK(!equal_up_to_global_phase(StateVector::basis_ket(1, 0), StateVector::basis_ket(1, 1), 1e-9));
  CHECK_THROWS_AS(equal_up_to_global_phase(plus, StateVector::basis_ket(2, 0), 1e-9),
                  std::invalid_argument);

  // A complex phase too.
  const Amp i{0, 1};
  const StateVector rotated(1, {kD * i, kD * i});
  CHECK(equal_up_to_global_phase(plus, rotated, 1e-12));
  CHECK(phase_distance(plus, rotated) <= 1e-12);
}

TEST_CASE("apply_gate preserves the norm for 1e3 random gate/state pairs") {
  Heap heap(41);
  Rng gen(99);
  for (int trial = 0; trial < 1000; ++trial) {
    auto [q1, q2] = heap.new_epr_pair(static_cast<BellLabel>(gen.next_below(4)));
    heap.apply_gate(q1, random_gate(gen));
    heap.apply_gate(q2, random_gate(gen));
    heap.apply_gate(gen.next_bit() ? q1 : q2, random_gate(gen));
    CHECK(std::abs(heap.island_state(q1).norm() - 1.0) <= 1e-9);
    heap.measure_computational(q1);
    heap.measure_computational(q2);
  }
}

TEST_CASE("sampled pair-measurement frequencies match brute-force projections") {
  Rng gen(4242);
  const int configs = 1000;
  const int samples = 10000;

  for (int cfg = 0; cfg < configs; ++cfg) {
    // A configuration: pair A with random local gates, partner island B that
    // is either another doctored pair or a lone qubit, and a measurement
    // basis that is either the Eve basis or a random orthonormal one.
    const BellLabel label_a = static_cast<BellLabel>(gen.next_below(4));
    const BellLabel label_b = static_cast<BellLabel>(gen.next_below(4));
    const bool b_is_pair = gen.next_bit() == 1;
    const int single_bit = gen.next_bit();
    const Gate ga1 = random_gate(gen), ga2 = random_gate(gen), gb = random_gate(gen);

    FourStateBasis basis = eve_basis();
    if (gen.next_bit()) {
      // Random orthonormal basis by Gram-Schmidt over random vectors.
      std::array<oracle::Vec, 4> raw;
      for (auto& v : raw) {
        v.resize(4);
        for (auto& a : v) a = Amp{gen.next_double() - 0.5, gen.next_double() - 0.5};
      }
      std::array<StateVector, 4> vecs = basis.vectors;
      for (int k = 0; k < 4; ++k) {
        for (int j = 0; j < k; ++j) {
          const oracle::Amp overlap = oracle::dot(raw[j], raw[k]);
          for (int c = 0; c < 4; ++c) raw[k][c] -= overlap * raw[j][c];
        }
        const double len = oracle::norm(raw[k]);
        REQUIRE(len > 1e-6);
        for (auto& a : raw[k]) a /= len;
        vecs[static_cast<std::size_t>(k)] = StateVector(2, raw[static_cast<std::size_t>(k)]);
      }
      basis = FourStateBasis{BasisKind::Custom, vecs};
    }

    // Build once to snapshot states and compute the target distribution.
    Heap probe(mix_seed(777, static_cast<std::uint64_t>(cfg)));
    auto build = [&](Heap& heap) {
      auto [a1, a2] = heap.new_epr_pair(label_a);
      heap.apply_gate(a1, ga1);
      heap.apply_gate(a2, ga2);
      QubitId partner;  // second target, in island B
      QubitId leftover_a = a2;
      QubitId leftover_b{0};
      bool has_leftover_b = false;
      if (b_is_pair) {
        auto [b1, b2] = heap.new_epr_pair(label_b);
        heap.apply_gate(b1, gb);
        partner = b1;
        leftover_b = b2;
        has_leftover_b = true;
      } else {
        partner = heap.new_qubit(single_bit);
        heap.apply_gate(partner, gb);
      }
      struct Built { QubitId first, second, leftover_a, leftover_b; bool has_leftover_b; };
      return Built{a1, partner, leftover_a, leftover_b, has_leftover_b};
    };

    auto snapshot = build(probe);
    const oracle::Vec state_a = probe.island_state(snapshot.first).amps();
    const oracle::Vec state_b = probe.island_state(snapshot.second).amps();
    const oracle::Vec joint = oracle::kron_vec(state_a, state_b);
    const int n = snapshot.has_leftover_b ? 4 : 3;
    const int p2 = 2;  // island B starts after A's two qubits; the target is its first qubit
    std::array<oracle::Vec, 4> basis_vecs;
    for (int k = 0; k < 4; ++k) basis_vecs[static_cast<std::size_t>(k)] = basis.vectors[static_cast<std::size_t>(k)].amps();
    const std::array<double, 4> expect = oracle::pair_projection_probs(joint, n, 0, p2, basis_vecs);

    Heap heap(mix_seed(778, static_cast<std::uint64_t>(cfg)));
    std::array<std::uint64_t, 4> counts{};
    for (int s = 0; s < samples; ++s) {
      auto built = build(heap);
      counts[static_cast<std::size_t>(heap.measure_pair_in_basis(built.first, built.second, basis))]++;
      heap.measure_computational(built.leftover_a);
      if (built.has_leftover_b) heap.measure_computational(built.leftover_b);
    }
    for (int k = 0; k < 4; ++k) {
      const double freq = counts[static_cast<std::size_t>(k)] / static_cast<double>(samples);
      REQUIRE(std::abs(freq - expect[static_cast<std::size_t>(k)]) <= 0.02);
    }
  }
}

TEST_CASE("same seed and same operations give identical outcome sequences") {
  auto script = [](Heap& heap) {
    std::vector<int> outcomes;
    Rng driver(5);  // same script on both heaps
    for (int step = 0; step < 200; ++step) {
      auto [q1, q2] = heap.new_epr_pair(static_cast<BellLabel>(driver.next_below(4)));
      heap.apply_gate(q1, random_gate(driver));
      if (driver.next_bit()) {
        outcomes.push_back(heap.measure_pair_in_basis(q1, q2, eve_basis()));
      } else {
        outcomes.push_back(heap.measure_computational(q1));
        outcomes.push_back(heap.measure_computational(q2));
      }
    }
    return outcomes;
  };
  Heap first(20260811);
  Heap second(20260811);
  const std::vector<int> a = script(first);
  CHECK(a == script(second));
  Heap other(20260812);
  CHECK(a != script(other));  // overwhelmingly likely
}

TEST_CASE("reduced density of an entangled half is maximally mixed") {
  Heap heap(43);
  auto [q1, q2] = heap.new_epr_pair(BellLabel::PsiMinus);
  (void)q2;
  const std::array<Amp, 4> rho = heap.reduced_density(q1);
  CHECK(amp_close(rho[0], 0.5));
  CHECK(amp_close(rho[1], 0.0));
  CHECK(amp_close(rho[2], 0.0));
  CHECK(amp_close(rho[3], 0.5));

  const std::array<Amp, 4> via_oracle =
      oracle::reduced_density(oracle::Vec{0, kD, -kD, 0}, 2, 0);
  for (int i = 0; i < 4; ++i) CHECK(amp_close(rho[static_cast<std::size_t>(i)], via_oracle[static_cast<std::size_t>(i)]));
}
