#pragma once

#include "tpqkd/adversary.hpp"
#include "tpqkd/protocol.hpp"

namespace tpqkd {

struct SessionResult {
  SessionTranscript transcript;
  AttackReport report;
};

// Runs one full session of the configured variant, invoking the adversary's
// taps on every quantum transmission and letting it listen to the classical
// board. `adversary` may be nullptr (honest run). All party randomness is
// drawn from the heap's stream in a fixed order before any qubit moves, so a
// run is a pure function of params.base_seed.
SessionResult run_session(const ProtocolParams& params, Adversary* adversary);

}  // namespace tpqkd
