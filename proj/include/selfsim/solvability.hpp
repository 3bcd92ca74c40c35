#pragma once

#include <optional>
#include <vector>

#include "selfsim/finmod.hpp"

namespace selfsim::solvability {

// Right end of an infinite ladder: either a cospan f0: a0→b0, f0': a0'→b0
// (S1) or a parallel pair f0, f0': a0→b0 (S2).
struct EndPairConfig {
  enum class Kind { Cospan, Parallel };
  Kind kind;
  int f0;
  int f0_prime;
};

// Greatest fixpoint of the one-step leftward extension operator: a config
// survives iff it extends by one ladder rung to a surviving config.
std::vector<EndPairConfig> survivors(const EquationalSystem& S, EndPairConfig::Kind kind);

// One extension step against a given survivor set; used to re-verify the
// fixpoint property.
bool extends_within(const EquationalSystem& S, const EndPairConfig& config,
                    const std::vector<EndPairConfig>& pool);

struct SolvabilityVerdict {
  enum class Tag { Holds, Fails, Unknown };
  Tag tag;
  std::optional<EndPairConfig> witness;  // surviving config with no completion
  int depth_checked = 0;                 // for Unknown
};

// Holds iff every surviving cospan completes to a commutative square and
// every surviving parallel pair extends to a fork. Truncated stand-ins for
// infinite systems report Unknown.
SolvabilityVerdict check_S(const EquationalSystem& S);

// Completion searches, exposed for witness re-verification.
bool cospan_completes(const FinCategory& cat, int f0, int f0_prime);
bool parallel_forks(const FinCategory& cat, int f0, int f0_prime);

}  // namespace selfsim::solvability
