#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "tzcl/linsolve.hpp"

namespace tzcl {

/// Raised when a stage that must integrate does not (input not in the kernel,
/// or the exponent window is too narrow).
class IntegrationFailed : public std::runtime_error {
 public:
  IntegrationFailed(const std::string& stage, const OneFormModI& form);
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

/// Every stage of one application of P or N.
///
/// For P: a -> alpha -> b -> f -> r -> s -> beta -> t -> a_next, weights d, d+1, ..., d+6.
/// For N the chain runs backwards from a = a^{n+1} to a_next = a^n.
struct RecursionTrace {
  int weight = 0;
  DiffPoly a;
  OneFormModI alpha;
  DiffPoly b, f, r, s;
  OneFormModI beta;
  DiffPoly t, a_next;

  /// (label, polynomial) in stage order.
  std::vector<std::pair<std::string, DiffPoly>> stages() const;
};

/// P : V_d -> V_{d+6} at alpha = -1. Requires E(a) = 0, odd d not in {-1, -5}.
RecursionTrace P_step(const SystemParams& sp, const DiffPoly& a, const IntegrationOptions& opts = {});
/// N : V_d -> V_{d-6} at alpha = -1. Requires E(a) = 0, odd d not in {1, 5}.
RecursionTrace N_step(const SystemParams& sp, const DiffPoly& a, const IntegrationOptions& opts = {});

/// [seed, P(seed), ..., P^steps(seed)], each checked to lie in ker E.
std::vector<DiffPoly> chain_generate(const SystemParams& sp, const DiffPoly& seed, int steps,
                                     const IntegrationOptions& opts = {});

/// u4 + 5 u2 u1 - 5 u2 u0^2 - 5 u1^2 u0 + u0^5, the weight-5 chain starter.
DiffPoly v5_generator();

}  // namespace tzcl
