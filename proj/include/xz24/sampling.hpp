#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "xz24/hamiltonian.hpp"
#include "xz24/simulator.hpp"

namespace xz24 {

enum class SamplingMode : std::uint8_t { mirror, full };

/// The discretization contract tying target precision to the time grid:
///   delta * interval = 2*pi / count      (frequency-bin width)
///   interval <= pi / energy_bound        (Nyquist)
///   count odd                            (symmetric DFT reconstruction)
struct SamplingPlan {
  double delta = 0.0;        // frequency quantization unit (energy units)
  double interval = 0.0;     // time step between samples
  std::uint64_t count = 0;   // number of samples N (odd)
  double t_max = 0.0;        // count * interval
  SamplingMode mode = SamplingMode::mirror;
  std::optional<std::uint64_t> shots;
  double energy_bound = 0.0;  // |E|_max the Nyquist check was made against

  /// Largest legal interval for a given bound.
  static double max_interval(double energy_bound);
};

/// Chooses the coarsest valid grid for a requested precision: t_max =
/// 2*pi/target_delta, interval = the Nyquist maximum (or the caller's
/// request, validated), then the interval is nudged down so the sample
/// count comes out odd. The resulting delta equals target_delta.
SamplingPlan make_plan(double target_delta, double energy_bound,
                       std::optional<double> requested_interval = std::nullopt,
                       std::optional<std::uint64_t> shots = std::nullopt,
                       SamplingMode mode = SamplingMode::mirror);

/// The sampled sequence q(n) = Q(n * interval), n = 0..count-1.
struct Signal {
  SamplingPlan plan;
  std::vector<double> values;
};

struct AcquireOptions {
  /// Run the full ancilla circuit per point instead of the direct
  /// expectation. Identical results to 1e-10; roughly twice the state size.
  bool use_circuit = false;
  /// Base seed for shot sampling; each point derives its own stream, so
  /// results are independent of worker count and scheduling.
  std::uint64_t seed = 0;
};

/// Drives the simulator across the plan's grid. In mirror mode only
/// n = 0..(N-1)/2 are simulated and the upper half is filled from
/// q(n) = q(N-n); in full mode every point is simulated. Points are
/// distributed across worker threads (XZ24_WORKERS overrides the count).
Signal acquire_signal(const Hamiltonian& h, const ReferenceSpec& spec,
                      const SamplingPlan& plan, const AcquireOptions& options = {});

/// Default bound: the l1 coefficient sum (never aliases). With
/// `use_basis_heuristic`, returns |<ref|H|ref>| for a basis-state
/// reference instead — cheaper-to-saturate but may undershoot |E|_max.
double estimate_energy_bound(const Hamiltonian& h,
                             const std::optional<ReferenceSpec>& spec = std::nullopt,
                             bool use_basis_heuristic = false);

/// Worker count used by acquire_signal: XZ24_WORKERS if set, else the
/// hardware concurrency.
unsigned worker_count();

}  // namespace xz24
