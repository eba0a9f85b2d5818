#pragma once

#include <optional>
#include <vector>

#include "xz24/sampling.hpp"
#include "xz24/spectral.hpp"

namespace xz24 {

/// One base peak paired with its counterpart from the offset-Hamiltonian
/// run. `sign` is positive/negative when the peak moved by more than one
/// bin in a unique direction, ambiguous otherwise, unknown when no
/// counterpart was found.
struct SignPair {
  EigenEstimate base;  // with sign and signed energy filled
  std::optional<EigenEstimate> shifted;
  double shift = 0.0;  // shifted |E| - base |E|
  EnergySign sign = EnergySign::unknown;
};

struct SignResolution {
  double s0 = 0.0;
  std::vector<SignPair> pairs;

  /// Copies the resolution's signs onto a peak list (matched by bin).
  std::vector<EigenEstimate> apply_to(std::vector<EigenEstimate> estimates) const;
};

/// The paper's default offset, floored at four bins so the shift is
/// resolvable on any plan.
double default_offset(const SamplingPlan& plan);

/// Pure matcher between base and offset-run peak lists. Greedy in base
/// amplitude order; a candidate must lie within s0 + 2*delta of the base
/// peak and have a comparable amplitude (leakage rescales a tone's apex by
/// at most ~pi/2 between runs, so an order-of-magnitude weaker candidate is
/// some other tone's sidelobe, not the moved peak). Opposite-side
/// near-ties — the +|E|/-|E| collision signature — come back ambiguous.
SignResolution classify_shifts(const std::vector<EigenEstimate>& base,
                               const std::vector<EigenEstimate>& shifted,
                               double s0, double delta);

/// Full operation: re-runs acquire + transform + detect on offset(h, s0)
/// with the same plan, spec and threshold, then classifies each base peak.
/// Requires s0 > 2*delta (s0 = 0 is allowed as the degenerate identity
/// case) and enough Nyquist headroom that the offset run cannot alias:
/// interval * (energy_bound + s0) <= pi.
SignResolution resolve_signs(const Hamiltonian& h, const ReferenceSpec& spec,
                             const SamplingPlan& plan, double s0,
                             const std::vector<EigenEstimate>& base_estimates,
                             double threshold, const AcquireOptions& options = {});

}  // namespace xz24
