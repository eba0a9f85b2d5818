#include "xz24/sign_resolution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "xz24/errors.hpp"

namespace xz24 {

namespace {

// Candidates this much weaker than the base peak are sidelobes of some
// other tone; leakage alone cannot shrink a moved peak this far.
constexpr double kAmplitudeGate = 4.0;

}  // namespace

double default_offset(const SamplingPlan& plan) {
  return std::max(4.0 * plan.delta, 0.05);
}

std::vector<EigenEstimate> SignResolution::apply_to(
    std::vector<EigenEstimate> estimates) const {
  for (auto& est : estimates) {
    for (const auto& pair : pairs) {
      if (pair.base.bin == est.bin) {
        est.sign = pair.base.sign;
        est.energy = pair.base.energy;
        break;
      }
    }
  }
  return estimates;
}

SignResolution classify_shifts(const std::vector<EigenEstimate>& base,
                               const std::vector<EigenEstimate>& shifted,
                               double s0, double delta) {
  SignResolution resolution;
  resolution.s0 = s0;
  resolution.pairs.reserve(base.size());

  const double cap = s0 + 2.0 * delta;
  std::set<std::size_t> claimed;

  for (const auto& b : base) {
    SignPair pair;
    pair.base = b;

    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < shifted.size(); ++i) {
      if (claimed.contains(i)) continue;
      if (std::abs(shifted[i].abs_energy - b.abs_energy) > cap) continue;
      if (shifted[i].amplitude < b.amplitude / kAmplitudeGate) continue;
      candidates.push_back(i);
    }

    if (candidates.empty()) {
      pair.sign = EnergySign::unknown;
      resolution.pairs.push_back(std::move(pair));
      continue;
    }

    std::sort(candidates.begin(), candidates.end(),
              [&](std::size_t lhs, std::size_t rhs) {
                return std::abs(shifted[lhs].abs_energy - b.abs_energy) <
                       std::abs(shifted[rhs].abs_energy - b.abs_energy);
              });
    const std::size_t best = candidates.front();
    const double shift = shifted[best].abs_energy - b.abs_energy;
    const double best_dist = std::abs(shift);

    // A comparable candidate on the opposite side means the peak split
    // (|E| and -|E| collided in the base spectrum): don't guess.
    bool split = false;
    for (std::size_t i = 1; i < candidates.size() && !split; ++i) {
      const double other = shifted[candidates[i]].abs_energy - b.abs_energy;
      if (other * shift < 0.0 && std::abs(other) <= best_dist + 2.0 * delta)
        split = true;
    }

    claimed.insert(best);
    pair.shifted = shifted[best];
    pair.shift = shift;
    if (split || std::abs(shift) <= delta) {
      pair.sign = EnergySign::ambiguous;
    } else {
      pair.sign = shift > 0.0 ? EnergySign::positive : EnergySign::negative;
      pair.base.sign = pair.sign;
      pair.base.energy = pair.sign == EnergySign::positive ? b.abs_energy
                                                           : -b.abs_energy;
    }
    if (pair.sign == EnergySign::ambiguous) pair.base.sign = EnergySign::ambiguous;
    resolution.pairs.push_back(std::move(pair));
  }
  return resolution;
}

SignResolution resolve_signs(const Hamiltonian& h, const ReferenceSpec& spec,
                             const SamplingPlan& plan, double s0,
                             const std::vector<EigenEstimate>& base_estimates,
                             double threshold, const AcquireOptions& options) {
  if (!std::isfinite(s0) || s0 < 0.0)
    throw_invalid("offset s0 must be finite and non-negative");
  if (s0 > 0.0 && s0 <= 2.0 * plan.delta) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", 2.0 * plan.delta);
    throw_invalid("offset s0 = " + std::to_string(s0) +
                  " is below the plan's resolution; it must exceed "
                  "2*delta = " + buf);
  }
  // The offset Hamiltonian's spectrum can extend to energy_bound + s0; the
  // plan needs that headroom or the shifted run aliases. Safe if either the
  // plan's claimed bound plus s0 fits, or the offset Hamiltonian's own l1
  // norm does.
  const Hamiltonian shifted_h = h.offset(s0);
  const double pi_slack = std::numbers::pi * (1.0 + 1e-9);
  const bool safe_by_plan = plan.interval * (plan.energy_bound + s0) <= pi_slack;
  const bool safe_by_l1 = plan.interval * shifted_h.l1_norm_bound() <= pi_slack;
  if (!safe_by_plan && !safe_by_l1) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", plan.energy_bound + s0);
    throw_invalid(std::string("plan lacks Nyquist headroom for the offset run; "
                              "rebuild it with an energy bound of at least ") +
                  buf);
  }

  const Signal shifted_signal = acquire_signal(shifted_h, spec, plan, options);
  const std::vector<EigenEstimate> shifted =
      detect_peaks(transform(shifted_signal), threshold);
  return classify_shifts(base_estimates, shifted, s0, plan.delta);
}

}  // namespace xz24
