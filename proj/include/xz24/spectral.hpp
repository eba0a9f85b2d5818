#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "xz24/oracle.hpp"
#include "xz24/sampling.hpp"

namespace xz24 {

/// Real cosine coefficients of the sampled signal: a0 = R(0)/N and
/// a_k = 2 Re R(k)/N for k = 1..(N-1)/2, where R is the forward DFT.
/// The frequency grid is x_k = k/(N*interval), i.e. |E| = 2*pi*x_k = k*delta.
struct Spectrum {
  SamplingPlan plan;
  double a0 = 0.0;
  std::vector<double> coefficients;  // a_k, index i holds k = i+1
  /// Largest |Im R(k)| seen; for mirror-mode exact signals this is pure
  /// rounding noise (the sequence is real and even).
  double max_abs_imag = 0.0;

  std::uint64_t bin_count() const { return coefficients.size(); }
  double x(std::uint64_t k) const;
  double abs_energy(std::uint64_t k) const { return plan.delta * static_cast<double>(k); }
};

enum class EnergySign : std::uint8_t { positive, negative, ambiguous, unknown };

const char* to_string(EnergySign sign);

/// One detected spectral peak: a candidate eigenvalue magnitude with its
/// (leakage-distorted, hence approximate) overlap amplitude. `energy` is
/// filled once a sign has been resolved.
struct EigenEstimate {
  std::uint64_t bin = 0;
  double x = 0.0;
  double abs_energy = 0.0;
  double amplitude = 0.0;
  EnergySign sign = EnergySign::unknown;
  std::optional<double> energy;
};

/// Forward DFT plus coefficient extraction. N must be odd. O(N log N).
Spectrum transform(const Signal& signal);

/// Local maxima of a_k with a_k >= threshold, k >= 1 (the DC bin is never
/// an eigen-estimate), sorted by descending amplitude. Adjacent qualifying
/// bins straddling one tone collapse to the higher-amplitude bin.
std::vector<EigenEstimate> detect_peaks(const Spectrum& spectrum, double threshold);

struct RecoveryEntry {
  double oracle_energy = 0.0;
  double oracle_weight = 0.0;
  std::optional<double> nearest_estimate;  // |E| of the closest peak
  double abs_error = 0.0;                  // inf encodes "no estimate at all"
  bool within_delta = false;
};

/// recover_report output: per-oracle-energy coverage plus the reverse
/// direction (per-estimate nearest oracle line).
struct RecoveryReport {
  std::vector<RecoveryEntry> entries;   // oracle energies with weight >= threshold
  double max_error = 0.0;               // over `entries`
  bool success = false;                 // every entry within one delta
  double weight_threshold = 0.0;
  double delta = 0.0;
  std::vector<double> estimate_errors;  // per estimate, distance to nearest line
};

/// Compares detected peaks against the exact-diagonalization table:
/// every oracle energy with weight >= weight_threshold must have a peak
/// within `delta` (the quantization unit) for success. Degenerate oracle
/// energies are grouped before matching.
RecoveryReport recover_report(const std::vector<EigenEstimate>& estimates,
                              const OverlapTable& oracle, double weight_threshold,
                              double delta);

}  // namespace xz24
