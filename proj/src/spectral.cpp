#include "xz24/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>

#include "xz24/errors.hpp"

namespace xz24 {

namespace {

// The FFTW planner is not thread-safe; execution of a built plan is.
std::mutex fftw_planner_mutex;

struct FftwBuffers {
  double* in = nullptr;
  fftw_complex* out = nullptr;
  fftw_plan plan = nullptr;

  FftwBuffers(std::size_t n) {
    in = fftw_alloc_real(n);
    out = fftw_alloc_complex(n / 2 + 1);
    if (!in || !out) throw std::bad_alloc();
    std::lock_guard lock(fftw_planner_mutex);
    // FFTW_ESTIMATE keeps planning deterministic (no timing-based choices),
    // which the byte-identical report contract relies on.
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in, out, FFTW_ESTIMATE);
  }
  ~FftwBuffers() {
    std::lock_guard lock(fftw_planner_mutex);
    if (plan) fftw_destroy_plan(plan);
    fftw_free(in);
    fftw_free(out);
  }
  FftwBuffers(const FftwBuffers&) = delete;
  FftwBuffers& operator=(const FftwBuffers&) = delete;
};

}  // namespace

const char* to_string(EnergySign sign) {
  switch (sign) {
    case EnergySign::positive: return "positive";
    case EnergySign::negative: return "negative";
    case EnergySign::ambiguous: return "ambiguous";
    case EnergySign::unknown: return "unknown";
  }
  return "unknown";
}

double Spectrum::x(std::uint64_t k) const {
  return static_cast<double>(k) /
         (static_cast<double>(plan.count) * plan.interval);
}

Spectrum transform(const Signal& signal) {
  const std::uint64_t n = signal.values.size();
  if (n == 0 || n % 2 == 0)
    throw_invalid("transform requires an odd number of samples, got " +
                  std::to_string(n));
  if (signal.plan.count != n)
    throw_invalid("signal length does not match its plan");

  FftwBuffers fft(n);
  std::copy(signal.values.begin(), signal.values.end(), fft.in);
  fftw_execute(fft.plan);

  const std::uint64_t n_bins = (n - 1) / 2;  // k = 1..(N-1)/2
  Spectrum spectrum;
  spectrum.plan = signal.plan;
  spectrum.a0 = fft.out[0][0] / static_cast<double>(n);
  spectrum.coefficients.resize(n_bins);
  double max_imag = std::abs(fft.out[0][1]);
  for (std::uint64_t k = 1; k <= n_bins; ++k) {
    spectrum.coefficients[k - 1] = 2.0 * fft.out[k][0] / static_cast<double>(n);
    max_imag = std::max(max_imag, std::abs(fft.out[k][1]));
  }
  spectrum.max_abs_imag = max_imag;
  return spectrum;
}

std::vector<EigenEstimate> detect_peaks(const Spectrum& spectrum, double threshold) {
  if (!(threshold > 0.0)) throw_invalid("peak threshold must be positive");
  const auto& a = spectrum.coefficients;
  const std::size_t n_bins = a.size();

  // Candidate bins: above threshold and not below either neighbor. The DC
  // coefficient a0 acts as the left neighbor of k = 1.
  std::vector<std::uint64_t> candidates;
  for (std::size_t i = 0; i < n_bins; ++i) {
    if (a[i] < threshold) continue;
    const double left = i == 0 ? spectrum.a0 : a[i - 1];
    const double right =
        i + 1 < n_bins ? a[i + 1] : -std::numeric_limits<double>::infinity();
    if (a[i] >= left && a[i] >= right) candidates.push_back(i + 1);
  }

  // Two adjacent candidates straddle one tone; keep the higher bin.
  std::vector<std::uint64_t> kept;
  for (std::uint64_t k : candidates) {
    if (!kept.empty() && k - kept.back() == 1) {
      if (a[k - 1] > a[kept.back() - 1]) kept.back() = k;
    } else {
      kept.push_back(k);
    }
  }

  std::vector<EigenEstimate> estimates;
  estimates.reserve(kept.size());
  for (std::uint64_t k : kept) {
    EigenEstimate e;
    e.bin = k;
    e.x = spectrum.x(k);
    e.abs_energy = spectrum.abs_energy(k);
    e.amplitude = a[k - 1];
    estimates.push_back(e);
  }
  std::stable_sort(estimates.begin(), estimates.end(),
                   [](const EigenEstimate& lhs, const EigenEstimate& rhs) {
                     return lhs.amplitude > rhs.amplitude;
                   });
  return estimates;
}

RecoveryReport recover_report(const std::vector<EigenEstimate>& estimates,
                              const OverlapTable& oracle, double weight_threshold,
                              double delta) {
  RecoveryReport report;
  report.weight_threshold = weight_threshold;
  report.delta = delta;

  const OverlapTable grouped = group_by_energy(oracle);

  double max_error = 0.0;
  bool success = true;
  for (const auto& entry : grouped.entries) {
    if (entry.weight < weight_threshold) continue;
    RecoveryEntry r;
    r.oracle_energy = entry.energy;
    r.oracle_weight = entry.weight;
    r.abs_error = std::numeric_limits<double>::infinity();
    for (const auto& est : estimates) {
      const double err = std::abs(std::abs(entry.energy) - est.abs_energy);
      if (err < r.abs_error) {
        r.abs_error = err;
        r.nearest_estimate = est.abs_energy;
      }
    }
    r.within_delta = r.abs_error <= delta * (1.0 + 1e-9);
    success = success && r.within_delta;
    max_error = std::max(max_error, r.abs_error);
    report.entries.push_back(r);
  }
  report.max_error = max_error;
  report.success = success;

  report.estimate_errors.reserve(estimates.size());
  for (const auto& est : estimates) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& entry : grouped.entries)
      best = std::min(best, std::abs(std::abs(entry.energy) - est.abs_energy));
    report.estimate_errors.push_back(best);
  }
  return report;
}

}  // namespace xz24
