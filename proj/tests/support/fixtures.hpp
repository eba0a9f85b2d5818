#pragma once

// Deterministic fixtures and independent oracles shared by the unit and
// acceptance suites. Everything here is seeded through SplitMix64 so the
// same inputs reproduce on any platform.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "xz24/hamiltonian.hpp"
#include "xz24/oracle.hpp"
#include "xz24/rng.hpp"
#include "xz24/sampling.hpp"
#include "xz24/simulator.hpp"

namespace xz24::testing {

inline constexpr double kPi = std::numbers::pi;

/// The recurring two-tone fixture: 0.2*I + Z0 + 0.5*X0 with |0> reference.
/// Eigenvalues 0.2 -+ sqrt(1.25), overlaps (1 -+ 1/sqrt(1.25))/2.
inline Hamiltonian two_tone_hamiltonian() {
  return Hamiltonian::parse("0.2\n1.0 Z0\n0.5 X0\n");
}
inline constexpr double kTwoToneLow = -0.91803398874989479;   // 0.2 - sqrt(1.25)
inline constexpr double kTwoToneHigh = 1.31803398874989485;   // 0.2 + sqrt(1.25)
inline constexpr double kTwoToneLowWeight = 0.052786404500042060;
inline constexpr double kTwoToneHighWeight = 0.94721359549995794;

struct RandomHamiltonian {
  Hamiltonian hamiltonian;
  double raw_l1 = 0.0;  // pre-merge coefficient sum, used for plan bounds
};

/// Random Pauli-string Hamiltonian: `n_terms` terms, each acting on a
/// random subset of qubits with random axes, coefficients uniform in
/// [-coeff_range, coeff_range], optionally rescaled to a fixed l1 sum.
inline RandomHamiltonian random_hamiltonian(SplitMix64& rng, std::uint32_t n_qubits,
                                            std::uint64_t n_terms,
                                            double scale_l1 = 0.0,
                                            double coeff_range = 2.0) {
  std::vector<PauliTerm> terms;
  for (std::uint64_t t = 0; t < n_terms; ++t) {
    const std::uint64_t len = rng.uniform_int(0, n_qubits);
    std::vector<std::uint32_t> qubits;
    for (std::uint64_t i = 0; i < len; ++i)
      qubits.push_back(static_cast<std::uint32_t>(rng.uniform_int(0, n_qubits - 1)));
    std::sort(qubits.begin(), qubits.end());
    qubits.erase(std::unique(qubits.begin(), qubits.end()), qubits.end());
    PauliTerm term;
    for (std::uint32_t q : qubits) {
      const auto axis = static_cast<PauliAxis>(rng.uniform_int(0, 2));
      term.factors.push_back({q, axis});
    }
    term.coefficient = rng.uniform(-coeff_range, coeff_range);
    terms.push_back(std::move(term));
  }
  double raw_l1 = 0.0;
  for (const auto& t : terms) raw_l1 += std::abs(t.coefficient);
  if (scale_l1 > 0.0 && raw_l1 > 0.0) {
    for (auto& t : terms) t.coefficient *= scale_l1 / raw_l1;
    raw_l1 = scale_l1;
  }
  return {Hamiltonian::from_terms(std::move(terms), n_qubits), raw_l1};
}

inline std::string index_to_bits(std::uint64_t index, std::uint32_t n_qubits) {
  std::string bits(n_qubits, '0');
  for (std::uint32_t q = 0; q < n_qubits; ++q)
    if ((index >> (n_qubits - 1 - q)) & 1) bits[q] = '1';
  return bits;
}

/// Distinct oracle lines of a (hamiltonian, reference) pair: grouped
/// energies with weights summed per degenerate level.
inline OverlapTable oracle_profile(const Hamiltonian& h, const ReferenceSpec& ref) {
  const auto decomp = diagonalize(h);
  const auto table = overlaps(decomp, prepare_reference(ref, h.n_qubits()));
  return group_by_energy(table);
}

// ---------------------------------------------------------------------
// Seeded fixture family A: well-separated spectra (criteria 3 and 5).
// 3-qubit random Hamiltonians rescaled to l1 = 2.4 with a random basis
// reference, filtered on their oracle profile.

struct SeededSystem {
  std::uint64_t seed = 0;
  Hamiltonian hamiltonian;
  double raw_l1 = 0.0;
  ReferenceSpec reference;
  OverlapTable profile;  // grouped oracle lines

  SeededSystem(std::uint64_t s, Hamiltonian h, double l1, ReferenceSpec r,
               OverlapTable p)
      : seed(s), hamiltonian(std::move(h)), raw_l1(l1), reference(std::move(r)),
        profile(std::move(p)) {}
};

inline SeededSystem make_candidate(std::uint64_t seed) {
  SplitMix64 rng(seed);
  const std::uint64_t n_terms = rng.uniform_int(3, 8);
  auto rh = random_hamiltonian(rng, 3, n_terms, 2.4);
  const std::uint64_t ref_bits = rng.next() % 8;
  auto ref = ReferenceSpec::basis(index_to_bits(ref_bits, 3));
  auto profile = oracle_profile(rh.hamiltonian, ref);
  return SeededSystem(seed, std::move(rh.hamiltonian), rh.raw_l1, std::move(ref),
                      std::move(profile));
}

/// Significant lines (weight >= wthr) of a profile.
inline std::vector<OverlapEntry> significant_lines(const OverlapTable& profile,
                                                   double wthr) {
  std::vector<OverlapEntry> out;
  for (const auto& e : profile.entries)
    if (e.weight >= wthr) out.push_back(e);
  return out;
}

/// Clean-spectrum filter: 2..6 significant lines, every one with weight
/// >= 0.05, |E| >= 0.15, and pairwise |E| gaps > 0.3 — comfortably
/// resolvable at every plan used by the recovery criteria.
inline bool clean_spectrum_filter(const OverlapTable& profile) {
  const auto sig = significant_lines(profile, 1e-3);
  if (sig.size() < 2 || sig.size() > 6) return false;
  std::vector<double> abs_e;
  for (const auto& e : sig) {
    if (e.weight < 0.05 || std::abs(e.energy) < 0.15) return false;
    abs_e.push_back(std::abs(e.energy));
  }
  std::sort(abs_e.begin(), abs_e.end());
  for (std::size_t i = 0; i + 1 < abs_e.size(); ++i)
    if (abs_e[i + 1] - abs_e[i] <= 0.3) return false;
  return true;
}

/// Sign-resolution filter: clean, mixed-sign, every significant line with
/// weight >= 0.02, |E| > 2.5*s0 and |E| gaps > 4*s0 (s0 = 0.05).
inline bool mixed_sign_filter(const OverlapTable& profile) {
  constexpr double s0 = 0.05;
  const auto sig = significant_lines(profile, 1e-3);
  if (sig.size() < 2 || sig.size() > 6) return false;
  bool any_pos = false, any_neg = false;
  std::vector<double> abs_e;
  for (const auto& e : sig) {
    if (e.weight < 0.02 || std::abs(e.energy) < 2.5 * s0) return false;
    (e.energy > 0 ? any_pos : any_neg) = true;
    abs_e.push_back(std::abs(e.energy));
  }
  if (!any_pos || !any_neg) return false;
  std::sort(abs_e.begin(), abs_e.end());
  for (std::size_t i = 0; i + 1 < abs_e.size(); ++i)
    if (abs_e[i + 1] - abs_e[i] <= 4.0 * s0) return false;
  return true;
}

template <typename Filter>
inline std::vector<SeededSystem> pick_systems(std::size_t count, Filter&& filter,
                                              std::uint64_t start_seed) {
  std::vector<SeededSystem> out;
  std::uint64_t seed = start_seed;
  std::uint64_t attempts = 0;
  while (out.size() < count) {
    if (++attempts > 4000)
      throw std::runtime_error("fixture seed search exhausted");
    auto candidate = make_candidate(seed++);
    if (filter(candidate.profile)) out.push_back(std::move(candidate));
  }
  return out;
}

// ---------------------------------------------------------------------
// Seeded fixture family B: dense spectra with leakage riders (criterion 2).
// Diagonal (Z-string) Hamiltonians with placed energies: one dominant tone,
// two low-weight satellites riding its sidelobe skirt at small |E| gaps,
// five midweight satellites. Reproduces the leakage regime where recovery
// errors spread over the full quantization bin.

/// Z-string Hamiltonian whose 2^3 diagonal entries are exactly `energies`
/// (index i uses qubit 0 as the most significant bit).
inline Hamiltonian walsh_hamiltonian(const std::vector<double>& energies) {
  std::vector<PauliTerm> terms;
  for (std::uint32_t mask = 0; mask < 8; ++mask) {
    double coeff = 0.0;
    for (std::uint32_t i = 0; i < 8; ++i) {
      int sign = 1;
      for (std::uint32_t q = 0; q < 3; ++q)
        if (((mask >> q) & 1) && ((i >> (2 - q)) & 1)) sign = -sign;
      coeff += sign * energies[i];
    }
    coeff /= 8.0;
    if (std::abs(coeff) <= 1e-15) continue;
    PauliTerm term;
    term.coefficient = coeff;
    for (std::uint32_t q = 0; q < 3; ++q)
      if ((mask >> q) & 1) term.factors.push_back({q, PauliAxis::Z});
    terms.push_back(std::move(term));
  }
  return Hamiltonian::from_terms(std::move(terms), 3);
}

struct DenseSystem {
  Hamiltonian hamiltonian;
  ReferenceSpec reference;
};

inline DenseSystem dense_leakage_fixture(std::uint64_t seed) {
  SplitMix64 rng(seed);
  auto draw_sign = [&] { return rng.uniform() < 0.5 ? 1.0 : -1.0; };

  std::vector<double> energies;
  std::vector<double> weights;
  {
    const double magnitude = rng.uniform(1.4, 2.2);
    energies.push_back(magnitude * draw_sign());
    weights.push_back(0.0);  // filled with the remaining mass below
  }
  const double dominant = energies[0];
  for (int side : {+1, -1}) {
    const double gap = rng.uniform(0.038, 0.05);
    const double magnitude = std::abs(dominant) + side * gap;
    const double sign =
        (dominant > 0 ? 1.0 : -1.0) * (rng.uniform() < 0.7 ? 1.0 : -1.0);
    energies.push_back(magnitude * sign);
    weights.push_back(rng.uniform(0.0015, 0.0025));
  }
  while (energies.size() < 8) {
    const double magnitude = rng.uniform(0.25, 2.6);
    const double value = magnitude * draw_sign();
    bool ok = true;
    for (std::size_t i = 3; i < energies.size() && ok; ++i)
      if (std::abs(std::abs(value) - std::abs(energies[i])) <= 0.12) ok = false;
    for (std::size_t i = 0; i < 3 && ok; ++i)
      if (std::abs(std::abs(value) - std::abs(energies[i])) <= 0.09) ok = false;
    if (!ok) continue;
    energies.push_back(value);
    weights.push_back(rng.uniform(0.004, 0.02));
  }
  double satellite_mass = 0.0;
  for (double w : weights) satellite_mass += w;
  weights[0] = 1.0 - satellite_mass;

  std::vector<std::pair<std::string, double>> amplitudes;
  for (std::uint32_t i = 0; i < 8; ++i)
    amplitudes.emplace_back(index_to_bits(i, 3), std::sqrt(weights[i]));
  return {walsh_hamiltonian(energies), ReferenceSpec::weighted(std::move(amplitudes))};
}

// ---------------------------------------------------------------------
// Independent oracles for the spectral path.

/// O(N^2) DFT straight off the defining sum; the check FFTW is held to.
inline std::vector<std::complex<double>> naive_dft(const std::vector<double>& values) {
  const std::size_t n = values.size();
  const std::size_t bins = n / 2 + 1;
  std::vector<std::complex<double>> out(bins);
  for (std::size_t k = 0; k < bins; ++k) {
    std::complex<double> sum = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
      const double angle = -2.0 * kPi * static_cast<double>(k) *
                           static_cast<double>(m) / static_cast<double>(n);
      sum += values[m] * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    out[k] = sum;
  }
  return out;
}

/// Largest distance to the nearest detected |E| over oracle lines with
/// weight >= wthr; infinity when a line has no estimate at all.
template <typename Estimates>
inline double max_recovery_error(const OverlapTable& profile,
                                 const Estimates& estimates, double wthr) {
  double worst = 0.0;
  for (const auto& line : profile.entries) {
    if (line.weight < wthr) continue;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& est : estimates)
      best = std::min(best, std::abs(std::abs(line.energy) - est.abs_energy));
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace xz24::testing

// Absolute-tolerance comparison; doctest's Approx is relative by design.
#define CHECK_ABS(value, expected, tol) \
  CHECK(std::abs((value) - (expected)) <= (tol))
