#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "xz24/hamiltonian.hpp"
#include "xz24/oracle.hpp"

namespace xz24 {

/// Target-register initial state: a single computational basis bitstring or
/// a real-weighted superposition of bitstrings. Duplicated bitstrings merge
/// by summing amplitudes; the prepared state is normalized.
class ReferenceSpec {
 public:
  static ReferenceSpec basis(std::string bits);
  static ReferenceSpec weighted(std::vector<std::pair<std::string, double>> entries);

  const std::vector<std::pair<std::string, double>>& entries() const noexcept {
    return entries_;
  }
  /// The bitstring when the spec is a single basis state, else nullopt.
  std::optional<std::string> single_bitstring() const;
  std::uint32_t bit_length() const noexcept;

 private:
  ReferenceSpec() = default;
  std::vector<std::pair<std::string, double>> entries_;
};

/// Normalized 2^n statevector for the spec; throws on length mismatch or a
/// zero-norm weighted list.
Eigen::VectorXcd prepare_reference(const ReferenceSpec& spec, std::uint32_t n_qubits);

struct CircuitPointResult {
  double t = 0.0;
  double p0 = 0.0;  // ancilla collapses to |0>
  double p1 = 0.0;  // ancilla collapses to |1>
  double q = 0.0;   // p1 - p0
  std::optional<std::uint64_t> shots_used;
};

/// Intermediate statevectors of one circuit execution, for validating the
/// state algebra stage by stage. Layout: ancilla is qubit 0 (most
/// significant bit), so the first 2^n amplitudes are the ancilla-|0> block.
struct CircuitTrace {
  Eigen::VectorXcd after_first_sandwich;  // H' S H' on the ancilla
  Eigen::VectorXcd after_controlled;      // controlled e^{-+ iHt/2} pair
  Eigen::VectorXcd final_state;           // second H' S H' sandwich
};

/// Exact real-time evolution backed by a cached eigendecomposition: one
/// diagonalization per Hamiltonian, then e^{-iHt} psi = V e^{-i Lambda t}
/// V^dagger psi at any t. Immutable once built; safe to share across
/// concurrent point evaluations.
class Propagator {
 public:
  explicit Propagator(const Hamiltonian& h,
                      std::uint32_t qubit_cap = kDefaultQubitCap);

  std::uint32_t n_qubits() const noexcept { return n_qubits_; }
  const EigenDecomposition& decomposition() const noexcept { return decomp_; }

  /// Applies e^{-iHt} (pass negative t for the inverse evolution).
  Eigen::VectorXcd evolve(const Eigen::VectorXcd& state, double t) const;

 private:
  std::uint32_t n_qubits_;
  EigenDecomposition decomp_;
};

/// Runs the full ancilla circuit at time t: H' S H' on the ancilla, the
/// controlled e^{-iHt/2} / e^{+iHt/2} pair, H' S H' again, then reads the
/// ancilla probabilities. `trace`, when non-null, receives the intermediate
/// joint states.
CircuitPointResult run_circuit_point(const Propagator& prop,
                                     const Eigen::VectorXcd& ref, double t,
                                     CircuitTrace* trace = nullptr);
CircuitPointResult run_circuit_point(const Hamiltonian& h, const ReferenceSpec& spec,
                                     double t);

/// Q(t) = Re <ref| e^{-iHt} |ref>, computed without the ancilla register.
/// Agrees with run_circuit_point's q to 1e-10; about half the state size.
double direct_expectation_point(const Propagator& prop,
                                const Eigen::VectorXcd& ref, double t);
double direct_expectation_point(const Hamiltonian& h, const ReferenceSpec& spec,
                                double t);

/// Replaces exact probabilities with a finite-shot estimate: `shots`
/// Bernoulli(p1) draws, p1_hat = successes/shots, q_hat = 2 p1_hat - 1.
/// Deterministic for a fixed seed.
CircuitPointResult shot_sample(const CircuitPointResult& exact,
                               std::uint64_t shots, std::uint64_t seed);

}  // namespace xz24
