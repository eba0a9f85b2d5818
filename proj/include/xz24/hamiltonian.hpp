#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace xz24 {

/// Largest target-register size for which dense matrices and exact
/// propagators are built. 2^14 keeps the dense route workstation-sized.
inline constexpr std::uint32_t kDefaultQubitCap = 14;

enum class PauliAxis : std::uint8_t { X, Y, Z };

char axis_letter(PauliAxis axis);

struct PauliFactor {
  std::uint32_t qubit;
  PauliAxis axis;

  friend bool operator==(const PauliFactor&, const PauliFactor&) = default;
};

/// One weighted Pauli string. Factors are sorted by qubit index and each
/// qubit appears at most once; an empty factor list is the identity.
struct PauliTerm {
  double coefficient = 0.0;
  std::vector<PauliFactor> factors;

  friend bool operator==(const PauliTerm&, const PauliTerm&) = default;
};

/// A real-weighted sum of Pauli strings on n qubits, canonicalized on
/// construction: factor lists sorted, duplicate terms merged, term order
/// deterministic. Immutable afterwards, so instances can be shared freely
/// across threads.
///
/// Basis convention: qubit 0 is the most significant bit of a basis-state
/// index, i.e. |b0 b1 ... b_{n-1}> maps to index sum_q b_q * 2^(n-1-q).
class Hamiltonian {
 public:
  /// Parses the line-oriented text format (see file-format docs in the
  /// README): optional `qubits <n>` header, then one term per line as a
  /// coefficient followed by axis-qubit tokens like `Z0 X3`. Lines starting
  /// with `#` and blank lines are ignored.
  static Hamiltonian parse(std::string_view text);

  /// Builds from raw terms; factors may be unsorted but a qubit may not
  /// repeat within a term. `n_qubits_hint` of 0 means infer from indices.
  static Hamiltonian from_terms(std::vector<PauliTerm> terms,
                                std::uint32_t n_qubits_hint = 0);

  std::uint32_t n_qubits() const noexcept { return n_qubits_; }
  const std::vector<PauliTerm>& terms() const noexcept { return terms_; }

  /// Sum of |coefficient| over all terms. Never smaller than the spectral
  /// radius, which makes it a safe default for the Nyquist bound.
  double l1_norm_bound() const;

  /// Returns a copy with `s0` added to the identity coefficient. Shifts
  /// every eigenvalue by exactly s0 and nothing else.
  Hamiltonian offset(double s0) const;

  /// <bits|H|bits> for a computational basis state given as a '0'/'1'
  /// string of length n_qubits. Terms containing X or Y contribute zero.
  double basis_expectation(std::string_view bits) const;

  /// Dense 2^n x 2^n matrix. Hermitian by construction (real coefficients).
  Eigen::MatrixXcd dense_matrix(std::uint32_t qubit_cap = kDefaultQubitCap) const;

  /// Canonical text form; parse(serialize()) reconstructs an equal object.
  std::string serialize() const;

  friend bool operator==(const Hamiltonian&, const Hamiltonian&) = default;

 private:
  Hamiltonian() = default;

  std::uint32_t n_qubits_ = 1;
  std::vector<PauliTerm> terms_;
};

}  // namespace xz24
