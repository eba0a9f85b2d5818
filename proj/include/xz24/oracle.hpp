#pragma once

#include <Eigen/Dense>
#include <vector>

#include "xz24/hamiltonian.hpp"

namespace xz24 {

/// Full dense eigendecomposition of a Hamiltonian. Energies ascend and
/// eigenvector columns align with them. Immutable; share freely.
struct EigenDecomposition {
  Eigen::VectorXd energies;
  Eigen::MatrixXcd eigenvectors;
};

struct OverlapEntry {
  double energy;
  double weight;  // |<Psi_i|psi_ref>|^2
};

/// Reference-state weights against every eigenvector, in ascending-energy
/// order. Zero weights are kept; callers filter at reporting time.
struct OverlapTable {
  std::vector<OverlapEntry> entries;
};

/// Brute-force ground truth: dense Hermitian diagonalization.
EigenDecomposition diagonalize(const Hamiltonian& h,
                               std::uint32_t qubit_cap = kDefaultQubitCap);

/// Projects a normalized reference state onto the eigenbasis.
OverlapTable overlaps(const EigenDecomposition& d, const Eigen::VectorXcd& ref);

/// sum_i w_i * cos(E_i t) — the closed-form signal the circuit must match.
double analytic_signal(const OverlapTable& table, double t);

/// Merges entries whose energies coincide within `tol`; weights within a
/// degenerate subspace are basis-dependent, their sum is not.
OverlapTable group_by_energy(const OverlapTable& table, double tol = 1e-9);

}  // namespace xz24
