#include "xz24/oracle.hpp"

#include <cmath>

#include "xz24/errors.hpp"

namespace xz24 {

EigenDecomposition diagonalize(const Hamiltonian& h, std::uint32_t qubit_cap) {
  Eigen::MatrixXcd m = h.dense_matrix(qubit_cap);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorCode::numeric_error, "eigendecomposition failed to converge");
  return EigenDecomposition{solver.eigenvalues(), solver.eigenvectors()};
}

OverlapTable overlaps(const EigenDecomposition& d, const Eigen::VectorXcd& ref) {
  if (ref.size() != d.eigenvectors.rows())
    throw_dimension("reference state dimension " + std::to_string(ref.size()) +
                    " does not match decomposition dimension " +
                    std::to_string(d.eigenvectors.rows()));
  Eigen::VectorXcd c = d.eigenvectors.adjoint() * ref;
  OverlapTable table;
  table.entries.reserve(c.size());
  for (Eigen::Index i = 0; i < c.size(); ++i)
    table.entries.push_back({d.energies[i], std::norm(c[i])});
  return table;
}

double analytic_signal(const OverlapTable& table, double t) {
  double q = 0.0;
  for (const auto& e : table.entries) q += e.weight * std::cos(e.energy * t);
  return q;
}

OverlapTable group_by_energy(const OverlapTable& table, double tol) {
  OverlapTable grouped;
  for (const auto& e : table.entries) {
    if (!grouped.entries.empty() &&
        std::abs(grouped.entries.back().energy - e.energy) < tol) {
      grouped.entries.back().weight += e.weight;
    } else {
      grouped.entries.push_back(e);
    }
  }
  return grouped;
}

}  // namespace xz24
