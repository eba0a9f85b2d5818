#include "xz24/simulator.hpp"

#include <cmath>
#include <complex>
#include <map>

#include "xz24/errors.hpp"
#include "xz24/rng.hpp"

namespace xz24 {

namespace {

using Complex = std::complex<double>;

std::size_t bits_to_index(std::string_view bits) {
  std::size_t index = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw_invalid("bitstring must contain only 0/1");
    index = (index << 1) | static_cast<std::size_t>(c - '0');
  }
  return index;
}

// One H' S H' sandwich on the ancilla (qubit 0 = MSB of the joint index).
// Blocks: b0 = amplitudes with ancilla |0>, b1 with ancilla |1>.
void apply_ancilla_sandwich(Eigen::VectorXcd& joint) {
  const Eigen::Index half = joint.size() / 2;
  auto b0 = joint.head(half);
  auto b1 = joint.tail(half);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  // H'
  for (Eigen::Index i = 0; i < half; ++i) {
    const Complex a = b0[i], b = b1[i];
    b0[i] = (a + b) * inv_sqrt2;
    b1[i] = (a - b) * inv_sqrt2;
  }
  // S
  b1 *= Complex(0, 1);
  // H'
  for (Eigen::Index i = 0; i < half; ++i) {
    const Complex a = b0[i], b = b1[i];
    b0[i] = (a + b) * inv_sqrt2;
    b1[i] = (a - b) * inv_sqrt2;
  }
}

}  // namespace

ReferenceSpec ReferenceSpec::basis(std::string bits) {
  return weighted({{std::move(bits), 1.0}});
}

ReferenceSpec ReferenceSpec::weighted(
    std::vector<std::pair<std::string, double>> entries) {
  if (entries.empty()) throw_invalid("reference spec is empty");
  const std::size_t len = entries.front().first.size();
  if (len == 0) throw_invalid("reference bitstring is empty");

  // Merge duplicate bitstrings before normalization.
  std::map<std::string, double> merged;
  for (auto& [bits, amp] : entries) {
    if (bits.size() != len)
      throw_invalid("reference bitstrings must all have the same length");
    if (!std::isfinite(amp)) throw_invalid("reference amplitude must be finite");
    bits_to_index(bits);  // validates characters
    merged[std::move(bits)] += amp;
  }

  double norm2 = 0.0;
  for (const auto& [bits, amp] : merged) norm2 += amp * amp;
  if (norm2 <= 0.0) throw_invalid("reference spec has zero norm");

  ReferenceSpec spec;
  spec.entries_.assign(merged.begin(), merged.end());
  return spec;
}

std::optional<std::string> ReferenceSpec::single_bitstring() const {
  if (entries_.size() == 1) return entries_.front().first;
  return std::nullopt;
}

std::uint32_t ReferenceSpec::bit_length() const noexcept {
  return static_cast<std::uint32_t>(entries_.front().first.size());
}

Eigen::VectorXcd prepare_reference(const ReferenceSpec& spec, std::uint32_t n_qubits) {
  if (spec.bit_length() != n_qubits)
    throw_invalid("reference bitstring length " + std::to_string(spec.bit_length()) +
                  " does not match qubit count " + std::to_string(n_qubits));
  Eigen::VectorXcd state = Eigen::VectorXcd::Zero(std::size_t{1} << n_qubits);
  for (const auto& [bits, amp] : spec.entries())
    state[static_cast<Eigen::Index>(bits_to_index(bits))] = amp;
  state /= state.norm();
  return state;
}

Propagator::Propagator(const Hamiltonian& h, std::uint32_t qubit_cap)
    : n_qubits_(h.n_qubits()), decomp_(diagonalize(h, qubit_cap)) {}

Eigen::VectorXcd Propagator::evolve(const Eigen::VectorXcd& state, double t) const {
  if (!std::isfinite(t)) throw_invalid("evolution time must be finite");
  Eigen::VectorXcd coeffs = decomp_.eigenvectors.adjoint() * state;
  for (Eigen::Index i = 0; i < coeffs.size(); ++i)
    coeffs[i] *= std::polar(1.0, -decomp_.energies[i] * t);
  return decomp_.eigenvectors * coeffs;
}

CircuitPointResult run_circuit_point(const Propagator& prop,
                                     const Eigen::VectorXcd& ref, double t,
                                     CircuitTrace* trace) {
  if (!std::isfinite(t)) throw_invalid("evolution time must be finite");
  const Eigen::Index dim = ref.size();
  if (dim != Eigen::Index(std::size_t{1} << prop.n_qubits()))
    throw_dimension("reference state dimension does not match the Hamiltonian");

  // Joint register: ancilla |0> tensor ref.
  Eigen::VectorXcd joint = Eigen::VectorXcd::Zero(2 * dim);
  joint.head(dim) = ref;

  apply_ancilla_sandwich(joint);
  if (trace) trace->after_first_sandwich = joint;

  joint.head(dim) = prop.evolve(joint.head(dim), t / 2.0);   // e^{-iHt/2}
  joint.tail(dim) = prop.evolve(joint.tail(dim), -t / 2.0);  // e^{+iHt/2}
  if (trace) trace->after_controlled = joint;

  apply_ancilla_sandwich(joint);
  if (trace) trace->final_state = joint;

  CircuitPointResult r;
  r.t = t;
  r.p0 = joint.head(dim).squaredNorm();
  r.p1 = joint.tail(dim).squaredNorm();
  r.q = r.p1 - r.p0;
  return r;
}

CircuitPointResult run_circuit_point(const Hamiltonian& h, const ReferenceSpec& spec,
                                     double t) {
  Propagator prop(h);
  return run_circuit_point(prop, prepare_reference(spec, h.n_qubits()), t);
}

double direct_expectation_point(const Propagator& prop,
                                const Eigen::VectorXcd& ref, double t) {
  Eigen::VectorXcd evolved = prop.evolve(ref, t);
  return ref.dot(evolved).real();  // Re <ref|e^{-iHt}|ref>
}

double direct_expectation_point(const Hamiltonian& h, const ReferenceSpec& spec,
                                double t) {
  Propagator prop(h);
  return direct_expectation_point(prop, prepare_reference(spec, h.n_qubits()), t);
}

CircuitPointResult shot_sample(const CircuitPointResult& exact,
                               std::uint64_t shots, std::uint64_t seed) {
  if (shots < 1) throw_invalid("shot count must be >= 1");
  SplitMix64 rng(seed);
  std::uint64_t successes = 0;
  for (std::uint64_t s = 0; s < shots; ++s)
    if (rng.uniform() < exact.p1) ++successes;

  CircuitPointResult r;
  r.t = exact.t;
  r.p1 = static_cast<double>(successes) / static_cast<double>(shots);
  r.p0 = 1.0 - r.p1;
  r.q = 2.0 * r.p1 - 1.0;
  r.shots_used = shots;
  return r;
}

}  // namespace xz24
