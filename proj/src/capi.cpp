#include "xz24.h"

#include <cmath>
#include <cstring>
#include <string>

#include "xz24/errors.hpp"
#include "xz24/hamiltonian.hpp"
#include "xz24/io.hpp"
#include "xz24/oracle.hpp"
#include "xz24/sampling.hpp"
#include "xz24/sign_resolution.hpp"
#include "xz24/simulator.hpp"
#include "xz24/spectral.hpp"

struct xz24_hamiltonian { xz24::Hamiltonian impl; };
struct xz24_reference { xz24::ReferenceSpec impl; };
struct xz24_oracle {
  xz24::EigenDecomposition impl;
  std::uint32_t n_qubits;
};
struct xz24_overlap_table { xz24::OverlapTable impl; };
struct xz24_plan { xz24::SamplingPlan impl; };
struct xz24_signal {
  xz24::Signal impl;
  xz24_plan plan_view;
};
struct xz24_spectrum { xz24::Spectrum impl; };
struct xz24_estimates { std::vector<xz24::EigenEstimate> impl; };
struct xz24_resolution { xz24::SignResolution impl; };
struct xz24_recovery { xz24::RecoveryReport impl; };

namespace {

thread_local std::string g_last_error;

xz24_status status_from(const xz24::Error& e) {
  using xz24::ErrorCode;
  switch (e.code()) {
    case ErrorCode::invalid_argument: return XZ24_ERR_INVALID_ARGUMENT;
    case ErrorCode::parse_error: return XZ24_ERR_PARSE;
    case ErrorCode::dimension_error: return XZ24_ERR_DIMENSION;
    case ErrorCode::numeric_error: return XZ24_ERR_NUMERIC;
    case ErrorCode::io_error: return XZ24_ERR_IO;
  }
  return XZ24_ERR_INTERNAL;
}

template <typename Fn>
xz24_status guard(Fn&& fn) {
  try {
    fn();
    return XZ24_OK;
  } catch (const xz24::Error& e) {
    g_last_error = e.what();
    return status_from(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return XZ24_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return XZ24_ERR_INTERNAL;
  }
}

xz24_status require(bool ok, const char* what) {
  if (ok) return XZ24_OK;
  g_last_error = what;
  return XZ24_ERR_INVALID_ARGUMENT;
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

int sign_to_c(xz24::EnergySign sign) {
  switch (sign) {
    case xz24::EnergySign::positive: return XZ24_SIGN_POSITIVE;
    case xz24::EnergySign::negative: return XZ24_SIGN_NEGATIVE;
    case xz24::EnergySign::ambiguous: return XZ24_SIGN_AMBIGUOUS;
    case xz24::EnergySign::unknown: return XZ24_SIGN_UNKNOWN;
  }
  return XZ24_SIGN_UNKNOWN;
}

xz24_signal* wrap_signal(xz24::Signal&& signal) {
  auto* out = new xz24_signal{std::move(signal), {}};
  out->plan_view.impl = out->impl.plan;
  return out;
}

}  // namespace

extern "C" {

const char* xz24_version(void) { return "0.1.0"; }

const char* xz24_last_error(void) { return g_last_error.c_str(); }

void xz24_string_free(char* s) { delete[] s; }

/* ------------------------------- hamiltonian ---------------------------- */

xz24_status xz24_hamiltonian_parse(const char* text, xz24_hamiltonian** out) {
  if (auto st = require(text && out, "null argument")) return st;
  return guard([&] { *out = new xz24_hamiltonian{xz24::Hamiltonian::parse(text)}; });
}

xz24_status xz24_hamiltonian_load(const char* path, xz24_hamiltonian** out) {
  if (auto st = require(path && out, "null argument")) return st;
  return guard([&] {
    *out = new xz24_hamiltonian{xz24::Hamiltonian::parse(xz24::io::read_file(path))};
  });
}

void xz24_hamiltonian_free(xz24_hamiltonian* h) { delete h; }

uint32_t xz24_hamiltonian_n_qubits(const xz24_hamiltonian* h) {
  return h ? h->impl.n_qubits() : 0;
}

size_t xz24_hamiltonian_term_count(const xz24_hamiltonian* h) {
  return h ? h->impl.terms().size() : 0;
}

double xz24_hamiltonian_l1_norm_bound(const xz24_hamiltonian* h) {
  return h ? h->impl.l1_norm_bound() : 0.0;
}

xz24_status xz24_hamiltonian_offset(const xz24_hamiltonian* h, double s0,
                                    xz24_hamiltonian** out) {
  if (auto st = require(h && out, "null argument")) return st;
  return guard([&] { *out = new xz24_hamiltonian{h->impl.offset(s0)}; });
}

xz24_status xz24_hamiltonian_basis_expectation(const xz24_hamiltonian* h,
                                               const char* bits, double* out) {
  if (auto st = require(h && bits && out, "null argument")) return st;
  return guard([&] { *out = h->impl.basis_expectation(bits); });
}

xz24_status xz24_hamiltonian_serialize(const xz24_hamiltonian* h, char** out) {
  if (auto st = require(h && out, "null argument")) return st;
  return guard([&] { *out = copy_string(h->impl.serialize()); });
}

/* -------------------------------- reference ----------------------------- */

xz24_status xz24_reference_basis(const char* bits, xz24_reference** out) {
  if (auto st = require(bits && out, "null argument")) return st;
  return guard([&] { *out = new xz24_reference{xz24::ReferenceSpec::basis(bits)}; });
}

xz24_status xz24_reference_weighted(const char* const* bitstrings,
                                    const double* amplitudes, size_t count,
                                    xz24_reference** out) {
  if (auto st = require(bitstrings && amplitudes && out, "null argument")) return st;
  return guard([&] {
    std::vector<std::pair<std::string, double>> entries;
    entries.reserve(count);
    for (size_t i = 0; i < count; ++i) {
      if (!bitstrings[i]) xz24::throw_invalid("null bitstring in reference");
      entries.emplace_back(bitstrings[i], amplitudes[i]);
    }
    *out = new xz24_reference{xz24::ReferenceSpec::weighted(std::move(entries))};
  });
}

xz24_status xz24_reference_parse(const char* text, xz24_reference** out) {
  if (auto st = require(text && out, "null argument")) return st;
  return guard([&] { *out = new xz24_reference{xz24::io::reference_from_text(text)}; });
}

void xz24_reference_free(xz24_reference* ref) { delete ref; }

/* --------------------------------- oracle ------------------------------- */

xz24_status xz24_oracle_create(const xz24_hamiltonian* h, xz24_oracle** out) {
  if (auto st = require(h && out, "null argument")) return st;
  return guard([&] {
    *out = new xz24_oracle{xz24::diagonalize(h->impl), h->impl.n_qubits()};
  });
}

void xz24_oracle_free(xz24_oracle* oracle) { delete oracle; }

size_t xz24_oracle_count(const xz24_oracle* oracle) {
  return oracle ? static_cast<size_t>(oracle->impl.energies.size()) : 0;
}

double xz24_oracle_energy(const xz24_oracle* oracle, size_t i) {
  if (!oracle || i >= static_cast<size_t>(oracle->impl.energies.size()))
    return std::nan("");
  return oracle->impl.energies[static_cast<Eigen::Index>(i)];
}

xz24_status xz24_oracle_overlaps(const xz24_oracle* oracle,
                                 const xz24_reference* ref,
                                 xz24_overlap_table** out) {
  if (auto st = require(oracle && ref && out, "null argument")) return st;
  return guard([&] {
    const auto state = xz24::prepare_reference(ref->impl, oracle->n_qubits);
    *out = new xz24_overlap_table{xz24::overlaps(oracle->impl, state)};
  });
}

void xz24_overlap_table_free(xz24_overlap_table* table) { delete table; }

size_t xz24_overlap_table_count(const xz24_overlap_table* table) {
  return table ? table->impl.entries.size() : 0;
}

xz24_status xz24_overlap_table_entry(const xz24_overlap_table* table, size_t i,
                                     double* energy, double* weight) {
  if (auto st = require(table && i < table->impl.entries.size(),
                        "overlap table index out of range"))
    return st;
  if (energy) *energy = table->impl.entries[i].energy;
  if (weight) *weight = table->impl.entries[i].weight;
  return XZ24_OK;
}

double xz24_overlap_table_signal(const xz24_overlap_table* table, double t) {
  return table ? xz24::analytic_signal(table->impl, t) : std::nan("");
}

xz24_status xz24_oracle_to_json(const xz24_hamiltonian* h,
                                const xz24_overlap_table* table, char** out) {
  if (auto st = require(h && table && out, "null argument")) return st;
  return guard([&] {
    const auto& entries = table->impl.entries;
    const double ground = entries.empty() ? std::nan("") : entries.front().energy;
    *out = copy_string(
        xz24::io::oracle_to_json(table->impl, ground, h->impl.l1_norm_bound()));
  });
}

/* -------------------------------- simulator ----------------------------- */

xz24_status xz24_circuit_point(const xz24_hamiltonian* h, const xz24_reference* ref,
                               double t, double* p0, double* p1, double* q) {
  if (auto st = require(h && ref, "null argument")) return st;
  return guard([&] {
    const auto r = xz24::run_circuit_point(h->impl, ref->impl, t);
    if (p0) *p0 = r.p0;
    if (p1) *p1 = r.p1;
    if (q) *q = r.q;
  });
}

xz24_status xz24_expectation_point(const xz24_hamiltonian* h,
                                   const xz24_reference* ref, double t, double* q) {
  if (auto st = require(h && ref && q, "null argument")) return st;
  return guard([&] { *q = xz24::direct_expectation_point(h->impl, ref->impl, t); });
}

xz24_status xz24_shot_sample(double p1_exact, uint64_t shots, uint64_t seed,
                             double* p0, double* p1, double* q) {
  return guard([&] {
    xz24::CircuitPointResult exact;
    exact.p1 = p1_exact;
    exact.p0 = 1.0 - p1_exact;
    exact.q = 2.0 * p1_exact - 1.0;
    const auto r = xz24::shot_sample(exact, shots, seed);
    if (p0) *p0 = r.p0;
    if (p1) *p1 = r.p1;
    if (q) *q = r.q;
  });
}

/* ---------------------------------- plans ------------------------------- */

xz24_status xz24_plan_make(double target_delta, double energy_bound,
                           double requested_interval, uint64_t shots,
                           int mirror_mode, xz24_plan** out) {
  if (auto st = require(out != nullptr, "null argument")) return st;
  return guard([&] {
    std::optional<double> interval;
    if (requested_interval > 0.0) interval = requested_interval;
    std::optional<std::uint64_t> shot_count;
    if (shots > 0) shot_count = shots;
    *out = new xz24_plan{xz24::make_plan(
        target_delta, energy_bound, interval, shot_count,
        mirror_mode ? xz24::SamplingMode::mirror : xz24::SamplingMode::full)};
  });
}

void xz24_plan_free(xz24_plan* plan) { delete plan; }

double xz24_plan_delta(const xz24_plan* plan) {
  return plan ? plan->impl.delta : std::nan("");
}
double xz24_plan_interval(const xz24_plan* plan) {
  return plan ? plan->impl.interval : std::nan("");
}
uint64_t xz24_plan_count(const xz24_plan* plan) {
  return plan ? plan->impl.count : 0;
}
double xz24_plan_t_max(const xz24_plan* plan) {
  return plan ? plan->impl.t_max : std::nan("");
}
double xz24_plan_energy_bound(const xz24_plan* plan) {
  return plan ? plan->impl.energy_bound : std::nan("");
}
uint64_t xz24_plan_shots(const xz24_plan* plan) {
  return plan && plan->impl.shots ? *plan->impl.shots : 0;
}
int xz24_plan_is_mirror(const xz24_plan* plan) {
  return plan && plan->impl.mode == xz24::SamplingMode::mirror ? 1 : 0;
}

xz24_status xz24_plan_to_json(const xz24_plan* plan, char** out) {
  if (auto st = require(plan && out, "null argument")) return st;
  return guard([&] { *out = copy_string(xz24::io::plan_to_json(plan->impl)); });
}

xz24_status xz24_plan_from_json(const char* text, xz24_plan** out) {
  if (auto st = require(text && out, "null argument")) return st;
  return guard([&] { *out = new xz24_plan{xz24::io::plan_from_json(text)}; });
}

double xz24_max_interval(double energy_bound) {
  return xz24::SamplingPlan::max_interval(energy_bound);
}

xz24_status xz24_energy_bound(const xz24_hamiltonian* h, const xz24_reference* ref,
                              int use_basis_heuristic, double* out) {
  if (auto st = require(h && out, "null argument")) return st;
  return guard([&] {
    std::optional<xz24::ReferenceSpec> spec;
    if (ref) spec = ref->impl;
    *out = xz24::estimate_energy_bound(h->impl, spec, use_basis_heuristic != 0);
  });
}

/* --------------------------------- signals ------------------------------ */

xz24_status xz24_signal_acquire(const xz24_hamiltonian* h, const xz24_reference* ref,
                                const xz24_plan* plan, uint64_t seed,
                                int use_circuit, xz24_signal** out) {
  if (auto st = require(h && ref && plan && out, "null argument")) return st;
  return guard([&] {
    xz24::AcquireOptions options;
    options.seed = seed;
    options.use_circuit = use_circuit != 0;
    *out = wrap_signal(xz24::acquire_signal(h->impl, ref->impl, plan->impl, options));
  });
}

void xz24_signal_free(xz24_signal* signal) { delete signal; }

size_t xz24_signal_count(const xz24_signal* signal) {
  return signal ? signal->impl.values.size() : 0;
}

double xz24_signal_value(const xz24_signal* signal, size_t n) {
  if (!signal || n >= signal->impl.values.size()) return std::nan("");
  return signal->impl.values[n];
}

double xz24_signal_time(const xz24_signal* signal, size_t n) {
  if (!signal || n >= signal->impl.values.size()) return std::nan("");
  return static_cast<double>(n) * signal->impl.plan.interval;
}

const xz24_plan* xz24_signal_plan(const xz24_signal* signal) {
  return signal ? &signal->plan_view : nullptr;
}

xz24_status xz24_signal_to_csv(const xz24_signal* signal, char** out) {
  if (auto st = require(signal && out, "null argument")) return st;
  return guard([&] { *out = copy_string(xz24::io::signal_to_csv(signal->impl)); });
}

xz24_status xz24_signal_from_csv(const char* text, xz24_signal** out) {
  if (auto st = require(text && out, "null argument")) return st;
  return guard([&] { *out = wrap_signal(xz24::io::signal_from_csv(text)); });
}

/* --------------------------------- spectra ------------------------------ */

xz24_status xz24_spectrum_transform(const xz24_signal* signal, xz24_spectrum** out) {
  if (auto st = require(signal && out, "null argument")) return st;
  return guard([&] { *out = new xz24_spectrum{xz24::transform(signal->impl)}; });
}

void xz24_spectrum_free(xz24_spectrum* spectrum) { delete spectrum; }

uint64_t xz24_spectrum_bin_count(const xz24_spectrum* spectrum) {
  return spectrum ? spectrum->impl.bin_count() : 0;
}

double xz24_spectrum_a0(const xz24_spectrum* spectrum) {
  return spectrum ? spectrum->impl.a0 : std::nan("");
}

double xz24_spectrum_coefficient(const xz24_spectrum* spectrum, uint64_t k) {
  if (!spectrum || k < 1 || k > spectrum->impl.bin_count()) return std::nan("");
  return spectrum->impl.coefficients[k - 1];
}

double xz24_spectrum_x(const xz24_spectrum* spectrum, uint64_t k) {
  if (!spectrum || k > spectrum->impl.bin_count()) return std::nan("");
  return spectrum->impl.x(k);
}

double xz24_spectrum_max_abs_imag(const xz24_spectrum* spectrum) {
  return spectrum ? spectrum->impl.max_abs_imag : std::nan("");
}

xz24_status xz24_spectrum_to_csv(const xz24_spectrum* spectrum, char** out) {
  if (auto st = require(spectrum && out, "null argument")) return st;
  return guard([&] { *out = copy_string(xz24::io::spectrum_to_csv(spectrum->impl)); });
}

/* -------------------------------- estimates ----------------------------- */

xz24_status xz24_detect_peaks(const xz24_spectrum* spectrum, double threshold,
                              xz24_estimates** out) {
  if (auto st = require(spectrum && out, "null argument")) return st;
  return guard([&] {
    *out = new xz24_estimates{xz24::detect_peaks(spectrum->impl, threshold)};
  });
}

void xz24_estimates_free(xz24_estimates* estimates) { delete estimates; }

size_t xz24_estimates_count(const xz24_estimates* estimates) {
  return estimates ? estimates->impl.size() : 0;
}

xz24_status xz24_estimates_get(const xz24_estimates* estimates, size_t i,
                               uint64_t* bin, double* x, double* abs_energy,
                               double* amplitude, int* sign, int* has_energy,
                               double* energy) {
  if (auto st = require(estimates && i < estimates->impl.size(),
                        "estimate index out of range"))
    return st;
  const auto& e = estimates->impl[i];
  if (bin) *bin = e.bin;
  if (x) *x = e.x;
  if (abs_energy) *abs_energy = e.abs_energy;
  if (amplitude) *amplitude = e.amplitude;
  if (sign) *sign = sign_to_c(e.sign);
  if (has_energy) *has_energy = e.energy.has_value() ? 1 : 0;
  if (energy) *energy = e.energy.value_or(std::nan(""));
  return XZ24_OK;
}

xz24_status xz24_estimates_to_json(const xz24_estimates* estimates, char** out) {
  if (auto st = require(estimates && out, "null argument")) return st;
  return guard([&] {
    *out = copy_string(xz24::io::estimates_to_json(estimates->impl));
  });
}

xz24_status xz24_estimates_from_json(const char* text, xz24_estimates** out) {
  if (auto st = require(text && out, "null argument")) return st;
  return guard([&] {
    *out = new xz24_estimates{xz24::io::estimates_from_json(text)};
  });
}

/* ----------------------------- sign resolution -------------------------- */

double xz24_default_offset(const xz24_plan* plan) {
  return plan ? xz24::default_offset(plan->impl) : std::nan("");
}

xz24_status xz24_resolve_signs(const xz24_hamiltonian* h, const xz24_reference* ref,
                               const xz24_plan* plan, double s0,
                               const xz24_estimates* base_estimates,
                               double threshold, uint64_t seed, int use_circuit,
                               xz24_resolution** out) {
  if (auto st = require(h && ref && plan && base_estimates && out, "null argument"))
    return st;
  return guard([&] {
    xz24::AcquireOptions options;
    options.seed = seed;
    options.use_circuit = use_circuit != 0;
    *out = new xz24_resolution{xz24::resolve_signs(h->impl, ref->impl, plan->impl,
                                                   s0, base_estimates->impl,
                                                   threshold, options)};
  });
}

void xz24_resolution_free(xz24_resolution* resolution) { delete resolution; }

size_t xz24_resolution_count(const xz24_resolution* resolution) {
  return resolution ? resolution->impl.pairs.size() : 0;
}

xz24_status xz24_resolution_pair(const xz24_resolution* resolution, size_t i,
                                 double* base_abs_energy, int* has_shifted,
                                 double* shifted_abs_energy, double* shift,
                                 int* sign, int* has_signed_energy,
                                 double* signed_energy) {
  if (auto st = require(resolution && i < resolution->impl.pairs.size(),
                        "resolution pair index out of range"))
    return st;
  const auto& p = resolution->impl.pairs[i];
  if (base_abs_energy) *base_abs_energy = p.base.abs_energy;
  if (has_shifted) *has_shifted = p.shifted.has_value() ? 1 : 0;
  if (shifted_abs_energy)
    *shifted_abs_energy = p.shifted ? p.shifted->abs_energy : std::nan("");
  if (shift) *shift = p.shift;
  if (sign) *sign = sign_to_c(p.sign);
  if (has_signed_energy) *has_signed_energy = p.base.energy.has_value() ? 1 : 0;
  if (signed_energy) *signed_energy = p.base.energy.value_or(std::nan(""));
  return XZ24_OK;
}

xz24_status xz24_resolution_to_json(const xz24_resolution* resolution, char** out) {
  if (auto st = require(resolution && out, "null argument")) return st;
  return guard([&] {
    *out = copy_string(xz24::io::resolution_to_json(resolution->impl));
  });
}

xz24_status xz24_resolution_apply(const xz24_resolution* resolution,
                                  const xz24_estimates* estimates,
                                  xz24_estimates** out) {
  if (auto st = require(resolution && estimates && out, "null argument")) return st;
  return guard([&] {
    *out = new xz24_estimates{resolution->impl.apply_to(estimates->impl)};
  });
}

/* --------------------------------- recovery ----------------------------- */

xz24_status xz24_recover_report(const xz24_estimates* estimates,
                                const xz24_overlap_table* oracle,
                                double weight_threshold, double delta,
                                xz24_recovery** out) {
  if (auto st = require(estimates && oracle && out, "null argument")) return st;
  return guard([&] {
    *out = new xz24_recovery{xz24::recover_report(estimates->impl, oracle->impl,
                                                  weight_threshold, delta)};
  });
}

void xz24_recovery_free(xz24_recovery* recovery) { delete recovery; }

int xz24_recovery_success(const xz24_recovery* recovery) {
  return recovery && recovery->impl.success ? 1 : 0;
}

double xz24_recovery_max_error(const xz24_recovery* recovery) {
  return recovery ? recovery->impl.max_error : std::nan("");
}

size_t xz24_recovery_count(const xz24_recovery* recovery) {
  return recovery ? recovery->impl.entries.size() : 0;
}

xz24_status xz24_recovery_entry(const xz24_recovery* recovery, size_t i,
                                double* oracle_energy, double* oracle_weight,
                                double* abs_error, int* within_delta) {
  if (auto st = require(recovery && i < recovery->impl.entries.size(),
                        "recovery entry index out of range"))
    return st;
  const auto& e = recovery->impl.entries[i];
  if (oracle_energy) *oracle_energy = e.oracle_energy;
  if (oracle_weight) *oracle_weight = e.oracle_weight;
  if (abs_error) *abs_error = e.abs_error;
  if (within_delta) *within_delta = e.within_delta ? 1 : 0;
  return XZ24_OK;
}

xz24_status xz24_recovery_to_json(const xz24_recovery* recovery, char** out) {
  if (auto st = require(recovery && out, "null argument")) return st;
  return guard([&] {
    *out = copy_string(xz24::io::recovery_to_json(recovery->impl));
  });
}

} /* extern "C" */
