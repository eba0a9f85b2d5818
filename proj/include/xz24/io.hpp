#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "xz24/oracle.hpp"
#include "xz24/sampling.hpp"
#include "xz24/sign_resolution.hpp"
#include "xz24/spectral.hpp"

namespace xz24::io {

// Plan JSON: {delta, interval, count, t_max, mode, shots, energy_bound}.
std::string plan_to_json(const SamplingPlan& plan, int indent = 2);
SamplingPlan plan_from_json(std::string_view text);

// Signal CSV: header `n,t,q`, one row per sample, t = n*interval, floats
// with 17 significant digits. Parsing reconstructs the plan's grid facts
// (interval, count, delta); mode/shots/bound are not stored in the CSV, so
// they come back as full/none/pi-over-interval.
std::string signal_to_csv(const Signal& signal);
Signal signal_from_csv(std::string_view text);

// Spectrum CSV: header `k,x,a`, rows for k = 0..(N-1)/2 (k = 0 carries a0).
std::string spectrum_to_csv(const Spectrum& spectrum);

// Estimates JSON: array of {bin, x, abs_energy, amplitude, sign, energy}.
std::string estimates_to_json(const std::vector<EigenEstimate>& estimates,
                              int indent = 2);
std::vector<EigenEstimate> estimates_from_json(std::string_view text);

// Resolution JSON: {s0, pairs: [{base_abs_energy, shifted_abs_energy,
// shift, sign, signed_energy}]}.
std::string resolution_to_json(const SignResolution& resolution, int indent = 2);

// Oracle JSON: {entries: [{energy, weight}], ground_energy, l1_bound}.
std::string oracle_to_json(const OverlapTable& table, double ground_energy,
                           double l1_bound, int indent = 2);

std::string recovery_to_json(const RecoveryReport& report, int indent = 2);

// Reference file: one `<bitstring> <amplitude>` pair per line, `#` comments.
ReferenceSpec reference_from_text(std::string_view text);

std::string read_file(const std::string& path);
// write-temp-then-rename so partially written outputs are never observed
void atomic_write_file(const std::string& path, std::string_view content);

}  // namespace xz24::io
