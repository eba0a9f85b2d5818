// Exercises the public C surface end to end: parse -> plan -> acquire ->
// transform -> detect -> resolve -> recover, plus error reporting. Links
// only the shared library, exactly like an external consumer.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>

#include "xz24.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  xz24_string_free(s);
  return out;
}

constexpr const char* kTwoTone = "0.2\n1.0 Z0\n0.5 X0\n";

}  // namespace

TEST_CASE("hamiltonian surface") {
  xz24_hamiltonian* h = nullptr;
  REQUIRE(xz24_hamiltonian_parse(kTwoTone, &h) == XZ24_OK);
  CHECK(xz24_hamiltonian_n_qubits(h) == 1);
  CHECK(xz24_hamiltonian_term_count(h) == 3);
  CHECK(xz24_hamiltonian_l1_norm_bound(h) == doctest::Approx(1.7));

  double expectation = 0.0;
  REQUIRE(xz24_hamiltonian_basis_expectation(h, "0", &expectation) == XZ24_OK);
  CHECK(expectation == doctest::Approx(1.2));  // 0.2 + <0|Z|0>

  xz24_hamiltonian* shifted = nullptr;
  REQUIRE(xz24_hamiltonian_offset(h, 0.05, &shifted) == XZ24_OK);
  CHECK(xz24_hamiltonian_l1_norm_bound(shifted) == doctest::Approx(1.75));

  char* text = nullptr;
  REQUIRE(xz24_hamiltonian_serialize(h, &text) == XZ24_OK);
  const std::string serialized = take(text);
  xz24_hamiltonian* reparsed = nullptr;
  REQUIRE(xz24_hamiltonian_parse(serialized.c_str(), &reparsed) == XZ24_OK);
  char* text2 = nullptr;
  REQUIRE(xz24_hamiltonian_serialize(reparsed, &text2) == XZ24_OK);
  CHECK(take(text2) == serialized);

  xz24_hamiltonian_free(reparsed);
  xz24_hamiltonian_free(shifted);
  xz24_hamiltonian_free(h);
}

TEST_CASE("parse errors set status and message") {
  xz24_hamiltonian* h = nullptr;
  CHECK(xz24_hamiltonian_parse("1.0 Z0\nbogus", &h) == XZ24_ERR_PARSE);
  CHECK(std::string(xz24_last_error()).find("line 2") != std::string::npos);
  CHECK(xz24_hamiltonian_parse(nullptr, &h) == XZ24_ERR_INVALID_ARGUMENT);
  CHECK(xz24_hamiltonian_load("/nonexistent/path.ham", &h) == XZ24_ERR_IO);
}

TEST_CASE("full pipeline through the C API") {
  xz24_hamiltonian* h = nullptr;
  REQUIRE(xz24_hamiltonian_parse(kTwoTone, &h) == XZ24_OK);
  xz24_reference* ref = nullptr;
  REQUIRE(xz24_reference_basis("0", &ref) == XZ24_OK);

  double bound = 0.0;
  REQUIRE(xz24_energy_bound(h, nullptr, 0, &bound) == XZ24_OK);
  CHECK(bound == doctest::Approx(1.7));

  xz24_plan* plan = nullptr;
  REQUIRE(xz24_plan_make(0.001, bound + 0.05, 0.0, 0, 1, &plan) == XZ24_OK);
  CHECK(xz24_plan_delta(plan) == doctest::Approx(0.001));
  CHECK(xz24_plan_count(plan) % 2 == 1);
  CHECK(xz24_plan_is_mirror(plan) == 1);
  CHECK(xz24_plan_shots(plan) == 0);
  CHECK(xz24_max_interval(2.1664) == doctest::Approx(1.45).epsilon(0.007));

  xz24_signal* signal = nullptr;
  REQUIRE(xz24_signal_acquire(h, ref, plan, 0, 0, &signal) == XZ24_OK);
  CHECK(xz24_signal_count(signal) == xz24_plan_count(plan));
  CHECK(xz24_signal_value(signal, 0) == doctest::Approx(1.0));
  CHECK(xz24_signal_time(signal, 1) == doctest::Approx(xz24_plan_interval(plan)));
  CHECK(xz24_signal_plan(signal) != nullptr);

  xz24_spectrum* spectrum = nullptr;
  REQUIRE(xz24_spectrum_transform(signal, &spectrum) == XZ24_OK);
  CHECK(xz24_spectrum_bin_count(spectrum) == (xz24_plan_count(plan) - 1) / 2);

  xz24_estimates* estimates = nullptr;
  REQUIRE(xz24_detect_peaks(spectrum, 1e-3, &estimates) == XZ24_OK);
  REQUIRE(xz24_estimates_count(estimates) >= 2);
  double abs_energy = 0.0, amplitude = 0.0;
  int sign = -1;
  REQUIRE(xz24_estimates_get(estimates, 0, nullptr, nullptr, &abs_energy,
                             &amplitude, &sign, nullptr, nullptr) == XZ24_OK);
  CHECK(abs_energy == doctest::Approx(1.318).epsilon(2e-3));
  CHECK(sign == XZ24_SIGN_UNKNOWN);

  const double s0 = xz24_default_offset(plan);
  CHECK(s0 == doctest::Approx(0.05));
  xz24_resolution* resolution = nullptr;
  REQUIRE(xz24_resolve_signs(h, ref, plan, s0, estimates, 1e-3, 1, 0,
                             &resolution) == XZ24_OK);
  REQUIRE(xz24_resolution_count(resolution) == xz24_estimates_count(estimates));
  double base_abs = 0.0, shift = 0.0, signed_energy = 0.0;
  int has_shifted = 0, pair_sign = -1, has_signed = 0;
  REQUIRE(xz24_resolution_pair(resolution, 0, &base_abs, &has_shifted, nullptr,
                               &shift, &pair_sign, &has_signed,
                               &signed_energy) == XZ24_OK);
  CHECK(has_shifted == 1);
  CHECK(pair_sign == XZ24_SIGN_POSITIVE);
  CHECK(has_signed == 1);
  CHECK(signed_energy == doctest::Approx(1.318).epsilon(2e-3));

  xz24_estimates* resolved = nullptr;
  REQUIRE(xz24_resolution_apply(resolution, estimates, &resolved) == XZ24_OK);
  REQUIRE(xz24_estimates_get(resolved, 0, nullptr, nullptr, nullptr, nullptr,
                             &sign, nullptr, nullptr) == XZ24_OK);
  CHECK(sign == XZ24_SIGN_POSITIVE);

  xz24_oracle* oracle = nullptr;
  REQUIRE(xz24_oracle_create(h, &oracle) == XZ24_OK);
  CHECK(xz24_oracle_count(oracle) == 2);
  CHECK(xz24_oracle_energy(oracle, 0) == doctest::Approx(-0.918034).epsilon(1e-5));
  xz24_overlap_table* table = nullptr;
  REQUIRE(xz24_oracle_overlaps(oracle, ref, &table) == XZ24_OK);
  CHECK(xz24_overlap_table_signal(table, 0.0) == doctest::Approx(1.0));

  xz24_recovery* recovery = nullptr;
  REQUIRE(xz24_recover_report(estimates, table, 1e-3, xz24_plan_delta(plan),
                              &recovery) == XZ24_OK);
  CHECK(xz24_recovery_success(recovery) == 1);
  CHECK(xz24_recovery_max_error(recovery) <= xz24_plan_delta(plan));
  CHECK(xz24_recovery_count(recovery) == 2);

  // serialization surfaces
  char* out = nullptr;
  REQUIRE(xz24_plan_to_json(plan, &out) == XZ24_OK);
  const std::string plan_json = take(out);
  xz24_plan* plan2 = nullptr;
  REQUIRE(xz24_plan_from_json(plan_json.c_str(), &plan2) == XZ24_OK);
  CHECK(xz24_plan_count(plan2) == xz24_plan_count(plan));

  REQUIRE(xz24_signal_to_csv(signal, &out) == XZ24_OK);
  const std::string csv = take(out);
  xz24_signal* signal2 = nullptr;
  REQUIRE(xz24_signal_from_csv(csv.c_str(), &signal2) == XZ24_OK);
  CHECK(xz24_signal_count(signal2) == xz24_signal_count(signal));

  REQUIRE(xz24_spectrum_to_csv(spectrum, &out) == XZ24_OK);
  CHECK(take(out).rfind("k,x,a\n", 0) == 0);

  REQUIRE(xz24_estimates_to_json(estimates, &out) == XZ24_OK);
  const std::string est_json = take(out);
  xz24_estimates* estimates2 = nullptr;
  REQUIRE(xz24_estimates_from_json(est_json.c_str(), &estimates2) == XZ24_OK);
  CHECK(xz24_estimates_count(estimates2) == xz24_estimates_count(estimates));

  REQUIRE(xz24_resolution_to_json(resolution, &out) == XZ24_OK);
  CHECK(take(out).find("\"pairs\"") != std::string::npos);
  REQUIRE(xz24_recovery_to_json(recovery, &out) == XZ24_OK);
  CHECK(take(out).find("\"success\": true") != std::string::npos);
  REQUIRE(xz24_oracle_to_json(h, table, &out) == XZ24_OK);
  CHECK(take(out).find("ground_energy") != std::string::npos);

  xz24_estimates_free(estimates2);
  xz24_signal_free(signal2);
  xz24_plan_free(plan2);
  xz24_recovery_free(recovery);
  xz24_overlap_table_free(table);
  xz24_oracle_free(oracle);
  xz24_estimates_free(resolved);
  xz24_resolution_free(resolution);
  xz24_estimates_free(estimates);
  xz24_spectrum_free(spectrum);
  xz24_signal_free(signal);
  xz24_plan_free(plan);
  xz24_reference_free(ref);
  xz24_hamiltonian_free(h);
}

TEST_CASE("weighted references and point evaluators") {
  xz24_hamiltonian* h = nullptr;
  REQUIRE(xz24_hamiltonian_parse("1.0 Z0", &h) == XZ24_OK);

  const char* bits[] = {"0", "1"};
  const double amps[] = {1.0, 1.0};
  xz24_reference* ref = nullptr;
  REQUIRE(xz24_reference_weighted(bits, amps, 2, &ref) == XZ24_OK);

  double p0 = 0.0, p1 = 0.0, q = 0.0;
  REQUIRE(xz24_circuit_point(h, ref, 0.5, &p0, &p1, &q) == XZ24_OK);
  CHECK(q == doctest::Approx(std::cos(0.5)));  // (|0>+|1>)/sqrt2 under Z
  CHECK(p0 + p1 == doctest::Approx(1.0));

  double q_direct = 0.0;
  REQUIRE(xz24_expectation_point(h, ref, 0.5, &q_direct) == XZ24_OK);
  CHECK(q_direct == doctest::Approx(q).epsilon(1e-10));

  REQUIRE(xz24_shot_sample(1.0, 100, 42, &p0, &p1, &q) == XZ24_OK);
  CHECK(q == 1.0);

  xz24_reference* parsed = nullptr;
  REQUIRE(xz24_reference_parse("0 1.0\n1 1.0\n", &parsed) == XZ24_OK);
  double q2 = 0.0;
  REQUIRE(xz24_expectation_point(h, parsed, 0.5, &q2) == XZ24_OK);
  CHECK(q2 == doctest::Approx(q_direct));

  xz24_reference_free(parsed);
  xz24_reference_free(ref);
  xz24_hamiltonian_free(h);
}

TEST_CASE("plan rejections surface the computed maximum") {
  xz24_plan* plan = nullptr;
  CHECK(xz24_plan_make(0.0016, 2.1664, 2.0, 0, 1, &plan) ==
        XZ24_ERR_INVALID_ARGUMENT);
  CHECK(std::string(xz24_last_error()).find("1.45") != std::string::npos);
  CHECK(xz24_plan_make(-1.0, 1.0, 0.0, 0, 1, &plan) == XZ24_ERR_INVALID_ARGUMENT);
}

TEST_CASE("version string") {
  CHECK(std::string(xz24_version()) == "0.1.0");
}
