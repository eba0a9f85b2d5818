// xz24 command-line front end: plan -> sample -> analyze -> resolve-sign ->
// report, plus the exact-diagonalization oracle. Talks to the library
// exclusively through the C API in xz24.h.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "xz24.h"

namespace {

using nlohmann::json;

class CliError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void check(xz24_status status, const std::string& stage) {
  if (status != XZ24_OK)
    throw CliError(stage + ": " + xz24_last_error());
}

// RAII for C API handles.
template <typename T, void (*Free)(T*)>
struct Handle {
  T* ptr = nullptr;
  Handle() = default;
  explicit Handle(T* p) : ptr(p) {}
  ~Handle() { Free(ptr); }
  Handle(Handle&& other) noexcept : ptr(other.ptr) { other.ptr = nullptr; }
  Handle& operator=(Handle&& other) noexcept {
    std::swap(ptr, other.ptr);
    return *this;
  }
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  T** out() { return &ptr; }
  T* get() const { return ptr; }
  explicit operator bool() const { return ptr != nullptr; }
};

using HamiltonianHandle = Handle<xz24_hamiltonian, xz24_hamiltonian_free>;
using ReferenceHandle = Handle<xz24_reference, xz24_reference_free>;
using OracleHandle = Handle<xz24_oracle, xz24_oracle_free>;
using OverlapHandle = Handle<xz24_overlap_table, xz24_overlap_table_free>;
using PlanHandle = Handle<xz24_plan, xz24_plan_free>;
using SignalHandle = Handle<xz24_signal, xz24_signal_free>;
using SpectrumHandle = Handle<xz24_spectrum, xz24_spectrum_free>;
using EstimatesHandle = Handle<xz24_estimates, xz24_estimates_free>;
using ResolutionHandle = Handle<xz24_resolution, xz24_resolution_free>;
using RecoveryHandle = Handle<xz24_recovery, xz24_recovery_free>;

std::string take_string(char* s) {
  std::string out = s ? s : "";
  xz24_string_free(s);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw CliError("cannot write '" + tmp + "'");
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

struct RunConfig {
  std::string hamiltonian_path;
  std::string ref_spec;
  double target_delta = 0.0016;
  std::optional<double> interval;
  std::uint64_t shots = 0;  // 0 = exact
  std::uint64_t seed = 0;
  std::string mode = "mirror";
  double threshold = 1e-3;
  std::optional<double> offset;  // s0
  bool with_oracle = false;
  bool hf_bound = false;
  bool assume_negative = false;
  bool timings = false;
  std::string out_dir = ".";
};

json config_json(const RunConfig& c) {
  json j;
  j["hamiltonian"] = c.hamiltonian_path;
  j["ref"] = c.ref_spec;
  j["delta"] = c.target_delta;
  j["interval"] = c.interval ? json(*c.interval) : json(nullptr);
  j["shots"] = c.shots ? json(c.shots) : json(nullptr);
  j["seed"] = c.seed;
  j["mode"] = c.mode;
  j["threshold"] = c.threshold;
  j["offset"] = c.offset ? json(*c.offset) : json(nullptr);
  j["oracle"] = c.with_oracle;
  j["hf_bound"] = c.hf_bound;
  j["assume_negative"] = c.assume_negative;
  j["out"] = c.out_dir;
  return j;
}

HamiltonianHandle load_hamiltonian(const std::string& path) {
  HamiltonianHandle h;
  check(xz24_hamiltonian_load(path.c_str(), h.out()), "hamiltonian");
  return h;
}

// `--ref` accepts a plain bitstring or @file with weighted entries.
ReferenceHandle load_reference(const std::string& spec) {
  ReferenceHandle ref;
  if (!spec.empty() && spec[0] == '@') {
    const std::string text = read_file(spec.substr(1));
    check(xz24_reference_parse(text.c_str(), ref.out()), "reference");
  } else {
    check(xz24_reference_basis(spec.c_str(), ref.out()), "reference");
  }
  return ref;
}

double resolve_bound(const RunConfig& c, const xz24_hamiltonian* h,
                     const xz24_reference* ref) {
  double bound = 0.0;
  check(xz24_energy_bound(h, ref, c.hf_bound ? 1 : 0, &bound), "energy bound");
  return bound;
}

PlanHandle build_plan(const RunConfig& c, double bound) {
  PlanHandle plan;
  check(xz24_plan_make(c.target_delta, bound, c.interval.value_or(0.0), c.shots,
                       c.mode == "mirror" ? 1 : 0, plan.out()),
        "plan");
  return plan;
}

void print_plan_summary(const xz24_plan* plan, double bound) {
  std::fprintf(stderr,
               "plan: delta=%.6g interval=%.6g (max %.6g) count=%llu "
               "t_max=%.6g quantum evaluations=%llu\n",
               xz24_plan_delta(plan), xz24_plan_interval(plan),
               xz24_max_interval(bound),
               static_cast<unsigned long long>(xz24_plan_count(plan)),
               xz24_plan_t_max(plan),
               static_cast<unsigned long long>(
                   xz24_plan_is_mirror(plan)
                       ? (xz24_plan_count(plan) - 1) / 2 + 1
                       : xz24_plan_count(plan)));
}

class StageClock {
 public:
  explicit StageClock(bool enabled) : enabled_(enabled) {}

  template <typename Fn>
  auto time(const std::string& stage, Fn&& fn) {
    const auto start = std::chrono::steady_clock::now();
    if constexpr (std::is_void_v<decltype(fn())>) {
      fn();
      record(stage, start);
    } else {
      auto result = fn();
      record(stage, start);
      return result;
    }
  }

  const std::map<std::string, double>& millis() const { return millis_; }
  bool enabled() const { return enabled_; }

 private:
  void record(const std::string& stage,
              std::chrono::steady_clock::time_point start) {
    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
    millis_[stage] += ms;
    std::fprintf(stderr, "stage %-12s %8.1f ms\n", stage.c_str(), ms);
  }

  bool enabled_;
  std::map<std::string, double> millis_;
};

json signed_estimates_json(const EstimatesHandle& estimates,
                           const ResolutionHandle& resolution,
                           bool assume_negative) {
  EstimatesHandle effective;
  const xz24_estimates* source = estimates.get();
  if (resolution) {
    check(xz24_resolution_apply(resolution.get(), estimates.get(), effective.out()),
          "resolution");
    source = effective.get();
  }
  char* text = nullptr;
  check(xz24_estimates_to_json(source, &text), "estimates");
  json j = json::parse(take_string(text));
  if (assume_negative) {
    for (auto& e : j) {
      if (e["sign"] == "unknown" || e["sign"] == "ambiguous") {
        e["sign"] = "negative";
        e["energy"] = -e["abs_energy"].get<double>();
        e["sign_assumed"] = true;
      }
    }
  }
  return j;
}

int cmd_plan(const RunConfig& c) {
  auto h = load_hamiltonian(c.hamiltonian_path);
  ReferenceHandle ref;
  if (!c.ref_spec.empty()) ref = load_reference(c.ref_spec);
  const double bound = resolve_bound(c, h.get(), ref.get());
  auto plan = build_plan(c, bound);
  print_plan_summary(plan.get(), bound);
  char* text = nullptr;
  check(xz24_plan_to_json(plan.get(), &text), "plan");
  const std::string plan_json = take_string(text);
  std::cout << plan_json;
  if (c.out_dir != ".") std::filesystem::create_directories(c.out_dir);
  atomic_write(std::filesystem::path(c.out_dir) / "plan.json", plan_json);
  return 0;
}

int cmd_sample(const RunConfig& c) {
  auto h = load_hamiltonian(c.hamiltonian_path);
  auto ref = load_reference(c.ref_spec);
  const double bound = resolve_bound(c, h.get(), ref.get());
  auto plan = build_plan(c, bound);
  print_plan_summary(plan.get(), bound);

  SignalHandle signal;
  check(xz24_signal_acquire(h.get(), ref.get(), plan.get(), c.seed, 0, signal.out()),
        "sample");

  std::filesystem::create_directories(c.out_dir);
  char* csv = nullptr;
  check(xz24_signal_to_csv(signal.get(), &csv), "sample");
  atomic_write(std::filesystem::path(c.out_dir) / "signal.csv", take_string(csv));
  char* plan_text = nullptr;
  check(xz24_plan_to_json(plan.get(), &plan_text), "plan");
  atomic_write(std::filesystem::path(c.out_dir) / "plan.json", take_string(plan_text));
  std::fprintf(stderr, "wrote %s and %s\n",
               (std::filesystem::path(c.out_dir) / "signal.csv").c_str(),
               (std::filesystem::path(c.out_dir) / "plan.json").c_str());
  return 0;
}

int cmd_analyze(const std::string& signal_path, double threshold,
                const std::string& out_dir) {
  const std::string text = read_file(signal_path);
  SignalHandle signal;
  check(xz24_signal_from_csv(text.c_str(), signal.out()), "analyze");
  SpectrumHandle spectrum;
  check(xz24_spectrum_transform(signal.get(), spectrum.out()), "analyze");
  EstimatesHandle estimates;
  check(xz24_detect_peaks(spectrum.get(), threshold, estimates.out()), "analyze");

  std::filesystem::create_directories(out_dir);
  char* csv = nullptr;
  check(xz24_spectrum_to_csv(spectrum.get(), &csv), "analyze");
  atomic_write(std::filesystem::path(out_dir) / "spectrum.csv", take_string(csv));
  char* est_text = nullptr;
  check(xz24_estimates_to_json(estimates.get(), &est_text), "analyze");
  const std::string est_json = take_string(est_text);
  atomic_write(std::filesystem::path(out_dir) / "estimates.json", est_json);
  std::cout << est_json;
  return 0;
}

int cmd_oracle(const RunConfig& c) {
  auto h = load_hamiltonian(c.hamiltonian_path);
  auto ref = load_reference(c.ref_spec);
  OracleHandle oracle;
  check(xz24_oracle_create(h.get(), oracle.out()), "oracle");
  OverlapHandle table;
  check(xz24_oracle_overlaps(oracle.get(), ref.get(), table.out()), "oracle");
  char* text = nullptr;
  check(xz24_oracle_to_json(h.get(), table.get(), &text), "oracle");
  const std::string oracle_json = take_string(text);
  std::cout << oracle_json;
  if (c.out_dir != ".") {
    std::filesystem::create_directories(c.out_dir);
    atomic_write(std::filesystem::path(c.out_dir) / "oracle.json", oracle_json);
  }
  return 0;
}

int cmd_resolve_sign(const RunConfig& c) {
  auto h = load_hamiltonian(c.hamiltonian_path);
  auto ref = load_reference(c.ref_spec);
  const double base_bound = resolve_bound(c, h.get(), ref.get());
  const double s0 = c.offset.value_or(std::max(4.0 * c.target_delta, 0.05));
  auto plan = build_plan(c, base_bound + s0);
  print_plan_summary(plan.get(), base_bound + s0);

  SignalHandle signal;
  check(xz24_signal_acquire(h.get(), ref.get(), plan.get(), c.seed, 0, signal.out()),
        "sample");
  SpectrumHandle spectrum;
  check(xz24_spectrum_transform(signal.get(), spectrum.out()), "analyze");
  EstimatesHandle estimates;
  check(xz24_detect_peaks(spectrum.get(), c.threshold, estimates.out()), "analyze");

  ResolutionHandle resolution;
  check(xz24_resolve_signs(h.get(), ref.get(), plan.get(), s0, estimates.get(),
                           c.threshold, c.seed + 1, 0, resolution.out()),
        "resolve-sign");

  char* text = nullptr;
  check(xz24_resolution_to_json(resolution.get(), &text), "resolve-sign");
  const std::string res_json = take_string(text);
  std::cout << res_json;
  if (c.out_dir != ".") {
    std::filesystem::create_directories(c.out_dir);
    atomic_write(std::filesystem::path(c.out_dir) / "resolution.json", res_json);
  }
  return 0;
}

int cmd_run(const RunConfig& c) {
  StageClock clock(c.timings);
  auto h = load_hamiltonian(c.hamiltonian_path);
  auto ref = load_reference(c.ref_spec);

  const bool resolve = !c.assume_negative || c.offset.has_value();
  const double base_bound = resolve_bound(c, h.get(), ref.get());
  const double s0_guess = c.offset.value_or(std::max(4.0 * c.target_delta, 0.05));
  // The offset run shifts the spectrum up by s0; plan with that headroom.
  const double bound = resolve ? base_bound + s0_guess : base_bound;

  auto plan = clock.time("plan", [&] { return build_plan(c, bound); });
  print_plan_summary(plan.get(), bound);
  const double s0 = c.offset.value_or(xz24_default_offset(plan.get()));

  auto signal = clock.time("sample", [&] {
    SignalHandle s;
    check(xz24_signal_acquire(h.get(), ref.get(), plan.get(), c.seed, 0, s.out()),
          "sample");
    return s;
  });

  auto spectrum = clock.time("transform", [&] {
    SpectrumHandle s;
    check(xz24_spectrum_transform(signal.get(), s.out()), "transform");
    return s;
  });

  auto estimates = clock.time("detect", [&] {
    EstimatesHandle e;
    check(xz24_detect_peaks(spectrum.get(), c.threshold, e.out()), "detect");
    return e;
  });

  ResolutionHandle resolution;
  if (resolve) {
    resolution = clock.time("resolve-sign", [&] {
      ResolutionHandle r;
      check(xz24_resolve_signs(h.get(), ref.get(), plan.get(), s0, estimates.get(),
                               c.threshold, c.seed + 1, 0, r.out()),
            "resolve-sign");
      return r;
    });
  }

  OracleHandle oracle;
  OverlapHandle table;
  RecoveryHandle recovery;
  if (c.with_oracle) {
    clock.time("oracle", [&] {
      check(xz24_oracle_create(h.get(), oracle.out()), "oracle");
      check(xz24_oracle_overlaps(oracle.get(), ref.get(), table.out()), "oracle");
      check(xz24_recover_report(estimates.get(), table.get(), c.threshold,
                                xz24_plan_delta(plan.get()), recovery.out()),
            "oracle");
    });
  }

  // Assemble the report.
  json report;
  report["config"] = config_json(c);
  {
    char* text = nullptr;
    check(xz24_plan_to_json(plan.get(), &text), "report");
    report["plan"] = json::parse(take_string(text));
  }
  report["s0"] = resolve ? json(s0) : json(nullptr);
  report["dc"] = {{"a0", xz24_spectrum_a0(spectrum.get())},
                  {"note", "the k=0 bin is indistinguishable from a zero "
                           "eigenvalue and is never an eigen-estimate"}};
  report["estimates"] =
      signed_estimates_json(estimates, resolution, c.assume_negative);
  if (c.assume_negative)
    report["sign_convention"] = "unresolved signs assumed negative";
  if (resolution) {
    char* text = nullptr;
    check(xz24_resolution_to_json(resolution.get(), &text), "report");
    report["resolution"] = json::parse(take_string(text));
  } else {
    report["resolution"] = nullptr;
  }
  if (recovery) {
    char* text = nullptr;
    check(xz24_recovery_to_json(recovery.get(), &text), "report");
    report["recovery"] = json::parse(take_string(text));
    char* oracle_text = nullptr;
    check(xz24_oracle_to_json(h.get(), table.get(), &oracle_text), "report");
    json oracle_json = json::parse(take_string(oracle_text));
    // keep the report compact: only entries above the display cutoff
    json displayed = json::array();
    for (auto& e : oracle_json["entries"])
      if (e["weight"].get<double>() >= 1e-4) displayed.push_back(e);
    oracle_json["entries"] = displayed;
    oracle_json["entries_note"] = "entries with weight >= 1e-4";
    report["oracle"] = oracle_json;
  } else {
    report["recovery"] = nullptr;
    report["oracle"] = nullptr;
  }
  if (c.timings) {
    json t;
    for (const auto& [stage, ms] : clock.millis()) t[stage] = ms;
    report["timings_ms"] = t;
  }

  std::filesystem::create_directories(c.out_dir);
  const auto out = std::filesystem::path(c.out_dir);
  {
    char* csv = nullptr;
    check(xz24_signal_to_csv(signal.get(), &csv), "report");
    atomic_write(out / "signal.csv", take_string(csv));
  }
  {
    char* csv = nullptr;
    check(xz24_spectrum_to_csv(spectrum.get(), &csv), "report");
    atomic_write(out / "spectrum.csv", take_string(csv));
  }
  const std::string report_text = report.dump(2) + "\n";
  atomic_write(out / "report.json", report_text);
  std::cout << report_text;

  if (recovery && !xz24_recovery_success(recovery.get())) {
    std::fprintf(stderr, "oracle recovery FAILED: max error %.6g > delta %.6g\n",
                 xz24_recovery_max_error(recovery.get()),
                 xz24_plan_delta(plan.get()));
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"xz24 - eigen-energy spectroscopy by Fourier analysis of the "
               "signal Q(t) = <ref|cos(Ht)|ref> from an ancilla-controlled "
               "time-evolution circuit"};
  app.require_subcommand(1);
  app.footer("Environment: XZ24_WORKERS caps the sampling worker threads.");

  RunConfig c;
  std::string signal_path;

  auto add_common = [&](CLI::App* sub, bool need_ref) {
    sub->add_option("--hamiltonian", c.hamiltonian_path,
                    "Pauli-string Hamiltonian file")
        ->required();
    auto* ref = sub->add_option("--ref", c.ref_spec,
                                "reference: bitstring or @file with weighted "
                                "bitstrings");
    if (need_ref) ref->required();
    sub->add_option("--out", c.out_dir, "output directory");
  };
  auto add_plan_opts = [&](CLI::App* sub) {
    sub->add_option("--delta", c.target_delta, "target precision (energy units)")
        ->required();
    sub->add_option("--interval", c.interval,
                    "sampling interval; default: Nyquist maximum");
    sub->add_option("--shots", c.shots, "shots per point (0 = exact)");
    sub->add_option("--mode", c.mode, "mirror|full")
        ->check(CLI::IsMember({"mirror", "full"}));
    sub->add_flag("--hf-bound", c.hf_bound,
                  "bound the spectrum by |<ref|H|ref>| instead of the l1 norm "
                  "(may undershoot and alias)");
  };

  auto* plan_cmd = app.add_subcommand("plan", "derive a sampling plan");
  add_common(plan_cmd, false);
  add_plan_opts(plan_cmd);

  auto* sample_cmd = app.add_subcommand("sample", "acquire the signal q(n)");
  add_common(sample_cmd, true);
  add_plan_opts(sample_cmd);
  sample_cmd->add_option("--seed", c.seed, "rng seed for shot mode");

  auto* analyze_cmd =
      app.add_subcommand("analyze", "transform a signal CSV and detect peaks");
  analyze_cmd->add_option("--signal", signal_path, "signal CSV path")->required();
  analyze_cmd->add_option("--threshold", c.threshold, "peak threshold");
  analyze_cmd->add_option("--out", c.out_dir, "output directory");

  auto* oracle_cmd =
      app.add_subcommand("oracle", "dense diagonalization and overlaps");
  add_common(oracle_cmd, true);

  auto* resolve_cmd = app.add_subcommand(
      "resolve-sign", "determine eigenvalue signs via a Hamiltonian offset");
  add_common(resolve_cmd, true);
  add_plan_opts(resolve_cmd);
  resolve_cmd->add_option("--seed", c.seed, "rng seed for shot mode");
  resolve_cmd->add_option("--threshold", c.threshold, "peak threshold");
  resolve_cmd->add_option("--offset", c.offset, "offset s0 (default max(4*delta, 0.05))");

  auto* run_cmd = app.add_subcommand("run", "full pipeline with report");
  add_common(run_cmd, true);
  add_plan_opts(run_cmd);
  run_cmd->add_option("--seed", c.seed, "rng seed for shot mode");
  run_cmd->add_option("--threshold", c.threshold, "peak threshold");
  run_cmd->add_option("--offset", c.offset, "offset s0 for sign resolution");
  run_cmd->add_flag("--oracle", c.with_oracle,
                    "embed the dense-diagonalization comparison; exit code "
                    "reflects recovery success");
  run_cmd->add_flag("--assume-negative", c.assume_negative,
                    "skip the offset run and take unresolved signs as negative");
  run_cmd->add_flag("--timings", c.timings,
                    "embed stage timings in the report (makes reports "
                    "non-reproducible byte-for-byte)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (plan_cmd->parsed()) return cmd_plan(c);
    if (sample_cmd->parsed()) return cmd_sample(c);
    if (analyze_cmd->parsed()) return cmd_analyze(signal_path, c.threshold, c.out_dir);
    if (oracle_cmd->parsed()) return cmd_oracle(c);
    if (resolve_cmd->parsed()) return cmd_resolve_sign(c);
    if (run_cmd->parsed()) return cmd_run(c);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
