#include "xz24/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "xz24/errors.hpp"

namespace xz24::io {

namespace {

using nlohmann::json;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double require_number(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number())
    throw_parse(std::string("missing or non-numeric field '") + key + "'");
  return j[key].get<double>();
}

EnergySign sign_from_string(const std::string& s) {
  if (s == "positive") return EnergySign::positive;
  if (s == "negative") return EnergySign::negative;
  if (s == "ambiguous") return EnergySign::ambiguous;
  if (s == "unknown") return EnergySign::unknown;
  throw_parse("unknown sign value '" + s + "'");
}

json plan_json(const SamplingPlan& plan) {
  json j;
  j["delta"] = plan.delta;
  j["interval"] = plan.interval;
  j["count"] = plan.count;
  j["t_max"] = plan.t_max;
  j["mode"] = plan.mode == SamplingMode::mirror ? "mirror" : "full";
  if (plan.shots)
    j["shots"] = *plan.shots;
  else
    j["shots"] = nullptr;
  j["energy_bound"] = plan.energy_bound;
  return j;
}

json estimate_json(const EigenEstimate& e) {
  json j;
  j["bin"] = e.bin;
  j["x"] = e.x;
  j["abs_energy"] = e.abs_energy;
  j["amplitude"] = e.amplitude;
  j["sign"] = to_string(e.sign);
  if (e.energy)
    j["energy"] = *e.energy;
  else
    j["energy"] = nullptr;
  return j;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = eol + 1;
  }
  return lines;
}

}  // namespace

std::string plan_to_json(const SamplingPlan& plan, int indent) {
  return plan_json(plan).dump(indent) + "\n";
}

SamplingPlan plan_from_json(std::string_view text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw_parse("invalid plan JSON");
  SamplingPlan plan;
  plan.delta = require_number(j, "delta");
  plan.interval = require_number(j, "interval");
  plan.count = static_cast<std::uint64_t>(require_number(j, "count"));
  plan.t_max = require_number(j, "t_max");
  plan.energy_bound = require_number(j, "energy_bound");
  const std::string mode = j.value("mode", "mirror");
  if (mode == "mirror")
    plan.mode = SamplingMode::mirror;
  else if (mode == "full")
    plan.mode = SamplingMode::full;
  else
    throw_parse("unknown sampling mode '" + mode + "'");
  if (j.contains("shots") && !j["shots"].is_null())
    plan.shots = j["shots"].get<std::uint64_t>();
  return plan;
}

std::string signal_to_csv(const Signal& signal) {
  std::ostringstream out;
  out << "n,t,q\n";
  for (std::size_t n = 0; n < signal.values.size(); ++n) {
    const double t = static_cast<double>(n) * signal.plan.interval;
    out << n << ',' << fmt17(t) << ',' << fmt17(signal.values[n]) << '\n';
  }
  return out.str();
}

Signal signal_from_csv(std::string_view text) {
  auto lines = split_lines(text);
  if (lines.empty() || lines[0] != "n,t,q")
    throw_parse("signal CSV must start with header 'n,t,q'");

  Signal signal;
  std::vector<double> times;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    if (line.empty()) continue;
    const auto fail = [&](const std::string& what) {
      throw_parse("signal CSV line " + std::to_string(i + 1) + ": " + what);
    };
    std::uint64_t n = 0;
    double t = 0.0, q = 0.0;
    const char* p = line.data();
    const char* end = line.data() + line.size();
    auto r1 = std::from_chars(p, end, n);
    if (r1.ec != std::errc() || r1.ptr == end || *r1.ptr != ',') fail("bad index");
    auto r2 = std::from_chars(r1.ptr + 1, end, t);
    if (r2.ec != std::errc() || r2.ptr == end || *r2.ptr != ',') fail("bad time");
    auto r3 = std::from_chars(r2.ptr + 1, end, q);
    if (r3.ec != std::errc() || r3.ptr != end) fail("bad value");
    if (n != signal.values.size()) fail("row index out of order");
    signal.values.push_back(q);
    times.push_back(t);
  }
  const std::uint64_t count = signal.values.size();
  if (count == 0) throw_parse("signal CSV has no samples");
  if (count % 2 == 0)
    throw_parse("signal CSV must hold an odd number of samples, got " +
                std::to_string(count));

  double interval = count > 1 ? times[1] - times[0] : 1.0;
  if (count > 1) {
    interval = times.back() / static_cast<double>(count - 1);
    for (std::size_t n = 0; n < count; ++n) {
      if (std::abs(times[n] - interval * static_cast<double>(n)) >
          1e-9 * std::max(1.0, std::abs(times.back())))
        throw_parse("signal CSV time grid is not uniform");
    }
    if (!(interval > 0.0)) throw_parse("signal CSV time grid must increase");
  }

  signal.plan.interval = interval;
  signal.plan.count = count;
  signal.plan.t_max = interval * static_cast<double>(count);
  signal.plan.delta = 2.0 * std::numbers::pi / signal.plan.t_max;
  signal.plan.mode = SamplingMode::full;
  signal.plan.energy_bound = std::numbers::pi / interval;
  return signal;
}

std::string spectrum_to_csv(const Spectrum& spectrum) {
  std::ostringstream out;
  out << "k,x,a\n";
  out << 0 << ',' << fmt17(0.0) << ',' << fmt17(spectrum.a0) << '\n';
  for (std::uint64_t k = 1; k <= spectrum.bin_count(); ++k)
    out << k << ',' << fmt17(spectrum.x(k)) << ','
        << fmt17(spectrum.coefficients[k - 1]) << '\n';
  return out.str();
}

std::string estimates_to_json(const std::vector<EigenEstimate>& estimates,
                              int indent) {
  json j = json::array();
  for (const auto& e : estimates) j.push_back(estimate_json(e));
  return j.dump(indent) + "\n";
}

std::vector<EigenEstimate> estimates_from_json(std::string_view text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_array()) throw_parse("invalid estimates JSON");
  std::vector<EigenEstimate> estimates;
  estimates.reserve(j.size());
  for (const auto& item : j) {
    EigenEstimate e;
    e.bin = static_cast<std::uint64_t>(require_number(item, "bin"));
    e.x = require_number(item, "x");
    e.abs_energy = require_number(item, "abs_energy");
    e.amplitude = require_number(item, "amplitude");
    e.sign = sign_from_string(item.value("sign", "unknown"));
    if (item.contains("energy") && !item["energy"].is_null())
      e.energy = item["energy"].get<double>();
    estimates.push_back(e);
  }
  return estimates;
}

std::string resolution_to_json(const SignResolution& resolution, int indent) {
  json j;
  j["s0"] = resolution.s0;
  json pairs = json::array();
  for (const auto& p : resolution.pairs) {
    json pj;
    pj["base_abs_energy"] = p.base.abs_energy;
    if (p.shifted)
      pj["shifted_abs_energy"] = p.shifted->abs_energy;
    else
      pj["shifted_abs_energy"] = nullptr;
    pj["shift"] = p.shift;
    pj["sign"] = to_string(p.sign);
    if (p.base.energy)
      pj["signed_energy"] = *p.base.energy;
    else
      pj["signed_energy"] = nullptr;
    pairs.push_back(pj);
  }
  j["pairs"] = pairs;
  return j.dump(indent) + "\n";
}

std::string oracle_to_json(const OverlapTable& table, double ground_energy,
                           double l1_bound, int indent) {
  json entries = json::array();
  for (const auto& e : table.entries) {
    json ej;
    ej["energy"] = e.energy;
    ej["weight"] = e.weight;
    entries.push_back(ej);
  }
  json j;
  j["entries"] = entries;
  j["ground_energy"] = ground_energy;
  j["l1_bound"] = l1_bound;
  return j.dump(indent) + "\n";
}

std::string recovery_to_json(const RecoveryReport& report, int indent) {
  json entries = json::array();
  for (const auto& e : report.entries) {
    json ej;
    ej["oracle_energy"] = e.oracle_energy;
    ej["oracle_weight"] = e.oracle_weight;
    if (e.nearest_estimate)
      ej["nearest_estimate"] = *e.nearest_estimate;
    else
      ej["nearest_estimate"] = nullptr;
    ej["abs_error"] = std::isfinite(e.abs_error) ? json(e.abs_error) : json(nullptr);
    ej["within_delta"] = e.within_delta;
    entries.push_back(ej);
  }
  json j;
  j["success"] = report.success;
  j["max_error"] =
      std::isfinite(report.max_error) ? json(report.max_error) : json(nullptr);
  j["delta"] = report.delta;
  j["weight_threshold"] = report.weight_threshold;
  j["entries"] = entries;
  return j.dump(indent) + "\n";
}

ReferenceSpec reference_from_text(std::string_view text) {
  std::vector<std::pair<std::string, double>> entries;
  auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    if (auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    std::istringstream in{std::string(line)};
    std::string bits;
    if (!(in >> bits)) continue;
    double amp = 0.0;
    if (!(in >> amp))
      throw_parse("reference line " + std::to_string(i + 1) +
                  ": expected '<bitstring> <amplitude>'");
    std::string extra;
    if (in >> extra)
      throw_parse("reference line " + std::to_string(i + 1) +
                  ": unexpected trailing token '" + extra + "'");
    entries.emplace_back(std::move(bits), amp);
  }
  if (entries.empty()) throw_parse("reference file has no entries");
  return ReferenceSpec::weighted(std::move(entries));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_error, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void atomic_write_file(const std::string& path, std::string_view content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::io_error, "cannot write '" + tmp + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorCode::io_error, "short write to '" + tmp + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec)
    throw Error(ErrorCode::io_error,
                "cannot rename '" + tmp + "' to '" + path + "': " + ec.message());
}

}  // namespace xz24::io
