#include <doctest.h>

#include <filesystem>

#include "support/fixtures.hpp"
#include "xz24/errors.hpp"
#include "xz24/io.hpp"

using namespace xz24;
namespace tt = xz24::testing;

TEST_CASE("plan JSON round-trip") {
  const auto plan = make_plan(0.0016, 2.1664, 1.0, 5000);
  const auto text = io::plan_to_json(plan);
  const auto back = io::plan_from_json(text);
  CHECK(back.delta == plan.delta);
  CHECK(back.interval == plan.interval);
  CHECK(back.count == plan.count);
  CHECK(back.t_max == plan.t_max);
  CHECK(back.energy_bound == plan.energy_bound);
  CHECK(back.mode == plan.mode);
  REQUIRE(back.shots.has_value());
  CHECK(*back.shots == 5000);
  CHECK(io::plan_to_json(back) == text);
}

TEST_CASE("signal CSV round-trip is lossless") {
  const auto h = tt::two_tone_hamiltonian();
  const auto plan = make_plan(0.05, 1.7);
  const auto signal = acquire_signal(h, ReferenceSpec::basis("0"), plan);
  const auto csv = io::signal_to_csv(signal);
  const auto back = io::signal_from_csv(csv);
  REQUIRE(back.values.size() == signal.values.size());
  for (std::size_t n = 0; n < signal.values.size(); ++n)
    CHECK(back.values[n] == signal.values[n]);
  CHECK(back.plan.interval == doctest::Approx(plan.interval).epsilon(1e-14));
  CHECK(io::signal_to_csv(back) == csv);
}

TEST_CASE("signal CSV rejections") {
  CHECK_THROWS_AS(io::signal_from_csv("t,q\n0,1\n"), Error);
  CHECK_THROWS_AS(io::signal_from_csv("n,t,q\n"), Error);
  CHECK_THROWS_AS(io::signal_from_csv("n,t,q\n0,0,1\n1,0.5,0.9\n"), Error);  // even
  CHECK_THROWS_AS(io::signal_from_csv("n,t,q\n0,0,1\n2,1,0.9\n1,0.5,0.8\n"), Error);
  CHECK_THROWS_AS(
      io::signal_from_csv("n,t,q\n0,0,1\n1,0.5,0.9\n2,1.7,0.8\n"), Error);
}

TEST_CASE("spectrum CSV shape") {
  const auto h = tt::two_tone_hamiltonian();
  const auto plan = make_plan(0.05, 1.7);
  const auto spectrum = transform(acquire_signal(h, ReferenceSpec::basis("0"), plan));
  const auto csv = io::spectrum_to_csv(spectrum);
  CHECK(csv.rfind("k,x,a\n", 0) == 0);
  const auto rows = std::count(csv.begin(), csv.end(), '\n');
  CHECK(rows == static_cast<long>(spectrum.bin_count()) + 2);  // header + k=0
}

TEST_CASE("estimates JSON round-trip preserves signs and energies") {
  std::vector<EigenEstimate> estimates(2);
  estimates[0].bin = 42;
  estimates[0].x = 0.125;
  estimates[0].abs_energy = 0.785;
  estimates[0].amplitude = 0.9;
  estimates[0].sign = EnergySign::negative;
  estimates[0].energy = -0.785;
  estimates[1].bin = 7;
  estimates[1].x = 0.02;
  estimates[1].abs_energy = 0.1257;
  estimates[1].amplitude = 0.05;

  const auto text = io::estimates_to_json(estimates);
  const auto back = io::estimates_from_json(text);
  REQUIRE(back.size() == 2);
  CHECK(back[0].bin == 42);
  CHECK(back[0].sign == EnergySign::negative);
  REQUIRE(back[0].energy.has_value());
  CHECK(*back[0].energy == -0.785);
  CHECK(back[1].sign == EnergySign::unknown);
  CHECK_FALSE(back[1].energy.has_value());
  CHECK(io::estimates_to_json(back) == text);
}

TEST_CASE("resolution and oracle JSON emit the documented fields") {
  const auto h = tt::two_tone_hamiltonian();
  const auto ref = ReferenceSpec::basis("0");
  const double s0 = 0.05;
  const auto plan = make_plan(0.005, 1.7 + s0);
  const auto base = detect_peaks(transform(acquire_signal(h, ref, plan)), 1e-3);
  const auto resolution = resolve_signs(h, ref, plan, s0, base, 1e-3);
  const auto text = io::resolution_to_json(resolution);
  CHECK(text.find("\"s0\"") != std::string::npos);
  CHECK(text.find("\"pairs\"") != std::string::npos);
  CHECK(text.find("base_abs_energy") != std::string::npos);
  CHECK(text.find("signed_energy") != std::string::npos);

  const auto profile = tt::oracle_profile(h, ref);
  const auto oracle_text =
      io::oracle_to_json(profile, profile.entries.front().energy, 1.7);
  CHECK(oracle_text.find("ground_energy") != std::string::npos);
  CHECK(oracle_text.find("l1_bound") != std::string::npos);
}

TEST_CASE("reference file format") {
  const auto spec = io::reference_from_text(
      "# excited configuration mix\n01 0.5\n10 0.5\n");
  REQUIRE(spec.entries().size() == 2);
  CHECK(spec.bit_length() == 2);
  CHECK_THROWS_AS(io::reference_from_text("01\n"), Error);
  CHECK_THROWS_AS(io::reference_from_text("# nothing\n"), Error);
  CHECK_THROWS_AS(io::reference_from_text("01 0.5 junk\n"), Error);
}

TEST_CASE("atomic write leaves no temp file") {
  const auto dir = std::filesystem::temp_directory_path() / "xz24_io_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "out.txt").string();
  io::atomic_write_file(path, "payload");
  CHECK(io::read_file(path) == "payload");
  CHECK_FALSE(std::filesystem::exists(path + ".tmp"));
  std::filesystem::remove_all(dir);
}
