#include <doctest.h>

#include "support/fixtures.hpp"
#include "xz24/errors.hpp"
#include "xz24/oracle.hpp"
#include "xz24/simulator.hpp"

using namespace xz24;
namespace tt = xz24::testing;

TEST_CASE("diagonalize: closed forms") {
  const auto dz = diagonalize(Hamiltonian::parse("1.0 Z0"));
  CHECK(dz.energies[0] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(dz.energies[1] == doctest::Approx(1.0).epsilon(1e-14));

  const double r = std::sqrt(1.25);
  const auto dx = diagonalize(Hamiltonian::parse("1.0 Z0\n0.5 X0"));
  CHECK(dx.energies[0] == doctest::Approx(-r).epsilon(1e-12));
  CHECK(dx.energies[1] == doctest::Approx(r).epsilon(1e-12));

  const auto ds = diagonalize(tt::two_tone_hamiltonian());
  CHECK(ds.energies[0] == doctest::Approx(tt::kTwoToneLow).epsilon(1e-12));
  CHECK(ds.energies[1] == doctest::Approx(tt::kTwoToneHigh).epsilon(1e-12));
}

TEST_CASE("decomposition invariants: unitarity and reconstruction") {
  SplitMix64 rng(1001);
  for (int i = 0; i < 10; ++i) {
    const auto rh = tt::random_hamiltonian(rng, 4, rng.uniform_int(1, 8));
    const auto d = diagonalize(rh.hamiltonian);
    const auto& v = d.eigenvectors;
    const Eigen::MatrixXcd eye =
        Eigen::MatrixXcd::Identity(v.rows(), v.cols());
    CHECK((v.adjoint() * v - eye).cwiseAbs().maxCoeff() <= 1e-10);
    const Eigen::MatrixXcd rebuilt =
        v * d.energies.asDiagonal().toDenseMatrix().cast<std::complex<double>>() *
        v.adjoint();
    CHECK((rebuilt - rh.hamiltonian.dense_matrix()).cwiseAbs().maxCoeff() <= 1e-9);
    for (Eigen::Index k = 1; k < d.energies.size(); ++k)
      CHECK(d.energies[k] >= d.energies[k - 1]);
  }
}

TEST_CASE("overlaps: eigenstate and symmetric references") {
  const auto dz = diagonalize(Hamiltonian::parse("1.0 Z0"));
  const auto t0 = overlaps(dz, prepare_reference(ReferenceSpec::basis("0"), 1));
  CHECK_ABS(t0.entries[0].weight, 0.0, 1e-18);
  CHECK(t0.entries[1].energy == doctest::Approx(1.0));
  CHECK(t0.entries[1].weight == doctest::Approx(1.0));

  const auto dx = diagonalize(Hamiltonian::parse("1.0 X0"));
  const auto tx = overlaps(dx, prepare_reference(ReferenceSpec::basis("0"), 1));
  CHECK(tx.entries[0].weight == doctest::Approx(0.5));
  CHECK(tx.entries[1].weight == doctest::Approx(0.5));
}

TEST_CASE("overlaps: two-tone closed-form weights") {
  const auto d = diagonalize(tt::two_tone_hamiltonian());
  const auto t = overlaps(d, prepare_reference(ReferenceSpec::basis("0"), 1));
  CHECK(t.entries[0].weight == doctest::Approx(tt::kTwoToneLowWeight).epsilon(1e-10));
  CHECK(t.entries[1].weight == doctest::Approx(tt::kTwoToneHighWeight).epsilon(1e-10));
}

TEST_CASE("overlaps: weights are a probability distribution") {
  SplitMix64 rng(31337);
  for (int i = 0; i < 12; ++i) {
    const auto rh = tt::random_hamiltonian(rng, 4, rng.uniform_int(1, 8));
    const auto d = diagonalize(rh.hamiltonian);
    const auto bits =
        tt::index_to_bits(rng.uniform_int(0, 15), 4);
    const auto t = overlaps(d, prepare_reference(ReferenceSpec::basis(bits), 4));
    double sum = 0.0;
    for (const auto& e : t.entries) {
      CHECK(e.weight >= -1e-15);
      CHECK(e.weight <= 1.0 + 1e-12);
      sum += e.weight;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("overlaps: dimension mismatch is rejected") {
  const auto d = diagonalize(Hamiltonian::parse("1.0 Z0"));
  Eigen::VectorXcd wrong = Eigen::VectorXcd::Zero(4);
  wrong[0] = 1.0;
  CHECK_THROWS_AS(overlaps(d, wrong), Error);
}

TEST_CASE("analytic signal: endpoints and direct evaluation") {
  OverlapTable unit{{{1.0, 1.0}}};
  CHECK(analytic_signal(unit, 0.0) == doctest::Approx(1.0));
  CHECK(analytic_signal(unit, tt::kPi) == doctest::Approx(-1.0));

  const auto d = diagonalize(tt::two_tone_hamiltonian());
  const auto t = overlaps(d, prepare_reference(ReferenceSpec::basis("0"), 1));
  const double expected = tt::kTwoToneHighWeight * std::cos(tt::kTwoToneHigh) +
                          tt::kTwoToneLowWeight * std::cos(tt::kTwoToneLow);
  CHECK(analytic_signal(t, 1.0) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("analytic signal: bounded and even") {
  SplitMix64 rng(246810);
  const auto rh = tt::random_hamiltonian(rng, 3, 6);
  const auto d = diagonalize(rh.hamiltonian);
  const auto t = overlaps(d, prepare_reference(ReferenceSpec::basis("010"), 3));
  for (int i = 0; i < 50; ++i) {
    const double time = rng.uniform(-40.0, 40.0);
    const double q = analytic_signal(t, time);
    CHECK(std::abs(q) <= 1.0 + 1e-12);
    CHECK(q == analytic_signal(t, -time));
  }
}

TEST_CASE("group_by_energy merges degenerate lines") {
  OverlapTable t{{{-1.0, 0.25}, {-1.0 + 1e-12, 0.25}, {2.0, 0.5}}};
  const auto g = group_by_energy(t);
  REQUIRE(g.entries.size() == 2);
  CHECK(g.entries[0].weight == doctest::Approx(0.5));
  CHECK(g.entries[1].weight == doctest::Approx(0.5));
}
