#include <doctest.h>

#include <atomic>
#include <cmath>

#include "qbat/sweep.hpp"

using namespace qbat;

namespace {

ChainSpec make_spec(int n, double g, double gamma,
                    CouplingScheme scheme = NearestNeighbor{}) {
  ChainSpec spec;
  spec.n_spins = n;
  spec.coupling = scheme;
  spec.g = g;
  spec.gamma = gamma;
  return spec;
}

}  // namespace

TEST_CASE("run_indexed covers every index once, any thread count") {
  for (int threads : {1, 2, 4}) {
    std::vector<std::atomic<int>> hits(37);
    run_indexed(hits.size(), threads, [&](std::size_t i) { hits[i]++; });
    for (const auto& h : hits) CHECK(h.load() == 1);
  }
}

TEST_CASE("run_indexed propagates cell exceptions") {
  CHECK_THROWS_AS(run_indexed(8, 2,
                              [](std::size_t i) {
                                if (i == 5) throw argument_error("boom");
                              }),
                  argument_error);
}

TEST_CASE("coupling sweep: zero-coupling column is identically zero") {
  const auto base = make_spec(3, 0.0, 0.5);
  const GridResult grid = sweep_coupling(base, {0.0, 5.0, 10.0},
                                         LinearDrive{10.0}, 2.0, {}, 21, 2);
  REQUIRE(grid.axis1.size() == 3);
  REQUIRE(grid.values.size() == 3);
  REQUIRE(grid.values[0].size() == 21);
  for (double w : grid.values[0]) CHECK(w <= 1e-9);
  for (const auto& m : grid.meta) {
    CHECK(m.converged);
    CHECK(m.dt_used > 0.0);
  }
  CHECK(grid.grid_max() > 0.0);  // the coupled columns charge
}

TEST_CASE("cells are independent of sweep context and thread count") {
  const auto base = make_spec(3, 0.0, 0.5);
  const std::vector<double> gs = {2.0, 7.0, 12.0};
  const GridResult parallel =
      sweep_coupling(base, gs, LinearDrive{10.0}, 2.0, {}, 11, 2);
  const GridResult serial =
      sweep_coupling(base, gs, LinearDrive{10.0}, 2.0, {}, 11, 1);
  const GridResult solo =
      sweep_coupling(base, {7.0}, LinearDrive{10.0}, 2.0, {}, 11, 1);
  for (std::size_t i = 0; i < gs.size(); ++i) {
    for (std::size_t k = 0; k < 11; ++k) {
      CHECK(parallel.values[i][k] == serial.values[i][k]);
    }
  }
  for (std::size_t k = 0; k < 11; ++k) {
    CHECK(solo.values[0][k] == parallel.values[1][k]);
  }
}

TEST_CASE("drive sweep uses the linear protocol and zeroes the v=0 column") {
  const auto base = make_spec(3, 10.0, 0.5);
  const GridResult grid = sweep_drive(base, {0.0, 10.0}, 2.0, {}, 11, 2);
  for (double w : grid.values[0]) CHECK(w <= 1e-9);
  CHECK(grid.values[1].back() > 0.0);
  CHECK(std::holds_alternative<LinearDrive>(grid.drive));
}

TEST_CASE("anisotropy sweep produces one symmetric grid per chain length") {
  const auto base = make_spec(2, 10.0, 0.0, LongRange{1.0});
  const std::vector<double> gammas = {-1.0, -0.5, 0.0, 0.5, 1.0};
  const auto grids = sweep_anisotropy({2, 3}, gammas, base, LinearDrive{10.0},
                                      2.0, {}, 11, 2);
  REQUIRE(grids.size() == 2);
  CHECK(grids[0].base.n_spins == 2);
  CHECK(grids[1].base.n_spins == 3);
  for (const auto& grid : grids) {
    REQUIRE(grid.values.size() == gammas.size());
    // gamma -> -gamma symmetry of the whole grid
    for (std::size_t i = 0; i < gammas.size(); ++i) {
      const std::size_t j = gammas.size() - 1 - i;
      for (std::size_t k = 0; k < grid.taus.size(); ++k) {
        CHECK(grid.values[i][k] ==
              doctest::Approx(grid.values[j][k]).epsilon(1e-6));
      }
    }
    // the isotropic column is a null
    for (double w : grid.values[2]) CHECK(w <= 1e-6);
  }
}

TEST_CASE("protocol comparison covers schemes and flags trivial chains") {
  const auto base = make_spec(1, 10.0, 0.5);
  const auto rows = compare_protocols({1, 2}, base, LinearDrive{10.0},
                                      SinusoidalDrive{10.0, 4.0}, 2.0, {}, 101,
                                      2);
  REQUIRE(rows.size() == 4);  // 2 chain lengths x 2 schemes
  CHECK(rows[0].n_spins == 1);
  CHECK_FALSE(rows[0].long_range);
  CHECK(rows[1].long_range);
  // a single spin never charges
  CHECK(rows[0].linear.w_max == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(rows[0].periodic.w_max == doctest::Approx(0.0).epsilon(1e-9));
  // N=2 at strong coupling keeps its paired ground state: no charging
  CHECK(rows[2].linear.w_max == doctest::Approx(0.0).epsilon(1e-7));

  const auto nn_only = compare_protocols_filtered(
      {2}, base, LinearDrive{10.0}, SinusoidalDrive{10.0, 4.0}, 2.0, {}, 101, 2,
      true, false);
  REQUIRE(nn_only.size() == 1);
  CHECK_FALSE(nn_only[0].long_range);
  CHECK(nn_only[0].linear.w_max ==
        doctest::Approx(rows[2].linear.w_max).epsilon(1e-12));
}

TEST_CASE("sweep axis validation") {
  const auto base = make_spec(2, 1.0, 0.5);
  CHECK_THROWS_AS(sweep_coupling(base, {}, NoDrive{}, 1.0, {}, 11, 1),
                  argument_error);
  CHECK_THROWS_AS(sweep_coupling(base, {2.0, 1.0}, NoDrive{}, 1.0, {}, 11, 1),
                  argument_error);
  CHECK_THROWS_AS(sweep_anisotropy({}, {0.0, 0.5}, base, NoDrive{}, 1.0, {}, 11,
                                   1),
                  argument_error);
}
