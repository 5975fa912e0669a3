#include <cmath>

#include "doctest.h"
#include "ks/init_filter.hpp"
#include "ks/integrator.hpp"

using namespace ks;

namespace {

WeightTable small_table(int N) {
  auto cfg = make_config(2, N, M_PI, 2.0);
  return build_weight_table(cfg, KernelSpec::maxwell(2.0),
                            QuadratureSpec::default_for(cfg));
}

double l2_diff(const SpectralField& a, const SpectralField& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.coeffs().size(); ++i)
    s += std::norm(a.coeffs()[i] - b.coeffs()[i]);
  return std::sqrt(s);
}

}  // namespace

TEST_SUITE_BEGIN("integrator");

TEST_CASE("run config validation") {
  RunConfig rc;
  CHECK_NOTHROW(rc.validate());
  rc.dt = 0.0;
  CHECK_THROWS_AS(rc.validate(), DomainError);
  rc = RunConfig{};
  rc.t_end = -1.0;
  CHECK_THROWS_AS(rc.validate(), DomainError);
  rc = RunConfig{};
  rc.diag_every = 0;
  CHECK_THROWS_AS(rc.validate(), DomainError);
}

TEST_CASE("mode 0 is bitwise invariant along the trajectory") {
  const WeightTable table = small_table(8);
  const SpectralField f0 =
      project_initial(table.config(), gaussian_profile(0.25, M_PI), 4);
  RunConfig rc;
  rc.t_end = 0.5;
  rc.dt = 0.025;
  const Trajectory traj = run(f0, table, rc);
  const Complex m0 = f0.mode0();
  CHECK(traj.final_state.mode0() == m0);
  for (const auto& rec : traj.records)
    CHECK(rec.mass == traj.records.front().mass);
}

TEST_CASE("record cadence and endpoints") {
  const WeightTable table = small_table(4);
  const SpectralField f0 =
      project_initial(table.config(), gaussian_profile(0.25, M_PI), 4);
  RunConfig rc;
  rc.t_end = 0.1;
  rc.dt = 0.01;
  rc.diag_every = 3;
  const Trajectory traj = run(f0, table, rc);
  REQUIRE(!traj.records.empty());
  CHECK(traj.records.front().t == 0.0);
  CHECK(traj.records.back().t == doctest::Approx(0.1).epsilon(1e-12));
  // Steps 0,3,6,9 plus the final step 10.
  CHECK(traj.records.size() == 5);
  CHECK(traj.snapshots.size() == traj.records.size());
}

TEST_CASE("final step is clamped to land exactly on t_end") {
  const WeightTable table = small_table(4);
  const SpectralField f0 =
      project_initial(table.config(), gaussian_profile(0.25, M_PI), 4);
  RunConfig rc;
  rc.t_end = 0.25;
  rc.dt = 0.1;  // 2 full steps + one clamped 0.05 step
  const Trajectory traj = run(f0, table, rc);
  CHECK(traj.times.back() == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("empirical convergence orders of the two schemes") {
  const WeightTable table = small_table(8);
  // Large amplitude so the time-discretization error is far above round-off.
  const SpectralField f0 =
      project_initial(table.config(), gaussian_profile(0.1, M_PI, 40.0), 4);
  RunConfig rc;
  rc.t_end = 0.1;
  rc.keep_snapshots = false;
  rc.diag_every = 1 << 30;

  rc.dt = 0.1 / 1024.0;
  const SpectralField ref = run(f0, table, rc).final_state;

  auto err_at = [&](Scheme s, double dt) {
    RunConfig r = rc;
    r.scheme = s;
    r.dt = dt;
    return l2_diff(run(f0, table, r).final_state, ref);
  };
  const double r4a = err_at(Scheme::RK4, 0.1 / 8.0);
  const double r4b = err_at(Scheme::RK4, 0.1 / 16.0);
  const double e1a = err_at(Scheme::Euler, 0.1 / 8.0);
  const double e1b = err_at(Scheme::Euler, 0.1 / 16.0);
  const double order4 = std::log2(r4a / r4b);
  const double order1 = std::log2(e1a / e1b);
  CHECK(order4 >= 3.5);
  CHECK(order1 >= 0.8);
  CHECK(order1 <= 1.3);
}

TEST_CASE("divergence raises a time-stamped error") {
  const WeightTable table = small_table(4);
  const SpectralField f0 =
      project_initial(table.config(), gaussian_profile(0.25, M_PI), 4);
  RunConfig rc;
  rc.t_end = 4e6;
  rc.dt = 1e6;  // far beyond the stable step size
  bool thrown = false;
  try {
    run(f0, table, rc);
  } catch (const BlowupError& e) {
    thrown = true;
    CHECK(e.t > 0.0);
    CHECK(e.t <= rc.t_end);
  }
  CHECK(thrown);
}

TEST_CASE("local-existence step suggestion") {
  CHECK(suggest_tau(1.0, 2.0, 3.0, 4.0) ==
        doctest::Approx(1.0 / (2.0 * (3.0 * 2.0 + 4.0 * 1.0))).epsilon(1e-15));
}

TEST_SUITE_END();
