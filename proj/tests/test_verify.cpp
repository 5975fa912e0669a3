#include <cmath>

#include "doctest.h"
#include "ks/collision.hpp"
#include "ks/init_filter.hpp"
#include "ks/verify.hpp"

using namespace ks;

TEST_SUITE_BEGIN("verify");

TEST_CASE("bound study is deterministic and validates its inputs") {
  auto cfg = make_config(2, 4, M_PI, 2.0);
  const WeightTable table = build_weight_table(
      cfg, KernelSpec::maxwell(2.0), QuadratureSpec::default_for(cfg));
  CHECK_THROWS_AS(bilinear_bound_study(table, {2.0}, 50, 1), DomainError);

  const auto a = bilinear_bound_study(table, {1.0, 2.0}, 150, 1);
  const auto b = bilinear_bound_study(table, {1.0, 2.0}, 150, 1);
  REQUIRE(a.size() == 2);
  CHECK(a[0].p == 1.0);
  CHECK(a[1].p == 2.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].max_ratio_full == b[i].max_ratio_full);
    CHECK(a[i].max_ratio_full > 0.0);
    CHECK(a[i].max_ratio_gain > 0.0);
    CHECK(a[i].max_ratio_loss > 0.0);
    CHECK(a[i].max_ratio_hk > 0.0);
    CHECK(a[i].running_max_full.size() == 150);
  }
  // The running maximum is non-decreasing by construction.
  for (std::size_t i = 1; i < a[0].running_max_full.size(); ++i)
    CHECK(a[0].running_max_full[i] >= a[0].running_max_full[i - 1]);
}

TEST_CASE("bound ratios are invariant under rescaling both arguments") {
  auto cfg = make_config(2, 6, M_PI, 2.0);
  const WeightTable table = build_weight_table(
      cfg, KernelSpec::maxwell(2.0), QuadratureSpec::default_for(cfg));
  Rng rng(13);
  const SpectralField g = random_hermitian_field(cfg, rng);
  const SpectralField f = random_hermitian_field(cfg, rng);

  auto ratio = [&](const SpectralField& gg, const SpectralField& ff) {
    const SpectralField q = eval_collision_extended(gg, ff, table);
    const double g_l1 = lp_norm(inverse_transform(gg, 4), 1.0);
    const double f_l2 = hk_norm(ff, 0);
    return hk_norm(q, 0) / (g_l1 * f_l2);
  };
  auto scaled = [&](const SpectralField& x, double c) {
    SpectralField y = x;
    for (Complex& v : y.coeffs()) v *= c;
    return y;
  };
  const double base = ratio(g, f);
  for (double c : {1e-6, 3.7, 1e6})
    CHECK(std::abs(ratio(scaled(g, c), scaled(f, 2.0 * c)) - base) <= 1e-12 * base);
}

TEST_CASE("single-p convenience wrapper") {
  auto cfg = make_config(2, 4, M_PI, 2.0);
  const BoundReport r =
      check_bilinear_bounds(KernelSpec::maxwell(2.0), cfg, 2.0, 120, 5);
  CHECK(r.p == 2.0);
  CHECK(r.n_samples == 120);
  CHECK(r.max_ratio_full > 0.0);
}

TEST_CASE("self-convergence study input validation") {
  auto prof = gaussian_profile(0.25, M_PI);
  const KernelSpec spec = KernelSpec::maxwell(2.0);
  RunConfig rc;
  rc.dt = 0.05;
  CHECK_THROWS_AS(convergence_study(prof, spec, M_PI, {}, 8, 0.2, rc), DomainError);
  CHECK_THROWS_AS(convergence_study(prof, spec, M_PI, {4, 4}, 8, 0.2, rc),
                  DomainError);
  CHECK_THROWS_AS(convergence_study(prof, spec, M_PI, {2, 4}, 6, 0.2, rc),
                  DomainError);  // N_ref < 2*max(N_list)
}

TEST_CASE("errors decrease with resolution on a small study") {
  auto prof = gaussian_profile(0.25, M_PI);
  RunConfig rc;
  rc.dt = 0.05;
  const ConvergenceTable ct =
      convergence_study(prof, KernelSpec::maxwell(2.0), M_PI, {4, 8}, 16, 0.2, rc);
  REQUIRE(ct.rows.size() == 2);
  CHECK(ct.rows[0].N == 4);
  CHECK(ct.rows[1].error_l2 < ct.rows[0].error_l2);
  REQUIRE(ct.slopes.size() == 1);
  CHECK(ct.slopes[0] > 0.0);
  CHECK(ct.dt_used <= rc.dt);
}

TEST_SUITE_END();
