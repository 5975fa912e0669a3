// End-to-end acceptance checks for the solver. Each numbered check prints a
// single [PASS]/[FAIL] line; the process exits nonzero if any check fails.
// The full suite is sized for a single core: the dominant cost is the N=64
// weight table used by the resolution-convergence check.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "ks/collision.hpp"
#include "ks/diagnostics.hpp"
#include "ks/init_filter.hpp"
#include "ks/integrator.hpp"
#include "ks/kernel.hpp"
#include "ks/verify.hpp"

using namespace ks;

namespace {

int g_failures = 0;

void report(int idx, const char* what, bool ok, const std::string& detail) {
  std::printf("[%s] %d %s (%s)\n", ok ? "PASS" : "FAIL", idx, what,
              detail.c_str());
  if (!ok) ++g_failures;
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

const double kL = M_PI;
const double kR = 2.0;

WeightTable maxwell_table(int N) {
  auto cfg = make_config(2, N, kL, kR);
  return build_weight_table(cfg, KernelSpec::maxwell(kR),
                            QuadratureSpec::default_for(cfg));
}

// 1. Mass conservation: N=16, smooth positive data, RK4 to t=1.
void check_mass_conservation() {
  const WeightTable table = maxwell_table(16);
  const SpectralField f0 =
      project_initial(table.config(), gaussian_profile(0.25, kL), 4);
  RunConfig rc;
  rc.t_end = 1.0;
  rc.dt = 1e-2;
  rc.keep_snapshots = false;
  const Trajectory traj = run(f0, table, rc);
  const double m0 = traj.records.front().mass;
  double drift = 0.0;
  for (const auto& r : traj.records)
    drift = std::max(drift, std::abs(r.mass - m0) / std::abs(m0));
  report(1, "mass conservation along the N=16 trajectory", drift <= 1e-12,
         fmt("max relative drift %.3e", drift));
}

// 2. Direct sum vs integral-definition reference on random fields.
void check_oracle_equivalence() {
  double worst = 0.0;
  for (int N : {2, 4, 8}) {
    const WeightTable table = maxwell_table(N);
    Rng rng(100 + N);
    for (int s = 0; s < 10; ++s) {
      const SpectralField f = random_hermitian_field(table.config(), rng);
      const SpectralField fast = eval_collision(f, table).qhat;
      const SpectralField slow =
          quadrature_oracle(f, table.kernel(), 2).qhat;
      double diff2 = 0.0, ref2 = 0.0;
      for (std::size_t i = 0; i < fast.coeffs().size(); ++i) {
        diff2 += std::norm(fast.coeffs()[i] - slow.coeffs()[i]);
        ref2 += std::norm(slow.coeffs()[i]);
      }
      worst = std::max(worst, std::sqrt(diff2 / ref2));
    }
  }
  report(2, "agreement with the independent integral evaluation",
         worst <= 1e-6, fmt("worst relative L2 discrepancy %.3e", worst));
}

// 3. Weight-table integrity at N=16.
void check_table_integrity() {
  const WeightTable table = maxwell_table(16);
  double diag = 0.0;
  for (int l1 = -8; l1 <= 8; ++l1)
    for (int l2 = -8; l2 <= 8; ++l2)
      diag = std::max(diag, std::abs(table.G({l1, l2}, {-l1, -l2})));
  const double conj = table.conjugation_residual();
  const double rich = richardson_residual(table);
  const bool ok = diag == 0.0 && conj <= 1e-12 && rich <= 1e-8;
  report(3, "weight-table integrity at N=16", ok,
         fmt("diag %.1e, conj %.3e, refine %.3e", diag, conj, rich));
}

// 4. Smoothed projection of a discontinuous profile at N=32.
void check_filter_conditions() {
  auto cfg = make_config(2, 32, kL, kR);
  auto prof = ball_indicator_profile(1.0);
  PhysicalField ref(cfg, 4);
  ref.sample(prof);
  const SpectralField raw = project_initial(cfg, prof, 4);
  const SpectralField fN = apply_filter(raw, FilterSpec::fejer());
  const double f0_l2 = lp_norm(ref, 2.0);
  const InitReport rep = check_conditions(fN, ref, 1e-12 * f0_l2);
  const bool ok = rep.cond_a_massgap <= 1e-10 &&
                  rep.cond_b_l2_ratio <= 1.0 + 1e-10 &&
                  rep.cond_b_h1_ratio <= 1.0 + 1e-10 &&
                  rep.cond_c_l1_ratio <= 2.0 &&
                  rep.cond_d_negpart_l2 <= 1e-12 * f0_l2;
  report(4, "projection conditions for smoothed discontinuous data", ok,
         fmt("mass gap %.1e, negative part %.1e", rep.cond_a_massgap,
             rep.cond_d_negpart_l2));
}

// 5+6 share the N sweep; returns the N=32 table/trajectory for the monitor.
void check_negative_part_and_monitor() {
  double prev_sup = 1e300, sup32 = 0.0;
  bool monotone = true;
  for (int N : {8, 16, 32}) {
    const WeightTable table = maxwell_table(N);
    const SpectralField f0 =
        project_initial(table.config(), gaussian_profile(0.25, kL), 4);
    RunConfig rc;
    rc.t_end = 1.0;
    rc.dt = 1e-2;
    rc.keep_snapshots = false;
    Trajectory traj = run(f0, table, rc);
    double sup = 0.0;
    for (const auto& r : traj.records) sup = std::max(sup, r.negpart_l2);
    monotone = monotone && sup <= prev_sup;
    prev_sup = sup;
    if (N == 32) {
      sup32 = sup;
      report(5, "negative-part size shrinks with resolution",
             monotone && sup32 <= 1e-6,
             fmt("non-increasing %.0f, sup at N=32 %.3e", monotone ? 1.0 : 0.0,
                 sup32));
      const ConstantEstimates consts = estimate_constants(table, 200, 42);
      const MonitorReport rep =
          monitor(traj.records, table.config(), consts, traj.records.front(), 2.0);
      report(6, "stability monitor on the N=32 trajectory", rep.all_pass(),
             rep.mass_ok ? (rep.l2_ok ? (rep.negpart_ok ? "all envelopes hold"
                                                        : "negative-part envelope")
                                      : "L2 envelope")
                         : "mass check");
    }
  }
}

// 7. Resolution convergence against an N=64 reference (dominant cost).
void check_spectral_accuracy() {
  RunConfig rc;
  rc.dt = 0.05;
  const ConvergenceTable ct = convergence_study(
      gaussian_profile(0.1, kL), KernelSpec::maxwell(kR), kL, {8, 16, 32}, 64,
      0.5, rc);
  const double e8 = ct.rows[0].error_l2, e16 = ct.rows[1].error_l2,
               e32 = ct.rows[2].error_l2;
  const bool ratios = e16 <= 0.2 * e8 && e32 <= 0.2 * e16;
  const bool slopes = ct.slopes.size() == 2 && ct.slopes[1] > ct.slopes[0];
  report(7, "faster-than-algebraic error decay in N", ratios && slopes,
         fmt("errors %.2e / %.2e / %.2e", e8, e16, e32));
}

// 8. Bilinear bound ratios stabilize and are scale-invariant.
void check_bilinear_bounds_criterion() {
  auto cfg = make_config(2, 8, kL, kR);
  const WeightTable table = maxwell_table(8);
  const double inf = std::numeric_limits<double>::infinity();
  const auto reports = bilinear_bound_study(table, {1.0, 2.0, inf}, 1000, 1);
  bool stabilized = true;
  for (const auto& r : reports) stabilized = stabilized && r.bounded;

  // Scale invariance of the L2 ratio under independent rescalings.
  Rng rng(77);
  const SpectralField g = random_hermitian_field(cfg, rng);
  const SpectralField f = random_hermitian_field(cfg, rng);
  auto ratio = [&](double cg, double cf) {
    SpectralField gs = g, fs = f;
    for (Complex& v : gs.coeffs()) v *= cg;
    for (Complex& v : fs.coeffs()) v *= cf;
    const SpectralField q = eval_collision_extended(gs, fs, table);
    return hk_norm(q, 0) /
           (lp_norm(inverse_transform(gs, 4), 1.0) * hk_norm(fs, 0));
  };
  const double base = ratio(1.0, 1.0);
  double scale_err = 0.0;
  for (double c : {1e-5, 10.0, 1e5})
    scale_err = std::max(scale_err, std::abs(ratio(c, 2.0 * c) - base) / base);

  report(8, "bilinear bound ratios stabilize and scale out",
         stabilized && scale_err <= 1e-12,
         fmt("last-decile stable %.0f, scale deviation %.1e",
             stabilized ? 1.0 : 0.0, scale_err));
}

// 9. Empirical time-integration orders at N=8.
void check_integrator_order() {
  const WeightTable table = maxwell_table(8);
  const SpectralField f0 =
      project_initial(table.config(), gaussian_profile(0.1, kL, 40.0), 4);
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
    const SpectralField u = run(f0, table, r).final_state;
    double e2 = 0.0;
    for (std::size_t i = 0; i < u.coeffs().size(); ++i)
      e2 += std::norm(u.coeffs()[i] - ref.coeffs()[i]);
    return std::sqrt(e2);
  };
  const double order4 =
      std::log2(err_at(Scheme::RK4, 0.1 / 8.0) / err_at(Scheme::RK4, 0.1 / 16.0));
  const double order1 = std::log2(err_at(Scheme::Euler, 0.1 / 8.0) /
                                  err_at(Scheme::Euler, 0.1 / 16.0));
  report(9, "empirical integrator orders", order4 >= 3.8 && order1 >= 0.9,
         fmt("RK4 %.2f, Euler %.2f", order4, order1));
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  check_mass_conservation();
  check_oracle_equivalence();
  check_table_integrity();
  check_filter_conditions();
  check_negative_part_and_monitor();
  check_spectral_accuracy();
  check_bilinear_bounds_criterion();
  check_integrator_order();
  std::printf("%s: %d failure(s), %.1f s total\n",
              g_failures == 0 ? "ALL PASS" : "FAILED", g_failures,
              seconds_since(t0));
  return g_failures == 0 ? 0 : 1;
}
