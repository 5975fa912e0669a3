#include "ks/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ks/collision.hpp"
#include "ks/diagnostics.hpp"
#include "ks/init_filter.hpp"

namespace ks {
namespace {

double field_lp(const SpectralField& f, double p, int oversample) {
  if (p == 2.0) {
    double s = 0.0;
    for (const Complex& c : f.coeffs()) s += std::norm(c);
    return std::sqrt(std::pow(2.0 * f.config().L, f.config().d) * s);
  }
  return lp_norm(inverse_transform(f, oversample), p);
}

}  // namespace

std::vector<BoundReport> bilinear_bound_study(const WeightTable& table,
                                              const std::vector<double>& p_list,
                                              int samples, std::uint64_t seed) {
  if (samples < 100) throw DomainError("bilinear_bound_study: samples >= 100 required");
  const SpectralConfig& cfg = table.config();
  Rng rng(seed);

  std::vector<BoundReport> reports(p_list.size());
  for (std::size_t i = 0; i < p_list.size(); ++i) {
    reports[i].p = p_list[i];
    reports[i].n_samples = samples;
    reports[i].running_max_full.reserve(samples);
  }

  for (int s = 0; s < samples; ++s) {
    const SpectralField g = random_hermitian_field(cfg, rng);
    const SpectralField f = random_hermitian_field(cfg, rng);
    // Unprojected truncated operator on the doubled band; split parts share
    // the index convention (the loss weight depends on the g index).
    const SpectralField q_full = eval_collision_extended(g, f, table);
    const SpectralField q_gain = eval_gain_extended(g, f, table);
    const SpectralField q_loss = eval_loss_extended(g, f, table);

    const double g_l1 = field_lp(g, 1.0, 4);
    const double g_h1 = hk_norm(g, 1);
    const double f_h1 = hk_norm(f, 1);
    if (g_l1 == 0.0 || g_h1 == 0.0 || f_h1 == 0.0) continue;
    const double q_h1 = hk_norm(q_full, 1);

    for (std::size_t i = 0; i < p_list.size(); ++i) {
      const double p = p_list[i];
      const double f_p = field_lp(f, p, 4);
      if (f_p == 0.0) continue;
      const double denom = g_l1 * f_p;
      reports[i].max_ratio_full =
          std::max(reports[i].max_ratio_full, field_lp(q_full, p, 2) / denom);
      reports[i].max_ratio_gain =
          std::max(reports[i].max_ratio_gain, field_lp(q_gain, p, 2) / denom);
      reports[i].max_ratio_loss =
          std::max(reports[i].max_ratio_loss, field_lp(q_loss, p, 2) / denom);
      reports[i].max_ratio_hk = std::max(reports[i].max_ratio_hk, q_h1 / (g_h1 * f_h1));
      reports[i].running_max_full.push_back(reports[i].max_ratio_full);
    }
  }

  for (BoundReport& r : reports) {
    const std::size_t n = r.running_max_full.size();
    if (n >= 10) {
      const double at90 = r.running_max_full[n - n / 10 - 1];
      const double atEnd = r.running_max_full[n - 1];
      r.bounded = (atEnd - at90) <= 0.05 * at90;
    }
  }
  return reports;
}

BoundReport check_bilinear_bounds(const KernelSpec& spec, const SpectralConfig& config,
                                  double p, int samples, std::uint64_t seed) {
  const WeightTable table =
      build_weight_table(config, spec, QuadratureSpec::default_for(config));
  return bilinear_bound_study(table, {p}, samples, seed)[0];
}

ConvergenceTable convergence_study(const std::function<double(double, double)>& f0,
                                   const KernelSpec& spec, double L,
                                   const std::vector<int>& N_list, int N_ref,
                                   double t_end, const RunConfig& rc) {
  if (N_list.empty()) throw DomainError("convergence_study: empty N list");
  for (std::size_t i = 1; i < N_list.size(); ++i)
    if (N_list[i] <= N_list[i - 1])
      throw DomainError("convergence_study: N list must be strictly increasing");
  if (N_ref < 2 * N_list.back())
    throw DomainError("convergence_study: N_ref must be >= 2*max(N_list)");

  const SpectralConfig ref_cfg = make_config(2, N_ref, L, spec.R);
  const WeightTable ref_table =
      build_weight_table(ref_cfg, spec, QuadratureSpec::default_for(ref_cfg));

  RunConfig base = rc;
  base.t_end = t_end;
  base.keep_snapshots = false;
  base.diag_every = 1 << 30;

  auto run_at = [&](const WeightTable& table, double dt) {
    RunConfig r = base;
    r.dt = dt;
    const SpectralField init = project_initial(table.config(), f0, 4);
    return run(init, table, r).final_state;
  };

  // Halve dt until the reference solution stops moving (time error
  // subdominant to the spectral error under study).
  double dt = base.dt;
  SpectralField ref = run_at(ref_table, dt);
  for (int halvings = 0;; ++halvings) {
    if (halvings > 12) throw ResourceError("convergence_study: dt refinement budget");
    const SpectralField finer = run_at(ref_table, dt / 2.0);
    double diff2 = 0.0;
    for (std::size_t i = 0; i < ref.coeffs().size(); ++i)
      diff2 += std::norm(ref.coeffs()[i] - finer.coeffs()[i]);
    const double diff = std::sqrt(std::pow(2.0 * L, 2) * diff2);
    ref = finer;
    dt /= 2.0;
    if (diff < 1e-10) break;
  }

  ConvergenceTable table_out;
  table_out.N_ref = N_ref;
  table_out.t_end = t_end;
  table_out.dt_used = dt;

  const int rhalf = N_ref / 2, rn1 = N_ref + 1;
  for (int N : N_list) {
    const WeightTable sub = slice_table(ref_table, N);
    const SpectralField fN = run_at(sub, dt);
    const int half = N / 2, n1 = N + 1;
    double err2 = 0.0;
    for (int k1 = -half; k1 <= half; ++k1)
      for (int k2 = -half; k2 <= half; ++k2) {
        const Complex a =
            ref.coeffs()[static_cast<std::size_t>(k1 + rhalf) * rn1 + (k2 + rhalf)];
        const Complex b =
            fN.coeffs()[static_cast<std::size_t>(k1 + half) * n1 + (k2 + half)];
        err2 += std::norm(a - b);
      }
    table_out.rows.push_back({N, std::sqrt(std::pow(2.0 * L, 2) * err2)});
  }

  for (std::size_t i = 0; i + 1 < table_out.rows.size(); ++i) {
    const auto& a = table_out.rows[i];
    const auto& b = table_out.rows[i + 1];
    if (a.error_l2 > 0.0 && b.error_l2 > 0.0)
      table_out.slopes.push_back(std::log(a.error_l2 / b.error_l2) /
                                 std::log(static_cast<double>(b.N) / a.N));
    else
      table_out.slopes.push_back(std::numeric_limits<double>::infinity());
  }
  return table_out;
}

}  // namespace ks
