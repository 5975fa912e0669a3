#include "ks/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "ks/collision.hpp"

namespace ks {

DiagnosticsRecord record(const SpectralField& f, double t, int oversample) {
  DiagnosticsRecord r;
  r.t = t;
  const double vol = std::pow(2.0 * f.config().L, f.config().d);
  r.mass = vol * f.mode0().real();
  double sum2 = 0.0;
  for (const Complex& c : f.coeffs()) sum2 += std::norm(c);
  r.l2 = std::sqrt(vol * sum2);
  r.h1 = hk_norm(f, 1);
  const PhysicalField grid = inverse_transform(f, oversample);
  r.l1 = lp_norm(grid, 1.0);
  auto [pos, neg] = split_parts(f, oversample);
  r.negpart_l2 = lp_norm(neg, 2.0);
  (void)pos;
  return r;
}

SpectralField random_hermitian_field(const SpectralConfig& cfg, Rng& rng,
                                     bool shift_positive) {
  const int half = cfg.N / 2, n1 = cfg.N + 1;
  SpectralField f(cfg);
  for (int k1 = -half; k1 <= half; ++k1)
    for (int k2 = -half; k2 <= half; ++k2) {
      if (k1 < 0 || (k1 == 0 && k2 < 0)) continue;
      const double decay = std::exp(-std::sqrt(static_cast<double>(k1) * k1 +
                                               static_cast<double>(k2) * k2));
      Complex z{rng.gaussian() * decay, rng.gaussian() * decay};
      if (k1 == 0 && k2 == 0) z = Complex{z.real(), 0.0};
      f.coeffs()[static_cast<std::size_t>(k1 + half) * n1 + (k2 + half)] = z;
      f.coeffs()[static_cast<std::size_t>(-k1 + half) * n1 + (-k2 + half)] = std::conj(z);
    }
  if (shift_positive) {
    const PhysicalField grid = inverse_transform(f, 4);
    const double mn = *std::min_element(grid.values().begin(), grid.values().end());
    if (mn < 0.0) f.at({0, 0}) += Complex{-mn + 0.05, 0.0};
  }
  return f;
}

ConstantEstimates estimate_constants(const WeightTable& table, int samples,
                                     std::uint64_t seed) {
  if (samples < 100) throw DomainError("estimate_constants: samples >= 100 required");
  const SpectralConfig& cfg = table.config();
  const double sqrt_vol = std::pow(2.0 * cfg.L, cfg.d / 2.0);
  Rng rng(seed);

  ConstantEstimates est;
  est.sample_count = samples;
  est.kernel_fingerprint = table.kernel().fingerprint();

  const int ehalf = cfg.N, half = cfg.N / 2, en1 = 2 * cfg.N + 1;
  for (int s = 0; s < samples; ++s) {
    const SpectralField f = random_hermitian_field(cfg, rng);
    const SpectralField g = random_hermitian_field(cfg, rng);
    const DiagnosticsRecord rf = record(f, 0.0);
    const DiagnosticsRecord rg = record(g, 0.0);
    if (rf.l1 == 0.0 || rf.l2 == 0.0 || rg.l2 == 0.0) continue;

    const SpectralField qext = eval_collision_extended(f, table);
    // Band part = P_N Q; tail = (I - P_N) Q.
    double band2 = 0.0, tail2 = 0.0, band_h1_2 = 0.0;
    for (int k1 = -ehalf; k1 <= ehalf; ++k1)
      for (int k2 = -ehalf; k2 <= ehalf; ++k2) {
        const double a2 = std::norm(
            qext.coeffs()[static_cast<std::size_t>(k1 + ehalf) * en1 + (k2 + ehalf)]);
        if (std::abs(k1) <= half && std::abs(k2) <= half) {
          band2 += a2;
          const double wx = M_PI * k1 / cfg.L, wy = M_PI * k2 / cfg.L;
          band_h1_2 += a2 * (1.0 + wx * wx + wy * wy);
        } else {
          tail2 += a2;
        }
      }
    const double q_l2 = sqrt_vol * std::sqrt(band2);
    const double q_h1 = sqrt_vol * std::sqrt(band_h1_2);
    const double q_tail = sqrt_vol * std::sqrt(tail2);

    est.d0_hat = std::max(est.d0_hat, q_l2 / (rf.l1 * rf.l2));
    est.d1_hat = std::max(est.d1_hat, q_h1 / ((rf.l1 + rf.l2) * rf.h1));
    est.d3_hat = std::max(est.d3_hat, q_l2 / ((rf.l1 + rf.l2) * rf.l2));
    est.d4_hat = std::max(est.d4_hat, cfg.N * q_tail / (rf.h1 * rf.h1));

    const CollisionOutput qb = eval_collision_bilinear(g, f, table);
    double qb2 = 0.0;
    for (const Complex& c : qb.qhat.coeffs()) qb2 += std::norm(c);
    const double c_hat = sqrt_vol * std::sqrt(qb2) / (sqrt_vol * rg.l2 * rf.l2);
    est.d6_hat = std::max(est.d6_hat, c_hat);
  }
  est.d5_hat = sqrt_vol * est.d6_hat;
  return est;
}

ConstantEstimates estimate_constants(const KernelSpec& spec, const SpectralConfig& config,
                                     int samples, std::uint64_t seed) {
  const WeightTable table =
      build_weight_table(config, spec, QuadratureSpec::default_for(config));
  return estimate_constants(table, samples, seed);
}

std::string ConstantEstimates::to_kv() const {
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "d0_hat=%.17g\nd1_hat=%.17g\nd3_hat=%.17g\nd4_hat=%.17g\n"
                "d5_hat=%.17g\nd6_hat=%.17g\nsample_count=%d\nkernel_fingerprint=%llu\n",
                d0_hat, d1_hat, d3_hat, d4_hat, d5_hat, d6_hat, sample_count,
                static_cast<unsigned long long>(kernel_fingerprint));
  return buf;
}

MonitorReport monitor(std::vector<DiagnosticsRecord>& records,
                      const SpectralConfig& config, const ConstantEstimates& consts,
                      const DiagnosticsRecord& init, double safety) {
  MonitorReport rep;
  rep.safety = safety;
  if (records.empty()) return rep;
  const double t_end = records.back().t;

  rep.m_sup_l1 = init.l1;
  for (const DiagnosticsRecord& r : records) rep.m_sup_l1 = std::max(rep.m_sup_l1, r.l1);

  // Growth proxies: K0 bounds ||f_N(t)||_2, K1 bounds ||f_N(t)||_H1 over the
  // horizon (exponential-in-time Gronwall forms with the empirical rates).
  rep.k0_hat = std::exp(t_end * consts.d0_hat * rep.m_sup_l1) * init.l2;
  rep.k1_hat = std::exp(t_end * consts.d1_hat * (rep.m_sup_l1 + rep.k0_hat)) * init.h1;
  rep.rate = consts.d3_hat * (rep.m_sup_l1 + rep.k0_hat);
  // Stationary tail of the growth inequality d/dt n <= rate*n + d4*K1^2/N:
  // the 1/rate turns the forcing into an envelope offset.
  rep.tail = consts.d4_hat * rep.k1_hat * rep.k1_hat / (config.N * rep.rate);

  for (DiagnosticsRecord& r : records) {
    MonitorEntry e;
    e.t = r.t;
    e.pass_mass = std::abs(r.mass - init.mass) <= 1e-12 * std::abs(init.mass);

    r.bound_l2 = std::exp(2.0 * consts.d0_hat * init.l1 * r.t) * init.l2 * safety;
    e.pass_l2 = r.l2 <= r.bound_l2;
    r.within_l2 = e.pass_l2;

    r.bound_negpart =
        std::exp(rep.rate * r.t) * (init.negpart_l2 + rep.tail) * safety;
    e.pass_negpart = r.negpart_l2 <= r.bound_negpart;
    r.within_negpart = e.pass_negpart;

    rep.mass_ok = rep.mass_ok && e.pass_mass;
    rep.l2_ok = rep.l2_ok && e.pass_l2;
    rep.negpart_ok = rep.negpart_ok && e.pass_negpart;
    rep.entries.push_back(e);
  }
  return rep;
}

std::string MonitorReport::summary() const {
  char buf[768];
  std::snprintf(buf, sizeof(buf),
                "mass (exact): %s\n"
                "l2 envelope (heuristic): %s\n"
                "negative-part envelope (heuristic): %s\n"
                "sup_l1=%.17g k0_hat=%.17g k1_hat=%.17g rate=%.17g tail=%.17g "
                "safety=%g records=%zu\n",
                mass_ok ? "pass" : "FAIL", l2_ok ? "pass" : "FAIL",
                negpart_ok ? "pass" : "FAIL", m_sup_l1, k0_hat, k1_hat, rate, tail,
                safety, entries.size());
  return buf;
}

}  // namespace ks
