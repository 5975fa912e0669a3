#include "ks/integrator.hpp"

#include <cmath>

#include "ks/collision.hpp"

namespace ks {
namespace {

void axpy(SpectralField& y, double a, const SpectralField& x) {
  for (std::size_t i = 0; i < y.coeffs().size(); ++i) y.coeffs()[i] += a * x.coeffs()[i];
}

SpectralField rhs(const SpectralField& f, const WeightTable& table) {
  return eval_collision(f, table).qhat;
}

void check_blowup(const SpectralField& f, double t) {
  if (f.max_abs() > 1e12 || !std::isfinite(f.max_abs()))
    throw BlowupError("coefficient magnitude exceeded 1e12", t);
}

SpectralField step_at(const SpectralField& f, const WeightTable& table, double dt,
                      Scheme scheme, double t) {
  if (!(f.config() == table.config())) throw ConfigMismatch("step: config mismatch");
  SpectralField out = f;
  switch (scheme) {
    case Scheme::Euler: {
      axpy(out, dt, rhs(f, table));
      break;
    }
    case Scheme::RK4: {
      const SpectralField k1 = rhs(f, table);
      SpectralField u = f;
      axpy(u, 0.5 * dt, k1);
      const SpectralField k2 = rhs(u, table);
      u = f;
      axpy(u, 0.5 * dt, k2);
      const SpectralField k3 = rhs(u, table);
      u = f;
      axpy(u, dt, k3);
      const SpectralField k4 = rhs(u, table);
      axpy(out, dt / 6.0, k1);
      axpy(out, dt / 3.0, k2);
      axpy(out, dt / 3.0, k3);
      axpy(out, dt / 6.0, k4);
      break;
    }
  }
  check_blowup(out, t);
  return out;
}

}  // namespace

void RunConfig::validate() const {
  if (!(dt > 0.0)) throw DomainError("RunConfig: dt must be positive");
  if (t_end < 0.0) throw DomainError("RunConfig: t_end must be >= 0");
  if (diag_every < 1) throw DomainError("RunConfig: diag_every must be >= 1");
  if (oversample < 1) throw DomainError("RunConfig: oversample must be >= 1");
}

SpectralField step(const SpectralField& f, const WeightTable& table, double dt,
                   Scheme scheme) {
  return step_at(f, table, dt, scheme, 0.0);
}

Trajectory run(const SpectralField& f0, const WeightTable& table, const RunConfig& rc) {
  rc.validate();
  if (!(f0.config() == table.config())) throw ConfigMismatch("run: config mismatch");

  Trajectory traj;
  auto emit = [&](const SpectralField& f, double t) {
    traj.times.push_back(t);
    traj.records.push_back(record(f, t, rc.oversample));
    if (rc.keep_snapshots) traj.snapshots.push_back(f);
  };

  SpectralField f = f0;
  double t = 0.0;
  emit(f, t);
  const long nsteps = static_cast<long>(std::ceil(rc.t_end / rc.dt - 1e-12));
  for (long s = 0; s < nsteps; ++s) {
    const double dt = std::min(rc.dt, rc.t_end - t);
    f = step_at(f, table, dt, rc.scheme, t + dt);
    t = (s + 1 == nsteps) ? rc.t_end : t + dt;
    if ((s + 1) % rc.diag_every == 0 || s + 1 == nsteps) emit(f, t);
  }
  traj.final_state = f;
  return traj;
}

double suggest_tau(double M1, double M2, double D5, double D6) {
  if (!(M1 > 0.0) || !(M2 > 0.0) || !(D5 > 0.0) || !(D6 > 0.0))
    throw DomainError("suggest_tau: all arguments must be positive");
  return 1.0 / (2.0 * (D5 * M2 + D6 * M1));
}

}  // namespace ks
