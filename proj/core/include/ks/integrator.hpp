#ifndef KS_INTEGRATOR_HPP
#define KS_INTEGRATOR_HPP

#include <vector>

#include "ks/diagnostics.hpp"
#include "ks/kernel.hpp"
#include "ks/spectral.hpp"

namespace ks {

enum class Scheme { Euler, RK4 };

struct RunConfig {
  double t_end = 1.0;
  double dt = 1e-2;
  Scheme scheme = Scheme::RK4;
  int diag_every = 1;   // diagnostics cadence in steps
  int oversample = 4;   // grid factor for L1 / negative-part diagnostics
  bool keep_snapshots = true;

  void validate() const;
};

struct Trajectory {
  std::vector<double> times;                 // per diagnostics record
  std::vector<SpectralField> snapshots;      // per record, if kept
  std::vector<DiagnosticsRecord> records;
  SpectralField final_state;
};

/// One explicit step of du/dt = Q(u,u). Mode 0 is bitwise invariant (the RHS
/// mode 0 is an exact zero). Throws BlowupError when any |coefficient|
/// exceeds 1e12.
SpectralField step(const SpectralField& f, const WeightTable& table, double dt,
                   Scheme scheme);

/// Integrates to t_end, recording diagnostics every diag_every steps and at
/// both endpoints. BlowupError carries the time of the failed step.
Trajectory run(const SpectralField& f0, const WeightTable& table, const RunConfig& rc);

/// Local-existence horizon tau = 1 / (2 (D5 M2 + D6 M1)); used as a heuristic
/// cap on dt (warn when dt > tau/10).
double suggest_tau(double M1, double M2, double D5, double D6);

}  // namespace ks

#endif
