#ifndef KS_DIAGNOSTICS_HPP
#define KS_DIAGNOSTICS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ks/kernel.hpp"
#include "ks/rng.hpp"
#include "ks/spectral.hpp"

namespace ks {

struct DiagnosticsRecord {
  double t = 0.0;
  double mass = 0.0;  // (2L)^d * Re coeff(0), exact by construction
  double l1 = 0.0;
  double l2 = 0.0;
  double h1 = 0.0;
  double negpart_l2 = 0.0;
  // Envelope values filled in by monitor(); zero until then.
  double bound_l2 = 0.0;
  double bound_negpart = 0.0;
  bool within_l2 = true;
  bool within_negpart = true;
};

DiagnosticsRecord record(const SpectralField& f, double t, int oversample = 4);

/// Empirical growth/continuity constants measured as maxima of the
/// corresponding ratios over random band-limited Hermitian fields. These are
/// lower bounds on the true constants; every consumer applies an explicit
/// safety factor and labels the result heuristic.
struct ConstantEstimates {
  double d0_hat = 0.0;  // ||Q(f,f)||_2 / (||f||_1 ||f||_2)
  double d1_hat = 0.0;  // ||P_N Q(f,f)||_H1 / ((||f||_1 + ||f||_2) ||f||_H1)
  double d3_hat = 0.0;  // ||Q(f,f)||_2 / ((||f||_1 + ||f||_2) ||f||_2)
  double d4_hat = 0.0;  // N ||(I - P_N) Q(f,f)||_2 / ||f||_H1^2  (projection tail)
  double d5_hat = 0.0;  // (2L)^{d/2} * C_hat
  double d6_hat = 0.0;  // C_hat = ||Q(g,f)||_2 / ((2L)^{d/2} ||g||_2 ||f||_2)
  int sample_count = 0;
  std::uint64_t kernel_fingerprint = 0;

  std::string to_kv() const;
};

ConstantEstimates estimate_constants(const WeightTable& table, int samples,
                                     std::uint64_t seed);
/// Builds the table at default quadrature first.
ConstantEstimates estimate_constants(const KernelSpec& spec, const SpectralConfig& config,
                                     int samples, std::uint64_t seed);

/// Random band-limited Hermitian field: complex Gaussian coefficients with
/// exp(-|k|) variance decay, Hermitian symmetry enforced. When shift_positive
/// is set the zero mode is raised so the grid minimum is >= 0.
SpectralField random_hermitian_field(const SpectralConfig& cfg, Rng& rng,
                                     bool shift_positive = false);

struct MonitorEntry {
  double t = 0.0;
  bool pass_mass = false;
  bool pass_l2 = false;       // heuristic
  bool pass_negpart = false;  // heuristic
};

struct MonitorReport {
  std::vector<MonitorEntry> entries;
  // Inputs logged for the report.
  double m_sup_l1 = 0.0;  // sup_t ||f_N(t)||_1 over the trajectory
  double k0_hat = 0.0;
  double k1_hat = 0.0;
  double rate = 0.0;  // d3_hat * (M + K0_hat)
  double tail = 0.0;  // d4_hat * K1_hat^2 / (N * rate)
  double safety = 2.0;
  bool mass_ok = true;
  bool l2_ok = true;       // heuristic envelope
  bool negpart_ok = true;  // heuristic envelope
  bool all_pass() const { return mass_ok && l2_ok && negpart_ok; }

  std::string summary() const;
};

/// Checks every record against (i) exact mass conservation at 1e-12 relative,
/// (ii) the L2 growth envelope exp(2 d0 l1_0 t) * l2_0 * safety, and (iii)
/// the negative-part envelope exp(rate*t) * (negpart_0 + tail) * safety.
/// (ii)/(iii) use empirical constants and are heuristic red flags, not
/// refutations. init is the record of the initial field; records may be
/// mutated to fill the bound columns.
MonitorReport monitor(std::vector<DiagnosticsRecord>& records,
                      const SpectralConfig& config, const ConstantEstimates& consts,
                      const DiagnosticsRecord& init, double safety = 2.0);

}  // namespace ks

#endif
