#ifndef KS_VERIFY_HPP
#define KS_VERIFY_HPP

#include <functional>
#include <vector>

#include "ks/integrator.hpp"
#include "ks/kernel.hpp"
#include "ks/spectral.hpp"

namespace ks {

/// Ratio statistics for the bilinear continuity bounds of the truncated
/// operator: ||Q^{R,+/-}(g,f)||_p / (||g||_1 ||f||_p) and the H1 variant.
/// The operator norms are computed from the doubled-band direct sum (the
/// unprojected Q^R of band-limited fields is itself band-limited, so this is
/// exact up to the table quadrature).
struct BoundReport {
  double p = 2.0;  // infinity() for the sup norm
  int n_samples = 0;
  double max_ratio_gain = 0.0;
  double max_ratio_loss = 0.0;
  double max_ratio_full = 0.0;
  double max_ratio_hk = 0.0;
  bool bounded = false;  // running max increased < 5% over the last decile
  std::vector<double> running_max_full;  // per-sample running maximum
};

/// One table pass shared across all requested p values.
std::vector<BoundReport> bilinear_bound_study(const WeightTable& table,
                                              const std::vector<double>& p_list,
                                              int samples, std::uint64_t seed);

/// Single-p convenience; builds the table at default quadrature.
BoundReport check_bilinear_bounds(const KernelSpec& spec, const SpectralConfig& config,
                                  double p, int samples, std::uint64_t seed);

struct ConvergenceRow {
  int N = 0;
  double error_l2 = 0.0;  // ||P_N f_ref(t_end) - f_N(t_end)||_2
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
  int N_ref = 0;
  double t_end = 0.0;
  double dt_used = 0.0;
  /// Local decay exponents log(e_i/e_{i+1}) / log(N_{i+1}/N_i); increasing
  /// slopes indicate faster-than-algebraic decay.
  std::vector<double> slopes;
};

/// Self-convergence study against a fine-N reference run of the same code.
/// One table is built at N_ref and sliced for the smaller N so weights agree
/// bit-for-bit across resolutions; dt is halved until the reference solution
/// moves by < 1e-10 in L2 (so time error is subdominant).
ConvergenceTable convergence_study(const std::function<double(double, double)>& f0,
                                   const KernelSpec& spec, double L,
                                   const std::vector<int>& N_list, int N_ref,
                                   double t_end, const RunConfig& rc);

}  // namespace ks

#endif
