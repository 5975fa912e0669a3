#ifndef KS_INIT_FILTER_HPP
#define KS_INIT_FILTER_HPP

#include <functional>
#include <string>

#include "ks/spectral.hpp"

namespace ks {

/// Spectral smoothing factors sigma(k), applied per coefficient. Fejer is a
/// per-axis product with a pointwise non-negative kernel (a non-negative
/// sample set filters to a non-negative function); Exponential is radial,
/// sigma = exp(-alpha (|k|/(N/2))^{2p}).
struct FilterSpec {
  enum class Kind { None, Fejer, Exponential };
  Kind kind = Kind::None;
  double alpha = 36.0;  // ~ -ln(double epsilon)
  int order = 4;

  static FilterSpec none() { return {}; }
  static FilterSpec fejer() { return {Kind::Fejer}; }
  static FilterSpec exponential(double alpha = 36.0, int order = 4) {
    return {Kind::Exponential, alpha, order};
  }

  /// sigma for multi-index k; always 1 at k=0 and within [0,1].
  double sigma(const std::vector<int>& k, int N) const;
};

struct InitReport {
  double cond_a_massgap = 0.0;     // |mass_N - mass_0| / mass_0
  double cond_b_l2_ratio = 0.0;    // ||f_N||_2 / ||f0||_2
  double cond_b_h1_ratio = 0.0;    // ||f_N||_H1 / ||f0||_H1
  double cond_c_l1_ratio = 0.0;    // ||f_N||_1 / ||f0||_1
  double cond_d_negpart_l2 = 0.0;  // ||f_N^-||_2
  bool pass_a = false, pass_b = false, pass_c = false, pass_d = false;
  bool all_pass() const { return pass_a && pass_b && pass_c && pass_d; }

  /// Flat key=value block (one pair per line) for the CLI.
  std::string to_kv() const;
};

/// Trapezoid projection of oversampled grid values onto the band; requires
/// oversample >= 2 so the projection quadrature sees sub-band structure.
SpectralField project_initial(const PhysicalField& f0);

/// Samples fn on the (oversample*(N+1))^d grid and projects.
SpectralField project_initial(const SpectralConfig& cfg,
                              const std::function<double(double, double)>& fn,
                              int oversample = 4);

SpectralField apply_filter(const SpectralField& f, const FilterSpec& filt);

/// Checks the four initial-data conditions against the reference grid values
/// f0 (assumed >= 0). Reference L2/H1 norms come from the full discrete
/// spectrum of the f0 grid so that the (b) ratios are <= 1 to round-off for a
/// projection of that same grid. Thresholds: (a) 1e-10 relative, (b) 1+1e-10,
/// (c) ratio <= 2, (d) negative-part L2 < eps.
InitReport check_conditions(const SpectralField& fN0, const PhysicalField& f0,
                            double eps);

/// Test profiles on [-L,L]^2 (periodized over the +-1 image lattice where the
/// profile has unbounded support).
std::function<double(double, double)> gaussian_profile(double T0, double L,
                                                       double amplitude = 1.0);
std::function<double(double, double)> double_bump_profile(double T0, double offset,
                                                          double L);
std::function<double(double, double)> ball_indicator_profile(double radius);

}  // namespace ks

#endif
