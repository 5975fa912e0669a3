#ifndef KS_SPECTRAL_HPP
#define KS_SPECTRAL_HPP

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "ks/errors.hpp"

namespace ks {

using Complex = std::complex<double>;

/// Discretization contract shared by every module: dimension d, an even mode
/// count N (modes -N/2..N/2 per axis, N+1 values), torus half-width L so the
/// velocity domain is [-L,L]^d, and collision truncation radius R <= L.
///
/// Normalization convention used throughout: the inner product carries a
/// (2L)^-d factor, so ||f||_L2^2 = (2L)^d * sum |f_k|^2 (Parseval).
struct SpectralConfig {
  int d = 2;
  int N = 0;
  double L = 0.0;
  double R = 0.0;

  int modes_per_axis() const { return N + 1; }
  std::size_t num_modes() const {
    std::size_t n = 1;
    for (int a = 0; a < d; ++a) n *= static_cast<std::size_t>(N + 1);
    return n;
  }
  bool operator==(const SpectralConfig&) const = default;
};

/// Validates and constructs a config. Requires d >= 2, N even and >= 2,
/// and L >= R > 0.
SpectralConfig make_config(int d, int N, double L, double R);

/// Anti-aliasing parameter choice for initial data supported in a ball of
/// radius S: R = 2S, L = (3+sqrt(2))/2 * S (the minimal admissible L).
std::pair<double, double> truncation_from_support(double S);

/// Fourier coefficients f_k, k in {-N/2..N/2}^d, stored row-major with axis 0
/// slowest. Index along each axis is k_j + N/2.
class SpectralField {
 public:
  SpectralField() = default;
  explicit SpectralField(const SpectralConfig& cfg)
      : config_(cfg), coeffs_(cfg.num_modes(), Complex{0.0, 0.0}) {}

  const SpectralConfig& config() const { return config_; }
  const std::vector<Complex>& coeffs() const { return coeffs_; }
  std::vector<Complex>& coeffs() { return coeffs_; }

  /// Flat offset of multi-index k (components in [-N/2, N/2]).
  std::size_t offset(const std::vector<int>& k) const;

  Complex at(const std::vector<int>& k) const { return coeffs_[offset(k)]; }
  Complex& at(const std::vector<int>& k) { return coeffs_[offset(k)]; }

  /// Zero mode f_0; mass is (2L)^d times this.
  Complex mode0() const;

  /// max over k of |f(-k) - conj(f(k))|.
  double hermitian_residual() const;

  double max_abs() const;

 private:
  SpectralConfig config_;
  std::vector<Complex> coeffs_;
};

/// Real point values on the uniform periodic grid of (oversample*(N+1))^d
/// points over [-L,L)^d; grid spacing 2L / (oversample*(N+1)) per axis.
class PhysicalField {
 public:
  PhysicalField() = default;
  PhysicalField(const SpectralConfig& cfg, int oversample);

  const SpectralConfig& config() const { return config_; }
  int oversample() const { return oversample_; }
  int grid_per_axis() const { return grid_; }
  double spacing() const { return 2.0 * config_.L / grid_; }
  std::size_t size() const { return values_.size(); }

  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  /// Coordinate of grid index j along one axis: -L + j*h.
  double coord(int j) const { return -config_.L + j * spacing(); }

  /// Fills values by sampling fn at grid points (d=2 fast path, generic d).
  template <typename Fn>
  void sample(Fn&& fn);

 private:
  SpectralConfig config_;
  int oversample_ = 1;
  int grid_ = 0;
  std::vector<double> values_;
};

/// Trapezoid-rule projection of grid values onto the config's mode set.
/// Exact to round-off for fields band-limited to the mode set.
SpectralField forward_transform(const PhysicalField& p);

/// Projects the grid values of p onto the mode set of `band` (same L
/// required). Used to extract extended-band coefficients, e.g. the 2N-band
/// output of a bilinear product. Requires p's grid to resolve the band.
SpectralField forward_transform(const PhysicalField& p, const SpectralConfig& band);

/// Pointwise evaluation of the truncated series on the oversampled grid.
/// Throws SymmetryError if the imaginary residue exceeds 1e-10 * max|f|.
PhysicalField inverse_transform(const SpectralField& f, int oversample);

/// (integral |f|^p)^(1/p) by the trapezoid rule; p = infinity gives grid max.
double lp_norm(const PhysicalField& p, double p_exp);

/// Sobolev norm via Parseval:
/// ||f||_Hk^2 = (2L)^d sum_k [ sum_{|nu|<=k} prod_j (pi k_j / L)^(2 nu_j) ] |f_k|^2.
double hk_norm(const SpectralField& f, int k);

/// Pointwise positive/negative parts max(f,0), max(-f,0) on the oversampled
/// grid (default callers use oversample 4; f^- is not band-limited).
std::pair<PhysicalField, PhysicalField> split_parts(const SpectralField& f,
                                                    int oversample);

/// Evaluates the truncated series at an arbitrary point (d=2 only).
Complex eval_at_point(const SpectralField& f, double x, double y);

/// Config with doubled mode count (band for bilinear outputs).
inline SpectralConfig extended_config(const SpectralConfig& c) {
  SpectralConfig e = c;
  e.N = 2 * c.N;
  return e;
}

template <typename Fn>
void PhysicalField::sample(Fn&& fn) {
  if (config_.d == 2) {
    std::size_t idx = 0;
    for (int j0 = 0; j0 < grid_; ++j0) {
      double x = coord(j0);
      for (int j1 = 0; j1 < grid_; ++j1) values_[idx++] = fn(x, coord(j1));
    }
  } else {
    throw DomainError("PhysicalField::sample: only d=2 sampling implemented");
  }
}

}  // namespace ks

#endif
