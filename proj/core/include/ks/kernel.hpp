#ifndef KS_KERNEL_HPP
#define KS_KERNEL_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ks/spectral.hpp"

namespace ks {

/// Gauss-Legendre nodes and weights on [a, b].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussLegendre gauss_legendre(int n, double a, double b);

/// Collision kernel B = Phi(|v-v*|) * b(cos theta).
///
/// Weight integrals use the symmetrized angular kernel
///   b_sym(theta) = [b(cos theta) + b(cos(pi - theta))] on 0 <= theta <= pi/2,
/// which preserves the total sphere integral b_l1. The raw b is kept so the
/// symmetrization itself is observable.
struct KernelSpec {
  enum class Kind : std::uint32_t { HardPowerLaw = 0, ModifiedSoft = 1, Custom = 2 };
  enum class AngularKind : std::uint32_t { Constant = 0, Custom = 1 };

  Kind kind = Kind::HardPowerLaw;
  double gamma = 0.0;
  std::function<double(double)> phi;  // kinetic part, argument |v|
  AngularKind angular_kind = AngularKind::Constant;
  double b_const = 0.0;                // value when angular_kind == Constant
  std::function<double(double)> b;     // angular part, argument cos theta
  double b_l1 = 0.0;                   // integral of b over S^{d-1} (cached)
  double R = 0.0;

  /// b_sym evaluated at theta in [-pi/2, pi/2] (2-D parametrization of the
  /// half sphere; even in theta).
  double b_sym(double theta) const {
    return b(std::cos(theta)) + b(std::cos(M_PI - theta));
  }

  /// Phi == 1, b == 1/(2 pi): the standard 2-D Maxwell-molecule test kernel
  /// (b_l1 = 1).
  static KernelSpec maxwell(double R);
  /// Phi(|v|) = |v|^gamma, gamma in [0,1], constant b.
  static KernelSpec hard_power_law(double gamma, double b_const, double R);
  /// Phi(|v|) = (1+|v|)^gamma, gamma in (-d, 0), constant b.
  static KernelSpec modified_soft(double gamma, double b_const, double R, int d = 2);
  /// Arbitrary Phi/b callables; b_l1 computed by quadrature.
  static KernelSpec custom(std::function<double(double)> phi,
                           std::function<double(double)> b, double R);

  /// FNV-1a over the serializable kernel parameters (Custom kernels hash the
  /// kind tag only; they are not round-trippable through files).
  std::uint64_t fingerprint() const;
};

/// Symmetrized angular function theta -> [b(cos th)+b(cos(pi-th))]*1_{0<=th<=pi/2}.
std::function<double(double)> symmetrize_angular(std::function<double(double)> b);

/// Quadrature resolution for the weight integrals (d=2): Gauss-Legendre on
/// the radius, uniform points on the q-angle, Gauss-Legendre on the sigma
/// half-arc. n_angular is used for both angles.
struct QuadratureSpec {
  int n_radial = 32;
  int n_angular = 64;

  static QuadratureSpec default_for(const SpectralConfig& cfg) {
    return {std::max(32, 2 * cfg.N), std::max(64, 4 * cfg.N)};
  }
  void validate() const;
  bool operator==(const QuadratureSpec&) const = default;
};

/// Precomputed collision weights. G(l,m) = gain(l,m) - loss(m); mode-0
/// conservation is enforced exactly: gain(l,-l) is overwritten with loss(-l).
///
/// Index convention (matches the Galerkin sum Q_k = sum_{l+m=k} G(l,m) f_l g_m
/// of the bilinear operator Q(g,f)): l is the f index, m is the g index.
class WeightTable {
 public:
  WeightTable() = default;
  WeightTable(const SpectralConfig& cfg, const KernelSpec& kernel,
              const QuadratureSpec& quad);

  const SpectralConfig& config() const { return config_; }
  const KernelSpec& kernel() const { return kernel_; }
  const QuadratureSpec& quad() const { return quad_; }

  std::size_t num_loss() const { return loss_.size(); }
  std::size_t num_gain() const { return gain_.size(); }

  const std::vector<Complex>& gain() const { return gain_; }
  const std::vector<Complex>& loss() const { return loss_; }
  std::vector<Complex>& gain() { return gain_; }
  std::vector<Complex>& loss() { return loss_; }

  /// Flat offset of a multi-index with components in [-N/2, N/2].
  std::size_t mode_offset(const std::vector<int>& k) const;

  Complex gain_at(const std::vector<int>& l, const std::vector<int>& m) const {
    return gain_[mode_offset(l) * loss_.size() + mode_offset(m)];
  }
  Complex loss_at(const std::vector<int>& m) const { return loss_[mode_offset(m)]; }
  Complex G(const std::vector<int>& l, const std::vector<int>& m) const {
    return gain_at(l, m) - loss_at(m);
  }

  std::uint64_t build_hash() const { return build_hash_; }
  void set_build_hash(std::uint64_t h) { build_hash_ = h; }

  /// max over (l,m) of |conj(G(l,m)) - G(-l,-m)| / max|G|.
  double conjugation_residual() const;

 private:
  SpectralConfig config_;
  KernelSpec kernel_;
  QuadratureSpec quad_;
  std::vector<Complex> loss_;  // (N+1)^d, indexed by m
  std::vector<Complex> gain_;  // (N+1)^{2d}, row-major l-major m-minor
  std::uint64_t build_hash_ = 0;
};

/// Single weight G(l,m) by direct quadrature (reference path; the table build
/// uses a factored evaluation over the same nodes). d=2 only.
Complex compute_weight(const std::vector<int>& l, const std::vector<int>& m,
                       const KernelSpec& spec, const QuadratureSpec& quad,
                       const SpectralConfig& config);

/// Loss weight b_l1 * integral_{B_R} Phi(|q|) e^{-i pi m q / L} dq. Real for
/// radially symmetric Phi; |imag| is asserted <= 1e-12 relative.
Complex loss_weight(const std::vector<int>& m, const KernelSpec& spec,
                    const QuadratureSpec& quad, const SpectralConfig& config);

/// Builds the full table. Parallel over output blocks with deterministic
/// entry values (independent of scheduling). d=2 only.
WeightTable build_weight_table(const SpectralConfig& config, const KernelSpec& spec,
                               const QuadratureSpec& quad);

/// Richardson self-check: recomputes a deterministic subset of entries
/// (corners plus `samples` random (l,m) pairs) at doubled resolution and
/// returns the max |delta| normalized by max|G| over the subset.
double richardson_residual(const WeightTable& table, int samples = 256,
                           std::uint64_t seed = 12345);

/// Sub-table for a smaller even N' <= N over the same kernel and quadrature;
/// entries are copied bit-for-bit (used by convergence studies so that
/// weights agree exactly across resolutions).
WeightTable slice_table(const WeightTable& table, int N_sub);

/// Binary little-endian "KSWT" file; bit-exact round trip. Load verifies
/// magic, version, and the payload hash; throws FormatError otherwise.
void save_table(const WeightTable& t, const std::string& path);
WeightTable load_table(const std::string& path);

}  // namespace ks

#endif
