#ifndef KS_COLLISION_HPP
#define KS_COLLISION_HPP

#include <optional>

#include "ks/kernel.hpp"
#include "ks/spectral.hpp"

namespace ks {

struct CollisionOutput {
  SpectralField qhat;  // Q_k, k in the config band; mode 0 exactly zero for
                       // the table-based path
  std::optional<SpectralField> gain_hat;
  std::optional<SpectralField> loss_hat;
};

/// Q_k = sum_{l+m=k} G(l,m) f_l f_m by direct summation, O(N^{2d}).
/// Parallel over output modes; pairwise accumulation per mode. The combined
/// value is accumulated term-by-term as gain-loss, so mode 0 is exactly zero
/// (each G(l,-l) is an exact zero by the table's construction).
CollisionOutput eval_collision(const SpectralField& f, const WeightTable& table,
                               bool want_split = false);

/// Bilinear sum Q_k = sum_{l+m=k} G(l,m) f_l g_m (l pairs with f, the loss
/// weight depends on the g index m). Because the table's angular quadrature
/// is symmetrized over the half-arc, this is the *symmetrized* bilinear
/// extension: it agrees with the physical bilinear operator after adding the
/// swapped-argument evaluation, and agrees with it exactly on the diagonal
/// g = f (the solver's right-hand side).
CollisionOutput eval_collision_bilinear(const SpectralField& g, const SpectralField& f,
                                        const WeightTable& table,
                                        bool want_split = false);

/// Same formula as eval_collision.loss_hat (bitwise identical).
SpectralField eval_loss_convolution(const SpectralField& f, const WeightTable& table);

/// All output modes k with |k_j| <= N reachable from the band, on the doubled
/// config. The band part equals eval_collision; the tail is what the Galerkin
/// projection discards.
SpectralField eval_collision_extended(const SpectralField& f, const WeightTable& table);
SpectralField eval_collision_extended(const SpectralField& g, const SpectralField& f,
                                      const WeightTable& table);
/// Gain-only / loss-only sums on the doubled band (same split as
/// eval_collision's optional outputs).
SpectralField eval_gain_extended(const SpectralField& g, const SpectralField& f,
                                 const WeightTable& table);
SpectralField eval_loss_extended(const SpectralField& g, const SpectralField& f,
                                 const WeightTable& table);

/// Ground-truth evaluation of Q^R(g,f) from the integral definition on a
/// physical grid, projected back onto the band. Deliberately independent of
/// the weight table: unsymmetrized angular kernel over the full circle,
/// midpoint-offset q angles, two-panel Gauss-Legendre sigma angles. The
/// (2N+1)^d grid resolves the 2N-band-limited integrand exactly, so the only
/// error is the q/sigma quadrature.
///
/// resolution scales all three quadrature counts; throws ResourceError when
/// the total work exceeds oracle_work_bound().
CollisionOutput quadrature_oracle(const SpectralField& g, const SpectralField& f,
                                  const KernelSpec& kernel, int resolution = 1);
CollisionOutput quadrature_oracle(const SpectralField& f, const KernelSpec& kernel,
                                  int resolution = 1);

/// Work cap for the oracle (grid points x quadrature nodes); mutable for
/// callers that really want a huge reference run.
std::size_t& oracle_work_bound();

}  // namespace ks

#endif
