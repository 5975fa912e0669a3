#include "ks/collision.hpp"

#include <algorithm>
#include <cmath>

#include "ks/parallel.hpp"

namespace ks {
namespace {

void require_match(const SpectralConfig& a, const SpectralConfig& b, const char* what) {
  if (!(a == b)) throw ConfigMismatch(std::string(what) + ": config mismatch");
}

/// Pairwise (tree) reduction; bounds round-off growth to O(log n) for the
/// O(N^d) terms per output mode.
Complex pairwise_sum(Complex* buf, std::size_t n) {
  if (n == 0) return Complex{0.0, 0.0};
  while (n > 1) {
    const std::size_t half = n / 2;
    for (std::size_t i = 0; i < half; ++i) buf[i] = buf[2 * i] + buf[2 * i + 1];
    if (n % 2 == 1) buf[half] = buf[n - 1];
    n = half + n % 2;
  }
  return buf[0];
}

enum class Part { Combined, Gain, Loss };

/// sum_{l+m=k} W(l,m) f_l g_m for every k in `out_band`, where W is the
/// combined G = gain - loss (per term, so exact zeros survive) or one part.
SpectralField convolve(const SpectralField& g, const SpectralField& f,
                       const WeightTable& table, const SpectralConfig& out_band,
                       Part part) {
  const SpectralConfig& cfg = table.config();
  const int half = cfg.N / 2, n1 = cfg.N + 1;
  const int ohalf = out_band.N / 2, on1 = out_band.N + 1;
  const std::size_t nm = cfg.num_modes();
  const Complex* fl = f.coeffs().data();
  const Complex* gm = g.coeffs().data();
  const Complex* gain = table.gain().data();
  const Complex* loss = table.loss().data();

  SpectralField out(out_band);
  Complex* qk = out.coeffs().data();
  parallel_for(out.coeffs().size(), [&](std::size_t ki) {
    const int k1 = static_cast<int>(ki) / on1 - ohalf;
    const int k2 = static_cast<int>(ki) % on1 - ohalf;
    const int l1_lo = std::max(-half, k1 - half), l1_hi = std::min(half, k1 + half);
    const int l2_lo = std::max(-half, k2 - half), l2_hi = std::min(half, k2 + half);
    if (l1_lo > l1_hi || l2_lo > l2_hi) return;

    thread_local std::vector<Complex> terms;
    terms.clear();
    for (int l1 = l1_lo; l1 <= l1_hi; ++l1) {
      const int m1 = k1 - l1;
      const std::size_t lrow = static_cast<std::size_t>(l1 + half) * n1;
      const std::size_t mrow = static_cast<std::size_t>(m1 + half) * n1;
      for (int l2 = l2_lo; l2 <= l2_hi; ++l2) {
        const int m2 = k2 - l2;
        const std::size_t lo = lrow + (l2 + half), mo = mrow + (m2 + half);
        Complex w;
        switch (part) {
          case Part::Combined: w = gain[lo * nm + mo] - loss[mo]; break;
          case Part::Gain: w = gain[lo * nm + mo]; break;
          case Part::Loss: w = loss[mo]; break;
        }
        terms.push_back(w * fl[lo] * gm[mo]);
      }
    }
    qk[ki] = pairwise_sum(terms.data(), terms.size());
  });
  return out;
}

}  // namespace

CollisionOutput eval_collision_bilinear(const SpectralField& g, const SpectralField& f,
                                        const WeightTable& table, bool want_split) {
  require_match(f.config(), table.config(), "eval_collision");
  require_match(g.config(), table.config(), "eval_collision");
  CollisionOutput out;
  out.qhat = convolve(g, f, table, table.config(), Part::Combined);
  if (want_split) {
    out.gain_hat = convolve(g, f, table, table.config(), Part::Gain);
    out.loss_hat = convolve(g, f, table, table.config(), Part::Loss);
  }
  return out;
}

CollisionOutput eval_collision(const SpectralField& f, const WeightTable& table,
                               bool want_split) {
  return eval_collision_bilinear(f, f, table, want_split);
}

SpectralField eval_loss_convolution(const SpectralField& f, const WeightTable& table) {
  require_match(f.config(), table.config(), "eval_loss_convolution");
  return convolve(f, f, table, table.config(), Part::Loss);
}

SpectralField eval_collision_extended(const SpectralField& g, const SpectralField& f,
                                      const WeightTable& table) {
  require_match(f.config(), table.config(), "eval_collision_extended");
  require_match(g.config(), table.config(), "eval_collision_extended");
  return convolve(g, f, table, extended_config(table.config()), Part::Combined);
}

SpectralField eval_collision_extended(const SpectralField& f, const WeightTable& table) {
  return eval_collision_extended(f, f, table);
}

SpectralField eval_gain_extended(const SpectralField& g, const SpectralField& f,
                                 const WeightTable& table) {
  require_match(f.config(), table.config(), "eval_gain_extended");
  require_match(g.config(), table.config(), "eval_gain_extended");
  return convolve(g, f, table, extended_config(table.config()), Part::Gain);
}

SpectralField eval_loss_extended(const SpectralField& g, const SpectralField& f,
                                 const WeightTable& table) {
  require_match(f.config(), table.config(), "eval_loss_extended");
  require_match(g.config(), table.config(), "eval_loss_extended");
  return convolve(g, f, table, extended_config(table.config()), Part::Loss);
}

std::size_t& oracle_work_bound() {
  static std::size_t bound = 400'000'000;  // grid points x quadrature nodes
  return bound;
}

namespace {

/// Separable evaluation of the shifted series f(v - c) on the M^d grid,
/// given per-axis basis E[a][k] = e^{i pi k x_a / L}. Exact for band-limited
/// f (direct trigonometric summation, no interpolation).
void shifted_grid(const SpectralField& f, const double* shift, int M,
                  const std::vector<Complex>& basis, std::vector<Complex>& tmp,
                  std::vector<Complex>& out) {
  const SpectralConfig& cfg = f.config();
  const int half = cfg.N / 2, n1 = cfg.N + 1;
  const double c = M_PI / cfg.L;
  thread_local std::vector<Complex> p1, p2;
  p1.resize(n1);
  p2.resize(n1);
  for (int k = -half; k <= half; ++k) {
    p1[k + half] = std::polar(1.0, -c * k * shift[0]);
    p2[k + half] = std::polar(1.0, -c * k * shift[1]);
  }
  // tmp[k1][b] = sum_{k2} f_{k1,k2} p2[k2] E[b][k2]
  tmp.assign(static_cast<std::size_t>(n1) * M, Complex{0.0, 0.0});
  const Complex* fc = f.coeffs().data();
  for (int a1 = 0; a1 < n1; ++a1) {
    Complex* row = tmp.data() + static_cast<std::size_t>(a1) * M;
    for (int a2 = 0; a2 < n1; ++a2) {
      const Complex fv = fc[static_cast<std::size_t>(a1) * n1 + a2] * p2[a2];
      const Complex* eb = basis.data() + static_cast<std::size_t>(a2) * M;
      for (int b = 0; b < M; ++b) row[b] += fv * eb[b];
    }
  }
  // out[a][b] = sum_{k1} p1[k1] E[a][k1] tmp[k1][b]
  out.assign(static_cast<std::size_t>(M) * M, Complex{0.0, 0.0});
  for (int a1 = 0; a1 < n1; ++a1) {
    const Complex* row = tmp.data() + static_cast<std::size_t>(a1) * M;
    const Complex* ea = basis.data() + static_cast<std::size_t>(a1) * M;
    const Complex pk = p1[a1];
    for (int a = 0; a < M; ++a) {
      const Complex fv = pk * ea[a];
      Complex* orow = out.data() + static_cast<std::size_t>(a) * M;
      for (int b = 0; b < M; ++b) orow[b] += fv * row[b];
    }
  }
}

/// Projection of complex grid values onto a band: (1/M^d) sum_v G(v) e^{-i pi k v / L}.
SpectralField project_grid(const std::vector<Complex>& grid, int M,
                           const SpectralConfig& band, const std::vector<Complex>& basis,
                           int basis_n1) {
  const int half = band.N / 2, n1 = band.N + 1;
  SpectralField out(band);
  std::vector<Complex> tmp(static_cast<std::size_t>(n1) * M, Complex{0.0, 0.0});
  // tmp[k2][a] = sum_b grid[a][b] conj(E[b][k2])
  for (int a = 0; a < M; ++a) {
    const Complex* grow = grid.data() + static_cast<std::size_t>(a) * M;
    for (int k2 = 0; k2 < n1; ++k2) {
      const Complex* eb = basis.data() + static_cast<std::size_t>(k2) * M;
      Complex acc{0.0, 0.0};
      for (int b = 0; b < M; ++b) acc += grow[b] * std::conj(eb[b]);
      tmp[static_cast<std::size_t>(k2) * M + a] = acc;
    }
  }
  const double scale = 1.0 / (static_cast<double>(M) * M);
  for (int k1 = 0; k1 < n1; ++k1) {
    const Complex* ea = basis.data() + static_cast<std::size_t>(k1) * M;
    for (int k2 = 0; k2 < n1; ++k2) {
      const Complex* row = tmp.data() + static_cast<std::size_t>(k2) * M;
      Complex acc{0.0, 0.0};
      for (int a = 0; a < M; ++a) acc += row[a] * std::conj(ea[a]);
      out.coeffs()[static_cast<std::size_t>(k1) * n1 + k2] = scale * acc;
    }
  }
  (void)half;
  (void)basis_n1;
  return out;
}

}  // namespace

CollisionOutput quadrature_oracle(const SpectralField& g, const SpectralField& f,
                                  const KernelSpec& kernel, int resolution) {
  require_match(f.config(), g.config(), "quadrature_oracle");
  const SpectralConfig& cfg = f.config();
  if (cfg.d != 2) throw DomainError("quadrature_oracle: only d=2 is implemented");
  if (resolution < 1) throw DomainError("quadrature_oracle: resolution must be >= 1");

  const int N = cfg.N, half = N / 2, n1 = N + 1;
  const double L = cfg.L, R = kernel.R;
  const int M = 2 * N + 1;  // resolves the 2N-band-limited integrand exactly
  const int nr = 16 * resolution;
  const int nphi = 32 * resolution;
  const int npsi = 32 * resolution;

  const std::size_t work = static_cast<std::size_t>(M) * M * nr * nphi * npsi;
  if (work > oracle_work_bound())
    throw ResourceError("quadrature_oracle: requested resolution exceeds work bound");

  // Quadrature rules chosen to differ from the table build: two-panel GL in
  // the sigma angle, midpoint-offset uniform q angles.
  const GaussLegendre rad = gauss_legendre(nr, 0.0, R);
  const GaussLegendre psi_a = gauss_legendre(npsi / 2, 0.0, M_PI);
  const GaussLegendre psi_b = gauss_legendre(npsi - npsi / 2, M_PI, 2.0 * M_PI);
  std::vector<double> psi(npsi), wpsi(npsi);
  for (int t = 0; t < npsi / 2; ++t) {
    psi[t] = psi_a.nodes[t];
    wpsi[t] = psi_a.weights[t];
  }
  for (int t = npsi / 2; t < npsi; ++t) {
    psi[t] = psi_b.nodes[t - npsi / 2];
    wpsi[t] = psi_b.weights[t - npsi / 2];
  }
  const double wphi = 2.0 * M_PI / nphi;

  // Per-axis grid basis E[k+half][a] = e^{i pi k x_a / L}, x_a = -L + a 2L/M.
  std::vector<Complex> basis(static_cast<std::size_t>(n1) * M);
  for (int k = -half; k <= half; ++k)
    for (int a = 0; a < M; ++a)
      basis[static_cast<std::size_t>(k + half) * M + a] =
          std::polar(1.0, M_PI * k * (-L + a * 2.0 * L / M) / L);

  std::vector<Complex> tmp, fq, gq;
  std::vector<Complex> f0grid;
  {
    const double zero[2] = {0.0, 0.0};
    shifted_grid(f, zero, M, basis, tmp, f0grid);
  }

  const std::size_t gsz = static_cast<std::size_t>(M) * M;
  // Parallel over q angles; each task owns private accumulators.
  std::vector<std::vector<Complex>> gain_parts(nphi), loss_parts(nphi);
  parallel_for(static_cast<std::size_t>(nphi), [&](std::size_t j) {
    const double phi = 2.0 * M_PI * (static_cast<double>(j) + 0.5) / nphi;
    const double qhatx = std::cos(phi), qhaty = std::sin(phi);
    std::vector<Complex>& gacc = gain_parts[j];
    std::vector<Complex>& lacc = loss_parts[j];
    gacc.assign(gsz, Complex{0.0, 0.0});
    lacc.assign(gsz, Complex{0.0, 0.0});
    thread_local std::vector<Complex> ltmp, lfq, lgq;
    for (int i = 0; i < nr; ++i) {
      const double r = rad.nodes[i];
      const double wr = rad.weights[i] * r * kernel.phi(r) * wphi;
      const double qx = r * qhatx, qy = r * qhaty;
      // loss: f(v) g(v - q)
      {
        const double cq[2] = {qx, qy};
        shifted_grid(g, cq, M, basis, ltmp, lgq);
        const double wl = wr * kernel.b_l1;
        for (std::size_t u = 0; u < gsz; ++u) lacc[u] += wl * f0grid[u] * lgq[u];
      }
      for (int t = 0; t < npsi; ++t) {
        const double sx = std::cos(psi[t]), sy = std::sin(psi[t]);
        const double w = wr * wpsi[t] * kernel.b(sx * qhatx + sy * qhaty);
        // v' = v - (q - r sigma)/2, v*' = v - (q + r sigma)/2
        const double c1[2] = {0.5 * (qx - r * sx), 0.5 * (qy - r * sy)};
        const double c2[2] = {0.5 * (qx + r * sx), 0.5 * (qy + r * sy)};
        shifted_grid(f, c1, M, basis, ltmp, lfq);
        shifted_grid(g, c2, M, basis, ltmp, lgq);
        for (std::size_t u = 0; u < gsz; ++u) gacc[u] += w * lgq[u] * lfq[u];
      }
    }
  });

  std::vector<Complex> gain_grid(gsz, Complex{0.0, 0.0}), loss_grid(gsz);
  loss_grid.assign(gsz, Complex{0.0, 0.0});
  for (int j = 0; j < nphi; ++j)
    for (std::size_t u = 0; u < gsz; ++u) {
      gain_grid[u] += gain_parts[j][u];
      loss_grid[u] += loss_parts[j][u];
    }
  std::vector<Complex> q_grid(gsz);
  for (std::size_t u = 0; u < gsz; ++u) q_grid[u] = gain_grid[u] - loss_grid[u];

  CollisionOutput out;
  out.qhat = project_grid(q_grid, M, cfg, basis, n1);
  out.gain_hat = project_grid(gain_grid, M, cfg, basis, n1);
  out.loss_hat = project_grid(loss_grid, M, cfg, basis, n1);
  return out;
}

CollisionOutput quadrature_oracle(const SpectralField& f, const KernelSpec& kernel,
                                  int resolution) {
  return quadrature_oracle(f, f, kernel, resolution);
}

}  // namespace ks
