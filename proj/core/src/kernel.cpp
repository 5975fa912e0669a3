#include "ks/kernel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include <Eigen/Dense>

#include "ks/parallel.hpp"
#include "ks/rng.hpp"

namespace ks {
namespace {

constexpr std::uint32_t kTableMagic = 0x5457534B;  // "KSWT" little-endian
constexpr std::uint32_t kTableVersion = 1;

std::uint64_t fnv1a(const void* data, std::size_t n, std::uint64_t h = 0xcbf29ce484222325ull) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

template <typename T>
std::uint64_t fnv1a_value(const T& v, std::uint64_t h) {
  return fnv1a(&v, sizeof(T), h);
}

void check_phi_bounded(const std::function<double(double)>& phi, double R) {
  const int n = 10001;
  for (int i = 0; i < n; ++i) {
    const double r = R * i / (n - 1);
    if (!std::isfinite(phi(r)))
      throw DomainError("KernelSpec: Phi is not bounded on [0, R]");
  }
}

}  // namespace

GaussLegendre gauss_legendre(int n, double a, double b) {
  if (n < 1) throw DomainError("gauss_legendre: n must be >= 1");
  GaussLegendre out;
  out.nodes.resize(n);
  out.weights.resize(n);
  const double mid = 0.5 * (a + b), halfw = 0.5 * (b - a);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Newton iteration on P_n from the Chebyshev-like initial guess.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    out.nodes[i] = mid - halfw * x;
    out.nodes[n - 1 - i] = mid + halfw * x;
    out.weights[i] = out.weights[n - 1 - i] = halfw * w;
  }
  return out;
}

std::function<double(double)> symmetrize_angular(std::function<double(double)> b) {
  return [b = std::move(b)](double theta) -> double {
    if (theta < 0.0 || theta > 0.5 * M_PI) return 0.0;
    return b(std::cos(theta)) + b(std::cos(M_PI - theta));
  };
}

KernelSpec KernelSpec::maxwell(double R) { return hard_power_law(0.0, 1.0 / (2.0 * M_PI), R); }

KernelSpec KernelSpec::hard_power_law(double gamma, double b_const, double R) {
  if (gamma < 0.0 || gamma > 1.0)
    throw DomainError("hard_power_law: gamma must be in [0, 1]");
  if (!(R > 0.0)) throw DomainError("KernelSpec: R must be positive");
  KernelSpec s;
  s.kind = Kind::HardPowerLaw;
  s.gamma = gamma;
  s.phi = [gamma](double r) { return gamma == 0.0 ? 1.0 : std::pow(r, gamma); };
  s.angular_kind = AngularKind::Constant;
  s.b_const = b_const;
  s.b = [b_const](double) { return b_const; };
  s.b_l1 = 2.0 * M_PI * b_const;
  s.R = R;
  return s;
}

KernelSpec KernelSpec::modified_soft(double gamma, double b_const, double R, int d) {
  if (!(gamma > -d && gamma < 0.0))
    throw DomainError("modified_soft: gamma must be in (-d, 0)");
  if (!(R > 0.0)) throw DomainError("KernelSpec: R must be positive");
  KernelSpec s;
  s.kind = Kind::ModifiedSoft;
  s.gamma = gamma;
  s.phi = [gamma](double r) { return std::pow(1.0 + r, gamma); };
  s.angular_kind = AngularKind::Constant;
  s.b_const = b_const;
  s.b = [b_const](double) { return b_const; };
  s.b_l1 = 2.0 * M_PI * b_const;
  s.R = R;
  return s;
}

KernelSpec KernelSpec::custom(std::function<double(double)> phi,
                              std::function<double(double)> b, double R) {
  if (!(R > 0.0)) throw DomainError("KernelSpec: R must be positive");
  KernelSpec s;
  s.kind = Kind::Custom;
  s.phi = std::move(phi);
  s.angular_kind = AngularKind::Custom;
  s.b = std::move(b);
  check_phi_bounded(s.phi, R);
  // b_l1 = int_{S^1} b(cos theta) dtheta = 2 int_0^pi b(cos theta) dtheta.
  auto gl = gauss_legendre(256, 0.0, M_PI);
  double acc = 0.0;
  for (int i = 0; i < 256; ++i) acc += gl.weights[i] * s.b(std::cos(gl.nodes[i]));
  s.b_l1 = 2.0 * acc;
  if (!std::isfinite(s.b_l1)) throw DomainError("KernelSpec: b is not integrable");
  s.R = R;
  return s;
}

std::uint64_t KernelSpec::fingerprint() const {
  std::uint64_t h = 0xcbf29ce484222325ull;
  h = fnv1a_value(static_cast<std::uint32_t>(kind), h);
  h = fnv1a_value(gamma, h);
  h = fnv1a_value(static_cast<std::uint32_t>(angular_kind), h);
  h = fnv1a_value(b_const, h);
  h = fnv1a_value(b_l1, h);
  h = fnv1a_value(R, h);
  return h;
}

void QuadratureSpec::validate() const {
  if (n_radial < 2) throw DomainError("QuadratureSpec: n_radial must be >= 2");
  if (n_angular < 4 || n_angular % 2 != 0)
    throw DomainError("QuadratureSpec: n_angular must be even and >= 4");
}

WeightTable::WeightTable(const SpectralConfig& cfg, const KernelSpec& kernel,
                         const QuadratureSpec& quad)
    : config_(cfg), kernel_(kernel), quad_(quad) {
  const std::size_t nm = cfg.num_modes();
  loss_.assign(nm, Complex{0.0, 0.0});
  gain_.assign(nm * nm, Complex{0.0, 0.0});
}

std::size_t WeightTable::mode_offset(const std::vector<int>& k) const {
  std::size_t off = 0;
  const int half = config_.N / 2;
  for (int a = 0; a < config_.d; ++a) {
    if (k[a] < -half || k[a] > half)
      throw DomainError("WeightTable: mode index out of range");
    off = off * (config_.N + 1) + static_cast<std::size_t>(k[a] + half);
  }
  return off;
}

double WeightTable::conjugation_residual() const {
  const std::size_t nm = loss_.size();
  double max_g = 0.0, res = 0.0;
  for (std::size_t li = 0; li < nm; ++li) {
    for (std::size_t mi = 0; mi < nm; ++mi) {
      const Complex g = gain_[li * nm + mi] - loss_[mi];
      max_g = std::max(max_g, std::abs(g));
      // mirror of flat offset i is nm-1-i
      const Complex gm = gain_[(nm - 1 - li) * nm + (nm - 1 - mi)] - loss_[nm - 1 - mi];
      res = std::max(res, std::abs(std::conj(g) - gm));
    }
  }
  return max_g > 0.0 ? res / max_g : 0.0;
}

namespace {

struct QuadNodes {
  GaussLegendre radial;             // on [0, R]
  std::vector<double> phi_nodes;    // uniform on [0, 2pi)
  double phi_weight;
  GaussLegendre theta;              // on [-pi/2, pi/2], weights premultiplied by b_sym
  std::vector<double> b_weights;
};

QuadNodes make_nodes(const KernelSpec& spec, const QuadratureSpec& quad) {
  quad.validate();
  QuadNodes q;
  q.radial = gauss_legendre(quad.n_radial, 0.0, spec.R);
  q.phi_nodes.resize(quad.n_angular);
  for (int j = 0; j < quad.n_angular; ++j)
    q.phi_nodes[j] = 2.0 * M_PI * j / quad.n_angular;
  q.phi_weight = 2.0 * M_PI / quad.n_angular;
  q.theta = gauss_legendre(quad.n_angular, -0.5 * M_PI, 0.5 * M_PI);
  q.b_weights.resize(quad.n_angular);
  for (int k = 0; k < quad.n_angular; ++k)
    q.b_weights[k] = q.theta.weights[k] * spec.b_sym(std::abs(q.theta.nodes[k]));
  return q;
}

void require_2d(const SpectralConfig& config) {
  if (config.d != 2)
    throw DomainError("weight quadrature: only d=2 is implemented");
}

}  // namespace

Complex compute_weight(const std::vector<int>& l, const std::vector<int>& m,
                       const KernelSpec& spec, const QuadratureSpec& quad,
                       const SpectralConfig& config) {
  require_2d(config);
  const int s1 = l[0] + m[0], s2 = l[1] + m[1];
  if (s1 == 0 && s2 == 0) return Complex{0.0, 0.0};  // bracket vanishes identically

  const QuadNodes q = make_nodes(spec, quad);
  const double L = config.L;
  const double c1 = 0.5 * M_PI * (l[0] - m[0]) / L;  // q-phase: e^{i pi (l-m) q / (2L)}
  const double c2 = 0.5 * M_PI * (l[1] - m[1]) / L;
  const double d1 = 0.5 * M_PI * s1 / L;  // sigma-phase: e^{-i pi r s sigma / (2L)}
  const double d2 = 0.5 * M_PI * s2 / L;
  const double loss_c1 = -M_PI * m[0] / L, loss_c2 = -M_PI * m[1] / L;

  Complex gain{0.0, 0.0}, loss{0.0, 0.0};
  for (int i = 0; i < quad.n_radial; ++i) {
    const double r = q.radial.nodes[i];
    const double wr = q.radial.weights[i] * r * spec.phi(r) * q.phi_weight;
    Complex gain_i{0.0, 0.0}, loss_i{0.0, 0.0};
    for (int j = 0; j < quad.n_angular; ++j) {
      const double phi = q.phi_nodes[j];
      const double qx = r * std::cos(phi), qy = r * std::sin(phi);
      Complex sig{0.0, 0.0};
      for (int k = 0; k < quad.n_angular; ++k) {
        const double psi = phi + q.theta.nodes[k];
        const double arg = -r * (d1 * std::cos(psi) + d2 * std::sin(psi));
        sig += q.b_weights[k] * Complex{std::cos(arg), std::sin(arg)};
      }
      gain_i += std::polar(1.0, c1 * qx + c2 * qy) * sig;
      loss_i += std::polar(spec.b_l1, loss_c1 * qx + loss_c2 * qy);
    }
    gain += wr * gain_i;
    loss += wr * loss_i;
  }
  return gain - loss;
}

Complex loss_weight(const std::vector<int>& m, const KernelSpec& spec,
                    const QuadratureSpec& quad, const SpectralConfig& config) {
  require_2d(config);
  const QuadNodes q = make_nodes(spec, quad);
  const double cx = -M_PI * m[0] / config.L, cy = -M_PI * m[1] / config.L;
  Complex acc{0.0, 0.0};
  for (int i = 0; i < quad.n_radial; ++i) {
    const double r = q.radial.nodes[i];
    const double wr = q.radial.weights[i] * r * spec.phi(r) * q.phi_weight;
    Complex row{0.0, 0.0};
    for (int j = 0; j < quad.n_angular; ++j) {
      const double phi = q.phi_nodes[j];
      row += std::polar(1.0, r * (cx * std::cos(phi) + cy * std::sin(phi)));
    }
    acc += wr * row;
  }
  acc *= spec.b_l1;
  if (std::abs(acc.imag()) > 1e-12 * std::max(1.0, std::abs(acc.real())))
    throw QuadratureError("loss_weight: non-real value for radially symmetric Phi");
  return acc;
}

WeightTable build_weight_table(const SpectralConfig& config, const KernelSpec& spec,
                               const QuadratureSpec& quad) {
  require_2d(config);
  if (spec.R != config.R)
    throw ConfigMismatch("build_weight_table: kernel R differs from config R");
  WeightTable table(config, spec, quad);
  const QuadNodes q = make_nodes(spec, quad);

  const int N = config.N, half = N / 2, n1 = N + 1;
  const int nr = quad.n_radial, nphi = quad.n_angular, nth = quad.n_angular;
  const std::size_t nm = static_cast<std::size_t>(n1) * n1;
  const double L = config.L;

  // Per-node constants.
  std::vector<double> wr(nr), xfac(nr);  // xfac_i = pi r_i / (2L)
  for (int i = 0; i < nr; ++i) {
    const double r = q.radial.nodes[i];
    wr[i] = q.radial.weights[i] * r * spec.phi(r) * q.phi_weight;
    xfac[i] = 0.5 * M_PI * r / L;
  }
  std::vector<double> cphi(nphi), sphi(nphi);
  for (int j = 0; j < nphi; ++j) {
    cphi[j] = std::cos(q.phi_nodes[j]);
    sphi[j] = std::sin(q.phi_nodes[j]);
  }

  // Per-axis mode phase tables X[i][j][a] = e^{-i pi a q_x / L} (a = mode index,
  // offset by half), Y likewise with q_y.
  const std::size_t node_count = static_cast<std::size_t>(nr) * nphi;
  std::vector<Complex> X(node_count * n1), Y(node_count * n1);
  for (int i = 0; i < nr; ++i) {
    const double r = q.radial.nodes[i];
    for (int j = 0; j < nphi; ++j) {
      const std::size_t base = (static_cast<std::size_t>(i) * nphi + j) * n1;
      const double qx = r * cphi[j], qy = r * sphi[j];
      for (int a = -half; a <= half; ++a) {
        X[base + (a + half)] = std::polar(1.0, -M_PI * a * qx / L);
        Y[base + (a + half)] = std::polar(1.0, -M_PI * a * qy / L);
      }
    }
  }

  // Loss part: loss(m) = b_l1 * sum_ij wr_i e^{-i pi m q / L}.
  parallel_for(nm, [&](std::size_t mi) {
    const int m1 = static_cast<int>(mi) / n1 - half;
    const int m2 = static_cast<int>(mi) % n1 - half;
    Complex acc{0.0, 0.0};
    for (int i = 0; i < nr; ++i) {
      Complex row{0.0, 0.0};
      const std::size_t ibase = static_cast<std::size_t>(i) * nphi;
      for (int j = 0; j < nphi; ++j) {
        const std::size_t base = (ibase + j) * n1;
        row += X[base + (m1 + half)] * Y[base + (m2 + half)];
      }
      acc += wr[i] * row;
    }
    table.loss()[mi] = spec.b_l1 * acc;
  });

  // Gain part, blocked by s = l + m: gain(s-m, m) = sum_t W_t(s) X_t[m1] Y_t[m2]
  // with W_t(s) = wr_t e^{+i x_t s.uhat_t} sum_k bw_k e^{-i x_t s.sigma_tk}.
  // Conjugation symmetry gain(-l,-m) = conj(gain(l,m)) halves the work. Each
  // task owns one full s1 row (all s2) plus its mirror, so entry values do not
  // depend on scheduling. Within a row the sigma factors advance by a running
  // complex product in s2 (the drift over 2N steps is ~1e-14 and buried in the
  // quadrature error), and the m-block reduction is a small GEMM.
  std::vector<double> a1(node_count * nth), a2(node_count * nth);  // sigma phases
  std::vector<double> o1(node_count), o2(node_count);              // outer phases
  std::vector<double> wr_node(node_count);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nphi; ++j) {
      const std::size_t t = static_cast<std::size_t>(i) * nphi + j;
      o1[t] = xfac[i] * cphi[j];
      o2[t] = xfac[i] * sphi[j];
      wr_node[t] = wr[i];
      for (int k = 0; k < nth; ++k) {
        const double psi = q.phi_nodes[j] + q.theta.nodes[k];
        a1[t * nth + k] = -xfac[i] * std::cos(psi);
        a2[t * nth + k] = -xfac[i] * std::sin(psi);
      }
    }

  using RowMat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const int n_s2 = 2 * N + 1;
  auto gain_data = table.gain().data();

  parallel_for(static_cast<std::size_t>(N) + 1, [&](std::size_t row) {
    const int s1 = static_cast<int>(row);

    // Sigma integrals A[s2][t] for the whole row, tiled so the running
    // products stay cache-resident.
    thread_local std::vector<Complex> A_all, Pc, Vc;
    A_all.resize(static_cast<std::size_t>(n_s2) * node_count);
    constexpr std::size_t tile = 128;
    for (std::size_t t0 = 0; t0 < node_count; t0 += tile) {
      const std::size_t tc = std::min(tile, node_count - t0);
      Pc.resize(tc * nth);
      Vc.resize(tc * nth);
      for (std::size_t u = 0; u < tc; ++u)
        for (int k = 0; k < nth; ++k) {
          const std::size_t g = (t0 + u) * nth + k;
          Pc[u * nth + k] = std::polar(1.0, s1 * a1[g] - N * a2[g]);
          Vc[u * nth + k] = std::polar(1.0, a2[g]);
        }
      for (int s2i = 0; s2i < n_s2; ++s2i) {
        Complex* Arow = A_all.data() + static_cast<std::size_t>(s2i) * node_count + t0;
        for (std::size_t u = 0; u < tc; ++u) {
          const Complex* p = Pc.data() + u * nth;
          double re = 0.0, im = 0.0;
          for (int k = 0; k < nth; ++k) {
            re += q.b_weights[k] * p[k].real();
            im += q.b_weights[k] * p[k].imag();
          }
          Arow[u] = Complex{re, im};
        }
        if (s2i + 1 < n_s2) {
          Complex* p = Pc.data();
          const Complex* v = Vc.data();
          for (std::size_t u = 0; u < tc * static_cast<std::size_t>(nth); ++u)
            p[u] *= v[u];
        }
      }
    }

    thread_local std::vector<Complex> W;
    W.resize(node_count);
    thread_local RowMat Xb, acc;
    for (int s2 = (s1 == 0 ? 0 : -N); s2 <= N; ++s2) {
      // m-box for which both m and l = s - m lie in range.
      const int m1_lo = std::max(-half, s1 - half), m1_hi = std::min(half, s1 + half);
      const int m2_lo = std::max(-half, s2 - half), m2_hi = std::min(half, s2 + half);
      const int b1 = m1_hi - m1_lo + 1, b2 = m2_hi - m2_lo + 1;

      if (s1 == 0 && s2 == 0) {
        // Bracket vanishes identically; gain(l,-l) equals loss(-l) analytically.
        for (int m1 = m1_lo; m1 <= m1_hi; ++m1)
          for (int m2 = m2_lo; m2 <= m2_hi; ++m2) {
            const std::size_t moff = static_cast<std::size_t>(m1 + half) * n1 + (m2 + half);
            const std::size_t loff = static_cast<std::size_t>(-m1 + half) * n1 + (-m2 + half);
            gain_data[loff * nm + moff] = table.loss()[moff];
          }
        continue;
      }

      const Complex* Arow = A_all.data() + static_cast<std::size_t>(s2 + N) * node_count;
      for (std::size_t t = 0; t < node_count; ++t)
        W[t] = std::polar(wr_node[t], s1 * o1[t] + s2 * o2[t]) * Arow[t];

      Xb.resize(static_cast<Eigen::Index>(node_count), b1);
      for (std::size_t t = 0; t < node_count; ++t) {
        const Complex* Xt = X.data() + t * n1 + (m1_lo + half);
        for (int a = 0; a < b1; ++a) Xb(static_cast<Eigen::Index>(t), a) = W[t] * Xt[a];
      }
      Eigen::Map<const RowMat, 0, Eigen::OuterStride<>> Yb(
          Y.data() + (m2_lo + half), static_cast<Eigen::Index>(node_count), b2,
          Eigen::OuterStride<>(n1));
      acc.resize(b1, b2);
      acc.noalias() = Xb.transpose() * Yb;

      for (int a = 0; a < b1; ++a) {
        const int m1 = m1_lo + a, l1 = s1 - m1;
        for (int b = 0; b < b2; ++b) {
          const int m2 = m2_lo + b, l2 = s2 - m2;
          const Complex g = acc(a, b);
          const std::size_t loff = static_cast<std::size_t>(l1 + half) * n1 + (l2 + half);
          const std::size_t moff = static_cast<std::size_t>(m1 + half) * n1 + (m2 + half);
          gain_data[loff * nm + moff] = g;
          // mirror block s -> -s
          const std::size_t lmoff = static_cast<std::size_t>(-l1 + half) * n1 + (-l2 + half);
          const std::size_t mmoff = static_cast<std::size_t>(-m1 + half) * n1 + (-m2 + half);
          gain_data[lmoff * nm + mmoff] = std::conj(g);
        }
      }
    }
  });

  // Hash over the payload for file integrity and rebuild comparison.
  std::uint64_t h = 0xcbf29ce484222325ull;
  h = fnv1a(table.loss().data(), table.loss().size() * sizeof(Complex), h);
  h = fnv1a(table.gain().data(), table.gain().size() * sizeof(Complex), h);
  table.set_build_hash(h);
  return table;
}

double richardson_residual(const WeightTable& table, int samples, std::uint64_t seed) {
  const SpectralConfig& cfg = table.config();
  const int half = cfg.N / 2;
  QuadratureSpec fine = table.quad();
  fine.n_radial *= 2;
  fine.n_angular *= 2;

  std::vector<std::array<int, 4>> pairs;
  // Corner entries carry the fastest integrand oscillation.
  for (int a : {-half, half})
    for (int b : {-half, half})
      for (int c : {-half, half})
        for (int e : {-half, half}) pairs.push_back({a, b, c, e});
  Rng rng(seed);
  for (int i = 0; i < samples; ++i) {
    auto draw = [&] { return static_cast<int>(rng.uniform(0.0, cfg.N + 1.0)) - half; };
    pairs.push_back({draw(), draw(), draw(), draw()});
  }

  double max_g = 0.0;
  for (const auto& c : table.gain()) max_g = std::max(max_g, std::abs(c));
  for (const auto& c : table.loss()) max_g = std::max(max_g, std::abs(c));
  if (max_g == 0.0) return 0.0;

  std::vector<double> deltas(pairs.size(), 0.0);
  parallel_for(pairs.size(), [&](std::size_t i) {
    const std::vector<int> l{pairs[i][0], pairs[i][1]}, m{pairs[i][2], pairs[i][3]};
    const Complex coarse = table.G(l, m);
    const Complex refined = compute_weight(l, m, table.kernel(), fine, cfg);
    deltas[i] = std::abs(refined - coarse);
  });
  return *std::max_element(deltas.begin(), deltas.end()) / max_g;
}

WeightTable slice_table(const WeightTable& table, int N_sub) {
  const SpectralConfig& cfg = table.config();
  if (N_sub <= 0 || N_sub % 2 != 0 || N_sub > cfg.N)
    throw DomainError("slice_table: N_sub must be even, positive, and <= N");
  SpectralConfig sub = cfg;
  sub.N = N_sub;
  WeightTable out(sub, table.kernel(), table.quad());

  const int half = cfg.N / 2, shalf = N_sub / 2;
  const int n1 = cfg.N + 1, sn1 = N_sub + 1;
  const std::size_t nm = static_cast<std::size_t>(n1) * n1;
  const std::size_t snm = static_cast<std::size_t>(sn1) * sn1;
  auto big_off = [&](int k1, int k2) {
    return static_cast<std::size_t>(k1 + half) * n1 + (k2 + half);
  };
  for (int l1 = -shalf; l1 <= shalf; ++l1)
    for (int l2 = -shalf; l2 <= shalf; ++l2) {
      const std::size_t sl = static_cast<std::size_t>(l1 + shalf) * sn1 + (l2 + shalf);
      for (int m1 = -shalf; m1 <= shalf; ++m1)
        for (int m2 = -shalf; m2 <= shalf; ++m2) {
          const std::size_t sm = static_cast<std::size_t>(m1 + shalf) * sn1 + (m2 + shalf);
          out.gain()[sl * snm + sm] = table.gain()[big_off(l1, l2) * nm + big_off(m1, m2)];
        }
    }
  for (int m1 = -shalf; m1 <= shalf; ++m1)
    for (int m2 = -shalf; m2 <= shalf; ++m2)
      out.loss()[static_cast<std::size_t>(m1 + shalf) * sn1 + (m2 + shalf)] =
          table.loss()[big_off(m1, m2)];

  std::uint64_t h = 0xcbf29ce484222325ull;
  h = fnv1a(out.loss().data(), out.loss().size() * sizeof(Complex), h);
  h = fnv1a(out.gain().data(), out.gain().size() * sizeof(Complex), h);
  out.set_build_hash(h);
  return out;
}

namespace {

template <typename T>
void write_pod(std::ofstream& f, const T& v) {
  f.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
void read_pod(std::ifstream& f, T& v) {
  f.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!f) throw FormatError("weight table file: truncated");
}

}  // namespace

void save_table(const WeightTable& t, const std::string& path) {
  if (t.kernel().kind == KernelSpec::Kind::Custom)
    throw FormatError("save_table: custom kernels are not serializable");
  static_assert(std::endian::native == std::endian::little,
                "weight table format is little-endian");
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw FormatError("save_table: cannot open " + path);
  write_pod(f, kTableMagic);
  write_pod(f, kTableVersion);
  write_pod(f, static_cast<std::uint32_t>(t.config().d));
  write_pod(f, static_cast<std::uint32_t>(t.config().N));
  write_pod(f, t.config().L);
  write_pod(f, t.config().R);
  write_pod(f, static_cast<std::uint32_t>(t.kernel().kind));
  write_pod(f, t.kernel().gamma);
  write_pod(f, static_cast<std::uint32_t>(t.kernel().angular_kind));
  write_pod(f, t.kernel().b_const);
  write_pod(f, t.kernel().b_l1);
  write_pod(f, static_cast<std::uint32_t>(t.quad().n_radial));
  write_pod(f, static_cast<std::uint32_t>(t.quad().n_angular));
  write_pod(f, t.build_hash());
  f.write(reinterpret_cast<const char*>(t.loss().data()),
          static_cast<std::streamsize>(t.loss().size() * sizeof(Complex)));
  f.write(reinterpret_cast<const char*>(t.gain().data()),
          static_cast<std::streamsize>(t.gain().size() * sizeof(Complex)));
  if (!f) throw FormatError("save_table: write failed");
}

WeightTable load_table(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw FormatError("load_table: cannot open " + path);
  std::uint32_t magic, version, d, N, kind, akind, nr, na;
  double L, R, gamma, b_const, b_l1;
  std::uint64_t hash;
  read_pod(f, magic);
  if (magic != kTableMagic) throw FormatError("load_table: bad magic");
  read_pod(f, version);
  if (version != kTableVersion) throw FormatError("load_table: unsupported version");
  read_pod(f, d);
  read_pod(f, N);
  read_pod(f, L);
  read_pod(f, R);
  read_pod(f, kind);
  read_pod(f, gamma);
  read_pod(f, akind);
  read_pod(f, b_const);
  read_pod(f, b_l1);
  read_pod(f, nr);
  read_pod(f, na);
  read_pod(f, hash);

  SpectralConfig cfg = make_config(static_cast<int>(d), static_cast<int>(N), L, R);
  KernelSpec spec;
  switch (static_cast<KernelSpec::Kind>(kind)) {
    case KernelSpec::Kind::HardPowerLaw:
      spec = KernelSpec::hard_power_law(gamma, b_const, R);
      break;
    case KernelSpec::Kind::ModifiedSoft:
      spec = KernelSpec::modified_soft(gamma, b_const, R, cfg.d);
      break;
    default:
      throw FormatError("load_table: unknown kernel kind");
  }
  QuadratureSpec quad{static_cast<int>(nr), static_cast<int>(na)};
  quad.validate();

  WeightTable t(cfg, spec, quad);
  f.read(reinterpret_cast<char*>(t.loss().data()),
         static_cast<std::streamsize>(t.loss().size() * sizeof(Complex)));
  if (!f) throw FormatError("load_table: truncated loss array");
  f.read(reinterpret_cast<char*>(t.gain().data()),
         static_cast<std::streamsize>(t.gain().size() * sizeof(Complex)));
  if (!f) throw FormatError("load_table: truncated gain array");

  std::uint64_t h = 0xcbf29ce484222325ull;
  h = fnv1a(t.loss().data(), t.loss().size() * sizeof(Complex), h);
  h = fnv1a(t.gain().data(), t.gain().size() * sizeof(Complex), h);
  if (h != hash) throw FormatError("load_table: payload hash mismatch");
  t.set_build_hash(hash);
  return t;
}

}  // namespace ks
