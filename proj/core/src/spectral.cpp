#include "ks/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace ks {
namespace {

// Contracts one axis of a row-major tensor against matrix E (n_out x n_in):
// out[..., r, ...] = sum_j E[r][j] in[..., j, ...].
std::vector<Complex> transform_axis(const std::vector<Complex>& in,
                                    std::vector<std::size_t>& shape, int axis,
                                    const std::vector<Complex>& E,
                                    std::size_t n_out, std::size_t n_in) {
  std::size_t pre = 1, post = 1;
  for (int a = 0; a < axis; ++a) pre *= shape[a];
  for (std::size_t a = axis + 1; a < shape.size(); ++a) post *= shape[a];

  std::vector<Complex> out(pre * n_out * post, Complex{0.0, 0.0});
  for (std::size_t p = 0; p < pre; ++p) {
    const Complex* in_p = in.data() + p * n_in * post;
    Complex* out_p = out.data() + p * n_out * post;
    for (std::size_t r = 0; r < n_out; ++r) {
      const Complex* Er = E.data() + r * n_in;
      Complex* dst = out_p + r * post;
      for (std::size_t j = 0; j < n_in; ++j) {
        const Complex w = Er[j];
        const Complex* src = in_p + j * post;
        for (std::size_t q = 0; q < post; ++q) dst[q] += w * src[q];
      }
    }
  }
  shape[axis] = n_out;
  return out;
}

}  // namespace

SpectralConfig make_config(int d, int N, double L, double R) {
  if (d < 2) throw DomainError("make_config: dimension d must be >= 2");
  if (N <= 0 || N % 2 != 0) throw DomainError("make_config: N must be even and >= 2");
  if (!(R > 0.0)) throw DomainError("make_config: R must be positive");
  if (L < R) throw DomainError("make_config: requires L >= R");
  return SpectralConfig{d, N, L, R};
}

std::pair<double, double> truncation_from_support(double S) {
  if (!(S > 0.0)) throw DomainError("truncation_from_support: S must be positive");
  return {2.0 * S, 0.5 * (3.0 + std::sqrt(2.0)) * S};
}

std::size_t SpectralField::offset(const std::vector<int>& k) const {
  std::size_t off = 0;
  const int half = config_.N / 2;
  for (int a = 0; a < config_.d; ++a) {
    const int ka = k[a];
    if (ka < -half || ka > half) throw DomainError("SpectralField: mode index out of range");
    off = off * (config_.N + 1) + static_cast<std::size_t>(ka + half);
  }
  return off;
}

Complex SpectralField::mode0() const {
  std::size_t off = 0;
  for (int a = 0; a < config_.d; ++a)
    off = off * (config_.N + 1) + static_cast<std::size_t>(config_.N / 2);
  return coeffs_[off];
}

double SpectralField::hermitian_residual() const {
  const std::size_t n = coeffs_.size();
  double res = 0.0;
  // Mirror of flat offset i is n-1-i (each axis index maps j -> N-j).
  for (std::size_t i = 0; i < n; ++i) {
    res = std::max(res, std::abs(coeffs_[n - 1 - i] - std::conj(coeffs_[i])));
  }
  return res;
}

double SpectralField::max_abs() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

PhysicalField::PhysicalField(const SpectralConfig& cfg, int oversample)
    : config_(cfg), oversample_(oversample) {
  if (oversample < 1) throw DomainError("PhysicalField: oversample must be >= 1");
  grid_ = oversample * (cfg.N + 1);
  std::size_t n = 1;
  for (int a = 0; a < cfg.d; ++a) n *= static_cast<std::size_t>(grid_);
  values_.assign(n, 0.0);
}

SpectralField forward_transform(const PhysicalField& p) {
  return forward_transform(p, p.config());
}

SpectralField forward_transform(const PhysicalField& p, const SpectralConfig& band) {
  const SpectralConfig& pc = p.config();
  if (pc.d != band.d || pc.L != band.L)
    throw ConfigMismatch("forward_transform: domain mismatch");
  const int M = p.grid_per_axis();
  if (M < band.N + 1)
    throw DomainError("forward_transform: grid too coarse for requested band");

  const int half = band.N / 2;
  const std::size_t n_out = static_cast<std::size_t>(band.N + 1);
  // E[k][j] = (1/M) e^{-i pi k v_j / L}
  std::vector<Complex> E(n_out * static_cast<std::size_t>(M));
  for (int k = -half; k <= half; ++k) {
    for (int j = 0; j < M; ++j) {
      const double angle = -M_PI * k * p.coord(j) / pc.L;
      E[static_cast<std::size_t>(k + half) * M + j] = std::polar(1.0 / M, angle);
    }
  }

  std::vector<Complex> work(p.values().begin(), p.values().end());
  std::vector<std::size_t> shape(pc.d, static_cast<std::size_t>(M));
  for (int a = 0; a < pc.d; ++a)
    work = transform_axis(work, shape, a, E, n_out, static_cast<std::size_t>(M));

  SpectralField out(band);
  out.coeffs() = std::move(work);
  return out;
}

PhysicalField inverse_transform(const SpectralField& f, int oversample) {
  const SpectralConfig& cfg = f.config();
  PhysicalField out(cfg, oversample);
  const int M = out.grid_per_axis();
  const int half = cfg.N / 2;
  const std::size_t n_in = static_cast<std::size_t>(cfg.N + 1);

  // E[j][k] = e^{+i pi k v_j / L}
  std::vector<Complex> E(static_cast<std::size_t>(M) * n_in);
  for (int j = 0; j < M; ++j) {
    for (int k = -half; k <= half; ++k) {
      const double angle = M_PI * k * out.coord(j) / cfg.L;
      E[static_cast<std::size_t>(j) * n_in + (k + half)] = std::polar(1.0, angle);
    }
  }

  std::vector<Complex> work = f.coeffs();
  std::vector<std::size_t> shape(cfg.d, n_in);
  for (int a = 0; a < cfg.d; ++a)
    work = transform_axis(work, shape, a, E, static_cast<std::size_t>(M), n_in);

  double max_imag = 0.0, max_mag = 0.0;
  for (const auto& c : work) {
    max_imag = std::max(max_imag, std::abs(c.imag()));
    max_mag = std::max(max_mag, std::abs(c));
  }
  if (max_imag > 1e-10 * std::max(max_mag, 1e-300))
    throw SymmetryError("inverse_transform: imaginary residue exceeds tolerance (non-Hermitian field)");

  for (std::size_t i = 0; i < work.size(); ++i) out.values()[i] = work[i].real();
  return out;
}

double lp_norm(const PhysicalField& p, double p_exp) {
  if (!(p_exp >= 1.0)) throw DomainError("lp_norm: p must be in [1, inf]");
  const auto& v = p.values();
  if (std::isinf(p_exp)) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  }
  const double cell = std::pow(p.spacing(), p.config().d);
  double acc = 0.0;
  if (p_exp == 1.0) {
    for (double x : v) acc += std::abs(x);
  } else if (p_exp == 2.0) {
    for (double x : v) acc += x * x;
  } else {
    for (double x : v) acc += std::pow(std::abs(x), p_exp);
  }
  return std::pow(cell * acc, 1.0 / p_exp);
}

namespace {

// sum over multi-indices nu with |nu| <= k of prod_j w_j^{nu_j},
// where w_j = (pi k_j / L)^2.
double sobolev_weight(const std::vector<double>& w, int k) {
  double total = 0.0;
  std::function<void(std::size_t, int, double)> rec = [&](std::size_t axis, int budget,
                                                          double prod) {
    if (axis == w.size()) {
      total += prod;
      return;
    }
    double p = prod;
    for (int nu = 0; nu <= budget; ++nu) {
      rec(axis + 1, budget - nu, p);
      p *= w[axis];
    }
  };
  rec(0, k, 1.0);
  return total;
}

}  // namespace

double hk_norm(const SpectralField& f, int k) {
  if (k < 0) throw DomainError("hk_norm: k must be >= 0");
  const SpectralConfig& cfg = f.config();
  const int half = cfg.N / 2;
  const double vol = std::pow(2.0 * cfg.L, cfg.d);

  double acc = 0.0;
  std::vector<int> kv(cfg.d, -half);
  std::vector<double> w(cfg.d);
  const auto& c = f.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    double weight = 1.0;
    if (k > 0) {
      for (int a = 0; a < cfg.d; ++a) {
        const double fa = M_PI * kv[a] / cfg.L;
        w[a] = fa * fa;
      }
      weight = sobolev_weight(w, k);
    }
    acc += weight * std::norm(c[i]);
    for (int a = cfg.d - 1; a >= 0; --a) {
      if (++kv[a] <= half) break;
      kv[a] = -half;
    }
  }
  return std::sqrt(vol * acc);
}

std::pair<PhysicalField, PhysicalField> split_parts(const SpectralField& f,
                                                    int oversample) {
  if (oversample < 2) throw DomainError("split_parts: oversample must be >= 2");
  PhysicalField g = inverse_transform(f, oversample);
  PhysicalField plus = g, minus = g;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g.values()[i];
    plus.values()[i] = x > 0.0 ? x : 0.0;
    minus.values()[i] = x < 0.0 ? -x : 0.0;
  }
  return {std::move(plus), std::move(minus)};
}

Complex eval_at_point(const SpectralField& f, double x, double y) {
  const SpectralConfig& cfg = f.config();
  if (cfg.d != 2) throw DomainError("eval_at_point: d=2 only");
  const int half = cfg.N / 2;
  const int n = cfg.N + 1;

  // Powers of e^{i pi x / L} per axis, built multiplicatively from the most
  // negative mode.
  thread_local std::vector<Complex> px, py;
  px.resize(n);
  py.resize(n);
  const Complex wx = std::polar(1.0, M_PI * x / cfg.L);
  const Complex wy = std::polar(1.0, M_PI * y / cfg.L);
  px[0] = std::polar(1.0, -M_PI * half * x / cfg.L);
  py[0] = std::polar(1.0, -M_PI * half * y / cfg.L);
  for (int i = 1; i < n; ++i) {
    px[i] = px[i - 1] * wx;
    py[i] = py[i - 1] * wy;
  }

  const Complex* c = f.coeffs().data();
  Complex acc{0.0, 0.0};
  for (int i = 0; i < n; ++i) {
    Complex row{0.0, 0.0};
    const Complex* ci = c + static_cast<std::size_t>(i) * n;
    for (int j = 0; j < n; ++j) row += ci[j] * py[j];
    acc += px[i] * row;
  }
  return acc;
}

}  // namespace ks
