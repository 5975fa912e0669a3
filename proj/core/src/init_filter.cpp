#include "ks/init_filter.hpp"

#include <cmath>
#include <cstdio>

namespace ks {

double FilterSpec::sigma(const std::vector<int>& k, int N) const {
  switch (kind) {
    case Kind::None:
      return 1.0;
    case Kind::Fejer: {
      double s = 1.0;
      for (int kj : k) s *= 1.0 - std::abs(kj) / (N / 2 + 1.0);
      return s;
    }
    case Kind::Exponential: {
      double k2 = 0.0;
      for (int kj : k) k2 += static_cast<double>(kj) * kj;
      const double ratio = std::sqrt(k2) / (N / 2.0);
      return std::exp(-alpha * std::pow(ratio, 2.0 * order));
    }
  }
  return 1.0;
}

SpectralField project_initial(const PhysicalField& f0) {
  if (f0.oversample() < 2)
    throw DomainError("project_initial: oversample >= 2 required");
  return forward_transform(f0);
}

SpectralField project_initial(const SpectralConfig& cfg,
                              const std::function<double(double, double)>& fn,
                              int oversample) {
  PhysicalField p(cfg, oversample);
  p.sample(fn);
  return project_initial(p);
}

SpectralField apply_filter(const SpectralField& f, const FilterSpec& filt) {
  const SpectralConfig& cfg = f.config();
  const int half = cfg.N / 2, n1 = cfg.N + 1;
  SpectralField out(cfg);
  std::vector<int> k(2);
  for (int k1 = -half; k1 <= half; ++k1)
    for (int k2 = -half; k2 <= half; ++k2) {
      k[0] = k1;
      k[1] = k2;
      const std::size_t off = static_cast<std::size_t>(k1 + half) * n1 + (k2 + half);
      out.coeffs()[off] = filt.sigma(k, cfg.N) * f.coeffs()[off];
    }
  return out;
}

namespace {

/// L2 and H1 norms of the grid values from their full discrete spectrum
/// (separable DFT over all grid frequencies in [-M/2, M/2)), with the same
/// (2L)^d Parseval normalization as hk_norm. A band-limited projection of the
/// same grid keeps a subset of these coefficients, so norm ratios against
/// these references cannot exceed 1.
void full_spectrum_norms(const PhysicalField& p, double* l2, double* h1) {
  const int M = p.grid_per_axis();
  const double L = p.config().L;
  const int klo = -(M / 2), khi = (M - 1) / 2;
  const int nk = khi - klo + 1;

  // axis-1 transform: t[j0][k1] = (1/M) sum_j1 v[j0][j1] e^{-i pi k1 x_j1 / L}
  std::vector<Complex> basis(static_cast<std::size_t>(nk) * M);
  for (int k = klo; k <= khi; ++k)
    for (int j = 0; j < M; ++j)
      basis[static_cast<std::size_t>(k - klo) * M + j] =
          std::polar(1.0 / M, -M_PI * k * p.coord(j) / L);

  std::vector<Complex> t(static_cast<std::size_t>(M) * nk, Complex{0.0, 0.0});
  const double* v = p.values().data();
  for (int j0 = 0; j0 < M; ++j0) {
    const double* row = v + static_cast<std::size_t>(j0) * M;
    for (int k = 0; k < nk; ++k) {
      const Complex* eb = basis.data() + static_cast<std::size_t>(k) * M;
      Complex acc{0.0, 0.0};
      for (int j1 = 0; j1 < M; ++j1) acc += row[j1] * eb[j1];
      t[static_cast<std::size_t>(j0) * nk + k] = acc;
    }
  }
  const double vol = std::pow(2.0 * L, p.config().d);
  double sum_l2 = 0.0, sum_h1 = 0.0;
  for (int k0 = 0; k0 < nk; ++k0) {
    const Complex* eb = basis.data() + static_cast<std::size_t>(k0) * M;
    const double w0 = std::pow(M_PI * (k0 + klo) / L, 2);
    for (int k1 = 0; k1 < nk; ++k1) {
      Complex acc{0.0, 0.0};
      for (int j0 = 0; j0 < M; ++j0)
        acc += t[static_cast<std::size_t>(j0) * nk + k1] * eb[j0];
      const double a2 = std::norm(acc);
      const double w1 = std::pow(M_PI * (k1 + klo) / L, 2);
      sum_l2 += a2;
      sum_h1 += a2 * (1.0 + w0 + w1);
    }
  }
  *l2 = std::sqrt(vol * sum_l2);
  *h1 = std::sqrt(vol * sum_h1);
}

}  // namespace

InitReport check_conditions(const SpectralField& fN0, const PhysicalField& f0,
                            double eps) {
  if (!(fN0.config() == f0.config()))
    throw ConfigMismatch("check_conditions: config mismatch");
  const double vol = std::pow(2.0 * f0.config().L, f0.config().d);

  InitReport rep;

  // (a) mass: integral of the grid values vs (2L)^d * mode 0.
  double mean = 0.0;
  for (double x : f0.values()) mean += x;
  mean /= static_cast<double>(f0.size());
  const double mass0 = vol * mean;
  const double massN = vol * fN0.mode0().real();
  rep.cond_a_massgap = std::abs(massN - mass0) / std::abs(mass0);
  rep.pass_a = rep.cond_a_massgap <= 1e-10;

  // (b) L2 / H1 against the full-spectrum reference of the f0 grid.
  double ref_l2 = 0.0, ref_h1 = 0.0;
  full_spectrum_norms(f0, &ref_l2, &ref_h1);
  double band_l2 = 0.0;
  for (const Complex& c : fN0.coeffs()) band_l2 += std::norm(c);
  band_l2 = std::sqrt(vol * band_l2);
  rep.cond_b_l2_ratio = band_l2 / ref_l2;
  rep.cond_b_h1_ratio = hk_norm(fN0, 1) / ref_h1;
  rep.pass_b = rep.cond_b_l2_ratio <= 1.0 + 1e-10 && rep.cond_b_h1_ratio <= 1.0 + 1e-10;

  // (c) L1 ratio <= 2 on the f0 grid.
  const PhysicalField fN_grid = inverse_transform(fN0, f0.oversample());
  double l1_N = lp_norm(fN_grid, 1.0), l1_0 = lp_norm(f0, 1.0);
  rep.cond_c_l1_ratio = l1_N / l1_0;
  rep.pass_c = rep.cond_c_l1_ratio <= 2.0;

  // (d) negative part.
  auto [pos, neg] = split_parts(fN0, std::max(4, f0.oversample()));
  rep.cond_d_negpart_l2 = lp_norm(neg, 2.0);
  rep.pass_d = rep.cond_d_negpart_l2 < eps;
  (void)pos;
  return rep;
}

std::string InitReport::to_kv() const {
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "cond_a_massgap=%.17g\ncond_b_l2_ratio=%.17g\ncond_b_h1_ratio=%.17g\n"
                "cond_c_l1_ratio=%.17g\ncond_d_negpart_l2=%.17g\n"
                "pass_a=%d\npass_b=%d\npass_c=%d\npass_d=%d\n",
                cond_a_massgap, cond_b_l2_ratio, cond_b_h1_ratio, cond_c_l1_ratio,
                cond_d_negpart_l2, pass_a, pass_b, pass_c, pass_d);
  return buf;
}

std::function<double(double, double)> gaussian_profile(double T0, double L,
                                                       double amplitude) {
  return [=](double x, double y) {
    double s = 0.0;
    for (int j0 = -1; j0 <= 1; ++j0)
      for (int j1 = -1; j1 <= 1; ++j1) {
        const double dx = x - 2.0 * L * j0, dy = y - 2.0 * L * j1;
        s += std::exp(-(dx * dx + dy * dy) / (2.0 * T0));
      }
    return amplitude * s;
  };
}

std::function<double(double, double)> double_bump_profile(double T0, double offset,
                                                          double L) {
  auto a = gaussian_profile(T0, L), b = gaussian_profile(T0, L);
  return [=](double x, double y) { return a(x - offset, y) + b(x + offset, y); };
}

std::function<double(double, double)> ball_indicator_profile(double radius) {
  return [=](double x, double y) { return x * x + y * y <= radius * radius ? 1.0 : 0.0; };
}

}  // namespace ks
