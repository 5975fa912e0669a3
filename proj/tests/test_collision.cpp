#include <cmath>

#include "doctest.h"
#include "ks/collision.hpp"
#include "ks/diagnostics.hpp"
#include "ks/rng.hpp"

using namespace ks;

namespace {

double rel_l2(const SpectralField& a, const SpectralField& b) {
  double diff = 0.0, ref = 0.0;
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    diff += std::norm(a.coeffs()[i] - b.coeffs()[i]);
    ref += std::norm(b.coeffs()[i]);
  }
  return std::sqrt(diff / ref);
}

}  // namespace

TEST_SUITE_BEGIN("collision");

TEST_CASE("direct sum agrees with the integral-definition reference") {
  auto cfg = make_config(2, 4, M_PI, 2.0);
  const KernelSpec spec = KernelSpec::maxwell(2.0);
  const WeightTable table =
      build_weight_table(cfg, spec, QuadratureSpec::default_for(cfg));
  Rng rng(1);
  const SpectralField f = random_hermitian_field(cfg, rng);

  // The table symmetrizes the angular kernel, which redistributes weight
  // between the (l,m) and (m,l) entries; the quadratic form Q(f,f) — the
  // only thing the solver evaluates — is unchanged, so the reference
  // comparison is on the diagonal.
  const CollisionOutput fast = eval_collision(f, table, true);
  const CollisionOutput slow = quadrature_oracle(f, spec, 2);
  CHECK(rel_l2(fast.qhat, slow.qhat) <= 1e-8);
  REQUIRE(slow.gain_hat.has_value());
  CHECK(rel_l2(*fast.gain_hat, *slow.gain_hat) <= 1e-8);
  CHECK(rel_l2(*fast.loss_hat, *slow.loss_hat) <= 1e-8);
}

TEST_CASE("symmetrized bilinear form agrees with the symmetrized reference") {
  auto cfg = make_config(2, 4, M_PI, 2.0);
  const KernelSpec spec = KernelSpec::maxwell(2.0);
  const WeightTable table =
      build_weight_table(cfg, spec, QuadratureSpec::default_for(cfg));
  Rng rng(8);
  const SpectralField f = random_hermitian_field(cfg, rng);
  const SpectralField g = random_hermitian_field(cfg, rng);

  const SpectralField a1 = eval_collision_bilinear(g, f, table).qhat;
  const SpectralField a2 = eval_collision_bilinear(f, g, table).qhat;
  const SpectralField b1 = quadrature_oracle(g, f, spec, 2).qhat;
  const SpectralField b2 = quadrature_oracle(f, g, spec, 2).qhat;
  SpectralField sum_a(cfg), sum_b(cfg);
  for (std::size_t i = 0; i < sum_a.coeffs().size(); ++i) {
    sum_a.coeffs()[i] = a1.coeffs()[i] + a2.coeffs()[i];
    sum_b.coeffs()[i] = b1.coeffs()[i] + b2.coeffs()[i];
  }
  CHECK(rel_l2(sum_a, sum_b) <= 1e-8);
}

TEST_CASE("mode 0 of the diagonal form is an exact zero") {
  auto cfg = make_config(2, 8, M_PI, 2.0);
  const WeightTable table = build_weight_table(
      cfg, KernelSpec::maxwell(2.0), QuadratureSpec::default_for(cfg));
  Rng rng(2);
  for (int s = 0; s < 5; ++s) {
    const SpectralField f = random_hermitian_field(cfg, rng);
    const Complex q0 = eval_collision(f, table).qhat.mode0();
    CHECK(q0.real() == 0.0);
    CHECK(q0.imag() == 0.0);
  }
}

TEST_CASE("diagonal form equals the bilinear form at g = f") {
  auto cfg = make_config(2, 6, M_PI, 2.0);
  const WeightTable table = build_weight_table(
      cfg, KernelSpec::maxwell(2.0), QuadratureSpec::default_for(cfg));
  Rng rng(3);
  const SpectralField f = random_hermitian_field(cfg, rng);
  const SpectralField a = eval_collision(f, table).qhat;
  const SpectralField b = eval_collision_bilinear(f, f, table).qhat;
  for (std::size_t i = 0; i < a.coeffs().size(); ++i)
    CHECK(std::abs(a.coeffs()[i] - b.coeffs()[i]) <= 1e-14);
}

TEST_CASE("gain minus loss reconstructs the combined output") {
  auto cfg = make_config(2, 6, M_PI, 2.0);
  const WeightTable table = build_weight_table(
      cfg, KernelSpec::maxwell(2.0), QuadratureSpec::default_for(cfg));
  Rng rng(4);
  const SpectralField f = random_hermitian_field(cfg, rng);
  const CollisionOutput out = eval_collision(f, table, true);
  REQUIRE(out.gain_hat.has_value());
  REQUIRE(out.loss_hat.has_value());
  double scale = out.qhat.max_abs();
  for (std::size_t i = 0; i < out.qhat.coeffs().size(); ++i) {
    const Complex rebuilt =
        out.gain_hat->coeffs()[i] - out.loss_hat->coeffs()[i];
    CHECK(std::abs(out.qhat.coeffs()[i] - rebuilt) <= 1e-13 * scale);
  }
  // The loss term alone is also exposed as a plain convolution.
  const SpectralField loss = eval_loss_convolution(f, table);
  for (std::size_t i = 0; i < loss.coeffs().size(); ++i)
    CHECK(loss.coeffs()[i] == out.loss_hat->coeffs()[i]);
}

TEST_CASE("doubled-band output restricts to the projected output") {
  auto cfg = make_config(2, 6, M_PI, 2.0);
  const WeightTable table = build_weight_table(
      cfg, KernelSpec::maxwell(2.0), QuadratureSpec::default_for(cfg));
  Rng rng(5);
  const SpectralField f = random_hermitian_field(cfg, rng);
  const SpectralField band = eval_collision(f, table).qhat;
  const SpectralField ext = eval_collision_extended(f, table);
  CHECK(ext.config().N == 2 * cfg.N);
  const int half = cfg.N / 2;
  double max_err = 0.0, max_tail = 0.0;
  for (int k1 = -cfg.N; k1 <= cfg.N; ++k1)
    for (int k2 = -cfg.N; k2 <= cfg.N; ++k2) {
      const Complex v = ext.at({k1, k2});
      if (std::abs(k1) <= half && std::abs(k2) <= half)
        max_err = std::max(max_err, std::abs(v - band.at({k1, k2})));
      else
        max_tail = std::max(max_tail, std::abs(v));
    }
  CHECK(max_err <= 1e-13 * band.max_abs());
  CHECK(max_tail > 0.0);  // the discarded tail is genuinely nonzero
}

TEST_CASE("bilinearity in each argument") {
  auto cfg = make_config(2, 4, M_PI, 2.0);
  const WeightTable table = build_weight_table(
      cfg, KernelSpec::maxwell(2.0), QuadratureSpec::default_for(cfg));
  Rng rng(6);
  const SpectralField f1 = random_hermitian_field(cfg, rng);
  const SpectralField f2 = random_hermitian_field(cfg, rng);
  const SpectralField g = random_hermitian_field(cfg, rng);
  SpectralField comb(cfg);
  const double a = 0.7, b = -1.3;
  for (std::size_t i = 0; i < comb.coeffs().size(); ++i)
    comb.coeffs()[i] = a * f1.coeffs()[i] + b * f2.coeffs()[i];
  const SpectralField qc = eval_collision_bilinear(g, comb, table).qhat;
  const SpectralField q1 = eval_collision_bilinear(g, f1, table).qhat;
  const SpectralField q2 = eval_collision_bilinear(g, f2, table).qhat;
  double scale = qc.max_abs();
  for (std::size_t i = 0; i < qc.coeffs().size(); ++i)
    CHECK(std::abs(qc.coeffs()[i] - (a * q1.coeffs()[i] + b * q2.coeffs()[i])) <=
          1e-12 * scale);
}

TEST_CASE("reference evaluation enforces its work budget") {
  auto cfg = make_config(2, 8, M_PI, 2.0);
  Rng rng(7);
  const SpectralField f = random_hermitian_field(cfg, rng);
  CHECK_THROWS_AS(quadrature_oracle(f, KernelSpec::maxwell(2.0), 1000),
                  ResourceError);
}

TEST_SUITE_END();
