#ifndef KS_RNG_HPP
#define KS_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace ks {

/// Deterministic random source. mt19937_64 output is standardized, and the
/// uniform/gaussian mappings below are explicit, so streams are reproducible
/// across standard libraries (std::normal_distribution is not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  /// Uniform in [a, b).
  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  /// Standard normal via Box-Muller.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    while (u1 == 0.0) u1 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double c = std::cos(2.0 * M_PI * u2);
    double s = std::sin(2.0 * M_PI * u2);
    spare_ = r * s;
    have_spare_ = true;
    return r * c;
  }

  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace ks

#endif
