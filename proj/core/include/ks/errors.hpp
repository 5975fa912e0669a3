#ifndef KS_ERRORS_HPP
#define KS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ks {

/// Invalid parameter or precondition violation (bad N, L < R, ...).
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A field that should be Hermitian (real-valued in physical space) is not.
struct SymmetryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Two objects built from incompatible SpectralConfigs were combined.
struct ConfigMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Corrupt or incompatible on-disk data.
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Quadrature self-check failed to meet the requested tolerance.
struct QuadratureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Requested work exceeds the configured budget.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Time integration diverged. Carries the time at which it was detected.
struct BlowupError : std::runtime_error {
  double t;
  explicit BlowupError(const std::string& msg, double t_blowup)
      : std::runtime_error(msg), t(t_blowup) {}
};

}  // namespace ks

#endif
