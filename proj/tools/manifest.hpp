#ifndef KSPEC_MANIFEST_HPP
#define KSPEC_MANIFEST_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ks/init_filter.hpp"
#include "ks/integrator.hpp"
#include "ks/kernel.hpp"
#include "ks/spectral.hpp"

namespace kspec {

/// Flat INI-style manifest: [section] headers, key = value lines, '#'
/// comments. Unknown keys are rejected so typos fail loudly.
class Manifest {
 public:
  static Manifest parse_file(const std::string& path);
  static Manifest parse_text(const std::string& text);

  bool has(const std::string& section, const std::string& key) const;
  std::string get(const std::string& section, const std::string& key) const;
  std::string get_or(const std::string& section, const std::string& key,
                     const std::string& fallback) const;
  double get_num(const std::string& section, const std::string& key) const;
  double get_num_or(const std::string& section, const std::string& key,
                    double fallback) const;
  long get_int_or(const std::string& section, const std::string& key,
                  long fallback) const;

  const std::map<std::string, std::map<std::string, std::string>>& sections() const {
    return data_;
  }

 private:
  std::map<std::string, std::map<std::string, std::string>> data_;
};

struct ResolvedManifest {
  ks::SpectralConfig config;
  ks::KernelSpec kernel;
  ks::QuadratureSpec quad;
  ks::FilterSpec filter;
  ks::RunConfig run;
  std::function<double(double, double)> initial;
  std::string initial_name;
  int init_oversample = 4;
  double check_eps = 1e-3;
  // verify / converge parameters
  std::vector<double> p_list{1.0, 2.0};
  int samples = 200;
  std::vector<int> n_list;
  int n_ref = 0;
  double converge_t_end = 0.5;
  // misc
  std::uint64_t seed = 12345;
  std::string out_dir = ".";
  double safety = 2.0;
  int monitor_samples = 200;

  /// Writes every effective value back out as a manifest.
  std::string effective_text() const;
};

ResolvedManifest resolve(const Manifest& m);

}  // namespace kspec

#endif
