#include "manifest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <fstream>
#include <sstream>

namespace kspec {
namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

Manifest Manifest::parse_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ks::DomainError("manifest: cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_text(ss.str());
}

Manifest Manifest::parse_text(const std::string& text) {
  Manifest m;
  std::stringstream ss(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') {
      section = trim(line.substr(1, line.size() - 2));
      m.data_[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ks::DomainError("manifest: line " + std::to_string(lineno) +
                            ": expected key = value");
    m.data_[section][trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return m;
}

bool Manifest::has(const std::string& section, const std::string& key) const {
  const auto s = data_.find(section);
  return s != data_.end() && s->second.count(key) > 0;
}

std::string Manifest::get(const std::string& section, const std::string& key) const {
  if (!has(section, key))
    throw ks::DomainError("manifest: missing [" + section + "] " + key);
  return data_.at(section).at(key);
}

std::string Manifest::get_or(const std::string& section, const std::string& key,
                             const std::string& fallback) const {
  return has(section, key) ? get(section, key) : fallback;
}

double Manifest::get_num(const std::string& section, const std::string& key) const {
  const std::string v = get(section, key);
  std::size_t pos = 0;
  const double x = std::stod(v, &pos);
  if (pos != v.size())
    throw ks::DomainError("manifest: [" + section + "] " + key + ": bad number " + v);
  return x;
}

double Manifest::get_num_or(const std::string& section, const std::string& key,
                            double fallback) const {
  return has(section, key) ? get_num(section, key) : fallback;
}

long Manifest::get_int_or(const std::string& section, const std::string& key,
                          long fallback) const {
  return has(section, key) ? static_cast<long>(get_num(section, key)) : fallback;
}

ResolvedManifest resolve(const Manifest& m) {
  static const std::map<std::string, std::vector<std::string>> known = {
      {"spectral", {"d", "N", "L", "R", "support"}},
      {"kernel", {"type", "gamma", "b_const"}},
      {"quadrature", {"n_radial", "n_angular"}},
      {"filter", {"type", "alpha", "order"}},
      {"initial", {"profile", "T0", "amplitude", "offset", "radius", "oversample",
                   "check_eps"}},
      {"run", {"t_end", "dt", "scheme", "diag_every", "oversample", "safety",
               "monitor_samples"}},
      {"verify", {"p_list", "samples"}},
      {"converge", {"N_list", "N_ref", "t_end"}},
      {"output", {"dir", "seed"}},
  };
  for (const auto& [section, kv] : m.sections()) {
    const auto it = known.find(section);
    if (it == known.end())
      throw ks::DomainError("manifest: unknown section [" + section + "]");
    for (const auto& [key, val] : kv) {
      (void)val;
      if (std::find(it->second.begin(), it->second.end(), key) == it->second.end())
        throw ks::DomainError("manifest: unknown key [" + section + "] " + key);
    }
  }

  ResolvedManifest r;

  double L, R;
  if (m.has("spectral", "support")) {
    const double S = m.get_num("spectral", "support");
    auto [Rv, Lv] = ks::truncation_from_support(S);
    R = Rv;
    L = Lv;
  } else {
    L = m.get_num("spectral", "L");
    R = m.get_num("spectral", "R");
  }
  const int N = static_cast<int>(m.get_num("spectral", "N"));
  const int d = static_cast<int>(m.get_num_or("spectral", "d", 2));
  r.config = ks::make_config(d, N, L, R);

  const std::string ktype = m.get_or("kernel", "type", "maxwell");
  if (ktype == "maxwell") {
    r.kernel = ks::KernelSpec::maxwell(R);
  } else if (ktype == "hard") {
    r.kernel = ks::KernelSpec::hard_power_law(m.get_num("kernel", "gamma"),
                                              m.get_num_or("kernel", "b_const",
                                                           1.0 / (2.0 * M_PI)),
                                              R);
  } else if (ktype == "soft") {
    r.kernel = ks::KernelSpec::modified_soft(m.get_num("kernel", "gamma"),
                                             m.get_num_or("kernel", "b_const",
                                                          1.0 / (2.0 * M_PI)),
                                             R, d);
  } else {
    throw ks::DomainError("manifest: unknown kernel type " + ktype);
  }

  r.quad = ks::QuadratureSpec::default_for(r.config);
  r.quad.n_radial = static_cast<int>(m.get_int_or("quadrature", "n_radial", r.quad.n_radial));
  r.quad.n_angular =
      static_cast<int>(m.get_int_or("quadrature", "n_angular", r.quad.n_angular));
  r.quad.validate();

  const std::string ftype = m.get_or("filter", "type", "none");
  if (ftype == "none") {
    r.filter = ks::FilterSpec::none();
  } else if (ftype == "fejer") {
    r.filter = ks::FilterSpec::fejer();
  } else if (ftype == "exponential") {
    r.filter = ks::FilterSpec::exponential(
        m.get_num_or("filter", "alpha", 36.0),
        static_cast<int>(m.get_int_or("filter", "order", 4)));
  } else {
    throw ks::DomainError("manifest: unknown filter type " + ftype);
  }

  r.run.t_end = m.get_num_or("run", "t_end", 1.0);
  r.run.dt = m.get_num_or("run", "dt", 1e-2);
  const std::string scheme = m.get_or("run", "scheme", "rk4");
  if (scheme == "rk4")
    r.run.scheme = ks::Scheme::RK4;
  else if (scheme == "euler")
    r.run.scheme = ks::Scheme::Euler;
  else
    throw ks::DomainError("manifest: unknown scheme " + scheme);
  r.run.diag_every = static_cast<int>(m.get_int_or("run", "diag_every", 1));
  r.run.oversample = static_cast<int>(m.get_int_or("run", "oversample", 4));
  r.run.validate();
  r.safety = m.get_num_or("run", "safety", 2.0);
  r.monitor_samples = static_cast<int>(m.get_int_or("run", "monitor_samples", 200));

  r.initial_name = m.get_or("initial", "profile", "gaussian");
  const double T0 = m.get_num_or("initial", "T0", 0.25);
  const double amp = m.get_num_or("initial", "amplitude", 1.0);
  if (r.initial_name == "gaussian") {
    r.initial = ks::gaussian_profile(T0, L, amp);
  } else if (r.initial_name == "double_bump") {
    r.initial = ks::double_bump_profile(T0, m.get_num_or("initial", "offset", 1.0), L);
  } else if (r.initial_name == "ball") {
    r.initial = ks::ball_indicator_profile(m.get_num_or("initial", "radius", 1.0));
  } else {
    throw ks::DomainError("manifest: unknown initial profile " + r.initial_name);
  }
  r.init_oversample = static_cast<int>(m.get_int_or("initial", "oversample", 4));
  r.check_eps = m.get_num_or("initial", "check_eps", 1e-3);

  if (m.has("verify", "p_list")) {
    r.p_list.clear();
    for (const std::string& p : split_list(m.get("verify", "p_list"))) {
      if (p == "inf")
        r.p_list.push_back(std::numeric_limits<double>::infinity());
      else
        r.p_list.push_back(std::stod(p));
    }
  }
  r.samples = static_cast<int>(m.get_int_or("verify", "samples", 200));

  if (m.has("converge", "N_list")) {
    for (const std::string& n : split_list(m.get("converge", "N_list")))
      r.n_list.push_back(std::stoi(n));
  }
  r.n_ref = static_cast<int>(m.get_int_or("converge", "N_ref", 0));
  r.converge_t_end = m.get_num_or("converge", "t_end", 0.5);

  r.seed = static_cast<std::uint64_t>(m.get_int_or("output", "seed", 12345));
  r.out_dir = m.get_or("output", "dir", ".");
  return r;
}

std::string ResolvedManifest::effective_text() const {
  std::ostringstream os;
  os.precision(17);
  os << "[spectral]\nd = " << config.d << "\nN = " << config.N << "\nL = " << config.L
     << "\nR = " << config.R << "\n\n[kernel]\ntype = ";
  switch (kernel.kind) {
    case ks::KernelSpec::Kind::HardPowerLaw:
      os << (kernel.gamma == 0.0 ? "maxwell" : "hard");
      break;
    case ks::KernelSpec::Kind::ModifiedSoft: os << "soft"; break;
    default: os << "custom"; break;
  }
  os << "\ngamma = " << kernel.gamma << "\nb_const = " << kernel.b_const
     << "\nb_l1 = " << kernel.b_l1 << "\n\n[quadrature]\nn_radial = " << quad.n_radial
     << "\nn_angular = " << quad.n_angular << "\n\n[filter]\ntype = ";
  switch (filter.kind) {
    case ks::FilterSpec::Kind::None: os << "none"; break;
    case ks::FilterSpec::Kind::Fejer: os << "fejer"; break;
    case ks::FilterSpec::Kind::Exponential:
      os << "exponential\nalpha = " << filter.alpha << "\norder = " << filter.order;
      break;
  }
  os << "\n\n[initial]\nprofile = " << initial_name
     << "\noversample = " << init_oversample << "\ncheck_eps = " << check_eps
     << "\n\n[run]\nt_end = " << run.t_end << "\ndt = " << run.dt << "\nscheme = "
     << (run.scheme == ks::Scheme::RK4 ? "rk4" : "euler")
     << "\ndiag_every = " << run.diag_every << "\noversample = " << run.oversample
     << "\nsafety = " << safety << "\nmonitor_samples = " << monitor_samples
     << "\n\n[verify]\nsamples = " << samples << "\np_list = ";
  for (std::size_t i = 0; i < p_list.size(); ++i) {
    if (i) os << ",";
    if (std::isinf(p_list[i]))
      os << "inf";
    else
      os << p_list[i];
  }
  os << "\n\n[converge]\nN_ref = " << n_ref << "\nt_end = " << converge_t_end
     << "\nN_list = ";
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (i) os << ",";
    os << n_list[i];
  }
  os << "\n\n[output]\ndir = " << out_dir << "\nseed = " << seed << "\n";
  return os.str();
}

}  // namespace kspec
