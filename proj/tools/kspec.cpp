// Command-line driver for the kspectral library: weight-table precomputation,
// initial-data checks, time integration with diagnostics, bilinear bound
// studies, and self-convergence studies. All runs are described by an
// INI-style manifest (see manifest.hpp).
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "ks/collision.hpp"
#include "ks/diagnostics.hpp"
#include "ks/init_filter.hpp"
#include "ks/integrator.hpp"
#include "ks/kernel.hpp"
#include "ks/parallel.hpp"
#include "ks/spectral.hpp"
#include "ks/verify.hpp"
#include "manifest.hpp"

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double elapsed_s(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string join_path(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

// Snapshot file: magic "KSSF", version 1, little-endian int32 d,N +
// double L,R, then the (N+1)^d complex coefficients as double pairs.
void save_field(const ks::SpectralField& f, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ks::FormatError("cannot open for write: " + path);
  const auto& c = f.config();
  os.write("KSSF", 4);
  const std::uint32_t ver = 1;
  os.write(reinterpret_cast<const char*>(&ver), 4);
  const std::int32_t d = c.d, N = c.N;
  os.write(reinterpret_cast<const char*>(&d), 4);
  os.write(reinterpret_cast<const char*>(&N), 4);
  os.write(reinterpret_cast<const char*>(&c.L), 8);
  os.write(reinterpret_cast<const char*>(&c.R), 8);
  os.write(reinterpret_cast<const char*>(f.coeffs().data()),
           static_cast<std::streamsize>(f.coeffs().size() * sizeof(ks::Complex)));
  if (!os) throw ks::FormatError("write failed: " + path);
}

ks::SpectralField prepare_initial(const kspec::ResolvedManifest& r) {
  ks::SpectralField f =
      ks::project_initial(r.config, r.initial, r.init_oversample);
  return ks::apply_filter(f, r.filter);
}

ks::WeightTable obtain_table(const kspec::ResolvedManifest& r,
                             const std::string& table_path) {
  if (!table_path.empty()) {
    ks::WeightTable t = ks::load_table(table_path);
    if (!(t.config() == r.config))
      throw ks::ConfigMismatch("table at " + table_path +
                               " was built for a different discretization");
    return t;
  }
  return ks::build_weight_table(r.config, r.kernel, r.quad);
}

void dump_effective(const kspec::ResolvedManifest& r) {
  const std::string path = join_path(r.out_dir, "effective.ini");
  std::ofstream os(path);
  os << r.effective_text();
  std::printf("effective-config %s\n", path.c_str());
}

int cmd_precompute(const kspec::ResolvedManifest& r, const std::string& out) {
  const auto t0 = Clock::now();
  ks::WeightTable table = ks::build_weight_table(r.config, r.kernel, r.quad);
  const double wall = elapsed_s(t0);
  const double rich = ks::richardson_residual(table);
  const std::string path =
      out.empty() ? join_path(r.out_dir, "table.kswt") : out;
  ks::save_table(table, path);
  std::printf("table %s\n", path.c_str());
  std::printf("gain_entries %zu\nloss_entries %zu\n", table.num_gain(),
              table.num_loss());
  std::printf("build_seconds %.3f\n", wall);
  std::printf("refinement_residual %.3e\n", rich);
  std::printf("build_hash %016llx\n",
              static_cast<unsigned long long>(table.build_hash()));
  return 0;
}

int cmd_check_init(const kspec::ResolvedManifest& r) {
  ks::SpectralField fN0 = prepare_initial(r);
  ks::PhysicalField ref(r.config, std::max(2, r.init_oversample));
  ref.sample(r.initial);
  ks::InitReport rep = ks::check_conditions(fN0, ref, r.check_eps);
  std::fputs(rep.to_kv().c_str(), stdout);
  std::printf("all_pass %d\n", rep.all_pass() ? 1 : 0);
  return rep.all_pass() ? 0 : 1;
}

int cmd_run(const kspec::ResolvedManifest& r, const std::string& table_path,
            bool no_monitor) {
  fs::create_directories(r.out_dir);
  dump_effective(r);
  ks::WeightTable table = obtain_table(r, table_path);

  ks::SpectralField f0 = prepare_initial(r);
  ks::DiagnosticsRecord init = ks::record(f0, 0.0, r.run.oversample);

  ks::RunConfig rc = r.run;
  rc.keep_snapshots = false;
  const auto t0 = Clock::now();
  ks::Trajectory traj = ks::run(f0, table, rc);
  std::printf("steps_seconds %.3f\n", elapsed_s(t0));

  bool monitor_pass = true;
  if (!no_monitor) {
    ks::ConstantEstimates consts =
        ks::estimate_constants(table, r.monitor_samples, r.seed);
    ks::MonitorReport rep =
        ks::monitor(traj.records, r.config, consts, init, r.safety);
    std::fputs(consts.to_kv().c_str(), stdout);
    std::fputs(rep.summary().c_str(), stdout);
    monitor_pass = rep.all_pass();
  }

  const std::string csv = join_path(r.out_dir, "diagnostics.csv");
  {
    std::ofstream os(csv);
    os << "# kspec-diagnostics v1\n"
       << "t,mass,l1,l2,h1,negpart_l2,bound_l2,bound_negpart,flags\n";
    char buf[512];
    for (const auto& rec : traj.records) {
      const int flags = (rec.within_l2 ? 1 : 0) | (rec.within_negpart ? 2 : 0);
      std::snprintf(buf, sizeof buf,
                    "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n",
                    rec.t, rec.mass, rec.l1, rec.l2, rec.h1, rec.negpart_l2,
                    rec.bound_l2, rec.bound_negpart, flags);
      os << buf;
    }
  }
  std::printf("diagnostics %s\n", csv.c_str());

  const std::string snap = join_path(r.out_dir, "final.kssf");
  save_field(traj.final_state, snap);
  std::printf("final_state %s\n", snap.c_str());
  std::printf("monitor_pass %d\n", monitor_pass ? 1 : 0);
  return monitor_pass ? 0 : 1;
}

int cmd_verify(const kspec::ResolvedManifest& r, const std::string& table_path) {
  fs::create_directories(r.out_dir);
  ks::WeightTable table = obtain_table(r, table_path);
  std::vector<ks::BoundReport> reports =
      ks::bilinear_bound_study(table, r.p_list, r.samples, r.seed);

  const std::string csv = join_path(r.out_dir, "bounds.csv");
  std::ofstream os(csv);
  os << "# kspec-bounds v1\n"
     << "p,samples,max_ratio_gain,max_ratio_loss,max_ratio_full,max_ratio_hk,"
        "bounded\n";
  bool all = true;
  for (const auto& b : reports) {
    char pbuf[32];
    if (std::isinf(b.p))
      std::snprintf(pbuf, sizeof pbuf, "inf");
    else
      std::snprintf(pbuf, sizeof pbuf, "%g", b.p);
    std::printf("p=%s samples=%d gain=%.6g loss=%.6g full=%.6g hk=%.6g %s\n",
                pbuf, b.n_samples, b.max_ratio_gain, b.max_ratio_loss,
                b.max_ratio_full, b.max_ratio_hk,
                b.bounded ? "bounded" : "NOT-SATURATED");
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s,%d,%.17g,%.17g,%.17g,%.17g,%d\n", pbuf,
                  b.n_samples, b.max_ratio_gain, b.max_ratio_loss,
                  b.max_ratio_full, b.max_ratio_hk, b.bounded ? 1 : 0);
    os << buf;
    all = all && b.bounded;
  }
  std::printf("bounds %s\n", csv.c_str());
  std::printf("all_bounded %d\n", all ? 1 : 0);
  return all ? 0 : 1;
}

int cmd_converge(const kspec::ResolvedManifest& r) {
  if (r.n_list.empty() || r.n_ref <= 0)
    throw ks::DomainError("converge: manifest needs [converge] N_list and N_ref");
  fs::create_directories(r.out_dir);
  ks::ConvergenceTable ct = ks::convergence_study(
      r.initial, r.kernel, r.config.L, r.n_list, r.n_ref, r.converge_t_end, r.run);

  const std::string csv = join_path(r.out_dir, "convergence.csv");
  std::ofstream os(csv);
  os << "# kspec-convergence v1\nN,error_l2,slope\n";
  for (std::size_t i = 0; i < ct.rows.size(); ++i) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g\n", ct.rows[i].N,
                  ct.rows[i].error_l2, i < ct.slopes.size() ? ct.slopes[i] : 0.0);
    os << buf;
    std::printf("N=%d error_l2=%.6e%s\n", ct.rows[i].N, ct.rows[i].error_l2,
                i < ct.slopes.size()
                    ? (" slope=" + std::to_string(ct.slopes[i])).c_str()
                    : "");
  }
  std::printf("N_ref %d\ndt_used %.17g\nconvergence %s\n", ct.N_ref, ct.dt_used,
              csv.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fourier-Galerkin solver for the space-homogeneous Boltzmann "
               "equation on a periodic velocity box"};
  app.require_subcommand(1);

  std::string manifest_path;
  int threads = 0;
  app.add_option("-m,--manifest", manifest_path, "Manifest (INI) file")
      ->required();
  app.add_option("--threads", threads,
                 "Worker thread count (default: KS_THREADS or hardware)");

  std::string table_out, table_in;
  bool no_monitor = false;
  auto* pre = app.add_subcommand("precompute",
                                 "Build and store the collision weight table");
  pre->add_option("--out", table_out, "Output table path");
  auto* chk = app.add_subcommand("check-init",
                                 "Project the initial profile and check the "
                                 "mass / norm / positivity conditions");
  auto* run = app.add_subcommand("run", "Integrate in time with diagnostics");
  run->add_option("--table", table_in, "Load a precomputed weight table");
  run->add_flag("--no-monitor", no_monitor,
                "Skip constant estimation and envelope checks");
  auto* ver = app.add_subcommand("verify",
                                 "Sample-based bilinear bound study");
  ver->add_option("--table", table_in, "Load a precomputed weight table");
  auto* con = app.add_subcommand("converge",
                                 "Self-convergence study against a fine-mode "
                                 "reference run");

  CLI11_PARSE(app, argc, argv);
  if (threads > 0) ks::set_thread_count(threads);

  try {
    kspec::ResolvedManifest r = kspec::resolve(kspec::Manifest::parse_file(manifest_path));
    fs::create_directories(r.out_dir);
    if (pre->parsed()) return cmd_precompute(r, table_out);
    if (chk->parsed()) return cmd_check_init(r);
    if (run->parsed()) return cmd_run(r, table_in, no_monitor);
    if (ver->parsed()) return cmd_verify(r, table_in);
    if (con->parsed()) return cmd_converge(r);
  } catch (const ks::BlowupError& e) {
    std::fprintf(stderr, "blowup at t=%.6g: %s\n", e.t, e.what());
    return 4;
  } catch (const ks::QuadratureError& e) {
    std::fprintf(stderr, "quadrature error: %s\n", e.what());
    return 3;
  } catch (const ks::DomainError& e) {
    std::fprintf(stderr, "invalid input: %s\n", e.what());
    return 2;
  } catch (const ks::ConfigMismatch& e) {
    std::fprintf(stderr, "config mismatch: %s\n", e.what());
    return 2;
  } catch (const ks::FormatError& e) {
    std::fprintf(stderr, "file format error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
