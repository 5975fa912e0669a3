#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"

namespace {

namespace fs = std::filesystem;

#ifndef KSPEC_BIN
#error "KSPEC_BIN must point at the command-line binary"
#endif

int run_cli(const std::string& args) {
  const std::string cmd = std::string(KSPEC_BIN) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / "ks_cli_test";
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string write_manifest(const fs::path& dir, const std::string& extra = "") {
  const fs::path p = dir / "m.ini";
  std::ofstream os(p);
  os << "[spectral]\nN = 4\nL = 3.141592653589793\nR = 2.0\n"
     << "[kernel]\ntype = maxwell\n"
     << "[initial]\nprofile = gaussian\nT0 = 0.25\ncheck_eps = 0.5\n"
     << "[run]\nt_end = 0.1\ndt = 0.02\n"
     << "[output]\ndir = " << (dir / "out").string() << "\nseed = 1\n"
     << extra;
  return p.string();
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("precompute, check-init and run round trip") {
  TempDir tmp;
  const std::string m = write_manifest(tmp.path);
  const std::string table = (tmp.path / "t.kswt").string();

  CHECK(run_cli("-m " + m + " precompute --out " + table) == 0);
  CHECK(fs::exists(table));
  CHECK(run_cli("-m " + m + " check-init") == 0);
  CHECK(run_cli("-m " + m + " run --table " + table) == 0);
  CHECK(fs::exists(tmp.path / "out" / "diagnostics.csv"));
  CHECK(fs::exists(tmp.path / "out" / "final.kssf"));
  CHECK(fs::exists(tmp.path / "out" / "effective.ini"));

  // The diagnostics file carries its schema version.
  std::ifstream csv(tmp.path / "out" / "diagnostics.csv");
  std::string first;
  std::getline(csv, first);
  CHECK(first.find("kspec-diagnostics v1") != std::string::npos);
}

TEST_CASE("invalid inputs exit with the validation code") {
  TempDir tmp;
  CHECK(run_cli("-m " + (tmp.path / "missing.ini").string() + " check-init") == 2);

  const fs::path bad = tmp.path / "bad.ini";
  {
    std::ofstream os(bad);
    os << "[spectral]\nN = 4\nL = 3.0\nR = 2.0\nbogus_key = 1\n";
  }
  CHECK(run_cli("-m " + bad.string() + " check-init") == 2);

  {
    std::ofstream os(bad, std::ios::trunc);
    os << "[spectral]\nN = 5\nL = 3.0\nR = 2.0\n";  // odd N
  }
  CHECK(run_cli("-m " + bad.string() + " check-init") == 2);

  const std::string m = write_manifest(tmp.path);
  CHECK(run_cli("-m " + m + " run --table " + (tmp.path / "no.kswt").string()) == 2);
}

TEST_CASE("diverging run exits with the blowup code") {
  TempDir tmp;
  const std::string m =
      write_manifest(tmp.path, "[converge]\nN_list = 2\nN_ref = 4\n");
  const fs::path wild = tmp.path / "wild.ini";
  {
    std::ofstream os(wild);
    os << "[spectral]\nN = 4\nL = 3.141592653589793\nR = 2.0\n"
       << "[initial]\nprofile = gaussian\nT0 = 0.25\n"
       << "[run]\nt_end = 4e6\ndt = 1e6\n"
       << "[output]\ndir = " << (tmp.path / "out2").string() << "\n";
  }
  CHECK(run_cli("-m " + wild.string() + " run --no-monitor") == 4);

  // converge subcommand smoke run on a tiny study.
  CHECK(run_cli("-m " + m + " converge") == 0);
  CHECK(fs::exists(tmp.path / "out" / "convergence.csv"));
}

TEST_SUITE_END();
