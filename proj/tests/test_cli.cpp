// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;

namespace {

const std::string kBinary = DDESIM_BINARY;
const std::string kConfigs = DDESIM_CONFIG_DIR;

int run(const std::string& args) {
  const std::string cmd = kBinary + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("ddesim-cli-" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string config(const std::string& name) { return "--config " + kConfigs + "/" + name; }

}  // namespace

TEST_CASE("each command runs on the bundled configs") {
  TempDir tmp;
  const auto out = [&](const char* f) { return (tmp.path / f).string(); };
  CHECK(run("spectrum " + config("hayes.ini") + " --out " + out("s.csv")) == 0);
  CHECK(slurp(out("s.csv")).find("re,im,modulus") != std::string::npos);
  CHECK(run("converge " + config("hayes.ini") + " --out " + out("c.csv")) == 0);
  CHECK(slurp(out("c.csv")).find("N,mu_re,mu_im,abs_error,ratio") != std::string::npos);
  CHECK(run("chart " + config("chart.ini") + " --out " + out("ch.csv")) == 0);
  CHECK(run("floquet " + config("periodic.ini") + " --out " + out("f.csv")) == 0);
  CHECK(run("solve " + config("solve.ini") + " --out " + out("y.csv")) == 0);
  CHECK(run("spectrum " + config("oscillator.ini") + " --out " + out("o.csv")) == 0);
  CHECK(run("spectrum " + config("distributed.ini") + " --out " + out("d.csv")) == 0);
  CHECK(run("converge " + config("pure-ode.ini") + " --out " + out("p.csv")) == 0);
}

TEST_CASE("exit status reflects the verdict only on request") {
  TempDir tmp;
  const std::string out = " --out " + (tmp.path / "x.csv").string();
  CHECK(run("spectrum " + config("hayes-unstable.ini") + out) == 0);
  CHECK(run("spectrum " + config("hayes-unstable.ini") + out + " --fail-on-unstable") == 2);
  CHECK(run("spectrum " + config("hayes.ini") + out + " --fail-on-unstable") == 0);
}

TEST_CASE("overrides and stdout output") {
  TempDir tmp;
  const fs::path capture = tmp.path / "stdout.csv";
  const std::string cmd = kBinary + " spectrum " + config("hayes.ini") + " --N 8 --M 10 --out - > " +
                          capture.string() + " 2>/dev/null";
  REQUIRE(std::system(cmd.c_str()) == 0);
  const std::string text = slurp(capture);
  CHECK(text.find("\"N\": 8") != std::string::npos);
  CHECK(text.find("\"M\": 10") != std::string::npos);
}

TEST_CASE("errors exit with status one") {
  TempDir tmp;
  CHECK(run("spectrum --config " + (tmp.path / "missing.ini").string()) == 1);
  const fs::path bad = tmp.path / "bad.ini";
  std::ofstream(bad) << "[problem]\nbuiltin = hayes\nwhat = 1\n";
  CHECK(run("spectrum --config " + bad.string()) == 1);
  CHECK(run("spectrum") == 1);
  CHECK(run("nonsense " + config("hayes.ini")) == 1);
  CHECK(run("spectrum " + config("hayes.ini") + " --N 0") == 1);
}
