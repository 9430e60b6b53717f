#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <string>

// Exit-code contract of the command-line tool, driven through the built
// binary (path from the APVAR_BIN environment variable).

namespace {

int run(const std::string& args) {
  const char* bin = std::getenv("APVAR_BIN");
  REQUIRE(bin != nullptr);
  std::string cmd = std::string(bin) + " " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

std::string tmp(const std::string& tag) {
  auto p = std::filesystem::temp_directory_path() / ("apvar_cli_" + tag);
  std::filesystem::remove_all(p);
  return p.string();
}

} // namespace

TEST_CASE("success path returns 0") {
  CHECK(run("variance --family identity --x 100000 --y 300 "
            "--constants-cutoff 100000 --out " + tmp("ok")) == 0);
}

TEST_CASE("config errors return 2") {
  CHECK(run("variance --family subexp --gamma 1.6 --x 100000 --out " +
            tmp("g")) == 2);
  CHECK(run("variance --family power --c 2 --x 100000 --out " + tmp("c")) == 2);
  CHECK(run("no-such-subcommand") == 2);
  CHECK(run("plots --dir " + tmp("missing")) == 2);
}

TEST_CASE("infeasible windows return 3") {
  CHECK(run("variance --family identity --x 100000 --window custom --z 500 "
            "--y 300 --constants-cutoff 100000 --out " + tmp("w")) == 3);
}
