#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("mbstab_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Run run(const std::string& args) {
  const fs::path out = scratch() / "stdout.txt";
  const fs::path err = scratch() / "stderr.txt";
  const std::string cmd = std::string("\"") + MBSTAB_CLI + "\" " + args + " >\"" + out.string() + "\" 2>\"" +
                          err.string() + "\"";
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

fs::path write(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p, std::ios::binary) << text;
  return p;
}

fs::path mesh(const std::string& name) {
  const fs::path p = scratch() / (name + ".json");
  REQUIRE(run("mkmesh --name " + name + " --out \"" + p.string() + "\"").code == 0);
  return p;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("analyze a circle-valued torus") {
    const Run r = run("analyze --in \"" + mesh("torus_zn").string() + "\"");
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["schema"] == "mbstab.report/1");
    CHECK(j.dump().find("CircleEquivalent") != std::string::npos);
    CHECK(j["provenance"]["input_sha256"].get<std::string>().size() == 64);
  }

  TEST_CASE("form classification") {
    const Run r = run("form --coeffs 1,0,1 --degree 2");
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["form"]["k"] == 0);
    CHECK(j["form"]["class"] == "LocalExtremum");
    const Run saddle = run("form --coeffs 1,0,-3,0");
    REQUIRE(saddle.code == 0);
    CHECK(nlohmann::json::parse(saddle.out)["form"]["separatrices"] == 6);
    const Run square = run("form --coeffs 1,2,1");
    REQUIRE(square.code == 0);
    CHECK(nlohmann::json::parse(square.out)["form"]["square_free"] == false);
    CHECK(run("form --coeffs 1,0,1 --degree 3").code == 1);
  }

  TEST_CASE("input errors exit 1 with a location") {
    const fs::path bad = write("bad.json", "{\n  \"vertices\": [1, 2,\n");
    const Run r = run("analyze --in \"" + bad.string() + "\"");
    CHECK(r.code == 1);
    CHECK(r.err.find("line") != std::string::npos);
    CHECK(r.err.find("column") != std::string::npos);
    CHECK(run("analyze --in \"" + (scratch() / "missing.json").string() + "\"").code == 1);
    CHECK(run("analyze").code == 1);
    CHECK(run("assemble --surface pretzel").code == 1);
  }

  TEST_CASE("error reports go to --out") {
    const fs::path bad = write("bad2.json", "[]");
    const fs::path out = scratch() / "error.json";
    CHECK(run("analyze --in \"" + bad.string() + "\" --out \"" + out.string() + "\"").code == 1);
    const auto j = nlohmann::json::parse(slurp(out));
    CHECK(j.contains("error"));
  }

  TEST_CASE("reruns are byte-identical") {
    const std::string in = mesh("torus_height").string();
    const Run a = run("analyze --in \"" + in + "\" --seed 5");
    const Run b = run("analyze --in \"" + in + "\" --seed 5");
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    const Run c = run("assemble --surface annulus --seed 9 --extra-samples 20");
    const Run d = run("assemble --surface annulus --seed 9 --extra-samples 20");
    REQUIRE(c.code == 0);
    CHECK(c.out == d.out);
  }

  TEST_CASE("flow on an assembled field") {
    const fs::path field = scratch() / "annulus.json";
    REQUIRE(run("assemble --surface annulus --out \"" + field.string() + "\"").code == 0);
    const Run r = run("flow --in \"" + field.string() + "\" --task period --start 1.5,0");
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.dump().find("reconstruction_error") != std::string::npos);
  }

  TEST_CASE("help and listing") {
    CHECK(run("--help").code == 0);
    const Run list = run("mkmesh --list");
    CHECK(list.code == 0);
    CHECK(list.out.find("klein") != std::string::npos);
  }
}
