#include "cli.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

const std::string kData = MLAB_TEST_DATA;

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = mlab::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return kData + "/" + name; }

// Runs the installed binary through the shell; returns {exit code, stdout}.
Result shell(const std::string& args) {
  const std::string cmd = std::string(MLAB_BIN) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string text;
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) text.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, text, {}};
}

}  // namespace

TEST_CASE("cli: flatness on a euclidean norm is flat") {
  const Result r = run({"flatness", "--norm", data("euclid3.json"), "--seed", "7", "--count", "200", "--no-timestamp"});
  REQUIRE(r.code == mlab::cli::kExitPass);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["suite"] == "flatness");
  CHECK(j["classification"] == "flat");
  CHECK(j["overall"] == "pass");
  CHECK_FALSE(j.contains("generated_at"));
}

TEST_CASE("cli: tensors prints the Christoffel/Cartan residual") {
  const Result r = run({"tensors", "--norm", data("quartic.json"), "--at", "1,1,1", "--no-timestamp"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["eq23_residual"].get<double>() < 1e-10);
  CHECK(j["g"].size() == 3);
  CHECK(j["R"][0][1][0][1].get<double>() == doctest::Approx(1.0 / 324.0).epsilon(1e-12));

  const Result t = run({"tensors", "--norm", data("quartic.json"), "--at", "1,1,1", "--format", "text"});
  REQUIRE(t.code == 0);
  const auto pos = t.out.find("eq23_residual: ");
  REQUIRE(pos != std::string::npos);
  CHECK(std::stod(t.out.substr(pos + 15)) < 1e-10);

  CHECK(run({"tensors", "--norm", data("quartic.json"), "--at", "1,1"}).code == mlab::cli::kExitUsage);
  CHECK(run({"tensors", "--norm", data("quartic.json"), "--at", "0,0,0"}).code == mlab::cli::kExitUsage);
  CHECK(run({"tensors", "--norm", data("quartic.json"), "--at", "1,x,1"}).code == mlab::cli::kExitUsage);
  CHECK(run({"tensors", "--norm", data("quartic.json"), "--at", "1,1,1", "--format", "csv"}).code ==
        mlab::cli::kExitUsage);
  CHECK(run({"tensors", "--norm", data("quartic.json")}).code == mlab::cli::kExitUsage);
}

TEST_CASE("cli: brickell on randers passes vacuously with a flag") {
  const Result r = run({"brickell", "--norm", data("randers3.json"), "--no-timestamp"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  bool flagged = false;
  for (const auto& f : j["flags"]) flagged = flagged || f == "hypothesis failed: absolute homogeneity";
  CHECK(flagged);
}

TEST_CASE("cli: exit codes") {
  CHECK(run({}).code == mlab::cli::kExitUsage);
  CHECK(run({"frobnicate"}).code == mlab::cli::kExitUsage);
  CHECK(run({"flatness"}).code == mlab::cli::kExitUsage);
  CHECK(run({"flatness", "--norm", data("nonexistent.json")}).code == mlab::cli::kExitUsage);
  CHECK(run({"flatness", "--norm", data("quartic.json"), "--count", "0"}).code == mlab::cli::kExitUsage);
  CHECK(run({"flatness", "--norm", data("quartic.json"), "--format", "xml"}).code == mlab::cli::kExitUsage);
  CHECK(run({"flatness", "--norm", data("quartic.json"), "--tol", "nope=1"}).code == mlab::cli::kExitUsage);
  CHECK(run({"flatness", "--norm", data("quartic.json"), "--tol", "flat"}).code == mlab::cli::kExitUsage);
  CHECK(run({"flatness", "--norm", data("quartic.json"), "--tol", "flat=-1"}).code == mlab::cli::kExitUsage);
  CHECK(run({"brickell", "--norm", data("randers2.json")}).code == mlab::cli::kExitUsage);
  CHECK(run({"parallel", "--norm", data("quartic.json"), "--b", "0,0,0"}).code == mlab::cli::kExitUsage);
  CHECK(run({"parallel", "--norm", data("quartic.json")}).code == mlab::cli::kExitUsage);
  CHECK(run({"theorem1", "--norm", data("quartic.json")}).code == mlab::cli::kExitUsage);
  CHECK(run({"theorem1", "--norm", data("quartic.json"), "--surface", data("offcenter_sphere.json")}).code ==
        mlab::cli::kExitUsage);
  CHECK(run({"theorem3", "--norm", data("quartic.json"), "--r", "1,-1"}).code == mlab::cli::kExitUsage);

  const Result usage = run({"flatness", "--bogus"});
  CHECK(usage.code == mlab::cli::kExitUsage);
  CHECK(usage.err.find("--bogus") != std::string::npos);

  // overrides only bite on suites that assert the named tolerance
  CHECK(run({"flatness", "--norm", data("quartic.json"), "--count", "20", "--tol", "cross_route=1"}).code == 0);
  CHECK(run({"all", "--norm", data("quartic.json"), "--count", "20", "--tol", "euler=1e-300"}).code ==
        mlab::cli::kExitFail);
  CHECK(run({"theorem1", "--norm", data("euclid_identity3.json"), "--surface", data("offcenter_sphere.json"), "--count",
             "20", "--tol", "obata=1e-300"})
            .code == mlab::cli::kExitFail);
}

TEST_CASE("cli: theorem1 and theorem3 and parallel from files") {
  const Result t1 = run({"theorem1", "--norm", data("euclid_identity3.json"), "--surface", data("offcenter_sphere.json"),
                         "--count", "40", "--no-timestamp"});
  CHECK(t1.code == 0);
  CHECK(nlohmann::json::parse(t1.out)["overall"] == "pass");
  const Result t3 = run({"theorem3", "--norm", data("quartic.json"), "--r", "0.5,1,2", "--count", "20", "--no-timestamp"});
  CHECK(t3.code == 0);
  CHECK(nlohmann::json::parse(t3.out)["plan"]["r_list"].size() == 3);
  const Result p = run({"parallel", "--norm", data("euclid3.json"), "--b", "1,0,0", "--count", "40", "--no-timestamp"});
  CHECK(p.code == 0);
}

TEST_CASE("cli: all is byte-identical across runs and thread counts") {
  const std::vector<std::string> args{"all", "--norm", data("randers3.json"), "--count", "30", "--no-timestamp"};
  const Result a = run(args);
  const Result b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const auto j = nlohmann::json::parse(a.out);
  CHECK(j["reports"].size() == 8);
  CHECK(j["skipped"].empty());
  CHECK(j["overall"] == "pass");

  const Result two = run({"all", "--norm", data("randers2.json"), "--count", "30", "--no-timestamp"});
  REQUIRE(two.code == 0);
  const auto j2 = nlohmann::json::parse(two.out);
  CHECK(j2["skipped"].size() == 4);
  CHECK(j2["reports"].size() == 4);

  const Result stamped = run({"flatness", "--norm", data("euclid3.json"), "--count", "5"});
  CHECK(nlohmann::json::parse(stamped.out).contains("generated_at"));
}

TEST_CASE("cli: csv and text formats, --out") {
  const Result csv = run({"flatness", "--norm", data("quartic.json"), "--count", "4", "--format", "csv"});
  REQUIRE(csv.code == 0);
  CHECK(csv.out.rfind("suite,sample_index,y0,y1,y2,name,value\n", 0) == 0);
  const Result text = run({"deicke", "--norm", data("quartic.json"), "--count", "20", "--format", "text"});
  REQUIRE(text.code == 0);
  CHECK(text.out.find("classification: non-riemannian") != std::string::npos);

  const auto path = std::filesystem::temp_directory_path() / "mlab_cli_test_report.json";
  std::filesystem::remove(path);
  const Result o = run({"axioms", "--norm", data("euclid3.json"), "--count", "5", "--out", path.string()});
  CHECK(o.code == 0);
  CHECK(o.out.empty());
  std::ifstream in(path);
  CHECK(nlohmann::json::parse(in)["suite"] == "axioms");
  std::filesystem::remove(path);
}

TEST_CASE("cli: the binary honours the exit-code contract end to end") {
  CHECK(shell("flatness --norm " + data("euclid3.json") + " --count 20 --no-timestamp").code == 0);
  CHECK(shell("flatness --norm " + data("quartic.json") + " --count 20 --tol euler=1e-300").code == 0);
  CHECK(shell("all --norm " + data("quartic.json") + " --count 20 --tol euler=1e-300").code == 1);
  CHECK(shell("flatness --norm " + data("quartic.json") + " --bogus").code == 2);
  const Result a = shell("all --norm " + data("quartic.json") + " --count 20 --no-timestamp");
  const Result b = shell("MLAB_THREADS=1 " + std::string(MLAB_BIN) + " all --norm " + data("quartic.json") +
                         " --count 20 --no-timestamp >/dev/null; " + MLAB_BIN + " all --norm " + data("quartic.json") +
                         " --count 20 --no-timestamp");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}
