#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <unistd.h>

#include "sturmkit/cli.hpp"
#include "sturmkit/potential.hpp"
#include "sturmkit/theorem1.hpp"

using namespace sturmkit;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result sturmkit_run(std::vector<std::string> args) {
  args.insert(args.begin(), "sturmkit");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class Scratch {
 public:
  Scratch() : dir_(fs::temp_directory_path() / ("sturmkit_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(dir_);
  }
  ~Scratch() { fs::remove_all(dir_); }
  std::string write(const std::string& name, const std::string& text) const {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  static std::string read(const std::string& path) {
    std::ifstream in(path);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  }

 private:
  fs::path dir_;
};

const char* kOne = R"({"a":0,"b":"pi","pieces":[{"to":"b","const":1}]})";

}  // namespace

TEST_CASE("epsilon0 prints the root") {
  const Result r = sturmkit_run({"epsilon0"});
  CHECK(r.code == 0);
  CHECK(std::stod(r.out) == doctest::Approx(0.8767262).epsilon(1e-7));
  const Result j = sturmkit_run({"epsilon0", "--format", "json"});
  CHECK(nlohmann::json::parse(j.out)["epsilon0"].get<double>() == epsilon0());
}

TEST_CASE("sct on identical constant potentials holds") {
  Scratch s;
  const std::string one = s.write("one.json", kOne);
  const Result r = sturmkit_run({"sct", "--q1", one, "--q2", one});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["outcome"] == "holds");
  CHECK(j["disconjugate"] == false);
  for (const char* key : {"outcome", "a", "b", "witness_theta", "disconjugate", "diagnostics"}) CHECK(j.contains(key));

  CHECK(sturmkit_run({"sct", "--q1", one, "--q2", one, "--expect", "holds"}).code == 0);
  CHECK(sturmkit_run({"sct", "--q1", one, "--q2", one, "--expect", "fails"}).code == 1);
  CHECK(sturmkit_run({"sct", "--q1", one, "--q2", one, "--expect", "maybe"}).code == 2);
}

TEST_CASE("theorem1 with threshold search") {
  const Result r = sturmkit_run({"theorem1", "--epsilon", "0.5", "--find-lambda", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["zero_free"] == true);
  CHECK(j["sct_fails"] == true);
  CHECK(j["lambda"].get<double>() == doctest::Approx(find_lambda_threshold(0.5) + 1).epsilon(1e-15));
  for (const char* key : {"epsilon", "lambda", "c1", "c2", "f_lower_bound", "g_sup_bound", "min_v", "zero_free",
                          "sct_fails"})
    CHECK(j.contains(key));

  const Result csv = sturmkit_run({"theorem1", "--epsilon", "0.1", "--epsilon", "0.5", "--lambda", "100",
                                   "--format", "csv"});
  REQUIRE(csv.code == 0);
  CHECK(csv.out.rfind("epsilon,lambda,c1,c2,min_v,zero_free\n0.10000000000000001,100,", 0) == 0);
  CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 3);

  CHECK(sturmkit_run({"theorem1", "--epsilon", "0.5", "--lambda", "0", "--expect", "zero-free"}).code == 1);
  CHECK(sturmkit_run({"theorem1", "--epsilon", "0.5", "--lambda", "1", "--find-lambda"}).code == 2);
  CHECK(sturmkit_run({"theorem1", "--epsilon", "1.5"}).code == 2);
  CHECK(sturmkit_run({"theorem1"}).code == 2);
}

TEST_CASE("solve and zeros") {
  Scratch s;
  const std::string one = s.write("one.json", kOne);
  const Result r = sturmkit_run({"solve", "--potential", one, "--ic", "0,1", "--samples", "3"});
  REQUIRE(r.code == 0);
  CHECK(r.out == "t,v,dv\n0,0,1\n1.5707963267948966,1,6.123233995736766e-17\n"
                 "3.1415926535897931,1.2246467991473532e-16,-1\n");

  const Result z = sturmkit_run({"zeros", "--potential", one, "--ic", "0,1", "--interval", "0,pi"});
  REQUIRE(z.code == 0);
  CHECK(z.out == "index,t\n0,0\n1,3.1415926535897931\n");
  const Result zo = sturmkit_run({"zeros", "--potential", one, "--ic", "0,1", "--open", "--format", "json"});
  CHECK(nlohmann::json::parse(zo.out)["count"] == 0);

  const Result out = sturmkit_run({"solve", "--potential", one, "--ic", "1,0", "--out", s.path("traj.csv")});
  CHECK(out.code == 0);
  CHECK(out.out.empty());
  CHECK(Scratch::read(s.path("traj.csv")).rfind("t,v,dv\n0,1,0\n", 0) == 0);
}

TEST_CASE("disconjugate") {
  Scratch s;
  const std::string one = s.write("one.json", kOne);
  const auto full = nlohmann::json::parse(sturmkit_run({"disconjugate", "--potential", one}).out);
  CHECK(full["disconjugate"] == false);
  CHECK(full["conjugate_point"].get<double>() == doctest::Approx(3.141592653589793));
  const Result half = sturmkit_run({"disconjugate", "--potential", one, "--interval", "0,pi/2", "--expect", "true"});
  CHECK(half.code == 0);
  CHECK(nlohmann::json::parse(half.out)["witness_theta"].is_number());
}

TEST_CASE("construct writes loadable specs") {
  Scratch s;
  const Result t1 = sturmkit_run({"construct", "--kind", "theorem1", "--epsilon", "0.5", "--out", s.path("q2.json")});
  REQUIRE(t1.code == 0);
  CHECK(parse_potential_spec(Scratch::read(s.path("q2.json"))) == build_theorem1_q2(0.5));

  const Result d = sturmkit_run({"construct", "--kind", "delta", "--epsilon", "pi/2"});
  REQUIRE(d.code == 0);
  CHECK(parse_potential_spec(d.out) == build_delta_construction(std::numbers::pi / 2).q2);

  const std::string one = s.write("one.json", kOne);
  const Result m = sturmkit_run({"construct", "--kind", "large-M", "--q1", one, "--interval", "0,0.5"});
  REQUIRE(m.code == 0);
  CHECK(parse_potential_spec(m.out).pieces()[0].level() == doctest::Approx(std::pow(4 * std::numbers::pi, 2)));
  CHECK(sturmkit_run({"construct", "--kind", "cubic"}).code == 2);
}

TEST_CASE("track-zero") {
  Scratch s;
  const std::string one = s.write("one.json", kOne);
  const Result r = sturmkit_run({"track-zero", "--potential", one, "--lambda-from", "0", "--lambda-to", "1",
                                 "--steps", "2"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("lambda,t0,dt0_dlambda\n0,1.5707963267948966,1\n", 0) == 0);
  CHECK(r.out.find("{\"exit_lambda\":null}\n") != std::string::npos);
  CHECK(sturmkit_run({"track-zero", "--potential", one, "--lambda-from", "1", "--lambda-to", "0"}).code == 2);
}

TEST_CASE("property sweep is reproducible") {
  const Result a = sturmkit_run({"property-sweep", "--seed", "42", "--count", "3"});
  const Result b = sturmkit_run({"property-sweep", "--seed", "42", "--count", "3"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const auto j = nlohmann::json::parse(a.out);
  CHECK(j["failed"] == 0);
  CHECK(j["suites"].size() >= 10);
  CHECK(sturmkit_run({"property-sweep", "--seed", "42", "--count", "3", "--fatal"}).code == 0);
}

TEST_CASE("usage errors name the flag") {
  Scratch s;
  const Result missing = sturmkit_run({"solve", "--ic", "1,0"});
  CHECK(missing.code == 2);
  CHECK(missing.err.find("--potential") != std::string::npos);
  CHECK(missing.err.find("Usage: solve") != std::string::npos);

  const Result bad_ic = sturmkit_run({"solve", "--potential", s.write("one.json", kOne), "--ic", "1"});
  CHECK(bad_ic.code == 2);
  CHECK(bad_ic.err.find("--ic") != std::string::npos);

  const Result unknown = sturmkit_run({"zeros", "--bogus"});
  CHECK(unknown.code == 2);
  CHECK(unknown.err.find("--bogus") != std::string::npos);

  const Result nofile = sturmkit_run({"disconjugate", "--potential", s.path("absent.json")});
  CHECK(nofile.code == 2);

  const Result badspec = sturmkit_run({"disconjugate", "--potential", s.write("bad.json", R"({"a":0,"b":1,)")});
  CHECK(badspec.code == 2);
  CHECK(badspec.err.find("byte") != std::string::npos);

  CHECK(sturmkit_run({}).code == 2);
  CHECK(sturmkit_run({"frobnicate"}).code == 2);
  CHECK(sturmkit_run({"epsilon0", "--format", "xml"}).code == 2);
  CHECK(sturmkit_run({"solve", "--help"}).code == 0);
}

TEST_CASE("numeric failures exit with 3") {
  Scratch s;
  const std::string sing = s.write("sing.json", R"({"a":0,"b":1,"pieces":[{"to":"b","expr":"1/(t - 0.5)^4"}]})");
  const Result r = sturmkit_run({"solve", "--potential", sing, "--ic", "1,0"});
  CHECK(r.code == 3);
}
