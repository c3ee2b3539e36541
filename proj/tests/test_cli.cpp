#include "test_support.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "matball/cli.hpp"

using namespace matball;

namespace {

RunConfig parse(std::vector<std::string> args) {
  args.insert(args.begin(), "matball");
  return parse_args(args);
}

std::pair<int, std::string> run_capture(const std::vector<std::string>& args) {
  std::ostringstream os;
  const int code = run(parse(args), os);
  return {code, os.str()};
}

}  // namespace

TEST_CASE("parse valid configurations", "[cli]") {
  const RunConfig a = parse({"key-lemma", "--n", "2", "--nu", "0", "--s", "3.0"});
  REQUIRE(a.command == "key-lemma");
  REQUIRE(a.n == 2);
  REQUIRE(a.s() == cplx(3.0, 0.0));
  const RunConfig b = parse({"lemma-a", "--n", "3", "--seed", "42"});
  REQUIRE(b.seed == 42);
  const RunConfig c = parse({"phi", "--n", "1", "--s-re", "1.5", "--s-im", "-0.25", "--radii", "0.1,0.5"});
  REQUIRE(c.s() == cplx(1.5, -0.25));
  REQUIRE(c.radii == std::vector<double>{0.1, 0.5});
}

TEST_CASE("complex parsing", "[cli]") {
  REQUIRE(parse_complex("3") == cplx(3.0, 0.0));
  REQUIRE(parse_complex("2.5+1i") == cplx(2.5, 1.0));
  REQUIRE(parse_complex("2.5-0.5i") == cplx(2.5, -0.5));
  REQUIRE(parse_complex("-1e-1+i") == cplx(-0.1, 1.0));
  REQUIRE(parse_complex("2i") == cplx(0.0, 2.0));
  REQUIRE_THROWS_AS(parse_complex("abc"), UsageError);
}

TEST_CASE("usage errors name the violated guard", "[cli]") {
  REQUIRE_THROWS_WITH(parse({"key-lemma", "--n", "2", "--s", "0.5"}), Catch::Matchers::ContainsSubstring("Re(s) > n - 1"));
  REQUIRE_THROWS_AS(parse({"phi", "--n", "5"}), UsageError);
  REQUIRE_THROWS_AS(parse({"phi", "--radii", "0.5,0.2"}), UsageError);
  REQUIRE_THROWS_AS(parse({"phi", "--radii", "1.0"}), UsageError);
  REQUIRE_THROWS_AS(parse({"phi", "--grid", "4"}), UsageError);
  REQUIRE_THROWS_AS(parse({"nonsense"}), UsageError);
  REQUIRE_THROWS_AS(parse({}), UsageError);
}

TEST_CASE("exit codes", "[cli]") {
  const auto dir = std::filesystem::temp_directory_path();
  const std::string out = (dir / "matball_cli_test.csv").string();
  const char* bad[] = {"matball", "key-lemma", "--n", "2", "--s", "0.5"};
  REQUIRE(main_entry(6, bad) == 2);
  const std::string o = "--out=" + out;
  const char* good[] = {"matball", "e9", "--n", "2", o.c_str()};
  REQUIRE(main_entry(5, good) == 0);
  // s on the Gamma pole of the numerator: numerical error
  const char* pole[] = {"matball", "e9", "--n", "2", "--s", "1", o.c_str()};
  REQUIRE(main_entry(7, pole) == 3);
  std::filesystem::remove(out);
}

TEST_CASE("hua-check at disk parameters", "[cli]") {
  const auto [code, csv] = run_capture({"hua-check", "--n", "1", "--nu", "0", "--s", "1"});
  REQUIRE(code == 0);
  std::istringstream is(csv);
  std::string line;
  int rows = 0;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("name,", 0) == 0) continue;
    std::vector<std::string> f;
    std::stringstream ls(line);
    for (std::string x; std::getline(ls, x, ',');) f.push_back(x);
    REQUIRE(std::stod(f[5]) <= 1e-5);
    ++rows;
  }
  REQUIRE(rows > 0);
}

TEST_CASE("e9 across the default grid", "[cli]") { REQUIRE(run_capture({"e9"}).first == 0); }

TEST_CASE("csv header and determinism", "[cli]") {
  const std::vector<std::string> args{"sandwich", "--n", "2", "--nu", "1", "--s", "2.5", "--seed", "7"};
  const auto a = run_capture(args);
  const auto b = run_capture(args);
  REQUIRE(a.first == 0);
  REQUIRE(a.second == b.second);
  REQUIRE(a.second.rfind("# matball " + std::string(kVersion) + "\n", 0) == 0);
  REQUIRE(a.second.find("# seed=7\n") != std::string::npos);
  REQUIRE(a.second.find("# s=2.5+0i\n") != std::string::npos);
  REQUIRE(a.second.find("sweep,label,r,value_re,value_im,reference_re,reference_im,ratio_re,ratio_im\n") !=
          std::string::npos);
}

TEST_CASE("every subcommand runs", "[cli]") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"phi", "--n", "2", "--max-m", "1", "--radii", "0.3,0.6"},
           {"kernel", "--n", "1", "--nu", "1", "--s", "1.5"},
           {"lemma-a", "--n", "3", "--draws", "10"},
           {"lemma-b", "--n", "2"},
           {"key-lemma", "--n", "1", "--s", "1.5"},
           {"forelli-rudin", "--n", "1"},
           {"invert", "--n", "1", "--s", "1.5"}}) {
    INFO(args.front());
    REQUIRE(run_capture(args).first == 0);
  }
}

TEST_CASE("csv number formatting", "[cli]") {
  REQUIRE(csv_number(0.1) == "0.10000000000000001");
  REQUIRE(csv_field("a,b") == "\"a,b\"");
}
