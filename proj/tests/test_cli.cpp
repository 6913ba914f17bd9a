#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ajt/cli.hpp"
#include "ajt/error.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "ajt");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = ajt::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

// runs the installed binary in a shell, returning stdout and the exit status
Run spawn(const std::string& env, const std::string& args) {
  const std::string cmd = env + " " + AJT_BIN + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), out, ""};
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("jones command") {
  const Run u = run({"jones", "U", "4"});
  CHECK(u.code == 0);
  CHECK(u.out == "t^-6 + t^-2 + t^2 + t^6\neps: 4\n");
  CHECK(run({"jones", "T(3,2)", "1"}).out == "1\neps: 1\n");
  CHECK(run({"jones", "T(3,2)", "2"}).out == "-t^-18 + t^-10 + t^-6 + t^-2\neps: 2\n");
  const Run bad = run({"jones", "T(4,2)", "2"});
  CHECK(bad.code == 2);
  CHECK(contains(bad.err, "gcd"));
  CHECK(run({"jones", "T(3,2"}).code == 2);
}

TEST_CASE("apoly command") {
  const Run a = run({"apoly", "3", "2", "13", "2"});
  CHECK(a.code == 0);
  CHECK(contains(a.out, "case: S2"));
  CHECK(contains(a.out, "factored: (L-1)(L-M^-24)(L+M^-26)"));
  CHECK(contains(a.out, "admissible: yes"));
  const Run b = run({"apoly", "3", "2", "7", "2"});
  CHECK(b.code == 0);
  CHECK(contains(b.out, "inadmissible: r in (0, pqs)"));
  const Run c = run({"apoly", "3", "2", "19", "3"});
  CHECK(contains(c.out, "case: OddS_Q2"));
  CHECK(contains(c.out, "factored: (L-1)(L+M^-54)(L^2-M^-114)"));
  CHECK(run({"apoly", "3", "2", "4", "2"}).code == 2);
}

TEST_CASE("fit command") {
  const Run m = run({"fit", "--op", "L^2 - t^-24 M^-12", "--seq", "T(3,2)", "--K", "32"});
  CHECK(m.code == 0);
  CHECK(nlohmann::json::parse(m.out).at("status") == "Member");
  const Run n = run({"fit", "--op", "1", "--seq", "T(3,2)", "--K", "32"});
  CHECK(n.code == 1);
  CHECK(nlohmann::json::parse(n.out).at("status") == "NotMember");
  const Run z = run({"fit", "--op", "L + L^-1 - t^2 - t^-2", "--seq-expr", "t^{2n}+t^{-2n}", "--K", "4"});
  CHECK(z.code == 0);
  const auto j = nlohmann::json::parse(z.out);
  CHECK(j.at("status") == "Member");
  CHECK(j.at("support").empty());
  const auto back = ajt::fit_report_from_json(j);
  CHECK(ajt::to_json(back) == j);
  CHECK(run({"fit", "--op", "L +", "--seq", "T(3,2)"}).code == 2);
  CHECK(run({"fit", "--op", "L"}).code == 2);
}

TEST_CASE("verify command") {
  const Run bad = run({"verify", "--p", "3", "--q", "2", "--r", "7", "--s", "2"});
  CHECK(bad.code == 2);
  CHECK(contains(bad.err, "inadmissible parameters"));

  const Run ok = run({"verify", "--p", "3", "--q", "2", "--r", "13", "--s", "2", "--n", "1..8", "--mode", "symbolic",
                      "--json"});
  CHECK(ok.code == 0);
  const auto rep = ajt::structured_report_from_json(nlohmann::json::parse(ok.out));
  CHECK(rep.passed());
  CHECK(rep.stages.size() == 5);
  CHECK(ajt::to_json(rep) == nlohmann::json::parse(ok.out));

  const auto path = std::filesystem::temp_directory_path() / "ajt_cli_report.txt";
  const Run file = run({"verify", "--p", "3", "--q", "2", "--r", "13", "--s", "2", "--n", "1..2", "--out", path.string()});
  CHECK(file.code == 0);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(contains(ss.str(), "verified (exit 0)"));
  std::filesystem::remove(path);

  CHECK(run({"verify", "--p", "3", "--q", "2", "--r", "13", "--s", "2", "--n", "5..1"}).code == 2);
  CHECK(run({"verify", "--p", "3", "--q", "2", "--r", "13", "--s", "2", "--t0", "2,2"}).code == 2);
  CHECK(run({"verify", "--p", "3", "--q", "2", "--r", "13", "--s", "2", "--t0", "0"}).code == 2);
  CHECK(run({"verify", "--p", "3", "--q", "2", "--r", "13", "--s", "2", "--mode", "fast"}).code == 2);
  CHECK(run({"verify", "--p", "3", "--q", "2", "--r", "13", "--s", "2", "--parallelism", "0"}).code == 2);
  CHECK(run({"verify", "--p", "3", "--q", "2", "--r", "13", "--s", "2", "--K0", "64", "--K-max", "8"}).code == 2);
  CHECK(run({"verify", "--p", "3", "--q", "2", "--r", "13", "--s", "2", "--K0", "2", "--K-max", "2"}).code == 3);
}

TEST_CASE("argument helpers") {
  CHECK(ajt::parse_range("1..8") == std::pair<std::int64_t, std::int64_t>{1, 8});
  CHECK(ajt::parse_range("4") == std::pair<std::int64_t, std::int64_t>{4, 4});
  CHECK_THROWS_AS(ajt::parse_range("1..x"), ajt::Error);
  CHECK_THROWS_AS(ajt::parse_range("1-8"), ajt::Error);
  const auto t0s = ajt::parse_t0_list("2,3/2,5/3");
  REQUIRE(t0s.size() == 3);
  CHECK(t0s[1] == mpq_class(3, 2));
  CHECK_THROWS_AS(ajt::parse_t0_list("2,,3"), ajt::Error);
  CHECK(ajt::parse_mode("auto") == std::nullopt);
  CHECK(ajt::parse_mode("specialized") == ajt::VerifyMode::Specialized);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"jones", "U"}).code == 2);
  const Run help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(contains(help.out, "verify"));
}

TEST_CASE("persistent cache") {
  const auto dir = std::filesystem::temp_directory_path() / "ajt_cli_cache";
  std::filesystem::remove_all(dir);
  const std::string env = "AJT_CACHE_DIR=" + dir.string();
  const Run first = spawn(env, "jones 'C(3,2;13,2)' 5");
  CHECK(first.code == 0);
  const auto file = dir / "jones_cache.json";
  REQUIRE(std::filesystem::exists(file));
  CHECK(spawn(env, "jones 'C(3,2;13,2)' 5").out == first.out);

  // a corrupted cache is ignored, never trusted
  std::string text;
  {
    std::ifstream in(file);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  const auto pos = text.find("t^", text.find("entries"));
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 2, "7*t^");
  {
    std::ofstream out(file);
    out << text;
  }
  CHECK(spawn(env, "jones 'C(3,2;13,2)' 5").out == first.out);
  CHECK(spawn("", "jones 'C(3,2;13,2)' 5").out == first.out);
  std::filesystem::remove_all(dir);
}
