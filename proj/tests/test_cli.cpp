#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rabi/cli.hpp"
#include "rabi/csv.hpp"

using namespace rabi;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

std::filesystem::path temp_file(const std::string& name) { return std::filesystem::temp_directory_path() / name; }

}  // namespace

TEST_CASE("csv formatting round-trips") {
  for (double v : {0.0, 1.0, -2.5, 0.1, 1.0 / 3.0, 6.02214076e23, -1e-300}) CHECK(csv::parse_real(csv::format_real(v)) == v);
  CHECK(csv::format_real(0.1) == "0.10000000000000001");
  CHECK(csv::split_row("a,b,,c") == std::vector<std::string>{"a", "b", "", "c"});
  CHECK(csv::format_log_value(-1, std::log(2.0)) == csv::format_real(-2.0));
  CHECK(csv::format_log_value(1, 2000.0).find("e+868") != std::string::npos);
  CHECK(csv::format_rational(mpq_class(1, 4)).find("2.5") == 0);
  CHECK_THROWS(csv::parse_real("1.5x"));
}

TEST_CASE("spectrum subcommand") {
  const Result r = run({"spectrum", "--g", "0.2", "--levels", "5"});
  REQUIRE(r.code == cli::kOk);
  const auto l = lines(r.out);
  REQUIRE(l.size() == 6);
  CHECK(l[0] == "n,fock_index,energy,trusted");
  const auto row = csv::split_row(l[3]);
  CHECK(row[0] == "2");
  CHECK(row[1] == "4");
  CHECK(row[3] == "1");
  const Result odd = run({"spectrum", "--parity", "odd", "--branch", "minus", "--levels", "3"});
  CHECK(odd.code == cli::kOk);
  CHECK(csv::split_row(lines(odd.out)[1])[1] == "1");
}

TEST_CASE("output is deterministic") {
  const std::vector<std::string> args{"residuals", "--n-min", "10", "--n-max", "40"};
  const Result a = run(args);
  const Result b = run(args);
  CHECK(a.code == cli::kOk);
  CHECK(a.out == b.out);
  CHECK(lines(a.out)[0] == "n,numeric,linear,shift,oscillatory,three_term,residual,res_n_over_logn,res_n");
  CHECK(lines(a.out).size() == 32);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == cli::kUsageError);
  CHECK(run({"bogus"}).code == cli::kUsageError);
  CHECK(run({"--help"}).code == cli::kOk);
  CHECK(run({"spectrum", "--g", "0.5"}).code == cli::kUsageError);
  CHECK(run({"spectrum", "--g", "abc"}).code == cli::kUsageError);
  CHECK(run({"spectrum", "--parity", "sideways"}).code == cli::kUsageError);
  CHECK(run({"spectrum", "--levels", "0"}).code == cli::kUsageError);
  CHECK(run({"residuals", "--n-min", "5"}).code == cli::kUsageError);
  CHECK(run({"poly", "--n", "4", "--m", "5"}).code == cli::kUsageError);
  CHECK(run({"poly", "--n", "6", "--m", "4"}).code == cli::kUsageError);
  CHECK(run({"poly", "--n", "4", "--m", "8", "--x-min", "3", "--x-max", "1"}).code == cli::kUsageError);
  CHECK(run({"verify", "--suite", "nothing"}).code == cli::kUsageError);
  CHECK(run({"spectrum", "--g", "0.49", "--levels", "60", "--max-dim", "64"}).code == cli::kNonConvergence);
}

TEST_CASE("verify subcommand") {
  const Result r = run({"verify", "--suite", "squeeze", "--dim", "128"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("FAIL") == std::string::npos);
  // the quarter block is not certified at g = 0.45 for small truncations
  const Result bad = run({"verify", "--suite", "squeeze", "--g", "0.45", "--dim", "128"});
  CHECK(bad.code == cli::kVerificationFailed);
  CHECK(bad.out.find("FAIL h0_transform_residual") != std::string::npos);
}

TEST_CASE("poly subcommand") {
  const Result r = run({"poly", "--n", "10", "--m", "14", "--points", "3"});
  REQUIRE(r.code == cli::kOk);
  const auto l = lines(r.out);
  REQUIRE(l.size() == 4);
  CHECK(l[0] == "x,p_exact,p_fast,p_asym,envelope");
  for (std::size_t i = 1; i < l.size(); ++i) {
    const auto row = csv::split_row(l[i]);
    REQUIRE(row.size() == 5);
    CHECK(csv::parse_real(row[1]) == doctest::Approx(csv::parse_real(row[2])).epsilon(1e-12));
  }
  const Result big = run({"poly", "--n", "500", "--m", "500", "--points", "2"});
  REQUIRE(big.code == cli::kOk);
  CHECK(csv::split_row(lines(big.out)[1])[1].empty());
  const Result outside = run({"poly", "--n", "2", "--m", "400", "--x-min", "5", "--x-max", "6", "--points", "2"});
  REQUIRE(outside.code == cli::kOk);
  const auto row = csv::split_row(lines(outside.out)[1]);
  CHECK(row[3].empty());
  CHECK(row[4].empty());
}

TEST_CASE("output file and configuration precedence") {
  const auto out_path = temp_file("rabi_cli_test_out.csv");
  REQUIRE(run({"spectrum", "--levels", "4", "--out", out_path.string()}).code == cli::kOk);
  std::ifstream in(out_path);
  std::stringstream content;
  content << in.rdbuf();
  CHECK(lines(content.str()).size() == 5);

  const auto cfg = temp_file("rabi_cli_test.cfg");
  {
    std::ofstream c(cfg);
    c << "# test config\nlevels = 7\ng=0.3\n";
  }
  ::setenv(cli::kConfigEnv, cfg.string().c_str(), 1);
  const Result from_config = run({"spectrum"});
  const Result flag_wins = run({"spectrum", "--levels", "2"});
  const Result explicit_g = run({"spectrum", "--g", "0.3", "--levels", "7"});
  ::unsetenv(cli::kConfigEnv);
  const Result defaults = run({"spectrum"});
  CHECK(lines(from_config.out).size() == 8);
  CHECK(from_config.out == explicit_g.out);
  CHECK(lines(flag_wins.out).size() == 3);
  CHECK(lines(defaults.out).size() == 11);

  CHECK_THROWS(cli::read_config("/nonexistent/rabi.cfg"));
  std::filesystem::remove(out_path);
  std::filesystem::remove(cfg);
}
