#include "doctest.h"

#include <json.hpp>
#include <sstream>

#include "stripcert/cli/cli.hpp"
#include "stripcert/cli/expr.hpp"
#include "stripcert/errors.hpp"
#include "stripcert/spectrum/spectrum.hpp"

using namespace stripcert;
using json = nlohmann::json;
using reals::compare;
using reals::ExactValue;
using reals::Ordering;

namespace {
struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

const ExactValue PI = ExactValue::pi();
}  // namespace

TEST_CASE("expression parser") {
  CHECK(compare(cli::parse_exact("2+sqrt(4-pi^2/4)"), 2 + reals::sqrt(4 - reals::pow(PI, 2) / 4)) ==
        Ordering::Equal);
  CHECK(cli::parse_exact("3.1").to_prefix() == "31/10");
  CHECK(cli::parse_exact("1e-5").to_prefix() == "1/100000");
  CHECK(cli::parse_exact("2.5e2").to_prefix() == "250");
  CHECK(cli::parse_exact("-(1/2)^-2").to_prefix() == "-4");
  CHECK(cli::parse_exact(" 7 / 3 ").to_prefix() == "7/3");
  CHECK(compare(cli::parse_exact("pi*pi"), reals::pow(PI, 2)) == Ordering::Equal);
  CHECK_THROWS_AS(cli::parse_exact("sqrt(-1)"), InvalidArgument);
  CHECK_THROWS_AS(cli::parse_exact("1/0"), InvalidArgument);
  CHECK_THROWS_AS(cli::parse_exact("2^x"), InvalidArgument);
  CHECK_THROWS_AS(cli::parse_exact("(1"), InvalidArgument);
  CHECK_THROWS_AS(cli::parse_exact("pie"), InvalidArgument);
  CHECK_THROWS_AS(cli::parse_exact(""), InvalidArgument);
  const auto [lo, hi] = cli::parse_range("sqrt(2),pi");
  CHECK(compare(lo, reals::sqrt(ExactValue(2))) == Ordering::Equal);
  CHECK(compare(hi, PI) == Ordering::Equal);
  CHECK_THROWS_AS(cli::parse_range("3,2"), InvalidArgument);
  CHECK_THROWS_AS(cli::parse_range("3"), InvalidArgument);
  CHECK(cli::split_top_level("f(1,2),3").size() == 2);
}

TEST_CASE("polya failure-intervals reproduces the two windows") {
  const auto r = call({"polya", "failure-intervals"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["schema_version"] == 1);
  REQUIRE(j["reports"].size() == 2);
  CHECK(j["reports"][0]["k"] == 8);
  CHECK(j["reports"][1]["k"] == 13);
  CHECK(j["reports"][0]["intervals"][0]["lo_exact"] == "(- 8 (sqrt (- 64 (* 4 (pow pi 2)))))");
  CHECK(j["reports"][1]["intervals"][0]["hi_exact"] == "(+ 13/4 (sqrt (- 169/16 (pow pi 2))))");
  for (const auto& g : j["gate_certificates"]) CHECK(g["holds"] == true);
}

TEST_CASE("verdict commands") {
  auto j = json::parse(call({"polya", "verify", "--h", "31/10"}).out);
  CHECK(j["verdict"] == "Fails");
  CHECK(j["failing_orders"] == json::array({8}));
  j = json::parse(call({"liyau", "verify", "--h", "10"}).out);
  CHECK(j["verdict"] == "fails_at");
  CHECK(j["failing_orders"] == json::array({1}));
  j = json::parse(call({"liyau", "verify", "--h", "31/10"}).out);
  CHECK(j["verdict"] == "holds");
}

TEST_CASE("liyau exceptional with a reduced order cap") {
  const auto r = call({"liyau", "exceptional", "--kmax", "300"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["orders"] == json::array({7, 10, 77, 86}));
  CHECK(j["completed"] == 300);
  const auto clear = json::parse(call({"liyau", "exceptional", "--kmax", "300", "--range", "5,6.8"}).out);
  CHECK(clear["orders"].empty());
  CHECK(call({"liyau", "exceptional", "--range", "1,2"}).code == 2);
}

TEST_CASE("asymptotics commands") {
  auto j = json::parse(call({"disk", "critical-radius"}).out);
  CHECK(std::abs(std::stod(j["midpoint"]["decimal30"].get<std::string>()) - 3.76085) <= 5e-5);
  j = json::parse(call({"thresholds", "sn", "--n", "1"}).out);
  CHECK(j["exact"] == "(* 1/2 (pow pi 2))");
  j = json::parse(call({"thresholds", "hypercube", "--n", "2"}).out);
  CHECK(j["exact"].is_string());
  j = json::parse(call({"thresholds", "sn", "--n", "7"}).out);
  CHECK(j["exact"].is_null());
  CHECK(!j["expression"].get<std::string>().empty());
  j = json::parse(call({"product", "check", "--heights", "1,1,1"}).out);
  CHECK(j["necessary"] == true);
  CHECK(j["sufficient"] == true);
  j = json::parse(call({"product", "check", "--heights", "10"}).out);
  CHECK(j["necessary"] == false);
  CHECK(j["sufficient"].is_null());
  j = json::parse(call({"isoperimetric", "ranges"}).out);
  REQUIRE(j["intervals"].size() == 3);
  CHECK(j["intervals"][2]["hi"]["exact"] == "(pow pi 3)");
  j = json::parse(call({"oracle", "count", "--h", "3", "--lambda", "50"}).out);
  CHECK(j["count"] == 66);
}

TEST_CASE("plot-data deficit sign matches the window") {
  const auto r = call({"plot-data", "--metric", "polya-deficit", "--k", "8", "--h-range", "3,3.3", "--steps", "100"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "h,deficit");
  int rows = 0, negative = 0;
  while (std::getline(in, line)) {
    const auto comma = line.find(',');
    const double h = std::stod(line.substr(0, comma));
    const double d = std::stod(line.substr(comma + 1));
    const ExactValue hx(mpq_class(3000 + 3 * rows, 1000));
    CHECK(h == doctest::Approx(hx.approx()).epsilon(1e-15));
    const bool oracle = compare(spectrum::kth_eigenvalue(hx, 8), 16 / hx) == Ordering::Less;
    CHECK((d < 0) == oracle);
    CHECK((d < 0) == (h > 3.0481 && h < 3.2380));
    negative += d < 0;
    ++rows;
  }
  CHECK(rows == 101);
  CHECK(negative > 0);
}

TEST_CASE("output formats") {
  const auto human = call({"--format", "human", "disk", "critical-radius"});
  CHECK(human.code == 0);
  CHECK(human.out.find("steps: 17") != std::string::npos);
  const auto js = call({"--format", "json", "plot-data", "--metric", "polya-deficit", "--k", "2", "--h-range", "1,2",
                        "--steps", "2"});
  CHECK(json::parse(js.out)["rows"].size() == 3);
  CHECK(call({"--format", "csv", "isoperimetric", "ranges"}).code == 2);
}

TEST_CASE("exit codes") {
  CHECK(call({}).code == 2);
  CHECK(call({"bogus"}).code == 2);
  CHECK(call({"polya", "verify"}).code == 2);
  CHECK(call({"polya", "verify", "--h", "sqrt(-2)"}).code == 2);
  CHECK(call({"polya", "verify", "--h", "-1"}).code == 2);
  CHECK(call({"--precision-cap", "128", "isoperimetric", "ranges"}).code == 2);
  CHECK(call({"--threads", "zero", "isoperimetric", "ranges"}).code == 2);
  CHECK(call({"product", "check", "--heights", "1,-1"}).code == 2);
  CHECK(call({"plot-data", "--metric", "other", "--k", "2", "--h-range", "1,2"}).code == 2);
  CHECK(call({"disk", "critical-radius", "--tol", "0"}).code == 2);
  CHECK(call({"--help"}).code == 0);
  // equal to pi^2/2 but not structurally: the comparison cannot be settled
  const auto r = call({"--precision-cap", "256", "polya", "verify", "--h",
                       "pi^2/2 + sqrt(2) + sqrt(3) - sqrt(5 + 2*sqrt(6))"});
  CHECK(r.code == 3);
  CHECK(r.err.find("uncertified") != std::string::npos);
  CHECK(call({"--threads", "auto", "isoperimetric", "ranges"}).code == 0);
}

TEST_CASE("reports are identical across thread counts") {
  const auto one = call({"--threads", "1", "polya", "failure-intervals", "--kmax", "200"});
  const auto four = call({"--threads", "4", "polya", "failure-intervals", "--kmax", "200"});
  const auto many = call({"--threads", "16", "polya", "failure-intervals", "--kmax", "200"});
  CHECK(one.out == four.out);
  CHECK(one.out == many.out);
  call({"--threads", "1", "isoperimetric", "ranges"});
}
