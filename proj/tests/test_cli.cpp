#include <doctest.h>

#include <sstream>

#include "autonarm/cli.hpp"
#include "json.hpp"
#include "support.hpp"

using namespace autonarm;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

struct Files {
  std::filesystem::path dir = testing::scratch_dir("cli");
  std::filesystem::path toy = dir / "toy.csv";
  std::filesystem::path ragged = dir / "ragged.csv";
  Files() {
    testing::write_text(toy, "A,B,C\n2,r,1.5\n5,r,2.5\n7,g,0.5\n9,b,3\n4,r,2\n6,g,1\n");
    testing::write_text(ragged, "A,B\n1,2\n3\n");
  }
  ~Files() { std::filesystem::remove_all(dir); }
};

const std::vector<std::string> kFast{"--outer-np", "5", "--outer-fes", "10", "--np-min", "10", "--np-max", "10",
                                     "--maxfes-min", "60", "--maxfes-max", "80"};

std::vector<std::string> with(std::vector<std::string> head, const std::vector<std::string>& tail) {
  head.insert(head.end(), tail.begin(), tail.end());
  return head;
}

}  // namespace

TEST_CASE("help lists every flag with defaults") {
  const auto r = cli({"--help"});
  CHECK(r.code == 0);
  for (const char* flag : {"--dataset", "--drop", "--outer", "--runs", "--outer-np", "--outer-fes",
                           "--weight-adaptation", "--max-preprocess", "--alpha", "--beta", "--seed", "--jobs",
                           "--out", "--format", "--config"})
    CHECK(r.out.find(flag) != std::string::npos);
  CHECK(r.out.find("[30]") != std::string::npos);
  CHECK(r.out.find("[1000]") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
  CHECK(cli({}).code == 2);
  CHECK(cli({"experiment", "--no-such-flag"}).code == 2);
  CHECK(cli({"experiment", "--outer", "ga"}).code == 2);
  CHECK(cli({"experiment", "--format", "xml"}).code == 2);
}

TEST_CASE("validate") {
  Files f;
  auto r = cli({"validate", "--dataset", f.toy.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("6 transactions, 3 attributes") != std::string::npos);
  r = cli({"validate", "--dataset", f.ragged.string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("RaggedRows") != std::string::npos);
  r = cli({"validate", "--dataset", (f.dir / "nope.csv").string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("MissingFile") != std::string::npos);
  CHECK(cli({"validate", "--dataset", f.toy.string(), "--np-min", "40"}).code == 1);
}

TEST_CASE("mine") {
  Files f;
  const auto r = cli({"mine", "--dataset", f.toy.string(), "--algorithm", "de", "--np", "10", "--maxfes", "300",
                      "--metrics", "Supp,Conf", "--preprocess", "MM", "--seed", "4"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["pipeline"]["algorithm"] == "DE");
  CHECK(j["pipeline"]["preprocessing"] == nlohmann::json::array({"MM"}));
  CHECK(j["rule_count"].get<std::size_t>() == j["rules"].size());
  CHECK(cli({"mine", "--dataset", f.toy.string(), "--metrics", "Supp", "--weights", "1,2"}).code == 1);
}

TEST_CASE("search is byte-identical across invocations") {
  Files f;
  const auto args = with({"search", "--dataset", f.toy.string(), "--weight-adaptation", "false", "--seed", "9"}, kFast);
  const auto a = cli(args), b = cli(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const auto j = nlohmann::json::parse(a.out);
  CHECK(j["runs"].size() == 1);
}

TEST_CASE("experiment writes files and compare reads them") {
  Files f;
  const auto base = with({"experiment", "--dataset", f.toy.string(), "--runs", "6"}, kFast);
  const auto a = f.dir / "a.json", b = f.dir / "b.csv";
  REQUIRE(cli(with(base, {"--seed", "1", "--out", a.string()})).code == 0);
  REQUIRE(cli(with(base, {"--seed", "2", "--format", "csv", "--out", b.string()})).code == 0);
  const auto j = nlohmann::json::parse(testing::read_text(a));
  CHECK(j["runs"].size() == 6);
  CHECK(j["dataset"]["name"] == "toy");

  const auto r = cli({"compare", a.string(), b.string()});
  if (r.code == 0) {
    const auto c = nlohmann::json::parse(r.out);
    CHECK(c["p_value"].get<double>() >= 0.0);
    CHECK(c["p_value"].get<double>() <= 1.0);
  } else {
    // identical best fitness in every run is possible on a six-row table
    CHECK(r.err.find("TooFewPairs") != std::string::npos);
  }
  CHECK(cli({"compare", a.string()}).code == 2);
}

TEST_CASE("config file, overridden by flags") {
  Files f;
  const auto conf = f.dir / "run.conf";
  testing::write_text(conf, "dataset = " + f.toy.string() +
                                "\nruns = 2\nouter-np = 5\nouter-fes = 10\nnp-min = 10\nnp-max = 10\n"
                                "maxfes-min = 60\nmaxfes-max = 80\nseed = 3\n");
  const auto from_file = cli({"experiment", "--config", conf.string()});
  REQUIRE(from_file.code == 0);
  CHECK(nlohmann::json::parse(from_file.out)["runs"].size() == 2);
  const auto overridden = cli({"experiment", "--config", conf.string(), "--runs", "3"});
  REQUIRE(overridden.code == 0);
  CHECK(nlohmann::json::parse(overridden.out)["runs"].size() == 3);
}

TEST_CASE("drop columns and pools from the command line") {
  Files f;
  const auto r = cli(with({"search", "--dataset", f.toy.string(), "--drop", "C", "--algorithm-pool", "ga",
                           "--metric-pool", "Supp,Conf", "--preprocess-pool", "MM"},
                          kFast));
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["dataset"]["attributes"] == 2);
  CHECK(j["runs"][0]["pipeline"]["algorithm"] == "GA");
}
