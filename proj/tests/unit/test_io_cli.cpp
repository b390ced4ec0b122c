#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "plift/cli.hpp"
#include "plift/error.hpp"
#include "plift/io.hpp"
#include "plift/verify.hpp"

using namespace plift;

namespace {

std::string config_path(const std::string& name) { return std::string(PLIFT_CONFIG_DIR) + "/" + name; }

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int status = run(args, out, err);
  return {status, out.str(), err.str()};
}

std::string parse_error_of(std::string_view text) {
  try {
    parse_config(text, "cfg.json");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
    return e.what();
  }
  return "";
}

std::string temp_file(const std::string& name, const std::string& text) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << text;
  return p.string();
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("config parsing") {
    const Config c = parse_config(R"({"points": 6, "lines": [[1,2,3],[1,5,6],[2,4,6],[3,4,5]]})");
    CHECK(c == quadset_config());
    CHECK(parse_config(config_to_json(grid3x4_config())) == grid3x4_config());
    CHECK(load_config(config_path("grid3x3.json")) == grid3x3_config());
    CHECK(load_config(config_path("grid3x4.json")) == grid3x4_config());
    CHECK(load_config(config_path("forest_path.json")) == forest_path_config());
  }

  TEST_CASE("parse errors carry source and line") {
    CHECK(parse_error_of("{\n  \"points\": 6,\n  \"lines\": [[1,2,3],\n  oops]\n}").find("parse-error: cfg.json:4:") == 0);
    CHECK(parse_error_of("{\n  \"points\": \"six\",\n  \"lines\": []\n}").find("parse-error: cfg.json:2:") == 0);
    CHECK(parse_error_of("{\"points\": 4,\n\"lines\": [[1, 2, \"x\"]]}").find("parse-error: cfg.json:2:") == 0);
    CHECK(parse_error_of("[1, 2]").find("parse-error: cfg.json:1:") == 0);
    CHECK_THROWS_AS(parse_config(R"({"points": 4, "lines": [[1,2,3],[1,2,4]]})"), Error);
    try {
      parse_config(R"({"points": 4, "lines": [[1,2,3],[1,2,4]]})");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::InvalidConfig);
    }
    try {
      load_config("/nonexistent/config.json");
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("/nonexistent/config.json:") != std::string::npos);
    }
  }

  TEST_CASE("abscissas and realisations round trip") {
    const QVector x{rat(-3, 4), Rat(0), Rat(7), rat(22, 7)};
    CHECK(parse_abscissas(abscissas_to_json(x)) == x);
    CHECK(parse_abscissas(R"(["1/2", 3, "-4"])") == QVector{rat(1, 2), Rat(3), Rat(-4)});
    CHECK_THROWS_AS(parse_abscissas(R"({"abscissas": ["1/0"]})"), Error);
    SampleSpec s;
    s.seed = 3;
    const Realisation r = sample(s);
    CHECK(parse_realisation(realisation_to_json(r)) == r);
    CHECK_THROWS_AS(parse_realisation(R"({"columns": [["1","2"]]})"), Error);
  }
}

TEST_SUITE("cli") {
  TEST_CASE("check") {
    const Run g = cli({"check", config_path("grid3x3.json")});
    CHECK(g.status == kExitOk);
    const auto j = nlohmann::json::parse(g.out);
    CHECK(j["verdict"] == "liftable");
    CHECK(j["genericRank"] == 6);
    CHECK(j["omega"] == 1);

    const auto q = nlohmann::json::parse(cli({"check", config_path("quadset.json")}).out);
    CHECK(q["verdict"] == "not-liftable");
    CHECK(q["quasi"] == "quasi-liftable");
    CHECK(nlohmann::json::parse(cli({"check", config_path("grid3x4.json"), "--deterministic"}).out)["genericRank"] ==
          10);
  }

  TEST_CASE("lift exit statuses") {
    const Run ok = cli({"lift", config_path("grid3x3.json"), temp_file("x9.json", abscissas_to_json(random_abscissas(9, 77)))});
    CHECK(ok.status == kExitOk);
    CHECK(nlohmann::json::parse(ok.out)["kind"] == "realising");
    CHECK(cli({"qs-lift", "0", "1", "2", "3", "4", "5"}).status == kExitNoLift);
    CHECK(nlohmann::json::parse(cli({"qs-lift", "0", "1", "2", "3", "4", "5"}).out)["kind"] == "none");
    const Run dup = cli({"qs-lift", "0", "1", "2", "3", "4", "4"});
    CHECK(dup.status == kExitFailure);
    CHECK(dup.err.find("error:") == 0);
    CHECK(cli({"qs-lift", "0", "1", "2"}).status == kExitFailure);
    CHECK(cli({"lift", config_path("quadset.json"), "/nonexistent.json"}).status == kExitFailure);
  }

  TEST_CASE("check variants on projected configurations") {
    SampleSpec s;
    s.seed = 4;
    const auto p = random_projection(sample(s), 4);
    REQUIRE(p);
    std::vector<std::string> args{"qs-check"};
    for (const Rat& x : p->abscissas) args.push_back(to_string(x));
    const Run r = cli(args);
    CHECK(r.status == kExitOk);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["rank"] == 3);
    CHECK(j["generatorsVanish"] == true);
    args[0] = "qs-lift";
    CHECK(cli(args).status == kExitOk);

    const Run generic = cli({"qs-check", "0", "1", "2", "3", "4", "-5/2"});
    CHECK(generic.status == kExitNoLift);
    CHECK(nlohmann::json::parse(generic.out)["generatorsVanish"] == false);
    CHECK(cli({"grid-check", "0", "1", "4", "9", "-16", "25", "-36", "49", "64/3", "81", "-100", "121/7"}).status == kExitNoLift);
  }

  TEST_CASE("gens and formats") {
    const Run j = cli({"gens", "qs", "--format", "json"});
    CHECK(j.status == kExitOk);
    CHECK(nlohmann::json::parse(j.out)["generators"].size() == 14);
    CHECK(cli({"gens", "qs", "--format", "latex"}).status == kExitFailure);
    CHECK(cli({"gens", "nothing"}).status == kExitFailure);
    const Run rad = cli({"gens", "radical:" + config_path("forest_two_lines.json"), "--format", "json"});
    CHECK(rad.status == kExitOk);
    CHECK(nlohmann::json::parse(rad.out)["points"] == 5);
  }

  TEST_CASE("verify and table1") {
    const Run v = cli({"verify", "tfae-qs", "--trials", "3", "--seed", "9"});
    CHECK(v.status == kExitOk);
    CHECK(nlohmann::json::parse(v.out)["passed"] == 3);
    CHECK(cli({"verify", "nothing"}).status == kExitFailure);
    const Run t = cli({"table1"});
    CHECK(t.status == kExitOk);
    CHECK(nlohmann::json::parse(t.out)["passed"] == 17);
  }

  TEST_CASE("identical invocations give identical bytes") {
    for (const std::vector<std::string>& args :
         {std::vector<std::string>{"check", config_path("quadset.json"), "--seed", "3"},
          std::vector<std::string>{"lift", config_path("quadset.json"), config_path("abscissas_generic6.json")},
          std::vector<std::string>{"gens", "qs", "--format", "cas"},
          std::vector<std::string>{"verify", "decomposition-qs", "--trials", "2"}}) {
      const Run a = cli(args), b = cli(args);
      CHECK(a.status == b.status);
      CHECK(a.out == b.out);
    }
  }

  TEST_CASE("usage errors") {
    CHECK(cli({}).status == kExitFailure);
    CHECK(cli({"frobnicate"}).status == kExitFailure);
    CHECK(cli({"check"}).status == kExitFailure);
    CHECK(cli({"--help"}).status == kExitOk);
  }
}
