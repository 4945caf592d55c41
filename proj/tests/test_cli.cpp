#include <csf/spec_io.hpp>

#include "fixtures.hpp"
#include "schema_check.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

using namespace csf;
using namespace csf::testing;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

CliResult run_cli(const std::string& args) {
  const std::string out_file = "/tmp/csf_cli_out.txt";
  const std::string err_file = "/tmp/csf_cli_err.txt";
  const std::string command =
      std::string(CSF_CLI_PATH) + " " + args + " >" + out_file + " 2>" + err_file;
  const int status = std::system(command.c_str());
  CliResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = slurp(out_file);
  result.err = slurp(err_file);
  return result;
}

std::string fixture(const std::string& name) {
  return std::string(CSF_FIXTURES_DIR) + "/" + name;
}

nlohmann::json schema() {
  std::ifstream in(CSF_SCHEMA_FILE);
  REQUIRE(in.good());
  return nlohmann::json::parse(in);
}

}  // namespace

TEST_CASE("enumerate") {
  SUBCASE("structures of three players at size two") {
    const CliResult r = run_cli("enumerate --players 3 --max-size 2 --structures");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("structures (n=3, k=2): 4") != std::string::npos);
    CHECK(r.out.find("1,2|3") != std::string::npos);
  }
  SUBCASE("a single player has a single structure") {
    const CliResult r = run_cli("enumerate --players 1 --max-size 1");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("structures (n=1, k=1): 1") != std::string::npos);
  }
  SUBCASE("bad bounds exit 1 with a diagnostic") {
    const CliResult r = run_cli("enumerate --players 2 --max-size 3");
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("invalid-bounds") != std::string::npos);
    CHECK(r.out.empty());
  }
  SUBCASE("json validates against the schema") {
    const CliResult r = run_cli("enumerate --players 4 --max-size 2 --json");
    CHECK(r.exit_code == 0);
    std::string error;
    CHECK_MESSAGE(schema_validate(schema(), nlohmann::json::parse(r.out), error), error);
  }
}

TEST_CASE("solve") {
  SUBCASE("pure method lists the four bold cells") {
    const CliResult r = run_cli("solve --spec " + fixture("pd.json") + " --method pure");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("equilibria: 4") != std::string::npos);
    CHECK(r.out.find("payoffs: -2 -2") != std::string::npos);
  }
  SUBCASE("support method reports the component and distribution") {
    const CliResult r = run_cli("solve --spec " + fixture("pd.json") + " --json");
    CHECK(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    std::string error;
    CHECK_MESSAGE(schema_validate(schema(), doc, error), error);
    bool found_mixture = false;
    for (const auto& eq : doc["equilibria"]) {
      for (const auto& entry : eq["structure_distribution"]) {
        if (entry["structure"] == "1|2" && entry["p"] == "3/4") found_mixture = true;
      }
    }
    CHECK(found_mixture);
  }
  SUBCASE("identical invocations produce byte-identical json") {
    const CliResult a = run_cli("solve --spec " + fixture("pd.json") + " --json");
    const CliResult b = run_cli("solve --spec " + fixture("pd.json") + " --json");
    CHECK(a.out == b.out);
  }
  SUBCASE("replicator on a cycling game with a tiny budget exits 2") {
    // Unique interior equilibrium away from uniform; three steps cannot
    // reach 1e-6.
    GameSpec spec;
    spec.player_names = {"1", "2"};
    spec.k_max = 1;
    spec.shared_labels = std::vector<std::string>{"a", "b"};
    spec.payoffs.push_back({"1|2", {"a", "a"}, {Rational(3), Rational(-3)}});
    spec.payoffs.push_back({"1|2", {"a", "b"}, {Rational(-1), Rational(1)}});
    spec.payoffs.push_back({"1|2", {"b", "a"}, {Rational(-1), Rational(1)}});
    spec.payoffs.push_back({"1|2", {"b", "b"}, {Rational(1), Rational(-1)}});
    const std::string path = "/tmp/csf_cli_cycler.json";
    std::ofstream(path) << serialize_spec(spec);

    const CliResult r =
        run_cli("solve --spec " + path + " --method replicator --steps 3 --step-size 0.01");
    CHECK(r.exit_code == 2);
    CHECK(r.out.find("unconverged") != std::string::npos);

    const CliResult ok = run_cli("solve --spec " + path + " --method support");
    CHECK(ok.exit_code == 0);
  }
  SUBCASE("missing spec file exits 1") {
    const CliResult r = run_cli("solve --spec /tmp/does_not_exist.json");
    CHECK(r.exit_code == 1);
  }
}

TEST_CASE("example") {
  SUBCASE("default payoffs write the bundled game") {
    const std::string path = "/tmp/csf_cli_example.json";
    const CliResult r = run_cli("example pd --out " + path);
    CHECK(r.exit_code == 0);
    CHECK(parse_spec_file(path) == pd_spec(2));
  }
  SUBCASE("custom payoffs and size") {
    const std::string path = "/tmp/csf_cli_example_k1.json";
    const CliResult r = run_cli("example pd --payoffs 1,-1,2,0 --max-size 1 --out " + path);
    CHECK(r.exit_code == 0);
    CHECK(parse_spec_file(path) ==
          generate_pd(Rational(1), Rational(-1), Rational(2), Rational(0), 1));
  }
  SUBCASE("unknown example exits 1") {
    CHECK(run_cli("example nope --out /tmp/x.json").exit_code == 1);
  }
}

TEST_CASE("stability") {
  SUBCASE("single spec file derives the whole family") {
    const CliResult r =
        run_cli("stability --spec " + fixture("pd.json") + " --criterion strong --json");
    CHECK(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    std::string error;
    CHECK_MESSAGE(schema_validate(schema(), doc, error), error);
    REQUIRE(doc["stability"].size() == 1);
    CHECK(doc["stability"][0]["stable"] == false);
    REQUIRE(!doc["stability"][0]["distribution_witness"].empty());
    CHECK(doc["stability"][0]["distribution_witness"][0]["structure"] == "1|2");
  }
  SUBCASE("explicit per-K files agree with the derived family") {
    const CliResult derived =
        run_cli("stability --spec " + fixture("pd.json") + " --criterion local --json");
    const CliResult explicit_files = run_cli("stability --spec " + fixture("pd_k1.json") + " " +
                                             fixture("pd.json") + " --criterion local --json");
    CHECK(derived.exit_code == 0);
    CHECK(explicit_files.exit_code == 0);
    CHECK(derived.out == explicit_files.out);
  }
  SUBCASE("local verdicts hold for the dilemma family") {
    const CliResult r =
        run_cli("stability --spec " + fixture("pd.json") + " --criterion local --mode forall");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("K=2: stable") != std::string::npos);
  }
}
