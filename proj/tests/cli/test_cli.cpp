// End-to-end checks of the command-line surface: exit codes, report text,
// determinism of serialized outputs.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "strawbn/io.hpp"
#include "strawbn/validate.hpp"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr interleaved
};

RunResult run_cli(const std::string& args) {
  const std::string command =
      std::string(STRAWBN_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 4096> buffer;
  RunResult result;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (std::fgets(buffer.data(), buffer.size(), pipe) != nullptr) {
    result.output += buffer.data();
  }
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string corpus() { return std::string(STRAWBN_DATA_DIR) + "/cancer.net"; }

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

TEST_CASE("validate") {
  SUBCASE("the corpus is ok") {
    auto r = run_cli("validate " + corpus());
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("ok") != std::string::npos);
  }

  SUBCASE("a broken network exits 1 and names the defect") {
    auto path = temp_file("strawbn_bad.net");
    std::ofstream(path) << "network \"bad\" {\n"
                           "  variable \"A\" {\n"
                           "    role: other\n"
                           "    states: \"x\", \"y\"\n"
                           "    cpt {\n"
                           "      row: 0.5, 0.6\n"
                           "    }\n"
                           "  }\n"
                           "}\n";
    auto r = run_cli("validate " + path.string());
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("bad-row-sum") != std::string::npos);
    std::filesystem::remove(path);
  }

  SUBCASE("--renormalize rescues near-miss rows") {
    auto path = temp_file("strawbn_renorm.net");
    std::ofstream(path) << "network \"bad\" {\n"
                           "  variable \"A\" {\n"
                           "    role: other\n"
                           "    states: \"x\", \"y\"\n"
                           "    cpt {\n"
                           "      row: 0.5, 0.6\n"
                           "    }\n"
                           "  }\n"
                           "}\n";
    auto r = run_cli("validate --renormalize " + path.string());
    CHECK(r.exit_code == 0);
    std::filesystem::remove(path);
  }

  SUBCASE("a missing file exits 1") {
    auto r = run_cli("validate /nonexistent/net.net");
    CHECK(r.exit_code == 1);
  }

  SUBCASE("a syntax error carries the line") {
    auto path = temp_file("strawbn_syntax.net");
    std::ofstream(path) << "network \"n\" {\n  variable 42 {\n";
    auto r = run_cli("validate " + path.string());
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("line 2") != std::string::npos);
    std::filesystem::remove(path);
  }
}

TEST_CASE("query prints the reference probabilities") {
  SUBCASE("pair of findings") {
    auto r = run_cli("query " + corpus() + " --ev Palpation=yes --ev Diabetes=yes");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("P(evidence) = 0.04517") != std::string::npos);
  }

  SUBCASE("marginal") {
    auto r = run_cli("query " + corpus() + " --marginal \"Breast Cancer\"");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("yes: 0.224") != std::string::npos);
  }

  SUBCASE("unknown state exits 1") {
    auto r = run_cli("query " + corpus() + " --ev Palpation=maybe");
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("maybe") != std::string::npos);
  }

  SUBCASE("findings file plus override") {
    auto path = temp_file("strawbn_findings.txt");
    std::ofstream(path) << "Palpation=yes\nDiabetes=no\n";
    auto r = run_cli("query " + corpus() + " --findings " + path.string() +
                     " --ev Diabetes=yes");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("warning") != std::string::npos);
    CHECK(r.output.find("P(evidence) = 0.04517") != std::string::npos);
    std::filesystem::remove(path);
  }
}

TEST_CASE("straw writes a valid, reloadable model") {
  auto out = temp_file("strawbn_straw_out.net");

  SUBCASE("bipartite") {
    auto r = run_cli("straw " + corpus() + " --kind bipartite --out " + out.string());
    CHECK(r.exit_code == 0);
    auto net = strawbn::load_network(out);
    CHECK(strawbn::validate_network(net).ok());
    CHECK(net.size() == 5);
    std::filesystem::remove(out);
  }

  SUBCASE("independent") {
    auto r = run_cli("straw " + corpus() + " --kind independent --out " + out.string());
    CHECK(r.exit_code == 0);
    auto net = strawbn::load_network(out);
    CHECK(net.size() == 8);
    for (const auto& cpt : net.cpts) CHECK(cpt.parents.empty());
    std::filesystem::remove(out);
  }

  SUBCASE("straw of a straw round-trips bytes") {
    auto r = run_cli("straw " + corpus() + " --kind bipartite --out " + out.string());
    REQUIRE(r.exit_code == 0);
    auto text1 = slurp(out);
    auto net = strawbn::load_network(out);
    CHECK(strawbn::serialize_network(net) == text1);
    std::filesystem::remove(out);
  }

  SUBCASE("impossible target configurations warn on stderr") {
    auto path = temp_file("strawbn_mirror.net");
    std::ofstream(path) << "network \"mirror\" {\n"
                           "  variable \"T1\" {\n"
                           "    role: target\n"
                           "    states: \"yes\", \"no\"\n"
                           "    cpt {\n"
                           "      row: 0.3, 0.7\n"
                           "    }\n"
                           "  }\n"
                           "  variable \"T2\" {\n"
                           "    role: target\n"
                           "    states: \"yes\", \"no\"\n"
                           "    parents: \"T1\"\n"
                           "    cpt {\n"
                           "      row: 1, 0\n"
                           "      row: 0, 1\n"
                           "    }\n"
                           "  }\n"
                           "  variable \"E\" {\n"
                           "    role: evidence\n"
                           "    states: \"on\", \"off\"\n"
                           "    parents: \"T1\"\n"
                           "    cpt {\n"
                           "      row: 0.9, 0.1\n"
                           "      row: 0.2, 0.8\n"
                           "    }\n"
                           "  }\n"
                           "}\n";
    auto r = run_cli("straw " + path.string() + " --kind bipartite --out " +
                     out.string());
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("warning") != std::string::npos);
    CHECK(r.output.find("probability zero") != std::string::npos);
    CHECK(strawbn::validate_network(strawbn::load_network(out)).ok());
    std::filesystem::remove(path);
    std::filesystem::remove(out);
  }
}

TEST_CASE("conflict") {
  SUBCASE("the reference pair alarms the bipartite straw") {
    auto r = run_cli("conflict " + corpus() +
                     " --ev Palpation=yes --ev Diabetes=yes --kind bipartite");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("P_given(evidence) = 0.04517") != std::string::npos);
    CHECK(r.output.find("P_straw = 0.06203") != std::string::npos);
    CHECK(r.output.find("verdict = conflict") != std::string::npos);
  }

  SUBCASE("both kinds disagree on the triple") {
    auto r = run_cli("conflict " + corpus() +
                     " --ev Palpation=yes --ev X-ray=yes --ev Diabetes=yes");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("bipartite") != std::string::npos);
    CHECK(r.output.find("independent") != std::string::npos);
    CHECK(r.output.find("verdict = conflict") != std::string::npos);
    CHECK(r.output.find("verdict = no-conflict") != std::string::npos);
  }

  SUBCASE("--exit-on-conflict escalates to exit 3") {
    auto r = run_cli("conflict " + corpus() +
                     " --ev Palpation=yes --ev Diabetes=yes --kind bipartite" +
                     " --exit-on-conflict");
    CHECK(r.exit_code == 3);
  }

  SUBCASE("findings on a non-evidence variable exit 1") {
    auto r = run_cli("conflict " + corpus() + " --ev Gender=male");
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("Gender") != std::string::npos);
  }
}

TEST_CASE("experiment is deterministic and tabular") {
  const std::string args =
      "experiment --targets 2 --evidence 2 --other 2 --states 2 --density 0.6"
      " --strength 0.8 --epsilon 0.5 --cases 200 --seed 99";
  auto a = run_cli(args);
  auto b = run_cli(args);
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
  CHECK(a.output.find("kind\tn\tdetection_rate\tfalse_alarm_rate\tseed") !=
        std::string::npos);
  CHECK(a.output.find("bipartite\t200\t") != std::string::npos);
  CHECK(a.output.find("independent\t200\t") != std::string::npos);
}

TEST_CASE("check-bound prints one row per kind and K") {
  auto r = run_cli("check-bound " + corpus() +
                   " --kind both --K 1,2 --cases 2000 --seed 5");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("kind\tK\tbound\texceedance\tn\tseed") != std::string::npos);
  CHECK(r.output.find("bipartite\t1\t0.500000\t") != std::string::npos);
  CHECK(r.output.find("bipartite\t2\t0.250000\t") != std::string::npos);
  CHECK(r.output.find("independent\t1\t") != std::string::npos);
  CHECK(r.output.find("independent\t2\t") != std::string::npos);
}

TEST_CASE("usage errors exit 1") {
  CHECK(run_cli("straw " + corpus() + " --kind both --out /tmp/x.net").exit_code == 1);
  CHECK(run_cli("conflict " + corpus() + " --kind sideways --ev Palpation=yes")
            .exit_code == 1);
  CHECK(run_cli("nonsense").exit_code == 1);
  CHECK(run_cli("conflict " + corpus()).exit_code == 1);  // no findings
  auto dup = run_cli("query " + corpus() + " --ev Palpation=yes --ev Palpation=no");
  CHECK(dup.exit_code == 1);
  CHECK(dup.output.find("twice") != std::string::npos);
}
