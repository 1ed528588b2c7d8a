#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "strawbn/errors.hpp"
#include "strawbn/harness.hpp"
#include "strawbn/io.hpp"
#include "strawbn/straw.hpp"
#include "strawbn/validate.hpp"
#include "test_helpers.hpp"

using namespace strawbn;
using testutil::cancer_network;

TEST_CASE("the bundled corpus parses to the reference network") {
  auto net = load_network(testutil::data_dir() + "/cancer.net");
  CHECK(net == cancer_network());
  CHECK(validate_network(net).ok());
}

TEST_CASE("serialize/parse round trip") {
  SUBCASE("corpus") {
    auto net = cancer_network();
    CHECK(parse_network(serialize_network(net)) == net);
  }

  SUBCASE("bipartite straw of the corpus") {
    auto straw = build_bipartite_straw(cancer_network());
    CHECK(parse_network(serialize_network(straw.network)) == straw.network);
  }

  SUBCASE("serialization is canonical") {
    auto net = cancer_network();
    auto text = serialize_network(net);
    CHECK(serialize_network(parse_network(text)) == text);
    CHECK(serialize_network(net) == text);
  }

  SUBCASE("generated networks with full-precision probabilities") {
    for (std::uint32_t seed = 0; seed < 10; ++seed) {
      NetSpec spec{2, 2, 2, 2 + seed % 2, 0.6, seed};
      auto net = generate_diagnostic_network(spec);
      CHECK(parse_network(serialize_network(net)) == net);
    }
  }

  SUBCASE("names needing escapes survive") {
    Network net;
    net.name = "odd \"name\" with \\ backslash";
    net.variables = {{"A \"quoted\"", {"x", "y"}, Role::Other}};
    net.cpts = {{0, {}, {{0.5, 0.5}}}};
    CHECK(parse_network(serialize_network(net)) == net);
  }
}

TEST_CASE("network parse errors carry a line or a variable") {
  SUBCASE("empty document") {
    CHECK_THROWS_AS(parse_network(""), ParseError);
  }

  SUBCASE("typo in a parent name is reported with the name") {
    std::string text = R"(network "n" {
  variable "Age" {
    role: other
    states: "a", "b"
    cpt {
      row: 0.5, 0.5
    }
  }
  variable "X" {
    role: evidence
    states: "x", "y"
    parents: "Agee"
    cpt {
      row: 1, 0
      row: 0, 1
    }
  }
}
)";
    CHECK_THROWS_WITH_AS(parse_network(text),
                         doctest::Contains("unknown parent \"Agee\""),
                         ParseError);
  }

  SUBCASE("missing role") {
    std::string text = R"(network "n" {
  variable "A" {
    states: "x", "y"
    cpt {
      row: 0.5, 0.5
    }
  }
}
)";
    CHECK_THROWS_WITH_AS(parse_network(text), doctest::Contains("role"),
                         ParseError);
  }

  SUBCASE("unknown role value") {
    std::string text = R"(network "n" {
  variable "A" {
    role: sometimes
    states: "x", "y"
    cpt {
      row: 0.5, 0.5
    }
  }
}
)";
    CHECK_THROWS_WITH_AS(parse_network(text), doctest::Contains("unknown role"),
                         ParseError);
  }

  SUBCASE("duplicate variable") {
    std::string text = R"(network "n" {
  variable "A" {
    role: other
    states: "x", "y"
    cpt {
      row: 0.5, 0.5
    }
  }
  variable "A" {
    role: other
    states: "x", "y"
    cpt {
      row: 0.5, 0.5
    }
  }
}
)";
    CHECK_THROWS_WITH_AS(parse_network(text), doctest::Contains("already declared"),
                         ParseError);
  }

  SUBCASE("line numbers point at the defect") {
    try {
      parse_network("network \"n\" {\n  variable 42 {\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
  }
}

TEST_CASE("findings parsing") {
  auto net = cancer_network();

  SUBCASE("the reference findings") {
    auto e = parse_findings("Palpation=yes, Diabetes=yes", net);
    CHECK(e == testutil::evidence_of({{"Palpation", "yes"}, {"Diabetes", "yes"}}));
  }

  SUBCASE("quoted names and newline separators") {
    auto e = parse_findings("\"Breast Cancer\" = yes\nPalpation = no", net);
    CHECK(e.assignments.at("Breast Cancer") == "yes");
    CHECK(e.assignments.at("Palpation") == "no");
  }

  SUBCASE("unknown state") {
    CHECK_THROWS_WITH_AS(parse_findings("Palpation=maybe", net),
                         doctest::Contains("no state \"maybe\""), ParseError);
  }

  SUBCASE("unknown variable") {
    CHECK_THROWS_WITH_AS(parse_findings("Palpitation=yes", net),
                         doctest::Contains("unknown variable"), ParseError);
  }

  SUBCASE("duplicate assignment") {
    CHECK_THROWS_WITH_AS(parse_findings("Palpation=yes, Palpation=no", net),
                         doctest::Contains("assigned twice"), ParseError);
  }

  SUBCASE("empty text gives empty evidence") {
    CHECK(parse_findings("", net).empty());
    CHECK(parse_findings("# just a comment\n", net).empty());
  }
}

TEST_CASE("property: malformed input fails with ParseError, never crashes") {
  const std::string canonical = serialize_network(cancer_network());
  std::mt19937_64 gen(8675309);
  auto uniform = [&gen](std::size_t n) {
    return static_cast<std::size_t>(gen() % n);
  };

  SUBCASE("every truncation either parses or throws ParseError") {
    for (int i = 0; i < 120; ++i) {
      auto cut = uniform(canonical.size());
      try {
        (void)parse_network(canonical.substr(0, cut));
      } catch (const ParseError&) {
      }
    }
  }

  SUBCASE("random single-byte mutations") {
    static const char kBytes[] = "{}:,\"#x0.\n\\";
    for (int i = 0; i < 200; ++i) {
      std::string text = canonical;
      text[uniform(text.size())] = kBytes[uniform(sizeof kBytes - 1)];
      try {
        (void)parse_network(text);
      } catch (const ParseError&) {
      }
    }
  }

  SUBCASE("garbage findings") {
    auto net = cancer_network();
    for (const char* text : {"=", "a=", "=b", "Palpation", "Palpation==yes",
                             "\"unterminated", "Palpation=yes,,", "{}"}) {
      CHECK_THROWS_AS((void)parse_findings(text, net), ParseError);
    }
  }
}

TEST_CASE("format_sig renders four significant digits") {
  CHECK(format_sig(0.045169) == "0.04517");
  CHECK(format_sig(0.25160000000000005) == "0.2516");
  CHECK(format_sig(1.0) == "1");
  CHECK(format_sig(0.0) == "0");
}

TEST_CASE("load/save round trip through the filesystem") {
  auto net = cancer_network();
  auto path = std::filesystem::temp_directory_path() / "strawbn_io_test.net";
  save_network(path, net);
  CHECK(load_network(path) == net);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_network(path), Error);
}
