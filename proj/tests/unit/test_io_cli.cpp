#include "fixtures.hpp"

#include <degenkit/io.hpp>
#include <degenkit/random.hpp>

#include "cli.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace degenkit;
using namespace testdata;

namespace {

const std::filesystem::path kFixtures = DEGENKIT_FIXTURE_DIR;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "degenkit");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return (kFixtures / (name + ".json")).string(); }

}  // namespace

TEST(Parse, Degeneration) {
  const InputDocument doc = load_document(fixture("uniformized_surface"));
  ASSERT_EQ(doc.kind, DocumentKind::Degeneration);
  EXPECT_EQ(doc.datum.closed_rank, 2u);
  EXPECT_EQ(doc.datum.branches[0].specialization, uniformization().branches[0].specialization);
  EXPECT_EQ(doc.datum.branches[1].pairing, (IntMatrix{{1}}));
}

TEST(Parse, Graph) {
  const InputDocument doc = load_document(fixture("genus2_graph"));
  ASSERT_EQ(doc.kind, DocumentKind::Graph);
  EXPECT_EQ(doc.graph.edges.size(), 2u);
  EXPECT_EQ(doc.graph.edges[1].multiplicity(1), 1);
  EXPECT_EQ(doc.graph.edges[1].multiplicity(0), 0);
}

TEST(Parse, Errors) {
  EXPECT_THROW(parse_document("{"), InputError);
  try {
    parse_document("{\n  \"format_version\": \"1\",\n  oops\n}");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(e.where().find("line 3"), std::string::npos);
  }
  EXPECT_THROW(parse_document(R"({"format_version": "2", "closed_point": {"rank": 0}, "branches": []})"), InputError);
  EXPECT_THROW(parse_document(R"({"format_version": "1", "residue_char": 0, "abelian_rank": 0, "closed_point": {"rank": 0}, "branches": [], "extra": 1})"),
               InputError);
  try {
    parse_document(R"({"format_version": "1", "residue_char": 0, "abelian_rank": 0, "closed_point": {"rank": 1},
      "branches": [{"rank": 1, "specialization": [[1]], "pairing": [["x"]]}]})");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(e.where().find("branches[0].pairing"), std::string::npos);
  }
  EXPECT_THROW(load_document(kFixtures / "no_such_file.json"), InputError);
}

TEST(Parse, BigIntegersAsStrings) {
  const InputDocument doc = parse_document(R"({"format_version": "1", "residue_char": 0, "abelian_rank": 0, "closed_point": {"rank": 1},
      "branches": [{"rank": 1, "specialization": [[1]], "pairing": [["123456789012345678901234567890"]]}]})");
  EXPECT_EQ(doc.datum.branches[0].pairing(0, 0), Integer("123456789012345678901234567890"));
  EXPECT_NE(to_json(doc.datum).find("\"123456789012345678901234567890\""), std::string::npos);
}

TEST(Parse, RoundTripAndDigest) {
  Rng rng(61);
  for (int k = 0; k < 100; ++k) {
    InputDocument a;
    a.datum = random_datum(rng);
    const InputDocument b = parse_document(to_json(a.datum));
    EXPECT_EQ(canonical_json(a), canonical_json(b));
    InputDocument g;
    g.kind = DocumentKind::Graph;
    g.graph = random_graph(rng);
    EXPECT_EQ(canonical_json(parse_document(to_json(g.graph))), canonical_json(g));
  }
  // FNV-1a 64 reference values.
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ull);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cull);
  EXPECT_EQ(digest_hex(0xabcull), "0000000000000abc");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(invoke({"analyze", fixture("uniformized_surface")}).code, cli::kOk);
  EXPECT_EQ(invoke({"analyze", "uniformized_surface"}).code, cli::kOk);
  EXPECT_EQ(invoke({"analyze", "missing_fixture"}).code, cli::kInputError);
  EXPECT_EQ(invoke({"oracle", "single_branch_char5", "--l", "5"}).code, cli::kInputError);
  EXPECT_EQ(invoke({"trait", "uniformized_surface", "--profile", "1"}).code, cli::kInputError);
  EXPECT_EQ(invoke({"nonsense"}).code, cli::kInputError);
  EXPECT_EQ(invoke({"--help"}).code, cli::kOk);
  const CliRun bad = invoke({"analyze", "--json", "-"});
  EXPECT_EQ(bad.code, cli::kInputError);
}

TEST(Cli, InvalidDatumListsViolations) {
  const auto path = std::filesystem::temp_directory_path() / "degenkit_invalid.json";
  {
    std::ofstream f(path);
    f << R"({"format_version": "1", "residue_char": 0, "abelian_rank": 0, "closed_point": {"rank": 1},
      "branches": [{"rank": 1, "specialization": [[2]], "pairing": [[-1]]}]})";
  }
  const CliRun r = invoke({"analyze", path.string()});
  EXPECT_EQ(r.code, cli::kInputError);
  EXPECT_NE(r.err.find("specialization not surjective"), std::string::npos);
  EXPECT_NE(r.err.find("pairing not positive definite"), std::string::npos);
  std::filesystem::remove(path);
}

TEST(Cli, FixtureDirectoryFromEnvironment) {
  const auto dir = std::filesystem::temp_directory_path() / "degenkit_env_fixtures";
  std::filesystem::create_directories(dir);
  std::filesystem::copy_file(fixture("product_tate"), dir / "renamed.json",
                             std::filesystem::copy_options::overwrite_existing);
  ::setenv("DEGENKIT_FIXTURES", dir.c_str(), 1);
  const CliRun found = invoke({"analyze", "renamed", "--json"});
  const CliRun lost = invoke({"analyze", "uniformized_surface"});
  ::unsetenv("DEGENKIT_FIXTURES");
  EXPECT_EQ(found.code, cli::kOk);
  EXPECT_EQ(lost.code, cli::kInputError);
  std::filesystem::remove_all(dir);
}

TEST(Cli, JsonAndTextAgree) {
  const CliRun j = invoke({"trait", "uniformized_surface", "--profile", "2,3", "--json"});
  const CliRun t = invoke({"trait", "uniformized_surface", "--profile", "2,3"});
  ASSERT_EQ(j.code, cli::kOk);
  ASSERT_EQ(t.code, cli::kOk);
  const auto doc = nlohmann::json::parse(j.out);
  EXPECT_EQ(doc["command"], "trait");
  EXPECT_EQ(doc["falsification"], false);
  EXPECT_NE(t.out.find("input_digest: " + doc["input_digest"].get<std::string>()), std::string::npos);
  EXPECT_NE(t.out.find("falsification: no"), std::string::npos);
  EXPECT_EQ(doc["input_digest"], digest_hex(fnv1a64(canonical_json(load_document(fixture("uniformized_surface"))))));
  // Same flag accepted before the subcommand.
  EXPECT_EQ(invoke({"--json", "trait", "uniformized_surface", "--profile", "2,3"}).out, j.out);
}

TEST(Cli, GenerateIsDeterministicAndParses) {
  for (const std::string kind : {"ta", "random", "graph"}) {
    const CliRun a = invoke({"generate", "--seed", "17", "--kind", kind});
    ASSERT_EQ(a.code, cli::kOk) << a.err;
    EXPECT_EQ(a.out, invoke({"generate", "--seed", "17", "--kind", kind}).out);
    EXPECT_NO_THROW(parse_document(a.out));
  }
  EXPECT_EQ(invoke({"generate", "--seed", "1", "--kind", "other"}).code, cli::kInputError);
}
