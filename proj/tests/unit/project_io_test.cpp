#include "dcbam/project_io.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "dcbam/errors.hpp"
#include "gridstix.hpp"

using namespace dcbam;
using dcbam::testing::fixture_path;

namespace fs = std::filesystem;

namespace {

std::string fixture_text() { return read_text_file(fixture_path("gridstix.dcbam.json")); }

Json fixture_json() { return Json::parse(fixture_text()); }

Project random_project(std::mt19937_64& rng) {
  Project p = load_project(fixture_text());
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  // weights: random positive split of 100 with arbitrary fractions
  std::vector<double> cuts{0.0, 100.0};
  for (std::size_t i = 1; i < p.weights.entries.size(); ++i) cuts.push_back(100.0 * unit(rng));
  std::sort(cuts.begin(), cuts.end());
  double sum = 0.0;
  for (std::size_t i = 0; i < p.weights.entries.size(); ++i) {
    p.weights.entries[i].score = cuts[i + 1] - cuts[i];
    sum += p.weights.entries[i].score;
  }
  p.weights.entries.back().score += 100.0 - sum;
  for (auto& d : p.dads) {
    for (auto& [qa, c] : d.contrib) c = 2.0 * unit(rng) - 1.0;
    d.raw_cost = 1.0 + 99.0 * unit(rng);
  }
  for (auto& pf : p.portfolios) {
    for (auto& [id, v] : pf.base_values) v = 5000.0 * unit(rng);
  }
  p.lattice_defaults.v_s = 1e4 * unit(rng);
  p.lattice_defaults.r = 0.1 * unit(rng);
  p.lattice_defaults.u = 1.0 + p.lattice_defaults.r + 0.01 + unit(rng);
  p.lattice_defaults.d = (1.0 + p.lattice_defaults.r) * (0.1 + 0.89 * unit(rng));
  p.lattice_defaults.horizons = 1 + static_cast<int>(rng() % 10);
  p.name = "generated-" + std::to_string(rng() % 1000);
  return p;
}

}  // namespace

TEST(ProjectIo, FixtureLoads) {
  const auto p = load_project_file(fixture_path("gridstix.dcbam.json"));
  EXPECT_EQ(p.schema_version, 1);
  EXPECT_EQ(p.weights.entries.size(), 6u);
  EXPECT_EQ(p.dads.size(), 8u);
  EXPECT_DOUBLE_EQ(p.weights.sum(), 100.0);
  EXPECT_EQ(p.portfolio("P57").dad_ids, (std::vector<std::string>{"DAD5", "DAD7"}));
  EXPECT_THROW(p.portfolio("nope"), ReferenceError);
  EXPECT_EQ(p.lattice_defaults.convention, DiscountConvention::paper_1minus);
}

TEST(ProjectIo, SaveOfLoadIsByteIdentical) {
  const auto text = fixture_text();
  EXPECT_EQ(save_project(load_project(text)), text);
}

TEST(ProjectIo, RoundTripsGeneratedProjects) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 100; ++i) {
    const Project p = random_project(rng);
    ASSERT_NO_THROW(validate_project(p));
    const auto text = save_project(p);
    const Project back = load_project(text);
    EXPECT_EQ(back, p) << text;
    EXPECT_EQ(save_project(back), text);
  }
}

TEST(ProjectIo, ContributionOutOfRange) {
  auto doc = fixture_json();
  doc["dads"][0]["contrib"]["Reliability"] = 1.5;
  try {
    load_project(doc.dump());
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("/dads/0"), std::string::npos) << e.what();
  }
}

TEST(ProjectIo, DanglingPortfolioReference) {
  auto doc = fixture_json();
  doc["portfolios"][0]["dad_ids"][0] = "DAD9";
  doc["portfolios"][0]["base_values"] = Json::object();
  try {
    load_project(doc.dump());
    FAIL() << "expected ReferenceError";
  } catch (const ReferenceError& e) {
    EXPECT_EQ(e.id(), "DAD9");
  }
}

TEST(ProjectIo, DanglingScenarioCandidate) {
  auto doc = fixture_json();
  doc["scenarios"][0]["candidate_dads"].push_back("DAD42");
  EXPECT_THROW(load_project(doc.dump()), ReferenceError);
}

TEST(ProjectIo, UnsupportedSchemaVersion) {
  auto doc = fixture_json();
  doc["schema_version"] = 2;
  try {
    load_project(doc.dump());
    FAIL() << "expected VersionError";
  } catch (const VersionError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("2"), std::string::npos);
    EXPECT_NE(what.find("supported versions: 1"), std::string::npos);
  }
}

TEST(ProjectIo, SyntaxErrorReportsLine) {
  try {
    load_project("{\n  \"name\": \"x\",\n  oops\n}\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(e.location().find("line 3"), std::string::npos) << e.location();
  }
}

TEST(ProjectIo, UnknownKeyReportsPointer) {
  auto doc = fixture_json();
  doc["dads"][2]["colour"] = "blue";
  try {
    load_project(doc.dump());
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(e.location().find("/dads/2"), std::string::npos) << e.location();
  }
}

TEST(ProjectIo, WeightSumChecked) {
  auto doc = fixture_json();
  doc["quality_attributes"][0]["score"] = 30;  // total 110
  EXPECT_THROW(load_project(doc.dump()), ValidationError);
}

TEST(ProjectIo, BadLatticeDefaults) {
  auto doc = fixture_json();
  doc["lattice_defaults"]["d"] = 1.01;
  EXPECT_THROW(load_project(doc.dump()), NoArbitrageError);
}

TEST(ProjectIo, ResolvePortfolioSpecs) {
  const auto p = load_project(fixture_text());
  EXPECT_EQ(resolve_portfolio(p, "P5").id, "P5");
  EXPECT_EQ(resolve_portfolio(p, "DAD5,DAD7").id, "P57");
  const auto adhoc = resolve_portfolio(p, "DAD1,DAD2");
  EXPECT_EQ(adhoc.dad_ids, (std::vector<std::string>{"DAD1", "DAD2"}));
  EXPECT_DOUBLE_EQ(adhoc.budget, p.budget);
  EXPECT_THROW(resolve_portfolio(p, ""), ValidationError);
}

TEST(ProjectIo, AtomicSaveReplacesFile) {
  const auto dir = fs::temp_directory_path() / "dcbam_project_io_test";
  fs::create_directories(dir);
  const auto path = dir / "copy.dcbam.json";
  write_text_file_atomic(path, "stale");
  auto p = load_project(fixture_text());
  p.name = "renamed";
  save_project_file(path, p);
  EXPECT_EQ(load_project_file(path), p);
  EXPECT_FALSE(fs::exists(path.string() + ".tmp"));
  fs::remove_all(dir);
}

TEST(ProjectIo, MissingFile) {
  EXPECT_THROW(load_project_file("/nonexistent/dir/x.dcbam.json"), ParseError);
}

TEST(CsvImport, ContribTable) {
  const auto table = import_contrib_table(read_text_file(fixture_path("table4_contrib.csv")));
  EXPECT_EQ(table.row_count(), 8u);
  EXPECT_EQ(table.qa_names.size(), 6u);
  EXPECT_EQ(table.column_count(), 8u);
  EXPECT_EQ(table.rows[4].dad_id, "DAD5");
  EXPECT_DOUBLE_EQ(table.rows[4].contrib.at("EnergyEfficiency"), -0.6);
  EXPECT_DOUBLE_EQ(table.rows[4].raw_cost, 45);
  // agrees with the project fixture
  const auto p = load_project(fixture_text());
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    EXPECT_EQ(table.rows[i].contrib, p.dads[i].contrib);
    EXPECT_EQ(table.rows[i].raw_cost, p.dads[i].raw_cost);
  }
}

TEST(CsvImport, HeaderOnly) {
  const auto table = import_contrib_table("dad_id,Performance,cost\n");
  EXPECT_EQ(table.row_count(), 0u);
  EXPECT_EQ(table.qa_names, (std::vector<std::string>{"Performance"}));
}

TEST(CsvImport, NonNumericCellLocated) {
  try {
    import_contrib_table("dad_id,Performance,cost\nA,0.1,10\nB,0.2,10\nC,abc,10\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.location(), "row 3, column 2");
  }
}

TEST(CsvImport, OutOfBoundsValues) {
  EXPECT_THROW(import_contrib_table("dad_id,Performance,cost\nA,1.5,10\n"), ValidationError);
  EXPECT_THROW(import_contrib_table("dad_id,Performance,cost\nA,0.5,101\n"), ValidationError);
  EXPECT_THROW(import_contrib_table(""), ParseError);
  EXPECT_THROW(import_contrib_table("name,Performance,cost\n"), ParseError);
}

TEST(CsvImport, RatingsTable) {
  const auto m = import_ratings_table(read_text_file(fixture_path("sc1_ratings.csv")));
  EXPECT_EQ(m.items, (std::vector<std::string>{"DAD1", "DAD3", "DAD5", "DAD7"}));
  EXPECT_EQ(m.raters.size(), 3u);
  EXPECT_NEAR(kendalls_w(m), 0.8222222222222222, 1e-12);
  const auto any = import_table(read_text_file(fixture_path("sc1_ratings.csv")), TableKind::ratings);
  EXPECT_TRUE(std::holds_alternative<RatingMatrix>(any));
  EXPECT_THROW(import_ratings_table("rater,A,B\nx,1,z\n"), ParseError);
  // rank range is checked when the matrix is used
  EXPECT_THROW(kendalls_w(import_ratings_table("rater,A,B\nx,1,9\ny,1,2\n")), ValidationError);
}
