#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "drsys/core.hpp"
#include "drsys/description.hpp"
#include "drsys/gallery.hpp"
#include "drsys/otw.hpp"
#include "drsys/report.hpp"
#include "drsys/suites.hpp"
#include "json.hpp"

using namespace drs;
using nlohmann::json;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path scratch_dir(const std::string& name) {
  auto d = std::filesystem::temp_directory_path() / ("drsys_test_" + name);
  std::filesystem::remove_all(d);
  return d;
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("catalog entries build at min, default and max depth") {
  for (const auto& e : gallery_catalog()) {
    CAPTURE(e.id);
    CHECK(e.min_depth <= e.default_depth);
    CHECK(e.default_depth <= e.max_depth);
    auto g = build_gallery(e.id);
    CHECK(g.depth == e.default_depth);
    CHECK(g.id == e.id);
    CHECK(is_subset(g.expected_omega, g.system.all()));
    CHECK(is_subset(g.K, g.system.all()));
    CHECK(intersect(g.expected_omega, g.expected_wandering).empty());
    CHECK_FALSE(g.schedule.empty());
    CHECK(build_gallery(e.id, e.min_depth).system.size() <= g.system.size());
    CHECK_THROWS_AS(build_gallery(e.id, e.min_depth - 1), SystemError);
    CHECK_THROWS_AS(build_gallery(e.id, e.max_depth + 1), SystemError);
  }
  CHECK_THROWS_AS(build_gallery("no-such-system"), SystemError);
}

TEST_CASE("known nonwandering sets are invariant") {
  for (const auto& e : gallery_catalog()) {
    CAPTURE(e.id);
    auto g = build_gallery(e.id);
    CHECK(check_invariance(g.system, g.expected_omega).both());
  }
}

TEST_CASE("gallery descriptions round trip") {
  for (const auto& e : gallery_catalog()) {
    CAPTURE(e.id);
    auto g = build_gallery(e.id, e.min_depth);
    auto d = describe_gallery(g);
    auto back = parse_description(json::parse(to_json(d).dump()));
    CHECK(to_json(back) == to_json(d));
    auto m = materialize(back);
    CHECK(m.system.size() == g.system.size());
    CHECK(m.expected_omega == g.expected_omega);
    for (std::size_t i = 0; i < g.system.size(); ++i) CHECK(m.system.point(i) == g.system.point(i));
  }
}

TEST_CASE("table descriptions") {
  json doc = {{"system_id", "tiny"},
              {"kind", "table"},
              {"dom_clopen", true},
              {"compact_space", true},
              {"parameters", {{"points", {0.0, 0.5, 1.0}}, {"map", {1, 0, nullptr}}}}};
  auto g = materialize(parse_description(doc));
  CHECK(g.system.size() == 3);
  CHECK(g.system.domain() == PointSet{0, 1});
  CHECK(g.K == g.system.all());

  auto bad = doc;
  bad["parameters"]["map"] = {5, 0, nullptr};
  CHECK_THROWS_AS(materialize(parse_description(bad)), SystemError);
  bad = doc;
  bad.erase("kind");
  CHECK_THROWS_AS(parse_description(bad), SystemError);
  bad = doc;
  bad["kind"] = "torus";
  CHECK_THROWS(parse_description(bad));
  bad = doc;
  bad["kind"] = "cantor";
  CHECK_THROWS_AS(materialize(parse_description(bad)), SystemError);
  bad = doc;
  bad["parameters"] = {{"gallery", "doubling-line"}};
  CHECK_THROWS_AS(materialize(parse_description(bad)), SystemError);
}

TEST_CASE("otw descriptions") {
  json doc = {{"system_id", "golden"},
              {"kind", "otw"},
              {"dom_clopen", true},
              {"compact_space", true},
              {"parameters",
               {{"first_symbol", 0},
                {"alphabet_bound", 1},
                {"infinite_alphabet", false},
                {"cylinder_depth", 4},
                {"metric", "prefix"},
                {"forbidden", {{1, 1}}},
                {"enumeration", {{"max_prefix", 2}, {"max_period", 3}}}}}};
  auto g = materialize(parse_description(doc));
  REQUIRE(g.system.subshift() != nullptr);
  CHECK(g.system.subshift()->use_prefix_metric);
  for (std::size_t i = 0; i < g.system.size(); ++i) CHECK(g.system.subshift()->allows(g.system.point(i).element()));
  auto bad = doc;
  bad["parameters"]["metric"] = "euclid";
  CHECK_THROWS_AS(materialize(parse_description(bad)), SystemError);

  json listed = doc;
  listed["parameters"] = {{"first_symbol", 1},
                          {"alphabet_bound", 6},
                          {"cylinder_depth", 3},
                          {"elements",
                           {{{"prefix", json::array()}, {"rule", "affine"}, {"a", 1}, {"b", 1}},
                            {{"prefix", {3}}, {"period", {1, 2}}},
                            {{"finite", json::array()}}}}};
  auto h = materialize(parse_description(listed));
  CHECK(h.system.index_of(Point(otw::OtwElement::empty_word())).has_value());
}

TEST_CASE("load_description reports missing files and bad json") {
  auto dir = scratch_dir("load");
  std::filesystem::create_directories(dir);
  CHECK_THROWS_AS(load_description((dir / "missing.json").string()), SystemError);
  {
    std::ofstream(dir / "bad.json") << "{ not json";
  }
  CHECK_THROWS_AS(load_description((dir / "bad.json").string()), SystemError);
  auto d = describe_gallery(build_gallery("cantor-times-3", 3));
  write_atomic((dir / "ok.json").string(), to_json(d).dump(2));
  CHECK(to_json(load_description((dir / "ok.json").string())) == to_json(d));
  std::filesystem::remove_all(dir);
}

TEST_CASE("atomic writes create parents and replace content") {
  auto dir = scratch_dir("atomic");
  auto path = dir / "a" / "b" / "out.txt";
  write_atomic(path.string(), "first");
  CHECK(slurp(path) == "first");
  write_atomic(path.string(), "second");
  CHECK(slurp(path) == "second");
  std::size_t files = 0;
  for ([[maybe_unused]] const auto& f : std::filesystem::directory_iterator(path.parent_path())) ++files;
  CHECK(files == 1);
  std::filesystem::remove_all(dir);
}

TEST_CASE("entropy report and table") {
  auto g = build_gallery("otw-full-shift", 6);
  auto rep = estimate_entropy(g.system, g.K, g.schedule);
  RunInfo info{"estimate", g.id, {{"depth", 6}}, 7};
  auto j = entropy_report_json(rep, info);
  CHECK(j.at("version") == kToolVersion);
  CHECK(j.at("command") == "estimate");
  CHECK(j.at("seed") == 7);
  CHECK(j.dump().find("provenance") != std::string::npos);
  auto csv = entropy_table_csv(rep);
  CHECK(csv.rfind("n,eps,", 0) == 0);
  CHECK(lines(csv) == rep.cells.size() + 1);
}

TEST_CASE("partition report and table") {
  auto g = build_gallery("half-domain-interval", 6);
  auto part = partition_omega(g.system, g.policy);
  auto j = partition_json(g.system, part, g.policy, {"classify", g.id, {}, 0});
  CHECK(j.at("command") == "classify");
  auto csv = partition_table_csv(g.system, part);
  CHECK(lines(csv) == g.system.size() + 1);
}

TEST_CASE("verify documents quote awkward fields") {
  std::vector<CheckRow> rows{{"s", "a,b", true, "say \"hi\""}, {"s", "plain", false, ""}};
  auto j = verify_json(rows, {"verify", "s", {}, 1});
  CHECK(j.at("all_pass") == false);
  auto csv = verify_table_csv(rows);
  CHECK(csv.find("\"a,b\"") != std::string::npos);
  CHECK(csv.find("\"say \"\"hi\"\"\"") != std::string::npos);
  rows.pop_back();
  CHECK(verify_json(rows, {"verify", "s", {}, 1}).at("all_pass") == true);
}
