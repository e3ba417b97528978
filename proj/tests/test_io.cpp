#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "gdalab/circuit_io.hpp"
#include "gdalab/instance.hpp"
#include "gdalab/point_io.hpp"
#include "gdalab/report.hpp"

using namespace gdalab;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "gdalab-test-io";
  fs::create_directories(dir);
  return dir / name;
}

const fs::path kInstances = GDALAB_INSTANCE_DIR;

}  // namespace

TEST_CASE("circuit round trip") {
  auto ledger = make_ledger();
  for (const char* name : {"nor_ring.json", "purify_nor.json", "oracle_xor.json", "oracle_not_ring.json",
                           "constant_gadget.json"}) {
    const Circuit c = load_circuit(kInstances / name, ledger);
    CHECK(validate_instance(c).empty());
    const json j = circuit_to_json(c);
    const Circuit back = circuit_from_json(j, ledger);
    CHECK(circuit_to_json(back) == j);
    CHECK(back.nodes() == c.nodes());
    const auto path = scratch(name);
    save_circuit(path, c);
    CHECK(circuit_to_json(load_circuit(path, ledger)) == j);
  }
}

TEST_CASE("canonical gate order does not depend on insertion order") {
  auto ledger = make_ledger();
  auto a = fx::nodes({"a", "b", "c"});
  a->add_purify("a", "b", "c");
  a->add_nor("b", "c", "a");
  auto b = fx::nodes({"a", "b", "c"});
  b->add_nor("b", "c", "a");
  b->add_purify("a", "b", "c");
  CHECK(circuit_to_json(*a).dump() == circuit_to_json(*b).dump());
  CHECK(circuit_to_json(*a).at("gates")[0].at("type") == "NOR");
}

TEST_CASE("truth tables: string form and bit order") {
  auto ledger = make_ledger();
  const json j = {{"nodes", {"a", "b", "c"}},
                  {"gates", {{{"type", "PURIFY"}, {"in", {"a"}}, {"out", {"b", "c"}}},
                             {{"type", "ORACLE"}, {"in", {"b", "c"}}, {"out", "a"}}}},
                  {"oracle", {{"kind", "truth_table"}, {"arity", 2}, {"data", "0100"}}}};
  const Circuit c = circuit_from_json(j, ledger);
  REQUIRE(c.oracle().has_value());
  // index = b + 2c, so only (b, c) = (1, 0) is true
  const std::vector<std::uint8_t> b10{1, 0}, b01{0, 1};
  CHECK(c.oracle()->query(b10));
  CHECK_FALSE(c.oracle()->query(b01));
}

TEST_CASE("malformed circuits are config errors") {
  auto ledger = make_ledger();
  CHECK_THROWS_AS(circuit_from_json(json::array(), ledger), ConfigError);
  CHECK_THROWS_AS(circuit_from_json(json{{"nodes", {"a"}}, {"gates", {{{"type", "XOR"}, {"in", {"a"}}, {"out", "a"}}}}},
                                    ledger),
                  ConfigError);
  const json bad_table = {{"nodes", {"a"}},
                          {"gates", json::array()},
                          {"oracle", {{"kind", "truth_table"}, {"arity", 1}, {"data", "012"}}}};
  CHECK_THROWS_AS(circuit_from_json(bad_table, ledger), ConfigError);
  const json short_table = {{"nodes", {"a"}},
                            {"gates", json::array()},
                            {"oracle", {{"kind", "truth_table"}, {"arity", 2}, {"data", {0, 1}}}}};
  CHECK_THROWS_AS(circuit_from_json(short_table, ledger), ConfigError);
  CHECK_THROWS_AS(load_circuit(scratch("missing.json"), ledger), ConfigError);
  std::ofstream(scratch("garbage.json")) << "{nodes: ";
  CHECK_THROWS_AS(read_json_file(scratch("garbage.json")), ConfigError);
}

TEST_CASE("point files") {
  const std::vector<double> v{0.0, 1.0, 0.1, 1.0 / 3.0, 5e-324, 0.9999999999999999};
  for (const char* name : {"p.csv", "p.bin", "p.f64", "p.txt"}) {
    const auto path = scratch(name);
    write_point_file(path, v);
    CHECK(read_point_file(path) == v);
  }
  CHECK(point_format_for("x.bin") == PointFormat::Binary);
  CHECK(point_format_for("x.csv") == PointFormat::Csv);
  CHECK(fs::file_size(scratch("p.bin")) == v.size() * 8);

  std::ofstream(scratch("loose.csv")) << "# x then y\n0.5, 0.25\n0.75 1\n";
  CHECK(read_point_file(scratch("loose.csv")) == std::vector<double>{0.5, 0.25, 0.75, 1.0});
  std::ofstream(scratch("bad.csv")) << "0.5, abc\n";
  CHECK_THROWS_AS(read_point_file(scratch("bad.csv")), ConfigError);
  std::ofstream(scratch("odd.bin"), std::ios::binary) << "12345";
  CHECK_THROWS_AS(read_point_file(scratch("odd.bin")), ConfigError);
}

TEST_CASE("problem descriptors") {
  auto toy = load_problem(kInstances / "bilinear.json");
  CHECK(toy.problem().mode_tag() == "bilinear");
  CHECK(toy.problem().tolerance() == 1e-6);
  CHECK(toy.gda == nullptr);

  auto scaled = load_problem(kInstances / "gda_nor_ring.json");
  REQUIRE(scaled.gda != nullptr);
  CHECK(scaled.problem().dim() == 36);
  CHECK(scaled.problem().mode_tag() == "scaled");
  CHECK(scaled.descriptor.at("circuit").is_object());

  try {
    load_problem(kInstances / "gda_paper.json");
    FAIL("paper mode should be refused");
  } catch (const PaperModeRequest& e) {
    CHECK(e.report.m == 3);
    CHECK(e.report.magnitudes.log2_n > 64.0);
  }

  CHECK_THROWS_AS(load_problem(json{{"toy", "saddle"}}, kInstances), ConfigError);
  CHECK_THROWS_AS(load_problem(json{{"circuit", "nor_ring.json"}, {"mode", "scaled"}, {"delta", 0.1}, {"n", 3},
                                    {"eps", 1e-4}},
                               kInstances),
                  ConfigError);
  CHECK_THROWS_AS(load_problem(json{{"circuit", "nope.json"}, {"mode", "scaled"}}, kInstances), ConfigError);
}

TEST_CASE("report directory resolution") {
  ::unsetenv(kReportDirEnv);
  CHECK(resolve_report_dir(std::nullopt, "fallback") == fs::path("fallback"));
  ::setenv(kReportDirEnv, "/tmp/from-env", 1);
  CHECK(resolve_report_dir(std::nullopt, "fallback") == fs::path("/tmp/from-env"));
  CHECK(resolve_report_dir(std::string("flag"), "fallback") == fs::path("flag"));
  ::setenv(kReportDirEnv, "", 1);
  CHECK(resolve_report_dir(std::nullopt, "fallback") == fs::path("fallback"));
  ::unsetenv(kReportDirEnv);
}

TEST_CASE("written reports are identical across runs") {
  BilinearToy toy;
  SolverConfig cfg;
  cfg.steps = 100;
  cfg.gap_every = 10;
  auto read = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  const auto a = write_report(scratch("ra"), {run_extragradient(toy, cfg)}, toy.ledger()->snapshot(), "bilinear");
  const auto sa = read(a.summary), ca = read(a.curves);
  BilinearToy toy2;
  const auto b = write_report(scratch("rb"), {run_extragradient(toy2, cfg)}, toy2.ledger()->snapshot(), "bilinear");
  CHECK(read(b.summary) == sa);
  CHECK(read(b.curves) == ca);
  CHECK(json::parse(sa).at("mode") == "bilinear");
}
