#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gpam/config.hpp"
#include "gpam/field_io.hpp"
#include "gpam/report.hpp"
#include "oracles.hpp"

using namespace gpam;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("gpam_io_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("field text format round trip") {
  const SpectralField u = oracle::random_field(Grid(32), 10, 4, 1e-3);
  std::stringstream s;
  write_field(s, u);
  CHECK(s.str().rfind("GPAM-FIELD v1 n=32\n", 0) == 0);
  const SpectralField back = read_field(s);
  CHECK(back == u);
}

TEST_CASE("field reader is lenient about layout but not symmetry") {
  std::istringstream ok(
      "GPAM-FIELD v1 n=8\n# comment\n\n-1 0 0.5 -0.25\n0 0 2 0\n1 0 0.5 0.25\n");
  const SpectralField u = read_field(ok);
  CHECK(u.coeff(1, 0) == cplx{0.5, 0.25});
  CHECK(u.mean() == cplx{2.0, 0.0});

  std::istringstream lopsided("GPAM-FIELD v1 n=8\n1 0 0.5 0.25\n");
  CHECK_THROWS_AS(read_field(lopsided), Error);
  std::istringstream bad_header("GPAM-FIELD v2 n=8\n");
  CHECK_THROWS_AS(read_field(bad_header), Error);
  std::istringstream bad_mode("GPAM-FIELD v1 n=8\n9 0 1 0\n-9 0 1 0\n");
  CHECK_THROWS_AS(read_field(bad_mode), Error);
  CHECK_THROWS_AS(read_field(fs::path("/nonexistent/field.txt")), Error);
}

TEST_CASE("enhanced pair files") {
  const fs::path dir = scratch("enh");
  EnhancedPair p{oracle::random_field(Grid(16), 4, 1), oracle::random_field(Grid(16), 4, 2)};
  p.second.add_constant(-3.5);
  write_enhanced(dir / "lift.enh", p, 0.8);
  double alpha = 0.0;
  const EnhancedPair back = read_enhanced(dir / "lift.enh", &alpha);
  CHECK(alpha == 0.8);
  CHECK(back.first == p.first);
  CHECK(back.second == p.second);
  CHECK(fs::exists(dir / "lift.first.field"));
  fs::remove_all(dir);
}

TEST_CASE("config parsing") {
  Config c = Config::parse("# header\n a = 1.5 \nb=2..5\nlist=1, 2,3\nflag=true\nname=x # tail\n");
  CHECK(c.get_double("a") == 1.5);
  CHECK(c.get_range("b", {0, 0}) == std::pair{2, 5});
  CHECK(c.get_range("missing", {3, 4}) == std::pair{3, 4});
  CHECK(c.get_doubles("list", {}) == std::vector<double>{1, 2, 3});
  CHECK(c.get_bool("flag"));
  CHECK(c.get_string("name") == "x");
  CHECK(c.get_int("missing", 7) == 7);
  CHECK_THROWS_AS(c.get_int("a"), Error);
  CHECK_THROWS_AS(c.get_double("missing"), Error);
  CHECK_THROWS_AS(c.get_bool("name"), Error);

  c.assign("a=2");
  CHECK(c.get_int("a") == 2);
  CHECK_THROWS_AS(c.assign("novalue"), Error);
  CHECK_THROWS_AS(c.require_known({"a", "b"}), Error);
  CHECK_NOTHROW(c.require_known({"a", "b", "list", "flag", "name"}));

  Config d;
  d.set("a", "9");
  c.merge(d);
  CHECK(c.get_uint("a") == 9u);
  CHECK(Config::parse(c.to_text()).entries() == c.entries());
  CHECK(parse_range("4") == std::pair{4, 4});
  CHECK_THROWS_AS(parse_range("5..2"), Error);
  CHECK_THROWS_AS(Config::parse("no equals sign\n"), Error);
}

TEST_CASE("csv round trip") {
  CsvTable t;
  t.header = {"name", "value"};
  t.add_row({"plain", "1.5"});
  t.add_row({"with,comma", ""});
  t.add_row({"with \"quote\"", "nan"});
  t.add_row({"line\nbreak", "-2"});
  const std::string text = to_csv(t);
  const CsvTable back = parse_csv(text);
  CHECK(back.header == t.header);
  CHECK(back.rows == t.rows);
  CHECK(back.number(0, "value") == 1.5);
  CHECK(std::isnan(back.number(1, "value")));
  CHECK(std::isnan(back.number(2, "value")));
  CHECK_THROWS_AS(back.column("missing"), Error);
  CHECK_THROWS_AS(t.add_row({"short"}), Error);

  const CsvTable crlf = parse_csv("a,b\r\n1,2\r\n");
  CHECK(crlf.rows.size() == 1);
  CHECK(crlf.cell(0, "b") == "2");
}

TEST_CASE("verdict text") {
  Verdict v;
  CHECK_FALSE(v.pass());
  v.checks.push_back({"first", true, "ok"});
  CHECK(v.pass());
  v.checks.push_back({"second", false, "bad"});
  CHECK_FALSE(v.pass());
  CHECK(v.to_text() == "FAIL\npass first: ok\nFAIL second: bad\n");
}

TEST_CASE("report directory") {
  const fs::path dir = scratch("report");
  ExperimentReport r;
  r.name = "demo";
  r.params.set("alpha", "0.75");
  r.table.header = {"x"};
  r.table.add_row({"1"});
  r.verdict.checks.push_back({"c", true, ""});
  r.plots.push_back({"curve", {1, 2}, {3, 4}});
  r.partition_hash = "abc";
  write_report(dir, r);
  const Config m = Config::read(dir / "manifest.txt");
  CHECK(m.get_string("meta.kind") == "experiment");
  CHECK(m.get_string("meta.experiment") == "demo");
  CHECK(m.get_string("meta.verdict") == "PASS");
  CHECK(m.get_string("meta.version") == code_version());
  CHECK(m.get_double("alpha") == 0.75);
  CHECK(read_csv(dir / "report.csv").rows == r.table.rows);
  CHECK(fs::exists(dir / "plots" / "curve.dat"));
  fs::remove_all(dir);
}
