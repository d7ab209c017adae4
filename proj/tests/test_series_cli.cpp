#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "nonbark/errors.hpp"
#include "nonbark/presets.hpp"
#include "nonbark/series.hpp"

using namespace nonbark;
namespace fs = std::filesystem;

namespace {

std::string cli_bin() {
  const char* p = std::getenv("NONBARK_CLI_BIN");
  REQUIRE(p != nullptr);
  return p;
}

std::string preset_dir() {
  const char* p = std::getenv("NONBARK_PRESET_DIR");
  REQUIRE(p != nullptr);
  return p;
}

// fresh per-case scratch directory under the ctest working directory
std::string scratch(const std::string& name) {
  std::string dir = "cli_tmp/" + name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run_cli(const std::string& args, const std::string& log,
            const std::string& env_prefix = "") {
  std::string cmd =
      env_prefix + "\"" + cli_bin() + "\" " + args + " > " + log + " 2>&1";
  int rc = std::system(cmd.c_str());
  REQUIRE(rc != -1);
  return WEXITSTATUS(rc);
}

struct ParsedCsv {
  std::map<std::string, std::string> metadata;
  std::vector<std::vector<double>> rows;
  std::string coordinate;
  bool saw_header = false;
};

ParsedCsv parse_csv(const std::string& path) {
  ParsedCsv out;
  std::string text = read_text_file(path);
  size_t pos = 0;
  while (pos < text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(pos, end - pos);
    pos = end + 1;
    if (line.empty()) continue;
    if (line[0] == '#') {
      size_t eq = line.find('=');
      REQUIRE(eq != std::string::npos);
      std::string key = line.substr(2, eq - 2);
      std::string value = line.substr(eq + 1);
      if (key == "coordinate") {
        out.coordinate = value;
      } else {
        out.metadata[key] = value;
      }
      continue;
    }
    if (line == "coord,re_w,im_w,abs_w") {
      out.saw_header = true;
      continue;
    }
    std::vector<double> row;
    size_t field = 0;
    while (field <= line.size()) {
      size_t comma = line.find(',', field);
      if (comma == std::string::npos) comma = line.size();
      row.push_back(std::strtod(line.substr(field, comma - field).c_str(),
                                nullptr));
      field = comma + 1;
    }
    REQUIRE(row.size() == 4);
    out.rows.push_back(row);
  }
  return out;
}

}  // namespace

TEST_CASE("csv layout puts the coordinate first, metadata next, then rows") {
  WeakValueSeries s;
  s.coordinate = "x";
  s.metadata["alpha"] = "1";
  s.metadata["beta"] = "two words";
  s.add(2.0, Complex{0.5, -0.25});
  s.add(1.0, Complex{1.0, 0.0});
  s.sort_samples();
  std::string csv = to_csv(s);
  CHECK(csv.rfind("# coordinate=x\n", 0) == 0);
  CHECK(csv.find("# alpha=1\n") != std::string::npos);
  CHECK(csv.find("# beta=two words\n") != std::string::npos);
  CHECK(csv.find("coord,re_w,im_w,abs_w\n") != std::string::npos);
  // sorted: the coord-1 row precedes the coord-2 row
  CHECK(csv.find("\n1,1,0,1\n") < csv.find("\n2,0.5,-0.25,"));
}

TEST_CASE("empty series serializes to a header-only file") {
  WeakValueSeries s;
  s.coordinate = "t";
  std::string csv = to_csv(s);
  CHECK(csv == "# coordinate=t\ncoord,re_w,im_w,abs_w\n");
  WeakValueSeries back = from_json(to_json(s));
  CHECK(back.samples.empty());
  CHECK(back.coordinate == "t");
}

TEST_CASE("json round trip is byte-identical and lossless") {
  WeakValueSeries s;
  s.coordinate = "x";
  s.metadata["note"] = "quoted \"text\" and a\nnewline";
  s.metadata["tiny"] = "5e-324";
  s.add(3.14159265358979323846, Complex{1.0 / 3.0, -2.5e-17});
  s.add(-1.0, Complex{1e300, 0.0});
  s.add(0.0, Complex{0.0, 5e-324});
  s.sort_samples();
  std::string one = to_json(s);
  WeakValueSeries back = from_json(one);
  CHECK(to_json(back) == one);
  REQUIRE(back.samples.size() == 3);
  // exact double round trip through the 17-digit format
  CHECK(back.samples[2].coord == 3.14159265358979323846);
  CHECK(back.samples[2].re_w == 1.0 / 3.0);
  CHECK(back.samples[2].im_w == -2.5e-17);
  CHECK(back.samples[0].re_w == 1e300);
  CHECK(back.samples[1].im_w == 5e-324);
  CHECK(back.metadata.at("note") == "quoted \"text\" and a\nnewline");
}

TEST_CASE("malformed json is rejected with a file error") {
  CHECK_THROWS_AS(from_json("not json at all"), IoError);
  CHECK_THROWS_AS(from_json("{\"coordinate\": \"x\"}"), IoError);
  CHECK_THROWS_AS(read_text_file("no/such/file.json"), IoError);
}

TEST_CASE("shipped preset files carry the embedded bytes") {
  for (const auto& name : preset_names()) {
    std::string on_disk = read_text_file(preset_dir() + "/" + name + ".json");
    CHECK(on_disk == preset_config_text(name));
  }
  CHECK_THROWS_AS(preset_config_text("bogus"), ConfigError);
}

TEST_CASE("outside-spot preset emits the known peak") {
  std::string dir = scratch("fig2");
  REQUIRE(run_cli("preset fig2 --out " + dir, dir + "/log.txt") == 0);
  ParsedCsv csv = parse_csv(dir + "/fig2.csv");
  CHECK(csv.saw_header);
  CHECK(csv.coordinate == "x");
  CHECK(csv.metadata.at("spot_n") == "1");
  CHECK(csv.metadata.at("mode") == "tunnel_closed");
  REQUIRE(csv.rows.size() == 801);
  double peak = 0.0;
  for (const auto& row : csv.rows) peak = std::max(peak, row[3]);
  CHECK(std::fabs(peak - 14.104739588693905) < 0.01);
}

TEST_CASE("identical preset runs give byte-identical files") {
  std::string a = scratch("det_a");
  std::string b = scratch("det_b");
  REQUIRE(run_cli("preset fig2 --out " + a, a + "/log.txt") == 0);
  REQUIRE(run_cli("preset fig2 --out " + b, b + "/log.txt") == 0);
  CHECK(read_text_file(a + "/fig2.csv") == read_text_file(b + "/fig2.csv"));

  REQUIRE(run_cli("preset fig2 --format json --out " + a,
                  a + "/log2.txt") == 0);
  WeakValueSeries s = from_json(read_text_file(a + "/fig2.json"));
  CHECK(s.coordinate == "x");
  CHECK(s.samples.size() == 801);
  CHECK(s.metadata.at("kappa") == "1000");
  CHECK(s.metadata.at("T_over_Lv") == "6");
}

TEST_CASE("two-spot preset produces one file per spot and spreads advisory") {
  std::string dir = scratch("fig3");
  REQUIRE(run_cli("preset fig3 --out " + dir, dir + "/log.txt") == 0);
  CHECK(fs::exists(dir + "/fig3_spot_2_2.csv"));
  CHECK(fs::exists(dir + "/fig3_spot_1_1.csv"));
  CHECK(read_text_file(dir + "/log.txt").find("advisory:") !=
        std::string::npos);

  // inner spot B and outer spot D: peak ratio is the squared-reflection gain
  ParsedCsv inner = parse_csv(dir + "/fig3_spot_2_2.csv");
  ParsedCsv outer = parse_csv(dir + "/fig3_spot_1_1.csv");
  CHECK(inner.metadata.at("spot_x") == "200");
  CHECK(outer.metadata.at("spot_x") == "600");
  double peak_inner = 0.0, peak_outer = 0.0;
  for (const auto& r : inner.rows) peak_inner = std::max(peak_inner, r[3]);
  for (const auto& r : outer.rows) peak_outer = std::max(peak_outer, r[3]);
  CHECK(peak_outer / peak_inner == doctest::Approx(26.0).epsilon(1e-6));

  // worker count must not affect the bytes
  std::string j1 = scratch("fig3_j1");
  std::string j4 = scratch("fig3_j4");
  REQUIRE(run_cli("preset fig3 --jobs 1 --out " + j1, j1 + "/log.txt") == 0);
  REQUIRE(run_cli("preset fig3 --jobs 4 --out " + j4, j4 + "/log.txt") == 0);
  CHECK(read_text_file(j1 + "/fig3_spot_2_2.csv") ==
        read_text_file(j4 + "/fig3_spot_2_2.csv"));
  CHECK(read_text_file(j1 + "/fig3_spot_1_1.csv") ==
        read_text_file(j4 + "/fig3_spot_1_1.csv"));
}

TEST_CASE("catalogue preset lists every spot at the late post-selection") {
  std::string dir = scratch("fig1");
  REQUIRE(run_cli("preset fig1 --out " + dir, dir + "/log.txt") == 0);
  ParsedCsv csv = parse_csv(dir + "/fig1.csv");
  CHECK(csv.coordinate == "t");
  CHECK(csv.rows.size() == 4);
}

TEST_CASE("window-growth preset doubles by e squared over two extra lifetimes") {
  std::string dir = scratch("growth");
  REQUIRE(run_cli("preset atom-growth --out " + dir, dir + "/log.txt") == 0);
  ParsedCsv csv = parse_csv(dir + "/atom-growth.csv");
  REQUIRE(csv.rows.size() == 13);
  double at_6 = 0.0, at_8 = 0.0;
  for (const auto& r : csv.rows) {
    if (r[0] == 6.0) at_6 = r[3];
    if (r[0] == 8.0) at_8 = r[3];
  }
  REQUIRE(at_6 > 0.0);
  double e2 = std::exp(2.0);
  CHECK(at_8 / at_6 > 0.8 * e2);
  CHECK(at_8 / at_6 < 1.2 * e2);
}

TEST_CASE("run takes its stem from the config file name") {
  std::string dir = scratch("runcfg");
  std::string cfg = dir + "/myrun.json";
  write_text_file(cfg, "{\n"
                       "  \"model\": \"tunnel_closed\",\n"
                       "  \"params\": {\"b\": 1.0, \"mu\": 1000.0,"
                       " \"kappa\": 1000.0, \"k0\": 5000.0, \"L\": 100.0},\n"
                       "  \"T_over_Lv\": 6.0\n"
                       "}\n");
  REQUIRE(run_cli("run " + cfg + " --out " + dir, dir + "/log.txt") == 0);
  CHECK(fs::exists(dir + "/myrun.csv"));
}

TEST_CASE("config mistakes exit with status two") {
  std::string dir = scratch("badcfg");
  CHECK(run_cli("run " + dir + "/nope.json", dir + "/a.txt") == 2);
  CHECK(run_cli("preset bogus", dir + "/b.txt") == 2);

  std::string bad = dir + "/bad.json";
  write_text_file(bad, "{\"model\": \"tunnel_closed\", \"bogus\": 1}");
  CHECK(run_cli("run " + bad, dir + "/c.txt") == 2);
  CHECK(read_text_file(dir + "/c.txt").find("bogus") != std::string::npos);

  write_text_file(bad, "not json");
  CHECK(run_cli("run " + bad, dir + "/d.txt") == 2);

  CHECK(run_cli("preset fig1 --format xml --out " + dir, dir + "/e.txt") ==
        2);
}

TEST_CASE("output directory override and failure reporting") {
  std::string dir = scratch("outenv");
  std::string ignored = dir + "/ignored";
  std::string forced = dir + "/forced";
  fs::create_directories(ignored);
  // the environment wins over the flag
  REQUIRE(run_cli("preset fig1 --out " + ignored, dir + "/log.txt",
                  "NONBARK_OUT=" + forced + " ") == 0);
  CHECK(fs::exists(forced + "/fig1.csv"));
  CHECK_FALSE(fs::exists(ignored + "/fig1.csv"));

  // an unusable output directory is a runtime failure, not a config error
  std::string blocker = dir + "/blocker";
  write_text_file(blocker, "file in the way");
  CHECK(run_cli("preset fig1 --out " + dir, dir + "/log2.txt",
                "NONBARK_OUT=" + blocker + "/sub ") == 1);
}

TEST_CASE("fast check subcommand reports and passes") {
  std::string dir = scratch("checks");
  REQUIRE(run_cli("check --fast --out " + dir, dir + "/log.txt") == 0);
  std::string log = read_text_file(dir + "/log.txt");
  CHECK(log.find("PASS") != std::string::npos);
  CHECK(log.find("FAIL") == std::string::npos);
  std::string report = read_text_file(dir + "/checks_report.json");
  CHECK(report.find("\"fast_only\": true") != std::string::npos);
  CHECK(report.find("\"all_passed\": true") != std::string::npos);

  // the report is deterministic for a fixed seed
  std::string again = scratch("checks_again");
  REQUIRE(run_cli("check --fast --seed 1 --out " + again,
                  again + "/log.txt") == 0);
  CHECK(read_text_file(again + "/checks_report.json") == report);
}

TEST_CASE("refinement sweeps write their study reports") {
  std::string dir = scratch("sweeps");
  REQUIRE(run_cli("sweep atom-levels --out " + dir, dir + "/a.txt") == 0);
  std::string atoms = read_text_file(dir + "/sweep_atom-levels.json");
  CHECK(atoms.find("\"sum_shrinks\": true") != std::string::npos);

  REQUIRE(run_cli("sweep pde-grid --out " + dir, dir + "/b.txt") == 0);
  std::string grid = read_text_file(dir + "/sweep_pde-grid.json");
  CHECK(grid.find("\"second_order\": true") != std::string::npos);

  CHECK(run_cli("sweep nonsense --out " + dir, dir + "/c.txt") != 0);
}
