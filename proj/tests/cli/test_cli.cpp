#include "radproj/cyclo.hpp"
#include "radproj/generators.hpp"

#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

const std::string kCli = RADPROJ_CLI;
const fs::path kGolden = RADPROJ_GOLDEN_DIR;
const fs::path kData = RADPROJ_CLI_DATA_DIR;

fs::path work_dir() {
  static const fs::path dir = [] {
    const fs::path d = fs::path(RADPROJ_CLI_WORK_DIR) / "cli_work";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string out(const std::string& name) { return (work_dir() / name).string(); }

int run(const std::string& args) {
  const std::string cmd = kCli + " " + args + " > " + out("stdout.txt") + " 2> " + out("stderr.txt");
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "missing file ", p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') lines.push_back(line);
  return lines;
}

nlohmann::json read_json(const std::string& path) { return nlohmann::json::parse(slurp(path)); }

} // namespace

TEST_SUITE("cli") {

TEST_CASE("generate lattice count") {
  REQUIRE(run("generate --set z2 --radius 10 -o " + out("z2.csv")) == 0);
  const auto lines = data_lines(slurp(out("z2.csv")));
  CHECK(lines.front() == "x,y");
  CHECK(lines.size() - 1 == 317);
}

TEST_CASE("generate poisson is deterministic") {
  REQUIRE(run("generate --set poisson --radius 10 --seed 7 -o " + out("p1.csv")) == 0);
  REQUIRE(run("generate --set poisson --radius 10 --seed 7 --threads 3 -o " + out("p2.csv")) == 0);
  CHECK(slurp(out("p1.csv")) == slurp(out("p2.csv")));
}

TEST_CASE("generated octagonal points pass the membership test") {
  REQUIRE(run("generate --set ab --radius 20 -o " + out("ab.csv")) == 0);
  const auto lines = data_lines(slurp(out("ab.csv")));
  REQUIRE(lines.size() > 1);
  CHECK(lines.front() == "x1_a,x1_b,x2_a,x2_b,module");
  const radproj::CmsSpec spec = radproj::cms_ab();
  const auto& t = radproj::CycloTag::octagonal();
  for (std::size_t i = 1; i < lines.size(); ++i) {
    long long c[4];
    char module[16] = {};
    REQUIRE(std::sscanf(lines[i].c_str(), "%lld,%lld,%lld,%lld,%15s", &c[0], &c[1], &c[2], &c[3], module) == 5);
    CHECK(std::string(module) == "zeta8");
    const radproj::ModulePoint x{radproj::QuadInt{c[0], c[1], t.ring}, radproj::QuadInt{c[2], c[3], t.ring}, t};
    CHECK(radproj::cms_member(spec, x, 20));
  }
}

TEST_CASE("output headers carry the configuration") {
  REQUIRE(run("generate --set tt --radius 5 --window-rotation 0.25 -o " + out("tt.csv")) == 0);
  const std::string text = slurp(out("tt.csv"));
  CHECK(text.find("# artifact: radproj ") == 0);
  CHECK(text.find("# config.window_rotation: 0.25\n") != std::string::npos);
  CHECK(text.find("# generator: tt\n") != std::string::npos);
}

TEST_CASE("config file with flag overrides") {
  {
    std::ofstream cfg(out("run.cfg"));
    cfg << "# lattice run\nset = z2\nradius = 40\nbin_width = 0.05\n";
  }
  REQUIRE(run("pipeline --config " + out("run.cfg") + " --radius 25 -o " + out("cfgrun")) == 0);
  const auto j = read_json(out("cfgrun.summary.json"));
  CHECK(j["config"]["radius"] == "25");
  CHECK(j["config"]["bin_width"] == "0.05");
  CHECK(j["summary"]["radius"] == 25.0);
  std::ofstream bad(out("bad.cfg"));
  bad << "set = z2\nradius: 4\n";
  bad.close();
  CHECK(run("pipeline --config " + out("bad.cfg") + " -o " + out("bad")) == 2);
  CHECK(slurp(out("stderr.txt")).find("bad.cfg:2") != std::string::npos);
}

TEST_CASE("lattice pipeline summary") {
  REQUIRE(run("pipeline --set z2 --radius 400 -o " + out("z2run")) == 0);
  const auto j = read_json(out("z2run.summary.json"));
  CHECK(std::abs(j["summary"]["min_gap"].get<double>() - 0.304) < 0.01);
  CHECK(j["comparison"]["reference"] == "g");
  CHECK(fs::exists(out("z2run.hist.csv")));
  CHECK_FALSE(fs::exists(out("z2run.svg")));
}

TEST_CASE("poisson pipeline against the exponential") {
  REQUIRE(run("pipeline --set poisson --radius 180 --seed 11 --reference exp -o " + out("prun")) == 0);
  const auto j = read_json(out("prun.summary.json"));
  CHECK(j["summary"]["visible"].get<std::size_t>() >= 100000);
  CHECK(j["comparison"]["ks"].get<double>() <= 0.01);
  CHECK(j["summary"]["min_gap"].get<double>() < 0.01);
}

TEST_CASE("identical runs give identical bytes") {
  const std::string base = "pipeline --set tt --radius 60 --gaps --svg --no-timestamp";
  REQUIRE(run(base + " --threads 1 -o " + out("r1")) == 0);
  REQUIRE(run(base + " --threads 4 -o " + out("r2")) == 0);
  for (const char* ext : {".hist.csv", ".summary.json", ".gaps.csv", ".svg"})
    CHECK(slurp(out(std::string("r1") + ext)) == slurp(out(std::string("r2") + ext)));
  REQUIRE(run("pipeline --set tt --radius 60 --svg -o " + out("r3")) == 0);
  const std::string stamped = slurp(out("r3.svg"));
  CHECK(stamped.find("generated") != std::string::npos);
  CHECK(slurp(out("r1.svg")).find("generated") == std::string::npos);
  CHECK(slurp(out("r1.svg")).find("<polyline") != std::string::npos);
}

TEST_CASE("fit round trip and errors") {
  REQUIRE(run("pipeline --set z2 --radius 400 --gaps -o " + out("fitrun")) == 0);
  REQUIRE(run("fit " + out("fitrun.gaps.csv") + " --fit-lo 3 --fit-hi 30 -o " + out("fit1.json")) == 0);
  const auto j = read_json(out("fit1.json"));
  CHECK(j["tail_fit"]["fit_range"][0] == 3.0);
  CHECK(j["source"] == "fitrun.gaps.csv");
  REQUIRE(run("fit " + out("fit1.json") + " -o " + out("fit2.json")) == 0);
  CHECK(slurp(out("fit1.json")) == slurp(out("fit2.json")));
  CHECK(run("fit " + out("fitrun.gaps.csv") + " --fit-lo 5 --fit-hi 5") == 2);
  CHECK(run("fit " + out("missing.csv")) == 2);
  std::ofstream bad(out("bad_gaps.csv"));
  bad << "# comment\ngap\n0.5\n1.5\nnot-a-number\n";
  bad.close();
  CHECK(run("fit " + out("bad_gaps.csv")) == 2);
  CHECK(slurp(out("stderr.txt")).find("bad_gaps.csv:5") != std::string::npos);
}

TEST_CASE("fit on a histogram file") {
  REQUIRE(run("pipeline --set poisson --radius 120 --t-max 12 --bin-width 0.05 -o " + out("phist")) == 0);
  REQUIRE(run("fit " + out("phist.hist.csv") + " --fit-lo 2 --fit-hi 10 -o " + out("hfit.json")) == 0);
  CHECK(read_json(out("hfit.json"))["tail_fit"]["sample_count"].get<std::size_t>() > 0);
}

TEST_CASE("compare") {
  REQUIRE(run("pipeline --set poisson --radius 100 --gaps -o " + out("cmp")) == 0);
  REQUIRE(run("compare " + out("cmp.gaps.csv") + " --reference exp -o " + out("cmp_exp.json")) == 0);
  REQUIRE(run("compare " + out("cmp.gaps.csv") + " --reference g -o " + out("cmp_g.json")) == 0);
  REQUIRE(run("compare " + out("cmp.hist.csv") + " --reference " + out("cmp.hist.csv") + " -o " + out("cmp_self.json")) == 0);
  const auto e = read_json(out("cmp_exp.json")), g = read_json(out("cmp_g.json")), s = read_json(out("cmp_self.json"));
  CHECK(e["comparison"]["l1"].get<double>() < g["comparison"]["l1"].get<double>());
  CHECK(s["comparison"]["l1"].get<double>() < 1e-12);
  CHECK(run("compare " + out("cmp.gaps.csv") + " --reference cauchy") == 2);
}

TEST_CASE("density table") {
  REQUIRE(run("density --from 0.5 --to 2 --step 0.5 -o " + out("density.csv")) == 0);
  const auto lines = data_lines(slurp(out("density.csv")));
  REQUIRE(lines.size() == 5);
  CHECK(lines[0] == "t,g,g_tail,exp");
  CHECK(lines[1].rfind("0.5,1.21026", 0) == 0);
}

TEST_CASE("exit codes") {
  CHECK(run("generate --set penrose") == 2);
  CHECK(slurp(out("stderr.txt")).find("valid: z2, poisson, ab, tt, gs") != std::string::npos);
  CHECK(run("generate --set z2 --radius ten") == 2);
  CHECK(run("frobnicate") == 2);
  CHECK(run("generate --set z2 --radius 100 --max-points 1000") == 3);
  CHECK(run("pipeline --set rule --rule " + (kData / "near_collinear.rule").string() +
            " --steps 0 --radius 20000 --angle-tol 0 -o " + out("nc")) == 4);
  CHECK(slurp(out("stderr.txt")).find("projection: ") != std::string::npos);
  CHECK(run("--help") == 0);
}

TEST_CASE("golden outputs") {
  const auto same = [](const std::string& args, const std::string& produced, const std::string& golden) {
    REQUIRE(run(args) == 0);
    CHECK_MESSAGE(slurp(out(produced)) == slurp(kGolden / golden), "output differs from ", golden);
  };
  same("generate --set poisson --radius 4 --seed 3 -o " + out("g_poisson.csv"), "g_poisson.csv", "poisson_r4_s3.csv");
  same("generate --set ab --radius 3 -o " + out("g_ab.csv"), "g_ab.csv", "ab_r3.csv");
  same("visible --set gs --radius 3 --diagnostic -o " + out("g_gs.csv"), "g_gs.csv", "gs_r3_visible.csv");
  same("pipeline --set z2 --radius 30 --bin-width 0.25 --t-max 2 --gaps -o " + out("z2_r30"), "z2_r30.summary.json",
       "z2_r30.summary.json");
  CHECK(slurp(out("z2_r30.hist.csv")) == slurp(kGolden / "z2_r30.hist.csv"));
  CHECK(slurp(out("z2_r30.gaps.csv")) == slurp(kGolden / "z2_r30.gaps.csv"));
  same("fit " + out("z2_r30.gaps.csv") + " --fit-lo 1 --fit-hi 3 -o " + out("z2_r30.fit.json"), "z2_r30.fit.json",
       "z2_r30.fit.json");
  same("density --from 0.25 --to 2 --step 0.25 -o " + out("g_density.csv"), "g_density.csv", "density.csv");
}

}
