#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

std::string binary() {
  const char* env = std::getenv("MERGECOORD_BIN");
  return env && *env ? env : "./mergecoord";
}

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

RunResult run(const std::string& args, const std::string& env_prefix = "") {
  const std::string cmd = env_prefix + binary() + " " + args + " 2>&1";
  std::array<char, 4096> buf{};
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (std::fgets(buf.data(), buf.size(), pipe)) r.output += buf.data();
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE(f.good());
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// Drops the wall-clock column (the last one) from a replans.csv body.
std::string without_wallclock(const std::string& csv) {
  std::stringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) {
    const std::size_t cut = line.rfind(',');
    out += line.substr(0, cut);
    out += '\n';
  }
  return out;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("mergecoord_clitest_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("probability: happy path prints the closed form") {
  const RunResult r = run("probability --dt1 1.5 --dt2 2.5 --delta 2 --lambda1 0.2 --lambda2 0.2");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("closed_form = 0.013076") != std::string::npos);
}

TEST_CASE("probability: delta at dt1 prints zero; below dt1 is exit 2") {
  const RunResult zero =
      run("probability --dt1 1.5 --dt2 2.5 --delta 1.5 --lambda1 0.2 --lambda2 0.2");
  CHECK(zero.exit_code == 0);
  CHECK(zero.output.find("closed_form = 0.000000") != std::string::npos);

  const RunResult bad =
      run("probability --dt1 1.5 --dt2 2.5 --delta 1.2 --lambda1 0.2 --lambda2 0.2");
  CHECK(bad.exit_code == 2);
  CHECK(bad.output.find("delta") != std::string::npos);
}

TEST_CASE("probability: stdout is byte-identical across reruns") {
  const std::string flags =
      "probability --dt1 1.5 --dt2 2.5 --delta 2 --lambda1 0.2 --lambda2 0.2 "
      "--mc-trials 20000 --seed 5";
  const RunResult a = run(flags);
  const RunResult b = run(flags);
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
  CHECK(a.output.find("p_region") != std::string::npos);
}

TEST_CASE("simulate: happy path writes replans, summary, and manifest") {
  const fs::path dir = fresh_dir("sim");
  const RunResult r = run("simulate --lambda1 0.1 --lambda2 0.1 --duration 120 "
                          "--strategy grouping --seed 7 --out " + dir.string());
  CHECK(r.exit_code == 0);
  const std::string replans = slurp(dir / "replans.csv");
  CHECK(replans.rfind("sim_time_s,n_vehicles,strategy,J,plan_wallclock_ms", 0) == 0);
  const std::string summary = slurp(dir / "summary.txt");
  CHECK(summary.find("average_delay = ") != std::string::npos);
  CHECK(summary.find("average_vehicle_count = ") != std::string::npos);
  CHECK(summary.find("average_plan_time_ms = ") != std::string::npos);
  const std::string manifest = slurp(dir / "manifest.json");
  CHECK(manifest.find("\"command\": \"simulate\"") != std::string::npos);
  CHECK(manifest.find("\"seed\": 7") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("simulate: infeasible rate names the problem and exits 2") {
  const fs::path dir = fresh_dir("simbad");
  const RunResult r = run("simulate --lambda1 0.8 --lambda2 0.1 --duration 60 "
                          "--strategy fifo --seed 1 --out " + dir.string());
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("0.8") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("simulate: config violations print and exit 2") {
  const fs::path dir = fresh_dir("simcfg");
  fs::create_directories(dir);
  const fs::path cfg = dir / "bad.conf";
  {
    std::ofstream f(cfg);
    f << "dt1 = 2.0\ndt2 = 1.5\n";
  }
  const RunResult r = run("simulate --config " + cfg.string() +
                          " --duration 60 --strategy fifo --out " + (dir / "o").string());
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("dt2") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("simulate: reruns are byte-identical outside wall-clock columns") {
  const fs::path d1 = fresh_dir("det1");
  const fs::path d2 = fresh_dir("det2");
  const std::string flags = "simulate --lambda1 0.15 --lambda2 0.15 --duration 240 "
                            "--strategy planning --seed 3 --out ";
  CHECK(run(flags + d1.string()).exit_code == 0);
  CHECK(run(flags + d2.string()).exit_code == 0);
  CHECK(without_wallclock(slurp(d1 / "replans.csv")) ==
        without_wallclock(slurp(d2 / "replans.csv")));
  fs::remove_all(d1);
  fs::remove_all(d2);
}

TEST_CASE("histogram: 25-vehicle counts sum to the full order count") {
  const fs::path dir = fresh_dir("hist");
  const RunResult r = run("histogram --n1 12 --n2 13 --lambda 0.2 --bins 16 --seed 3 --out " +
                          dir.string());
  CHECK(r.exit_code == 0);
  std::stringstream csv(slurp(dir / "histogram.csv"));
  std::string line;
  std::getline(csv, line);  // header
  std::uint64_t total = 0;
  int rows = 0;
  while (std::getline(csv, line)) {
    total += std::stoull(line.substr(line.find(',') + 1));
    ++rows;
  }
  CHECK(rows == 16);
  CHECK(total == 5200300);
  const std::string marks = slurp(dir / "solution_marks.csv");
  CHECK(marks.find("grouping,") != std::string::npos);
  CHECK(marks.find("fifo,") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("histogram: single vehicle yields one bin with count 1") {
  const fs::path dir = fresh_dir("hist1");
  const RunResult r = run("histogram --n1 1 --n2 0 --bins 4 --seed 1 --out " + dir.string());
  CHECK(r.exit_code == 0);
  std::stringstream csv(slurp(dir / "histogram.csv"));
  std::string header, row, extra;
  std::getline(csv, header);
  REQUIRE(std::getline(csv, row));
  CHECK(!std::getline(csv, extra));
  CHECK(row.substr(row.find(',') + 1) == "1");
  fs::remove_all(dir);
}

TEST_CASE("histogram: over-budget scenario exits 3") {
  const fs::path dir = fresh_dir("histbudget");
  const RunResult r = run("histogram --n1 20 --n2 20 --bins 4 --seed 1 --out " + dir.string());
  CHECK(r.exit_code == 3);
  CHECK(r.output.find("budget") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("alignment: rows respect the max-vehicle bound; curve is monotone") {
  const fs::path dir = fresh_dir("align");
  const RunResult r = run("alignment --lambda 0.15 --scenarios 12 --horizon 50 "
                          "--max-vehicles 6 --seed 11 --out " + dir.string());
  CHECK(r.exit_code == 0);
  std::stringstream csv(slurp(dir / "scenarios.csv"));
  std::string line;
  std::getline(csv, line);  // header
  int rows = 0;
  while (std::getline(csv, line)) {
    ++rows;
    std::stringstream ss(line);
    std::string field;
    std::getline(ss, field, ',');  // scenario index
    std::getline(ss, field, ',');  // n_vehicles
    CHECK(std::stoi(field) <= 6);
    std::getline(ss, field, ',');  // n1
    std::getline(ss, field, ',');  // n2
    std::getline(ss, field, ',');  // total_orders
    CHECK(std::stoull(field) <= 20);  // C(6,3): the worst split of 6 vehicles
  }
  CHECK(rows == 12);

  std::stringstream curve(slurp(dir / "alignment_curve.csv"));
  std::getline(curve, line);
  double prev = -1.0;
  while (std::getline(curve, line)) {
    const double v = std::stod(line.substr(line.find(',') + 1));
    CHECK(v >= prev);
    prev = v;
  }
  CHECK(prev == doctest::Approx(1.0));
  fs::remove_all(dir);
}

TEST_CASE("alignment: over-budget scenarios exit 3, or are logged with --skip-over-budget") {
  // 40-vehicle scenarios overflow the default order budget almost surely.
  const fs::path dir = fresh_dir("alignbudget");
  const std::string flags = "alignment --lambda 0.25 --scenarios 2 --horizon 200 "
                            "--max-vehicles 40 --seed 3 --out " + dir.string();
  const RunResult hard = run(flags);
  CHECK(hard.exit_code == 3);
  CHECK(hard.output.find("budget") != std::string::npos);

  const RunResult soft = run(flags + " --skip-over-budget");
  CHECK(soft.exit_code == 0);
  CHECK(slurp(dir / "scenarios.csv").find("skipped") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("MERGECOORD_THREADS is validated") {
  const RunResult bad = run("probability --delta 2 ", "MERGECOORD_THREADS=frogs ");
  CHECK(bad.exit_code == 2);
  CHECK(bad.output.find("MERGECOORD_THREADS") != std::string::npos);
  const RunResult ok = run("probability --dt1 1.5 --dt2 2.5 --delta 2", "MERGECOORD_THREADS=4 ");
  CHECK(ok.exit_code == 0);
}

TEST_CASE("version flag") {
  const RunResult r = run("--version");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("mergecoord") != std::string::npos);
}
