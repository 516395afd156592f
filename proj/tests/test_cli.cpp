#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "tspp/commands.hpp"

using namespace tspp;
namespace fs = std::filesystem;

namespace {

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("tspp_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write_file(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// runs the CLI, returns its exit code; stdout and stderr go to files
int cli(const std::string& args, std::string* out = nullptr, std::string* err = nullptr) {
  const std::string o = (scratch() / "stdout.txt").string(), e = (scratch() / "stderr.txt").string();
  const std::string cmd = std::string(TSPP_CLI_PATH) + " " + args + " >" + o + " 2>" + e;
  const int st = std::system(cmd.c_str());
  if (out) *out = read_file(o);
  if (err) *err = read_file(e);
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string c;
    while (std::getline(ls, c, ',')) cells.push_back(c);
    rows.push_back(cells);
  }
  return rows;
}

std::string config(const std::string& name) { return std::string(TSPP_CONFIG_DIR) + "/" + name; }

}  // namespace

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(cli(""), 2);
  EXPECT_EQ(cli("nonsense"), 2);
  EXPECT_EQ(cli("run --backend xyz --config " + config("run_commuting.json")), 2);
  EXPECT_EQ(cli("run --config /nonexistent/file.json"), 2);
}

TEST(Cli, MalformedJsonReportsLine) {
  const std::string p = write_file("bad.json", "{\n  \"beta\": 1.0,\n  \"eps\": ,\n}\n");
  std::string err;
  EXPECT_EQ(cli("run --config " + p, nullptr, &err), 2);
  EXPECT_NE(err.find("line 3"), std::string::npos) << err;
}

TEST(Cli, InvalidSweepGrid) {
  const std::string dup = write_file("dup.json", R"({"variable": "eps", "grid": [0.1, 0.1]})");
  EXPECT_EQ(cli("sweep-cutoff --config " + dup), 2);
  const std::string empty = write_file("empty.json", R"({"variable": "eps", "grid": []})");
  EXPECT_EQ(cli("sweep-cutoff --config " + empty), 2);
}

TEST(Cli, RunCommutingPair) {
  const std::string out = (scratch() / "commuting.json").string();
  ASSERT_EQ(cli("run --config " + config("run_commuting.json") + " --out " + out), 0);
  const json j = json::parse(read_file(out));
  EXPECT_LE(j.at("trace_distance").get<double>(), 0.05);
  EXPECT_NEAR(j.at("w_l").get<double>(), -2.0, 1e-12);  // -||V|| for two qubits
  EXPECT_TRUE(j.at("certified").get<bool>());
}

TEST(Cli, RunTrivialProcessAndBackendFlag) {
  const std::string p = write_file("same.json", R"({
    "H0": {"type": "tfim", "n": 2, "field": 1.0, "coupling": 0.5},
    "H1": {"type": "tfim", "n": 2, "field": 1.0, "coupling": 0.5},
    "beta": 1.0, "eps": 0.1, "dump_tau1": true})");
  const std::string out = (scratch() / "same_out.json").string();
  ASSERT_EQ(cli("run --backend qsp --config " + p + " --out " + out), 0);
  const json j = json::parse(read_file(out));
  EXPECT_LE(j.at("trace_distance").get<double>(), 1e-9);
  EXPECT_EQ(j.at("backend").get<std::string>(), "qsp");
  const auto rows = parse_csv(read_file(out + ".tau1.csv"));
  EXPECT_EQ(rows.size(), 1u + 16u);
}

TEST(Cli, CertificationFailureExitThree) {
  const std::string p = write_file("noncommuting.json", R"({
    "model": {"type": "tfim", "n": 2, "field": 1.0, "coupling": 0.5},
    "beta": 1.0, "eps": 0.05, "cutoff": "thm3"})");
  EXPECT_EQ(cli("run --config " + p), 3);
  const std::string q = write_file("toohigh.json", R"({
    "model": {"type": "tfim", "n": 2, "field": 1.0, "coupling": 0.5},
    "beta": 1.0, "eps": 0.05, "cutoff": {"source": "explicit", "value": 3.0}})");
  EXPECT_EQ(cli("run --config " + q), 3);
}

TEST(Cli, SolverNonConvergenceExitFour) {
  const std::string p = write_file("qsp_cap.json", R"({"beta": 1, "w_max": 50, "w_l": -1, "eps": 0.1,
    "max_iterations": 1})");
  std::string err;
  EXPECT_EQ(cli("qsp-phases --config " + p, nullptr, &err), 4);
  EXPECT_NE(err.find("best residual"), std::string::npos);
}

TEST(Cli, QspPhasesAtAppendixScale) {
  const std::string out = (scratch() / "phases.csv").string();
  ASSERT_EQ(cli("qsp-phases --config " + config("qsp_phases.json") + " --out " + out), 0);
  const auto rows = parse_csv(read_file(out));
  ASSERT_EQ(rows.front(), (std::vector<std::string>{"set", "index", "phi"}));
  std::map<std::string, int> count;
  for (std::size_t i = 1; i < rows.size(); ++i) ++count[rows[i][0]];
  EXPECT_EQ(count["1"], 505);
  EXPECT_EQ(count["2"], 505);
  const json e = json::parse(read_file(out + ".endpoints.json"));
  const double pi = 3.14159265358979323846;
  EXPECT_NEAR(e.at("phi1_first").get<double>(), pi / 4, 1e-6);
  EXPECT_NEAR(e.at("phi1_last").get<double>(), pi / 4, 1e-6);
  EXPECT_NEAR(e.at("phi2_first").get<double>(), 0.0, 1e-6);
  EXPECT_NEAR(e.at("phi2_last").get<double>(), -pi / 2, 1e-6);
  EXPECT_LE(e.at("residual1").get<double>(), 1e-6);
  EXPECT_LE(e.at("residual2").get<double>(), 1e-6);
}

TEST(Cli, VerifyTfimFour) {
  std::string out;
  ASSERT_EQ(cli("verify --config " + config("verify_tfim4.json"), &out), 0);
  const json j = json::parse(out);
  ASSERT_EQ(j.size(), 3u);
  for (const auto& e : j) {
    EXPECT_LT(e.at("jarzynski").get<double>(), 1e-10);
    EXPECT_LT(e.at("crooks_max_bin").get<double>(), 1e-10);
    EXPECT_LT(e.at("crooks_second_moment").get<double>(), 1e-10);
  }
}

TEST(Cli, SweepCsvShapeAndAtomicRewrite) {
  const std::string p = write_file("sweep_small.json", R"({
    "variable": "eps", "grid": [0.5, 0.05, 0.005],
    "model": {"n": 4, "field": 1.0, "coupling": 0.5},
    "T_values": [0, 2], "steps": 64})");
  const std::string out = (scratch() / "sweep.csv").string();
  ASSERT_EQ(cli("sweep-cutoff --workers 2 --config " + p + " --out " + out), 0);
  const std::string first = read_file(out);
  ASSERT_EQ(cli("sweep-cutoff --workers 1 --config " + p + " --out " + out), 0);
  EXPECT_EQ(read_file(out), first);  // deterministic, worker count irrelevant
  const auto rows = parse_csv(first);
  EXPECT_EQ(rows.front(), (std::vector<std::string>{"variable", "unitary_label", "w_l_star"}));
  EXPECT_EQ(rows.size(), 1u + 3u * 3u);
  for (const auto& entry : fs::directory_iterator(scratch()))
    EXPECT_EQ(entry.path().filename().string().find("sweep.csv."), std::string::npos);
}

TEST(Commands, EpsSweepProperties) {
  SweepSpec s;
  s.variable = "eps";
  s.grid = {0.5, 0.1, 0.01, 0.001};
  s.model = {4, 1.0, 0.5};
  s.T_values = {0, 1, 3};
  s.steps = 128;
  const auto rows = sweep_cutoff(s, 2);
  std::map<std::string, std::map<double, double>> by;
  for (const auto& r : rows) by[r.label][r.variable] = r.w_l_star;
  for (const auto& [label, curve] : by) {
    double prev = -1e300;
    for (const auto& [eps, w] : curve) {
      EXPECT_GE(w, prev) << label;
      prev = w;
    }
  }
  for (double eps : s.grid)
    for (const auto& [label, curve] : by) EXPECT_LE(curve.at(eps), by["optimal"].at(eps)) << label;
}

TEST(Commands, TSweepRows) {
  SweepSpec s;
  s.variable = "T";
  s.grid = {0, 2, 5};
  s.model = {4, 1.0, 0.5};
  s.eps_values = {0.05, 0.005};
  s.steps_per_time = 32;
  const auto rows = sweep_cutoff(s, 1);
  EXPECT_EQ(rows.size(), 6u);
  std::set<std::string> labels;
  for (const auto& r : rows) labels.insert(r.label);
  EXPECT_EQ(labels, (std::set<std::string>{"eps=0.05", "eps=0.005"}));
}

TEST(Commands, WorkdistProperties) {
  WorkdistSpec s;
  s.model = {4, 1.0, 0.5};
  s.eps = 0.005;
  s.unitaries = {UnitaryDescriptor::identity(), UnitaryDescriptor::interpolation(2.0, 128),
                 UnitaryDescriptor::optimal(0.0)};
  const auto rows = workdist(s, 2);
  std::map<std::string, double> total, mean, wl, min_visible;
  for (const auto& r : rows) {
    total[r.label] += r.P;
    mean[r.label] += r.P * r.w;
    wl[r.label] = r.w_l_star;
    if (r.P > 1e-3 && !min_visible.count(r.label)) min_visible[r.label] = r.w;
  }
  ASSERT_EQ(total.size(), 3u);
  for (const auto& [label, t] : total) {
    EXPECT_NEAR(t, 1.0, 1e-10) << label;
    EXPECT_LE(wl[label], min_visible[label] + 1e-12) << label;
  }
  // with w = e1 - e0 the adiabatic-type unitary minimizes the mean work
  EXPECT_LE(mean[UnitaryDescriptor::optimal(0.0).label()], mean["T=2"] + 1e-12);
  EXPECT_LE(mean["T=2"], mean["identity"] + 1e-12);
}

TEST(Commands, ScalingProperties) {
  ScalingSpec s;
  s.n_values = {1, 2, 3, 4};
  s.eps = 0.005;
  s.steps_per_time = 16;
  const auto rows = scaling(s, 2);
  ASSERT_EQ(rows.size(), 16u);
  std::map<int, std::map<std::string, double>> by;
  for (const auto& r : rows) by[r.n][r.T_label] = r.w_l_star;
  for (const auto& [label, w] : by[1]) EXPECT_EQ(w, by[1]["T=0"]) << label;
  for (const auto& [n, m] : by) EXPECT_GE(m.at("T=5n"), m.at("T=0")) << n;
  const auto csv = parse_csv(scaling_csv(rows));
  EXPECT_EQ(csv.front(), (std::vector<std::string>{"n", "T_label", "w_l_star"}));
}
