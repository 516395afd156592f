#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tspp/config.hpp"
#include "tspp/io.hpp"

namespace tspp {

struct SweepRow {
  double variable = 0.0;
  std::string label;
  double w_l_star = 0.0;
};
std::vector<SweepRow> sweep_cutoff(const SweepSpec& spec, int workers);
std::string sweep_csv(const std::vector<SweepRow>& rows);

struct WorkdistRow {
  std::string label;
  double w = 0.0;
  double P = 0.0;
  double w_l_star = 0.0;
};
std::vector<WorkdistRow> workdist(const WorkdistSpec& spec, int workers);
std::string workdist_csv(const std::vector<WorkdistRow>& rows);

struct ScalingRow {
  int n = 0;
  std::string T_label;  // T=0, T=2, T=n, T=5n
  double T = 0.0;
  double w_l_star = 0.0;
};
std::vector<ScalingRow> scaling(const ScalingSpec& spec, int workers);
std::string scaling_csv(const std::vector<ScalingRow>& rows);

json run_result_to_json(const RunResult& r);
std::string matrix_csv(const Matrix& m);

QspPhaseSet qsp_phases(const QspPhaseSpec& spec);
std::string phases_csv(const QspPhaseSet& p);
json phases_endpoints(const QspPhaseSet& p, const FourierSeries& s);

struct VerifyEntry {
  std::string label;
  FluctuationResiduals residuals;
};
std::vector<VerifyEntry> verify(const VerifySpec& spec, int workers);
json verify_to_json(const std::vector<VerifyEntry>& v);

struct CommandOptions {
  std::string config;
  std::string out;
  int workers = 0;
  std::optional<std::string> backend;
  std::uint64_t seed = 0;
};

// load, compute, write; returns the process exit code and lets errors propagate
int run_command(const std::string& name, const CommandOptions& opt);

}  // namespace tspp
