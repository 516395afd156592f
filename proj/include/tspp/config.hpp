#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "tspp/errors.hpp"
#include "tspp/pipeline.hpp"

namespace tspp {

using json = nlohmann::json;

struct ConfigError : InvalidArgument {
  ConfigError(const std::string& what, int line = 0, int column = 0);
  int line, column;
};

// 1-based line/column of a byte offset
std::pair<int, int> line_column(const std::string& text, std::size_t offset);

json parse_json_text(const std::string& text, const std::string& origin = "<config>");
json load_json_file(const std::string& path);

// {"n", "terms": [{"coeff", "pauli", "role"?}]} or {"type": "tfim", "n", "field", "coupling"}
PauliSum parse_pauli_sum(const json& j, TermRole default_role = TermRole::H0);
json pauli_sum_to_json(const PauliSum& h);

// "identity" | {"type": "identity"|"interpolation"|"optimal", "T", "steps": int|"auto", "eps"}
UnitaryDescriptor parse_unitary(const json& j);

Backend parse_backend(const std::string& s);
CutoffSource parse_cutoff_source(const std::string& s);

// Hamiltonians come from "model" (split into H0 and V by term role), or from "H0" plus
// either "V" or "H1".
RunConfig parse_run_config(const json& j);

struct TfimModel {
  int n = 6;
  double field = 1.0;
  double coupling = 0.5;
};
TfimModel parse_tfim(const json& j);

struct SweepSpec {
  std::string variable;                // "eps" or "T"
  std::vector<double> grid;
  TfimModel model;
  double beta = 1.0;
  std::vector<double> T_values;        // eps sweeps: one curve per T
  bool include_optimal = true;         // eps sweeps: add the optimal unitary per eps
  std::vector<double> eps_values;      // T sweeps: one curve per eps
  int steps = 0;                       // 0 = automatic
  double steps_per_time = 0.0;         // > 0: steps = ceil(T * steps_per_time)
};
SweepSpec parse_sweep_spec(const json& j);

struct WorkdistSpec {
  TfimModel model;
  double beta = 1.0;
  double eps = 0.005;
  std::vector<UnitaryDescriptor> unitaries;
  int steps = 0;
  double steps_per_time = 0.0;
};
WorkdistSpec parse_workdist_spec(const json& j);

struct ScalingSpec {
  std::vector<int> n_values;
  double field = 1.0;
  double coupling = 0.5;
  double beta = 1.0;
  double eps = 0.005;
  int steps = 0;
  double steps_per_time = 0.0;
};
ScalingSpec parse_scaling_spec(const json& j);

struct QspPhaseSpec {
  double beta = 1.0;
  double w_max = 50.0;
  double w_l = -1.0;
  double eps = 0.1;
  QspSolveOptions options;
};
QspPhaseSpec parse_qsp_phase_spec(const json& j);

struct VerifySpec {
  TfimModel model;
  double beta = 1.0;
  std::vector<UnitaryDescriptor> unitaries;
};
VerifySpec parse_verify_spec(const json& j);

// step count for an interpolation at duration T under a fixed/auto/per-time policy
UnitaryDescriptor with_step_policy(UnitaryDescriptor d, int steps, double steps_per_time);

}  // namespace tspp
