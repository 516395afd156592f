#include "tspp/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace tspp {

ConfigError::ConfigError(const std::string& what, int l, int c)
    : InvalidArgument(l > 0 ? what + " (line " + std::to_string(l) + ", column " +
                                  std::to_string(c) + ")"
                            : what),
      line(l),
      column(c) {}

std::pair<int, int> line_column(const std::string& text, std::size_t offset) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < std::min(offset, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // byte is one past the offending character
    auto [l, c] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ConfigError(origin + ": malformed JSON", l, c);
  }
}

json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path);
}

namespace {

const json& require(const json& j, const char* key, const char* where) {
  if (!j.is_object() || !j.contains(key))
    throw ConfigError(std::string(where) + ": missing field \"" + key + "\"");
  return j.at(key);
}

double get_number(const json& j, const char* key, double def, const char* where) {
  if (!j.is_object() || !j.contains(key)) return def;
  if (!j.at(key).is_number())
    throw ConfigError(std::string(where) + ": field \"" + key + "\" must be a number");
  return j.at(key).get<double>();
}

int get_int(const json& j, const char* key, int def, const char* where) {
  if (!j.is_object() || !j.contains(key)) return def;
  if (!j.at(key).is_number_integer())
    throw ConfigError(std::string(where) + ": field \"" + key + "\" must be an integer");
  return j.at(key).get<int>();
}

std::vector<double> get_grid(const json& j, const char* key, const char* where, bool required,
                             std::vector<double> def = {}) {
  if (!j.is_object() || !j.contains(key)) {
    if (required) throw ConfigError(std::string(where) + ": missing field \"" + key + "\"");
    return def;
  }
  const json& a = j.at(key);
  if (!a.is_array()) throw ConfigError(std::string(where) + ": \"" + key + "\" must be a list");
  std::vector<double> out;
  for (const auto& x : a) {
    if (!x.is_number())
      throw ConfigError(std::string(where) + ": \"" + key + "\" must hold numbers");
    out.push_back(x.get<double>());
  }
  if (out.empty()) throw ConfigError(std::string(where) + ": \"" + key + "\" is empty");
  std::set<double> uniq(out.begin(), out.end());
  if (uniq.size() != out.size())
    throw ConfigError(std::string(where) + ": \"" + key + "\" has repeated values");
  return out;
}

void read_steps(const json& j, int& steps, double& per_time, const char* where) {
  if (j.contains("steps")) {
    const json& s = j.at("steps");
    if (s.is_string() && s.get<std::string>() == "auto")
      steps = 0;
    else if (s.is_number_integer() && s.get<int>() >= 1)
      steps = s.get<int>();
    else
      throw ConfigError(std::string(where) + ": \"steps\" must be a positive integer or \"auto\"");
  }
  per_time = get_number(j, "steps_per_time", per_time, where);
  if (per_time < 0) throw ConfigError(std::string(where) + ": \"steps_per_time\" must be >= 0");
}

}  // namespace

TfimModel parse_tfim(const json& j) {
  TfimModel m;
  m.n = get_int(j, "n", m.n, "tfim");
  m.field = get_number(j, "field", m.field, "tfim");
  m.coupling = get_number(j, "coupling", m.coupling, "tfim");
  if (m.n < 1 || m.n > 12) throw ConfigError("tfim: n must be in [1, 12]");
  return m;
}

PauliSum parse_pauli_sum(const json& j, TermRole default_role) {
  if (!j.is_object()) throw ConfigError("hamiltonian: expected an object");
  if (j.contains("type")) {
    const std::string t = j.at("type").get<std::string>();
    if (t != "tfim") throw ConfigError("hamiltonian: unknown model type \"" + t + "\"");
    const TfimModel m = parse_tfim(j);
    return build_tfim(m.n, m.field, m.coupling);
  }
  PauliSum h;
  h.n = get_int(j, "n", 0, "hamiltonian");
  if (h.n < 1 || h.n > 12) throw ConfigError("hamiltonian: n must be in [1, 12]");
  const json& terms = require(j, "terms", "hamiltonian");
  if (!terms.is_array()) throw ConfigError("hamiltonian: \"terms\" must be a list");
  for (const auto& t : terms) {
    const double c = get_number(t, "coeff", std::nan(""), "hamiltonian term");
    if (std::isnan(c)) throw ConfigError("hamiltonian term: missing \"coeff\"");
    const json& p = require(t, "pauli", "hamiltonian term");
    if (!p.is_string()) throw ConfigError("hamiltonian term: \"pauli\" must be a string");
    TermRole role = default_role;
    if (t.contains("role")) {
      const std::string r = t.at("role").get<std::string>();
      if (r == "H0")
        role = TermRole::H0;
      else if (r == "V")
        role = TermRole::V;
      else
        throw ConfigError("hamiltonian term: role must be \"H0\" or \"V\"");
    }
    try {
      h.add(c, PauliString::parse(p.get<std::string>()), role);
    } catch (const InvalidArgument& e) {
      throw ConfigError(std::string("hamiltonian term: ") + e.what());
    }
  }
  return h;
}

json pauli_sum_to_json(const PauliSum& h) {
  json terms = json::array();
  for (const auto& t : h.terms)
    terms.push_back({{"coeff", t.coeff},
                     {"pauli", t.string.str()},
                     {"role", t.role == TermRole::H0 ? "H0" : "V"}});
  return {{"n", h.n}, {"terms", terms}};
}

UnitaryDescriptor parse_unitary(const json& j) {
  std::string type;
  if (j.is_string())
    type = j.get<std::string>();
  else if (j.is_object() && j.contains("type"))
    type = j.at("type").get<std::string>();
  else
    throw ConfigError("unitary: expected a type");
  if (type == "identity") return UnitaryDescriptor::identity();
  if (type == "interpolation") {
    const double T = get_number(j, "T", -1.0, "unitary");
    if (!(T >= 0)) throw ConfigError("unitary: interpolation needs T >= 0");
    int steps = 0;
    double per_time = 0.0;
    read_steps(j, steps, per_time, "unitary");
    auto d = with_step_policy(UnitaryDescriptor::interpolation(T, 0), steps, per_time);
    d.tol = get_number(j, "tol", d.tol, "unitary");
    return d;
  }
  if (type == "optimal") {
    const double e = get_number(j, "eps", -1.0, "unitary");
    if (!(e >= 0)) throw ConfigError("unitary: optimal needs eps >= 0");
    return UnitaryDescriptor::optimal(e);
  }
  throw ConfigError("unitary: unknown type \"" + type + "\"");
}

UnitaryDescriptor with_step_policy(UnitaryDescriptor d, int steps, double steps_per_time) {
  if (d.type != UnitaryDescriptor::Type::Interpolation) return d;
  if (steps_per_time > 0)
    d.steps = std::max(1, static_cast<int>(std::ceil(d.T * steps_per_time)));
  else
    d.steps = steps;
  return d;
}

Backend parse_backend(const std::string& s) {
  if (s == "lcu") return Backend::Lcu;
  if (s == "qsp") return Backend::Qsp;
  throw ConfigError("backend must be \"lcu\" or \"qsp\"");
}

CutoffSource parse_cutoff_source(const std::string& s) {
  if (s == "exact") return CutoffSource::Exact;
  if (s == "thm2") return CutoffSource::Thm2;
  if (s == "thm3") return CutoffSource::Thm3;
  if (s == "thm4") return CutoffSource::Thm4;
  if (s == "explicit") return CutoffSource::Explicit;
  throw ConfigError("cutoff source must be exact, thm2, thm3, thm4 or explicit");
}

RunConfig parse_run_config(const json& j) {
  if (!j.is_object()) throw ConfigError("run config: expected an object");
  RunConfig c;
  PauliSum h0, v;
  if (j.contains("model")) {
    const PauliSum full = parse_pauli_sum(j.at("model"));
    h0 = full.part(TermRole::H0);
    v = full.part(TermRole::V);
    c.locality = full.locality ? full.locality : scan_locality(full);
    c.h0 = h0.dense();
    c.h1 = full.dense();
  } else {
    h0 = parse_pauli_sum(require(j, "H0", "run config"), TermRole::H0);
    c.h0 = h0.dense();
    if (j.contains("V")) {
      v = parse_pauli_sum(j.at("V"), TermRole::V);
      if (v.n != h0.n) throw ConfigError("run config: H0 and V act on different qubit counts");
      PauliSum full = h0;
      for (auto t : v.terms) {
        t.role = TermRole::V;
        full.terms.push_back(t);
      }
      c.locality = scan_locality(full);
      c.h1 = full.dense();
    } else if (j.contains("H1")) {
      const PauliSum h1 = parse_pauli_sum(j.at("H1"), TermRole::H0);
      if (h1.n != h0.n) throw ConfigError("run config: H0 and H1 act on different qubit counts");
      c.h1 = h1.dense();
    } else {
      throw ConfigError("run config: need \"model\", or \"H0\" with \"V\" or \"H1\"");
    }
  }
  c.beta = get_number(j, "beta", c.beta, "run config");
  c.eps = get_number(j, "eps", c.eps, "run config");
  if (j.contains("unitary")) c.unitary = parse_unitary(j.at("unitary"));
  if (j.contains("backend")) c.backend = parse_backend(j.at("backend").get<std::string>());
  if (j.contains("cutoff")) {
    const json& k = j.at("cutoff");
    if (k.is_string()) {
      c.cutoff = parse_cutoff_source(k.get<std::string>());
    } else {
      c.cutoff = parse_cutoff_source(require(k, "source", "cutoff").get<std::string>());
      c.cutoff_value = get_number(k, "value", 0.0, "cutoff");
      if (c.cutoff == CutoffSource::Explicit && !k.contains("value"))
        throw ConfigError("cutoff: explicit source needs \"value\"");
    }
  }
  if (j.contains("trust")) c.trust_theorem = j.at("trust").get<bool>();
  if (!(c.eps > 0)) throw ConfigError("run config: eps must be > 0");
  if (!(c.beta >= 0)) throw ConfigError("run config: beta must be >= 0");
  return c;
}

SweepSpec parse_sweep_spec(const json& j) {
  SweepSpec s;
  s.variable = require(j, "variable", "sweep").get<std::string>();
  if (s.variable != "eps" && s.variable != "T")
    throw ConfigError("sweep: variable must be \"eps\" or \"T\"");
  s.grid = get_grid(j, "grid", "sweep", true);
  if (j.contains("model")) s.model = parse_tfim(j.at("model"));
  s.beta = get_number(j, "beta", s.beta, "sweep");
  s.T_values = get_grid(j, "T_values", "sweep", false, {0, 1, 2, 3, 5});
  s.eps_values = get_grid(j, "eps_values", "sweep", false, {0.05, 0.005});
  if (j.contains("include_optimal")) s.include_optimal = j.at("include_optimal").get<bool>();
  read_steps(j, s.steps, s.steps_per_time, "sweep");
  for (double x : s.grid)
    if (s.variable == "eps" ? !(x > 0) : !(x >= 0))
      throw ConfigError("sweep: grid values out of range");
  return s;
}

WorkdistSpec parse_workdist_spec(const json& j) {
  WorkdistSpec s;
  if (j.contains("model")) s.model = parse_tfim(j.at("model"));
  s.beta = get_number(j, "beta", s.beta, "workdist");
  s.eps = get_number(j, "eps", s.eps, "workdist");
  if (!(s.eps > 0)) throw ConfigError("workdist: eps must be > 0");
  read_steps(j, s.steps, s.steps_per_time, "workdist");
  if (j.contains("unitaries")) {
    for (const auto& u : j.at("unitaries")) s.unitaries.push_back(parse_unitary(u));
  } else {
    for (double T : {0.0, 1.0, 2.0, 3.0, 5.0})
      s.unitaries.push_back(UnitaryDescriptor::interpolation(T, 0));
    s.unitaries.push_back(UnitaryDescriptor::optimal(s.eps));
  }
  if (s.unitaries.empty()) throw ConfigError("workdist: no unitaries");
  for (auto& u : s.unitaries)
    if (u.steps == 0) u = with_step_policy(u, s.steps, s.steps_per_time);
  return s;
}

ScalingSpec parse_scaling_spec(const json& j) {
  ScalingSpec s;
  const int n_max = get_int(j, "n_max", 8, "scaling");
  const int n_min = get_int(j, "n_min", 1, "scaling");
  if (j.contains("n_values")) {
    for (double x : get_grid(j, "n_values", "scaling", true)) {
      if (x != std::floor(x) || x < 1) throw ConfigError("scaling: n values must be positive integers");
      s.n_values.push_back(static_cast<int>(x));
    }
  } else {
    if (n_min < 1 || n_max < n_min) throw ConfigError("scaling: need 1 <= n_min <= n_max");
    for (int n = n_min; n <= n_max; ++n) s.n_values.push_back(n);
  }
  for (int n : s.n_values)
    if (n > 10) throw ConfigError("scaling: n above 10 is out of reach for dense simulation");
  s.field = get_number(j, "field", s.field, "scaling");
  s.coupling = get_number(j, "coupling", s.coupling, "scaling");
  s.beta = get_number(j, "beta", s.beta, "scaling");
  s.eps = get_number(j, "eps", s.eps, "scaling");
  if (!(s.eps > 0)) throw ConfigError("scaling: eps must be > 0");
  read_steps(j, s.steps, s.steps_per_time, "scaling");
  return s;
}

QspPhaseSpec parse_qsp_phase_spec(const json& j) {
  QspPhaseSpec s;
  s.beta = get_number(j, "beta", s.beta, "qsp-phases");
  s.w_max = get_number(j, "w_max", s.w_max, "qsp-phases");
  s.w_l = get_number(j, "w_l", s.w_l, "qsp-phases");
  s.eps = get_number(j, "eps", s.eps, "qsp-phases");
  s.options.max_iterations = get_int(j, "max_iterations", s.options.max_iterations, "qsp-phases");
  if (j.contains("method")) {
    const std::string m = j.at("method").get<std::string>();
    if (m == "lbfgs")
      s.options.method = QspMethod::Lbfgs;
    else if (m == "gauss-newton")
      s.options.method = QspMethod::GaussNewton;
    else
      throw ConfigError("qsp-phases: method must be \"gauss-newton\" or \"lbfgs\"");
  }
  if (!(s.eps > 0) || s.w_max < s.w_l)
    throw ConfigError("qsp-phases: need eps > 0 and w_max >= w_l");
  return s;
}

VerifySpec parse_verify_spec(const json& j) {
  VerifySpec s;
  if (j.contains("model")) s.model = parse_tfim(j.at("model"));
  s.beta = get_number(j, "beta", s.beta, "verify");
  if (j.contains("unitaries")) {
    for (const auto& u : j.at("unitaries")) s.unitaries.push_back(parse_unitary(u));
  } else {
    s.unitaries = {UnitaryDescriptor::identity(), UnitaryDescriptor::interpolation(2.0, 0),
                   UnitaryDescriptor::optimal(0.0)};
  }
  return s;
}

}  // namespace tspp
