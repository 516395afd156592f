#include "tspp/commands.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>

#include "tspp/thermal.hpp"

namespace tspp {

namespace {

struct Instance {
  Matrix h0, v, h1;
  Spectrum s0, s1;
  ThermoData th;
};

Instance make_tfim(int n, double field, double coupling, double beta) {
  const PauliSum full = build_tfim(n, field, coupling);
  Instance in;
  in.h0 = full.part(TermRole::H0).dense();
  in.v = full.part(TermRole::V).dense();
  in.h1 = in.h0 + in.v;
  in.s0 = diagonalize(in.h0);
  in.s1 = diagonalize(in.h1);
  in.th = free_energy_difference(in.s0, in.s1, beta);
  return in;
}

WorkDistribution distribution_for(const Instance& in, double beta, const UnitaryDescriptor& d) {
  const NonEqUnitary u = build_unitary(d, in.h0, in.v, in.s0, in.s1, beta);
  return forward_distribution(in.s0, in.s1, beta, u.matrix).dist;
}

std::string label_eps(double e) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "eps=%g", e);
  return buf;
}

}  // namespace

std::vector<SweepRow> sweep_cutoff(const SweepSpec& spec, int workers) {
  const Instance in = make_tfim(spec.model.n, spec.model.field, spec.model.coupling, spec.beta);
  const double beta = spec.beta, dA = in.th.deltaA;
  std::vector<SweepRow> rows;

  if (spec.variable == "eps") {
    // one task per fixed-T curve, plus one optimal unitary per eps
    const std::size_t nT = spec.T_values.size();
    const std::size_t nTask = nT + (spec.include_optimal ? spec.grid.size() : 0);
    auto out = parallel_map<std::vector<double>>(nTask, workers, [&](std::size_t t) {
      std::vector<double> w;
      if (t < nT) {
        const auto d = with_step_policy(UnitaryDescriptor::interpolation(spec.T_values[t], 0),
                                        spec.steps, spec.steps_per_time);
        const WorkDistribution dist = distribution_for(in, beta, d);
        for (double e : spec.grid) w.push_back(largest_cutoff(dist, beta, dA, e).w_l);
      } else {
        const double e = spec.grid[t - nT];
        const WorkDistribution dist = distribution_for(in, beta, UnitaryDescriptor::optimal(e));
        w.push_back(largest_cutoff(dist, beta, dA, e).w_l);
      }
      return w;
    });
    for (std::size_t g = 0; g < spec.grid.size(); ++g) {
      for (std::size_t t = 0; t < nT; ++t)
        rows.push_back({spec.grid[g], UnitaryDescriptor::interpolation(spec.T_values[t]).label(),
                        out[t][g]});
      if (spec.include_optimal) rows.push_back({spec.grid[g], "optimal", out[nT + g][0]});
    }
  } else {
    auto out = parallel_map<std::vector<double>>(spec.grid.size(), workers, [&](std::size_t g) {
      const auto d = with_step_policy(UnitaryDescriptor::interpolation(spec.grid[g], 0),
                                      spec.steps, spec.steps_per_time);
      const WorkDistribution dist = distribution_for(in, beta, d);
      std::vector<double> w;
      for (double e : spec.eps_values) w.push_back(largest_cutoff(dist, beta, dA, e).w_l);
      return w;
    });
    for (std::size_t g = 0; g < spec.grid.size(); ++g)
      for (std::size_t k = 0; k < spec.eps_values.size(); ++k)
        rows.push_back({spec.grid[g], label_eps(spec.eps_values[k]), out[g][k]});
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  Csv c({"variable", "unitary_label", "w_l_star"});
  for (const auto& r : rows) c.row({fmt(r.variable), r.label, fmt(r.w_l_star)});
  return c.str();
}

std::vector<WorkdistRow> workdist(const WorkdistSpec& spec, int workers) {
  const Instance in = make_tfim(spec.model.n, spec.model.field, spec.model.coupling, spec.beta);
  auto out = parallel_map<std::vector<WorkdistRow>>(
      spec.unitaries.size(), workers, [&](std::size_t u) {
        const auto& d = spec.unitaries[u];
        const WorkDistribution dist = distribution_for(in, spec.beta, d);
        const double wl = largest_cutoff(dist, spec.beta, in.th.deltaA, spec.eps).w_l;
        std::vector<WorkdistRow> rows;
        for (const auto& b : dist.bins) rows.push_back({d.label(), b.w, b.P, wl});
        return rows;
      });
  std::vector<WorkdistRow> rows;
  for (auto& v : out) rows.insert(rows.end(), v.begin(), v.end());
  return rows;
}

std::string workdist_csv(const std::vector<WorkdistRow>& rows) {
  Csv c({"unitary_label", "w_bin", "P", "w_l_star"});
  for (const auto& r : rows) c.row({r.label, fmt(r.w), fmt(r.P), fmt(r.w_l_star)});
  return c.str();
}

std::vector<ScalingRow> scaling(const ScalingSpec& spec, int workers) {
  static const char* kLabels[4] = {"T=0", "T=2", "T=n", "T=5n"};
  std::vector<std::pair<int, int>> tasks;
  for (int n : spec.n_values)
    for (int k = 0; k < 4; ++k) tasks.push_back({n, k});
  auto out = parallel_map<ScalingRow>(tasks.size(), workers, [&](std::size_t t) {
    const auto [n, k] = tasks[t];
    const double T = k == 0 ? 0.0 : k == 1 ? 2.0 : k == 2 ? double(n) : 5.0 * n;
    const Instance in = make_tfim(n, spec.field, spec.coupling, spec.beta);
    const auto d = with_step_policy(UnitaryDescriptor::interpolation(T, 0), spec.steps,
                                    spec.steps_per_time);
    const WorkDistribution dist = distribution_for(in, spec.beta, d);
    return ScalingRow{n, kLabels[k], T, largest_cutoff(dist, spec.beta, in.th.deltaA, spec.eps).w_l};
  });
  return out;
}

std::string scaling_csv(const std::vector<ScalingRow>& rows) {
  Csv c({"n", "T_label", "w_l_star"});
  for (const auto& r : rows) c.row({std::to_string(r.n), r.T_label, fmt(r.w_l_star)});
  return c.str();
}

json run_result_to_json(const RunResult& r) {
  json j;
  j["trace_distance"] = r.trace_distance;
  j["certified"] = r.certified;
  j["backend"] = to_string(r.backend);
  j["unitary"] = {{"label", r.unitary_label}, {"steps", r.unitary_steps}};
  j["w_l"] = r.w_l;
  j["w_max"] = r.w_max;
  j["deltaA"] = r.deltaA;
  j["cutoff"] = {{"source", to_string(r.cutoff_source)},
                 {"lhs", r.cutoff.lhs},
                 {"budget", r.cutoff.budget},
                 {"satisfied", r.cutoff.satisfied}};
  j["certification"] = {{"violations", r.certification.violations},
                        {"worst_above", r.certification.worst_above},
                        {"worst_below", r.certification.worst_below}};
  j["series"] = {{"Delta", r.series.Delta}, {"z", r.series.z},       {"delta", r.series.delta},
                 {"J", r.series.J},         {"alpha", r.alpha},      {"ancillas", r.ancilla_count}};
  j["rounds"] = {{"rounds_used", r.rounds.rounds_used},
                 {"initial_amplitude", r.rounds.initial_amplitude},
                 {"final_overlap", r.rounds.final_overlap},
                 {"predicted_amplitude", r.rounds.predicted_amplitude},
                 {"expected_rounds", r.expected_rounds},
                 {"measured_ratio", r.measured_rounds_ratio}};
  if (r.backend == Backend::Qsp) j["qsp_residual"] = r.qsp_residual;
  j["wall_time"] = r.wall_time;
  return j;
}

std::string matrix_csv(const Matrix& m) {
  Csv c({"row", "col", "re", "im"});
  for (Index i = 0; i < m.rows(); ++i)
    for (Index k = 0; k < m.cols(); ++k)
      c.row({std::to_string(i), std::to_string(k), fmt(m(i, k).real()), fmt(m(i, k).imag())});
  return c.str();
}

QspPhaseSet qsp_phases(const QspPhaseSpec& spec) {
  const FourierSeries s = build_series(select_parameters(spec.beta, spec.w_max, spec.w_l, spec.eps));
  return solve_series_phases(s, spec.options);
}

std::string phases_csv(const QspPhaseSet& p) {
  Csv c({"set", "index", "phi"});
  for (std::size_t i = 0; i < p.phases1.size(); ++i) c.row({"1", std::to_string(i), fmt(p.phases1[i])});
  for (std::size_t i = 0; i < p.phases2.size(); ++i) c.row({"2", std::to_string(i), fmt(p.phases2[i])});
  return c.str();
}

json phases_endpoints(const QspPhaseSet& p, const FourierSeries& s) {
  return {{"J", s.J()},
          {"delta", s.params.delta},
          {"Delta", s.params.Delta},
          {"alpha", s.l1},
          {"phi1_first", p.phases1.front()},
          {"phi1_last", p.phases1.back()},
          {"phi2_first", p.phases2.front()},
          {"phi2_last", p.phases2.back()},
          {"residual1", p.residual1},
          {"residual2", p.residual2}};
}

std::vector<VerifyEntry> verify(const VerifySpec& spec, int workers) {
  const Instance in = make_tfim(spec.model.n, spec.model.field, spec.model.coupling, spec.beta);
  return parallel_map<VerifyEntry>(spec.unitaries.size(), workers, [&](std::size_t k) {
    const auto& d = spec.unitaries[k];
    const NonEqUnitary u = build_unitary(d, in.h0, in.v, in.s0, in.s1, spec.beta);
    const auto fwd = forward_distribution(in.s0, in.s1, spec.beta, u.matrix);
    const auto rev = reverse_distribution(in.s0, in.s1, spec.beta, u.matrix);
    return VerifyEntry{d.label(), verify_fluctuation_identities(fwd.dist, rev, in.th)};
  });
}

json verify_to_json(const std::vector<VerifyEntry>& v) {
  json out = json::array();
  for (const auto& e : v)
    out.push_back({{"unitary", e.label},
                   {"jarzynski", e.residuals.jarzynski},
                   {"crooks_max_bin", e.residuals.crooks_max_bin},
                   {"crooks_second_moment", e.residuals.crooks_second_moment}});
  return out;
}

namespace {

void emit(const CommandOptions& opt, const std::string& text) {
  if (opt.out.empty())
    std::cout << text;
  else
    write_atomic(opt.out, text);
}

}  // namespace

int run_command(const std::string& name, const CommandOptions& opt) {
  const json cfg = opt.config.empty() ? json::object() : load_json_file(opt.config);
  const int workers = resolve_workers(opt.workers);

  if (name == "sweep-cutoff") {
    emit(opt, sweep_csv(sweep_cutoff(parse_sweep_spec(cfg), workers)));
  } else if (name == "workdist") {
    emit(opt, workdist_csv(workdist(parse_workdist_spec(cfg), workers)));
  } else if (name == "scaling") {
    emit(opt, scaling_csv(scaling(parse_scaling_spec(cfg), workers)));
  } else if (name == "run") {
    RunConfig rc = parse_run_config(cfg);
    if (opt.backend) rc.backend = parse_backend(*opt.backend);
    const RunResult r = run_tspp(rc);
    json j = run_result_to_json(r);
    j["seed"] = opt.seed;
    emit(opt, j.dump(2) + "\n");
    if (cfg.value("dump_tau1", false) && !opt.out.empty())
      write_atomic(opt.out + ".tau1.csv", matrix_csv(r.tau1));
  } else if (name == "qsp-phases") {
    const QspPhaseSpec spec = parse_qsp_phase_spec(cfg);
    const FourierSeries s =
        build_series(select_parameters(spec.beta, spec.w_max, spec.w_l, spec.eps));
    const QspPhaseSet p = solve_series_phases(s, spec.options);
    emit(opt, phases_csv(p));
    const std::string ends = phases_endpoints(p, s).dump(2) + "\n";
    if (opt.out.empty())
      std::cerr << ends;
    else
      write_atomic(opt.out + ".endpoints.json", ends);
  } else if (name == "verify") {
    const std::string text = verify_to_json(verify(parse_verify_spec(cfg), workers)).dump(2) + "\n";
    std::cout << text;
    if (!opt.out.empty()) write_atomic(opt.out, text);
  } else {
    throw ConfigError("unknown command " + name);
  }
  return 0;
}

}  // namespace tspp
