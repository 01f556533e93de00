/*
 * Copyright 2026 The Recovery Lab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include <cmath>
#include <string>

#include "commands.hpp"
#include "recovery/bounds/bound.hpp"
#include "recovery/bounds/problem.hpp"
#include "recovery/diffusion/square_root.hpp"
#include "recovery/error.hpp"
#include "recovery/markov/recovery.hpp"

namespace recovery::cli {
namespace {

json bound_json(double theta, const bounds::BoundResult& r) {
  json out = {{"theta", theta},
              {"lambda_bar", r.lambda_bar},
              {"dual_value", r.dual_value},
              {"duality_gap", r.duality_gap},
              {"converged", r.converged},
              {"infeasible", r.infeasible},
              {"iterations", r.iterations},
              {"multipliers", to_json(r.multipliers)},
              {"constraint_residuals", to_json(r.constraint_residuals)}};
  if (r.certificate) out["certificate"] = to_json(*r.certificate);
  if (!r.diagnostics.empty()) out["diagnostics"] = r.diagnostics;
  return out;
}

json candidate_json(const diffusion::EigenCandidate& c) {
  return {{"upsilon", c.upsilon},
          {"eta", c.eta},
          {"kappa_new", c.kappa_new},
          {"ergodic", c.ergodic},
          {"constant_residual", c.constant_residual},
          {"linear_residual", c.linear_residual}};
}

}  // namespace

// A problem CSV is bounded as given. An economy JSON is turned into its
// population problem over the bond and the Arrow claims (or a sampled path
// with --override sample_length=T), and the exact discrepancy is reported
// next to each bound.
void run_bounds(const ScenarioConfig& config) {
  if (config.input_path.empty()) throw InputError("bounds needs --input");
  const std::vector<double> thetas =
      config.thetas.empty() ? std::vector<double>{-1.0, 0.0, 1.0} : config.thetas;
  ParameterSet params(config.overrides);
  long sample_length = 0;
  long replicas = 0;
  params.apply("sample_length", sample_length);
  params.apply("bootstrap_replicas", replicas);

  std::optional<bounds::BoundProblem> problem;
  std::optional<LoadedEconomy> loaded;
  std::optional<markov::RecoveredMeasure> rec;
  if (config.input_path.extension() == ".csv") {
    params.finish();
    problem = bounds::read_problem_csv(config.input_path);
  } else {
    loaded = load_economy(config, params);
    params.finish();
    if (!loaded->economy) throw InputError("bounds need the physical transition");
    rec = markov::recover(*loaded->economy);
    const auto n = loaded->economy->size();
    const auto menu = bounds::concat(bounds::bond_payoff(n), bounds::arrow_payoffs(n));
    if (sample_length > 0) {
      problem = bounds::generate_problem_from_chain(
          *loaded->economy, *rec, menu, bounds::SampledMode{sample_length, config.seed});
    } else {
      problem = bounds::generate_problem_from_chain(*loaded->economy, *rec, menu,
                                                    bounds::PopulationMode{});
    }
  }
  ensure_directory(config.output_dir);

  json out;
  out["command"] = "bounds";
  out["samples"] = problem->samples();
  out["assets"] = problem->assets();
  out["kazemi_test"] = to_json(bounds::kazemi_test(*problem));
  json results = json::array();
  for (double theta : thetas) {
    json entry = bound_json(theta, bounds::unconditional_bound(*problem, theta));
    if (loaded) {
      entry["population_discrepancy"] =
          bounds::population_discrepancy(*loaded->economy, *rec, theta);
    }
    if (replicas > 0) {
      const auto b = bounds::bootstrap_bound(*problem, theta, replicas, config.seed);
      entry["bootstrap"] = {{"mean", b.mean}, {"standard_error", b.standard_error},
                            {"replicas", b.replicas}};
    }
    results.push_back(std::move(entry));
  }
  out["bounds"] = std::move(results);
  write_json(config.output_dir / "bounds.json", out);
  if (loaded) bounds::write_problem_csv(*problem, config.output_dir / "problem.csv");
}

void run_sqrt(const ScenarioConfig& config) {
  diffusion::SquareRootModel model{0.2, 0.5, 0.3, 1.0, -0.03};
  diffusion::SimulationOptions sim;
  sim.horizon = 5.0;
  sim.dt = 0.01;
  sim.n_paths = 100'000;
  sim.seed = config.seed;

  auto apply = [&](ParameterSet& p) {
    p.apply("kappa", model.kappa);
    p.apply("mu_bar", model.mu_bar);
    p.apply("sigma_bar", model.sigma_bar);
    p.apply("alpha_bar", model.alpha_bar);
    p.apply("beta_bar", model.beta_bar);
    p.apply("horizon", sim.horizon);
    p.apply("dt", sim.dt);
    p.apply("n_paths", sim.n_paths);
    p.apply("x0", sim.x0);
  };
  if (!config.input_path.empty()) {
    const json doc = read_json(config.input_path);
    if (!doc.is_object()) throw InputError("sqrt input must be a flat JSON object of numbers");
    std::map<std::string, double> values;
    for (const auto& [key, value] : doc.items()) {
      if (!value.is_number()) throw InputError("sqrt input field '" + key + "' is not a number");
      values[key] = value.get<double>();
    }
    ParameterSet from_file(values);
    apply(from_file);
    from_file.finish();
  }
  ParameterSet params(config.overrides);
  apply(params);
  params.finish();
  ensure_directory(config.output_dir);

  const auto candidates = diffusion::eigen_candidates(model);
  const auto selection = diffusion::select_ergodic(candidates);
  json out;
  out["command"] = "sqrt";
  out["model"] = {{"kappa", model.kappa},         {"mu_bar", model.mu_bar},
                  {"sigma_bar", model.sigma_bar}, {"alpha_bar", model.alpha_bar},
                  {"beta_bar", model.beta_bar},   {"feller", model.feller()}};
  out["candidates"] = {candidate_json(candidates[0]), candidate_json(candidates[1])};
  out["degenerate"] = selection.degenerate;
  out["diagnostics"] = selection.diagnostics;
  auto csv = open_csv(config.output_dir / "sqrt_simulation.csv");
  csv << "candidate,measure,mean_x,var_x,sdf_mean,sdf_se,martingale_mean,martingale_se,"
         "nan_paths\n";
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    for (auto measure :
         {diffusion::SimulationMeasure::kPhysical, diffusion::SimulationMeasure::kCandidate}) {
      const bool physical = measure == diffusion::SimulationMeasure::kPhysical;
      // A non-reverting candidate measure has no stationary moments to report.
      if (!physical && !candidates[k].ergodic) continue;
      const auto st = diffusion::simulate(model, measure, candidates[k], sim);
      csv << k << ',' << (physical ? "physical" : "candidate") << ',' << st.mean_x << ','
          << st.var_x << ',' << st.sdf_mean << ',' << st.sdf_se << ',' << st.martingale_mean
          << ',' << st.martingale_se << ',' << st.nan_paths << '\n';
    }
  }
  if (selection.selected) out["selected"] = candidate_json(*selection.selected);
  write_json(config.output_dir / "sqrt.json", out);
  if (selection.degenerate) {
    throw ModelError("no candidate mean-reverts: " + selection.diagnostics);
  }
}

}  // namespace recovery::cli
