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
#include <string>
#include <vector>

#include "commands.hpp"
#include "recovery/error.hpp"
#include "recovery/lrr/model.hpp"
#include "recovery/lrr/simulation.hpp"
#include "recovery/lrr/yields.hpp"

namespace recovery::cli {
namespace {

using lrr::Vec2;
using lrr::Vec3;

struct LrrRun {
  lrr::LrrParams params = lrr::LrrParams::defaults();
  lrr::SimulationOptions simulation;
  long yield_states = 2'000;
};

void apply_vec3(ParameterSet& params, const std::string& prefix, Vec3& v, int first) {
  for (int k = 0; k < 3; ++k) params.apply(prefix + std::to_string(k + first), v(k));
}

// Every model and simulation parameter is addressable by a flat key, both in
// the input file and through --override.
void apply_all(ParameterSet& params, LrrRun& run) {
  lrr::LrrParams& p = run.params;
  params.apply("delta", p.delta);
  params.apply("gamma", p.gamma);
  params.apply("mu11", p.dynamics.mu11);
  params.apply("mu12", p.dynamics.mu12);
  params.apply("mu22", p.dynamics.mu22);
  apply_vec3(params, "sigma1_", p.dynamics.sigma1, 1);
  apply_vec3(params, "sigma2_", p.dynamics.sigma2, 1);
  params.apply("iota1", p.dynamics.iota(0));
  params.apply("iota2", p.dynamics.iota(1));
  params.apply("beta_c0", p.consumption.beta0);
  params.apply("beta_c1", p.consumption.beta1);
  params.apply("beta_c2", p.consumption.beta2);
  apply_vec3(params, "alpha_c", p.consumption.alpha, 1);
  params.apply("n_paths", run.simulation.n_paths);
  params.apply("burn_in", run.simulation.burn_in);
  params.apply("dt", run.simulation.dt);
  params.apply("bins", run.simulation.bins);
  params.apply("yield_states", run.yield_states);
}

std::map<std::string, double> file_parameters(const std::filesystem::path& path) {
  std::map<std::string, double> out;
  if (path.empty()) return out;
  const json doc = read_json(path);
  if (!doc.is_object()) throw InputError("lrr input must be a flat JSON object of numbers");
  for (const auto& [key, value] : doc.items()) {
    if (!value.is_number()) throw InputError("lrr input field '" + key + "' is not a number");
    out[key] = value.get<double>();
  }
  return out;
}

void write_density(const std::filesystem::path& path, const lrr::StationaryDensity* d) {
  auto csv = open_csv(path);
  csv << "x1,x2,mass\n";
  if (d == nullptr) return;
  const auto bins = d->histogram.rows();
  const Vec2 width = (d->upper - d->lower) / static_cast<double>(bins);
  for (Eigen::Index a = 0; a < bins; ++a) {
    for (Eigen::Index b = 0; b < bins; ++b) {
      csv << d->lower(0) + (a + 0.5) * width(0) << ',' << d->lower(1) + (b + 0.5) * width(1)
          << ',' << d->histogram(a, b) << '\n';
    }
  }
}

void write_yields(const std::filesystem::path& path, const lrr::LrrYieldCurves& c) {
  auto csv = open_csv(path);
  csv << "horizon_months,p25,p50,p75,p25_hat,p50_hat,p75_hat\n";
  for (std::size_t k = 0; k < c.horizons.size(); ++k) {
    const auto row = static_cast<Eigen::Index>(k);
    csv << c.horizons[k];
    for (int q = 0; q < 3; ++q) csv << ',' << c.physical_quartiles(row, q);
    for (int q = 0; q < 3; ++q) csv << ',' << c.recovered_quartiles(row, q);
    csv << '\n';
  }
}

json density_json(const lrr::StationaryDensity& d) {
  return {{"mean", {d.mean(0), d.mean(1)}},
          {"mean_se", {d.mean_se(0), d.mean_se(1)}},
          {"x2_variance", d.covariance(1, 1)},
          {"x2_variance_se", d.x2_variance_se},
          {"correlation", d.correlation},
          {"nan_paths", d.nan_paths}};
}

json functional_json(const lrr::AffineFunctional& f) {
  return {{"beta0", f.beta0},
          {"beta1", f.beta1},
          {"beta2", f.beta2},
          {"alpha", {f.alpha(0), f.alpha(1), f.alpha(2)}}};
}

json measure_json(const lrr::ChangedMeasureParams& m) {
  return {{"mu11", m.mu_hat_11},
          {"mu12", m.mu_hat_12},
          {"mu22", m.mu_hat_22},
          {"iota", {m.iota_hat(0), m.iota_hat(1)}}};
}

}  // namespace

void run_lrr(const ScenarioConfig& config) {
  LrrRun run;
  run.simulation.seed = config.seed;
  {
    ParameterSet from_file(file_parameters(config.input_path));
    apply_all(from_file, run);
    from_file.finish();
  }
  ParameterSet params(config.overrides);
  apply_all(params, run);
  params.finish();
  if (run.yield_states < 1) throw InputError("yield_states must be positive");

  std::vector<double> horizons;
  if (config.horizons) {
    horizons = *config.horizons;
  } else {
    for (int t = 1; t <= 1200; ++t) horizons.push_back(t);
  }
  ensure_directory(config.output_dir);

  const lrr::LrrSolution sol = lrr::solve(run.params);
  const auto& d = sol.params.dynamics;
  const auto physical = lrr::stationary_density(d, run.simulation);
  const auto recovered = lrr::stationary_density(sol.recovered.dynamics(d), run.simulation);
  std::optional<lrr::StationaryDensity> neutral;
  if (sol.risk_neutral) neutral = lrr::stationary_density(sol.risk_neutral->dynamics(d), run.simulation);

  write_density(config.output_dir / "density_physical.csv", &physical);
  write_density(config.output_dir / "density_recovered.csv", &recovered);
  write_density(config.output_dir / "density_risk_neutral.csv", neutral ? &*neutral : nullptr);

  // Both yield bands are evaluated over the same draws from the physical
  // stationary distribution.
  const Eigen::Index n_states = std::min<Eigen::Index>(run.yield_states, physical.samples.rows());
  const Eigen::Matrix<double, Eigen::Dynamic, 2> states = physical.samples.topRows(n_states);
  const auto consumption = lrr::yield_curves(sol, horizons, lrr::CashFlow::kConsumption, states);
  const auto bond = lrr::yield_curves(sol, horizons, lrr::CashFlow::kBond, states);
  write_yields(config.output_dir / "yields_consumption.csv", consumption);
  write_yields(config.output_dir / "yields_bond.csv", bond);

  json out;
  out["command"] = "lrr";
  out["gamma"] = sol.params.gamma;
  out["delta"] = sol.params.delta;
  out["value_function"] = {{"v0", sol.value.v0},
                           {"v1", sol.value.v1},
                           {"v2", sol.value.v2},
                           {"discriminant", sol.value.discriminant}};
  out["sdf"] = functional_json(sol.sdf);
  out["perron_frobenius"] = {{"eta_hat", sol.pf.eta_hat},
                             {"eta_hat_annual", lrr::kMonthsPerYear * sol.pf.eta_hat},
                             {"e1", sol.pf.e1},
                             {"e2", sol.pf.e2},
                             {"alpha_h", {sol.pf.alpha_h(0), sol.pf.alpha_h(1), sol.pf.alpha_h(2)}}};
  if (sol.pf.rejected) {
    out["perron_frobenius"]["rejected_root"] = {{"e2", sol.pf.rejected->e2},
                                                {"eta", sol.pf.rejected->eta},
                                                {"mu_hat_22", sol.pf.rejected->mu_hat_22}};
  }
  out["recovered_measure"] = measure_json(sol.recovered);
  out["risk_neutral_measure"] = sol.risk_neutral ? measure_json(*sol.risk_neutral) : json(nullptr);
  out["density_physical"] = density_json(physical);
  out["density_recovered"] = density_json(recovered);
  out["density_risk_neutral"] = neutral ? density_json(*neutral) : json(nullptr);
  out["simulation"] = {{"n_paths", run.simulation.n_paths},
                       {"burn_in_months", run.simulation.burn_in},
                       {"dt_months", run.simulation.dt},
                       {"seed", config.seed},
                       {"yield_states", n_states}};
  write_json(config.output_dir / "lrr_summary.json", out);
}

}  // namespace recovery::cli
