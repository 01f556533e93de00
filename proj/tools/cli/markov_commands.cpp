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
#include "commands.hpp"

#include <cmath>

#include "recovery/error.hpp"
#include "recovery/markov/ergodicity.hpp"
#include "recovery/markov/perron_frobenius.hpp"
#include "recovery/markov/recovery.hpp"
#include "recovery/markov/yields.hpp"
#include "recovery/preferences/preferences.hpp"

namespace recovery::cli {
namespace {

using markov::Index;
using markov::Matrix;
using markov::Vector;

markov::MarkovPricingEconomy preference_economy(const json& doc, ParameterSet& params) {
  const markov::StochasticMatrix p(matrix_from_json(doc.at("transition"), "transition"));
  const json& pref = doc.at("preferences");
  if (!pref.is_object() || !pref.contains("type") || !pref.at("type").is_string()) {
    throw InputError("preferences need a string 'type'");
  }
  const std::string type = pref.at("type").get<std::string>();
  double delta = number_from_json(pref, "delta");
  double gamma = number_from_json(pref, "gamma");
  double g_c = pref.contains("g_c") ? number_from_json(pref, "g_c") : 0.0;
  params.apply("delta", delta);
  params.apply("gamma", gamma);
  params.apply("g_c", g_c);
  if (!pref.contains("consumption")) throw InputError("preferences need 'consumption'");
  const Vector c = vector_from_json(pref.at("consumption"), "consumption");

  if (type == "power") {
    return markov::build_economy(p, preferences::power_sdf({delta, gamma, g_c, c}));
  }
  if (type == "recursive") {
    const preferences::RecursiveUtilitySpec spec{delta, gamma, g_c, c};
    const auto value = preferences::solve_continuation_value(spec, p);
    return markov::build_economy(p, preferences::recursive_sdf(spec, p, value));
  }
  throw InputError("unknown preference type '" + type + "' (power or recursive)");
}

std::vector<long> integer_horizons(const ScenarioConfig& config, long first, long last) {
  std::vector<long> out;
  if (!config.horizons) {
    for (long t = first; t <= last; ++t) out.push_back(t);
    return out;
  }
  for (double t : *config.horizons) {
    if (t < 1.0 || t != std::floor(t)) {
      throw InputError("this command needs positive integer horizons");
    }
    out.push_back(static_cast<long>(t));
  }
  return out;
}

json ergodicity_json(const markov::StochasticMatrix& p) {
  const auto report = markov::ergodicity_check(p);
  return {{"irreducible", report.irreducible},
          {"aperiodic", report.aperiodic},
          {"diagnostics", report.diagnostics}};
}

}  // namespace

LoadedEconomy load_economy(const json& doc, ParameterSet& params) {
  if (!doc.is_object()) throw InputError("economy file must hold a JSON object");
  try {
    if (doc.contains("preferences")) {
      auto e = preference_economy(doc, params);
      const markov::PricingMatrix q = e.prices();
      return {std::move(e), q, "preferences"};
    }
    if (doc.contains("prices")) {
      return {std::nullopt, markov::PricingMatrix(matrix_from_json(doc.at("prices"), "prices")),
              "prices"};
    }
    if (doc.contains("transition") && doc.contains("sdf")) {
      auto e = markov::build_economy(
          markov::StochasticMatrix(matrix_from_json(doc.at("transition"), "transition")),
          markov::SdfMatrix(matrix_from_json(doc.at("sdf"), "sdf")));
      const markov::PricingMatrix q = e.prices();
      return {std::move(e), q, "transition_sdf"};
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("economy: ") + e.what());
  }
  throw InputError("economy needs 'prices', 'transition' with 'sdf', or 'preferences'");
}

LoadedEconomy load_economy(const ScenarioConfig& config, ParameterSet& params) {
  if (config.input_path.empty()) throw InputError(config.command + " needs --input");
  return load_economy(read_json(config.input_path), params);
}

void run_recover(const ScenarioConfig& config) {
  ParameterSet params(config.overrides);
  const LoadedEconomy loaded = load_economy(config, params);
  params.finish();
  ensure_directory(config.output_dir);

  const markov::RecoveredMeasure rec =
      loaded.economy ? markov::recover(*loaded.economy) : markov::recover(loaded.prices);
  const auto pf = markov::perron_frobenius(loaded.prices);
  const Matrix r_infty = markov::holding_period_return_limit(loaded.prices);

  json out;
  out["command"] = "recover";
  out["layout"] = loaded.layout;
  out["eta_hat"] = rec.eta_hat;
  out["e_hat"] = to_json(rec.e_hat);
  out["e_star"] = to_json(rec.e_star);
  out["p_hat"] = to_json(rec.p_hat.matrix());
  out["pf_residual"] = pf.residual;
  out["subdominant_ratio"] = markov::subdominant_ratio(loaded.prices.matrix());
  out["ergodicity"] = ergodicity_json(rec.p_hat);
  if (loaded.economy) {
    const Matrix& p = loaded.economy->transition().matrix();
    out["transition"] = to_json(p);
    out["max_abs_p_hat_minus_p"] = (rec.p_hat.matrix() - p).cwiseAbs().maxCoeff();
    out["h_increments"] = to_json(*rec.h_increments);
  }
  write_json(config.output_dir / "recovery.json", out);

  auto csv = open_csv(config.output_dir / "decomposition.csv");
  const Index n = loaded.prices.size();
  csv << "i,j,q,p_hat,r_infty";
  if (loaded.economy) csv << ",p,sdf,h_hat";
  csv << '\n';
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      csv << i << ',' << j << ',' << loaded.prices(i, j) << ',' << rec.p_hat(i, j) << ','
          << r_infty(i, j);
      if (loaded.economy) {
        csv << ',' << loaded.economy->transition()(i, j) << ',' << loaded.economy->sdf()(i, j)
            << ',' << (*rec.h_increments)(i, j);
      }
      csv << '\n';
    }
  }
}

void run_forward(const ScenarioConfig& config) {
  ParameterSet params(config.overrides);
  const LoadedEconomy loaded = load_economy(config, params);
  params.finish();
  const std::vector<long> horizons = integer_horizons(config, 1, 60);
  ensure_directory(config.output_dir);

  const auto rec = markov::recover(loaded.prices);
  const auto neutral = markov::risk_neutral(loaded.prices);
  const Index n = loaded.prices.size();
  auto summary = open_csv(config.output_dir / "forward.csv");
  auto cells = open_csv(config.output_dir / "forward_measures.csv");
  summary << "horizon,one_period_limit_minus_p_hat\n";
  cells << "horizon,i,j,forward\n";
  for (long t : horizons) {
    const Matrix f = markov::forward_measure(loaded.prices, t).matrix();
    summary << t << ',';
    // The limit uses the (t-1)-period bond, so it starts at t = 2.
    if (t >= 2) {
      const Matrix limit = markov::forward_one_period_limit(loaded.prices, t).matrix();
      summary << (limit - rec.p_hat.matrix()).cwiseAbs().maxCoeff();
    }
    summary << '\n';
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) cells << t << ',' << i << ',' << j << ',' << f(i, j) << '\n';
    }
  }
  json out;
  out["command"] = "forward";
  out["risk_neutral"] = to_json(neutral.transition.matrix());
  out["bond_prices"] = to_json(neutral.bond_prices);
  out["p_hat"] = to_json(rec.p_hat.matrix());
  write_json(config.output_dir / "forward.json", out);
}

void run_yields(const ScenarioConfig& config) {
  ParameterSet params(config.overrides);
  const LoadedEconomy loaded = load_economy(config, params);
  params.finish();
  if (!loaded.economy) throw InputError("yields need the physical transition, not prices alone");
  const std::vector<long> horizons = integer_horizons(config, 1, 120);
  ensure_directory(config.output_dir);

  const auto& e = *loaded.economy;
  const Vector ones = Vector::Ones(e.size());
  const auto physical =
      markov::yield_curve(e, ones, std::monostate{}, horizons, markov::Measure::kPhysical);
  const auto recovered = markov::yield_curve(e, ones, std::monostate{}, horizons,
                                             markov::Measure::kLongTermRiskNeutral);
  auto csv = open_csv(config.output_dir / "yields.csv");
  csv << "horizon,state,physical,long_term_risk_neutral\n";
  for (std::size_t k = 0; k < physical.horizons.size(); ++k) {
    const Index row = static_cast<Index>(k);
    for (Index s = 0; s < e.size(); ++s) {
      csv << physical.horizons[k] << ',' << s << ',' << physical.yields(row, s) << ','
          << recovered.yields(row, s) << '\n';
    }
  }
  json out;
  out["command"] = "yields";
  out["long_horizon_limit"] = -markov::recover(e.prices()).eta_hat;
  write_json(config.output_dir / "yields.json", out);
}

void run(const ScenarioConfig& config) {
  if (config.command == "recover") return run_recover(config);
  if (config.command == "forward") return run_forward(config);
  if (config.command == "yields") return run_yields(config);
  if (config.command == "lrr") return run_lrr(config);
  if (config.command == "bounds") return run_bounds(config);
  if (config.command == "sqrt") return run_sqrt(config);
  if (config.command == "demo-approx") return run_demo_approx(config);
  throw InputError("unknown command '" + config.command + "'");
}

}  // namespace recovery::cli
