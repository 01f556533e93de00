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
#include "recovery/bounds/problem.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>
#include <string>

#include "recovery/error.hpp"
#include "recovery/markov/recovery.hpp"
#include "recovery/util/parallel.hpp"

namespace recovery::bounds {
namespace {

using markov::MarkovPricingEconomy;
using markov::RecoveredMeasure;

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Index draw(const Eigen::Ref<const Vector>& probabilities, std::mt19937_64& rng) {
  const double u = uniform01(rng);
  double cumulative = 0.0;
  for (Index k = 0; k < probabilities.size(); ++k) {
    cumulative += probabilities(k);
    if (u < cumulative) return k;
  }
  return probabilities.size() - 1;
}

const Matrix& increments(const RecoveredMeasure& recovered) {
  if (!recovered.h_increments) {
    throw InputError("recovery carries no martingale increments; recover from an economy");
  }
  return *recovered.h_increments;
}

void check_menu(const PayoffMenu& payoffs, Index n) {
  if (payoffs.empty()) throw InputError("payoff menu is empty");
  for (const Matrix& y : payoffs) {
    if (y.rows() != n || y.cols() != n) throw InputError("payoffs must be n x n");
  }
}

// Price of every payoff in state i: sum_j q_ij y_ij.
Matrix state_prices(const Matrix& q, const PayoffMenu& payoffs) {
  Matrix out(q.rows(), static_cast<Index>(payoffs.size()));
  for (std::size_t a = 0; a < payoffs.size(); ++a) {
    out.col(static_cast<Index>(a)) = q.cwiseProduct(payoffs[a]).rowwise().sum();
  }
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  return cells;
}

}  // namespace

Vector conditional_discrepancy(const MarkovPricingEconomy& economy,
                               const RecoveredMeasure& recovered, double theta) {
  const Divergence div(theta);
  const Matrix& p = economy.transition().matrix();
  const Matrix& h = increments(recovered);
  Vector out = Vector::Zero(p.rows());
  for (Index i = 0; i < p.rows(); ++i) {
    for (Index j = 0; j < p.cols(); ++j) {
      if (p(i, j) > 0.0) out(i) += p(i, j) * div.phi(h(i, j));
    }
  }
  return out;
}

double population_discrepancy(const MarkovPricingEconomy& economy,
                              const RecoveredMeasure& recovered, double theta) {
  return markov::stationary_distribution(economy.transition())
      .dot(conditional_discrepancy(economy, recovered, theta));
}

PayoffMenu arrow_payoffs(Index n) {
  PayoffMenu out;
  for (Index a = 0; a < n; ++a) {
    Matrix y = Matrix::Zero(n, n);
    y.col(a).setOnes();
    out.push_back(std::move(y));
  }
  return out;
}

PayoffMenu managed_arrow_payoffs(Index n) {
  PayoffMenu out;
  for (Index k = 0; k < n; ++k) {
    for (Index a = 0; a < n; ++a) {
      Matrix y = Matrix::Zero(n, n);
      y(k, a) = 1.0;
      out.push_back(std::move(y));
    }
  }
  return out;
}

PayoffMenu bond_payoff(Index n) { return {Matrix::Ones(n, n)}; }

PayoffMenu concat(PayoffMenu a, const PayoffMenu& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

BoundProblem generate_problem_from_chain(const MarkovPricingEconomy& economy,
                                         const RecoveredMeasure& recovered,
                                         const PayoffMenu& payoffs, const PopulationMode&) {
  const Index n = economy.size();
  check_menu(payoffs, n);
  const Matrix& p = economy.transition().matrix();
  const Vector pi = markov::stationary_distribution(economy.transition());
  const Matrix prices = state_prices(economy.prices().matrix(), payoffs);
  const Index m = static_cast<Index>(payoffs.size());

  std::vector<std::pair<Index, Index>> cells;
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (pi(i) * p(i, j) > 0.0) cells.emplace_back(i, j);
    }
  }
  const Index t = static_cast<Index>(cells.size());
  Matrix y(t, m), q(t, m);
  Vector r(t), w(t);
  for (Index k = 0; k < t; ++k) {
    const auto [i, j] = cells[static_cast<std::size_t>(k)];
    for (Index a = 0; a < m; ++a) y(k, a) = payoffs[static_cast<std::size_t>(a)](i, j);
    q.row(k) = prices.row(i);
    r(k) = std::exp(-recovered.eta_hat) * recovered.e_hat(j) / recovered.e_hat(i);
    w(k) = pi(i) * p(i, j);
  }
  w /= w.sum();
  return BoundProblem(std::move(y), std::move(q), std::move(r), std::move(w));
}

BoundProblem generate_problem_from_chain(const MarkovPricingEconomy& economy,
                                         const RecoveredMeasure& recovered,
                                         const PayoffMenu& payoffs, const SampledMode& mode) {
  const Index n = economy.size();
  check_menu(payoffs, n);
  if (mode.length < 1) throw InputError("sampled problems need a positive length");
  const Matrix& p = economy.transition().matrix();
  const Vector pi = markov::stationary_distribution(economy.transition());
  const Matrix prices = state_prices(economy.prices().matrix(), payoffs);
  const Index m = static_cast<Index>(payoffs.size());
  const Index t = mode.length;

  std::mt19937_64 rng(mode.seed);
  Matrix y(t, m), q(t, m);
  Vector r(t);
  Index i = draw(pi, rng);
  for (Index k = 0; k < t; ++k) {
    const Index j = draw(p.row(i).transpose(), rng);
    for (Index a = 0; a < m; ++a) y(k, a) = payoffs[static_cast<std::size_t>(a)](i, j);
    q.row(k) = prices.row(i);
    r(k) = std::exp(-recovered.eta_hat) * recovered.e_hat(j) / recovered.e_hat(i);
    i = j;
  }
  return BoundProblem(std::move(y), std::move(q), std::move(r));
}

BootstrapSummary bootstrap_bound(const BoundProblem& problem, double theta, long replicas,
                                 std::uint64_t seed, const BoundOptions& options) {
  if (replicas < 2) throw InputError("bootstrap needs at least two replicas");
  const Index t = problem.samples();
  std::vector<double> values(static_cast<std::size_t>(replicas));
  util::parallel_blocks(static_cast<std::size_t>(replicas), [&](std::size_t b) {
    std::mt19937_64 rng(util::sub_seed(seed, b));
    Matrix y(t, problem.assets()), q(t, problem.assets());
    Vector r(t);
    for (Index k = 0; k < t; ++k) {
      const Index row = static_cast<Index>(uniform01(rng) * static_cast<double>(t));
      y.row(k) = problem.payoffs().row(row);
      q.row(k) = problem.prices().row(row);
      r(k) = problem.long_bond_return()(row);
    }
    const BoundResult result =
        unconditional_bound(BoundProblem(std::move(y), std::move(q), std::move(r)), theta, options);
    values[b] = result.lambda_bar;
  });
  util::MomentAccumulator acc;
  for (double v : values) acc.add(v);
  return {acc.mean(), std::sqrt(acc.variance()), replicas};
}

BoundProblem read_problem_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw InputError("empty problem file " + path.string());
  const auto header = split(line);
  if (header.size() < 4 || (header.size() - 2) % 2 != 0 || header[0] != "weight" ||
      header[1] != "r_infty") {
    throw InputError("problem header must be weight,r_infty,y_1..y_m,q_1..q_m");
  }
  const std::size_t m = (header.size() - 2) / 2;
  std::vector<std::vector<double>> rows;
  long line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != header.size()) {
      throw InputError("line " + std::to_string(line_no) + " has the wrong number of columns");
    }
    std::vector<double> values;
    for (const auto& c : cells) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(c, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || c.find_first_not_of(" \t\r", used) != std::string::npos) {
        throw InputError("line " + std::to_string(line_no) + ": not a number: " + c);
      }
      values.push_back(v);
    }
    rows.push_back(std::move(values));
  }
  const Index t = static_cast<Index>(rows.size());
  if (t == 0) throw InputError("problem file has no rows");
  Matrix y(t, static_cast<Index>(m)), q(t, static_cast<Index>(m));
  Vector r(t), w(t);
  for (Index k = 0; k < t; ++k) {
    const auto& row = rows[static_cast<std::size_t>(k)];
    w(k) = row[0];
    r(k) = row[1];
    for (std::size_t a = 0; a < m; ++a) {
      y(k, static_cast<Index>(a)) = row[2 + a];
      q(k, static_cast<Index>(a)) = row[2 + m + a];
    }
  }
  return BoundProblem(std::move(y), std::move(q), std::move(r), std::move(w));
}

void write_problem_csv(const BoundProblem& problem, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  const Index m = problem.assets();
  out << "weight,r_infty";
  for (Index a = 1; a <= m; ++a) out << ",y_" << a;
  for (Index a = 1; a <= m; ++a) out << ",q_" << a;
  out << '\n' << std::setprecision(17);
  for (Index k = 0; k < problem.samples(); ++k) {
    out << problem.weights()(k) << ',' << problem.long_bond_return()(k);
    for (Index a = 0; a < m; ++a) out << ',' << problem.payoffs()(k, a);
    for (Index a = 0; a < m; ++a) out << ',' << problem.prices()(k, a);
    out << '\n';
  }
}

}  // namespace recovery::bounds
