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
#include "recovery/markov/ergodicity.hpp"

#include <numeric>
#include <queue>
#include <sstream>

namespace recovery::markov {
namespace {

std::vector<std::vector<Index>> adjacency(const Matrix& p) {
  std::vector<std::vector<Index>> adj(p.rows());
  for (Index i = 0; i < p.rows(); ++i) {
    for (Index j = 0; j < p.cols(); ++j) {
      if (p(i, j) > 0.0) adj[i].push_back(j);
    }
  }
  return adj;
}

std::vector<bool> reachable_from(const std::vector<std::vector<Index>>& adj, Index start) {
  std::vector<bool> seen(adj.size(), false);
  std::vector<Index> stack{start};
  seen[start] = true;
  while (!stack.empty()) {
    const Index u = stack.back();
    stack.pop_back();
    for (Index v : adj[u]) {
      if (!seen[v]) {
        seen[v] = true;
        stack.push_back(v);
      }
    }
  }
  return seen;
}

// Period of the class containing `root`: gcd over class edges (u, v) of
// level(u) + 1 - level(v), with BFS levels from root inside the class.
long class_period(const std::vector<std::vector<Index>>& adj,
                  const std::vector<Index>& class_of, Index root) {
  const Index n = static_cast<Index>(adj.size());
  std::vector<long> level(n, -1);
  std::queue<Index> queue;
  level[root] = 0;
  queue.push(root);
  long g = 0;
  while (!queue.empty()) {
    const Index u = queue.front();
    queue.pop();
    for (Index v : adj[u]) {
      if (class_of[v] != class_of[root]) continue;
      if (level[v] < 0) {
        level[v] = level[u] + 1;
        queue.push(v);
      } else {
        g = std::gcd(g, std::abs(level[u] + 1 - level[v]));
      }
    }
  }
  return g;
}

}  // namespace

ErgodicityReport ergodicity_check(const StochasticMatrix& transition) {
  const Index n = transition.size();
  const auto adj = adjacency(transition.matrix());
  std::vector<std::vector<bool>> reach(n);
  for (Index i = 0; i < n; ++i) reach[i] = reachable_from(adj, i);

  ErgodicityReport report;
  std::vector<Index> class_of(n, -1);
  for (Index i = 0; i < n; ++i) {
    if (class_of[i] >= 0) continue;
    std::vector<Index> members;
    for (Index j = 0; j < n; ++j) {
      if (reach[i][j] && reach[j][i]) {
        class_of[j] = static_cast<Index>(report.classes.size());
        members.push_back(j);
      }
    }
    report.classes.push_back(std::move(members));
  }
  for (const auto& members : report.classes) {
    report.periods.push_back(class_period(adj, class_of, members.front()));
  }

  report.irreducible = report.classes.size() == 1;
  report.aperiodic = true;
  for (long period : report.periods) report.aperiodic = report.aperiodic && period == 1;

  std::ostringstream msg;
  if (!report.irreducible) {
    msg << "reducible: " << report.classes.size() << " communicating classes";
  }
  for (std::size_t c = 0; c < report.classes.size(); ++c) {
    if (report.periods[c] != 1) {
      if (msg.tellp() > 0) msg << "; ";
      msg << "class containing state " << report.classes[c].front() << " has period "
          << report.periods[c];
    }
  }
  report.diagnostics = msg.str();
  return report;
}

}  // namespace recovery::markov
