#include "ofdma/flow.hpp"

#include <cmath>
#include <queue>
#include <stdexcept>

namespace ofdma {

namespace {

struct Arc {
  int to;
  int capacity;  // residual
  double cost;
  size_t reverse;  // index of the paired reverse arc in graph[to]
};

class ResidualGraph {
 public:
  explicit ResidualGraph(int num_nodes) : adj_(static_cast<size_t>(num_nodes)) {}

  void add_arc(int from, int to, int capacity, double cost) {
    adj_[static_cast<size_t>(from)].push_back(
        {to, capacity, cost, adj_[static_cast<size_t>(to)].size()});
    adj_[static_cast<size_t>(to)].push_back(
        {from, 0, -cost, adj_[static_cast<size_t>(from)].size() - 1});
  }

  std::vector<Arc>& at(int node) { return adj_[static_cast<size_t>(node)]; }
  int size() const { return static_cast<int>(adj_.size()); }

 private:
  std::vector<std::vector<Arc>> adj_;
};

}  // namespace

FlowSolution solve_flow(const FlowProblem& problem) {
  const int num_users = static_cast<int>(problem.demands.size());
  const int m = problem.num_subcarriers;
  if (static_cast<int>(problem.cost.size()) != num_users) {
    throw std::invalid_argument("solve_flow: cost rows must match demands");
  }
  int total_demand = 0;
  for (int i = 0; i < num_users; ++i) {
    if (problem.demands[static_cast<size_t>(i)] < 0) {
      throw std::invalid_argument("solve_flow: negative demand");
    }
    if (static_cast<int>(problem.cost[static_cast<size_t>(i)].size()) != m) {
      throw std::invalid_argument("solve_flow: cost row size mismatch");
    }
    total_demand += problem.demands[static_cast<size_t>(i)];
  }

  FlowSolution sol;
  sol.assign.assign(static_cast<size_t>(num_users),
                    std::vector<uint8_t>(static_cast<size_t>(m), 0));
  sol.shortfall.assign(static_cast<size_t>(num_users), 0);
  sol.user_potential.assign(static_cast<size_t>(num_users), 0.0);
  sol.subcarrier_potential.assign(static_cast<size_t>(m), 0.0);

  if (total_demand == 0) {
    sol.feasible = true;
    return sol;
  }
  if (!problem.allow_shortfall && total_demand > m) {
    return sol;  // more demand than subcarrier slots
  }

  // Nodes: 0 = source, 1..U = users, U+1..U+m = subcarriers, U+m+1 = sink.
  const int source = 0;
  const int user0 = 1;
  const int sub0 = 1 + num_users;
  const int sink = 1 + num_users + m;
  ResidualGraph graph(sink + 1);

  for (int i = 0; i < num_users; ++i) {
    graph.add_arc(source, user0 + i, problem.demands[static_cast<size_t>(i)],
                  0.0);
  }
  for (int i = 0; i < num_users; ++i) {
    for (int j = 0; j < m; ++j) {
      const double c = problem.cost[static_cast<size_t>(i)][static_cast<size_t>(j)];
      if (std::isinf(c)) continue;
      if (!(c >= 0.0)) {
        throw std::invalid_argument("solve_flow: costs must be >= 0");
      }
      graph.add_arc(user0 + i, sub0 + j, 1, c);
    }
    if (problem.allow_shortfall) {
      if (!(problem.shortfall_penalty >= 0.0)) {
        throw std::invalid_argument("solve_flow: penalty must be >= 0");
      }
      graph.add_arc(user0 + i, sink, problem.demands[static_cast<size_t>(i)],
                    problem.shortfall_penalty);
    }
  }
  for (int j = 0; j < m; ++j) {
    graph.add_arc(sub0 + j, sink, 1, 0.0);
  }

  const int num_nodes = graph.size();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> potential(static_cast<size_t>(num_nodes), 0.0);
  std::vector<double> dist(static_cast<size_t>(num_nodes));
  std::vector<int> parent_node(static_cast<size_t>(num_nodes));
  std::vector<size_t> parent_arc(static_cast<size_t>(num_nodes));

  int pushed = 0;
  while (pushed < total_demand) {
    // Dijkstra on reduced costs.  All original costs are nonnegative and
    // potentials keep reduced costs nonnegative across augmentations.
    dist.assign(static_cast<size_t>(num_nodes), inf);
    parent_node.assign(static_cast<size_t>(num_nodes), -1);
    dist[source] = 0.0;
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    heap.emplace(0.0, source);
    while (!heap.empty()) {
      const auto [d, u] = heap.top();
      heap.pop();
      if (d > dist[static_cast<size_t>(u)]) continue;
      auto& arcs = graph.at(u);
      for (size_t a = 0; a < arcs.size(); ++a) {
        const Arc& arc = arcs[a];
        if (arc.capacity <= 0) continue;
        const double nd = d + arc.cost + potential[static_cast<size_t>(u)] -
                          potential[static_cast<size_t>(arc.to)];
        if (nd < dist[static_cast<size_t>(arc.to)]) {
          dist[static_cast<size_t>(arc.to)] = nd;
          parent_node[static_cast<size_t>(arc.to)] = u;
          parent_arc[static_cast<size_t>(arc.to)] = a;
          heap.emplace(nd, arc.to);
        }
      }
    }
    if (parent_node[static_cast<size_t>(sink)] < 0) {
      return sol;  // residual demand cannot reach the sink
    }
    // Capping at the sink distance keeps reduced costs nonnegative on every
    // residual arc, including those leaving nodes Dijkstra never reached, so
    // the final potentials certify optimality globally.
    const double d_sink = dist[static_cast<size_t>(sink)];
    for (int v = 0; v < num_nodes; ++v) {
      potential[static_cast<size_t>(v)] +=
          std::min(dist[static_cast<size_t>(v)], d_sink);
    }
    // Bottleneck along the augmenting path.
    int bottleneck = total_demand - pushed;
    for (int v = sink; v != source; v = parent_node[static_cast<size_t>(v)]) {
      const int u = parent_node[static_cast<size_t>(v)];
      const Arc& arc = graph.at(u)[parent_arc[static_cast<size_t>(v)]];
      bottleneck = std::min(bottleneck, arc.capacity);
    }
    for (int v = sink; v != source; v = parent_node[static_cast<size_t>(v)]) {
      const int u = parent_node[static_cast<size_t>(v)];
      Arc& arc = graph.at(u)[parent_arc[static_cast<size_t>(v)]];
      arc.capacity -= bottleneck;
      graph.at(v)[arc.reverse].capacity += bottleneck;
    }
    pushed += bottleneck;
  }

  // Read the unit assignments back off the user->subcarrier arcs.
  for (int i = 0; i < num_users; ++i) {
    int granted = 0;
    for (const Arc& arc : graph.at(user0 + i)) {
      if (arc.to >= sub0 && arc.to < sub0 + m && arc.cost >= 0.0 &&
          arc.capacity == 0) {
        sol.assign[static_cast<size_t>(i)][static_cast<size_t>(arc.to - sub0)] = 1;
        ++granted;
      }
    }
    sol.shortfall[static_cast<size_t>(i)] =
        problem.demands[static_cast<size_t>(i)] - granted;
  }
  // Objective summed subcarrier-major so that single-occupant totals match
  // the per-subcarrier order used by the power evaluator bit for bit.
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < num_users; ++i) {
      if (sol.assign[static_cast<size_t>(i)][static_cast<size_t>(j)]) {
        sol.objective +=
            problem.cost[static_cast<size_t>(i)][static_cast<size_t>(j)];
      }
    }
  }
  for (int i = 0; i < num_users; ++i) {
    sol.user_potential[static_cast<size_t>(i)] =
        potential[static_cast<size_t>(user0 + i)];
  }
  for (int j = 0; j < m; ++j) {
    sol.subcarrier_potential[static_cast<size_t>(j)] =
        potential[static_cast<size_t>(sub0 + j)];
  }
  sol.feasible = true;
  return sol;
}

}  // namespace ofdma
