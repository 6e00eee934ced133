#include "anchored/maxflow.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace anchored {

MaxFlow::MaxFlow(int node_count) : arcs_(node_count) {}

void MaxFlow::add_edge(int u, int v, double cap, double rev_cap) {
  Arc fwd{v, static_cast<int>(arcs_[v].size()) + (u == v ? 1 : 0), cap};
  Arc bwd{u, static_cast<int>(arcs_[u].size()), rev_cap};
  arcs_[u].push_back(fwd);
  arcs_[v].push_back(bwd);
  total_capacity_ += cap + rev_cap;
}

bool MaxFlow::bfs(int source, int sink) {
  level_.assign(arcs_.size(), -1);
  std::deque<int> queue{source};
  level_[source] = 0;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (const Arc& a : arcs_[v]) {
      if (a.cap > eps_ && level_[a.to] < 0) {
        level_[a.to] = level_[v] + 1;
        queue.push_back(a.to);
      }
    }
  }
  return level_[sink] >= 0;
}

double MaxFlow::dfs(int v, int sink, double limit) {
  if (v == sink) return limit;
  for (int& i = iter_[v]; i < static_cast<int>(arcs_[v].size()); ++i) {
    Arc& a = arcs_[v][i];
    if (a.cap > eps_ && level_[a.to] == level_[v] + 1) {
      double pushed = dfs(a.to, sink, std::min(limit, a.cap));
      if (pushed > 0.0) {
        a.cap -= pushed;
        arcs_[a.to][a.rev].cap += pushed;
        return pushed;
      }
    }
  }
  level_[v] = -1;
  return 0.0;
}

double MaxFlow::run(int source, int sink) {
  eps_ = 1e-9 * std::max(1.0, total_capacity_);
  double flow = 0.0;
  while (bfs(source, sink)) {
    iter_.assign(arcs_.size(), 0);
    while (true) {
      double pushed = dfs(source, sink, std::numeric_limits<double>::infinity());
      if (pushed <= 0.0) break;
      flow += pushed;
    }
  }
  return flow;
}

std::vector<char> MaxFlow::min_cut_source_side(int source) const {
  std::vector<char> reach(arcs_.size(), 0);
  std::deque<int> queue{source};
  reach[source] = 1;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (const Arc& a : arcs_[v]) {
      if (a.cap > eps_ && !reach[a.to]) {
        reach[a.to] = 1;
        queue.push_back(a.to);
      }
    }
  }
  return reach;
}

}  // namespace anchored
