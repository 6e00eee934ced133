#pragma once

#include <vector>

namespace anchored {

// Dinic max-flow with double capacities. Residual amounts below `epsilon`
// (set from the total capacity at run time) are treated as zero so that
// rounding noise cannot open spurious augmenting paths.
class MaxFlow {
 public:
  explicit MaxFlow(int node_count);

  // Adds arc u->v with capacity `cap` and reverse capacity `rev_cap`
  // (rev_cap = cap gives an undirected edge).
  void add_edge(int u, int v, double cap, double rev_cap = 0.0);

  double run(int source, int sink);

  // Nodes reachable from the source in the residual network after run();
  // this is the inclusion-minimal source side among all minimum cuts.
  std::vector<char> min_cut_source_side(int source) const;

  double epsilon() const { return eps_; }

 private:
  struct Arc {
    int to;
    int rev;       // index of the reverse arc in arcs_[to]
    double cap;    // residual capacity
  };

  bool bfs(int source, int sink);
  double dfs(int v, int sink, double limit);

  std::vector<std::vector<Arc>> arcs_;
  std::vector<int> level_;
  std::vector<int> iter_;
  double total_capacity_ = 0.0;
  double eps_ = 0.0;
};

}  // namespace anchored
