#pragma once

#include <cstddef>
#include <vector>

namespace ssg::detail {

struct SccResult {
  std::vector<int> component;   // component id per node, reverse topological order
  std::vector<char> cyclic;     // per component: has an internal cycle
  int count = 0;
};

/// Iterative Tarjan over an adjacency list.
inline SccResult strongly_connected(const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  SccResult r;
  r.component.assign(static_cast<std::size_t>(n), -1);
  std::vector<int> index(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0);
  std::vector<char> on_stack(static_cast<std::size_t>(n), 0);
  std::vector<int> stack;
  std::vector<std::pair<int, std::size_t>> call;
  int counter = 0;
  for (int root = 0; root < n; ++root) {
    if (index[static_cast<std::size_t>(root)] >= 0) continue;
    call.emplace_back(root, 0);
    while (!call.empty()) {
      auto& [v, edge] = call.back();
      const auto vs = static_cast<std::size_t>(v);
      if (edge == 0 && index[vs] < 0) {
        index[vs] = low[vs] = counter++;
        stack.push_back(v);
        on_stack[vs] = 1;
      }
      if (edge < adj[vs].size()) {
        const int w = adj[vs][edge++];
        const auto ws = static_cast<std::size_t>(w);
        if (index[ws] < 0) {
          call.emplace_back(w, 0);
        } else if (on_stack[ws] && index[ws] < low[vs]) {
          low[vs] = index[ws];
        }
        continue;
      }
      if (low[vs] == index[vs]) {
        const int c = r.count++;
        std::size_t size = 0;
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[static_cast<std::size_t>(w)] = 0;
          r.component[static_cast<std::size_t>(w)] = c;
          ++size;
        } while (w != v);
        bool cyc = size > 1;
        if (!cyc)
          for (int x : adj[vs]) cyc = cyc || x == v;
        r.cyclic.push_back(cyc ? 1 : 0);
      }
      const int done = v;
      call.pop_back();
      if (!call.empty()) {
        const auto ps = static_cast<std::size_t>(call.back().first);
        if (low[static_cast<std::size_t>(done)] < low[ps]) low[ps] = low[static_cast<std::size_t>(done)];
      }
    }
  }
  return r;
}

/// Nodes that lie on a cycle or can be reached from one.
inline std::vector<char> reachable_from_cycles(const std::vector<std::vector<int>>& adj) {
  SccResult scc = strongly_connected(adj);
  std::vector<char> mark(adj.size(), 0);
  std::vector<int> stack;
  for (std::size_t v = 0; v < adj.size(); ++v) {
    if (scc.cyclic[static_cast<std::size_t>(scc.component[v])]) {
      mark[v] = 1;
      stack.push_back(static_cast<int>(v));
    }
  }
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[static_cast<std::size_t>(v)]) {
      if (!mark[static_cast<std::size_t>(w)]) {
        mark[static_cast<std::size_t>(w)] = 1;
        stack.push_back(w);
      }
    }
  }
  return mark;
}

}  // namespace ssg::detail
