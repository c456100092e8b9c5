#include "ssg/nucleus.hpp"

#include <algorithm>
#include <map>
#include <tuple>
#include <unordered_map>

#include "scc.hpp"

namespace ssg {

std::optional<int> Nucleus::position(ElemId id) const {
  for (std::size_t i = 0; i < ids.size(); ++i)
    if (ids[i] == id) return static_cast<int>(i);
  return std::nullopt;
}

std::optional<int> Nucleus::find(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<int>(i);
  return std::nullopt;
}

int nucleus_step(const Nucleus& n, int member, Letter x) {
  return n.next[static_cast<std::size_t>(member)][static_cast<std::size_t>(x)];
}

namespace {

struct PairGraph {
  std::vector<std::vector<int>> adj;
  std::vector<char> deep;
};

PairGraph pair_graph(ElementIndex& index, const std::vector<ElemId>& members,
                     const std::unordered_map<ElemId, int>& pos) {
  const int k = index.automaton().alphabet_size();
  const std::size_t m = members.size();
  PairGraph pg;
  pg.adj.assign(m * m, {});
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      auto& out = pg.adj[i * m + j];
      for (Letter x = 0; x < k; ++x) {
        const Letter y = index.image(members[j], x);
        const int a = pos.at(index.section(members[i], y));
        const int b = pos.at(index.section(members[j], x));
        out.push_back(a * static_cast<int>(m) + b);
      }
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
    }
  }
  pg.deep = detail::reachable_from_cycles(pg.adj);
  return pg;
}

}  // namespace

std::variant<ContractionCertificate, Inconclusive> compute_nucleus(ElementIndex& index, NucleusBudget budget) {
  const Automaton& aut = index.automaton();
  const int k = aut.alphabet_size();

  // Section graph of the generators and their inverses.
  std::vector<ElemId> nodes{index.identity()};
  std::unordered_map<ElemId, int> node_pos{{index.identity(), 0}};
  auto add_node = [&](ElemId id) {
    if (node_pos.emplace(id, static_cast<int>(nodes.size())).second) nodes.push_back(id);
  };
  for (StateId q = 0; q < static_cast<StateId>(aut.state_count()); ++q) {
    add_node(index.generator(q));
    add_node(index.generator(q, true));
  }
  std::vector<std::vector<int>> adj;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    adj.emplace_back();
    for (Letter x = 0; x < k; ++x) {
      ElemId s = index.section(nodes[i], x);
      add_node(s);
      adj[i].push_back(node_pos.at(s));
    }
  }
  std::vector<char> deep = detail::reachable_from_cycles(adj);

  std::vector<ElemId> members{index.identity()};
  std::unordered_map<ElemId, int> pos{{index.identity(), 0}};
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (deep[i] && pos.emplace(nodes[i], static_cast<int>(members.size())).second) members.push_back(nodes[i]);
  }

  int depth = -1;
  for (int round = 0; round < budget.max_depth; ++round) {
    if (members.size() > budget.max_elems)
      return Inconclusive{"nucleus candidate exceeded " + std::to_string(budget.max_elems) + " elements"};
    PairGraph pg = pair_graph(index, members, pos);
    const std::size_t m = members.size();
    std::vector<ElemId> added;
    for (std::size_t p = 0; p < m * m; ++p) {
      if (!pg.deep[p]) continue;
      ElemId prod = index.product(members[p / m], members[p % m]);
      if (!pos.count(prod)) {
        pos.emplace(prod, static_cast<int>(members.size() + added.size()));
        added.push_back(prod);
      }
    }
    if (added.empty()) {
      // Longest path ending at a pair whose product falls outside the set.
      std::vector<char> bad(m * m, 0);
      for (std::size_t p = 0; p < m * m; ++p)
        bad[p] = !pos.count(index.product(members[p / m], members[p % m]));
      std::vector<int> indeg(m * m, 0), longest(m * m, 0);
      for (std::size_t p = 0; p < m * m; ++p)
        if (!pg.deep[p])
          for (int q : pg.adj[p]) ++indeg[static_cast<std::size_t>(q)];
      std::vector<int> queue;
      for (std::size_t p = 0; p < m * m; ++p)
        if (!pg.deep[p] && indeg[p] == 0) queue.push_back(static_cast<int>(p));
      depth = 0;
      for (std::size_t h = 0; h < queue.size(); ++h) {
        const auto p = static_cast<std::size_t>(queue[h]);
        if (bad[p]) depth = std::max(depth, longest[p] + 1);
        for (int q : pg.adj[p]) {
          const auto qs = static_cast<std::size_t>(q);
          if (pg.deep[qs]) continue;
          longest[qs] = std::max(longest[qs], longest[p] + 1);
          if (--indeg[qs] == 0) queue.push_back(q);
        }
      }
      break;
    }
    members.insert(members.end(), added.begin(), added.end());
  }
  if (depth < 0) return Inconclusive{"nucleus closure did not stabilize within " + std::to_string(budget.max_depth) + " rounds"};

  // Canonical order and names.
  std::map<ElemId, std::tuple<int, int, std::string>> rank;
  const auto n_states = static_cast<StateId>(aut.state_count());
  for (ElemId id : members) {
    if (id == index.identity()) {
      rank[id] = {0, 0, aut.name(aut.identity())};
      continue;
    }
    std::tuple<int, int, std::string> r{3, 0, ""};
    for (StateId q = 0; q < n_states && std::get<0>(r) == 3; ++q)
      if (q != aut.identity() && index.generator(q) == id) r = {1, q, aut.name(q)};
    for (StateId q = 0; q < n_states && std::get<0>(r) == 3; ++q)
      if (q != aut.identity() && index.generator(q, true) == id) r = {2, q, aut.name(q) + "'"};
    if (std::get<0>(r) == 3) std::get<1>(r) = pos.at(id);
    rank[id] = r;
  }
  std::vector<ElemId> ordered = members;
  std::sort(ordered.begin(), ordered.end(), [&](ElemId a, ElemId b) {
    return std::tie(std::get<0>(rank[a]), std::get<1>(rank[a])) < std::tie(std::get<0>(rank[b]), std::get<1>(rank[b]));
  });

  ContractionCertificate cert;
  cert.contraction_depth = depth;
  Nucleus& n = cert.nucleus;
  n.ids = ordered;
  std::unordered_map<ElemId, int> final_pos;
  int fresh = 0;
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    final_pos[ordered[i]] = static_cast<int>(i);
    auto& r = rank[ordered[i]];
    n.names.push_back(std::get<0>(r) == 3 ? "n" + std::to_string(fresh++) : std::get<2>(r));
  }
  for (ElemId id : ordered) {
    std::vector<int> nx;
    std::vector<Letter> pm;
    for (Letter x = 0; x < k; ++x) {
      nx.push_back(final_pos.at(index.section(id, x)));
      pm.push_back(index.image(id, x));
    }
    n.next.push_back(std::move(nx));
    n.perm.push_back(std::move(pm));
    auto inv = final_pos.find(index.inverse(id));
    n.inverse.push_back(inv == final_pos.end() ? -1 : inv->second);
  }
  return cert;
}

}  // namespace ssg
