#include "drsys/graph_search.hpp"

#include <bit>
#include <stdexcept>

namespace drs::graph {

namespace {

inline Mask bit(std::size_t v) { return Mask{1} << v; }

std::vector<std::size_t> to_list(Mask m) {
  std::vector<std::size_t> out;
  while (m) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
    m &= m - 1;
  }
  return out;
}

struct MisSearch {
  const std::vector<Mask>& adj;
  Mask best = 0;
  int best_size = 0;

  void run(Mask cand, Mask chosen, int size) {
    // vertices of degree <= 1 inside cand can always be taken
    bool changed = true;
    while (changed) {
      changed = false;
      for (Mask m = cand; m; m &= m - 1) {
        std::size_t v = static_cast<std::size_t>(std::countr_zero(m));
        if (std::popcount(adj[v] & cand) <= 1) {
          chosen |= bit(v);
          ++size;
          cand &= ~(adj[v] | bit(v));
          changed = true;
          break;
        }
      }
    }
    if (!cand) {
      if (size > best_size) {
        best_size = size;
        best = chosen;
      }
      return;
    }
    if (size + std::popcount(cand) <= best_size) return;
    std::size_t pick = 0;
    int deg = -1;
    for (Mask m = cand; m; m &= m - 1) {
      std::size_t v = static_cast<std::size_t>(std::countr_zero(m));
      int d = std::popcount(adj[v] & cand);
      if (d > deg) {
        deg = d;
        pick = v;
      }
    }
    run(cand & ~(adj[pick] | bit(pick)), chosen | bit(pick), size + 1);
    run(cand & ~bit(pick), chosen, size);
  }
};

struct MdsSearch {
  const std::vector<Mask>& closed;  // N[v]
  Mask all;
  Mask best = 0;
  int best_size = 0;
  int max_cover = 1;

  void run(Mask dominated, Mask chosen, int size) {
    if (dominated == all) {
      if (size < best_size) {
        best_size = size;
        best = chosen;
      }
      return;
    }
    const int missing = std::popcount(all & ~dominated);
    if (size + (missing + max_cover - 1) / max_cover >= best_size) return;
    // branch on the undominated vertex with the fewest ways to be covered
    std::size_t target = 0;
    int ways = 1 << 30;
    for (Mask m = all & ~dominated; m; m &= m - 1) {
      std::size_t u = static_cast<std::size_t>(std::countr_zero(m));
      int w = std::popcount(closed[u]);
      if (w < ways) {
        ways = w;
        target = u;
      }
    }
    for (Mask m = closed[target]; m; m &= m - 1) {
      std::size_t v = static_cast<std::size_t>(std::countr_zero(m));
      run(dominated | closed[v], chosen | bit(v), size + 1);
    }
  }
};

}  // namespace

std::vector<std::size_t> max_independent_set(const std::vector<Mask>& adj) {
  if (adj.size() > kMaxExact) throw std::invalid_argument("graph too large for exact search");
  MisSearch s{adj};
  Mask all = adj.size() == 64 ? ~Mask{0} : bit(adj.size()) - 1;
  s.run(all, 0, 0);
  return to_list(s.best);
}

std::vector<std::size_t> min_dominating_set(const std::vector<Mask>& adj) {
  const std::size_t n = adj.size();
  if (n > kMaxExact) throw std::invalid_argument("graph too large for exact search");
  if (n == 0) return {};
  std::vector<Mask> closed(n);
  std::vector<std::vector<std::size_t>> lists(n);
  int max_cover = 1;
  for (std::size_t v = 0; v < n; ++v) {
    closed[v] = adj[v] | bit(v);
    lists[v] = to_list(adj[v]);
    max_cover = std::max(max_cover, std::popcount(closed[v]));
  }
  Mask all = n == 64 ? ~Mask{0} : bit(n) - 1;
  MdsSearch s{closed, all};
  s.max_cover = max_cover;
  auto greedy = greedy_dominating_set(lists);
  for (std::size_t v : greedy) s.best |= bit(v);
  s.best_size = static_cast<int>(greedy.size());
  s.run(0, 0, 0);
  return to_list(s.best);
}

std::vector<std::size_t> greedy_dominating_set(const std::vector<std::vector<std::size_t>>& adj) {
  const std::size_t n = adj.size();
  std::vector<char> dominated(n, 0);
  std::vector<std::size_t> gain(n);
  for (std::size_t v = 0; v < n; ++v) gain[v] = adj[v].size() + 1;
  std::size_t left = n;
  std::vector<std::size_t> chosen;
  while (left > 0) {
    std::size_t pick = 0;
    for (std::size_t v = 1; v < n; ++v)
      if (gain[v] > gain[pick]) pick = v;
    chosen.push_back(pick);
    auto cover = [&](std::size_t u) {
      if (dominated[u]) return;
      dominated[u] = 1;
      --left;
      --gain[u];
      for (std::size_t w : adj[u]) --gain[w];
    };
    cover(pick);
    for (std::size_t u : adj[pick]) cover(u);
  }
  return chosen;
}

}  // namespace drs::graph
