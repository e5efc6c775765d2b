#include "morphan/orders.hpp"

#include <algorithm>
#include <set>

#include "morphan/errors.hpp"

namespace morphan {

int LetterGraph::edge_multiplicity(Letter b, Letter c) const {
  const auto& succ = out[static_cast<std::size_t>(b)];
  return static_cast<int>(std::count(succ.begin(), succ.end(), c));
}

namespace {

// Iterative Tarjan SCC (alphabets are small, but avoid recursion anyway).
struct Tarjan {
  const std::vector<std::vector<Letter>>& adj;
  std::vector<int> num, low, comp;
  std::vector<bool> on;
  std::vector<int> stack;
  int counter = 0, comps = 0;

  explicit Tarjan(const std::vector<std::vector<Letter>>& a)
      : adj(a), num(a.size(), 0), low(a.size(), 0), comp(a.size(), -1), on(a.size(), false) {}

  void run() {
    for (std::size_t v = 0; v < adj.size(); ++v)
      if (num[v] == 0) dfs(static_cast<int>(v));
  }

  void dfs(int root) {
    // frame: (vertex, next edge index)
    std::vector<std::pair<int, std::size_t>> frames{{root, 0}};
    while (!frames.empty()) {
      auto& [v, ei] = frames.back();
      if (ei == 0) {
        num[v] = low[v] = ++counter;
        stack.push_back(v);
        on[v] = true;
      }
      bool descended = false;
      while (ei < adj[static_cast<std::size_t>(v)].size()) {
        int w = adj[static_cast<std::size_t>(v)][ei++];
        if (num[w] == 0) {
          frames.emplace_back(w, 0);
          descended = true;
          break;
        }
        if (on[w]) low[v] = std::min(low[v], num[w]);
      }
      if (descended) continue;
      if (low[v] == num[v]) {
        while (true) {
          int w = stack.back();
          stack.pop_back();
          on[w] = false;
          comp[w] = comps;
          if (w == v) break;
        }
        ++comps;
      }
      int finished = v;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().first] = std::min(low[frames.back().first], low[finished]);
    }
  }
};

}  // namespace

LetterGraph build_letter_graph(const MorphicSystem& s) {
  LetterGraph g;
  g.out.resize(s.size());
  for (std::size_t b = 0; b < s.size(); ++b) g.out[b] = s.phi[b];

  Tarjan t(g.out);
  t.run();
  g.scc_of = t.comp;
  g.scc_count = t.comps;

  g.expanding.assign(static_cast<std::size_t>(g.scc_count), false);
  g.cyclic.assign(static_cast<std::size_t>(g.scc_count), false);
  std::vector<std::set<int>> cond(static_cast<std::size_t>(g.scc_count));
  for (std::size_t v = 0; v < g.out.size(); ++v) {
    int cv = g.scc_of[v];
    int internal = 0;
    for (Letter w : g.out[v]) {
      int cw = g.scc_of[static_cast<std::size_t>(w)];
      if (cw == cv)
        ++internal;
      else
        cond[static_cast<std::size_t>(cv)].insert(cw);
    }
    if (internal >= 1) g.cyclic[static_cast<std::size_t>(cv)] = true;
    if (internal >= 2) g.expanding[static_cast<std::size_t>(cv)] = true;
  }
  g.condensation.resize(static_cast<std::size_t>(g.scc_count));
  for (std::size_t c = 0; c < cond.size(); ++c)
    g.condensation[c].assign(cond[c].begin(), cond[c].end());
  return g;
}

std::vector<LetterProfile> assign_orders(const LetterGraph& g) {
  const std::size_t nc = static_cast<std::size_t>(g.scc_count);
  std::vector<int> reach_inf(nc, -1), order(nc, -1);

  auto reaches_expanding = [&](auto&& self, int c) -> bool {
    if (reach_inf[static_cast<std::size_t>(c)] >= 0) return reach_inf[static_cast<std::size_t>(c)] == 1;
    bool r = g.expanding[static_cast<std::size_t>(c)];
    reach_inf[static_cast<std::size_t>(c)] = r ? 1 : 0;  // provisional; DAG so no true cycles
    for (int d : g.condensation[static_cast<std::size_t>(c)])
      if (self(self, d)) r = true;
    reach_inf[static_cast<std::size_t>(c)] = r ? 1 : 0;
    return r;
  };
  auto order_of = [&](auto&& self, int c) -> int {
    if (order[static_cast<std::size_t>(c)] >= 0) return order[static_cast<std::size_t>(c)];
    if (reaches_expanding(reaches_expanding, c)) return order[static_cast<std::size_t>(c)] = kOrderInfinite;
    int mx = 0;
    for (int d : g.condensation[static_cast<std::size_t>(c)]) mx = std::max(mx, self(self, d));
    return order[static_cast<std::size_t>(c)] = (g.cyclic[static_cast<std::size_t>(c)] ? 1 : 0) + mx;
  };

  std::vector<LetterProfile> out(g.out.size());
  for (std::size_t v = 0; v < g.out.size(); ++v) {
    out[v].letter = static_cast<Letter>(v);
    out[v].order = order_of(order_of, g.scc_of[v]);
  }
  return out;
}

std::vector<LetterProfile> classify_periodicity(const MorphicSystem& s, const LetterGraph& g,
                                                std::vector<LetterProfile> profiles) {
  std::vector<int> comp_size(static_cast<std::size_t>(g.scc_count), 0);
  for (std::size_t v = 0; v < s.size(); ++v) ++comp_size[static_cast<std::size_t>(g.scc_of[v])];
  for (auto& p : profiles) {
    if (p.order == kOrderInfinite) {
      p.periodicity = Periodicity::NotApplicable;
      continue;
    }
    int c = g.scc_of[static_cast<std::size_t>(p.letter)];
    bool trivial = comp_size[static_cast<std::size_t>(c)] == 1 && !g.cyclic[static_cast<std::size_t>(c)];
    p.periodicity = trivial ? Periodicity::Preperiodic : Periodicity::Periodic;
  }
  return profiles;
}

std::vector<LetterProfile> letter_profiles(const MorphicSystem& s) {
  LetterGraph g = build_letter_graph(s);
  return classify_periodicity(s, g, assign_orders(g));
}

BigInt growth_count(const MorphicSystem& s, Letter b, int n) {
  if (n < 0) throw Error(ErrorKind::Precondition, "growth_count needs n >= 0");
  std::vector<BigInt> counts(s.size(), 0);
  counts[static_cast<std::size_t>(b)] = 1;
  for (int step = 0; step < n; ++step) {
    std::vector<BigInt> next(s.size(), 0);
    for (std::size_t v = 0; v < s.size(); ++v) {
      if (counts[v] == 0) continue;
      for (Letter c : s.phi[v]) next[static_cast<std::size_t>(c)] += counts[v];
    }
    counts.swap(next);
  }
  BigInt total = 0;
  for (const auto& c : counts) total += c;
  return total;
}

std::optional<std::size_t> boundary_letter(const Word& word, const std::vector<LetterProfile>& profiles,
                                           int k, Side side) {
  auto over = [&](Letter c) { return profiles[static_cast<std::size_t>(c)].order > k; };
  if (side == Side::Left) {
    for (std::size_t i = 0; i < word.size(); ++i)
      if (over(word[i])) return i;
  } else {
    for (std::size_t i = word.size(); i-- > 0;)
      if (over(word[i])) return i;
  }
  return std::nullopt;
}

int max_finite_order(const std::vector<LetterProfile>& profiles) {
  int mx = 0;
  for (const auto& p : profiles)
    if (p.order != kOrderInfinite) mx = std::max(mx, p.order);
  return mx;
}

}  // namespace morphan
