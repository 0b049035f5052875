#include "tat/nielsen.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <set>

namespace tat {

std::optional<int> AutomorphismGraph::piece_index(const std::string& name) const {
  for (int i = 0; i < (int)pieces.size(); ++i)
    if (pieces[i].name == name) return i;
  return std::nullopt;
}

std::vector<std::string> validate(const AutomorphismGraph& G) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& p : G.pieces) {
    if (!seen.insert(p.name).second) out.push_back("duplicate piece " + p.name);
    if (p.orbit <= 0) out.push_back("piece " + p.name + ": orbit must be positive");
  }
  seen.clear();
  bool any_fixed = false;
  for (const auto& p : G.pieces) any_fixed = any_fixed || p.fixed_boundary;
  if (!any_fixed) out.push_back("no fixed-boundary piece");
  for (const auto& a : G.annuli) {
    if (!seen.insert(a.name).second) out.push_back("duplicate annulus " + a.name);
    if (a.v < 0 || a.v >= (int)G.pieces.size() || a.w < 0 || a.w >= (int)G.pieces.size())
      out.push_back("annulus " + a.name + ": bad endpoint");
    if (a.orbit <= 0) out.push_back("annulus " + a.name + ": orbit must be positive");
    if (a.screw >= 0) out.push_back("annulus " + a.name + ": screw must be negative");
    if (a.amphidrome && a.v != a.w)
      out.push_back("annulus " + a.name + ": amphidrome requires a loop");
  }
  return out;
}

std::vector<int> distance_function(const AutomorphismGraph& G) {
  const int n = (int)G.pieces.size();
  std::vector<int> D(n, -1);
  std::deque<int> q;
  for (int i = 0; i < n; ++i)
    if (G.pieces[i].fixed_boundary) {
      D[i] = 0;
      q.push_back(i);
    }
  if (q.empty()) throw GraphError("no fixed-boundary piece");
  std::vector<std::vector<int>> adj(n);
  for (const auto& a : G.annuli) {
    adj[a.v].push_back(a.w);
    adj[a.w].push_back(a.v);
  }
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int w : adj[v])
      if (D[w] < 0) {
        D[w] = D[v] + 1;
        q.push_back(w);
      }
  }
  for (int i = 0; i < n; ++i)
    if (D[i] < 0) throw GraphError("piece " + G.pieces[i].name + " unreachable from the fixed boundary");
  return D;
}

FilteringCheck is_filtering(const AutomorphismGraph& G, const std::vector<int>& L) {
  for (const auto& a : G.annuli)
    if (L[a.v] == L[a.w])
      return {false, "annulus " + a.name + " joins equal levels"};
  for (int v = 0; v < (int)G.pieces.size(); ++v) {
    if (L[v] == 0 && G.pieces[v].fixed_boundary) continue;
    bool has_lower = false;
    for (const auto& a : G.annuli) {
      if (a.v == v && L[a.w] < L[v]) has_lower = true;
      if (a.w == v && L[a.v] < L[v]) has_lower = true;
    }
    if (!has_lower)
      return {false, "piece " + G.pieces[v].name + " has no lower neighbour"};
  }
  return {true, ""};
}

AutomorphismGraph split_for_filtering(const AutomorphismGraph& G) {
  auto D = distance_function(G);
  AutomorphismGraph H;
  H.pieces = G.pieces;
  for (const auto& a : G.annuli) {
    if (D[a.v] != D[a.w]) {
      H.annuli.push_back(a);
      continue;
    }
    int mid = (int)H.pieces.size();
    H.pieces.push_back({a.name + "_mid", a.orbit, false});
    if (a.amphidrome) {
      // Each annulus folds onto half of itself; the quotient annulus goes
      // around twice, so the orbit doubles and the screw is carried whole.
      H.annuli.push_back({a.name + "_half", a.v, mid, 2 * a.orbit, a.screw, false});
    } else {
      H.annuli.push_back({a.name + "_1", a.v, mid, a.orbit, a.screw / 2, false});
      H.annuli.push_back({a.name + "_2", mid, a.w, a.orbit, a.screw / 2, false});
    }
  }
  auto D2 = distance_function(H);
  auto chk = is_filtering(H, D2);
  if (!chk.ok) throw GraphError("split failed to filter: " + chk.witness);
  return H;
}

AutomorphismGraph random_nielsen(std::uint64_t seed, int max_pieces) {
  std::mt19937_64 rng(seed);
  AutomorphismGraph G;
  int n = 1 + (int)(rng() % (std::uint64_t)max_pieces);
  for (int i = 0; i < n; ++i)
    G.pieces.push_back({"p" + std::to_string(i), (long long)(1 + rng() % 4),
                        i == 0 || rng() % 5 == 0});
  auto neg_screw = [&] {
    return -Rat((long long)(1 + rng() % 9), (long long)(1 + rng() % 9));
  };
  int an = 0;
  auto add = [&](int v, int w, bool amph) {
    G.annuli.push_back({"a" + std::to_string(an++), v, w,
                        (long long)(1 + rng() % 4), neg_screw(), amph});
  };
  for (int i = 1; i < n; ++i) add((int)(rng() % (std::uint64_t)i), i, false);
  int extra = (int)(rng() % 4);
  for (int k = 0; k < extra; ++k) {
    int v = (int)(rng() % (std::uint64_t)n), w = (int)(rng() % (std::uint64_t)n);
    add(v, w, v == w && rng() % 2 == 0);
  }
  int loops = (int)(rng() % 3);
  for (int k = 0; k < loops; ++k) {
    int v = (int)(rng() % (std::uint64_t)n);
    add(v, v, rng() % 2 == 0);
  }
  return G;
}

int annulus_level(const AutomorphismGraph& G, const std::vector<int>& D, int a) {
  return std::max(D[G.annuli[a].v], D[G.annuli[a].w]);
}

std::vector<LevelSchedule> delta_schedule(const AutomorphismGraph& G,
                                          const std::map<std::string, Rat>& boundary_len) {
  auto D = distance_function(G);
  auto chk = is_filtering(G, D);
  if (!chk.ok) throw GraphError("distance function is not filtering: " + chk.witness);
  std::map<int, std::vector<int>> by_level;
  for (int i = 0; i < (int)G.annuli.size(); ++i)
    by_level[annulus_level(G, D, i)].push_back(i);
  std::vector<LevelSchedule> out;
  for (const auto& [lvl, idxs] : by_level) {
    LevelSchedule s;
    s.level = lvl;
    bool first = true;
    for (int i : idxs) {
      const auto& a = G.annuli[i];
      auto it = boundary_len.find(a.name);
      if (it == boundary_len.end()) throw GraphError("no boundary length for annulus " + a.name);
      if (it->second <= 0) throw GraphError("boundary length for annulus " + a.name + " must be positive");
      Rat cand = (-a.screw) / a.orbit * it->second;
      if (first || cand < s.delta) s.delta = cand;
      first = false;
    }
    for (int i : idxs) {
      const auto& a = G.annuli[i];
      Rat target = s.delta * a.orbit / (-a.screw);
      if (target < boundary_len.at(a.name)) s.shrink_targets.emplace_back(a.name, target);
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace tat
