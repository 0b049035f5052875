#include "tat/families.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace tat {

int Builder::vertex(const std::string& name) {
  auto it = vmap_.find(name);
  if (it != vmap_.end()) return it->second;
  int idx = g.num_vertices();
  vmap_[name] = idx;
  g.vertex_names.push_back(name);
  g.order.emplace_back();
  return idx;
}

int Builder::edge(const std::string& name, const std::string& v, const std::string& w,
                  const Rat& len, int level) {
  int idx = g.num_edges();
  if (!emap_.emplace(name, idx).second) throw GraphError("builder: duplicate edge " + name);
  g.edge_names.push_back(name);
  g.efrom.push_back(vertex(v));
  g.eto.push_back(vertex(w));
  g.elen.push_back(len);
  g.elevel.push_back(level);
  return idx;
}

DartId Builder::dart(const std::string& token) const {
  if (token.size() < 2 || (token.back() != '+' && token.back() != '-'))
    throw GraphError("builder: bad dart token " + token);
  auto it = emap_.find(token.substr(0, token.size() - 1));
  if (it == emap_.end()) throw GraphError("builder: unknown edge in dart token " + token);
  return 2 * it->second + (token.back() == '+' ? 0 : 1);
}

Builder& Builder::order(const std::string& v, const std::vector<std::string>& darts) {
  int vi = vertex(v);
  g.order[vi].clear();
  for (const auto& t : darts) g.order[vi].push_back(dart(t));
  return *this;
}

Builder& Builder::circle(const std::string& name, int level,
                         const std::vector<std::string>& darts) {
  RelativeCircle c{name, level, {}};
  for (const auto& t : darts) c.darts.push_back(dart(t));
  g.circles.push_back(std::move(c));
  return *this;
}

Builder& Builder::delta(int level, const Rat& value) {
  g.deltas.push_back({level, true, "", value});
  return *this;
}

Builder& Builder::delta(int level, const std::string& component, const Rat& value) {
  g.deltas.push_back({level, false, component, value});
  return *this;
}

Builder& Builder::toward(int level, const std::string& dart_token) {
  g.towards.push_back({level, dart(dart_token)});
  return *this;
}

RibbonGraph Builder::build() {
  g.finalize();
  return g;
}

RibbonGraph circle_graph(const std::vector<Rat>& lengths, bool relative) {
  int n = (int)lengths.size();
  Builder b;
  auto vn = [](int i) { return "v" + std::to_string(i); };
  auto en = [](int i) { return "e" + std::to_string(i); };
  for (int i = 0; i < n; ++i) b.vertex(vn(i));
  for (int i = 0; i < n; ++i) b.edge(en(i), vn(i), vn((i + 1) % n), lengths[i]);
  for (int i = 0; i < n; ++i) {
    if (n == 1)
      b.order(vn(0), {"e0+", "e0-"});
    else
      b.order(vn(i), {en(i) + "+", en((i + n - 1) % n) + "-"});
  }
  if (relative) {
    std::vector<std::string> cyc;
    for (int i = 0; i < n; ++i) cyc.push_back(en(i) + "+");
    b.circle("A", 0, cyc);
  }
  b.delta(0, Rat(1));
  return b.build();
}

RibbonGraph theta_graph(bool planar) {
  Builder b;
  b.edge("a", "v0", "v1", Rat(1));
  b.edge("b", "v0", "v1", Rat(1));
  b.edge("c", "v0", "v1", Rat(1));
  b.order("v0", {"a+", "b+", "c+"});
  if (planar)
    b.order("v1", {"a-", "c-", "b-"});
  else
    b.order("v1", {"a-", "b-", "c-"});
  b.delta(0, Rat(1));
  return b.build();
}

RibbonGraph fig1_graph(const Rat& eps) {
  if (eps <= 0 || eps >= Rat(1, 4)) throw GraphError("fig1: eps must lie in (0, 1/4)");
  Builder b;
  Rat a = 2 * eps, spoke = Rat(1, 2) - eps;
  b.edge("e1", "a1", "a2", a);
  b.edge("e2", "a2", "a1", a);
  b.edge("r", "b1", "b2", a);
  b.edge("s", "b2", "b1", a);
  b.edge("u1", "a1", "c", spoke);
  b.edge("u2", "a2", "c", spoke);
  b.edge("u3", "b1", "c", spoke);
  b.edge("u4", "b2", "c", spoke);
  b.order("a1", {"e2-", "u1+", "e1+"});
  b.order("a2", {"e1-", "u2+", "e2+"});
  b.order("b1", {"s-", "u3+", "r+"});
  b.order("b2", {"r-", "u4+", "s+"});
  b.order("c", {"u1-", "u3-", "u2-", "u4-"});
  b.circle("O1", 0, {"e2-", "e1-"});
  b.circle("O2", 0, {"s-", "r-"});
  b.delta(0, Rat(1));
  return b.build();
}

RibbonGraph dumbbell_graph(const Rat& r) {
  if (r <= 0 || r >= 1) throw GraphError("dumbbell: r must lie in (0, 1)");
  Builder b;
  b.edge("g1", "v1", "v1", r);
  b.edge("g2", "v2", "v2", r);
  b.edge("b", "v1", "v2", 1 - r);
  b.order("v1", {"g1+", "g1-", "b+"});
  b.order("v2", {"g2+", "g2-", "b-"});
  b.circle("C1", 0, {"g1-"});
  b.circle("C2", 0, {"g2-"});
  b.delta(0, Rat(1));
  return b.build();
}

RibbonGraph paired_tori_graph() {
  Builder b;
  Rat u(1, 144), z(1, 36);
  b.edge("bar", "w1", "w2", Rat(8, 9), 0);
  for (int i = 1; i <= 2; ++i) {
    std::string s = std::to_string(i);
    b.edge("e" + s + "p", "r" + s, "P" + s, u, 1);
    b.edge("e" + s + "q", "r" + s, "Q" + s, u, 1);
    b.edge("g" + s + "a", "r" + s, "w" + s, u, 1);
    b.edge("g" + s + "b", "w" + s, "r" + s, u, 1);
    b.edge("z" + s + "1", "P" + s, "Q" + s, z, 1);
    b.edge("z" + s + "2", "Q" + s, "P" + s, z, 1);
    b.order("r" + s, {"e" + s + "p+", "g" + s + "a+", "e" + s + "q+", "g" + s + "b-"});
    b.order("P" + s, {"z" + s + "2-", "z" + s + "1+", "e" + s + "p-"});
    b.order("Q" + s, {"z" + s + "1-", "z" + s + "2+", "e" + s + "q-"});
    b.circle("Z" + s, 1, {"z" + s + "1+", "z" + s + "2+"});
  }
  b.order("w1", {"g1a-", "bar+", "g1b+"});
  b.order("w2", {"g2a-", "bar-", "g2b+"});
  b.delta(0, Rat(1));
  b.delta(1, Rat(1, 18));
  b.toward(1, "e1p+");
  return b.build();
}

RibbonGraph amphidrome_graph() {
  Builder b;
  Rat u(1, 144), k(1, 72);
  b.edge("bar", "w1", "w2", Rat(8, 9), 0);
  const char* ends[2][2] = {{"x1", "x2"}, {"x3", "x4"}};
  for (int i = 1; i <= 2; ++i) {
    std::string s = std::to_string(i);
    b.edge("e" + s + "p", "r" + s, ends[i - 1][0], u, 1);
    b.edge("e" + s + "q", "r" + s, ends[i - 1][1], u, 1);
    b.edge("g" + s + "a", "r" + s, "w" + s, u, 1);
    b.edge("g" + s + "b", "w" + s, "r" + s, u, 1);
    b.order("r" + s, {"e" + s + "p+", "g" + s + "a+", "e" + s + "q+", "g" + s + "b-"});
  }
  b.edge("k1", "x1", "x3", k, 2);
  b.edge("k2", "x3", "x2", k, 2);
  b.edge("k3", "x2", "x4", k, 2);
  b.edge("k4", "x4", "x1", k, 2);
  b.order("w1", {"g1a-", "bar+", "g1b+"});
  b.order("w2", {"g2a-", "bar-", "g2b+"});
  b.order("x1", {"k1+", "k4-", "e1p-"});
  b.order("x2", {"k3+", "k2-", "e1q-"});
  b.order("x3", {"k1-", "k2+", "e2p-"});
  b.order("x4", {"k3-", "k4+", "e2q-"});
  b.delta(0, Rat(1));
  b.delta(1, Rat(1, 18));
  b.delta(2, Rat(1, 36));
  b.toward(1, "e1p+");
  b.toward(2, "k1+");
  return b.build();
}

namespace {

Rat random_rat(std::mt19937_64& rng, int max_den, int max_units) {
  int den = 1 + (int)(rng() % max_den);
  int num = 1 + (int)(rng() % (max_units * den));
  return Rat(num, den);
}

}  // namespace

RibbonGraph random_graph(std::uint64_t seed, int max_edges, int max_depth, int max_den) {
  std::mt19937_64 rng(seed);
  int depth = (int)(rng() % (max_depth + 1));
  Builder b;
  int nv = 0, ne = 0;
  std::vector<std::string> verts;
  // per-vertex order units; circle corners stay fused so the circle side is a
  // free face
  std::map<std::string, std::vector<std::vector<std::string>>> units;
  std::map<std::string, bool> on_circle;
  auto fresh_vertex = [&] {
    std::string v = "v" + std::to_string(nv++);
    verts.push_back(v);
    units[v];
    return v;
  };
  int budget = std::max(2, max_edges);
  int ncirc = 0;
  for (int lvl = depth; lvl >= 0; --lvl) {
    int cycles = 1 + (int)(rng() % 2);
    if (lvl < depth && budget <= 0) cycles = 0;
    for (int c = 0; c < cycles && (budget > 0 || lvl == depth); ++c) {
      int len = 1 + (int)(rng() % 3);
      len = std::min(len, std::max(1, budget));
      std::vector<std::string> cyc;
      bool fresh_only = verts.empty() || rng() % 4 == 0;
      for (int i = 0; i < len; ++i) {
        bool anchor = i == 0 && !verts.empty() && !fresh_only;
        bool reuse = !fresh_only && !verts.empty() && rng() % 2 == 0;
        if (anchor || (i > 0 && reuse))
          cyc.push_back(verts[rng() % verts.size()]);
        else
          cyc.push_back(fresh_vertex());
      }
      std::vector<std::string> enames;
      for (int i = 0; i < len; ++i) {
        std::string e = "e" + std::to_string(ne++);
        enames.push_back(e);
        b.edge(e, cyc[i], cyc[(i + 1) % len], random_rat(rng, max_den, 2), lvl);
        --budget;
      }
      // mark a simple cycle of fresh vertices as a relative circle sometimes
      bool simple = fresh_only;
      for (const auto& v : cyc)
        if (on_circle[v]) simple = false;
      if (simple && rng() % 3 == 0) {
        std::vector<std::string> darts;
        for (const auto& e : enames) darts.push_back(e + "+");
        b.circle("A" + std::to_string(ncirc++), lvl, darts);
        for (int i = 0; i < len; ++i) {
          on_circle[cyc[i]] = true;
          int prev = (i + len - 1) % len;
          units[cyc[i]].push_back({enames[prev] + "-", enames[i] + "+"});
        }
      } else {
        for (int i = 0; i < len; ++i) {
          int prev = (i + len - 1) % len;
          units[cyc[i]].push_back({enames[prev] + "-"});
          units[cyc[i]].push_back({enames[i] + "+"});
        }
      }
    }
  }
  for (const auto& v : verts) {
    auto us = units[v];
    std::shuffle(us.begin(), us.end(), rng);
    std::vector<std::string> darts;
    for (const auto& unit : us) darts.insert(darts.end(), unit.begin(), unit.end());
    b.order(v, darts);
  }
  for (int lvl = 0; lvl <= depth; ++lvl) b.delta(lvl, random_rat(rng, max_den, 1));
  return b.build();
}

RibbonGraph random_tat_fixture(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  RibbonGraph g;
  switch (rng() % 3) {
    case 0:
      g = fig1_graph(Rat(1, 5 + (int)(rng() % 20)));
      break;
    case 1: {
      int q = 2 + (int)(rng() % 11);
      g = dumbbell_graph(Rat(1 + (int)(rng() % (q - 1)), q));
      break;
    }
    default:
      g = paired_tori_graph();
      break;
  }
  Rat scale(1 + (int)(rng() % 4), 1 + (int)(rng() % 4));
  for (auto& l : g.elen) l *= scale;
  for (auto& d : g.deltas) d.value *= scale;
  return g;
}

}  // namespace tat
