#include "tat/surgery.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "tat/checker.hpp"

namespace tat {
namespace {

int find_name(const std::vector<std::string>& v, const std::string& s) {
  auto it = std::find(v.begin(), v.end(), s);
  return it == v.end() ? -1 : int(it - v.begin());
}

std::string fresh_name(const std::vector<std::string>& used, const std::vector<std::string>& reserved,
                       std::string base) {
  while (find_name(used, base) >= 0 || find_name(reserved, base) >= 0) base += "'";
  return base;
}

// Linearizes the cyclic list to start just after `last`, dropping `last`.
std::vector<DartId> cut_after(const std::vector<DartId>& cyc, DartId last) {
  auto it = std::find(cyc.begin(), cyc.end(), last);
  if (it == cyc.end()) throw GraphError("surgery: dart missing from its order list");
  std::vector<DartId> out(it + 1, cyc.end());
  out.insert(out.end(), cyc.begin(), it);
  return out;
}

Rat circle_length(const RibbonGraph& g, int ci) {
  Rat s;
  for (DartId d : g.circles[ci].darts) s += g.dart_len(d);
  return s;
}

void check_shrinkable(const RibbonGraph& g, int ci, const Rat& eps) {
  if (ci < 0 || ci >= (int)g.circles.size()) throw GraphError("shrink: no such circle");
  if (!(eps > 0) || eps >= circle_length(g, ci))
    throw GraphError("shrink: need 0 < eps < circle length");
  for (DartId d : g.circles[ci].darts)
    if (g.order[g.dart_from(d)].size() != 3)
      throw GraphError("shrink: circle vertex " + g.vertex_names[g.dart_from(d)] +
                       " is not trivalent");
}

// Contracts the zero-length circle edge e, merging its head into its tail.
void contract_circle_edge(RibbonGraph& g, int e) {
  DartId c = 2 * e;
  int u = g.efrom[e], w = g.eto[e];
  if (u == w) throw GraphError("shrink: cannot contract a loop");
  std::vector<DartId> merged = cut_after(g.order[u], c);
  std::vector<DartId> rest = cut_after(g.order[w], rev(c));
  merged.insert(merged.end(), rest.begin(), rest.end());
  g.order[u] = std::move(merged);
  for (auto& x : g.efrom) {
    if (x == w) x = u;
    if (x > w) --x;
  }
  for (auto& x : g.eto) {
    if (x == w) x = u;
    if (x > w) --x;
  }
  g.vertex_names.erase(g.vertex_names.begin() + w);
  g.order.erase(g.order.begin() + w);
  g.edge_names.erase(g.edge_names.begin() + e);
  g.efrom.erase(g.efrom.begin() + e);
  g.eto.erase(g.eto.begin() + e);
  g.elen.erase(g.elen.begin() + e);
  g.elevel.erase(g.elevel.begin() + e);
  auto remap = [&](DartId d) { return d > 2 * e + 1 ? d - 2 : d; };
  for (auto& ord : g.order)
    for (auto& d : ord) d = remap(d);
  for (auto& circ : g.circles) {
    circ.darts.erase(std::remove_if(circ.darts.begin(), circ.darts.end(),
                                    [&](DartId d) { return dart_edge(d) == e; }),
                     circ.darts.end());
    for (auto& d : circ.darts) d = remap(d);
  }
  for (auto& tm : g.towards) {
    if (dart_edge(tm.dart) == e)
      throw GraphError("shrink: toward mark sits on a contracted edge");
    tm.dart = remap(tm.dart);
  }
}

// One pass with total reduction `step`, step <= m * min circle edge length.
void shrink_pass(RibbonGraph& g, int ci, const Rat& step,
                 const std::vector<std::string>& reserved) {
  std::vector<DartId> cyc = g.circles[ci].darts;
  int m = (int)cyc.size();
  Rat per = step / m, half = step / (2 * m);
  for (int i = 0; i < m; ++i) {
    DartId cout = cyc[i];
    DartId cin = rev(cyc[(i + m - 1) % m]);
    int v = g.dart_from(cout);
    std::vector<DartId> f = cut_after(g.order[v], cout);
    if (f.empty() || f.back() != cin) throw GraphError("shrink: circle is not a free face");
    f.pop_back();
    if (f.empty()) continue;
    if (f.size() == 1) {
      g.elen[dart_edge(f[0])] += half;
      continue;
    }
    int lvl = 0;
    for (DartId d : f) lvl = std::max(lvl, g.dart_level(d));
    int nv = g.num_vertices();
    g.vertex_names.push_back(fresh_name(g.vertex_names, {}, g.vertex_names[v] + "'"));
    int ne = g.num_edges();
    g.edge_names.push_back(fresh_name(g.edge_names, reserved, g.vertex_names[v] + ".g"));
    g.efrom.push_back(v);
    g.eto.push_back(nv);
    g.elen.push_back(half);
    g.elevel.push_back(lvl);
    g.order[v] = {cin, cout, 2 * ne};
    for (DartId d : f) {
      if (dart_positive(d))
        g.efrom[dart_edge(d)] = nv;
      else
        g.eto[dart_edge(d)] = nv;
    }
    f.push_back(2 * ne + 1);
    g.order.push_back(std::move(f));
  }
  std::vector<std::string> dead;
  for (DartId d : cyc) {
    int e = dart_edge(d);
    g.elen[e] -= per;
    if (g.elen[e] == 0) dead.push_back(g.edge_names[e]);
  }
  for (const auto& name : dead) contract_circle_edge(g, find_name(g.edge_names, name));
  g.finalize();
}

RibbonGraph shrink_orbit(const RibbonGraph& g0, const std::vector<int>& orbit, const Rat& eps) {
  for (int ci : orbit) check_shrinkable(g0, ci, eps);
  DeltaMap dm = resolve_deltas(g0);
  if (!dm.problems.empty()) throw GraphError("shrink: " + dm.problems.front());
  RibbonGraph g = g0;
  for (int ci : orbit) {
    Rat remaining = eps;
    while (remaining > 0) {
      const auto& cyc = g.circles[ci].darts;
      Rat lmin = g.dart_len(cyc[0]);
      for (DartId d : cyc) lmin = std::min(lmin, g.dart_len(d));
      Rat cap = Rat((int)cyc.size()) * lmin;
      Rat step = remaining < cap ? remaining : cap;
      shrink_pass(g, ci, step, g0.edge_names);
      remaining -= step;
    }
  }
  // Contraction can delete a component's name-giving edge; restate deltas
  // per surviving component from the resolved original values.
  std::vector<DeltaEntry> nd;
  for (int lvl = 0; lvl <= g.depth(); ++lvl) {
    Components comps = component_ids(g, lvl);
    std::vector<std::optional<Rat>> vals((size_t)comps.count);
    for (int e = 0; e < g.num_edges(); ++e) {
      int k = comps.comp_of_edge[e];
      if (k < 0) continue;
      int oe = find_name(g0.edge_names, g.edge_names[e]);
      if (oe < 0) continue;
      auto v = dm.at_edge(lvl, oe);
      if (!v) continue;
      if (vals[k] && *vals[k] != *v)
        throw GraphError("shrink: deltas disagree after contraction");
      vals[k] = *v;
    }
    for (int k = 0; k < comps.count; ++k) {
      if (!vals[k]) throw GraphError("shrink: a component lost its delta carrier");
      nd.push_back({lvl, false, comps.names[k], *vals[k]});
    }
  }
  g.deltas = std::move(nd);
  g.finalize();
  auto errs = validate(g);
  if (!errs.empty()) throw GraphError("shrink: produced an invalid graph: " + errs.front());
  return g;
}

}  // namespace

RibbonGraph subdivide_edge(const RibbonGraph& g0, int e, const Rat& at) {
  if (e < 0 || e >= g0.num_edges()) throw GraphError("subdivide: no such edge");
  if (!(at > 0) || at >= g0.elen[e]) throw GraphError("subdivide: cut must be interior");
  RibbonGraph g = g0;
  int head = g.eto[e];
  int nv = g.num_vertices();
  g.vertex_names.push_back(fresh_name(g.vertex_names, {}, g.edge_names[e] + ".v"));
  int ne = g.num_edges();
  g.edge_names.push_back(fresh_name(g.edge_names, {}, g.edge_names[e] + "'"));
  g.efrom.push_back(nv);
  g.eto.push_back(head);
  g.elen.push_back(g.elen[e] - at);
  g.elevel.push_back(g.elevel[e]);
  g.elen[e] = at;
  g.eto[e] = nv;
  std::replace(g.order[head].begin(), g.order[head].end(), 2 * e + 1, 2 * ne + 1);
  g.order.push_back({2 * ne, 2 * e + 1});
  for (auto& circ : g.circles) {
    std::vector<DartId> nd;
    for (DartId d : circ.darts) {
      if (d == 2 * e) {
        nd.push_back(2 * e);
        nd.push_back(2 * ne);
      } else if (d == 2 * e + 1) {
        nd.push_back(2 * ne + 1);
        nd.push_back(2 * e + 1);
      } else {
        nd.push_back(d);
      }
    }
    circ.darts = std::move(nd);
  }
  g.finalize();
  return g;
}

RibbonGraph shrink_circle(const RibbonGraph& g, int circle, const Rat& eps) {
  return shrink_orbit(g, {circle}, eps);
}

RibbonGraph shrink_boundary(const RibbonGraph& g, int circle, const Rat& eps) {
  check_shrinkable(g, circle, eps);
  std::vector<int> orbit{circle};
  int cur = circle;
  for (;;) {
    cur = boundary_rotation(g, cur).image_circle;
    if (cur == circle) break;
    if ((int)orbit.size() > (int)g.circles.size())
      throw GraphError("shrink: twist orbit of the circle does not close");
    orbit.push_back(cur);
  }
  return shrink_orbit(g, orbit, eps);
}

}  // namespace tat
