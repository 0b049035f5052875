#include "tat/ribbon_graph.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace tat {

bool token_less(const std::string& a, const std::string& b) {
  auto numeric = [](const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  bool na = numeric(a), nb = numeric(b);
  if (na != nb) return na;  // numbers sort first
  if (na && nb) {
    if (a.size() != b.size()) return a.size() < b.size();
  }
  return a < b;
}

int RibbonGraph::depth() const {
  int d = 0;
  for (int l : elevel) d = std::max(d, l);
  return d;
}

std::optional<int> RibbonGraph::vertex_index(const std::string& name) const {
  auto it = vindex_.find(name);
  if (it == vindex_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> RibbonGraph::edge_index(const std::string& name) const {
  auto it = eindex_.find(name);
  if (it == eindex_.end()) return std::nullopt;
  return it->second;
}

std::optional<DartId> RibbonGraph::dart_by_name(const std::string& token) const {
  if (token.size() < 2) return std::nullopt;
  char s = token.back();
  if (s != '+' && s != '-') return std::nullopt;
  auto e = edge_index(token.substr(0, token.size() - 1));
  if (!e) return std::nullopt;
  return 2 * *e + (s == '+' ? 0 : 1);
}

int RibbonGraph::circle_of_edge(int e) const { return circle_of_edge_[e]; }

void RibbonGraph::finalize() {
  structural_errors_.clear();
  vindex_.clear();
  eindex_.clear();
  for (int v = 0; v < num_vertices(); ++v)
    if (!vindex_.emplace(vertex_names[v], v).second)
      structural_errors_.push_back("duplicate vertex id " + vertex_names[v]);
  for (int e = 0; e < num_edges(); ++e)
    if (!eindex_.emplace(edge_names[e], e).second)
      structural_errors_.push_back("duplicate edge id " + edge_names[e]);

  circle_of_edge_.assign(num_edges(), -1);
  for (int c = 0; c < (int)circles.size(); ++c)
    for (DartId d : circles[c].darts)
      if (d >= 0 && d < num_darts()) circle_of_edge_[dart_edge(d)] = c;

  sigma_.assign(num_darts(), -1);
  sigma_inv_.assign(num_darts(), -1);
  std::vector<int> seen_at(num_darts(), -1);
  order.resize(num_vertices());
  for (int v = 0; v < num_vertices(); ++v) {
    const auto& cyc = order[v];
    for (size_t i = 0; i < cyc.size(); ++i) {
      DartId d = cyc[i];
      if (d < 0 || d >= num_darts()) {
        structural_errors_.push_back("order at " + vertex_names[v] + " lists unknown dart");
        continue;
      }
      if (seen_at[d] >= 0) {
        structural_errors_.push_back("dart " + dart_name(d) + " listed twice in orders");
        continue;
      }
      seen_at[d] = v;
      if (dart_from(d) != v)
        structural_errors_.push_back("dart " + dart_name(d) + " listed at " + vertex_names[v] +
                                     " but leaves " + vertex_names[dart_from(d)]);
      DartId nxt = cyc[(i + 1) % cyc.size()];
      if (nxt >= 0 && nxt < num_darts()) sigma_[d] = nxt;
    }
  }
  for (DartId d = 0; d < num_darts(); ++d) {
    if (seen_at[d] < 0) {
      structural_errors_.push_back("dart " + dart_name(d) + " missing from orders");
      sigma_[d] = d;
    }
  }
  for (DartId d = 0; d < num_darts(); ++d)
    if (sigma_[d] >= 0) sigma_inv_[sigma_[d]] = d;
  for (DartId d = 0; d < num_darts(); ++d)
    if (sigma_inv_[d] < 0) sigma_inv_[d] = d;
  finalized_ = true;
}

std::vector<std::string> validate(const RibbonGraph& g) {
  std::vector<std::string> out = g.structural_errors_;
  if (!g.finalized()) {
    out.push_back("graph not finalized");
    return out;
  }
  int depth = g.depth();

  for (int e = 0; e < g.num_edges(); ++e) {
    if (g.len(e) <= 0) out.push_back("non-positive length on edge " + g.edge_names[e]);
    if (g.level(e) < 0) out.push_back("negative level on edge " + g.edge_names[e]);
  }

  for (int lvl = 0; lvl <= depth; ++lvl) {
    for (int v = 0; v < g.num_vertices(); ++v) {
      int deg = 0;
      for (DartId d : g.order[v])
        if (d >= 0 && d < g.num_darts() && g.dart_level(d) >= lvl) ++deg;
      if (deg == 1)
        out.push_back("univalent vertex " + g.vertex_names[v] + " in level-" + std::to_string(lvl) +
                      " subgraph");
    }
  }

  std::vector<int> circle_vertex(g.num_vertices(), -1);
  for (int c = 0; c < (int)g.circles.size(); ++c) {
    const auto& cir = g.circles[c];
    const auto& ds = cir.darts;
    if (ds.empty()) {
      out.push_back("relative circle " + cir.name + " is empty");
      continue;
    }
    bool ok = true;
    for (DartId d : ds)
      if (d < 0 || d >= g.num_darts()) {
        out.push_back("relative circle " + cir.name + " references unknown dart");
        ok = false;
      }
    if (!ok) continue;
    std::set<int> edges_seen, verts_seen;
    for (size_t i = 0; i < ds.size(); ++i) {
      DartId d = ds[i], nxt = ds[(i + 1) % ds.size()];
      if (g.dart_to(d) != g.dart_from(nxt))
        out.push_back("relative circle " + cir.name + " breaks between " + g.dart_name(d) +
                      " and " + g.dart_name(nxt));
      if (g.sigma(rev(d)) != nxt)
        out.push_back("relative circle " + cir.name + " is not a free face at " + g.dart_name(d));
      if (g.dart_level(d) < cir.level)
        out.push_back("edge " + g.edge_names[dart_edge(d)] + " of relative circle " + cir.name +
                      " has level below " + std::to_string(cir.level));
      if (!edges_seen.insert(dart_edge(d)).second)
        out.push_back("relative circle " + cir.name + " repeats edge " +
                      g.edge_names[dart_edge(d)]);
      int v = g.dart_from(d);
      if (!verts_seen.insert(v).second)
        out.push_back("relative circle " + cir.name + " revisits vertex " + g.vertex_names[v]);
      if (circle_vertex[v] >= 0 && circle_vertex[v] != c)
        out.push_back("relative circles " + g.circles[circle_vertex[v]].name + " and " + cir.name +
                      " share vertex " + g.vertex_names[v]);
      circle_vertex[v] = c;
    }
    if (cir.level < 0 || cir.level > depth)
      out.push_back("relative circle " + cir.name + " has level outside the filtration");
  }

  DeltaMap dm = resolve_deltas(g);
  for (const auto& p : dm.problems) out.push_back(p);
  for (const auto& de : g.deltas) {
    if (de.level < 0 || de.level > depth)
      out.push_back("delta entry for level " + std::to_string(de.level) +
                    " outside the filtration");
    if (de.value < 0) out.push_back("negative delta at level " + std::to_string(de.level));
    if (de.level == 0 && de.value <= 0) out.push_back("delta at level 0 must be positive");
  }

  for (const auto& t : g.towards) {
    if (t.dart < 0 || t.dart >= g.num_darts()) {
      out.push_back("toward mark references unknown dart");
      continue;
    }
    if (t.level < 1 || t.level > depth)
      out.push_back("toward mark at level " + std::to_string(t.level) +
                    " outside [1, depth]");
    else if (g.dart_level(t.dart) < t.level)
      out.push_back("toward mark dart " + g.dart_name(t.dart) + " below level " +
                    std::to_string(t.level));
  }
  return out;
}

DartId sigma_at_level(const RibbonGraph& g, int lvl, DartId d) {
  DartId s = g.sigma(d);
  int guard = g.num_darts() + 1;
  while (g.dart_level(s) < lvl && guard-- > 0) s = g.sigma(s);
  return s;
}

std::vector<std::vector<DartId>> faces(const RibbonGraph& g, int lvl) {
  std::vector<std::vector<DartId>> out;
  std::vector<char> seen(g.num_darts(), 0);
  for (DartId d0 = 0; d0 < g.num_darts(); ++d0) {
    if (seen[d0] || g.dart_level(d0) < lvl) continue;
    std::vector<DartId> cyc;
    DartId d = d0;
    while (!seen[d]) {
      seen[d] = 1;
      cyc.push_back(d);
      d = next_at_level(g, lvl, d);
    }
    auto mn = std::min_element(cyc.begin(), cyc.end());
    std::rotate(cyc.begin(), mn, cyc.end());
    out.push_back(std::move(cyc));
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

Rat face_length(const RibbonGraph& g, const std::vector<DartId>& face) {
  Rat sum = 0;
  for (DartId d : face) sum += g.dart_len(d);
  return sum;
}

FaceTable build_face_table(const RibbonGraph& g, int lvl) {
  FaceTable t;
  t.level = lvl;
  t.cycles = faces(g, lvl);
  t.face_of.assign(g.num_darts(), -1);
  t.pos_of.assign(g.num_darts(), -1);
  t.arc_start.assign(g.num_darts(), Rat(0));
  for (int f = 0; f < (int)t.cycles.size(); ++f) {
    Rat acc = 0;
    for (int i = 0; i < (int)t.cycles[f].size(); ++i) {
      DartId d = t.cycles[f][i];
      t.face_of[d] = f;
      t.pos_of[d] = i;
      t.arc_start[d] = acc;
      acc += g.dart_len(d);
    }
    t.lengths.push_back(acc);
  }
  return t;
}

Components component_ids(const RibbonGraph& g, int lvl) {
  Components c;
  c.comp_of_edge.assign(g.num_edges(), -1);
  std::vector<int> parent(g.num_vertices());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int e = 0; e < g.num_edges(); ++e)
    if (g.level(e) >= lvl) parent[find(g.efrom[e])] = find(g.eto[e]);

  // root -> (min token, edges)
  std::map<int, std::string> min_token;
  for (int e = 0; e < g.num_edges(); ++e) {
    if (g.level(e) < lvl) continue;
    int r = find(g.efrom[e]);
    auto it = min_token.find(r);
    if (it == min_token.end() || token_less(g.edge_names[e], it->second))
      min_token[r] = g.edge_names[e];
  }
  std::vector<std::pair<std::string, int>> ordered;
  for (auto& [root, tok] : min_token) ordered.push_back({tok, root});
  std::sort(ordered.begin(), ordered.end(),
            [](const auto& a, const auto& b) { return token_less(a.first, b.first); });
  std::map<int, int> root_to_comp;
  for (auto& [tok, root] : ordered) {
    root_to_comp[root] = c.count++;
    c.names.push_back(tok);
  }
  for (int e = 0; e < g.num_edges(); ++e)
    if (g.level(e) >= lvl) c.comp_of_edge[e] = root_to_comp[find(g.efrom[e])];
  return c;
}

std::vector<EulerData> euler_genus_components(const RibbonGraph& g, int lvl) {
  Components comp = component_ids(g, lvl);
  std::vector<EulerData> out(comp.count);
  std::vector<std::set<int>> verts(comp.count);
  for (int e = 0; e < g.num_edges(); ++e) {
    int k = comp.comp_of_edge[e];
    if (k < 0) continue;
    out[k].edges++;
    verts[k].insert(g.efrom[e]);
    verts[k].insert(g.eto[e]);
  }
  for (int k = 0; k < comp.count; ++k) out[k].verts = (long long)verts[k].size();
  for (const auto& f : faces(g, lvl)) {
    int k = comp.comp_of_edge[dart_edge(f.front())];
    out[k].faces_n++;
  }
  for (int k = 0; k < comp.count; ++k) {
    out[k].chi = out[k].verts - out[k].edges;
    out[k].boundary = out[k].faces_n;
    long long t = 2 - out[k].chi - out[k].boundary;
    if (t < 0 || t % 2 != 0)
      throw GraphError("impossible genus on component " + comp.names[k] + " of level " +
                       std::to_string(lvl));
    out[k].genus = t / 2;
  }
  return out;
}

EulerData euler_genus(const RibbonGraph& g, int lvl) {
  EulerData agg;
  for (const auto& e : euler_genus_components(g, lvl)) {
    agg.verts += e.verts;
    agg.edges += e.edges;
    agg.faces_n += e.faces_n;
    agg.chi += e.chi;
    agg.genus += e.genus;
    agg.boundary += e.boundary;
  }
  return agg;
}

DeltaMap resolve_deltas(const RibbonGraph& g) {
  DeltaMap dm;
  dm.depth = g.depth();
  dm.comps.resize(dm.depth + 1);
  dm.values.resize(dm.depth + 1);
  for (int l = 0; l <= dm.depth; ++l) {
    dm.comps[l] = component_ids(g, l);
    dm.values[l].assign(dm.comps[l].count, std::nullopt);
  }
  for (const auto& de : g.deltas) {
    if (de.level < 0 || de.level > dm.depth) continue;  // reported by validate
    if (!de.wildcard) continue;
    for (auto& v : dm.values[de.level]) {
      v = de.value;
    }
  }
  for (const auto& de : g.deltas) {
    if (de.level < 0 || de.level > dm.depth || de.wildcard) continue;
    auto& names = dm.comps[de.level].names;
    auto it = std::find(names.begin(), names.end(), de.component);
    if (it == names.end()) {
      dm.problems.push_back("delta entry names unknown component " + de.component + " at level " +
                            std::to_string(de.level));
      continue;
    }
    dm.values[de.level][it - names.begin()] = de.value;
  }
  return dm;
}

std::optional<Rat> DeltaMap::at_edge(int lvl, int e) const {
  if (lvl < 0 || lvl > depth) return std::nullopt;
  int k = comps[lvl].comp_of_edge[e];
  if (k < 0) return std::nullopt;
  return values[lvl][k];
}

MetricPoint canonical_point(const RibbonGraph& g, MetricPoint p) {
  if (p.dart < 0 || p.dart >= g.num_darts()) throw GraphError("point on unknown dart");
  const Rat& L = g.dart_len(p.dart);
  if (p.offset < 0 || p.offset > L) throw GraphError("point offset outside edge");
  if (p.offset == L) p = {rev(p.dart), Rat(0)};
  if (p.offset == 0) {
    int v = g.dart_from(p.dart);
    DartId best = p.dart;
    for (DartId d : g.order[v]) best = std::min(best, d);
    return {best, Rat(0)};
  }
  if (rev(p.dart) < p.dart) return {rev(p.dart), L - p.offset};
  return p;
}

bool is_vertex_point(const RibbonGraph& g, const MetricPoint& p) {
  return p.offset == 0 || p.offset == g.dart_len(p.dart);
}

int depth_of(const RibbonGraph& g, const MetricPoint& p) {
  MetricPoint c = canonical_point(g, p);
  if (c.offset != 0) return g.dart_level(c.dart);
  int v = g.dart_from(c.dart);
  int m = 0;
  for (DartId d : g.order[v]) m = std::max(m, g.dart_level(d));
  return m;
}

RibbonGraph induced_subgraph(const RibbonGraph& g, int lvl) {
  RibbonGraph h;
  std::vector<int> vmap(g.num_vertices(), -1), emap(g.num_edges(), -1);
  for (int v = 0; v < g.num_vertices(); ++v) {
    bool keep = false;
    for (DartId d : g.order[v])
      if (g.dart_level(d) >= lvl) keep = true;
    if (keep) {
      vmap[v] = h.num_vertices();
      h.vertex_names.push_back(g.vertex_names[v]);
    }
  }
  for (int e = 0; e < g.num_edges(); ++e) {
    if (g.level(e) < lvl) continue;
    emap[e] = h.num_edges();
    h.edge_names.push_back(g.edge_names[e]);
    h.efrom.push_back(vmap[g.efrom[e]]);
    h.eto.push_back(vmap[g.eto[e]]);
    h.elen.push_back(g.elen[e]);
    h.elevel.push_back(g.elevel[e]);
  }
  auto dmap = [&](DartId d) { return 2 * emap[dart_edge(d)] + (d & 1); };
  h.order.resize(h.num_vertices());
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (vmap[v] < 0) continue;
    for (DartId d : g.order[v])
      if (g.dart_level(d) >= lvl) h.order[vmap[v]].push_back(dmap(d));
  }
  for (const auto& c : g.circles) {
    if (c.level < lvl) continue;
    RelativeCircle nc{c.name, c.level, {}};
    for (DartId d : c.darts) nc.darts.push_back(dmap(d));
    h.circles.push_back(std::move(nc));
  }
  for (const auto& de : g.deltas)
    if (de.level >= lvl) h.deltas.push_back(de);
  for (const auto& t : g.towards)
    if (t.level >= lvl && emap[dart_edge(t.dart)] >= 0)
      h.towards.push_back({t.level, dmap(t.dart)});
  h.finalize();
  return h;
}

bool graph_equal(const RibbonGraph& a, const RibbonGraph& b) {
  auto rot_min = [](std::vector<DartId> v) {
    if (!v.empty()) std::rotate(v.begin(), std::min_element(v.begin(), v.end()), v.end());
    return v;
  };
  if (a.vertex_names != b.vertex_names || a.edge_names != b.edge_names) return false;
  if (a.efrom != b.efrom || a.eto != b.eto || a.elen != b.elen || a.elevel != b.elevel)
    return false;
  if (a.order != b.order) return false;
  if (a.circles.size() != b.circles.size()) return false;
  for (size_t i = 0; i < a.circles.size(); ++i) {
    if (a.circles[i].name != b.circles[i].name || a.circles[i].level != b.circles[i].level ||
        rot_min(a.circles[i].darts) != rot_min(b.circles[i].darts))
      return false;
  }
  auto delta_key = [](const DeltaEntry& d) {
    return std::tuple<int, int, std::string, Rat>(d.level, d.wildcard ? 0 : 1, d.component,
                                                  d.value);
  };
  auto da = a.deltas, db = b.deltas;
  auto dl = [&](const DeltaEntry& x, const DeltaEntry& y) { return delta_key(x) < delta_key(y); };
  std::sort(da.begin(), da.end(), dl);
  std::sort(db.begin(), db.end(), dl);
  if (da.size() != db.size()) return false;
  for (size_t i = 0; i < da.size(); ++i)
    if (delta_key(da[i]) != delta_key(db[i])) return false;
  auto ta = a.towards, tb = b.towards;
  auto tl = [](const TowardMark& x, const TowardMark& y) {
    return std::tie(x.level, x.dart) < std::tie(y.level, y.dart);
  };
  std::sort(ta.begin(), ta.end(), tl);
  std::sort(tb.begin(), tb.end(), tl);
  if (ta.size() != tb.size()) return false;
  for (size_t i = 0; i < ta.size(); ++i)
    if (std::tie(ta[i].level, ta[i].dart) != std::tie(tb[i].level, tb[i].dart)) return false;
  return true;
}

}  // namespace tat
