#include "tat/walk.hpp"

#include <algorithm>
#include <deque>

namespace tat {
namespace {

// Highest level among edges at the vertex `v`.
int vertex_level(const RibbonGraph& g, int v) {
  int lvl = -1;
  for (DartId d : g.order[v]) lvl = std::max(lvl, g.dart_level(d));
  return lvl;
}

WalkLeg leg_walk(const RibbonGraph& g, int level, DirectedPoint start, const Rat& len) {
  if (g.dart_level(start.dart) < level)
    throw GraphError("walk start below level " + std::to_string(level));
  if (start.offset < 0 || start.offset > g.dart_len(start.dart))
    throw GraphError("walk start offset outside edge");
  WalkLeg leg{level, len, {start.dart}, start};
  Rat r = len;
  DartId d = start.dart;
  Rat t = start.offset;
  while (r > g.dart_len(d) - t) {
    r -= g.dart_len(d) - t;
    d = next_at_level(g, level, d);
    t = 0;
    leg.darts.push_back(d);
  }
  leg.end = {d, t + r};
  return leg;
}

WalkTrace finish_trace(const RibbonGraph& g, DirectedPoint start, std::vector<WalkLeg> legs) {
  WalkTrace tr;
  tr.start = start;
  tr.legs = std::move(legs);
  tr.endpoint_direction = tr.legs.back().end;
  tr.endpoint = canonical_point(g, {tr.endpoint_direction.dart, tr.endpoint_direction.offset});
  tr.order = (int)tr.legs.size() - 1;
  tr.total_length = 0;
  for (const auto& l : tr.legs) tr.total_length += l.length;
  return tr;
}

// Continues legs 1.. of a mixed walk after the given first leg.
WalkTrace mixed_tail(const RibbonGraph& g, const DeltaMap& dm, DirectedPoint start, int cp,
                     WalkLeg first) {
  std::vector<WalkLeg> legs{std::move(first)};
  for (int i = 1; i <= cp; ++i) {
    DirectedPoint cur = legs.back().end;
    if (cur.offset == g.dart_len(cur.dart)) {
      int v = g.dart_to(cur.dart);
      if (vertex_level(g, v) < i) break;
      throw AmbiguousDirection("leg " + std::to_string(i) + " starts at vertex " +
                               g.vertex_names[v]);
    }
    if (g.dart_level(cur.dart) < i) break;
    auto delta = dm.at_edge(i, dart_edge(cur.dart));
    if (!delta)
      throw GraphError("no delta at level " + std::to_string(i) + " for edge " +
                       g.edge_names[dart_edge(cur.dart)]);
    legs.push_back(leg_walk(g, i, cur, *delta));
  }
  return finish_trace(g, start, std::move(legs));
}

// Start of the boundary walk at p: opposite to the circle orientation.
DirectedPoint boundary_start(const RibbonGraph& g, MetricPoint p, int level) {
  p = canonical_point(g, p);
  if (is_vertex_point(g, p)) throw GraphError("boundary walk start is a vertex");
  int e = dart_edge(p.dart);
  int ci = g.circle_of_edge(e);
  if (ci < 0 || g.circles[ci].level < level)
    throw GraphError("point not on a relative circle of level " + std::to_string(level));
  DartId cd = -1;
  for (DartId d : g.circles[ci].darts)
    if (dart_edge(d) == e) cd = d;
  if (cd == p.dart) return {rev(cd), g.dart_len(cd) - p.offset};
  return {p.dart, p.offset};  // p.dart == rev(cd)
}

}  // namespace

WalkTrace safe_walk(const RibbonGraph& g, DirectedPoint start, const Rat& len, int level) {
  if (len < 0) throw GraphError("negative walk length");
  return finish_trace(g, start, {leg_walk(g, level, start, len)});
}

WalkTrace boundary_safe_walk(const RibbonGraph& g, MetricPoint p, const Rat& len, int level) {
  DirectedPoint start = boundary_start(g, p, level);
  return finish_trace(g, start, {leg_walk(g, level, start, len)});
}

WalkTrace mixed_safe_walk(const RibbonGraph& g, const DeltaMap& dm, DirectedPoint start) {
  if (start.offset <= 0 || start.offset >= g.dart_len(start.dart))
    throw GraphError("mixed walk start must be an interior point");
  if (g.on_relative(dart_edge(start.dart))) throw GraphError("mixed walk start lies on A");
  int cp = g.dart_level(start.dart);
  auto d0 = dm.at_edge(0, dart_edge(start.dart));
  if (!d0) throw GraphError("no delta at level 0");
  return mixed_tail(g, dm, start, cp, leg_walk(g, 0, start, *d0));
}

WalkTrace mixed_safe_walk(const RibbonGraph& g, DirectedPoint start) {
  return mixed_safe_walk(g, resolve_deltas(g), start);
}

WalkTrace boundary_mixed_safe_walk(const RibbonGraph& g, const DeltaMap& dm, MetricPoint p) {
  DirectedPoint start = boundary_start(g, p, 0);
  int cp = g.dart_level(start.dart);
  auto d0 = dm.at_edge(0, dart_edge(start.dart));
  if (!d0) throw GraphError("no delta at level 0");
  return mixed_tail(g, dm, start, cp, leg_walk(g, 0, start, *d0));
}

WalkTrace boundary_mixed_safe_walk(const RibbonGraph& g, MetricPoint p) {
  return boundary_mixed_safe_walk(g, resolve_deltas(g), p);
}

const WalkPiece& PiecewiseWalkFamily::piece_at(const Rat& u) const {
  auto it = std::partition_point(pieces.begin(), pieces.end(),
                                 [&](const WalkPiece& p) { return p.hi <= u; });
  if (it == pieces.end() || !(it->lo < u && u < it->hi))
    throw GraphError("offset " + rat_str(u) + " is a walk-family breakpoint");
  return *it;
}

namespace {

struct SubPiece {
  Rat lo, hi;
  DartId d;
  Rat shift;  // position = u + shift on d
};

// One constant-length walk at `level` from position u + s on E, u in (lo, hi).
std::vector<SubPiece> expand_leg(const RibbonGraph& g, int level, const Rat& r, const Rat& lo,
                                 const Rat& hi, DartId E, const Rat& s) {
  std::vector<SubPiece> out;
  if (r == 0) {
    out.push_back({lo, hi, E, s});
    return out;
  }
  Rat cut = g.dart_len(E) - s - r;  // endpoint stays on E iff u <= cut
  if (cut > lo) out.push_back({lo, std::min(hi, cut), E, s + r});
  if (cut < hi) {
    Rat w = std::max(lo, cut);
    Rat sk = s + r - g.dart_len(E);
    DartId d = next_at_level(g, level, E);
    while (true) {
      Rat hi_k = g.dart_len(d) - sk;
      if (w < std::min(hi, hi_k)) out.push_back({w, std::min(hi, hi_k), d, sk});
      if (hi_k >= hi) break;
      w = std::max(w, hi_k);
      sk -= g.dart_len(d);
      d = next_at_level(g, level, d);
    }
  }
  return out;
}

}  // namespace

PiecewiseWalkFamily safe_walk_family(const RibbonGraph& g, DartId d, const Rat& len, int level) {
  if (g.dart_level(d) < level) throw GraphError("dart below level");
  if (len < 0) throw GraphError("negative walk length");
  PiecewiseWalkFamily fam{d, g.dart_len(d), {}};
  for (const auto& sp : expand_leg(g, level, len, Rat(0), fam.edge_len, d, Rat(0)))
    fam.pieces.push_back({sp.lo, sp.hi, sp.d, sp.shift, 0, len, {level}, {len}});
  std::sort(fam.pieces.begin(), fam.pieces.end(),
            [](const WalkPiece& a, const WalkPiece& b) { return a.lo < b.lo; });
  return fam;
}

PiecewiseWalkFamily mixed_walk_family(const RibbonGraph& g, const DeltaMap& dm, DartId D) {
  int cp = g.dart_level(D);
  PiecewiseWalkFamily fam{D, g.dart_len(D), {}};

  struct State {
    Rat lo, hi;
    DartId d;
    Rat shift;
    int next_leg;
    std::vector<int> leg_levels;
    std::vector<Rat> leg_lens;
  };
  std::deque<State> q;
  q.push_back({Rat(0), fam.edge_len, D, Rat(0), 0, {}, {}});
  while (!q.empty()) {
    State st = std::move(q.front());
    q.pop_front();
    int i = st.next_leg;
    bool stop = i > cp || (i > 0 && g.dart_level(st.d) < i);
    if (stop) {
      WalkPiece p{st.lo, st.hi, st.d, st.shift, (int)st.leg_levels.size() - 1,
                  Rat(0),  st.leg_levels, st.leg_lens};
      for (const auto& l : st.leg_lens) p.total_len += l;
      fam.pieces.push_back(std::move(p));
      continue;
    }
    auto delta = dm.at_edge(i, dart_edge(st.d));
    if (!delta)
      throw GraphError("no delta at level " + std::to_string(i) + " for edge " +
                       g.edge_names[dart_edge(st.d)]);
    for (const auto& sp : expand_leg(g, i, *delta, st.lo, st.hi, st.d, st.shift)) {
      State nx{sp.lo, sp.hi, sp.d, sp.shift, i + 1, st.leg_levels, st.leg_lens};
      nx.leg_levels.push_back(i);
      nx.leg_lens.push_back(*delta);
      q.push_back(std::move(nx));
    }
  }
  std::sort(fam.pieces.begin(), fam.pieces.end(),
            [](const WalkPiece& a, const WalkPiece& b) { return a.lo < b.lo; });
  return fam;
}

}  // namespace tat
