#include "tat/checker.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace tat {
namespace {

DeltaMap deltas_or_throw(const RibbonGraph& g) {
  DeltaMap dm = resolve_deltas(g);
  if (!dm.problems.empty()) throw GraphError("delta resolution: " + dm.problems.front());
  return dm;
}

// Orientation dart of edge e inside circle ci.
DartId circle_dart(const RibbonGraph& g, int ci, int e) {
  for (DartId d : g.circles[ci].darts)
    if (dart_edge(d) == e) return d;
  throw GraphError("edge " + g.edge_names[e] + " not on circle " + g.circles[ci].name);
}

void sort_witnesses(std::vector<Witness>& w) {
  std::stable_sort(w.begin(), w.end(), [](const Witness& a, const Witness& b) {
    return a.dart != b.dart ? a.dart < b.dart : a.offset < b.offset;
  });
}

Verdict merge_edge_results(std::vector<std::vector<Witness>>&& wit,
                           std::vector<std::vector<std::string>>&& notes,
                           const std::vector<std::string>& errors) {
  for (const auto& e : errors)
    if (!e.empty()) throw GraphError(e);
  Verdict v;
  for (auto& w : wit) v.witnesses.insert(v.witnesses.end(), w.begin(), w.end());
  for (auto& n : notes) v.notes.insert(v.notes.end(), n.begin(), n.end());
  sort_witnesses(v.witnesses);
  v.holds = v.witnesses.empty();
  return v;
}

// Runs fn(e, witnesses, notes) over all edges, optionally OpenMP-parallel;
// results are merged in edge order so both paths give identical verdicts.
template <class Fn>
Verdict for_each_edge(const RibbonGraph& g, bool parallel, Fn&& fn) {
  int n = g.num_edges();
  std::vector<std::vector<Witness>> wit(n);
  std::vector<std::vector<std::string>> notes(n);
  std::vector<std::string> errors(n);
#if defined(TAT_HAVE_OPENMP)
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
  for (int e = 0; e < n; ++e) {
    try {
      fn(e, wit[e], notes[e]);
    } catch (const std::exception& ex) {
      errors[e] = ex.what();
    }
  }
  return merge_edge_results(std::move(wit), std::move(notes), errors);
}

MetricPoint piece_end(const RibbonGraph& g, const WalkPiece& p, const Rat& u) {
  return canonical_point(g, {p.end_dart, u + p.end_c});
}

// Common refinement of the families from both darts of edge e; pieces are
// visited with their gamma/omega halves matched up.
template <class Fam, class Fn>
void refine_edge(const RibbonGraph& g, int e, Fam&& family_of, Fn&& on_piece) {
  DartId d = 2 * e;
  const Rat& L = g.elen[e];
  PiecewiseWalkFamily fg = family_of(d);
  PiecewiseWalkFamily fw = family_of(rev(d));
  std::vector<Rat> cuts{Rat(0), L};
  for (const auto& p : fg.pieces) {
    cuts.push_back(p.lo);
    cuts.push_back(p.hi);
  }
  for (const auto& p : fw.pieces) {
    cuts.push_back(L - p.hi);
    cuts.push_back(L - p.lo);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    Rat u = (cuts[i] + cuts[i + 1]) / 2;
    on_piece(u, fg.piece_at(u), fw.piece_at(L - u));
  }
}

// Clause I holds on a whole open piece iff the endpoints agree as affine
// families: opposite darts with offsets summing to the endpoint edge length.
bool clause1_holds(const RibbonGraph& g, const Rat& L, const WalkPiece& P, const WalkPiece& Q) {
  return Q.end_dart == rev(P.end_dart) && P.end_c + Q.end_c == g.dart_len(P.end_dart) - L;
}

template <class Fam>
void clause12_edge(const RibbonGraph& g, int e, bool level_clause, Fam&& family_of,
                   std::vector<Witness>& out) {
  const Rat& L = g.elen[e];
  int lvl = g.elevel[e];
  DartId d = 2 * e;
  refine_edge(g, e, family_of, [&](const Rat& u, const WalkPiece& P, const WalkPiece& Q) {
    MetricPoint ge = piece_end(g, P, u);
    MetricPoint we = piece_end(g, Q, L - u);
    if (!clause1_holds(g, L, P, Q)) out.push_back({d, u, 1, ge, we, "walk endpoints differ"});
    if (level_clause) {
      if (g.dart_level(P.end_dart) != lvl)
        out.push_back({d, u, 2, ge, we,
                       "endpoint level " + std::to_string(g.dart_level(P.end_dart)) +
                           ", expected " + std::to_string(lvl)});
      if (g.dart_level(Q.end_dart) != lvl)
        out.push_back({rev(d), L - u, 2, ge, we,
                       "endpoint level " + std::to_string(g.dart_level(Q.end_dart)) +
                           ", expected " + std::to_string(lvl)});
    }
  });
}

// Clause III: every boundary walk from the circle through e stays on circles
// of at least the starting level.
template <class Fam>
void clause3_edge(const RibbonGraph& g, int e, Fam&& family_of, std::vector<Witness>& out) {
  int lvl = g.elevel[e];
  int ci = g.circle_of_edge(e);
  DartId start = rev(circle_dart(g, ci, e));
  PiecewiseWalkFamily fam = family_of(start);
  for (const auto& p : fam.pieces) {
    int ee = dart_edge(p.end_dart);
    int ic = g.circle_of_edge(ee);
    if (ic >= 0 && g.circles[ic].level >= lvl) continue;
    Rat u = (p.lo + p.hi) / 2;
    MetricPoint end = piece_end(g, p, u);
    out.push_back({start, u, 3, end, end,
                   ic < 0 ? "boundary walk leaves the relative circles"
                          : "boundary walk lands on circle of level " +
                                std::to_string(g.circles[ic].level)});
  }
}

}  // namespace

Verdict check_pure_tat(const RibbonGraph& g, const Rat& len, const CheckOptions& opt) {
  if (g.depth() != 0) throw GraphError("pure check requires a depth-0 graph");
  if (!g.circles.empty()) throw GraphError("pure check requires an empty relative part");
  if (len < 0) throw GraphError("negative walk length");
  return for_each_edge(g, opt.parallel,
                       [&](int e, std::vector<Witness>& w, std::vector<std::string>&) {
                         clause12_edge(
                             g, e, false,
                             [&](DartId d) { return safe_walk_family(g, d, len, 0); }, w);
                       });
}

Verdict check_relative_tat(const RibbonGraph& g, const Rat& len, const CheckOptions& opt) {
  if (g.depth() != 0) throw GraphError("relative check requires a depth-0 graph");
  if (len < 0) throw GraphError("negative walk length");
  auto fam = [&](DartId d) { return safe_walk_family(g, d, len, 0); };
  return for_each_edge(g, opt.parallel,
                       [&](int e, std::vector<Witness>& w, std::vector<std::string>&) {
                         if (g.on_relative(e))
                           clause3_edge(g, e, fam, w);
                         else
                           clause12_edge(g, e, false, fam, w);
                       });
}

Verdict check_mixed_tat(const RibbonGraph& g, const CheckOptions& opt) {
  DeltaMap dm = deltas_or_throw(g);
  auto fam = [&](DartId d) { return mixed_walk_family(g, dm, d); };
  return for_each_edge(g, opt.parallel,
                       [&](int e, std::vector<Witness>& w, std::vector<std::string>&) {
                         if (g.on_relative(e))
                           clause3_edge(g, e, fam, w);
                         else
                           clause12_edge(g, e, true, fam, w);
                       });
}

Verdict check_walk_lemma(const RibbonGraph& g, const CheckOptions& opt) {
  DeltaMap dm = deltas_or_throw(g);
  auto fam = [&](DartId d) { return mixed_walk_family(g, dm, d); };
  return for_each_edge(
      g, opt.parallel, [&](int e, std::vector<Witness>& w, std::vector<std::string>&) {
        int lvl = g.elevel[e];
        const Rat& L = g.elen[e];
        if (g.on_relative(e)) {
          int ci = g.circle_of_edge(e);
          DartId start = rev(circle_dart(g, ci, e));
          for (const auto& p : fam(start).pieces)
            if (p.order != lvl) {
              Rat u = (p.lo + p.hi) / 2;
              MetricPoint end = piece_end(g, p, u);
              w.push_back({start, u, 4, end, end,
                           "boundary walk order " + std::to_string(p.order) + ", expected " +
                               std::to_string(lvl)});
            }
          return;
        }
        refine_edge(g, e, fam, [&](const Rat& u, const WalkPiece& P, const WalkPiece& Q) {
          MetricPoint ge = piece_end(g, P, u);
          MetricPoint we = piece_end(g, Q, L - u);
          if (P.order != lvl || Q.order != lvl)
            w.push_back({2 * e, u, 4, ge, we,
                         "orders " + std::to_string(P.order) + "/" + std::to_string(Q.order) +
                             ", expected " + std::to_string(lvl)});
          if (P.total_len != Q.total_len)
            w.push_back({2 * e, u, 5, ge, we,
                         "lengths " + rat_str(P.total_len) + " vs " + rat_str(Q.total_len)});
        });
      });
}

namespace {

// One-sided limit of the twist at offset 0+ along dart d.
MetricPoint limit_along(const RibbonGraph& g, const DeltaMap& dm, DartId d) {
  int e = dart_edge(d);
  if (g.on_relative(e)) {
    int ci = g.circle_of_edge(e);
    DartId cd = circle_dart(g, ci, e);
    PiecewiseWalkFamily fam = mixed_walk_family(g, dm, rev(cd));
    if (d == cd) {
      // points (cd, t->0+) are family offsets u -> L-
      const WalkPiece& p = fam.pieces.back();
      return canonical_point(g, {p.end_dart, g.dart_len(cd) + p.end_c});
    }
    const WalkPiece& p = fam.pieces.front();
    return canonical_point(g, {p.end_dart, p.end_c});
  }
  PiecewiseWalkFamily fam = mixed_walk_family(g, dm, d);
  const WalkPiece& p = fam.pieces.front();
  return canonical_point(g, {p.end_dart, p.end_c});
}

MetricPoint twist_image_impl(const RibbonGraph& g, const DeltaMap& dm, const MetricPoint& p0) {
  MetricPoint p = canonical_point(g, p0);
  if (!is_vertex_point(g, p)) {
    if (g.on_relative(dart_edge(p.dart))) return boundary_mixed_safe_walk(g, dm, p).endpoint;
    return mixed_safe_walk(g, dm, {p.dart, p.offset}).endpoint;
  }
  int v = g.dart_from(p.dart);
  std::optional<MetricPoint> img;
  for (DartId d : g.order[v]) {
    MetricPoint lim = limit_along(g, dm, d);
    if (!img) img = lim;
    else if (*img != lim)
      throw AmbiguousDirection("one-sided twist limits disagree at vertex " + g.vertex_names[v]);
  }
  if (!img) throw GraphError("isolated vertex " + g.vertex_names[v]);
  return *img;
}

// Interior image sample for an edge, taken strictly inside the first family
// piece so no walk ever stops on a vertex.
MetricPoint edge_sample_image(const RibbonGraph& g, const DeltaMap& dm, int e) {
  DartId d;
  if (g.on_relative(e))
    d = rev(circle_dart(g, g.circle_of_edge(e), e));
  else
    d = 2 * e;
  PiecewiseWalkFamily fam = mixed_walk_family(g, dm, d);
  const WalkPiece& p = fam.pieces.front();
  Rat u = (p.lo + p.hi) / 2;
  return canonical_point(g, {p.end_dart, u + p.end_c});
}

}  // namespace

MetricPoint twist_image(const RibbonGraph& g, const MetricPoint& p) {
  return twist_image_impl(g, deltas_or_throw(g), p);
}

OrbitTable component_orbits(const RibbonGraph& g) {
  DeltaMap dm = deltas_or_throw(g);
  OrbitTable table;
  for (int lvl = 0; lvl <= g.depth(); ++lvl) {
    LevelOrbits lo;
    lo.comps = component_ids(g, lvl);
    lo.image.assign(lo.comps.count, -1);
    for (int e = 0; e < g.num_edges(); ++e) {
      if (g.elevel[e] < lvl) continue;
      int c = lo.comps.comp_of_edge[e];
      MetricPoint img = edge_sample_image(g, dm, e);
      int ie = dart_edge(img.dart);
      if (g.elevel[ie] < lvl)
        throw GraphError("twist image of " + g.edge_names[e] + " leaves the level-" +
                         std::to_string(lvl) + " subgraph");
      int ic = lo.comps.comp_of_edge[ie];
      if (lo.image[c] == -1)
        lo.image[c] = ic;
      else if (lo.image[c] != ic)
        throw GraphError("inconsistent level-" + std::to_string(lvl) +
                         " component orbit at edge " + g.edge_names[e]);
    }
    std::vector<int> seen(lo.comps.count, 0);
    for (int c : lo.image) {
      if (c < 0) throw GraphError("component without twist image");
      ++seen[c];
    }
    for (int s : seen)
      if (s != 1) throw GraphError("component images do not permute");
    lo.orbit_id.assign(lo.comps.count, -1);
    lo.orbit_len.assign(lo.comps.count, 0);
    int next = 0;
    for (int c = 0; c < lo.comps.count; ++c) {
      if (lo.orbit_id[c] != -1) continue;
      int len = 0;
      for (int x = c; lo.orbit_id[x] == -1; x = lo.image[x]) {
        lo.orbit_id[x] = next;
        ++len;
      }
      for (int x = c; lo.orbit_len[x] == 0; x = lo.image[x]) lo.orbit_len[x] = len;
      ++next;
    }
    table.levels.push_back(std::move(lo));
  }
  return table;
}

ScrewTable screw_numbers(const RibbonGraph& g) {
  DeltaMap dm = deltas_or_throw(g);
  int depth = g.depth();
  ScrewTable st;
  st.tables.resize(depth + 1);
  st.levels.resize(depth + 1);
  for (int lvl = 1; lvl <= depth; ++lvl) {
    FaceTable ft = build_face_table(g, lvl);
    int nf = (int)ft.cycles.size();
    std::vector<int> image(nf, -1);
    for (int f = 0; f < nf; ++f) {
      for (DartId d : ft.cycles[f]) {
        if (g.on_relative(dart_edge(d))) continue;
        for (const auto& p : mixed_walk_family(g, dm, d).pieces) {
          int f2 = ft.face_of[p.end_dart];
          if (f2 < 0)
            throw GraphError("twist image of a level-" + std::to_string(lvl) +
                             " face leaves the level");
          if (image[f] == -1)
            image[f] = f2;
          else if (image[f] != f2)
            throw GraphError("inconsistent face orbit at level " + std::to_string(lvl));
        }
      }
    }
    // faces made of circle darts only have no interior walks; they are the
    // relative boundary itself and carry no annulus
    std::vector<int> hits(nf, 0);
    for (int f = 0; f < nf; ++f) {
      if (image[f] < 0) continue;
      if (image[image[f]] < 0)
        throw GraphError("face orbit mixes boundary and interior faces");
      if (++hits[image[f]] > 1)
        throw GraphError("level-" + std::to_string(lvl) + " faces do not permute");
    }
    std::vector<int> marked_faces;
    for (const auto& m : g.towards)
      if (m.level == lvl) marked_faces.push_back(ft.face_of[m.dart]);
    std::vector<int> orbit_of(nf, -1);
    for (int f = 0; f < nf; ++f) {
      if (image[f] < 0 || orbit_of[f] != -1) continue;
      ScrewOrbit so;
      so.level = lvl;
      for (int x = f; orbit_of[x] == -1; x = image[x]) {
        if (image[x] < 0) throw GraphError("face orbit mixes boundary and interior faces");
        orbit_of[x] = f;
        so.faces.push_back(x);
        int ce = dart_edge(ft.cycles[x].front());
        auto dv = dm.at_edge(lvl, ce);
        if (!dv) throw GraphError("no delta for face component");
        so.delta_sum += *dv;
      }
      so.face_len = ft.lengths[f];
      so.screw = -so.delta_sum / so.face_len;
      for (int mf : marked_faces)
        if (std::find(so.faces.begin(), so.faces.end(), mf) != so.faces.end()) so.toward = true;
      st.levels[lvl].push_back(std::move(so));
    }
    st.tables[lvl] = std::move(ft);
  }
  return st;
}

namespace {

// Cumulative coordinate of each edge along a circle.
struct CircleCoords {
  Rat length;
  std::map<int, std::pair<DartId, Rat>> at;  // edge -> (orientation dart, start)
};

CircleCoords circle_coords(const RibbonGraph& g, int ci) {
  CircleCoords cc;
  for (DartId d : g.circles[ci].darts) {
    cc.at[dart_edge(d)] = {d, cc.length};
    cc.length += g.dart_len(d);
  }
  return cc;
}

}  // namespace

BoundaryRotation boundary_rotation(const RibbonGraph& g, int circle) {
  if (circle < 0 || circle >= (int)g.circles.size()) throw GraphError("no such circle");
  DeltaMap dm = deltas_or_throw(g);
  CircleCoords src = circle_coords(g, circle);
  std::optional<int> image_circle;
  std::optional<Rat> shift;
  std::optional<CircleCoords> dst;
  for (DartId cd : g.circles[circle].darts) {
    const Rat& L = g.dart_len(cd);
    Rat s0 = src.at.at(dart_edge(cd)).second;
    for (const auto& p : mixed_walk_family(g, dm, rev(cd)).pieces) {
      int ee = dart_edge(p.end_dart);
      int ic = g.circle_of_edge(ee);
      if (ic < 0) throw GraphError("boundary walk endpoint off the relative circles");
      if (!image_circle) {
        image_circle = ic;
        dst = circle_coords(g, ic);
        if (dst->length != src.length)
          throw GraphError("image circle length differs from " + g.circles[circle].name);
      } else if (*image_circle != ic) {
        throw GraphError("boundary walk image circle is not constant");
      }
      auto [icd, i0] = dst->at.at(ee);
      if (p.end_dart == icd)
        throw GraphError("boundary return reverses the circle orientation");
      // start coordinate s0 + (L - u); endpoint offset along icd is
      // L' - (u + c): both drop u, so the shift is constant on the piece
      Rat here = rmod(i0 + g.dart_len(icd) - p.end_c - s0 - L, src.length);
      if (!shift)
        shift = here;
      else if (*shift != here)
        throw GraphError("boundary rotation is not constant on " + g.circles[circle].name);
    }
  }
  if (!shift) throw GraphError("empty circle");
  BoundaryRotation br;
  br.circle = circle;
  br.image_circle = *image_circle;
  br.shift = *shift;
  br.fraction = (*shift == 0) ? Rat(1) : *shift / src.length;
  return br;
}

std::vector<BoundaryRotation> boundary_rotations(const RibbonGraph& g) {
  std::vector<BoundaryRotation> out;
  for (int c = 0; c < (int)g.circles.size(); ++c) out.push_back(boundary_rotation(g, c));
  return out;
}

namespace {

// Straight-line pointwise walker, independent of the family machinery.
struct OracleEnd {
  DartId dart = 0;
  Rat off;
  int order = 0;
  Rat total;
};

OracleEnd oracle_walk(const RibbonGraph& g, const DeltaMap& dm, DartId d, Rat t, int cp) {
  OracleEnd end;
  for (int i = 0; i <= cp; ++i) {
    if (i > 0) {
      if (t == g.dart_len(d)) {
        int v = g.dart_to(d);
        int vl = -1;
        for (DartId x : g.order[v]) vl = std::max(vl, g.dart_level(x));
        if (vl < i) break;
        throw AmbiguousDirection("leg boundary at vertex " + g.vertex_names[v]);
      }
      if (g.dart_level(d) < i) break;
    }
    auto dv = dm.at_edge(i, dart_edge(d));
    if (!dv) throw GraphError("no delta at level " + std::to_string(i));
    Rat r = *dv;
    end.total += r;
    while (r > g.dart_len(d) - t) {
      r -= g.dart_len(d) - t;
      d = next_at_level(g, i, d);
      t = 0;
    }
    t += r;
    end.order = i;
  }
  end.dart = d;
  end.off = t;
  return end;
}

DartId oracle_start_dart(const RibbonGraph& g, int e, int side) {
  if (g.on_relative(e)) return rev(circle_dart(g, g.circle_of_edge(e), e));
  return 2 * e + side;
}

Rat oracle_offset(const RibbonGraph& g, std::mt19937_64& rng, int e) {
  return g.elen[e] * (int)(1 + rng() % 4096) / 4097;
}

std::mt19937_64 edge_rng(std::uint64_t seed, int e) {
  return std::mt19937_64(seed ^ (0x9E3779B97F4A7C15ULL * (std::uint64_t)(e + 1)));
}

}  // namespace

Verdict sampling_oracle(const RibbonGraph& g, int n, std::uint64_t seed) {
  DeltaMap dm = deltas_or_throw(g);
  Verdict v;
  for (int e = 0; e < g.num_edges(); ++e) {
    std::mt19937_64 rng = edge_rng(seed, e);
    const Rat& L = g.elen[e];
    int lvl = g.elevel[e];
    for (int k = 0; k < n; ++k) {
      Rat t = oracle_offset(g, rng, e);
      try {
        if (g.on_relative(e)) {
          DartId start = oracle_start_dart(g, e, 0);
          OracleEnd b = oracle_walk(g, dm, start, t, lvl);
          int ic = g.circle_of_edge(dart_edge(b.dart));
          if (ic < 0 || g.circles[ic].level < lvl) {
            MetricPoint end = canonical_point(g, {b.dart, b.off});
            v.witnesses.push_back({start, t, 3, end, end, "boundary landing off A"});
          }
          continue;
        }
        OracleEnd ga = oracle_walk(g, dm, 2 * e, t, lvl);
        OracleEnd om = oracle_walk(g, dm, 2 * e + 1, L - t, lvl);
        MetricPoint ge = canonical_point(g, {ga.dart, ga.off});
        MetricPoint we = canonical_point(g, {om.dart, om.off});
        if (ge != we) v.witnesses.push_back({2 * e, t, 1, ge, we, "walk endpoints differ"});
        if (g.dart_level(ga.dart) != lvl || g.dart_level(om.dart) != lvl)
          v.witnesses.push_back({2 * e, t, 2, ge, we, "endpoint level mismatch"});
      } catch (const AmbiguousDirection& ex) {
        v.notes.push_back("skipped " + g.edge_names[e] + " at " + rat_str(t) + ": " + ex.what());
      }
    }
  }
  sort_witnesses(v.witnesses);
  v.holds = v.witnesses.empty();
  return v;
}

OracleReport oracle_vs_symbolic(const RibbonGraph& g, int n, std::uint64_t seed) {
  DeltaMap dm = deltas_or_throw(g);
  OracleReport rep;
  for (int e = 0; e < g.num_edges(); ++e) {
    int sides = g.on_relative(e) ? 1 : 2;
    for (int side = 0; side < sides; ++side) {
      DartId d0 = oracle_start_dart(g, e, side);
      PiecewiseWalkFamily fam = mixed_walk_family(g, dm, d0);
      std::mt19937_64 rng = edge_rng(seed ^ (std::uint64_t)(side + 1), e);
      for (int k = 0; k < n; ++k) {
        Rat t = oracle_offset(g, rng, e);
        const WalkPiece* piece = nullptr;
        for (const auto& p : fam.pieces)
          if (p.lo < t && t < p.hi) piece = &p;
        if (!piece) {
          ++rep.skipped;
          continue;
        }
        OracleEnd oe;
        try {
          oe = oracle_walk(g, dm, d0, t, g.dart_level(d0));
        } catch (const AmbiguousDirection&) {
          ++rep.skipped;
          continue;
        }
        ++rep.samples;
        MetricPoint sym = canonical_point(g, {piece->end_dart, t + piece->end_c});
        MetricPoint ora = canonical_point(g, {oe.dart, oe.off});
        std::string at = g.dart_name(d0) + " offset " + rat_str(t);
        if (sym != ora)
          rep.disagreements.push_back("endpoint mismatch from " + at);
        if (piece->order != oe.order)
          rep.disagreements.push_back("order mismatch from " + at + ": family " +
                                      std::to_string(piece->order) + ", oracle " +
                                      std::to_string(oe.order));
        if (piece->total_len != oe.total)
          rep.disagreements.push_back("length mismatch from " + at + ": family " +
                                      rat_str(piece->total_len) + ", oracle " +
                                      rat_str(oe.total));
      }
    }
  }
  return rep;
}

}  // namespace tat
