#pragma once

#include <vector>

#include "tat/ribbon_graph.hpp"

namespace tat {

struct AmbiguousDirection : GraphError {
  using GraphError::GraphError;
};

// Point travelling along `dart`, offset from the dart's tail.
struct DirectedPoint {
  DartId dart = 0;
  Rat offset;
};

struct WalkLeg {
  int level = 0;
  Rat length;
  std::vector<DartId> darts;  // traversed darts, first = leg start dart
  DirectedPoint end;          // arrival dart; offset in (0, L], or = start for length 0
};

struct WalkTrace {
  DirectedPoint start;
  std::vector<WalkLeg> legs;
  MetricPoint endpoint;  // canonical
  DirectedPoint endpoint_direction;
  int order = 0;  // legs - 1
  Rat total_length;
};

// Single-leg walk inside the level subgraph; start.offset in [0, L].
WalkTrace safe_walk(const RibbonGraph& g, DirectedPoint start, const Rat& len, int level);

// Walk from a non-vertex point of A^level, first direction opposite to the
// circle orientation.
WalkTrace boundary_safe_walk(const RibbonGraph& g, MetricPoint p, const Rat& len, int level);

WalkTrace mixed_safe_walk(const RibbonGraph& g, const DeltaMap& dm, DirectedPoint start);
WalkTrace mixed_safe_walk(const RibbonGraph& g, DirectedPoint start);

WalkTrace boundary_mixed_safe_walk(const RibbonGraph& g, const DeltaMap& dm, MetricPoint p);
WalkTrace boundary_mixed_safe_walk(const RibbonGraph& g, MetricPoint p);

// Walks from (dart, u) for u in (0, L): on each open piece the dart sequence
// is constant and the endpoint is (end_dart, u + end_c).
struct WalkPiece {
  Rat lo, hi;
  DartId end_dart = 0;
  Rat end_c;
  int order = 0;
  Rat total_len;
  std::vector<int> leg_levels;
  std::vector<Rat> leg_lens;
};

struct PiecewiseWalkFamily {
  DartId dart = 0;
  Rat edge_len;
  std::vector<WalkPiece> pieces;  // contiguous cover of (0, L)

  // Piece strictly containing u; throws if u hits a breakpoint or bound.
  const WalkPiece& piece_at(const Rat& u) const;
};

PiecewiseWalkFamily safe_walk_family(const RibbonGraph& g, DartId d, const Rat& len, int level);
PiecewiseWalkFamily mixed_walk_family(const RibbonGraph& g, const DeltaMap& dm, DartId d);

}  // namespace tat
