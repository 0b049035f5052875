#pragma once

#include "tat/ribbon_graph.hpp"

namespace tat {

// Splits edge e at distance `at` from its tail.  The tail half keeps the
// name; the head half and the new bivalent vertex get derived fresh names.
RibbonGraph subdivide_edge(const RibbonGraph& g, int e, const Rat& at);

// Boundary shrink at one relative circle: every circle edge loses eps/m,
// each vertex pushes eps/2m onto its outer edge (extruding a trunk edge
// when the vertex carries several), and edges reaching zero are
// contracted.  Iterates with eps' = m * min length until the circle is
// exactly eps shorter.  Requires trivalent circle vertices on entry and
// 0 < eps < circle length.
RibbonGraph shrink_circle(const RibbonGraph& g, int circle, const Rat& eps);

// Equivariant form: applies shrink_circle to every circle in the twist
// orbit of `circle`, keeping exchanged boundaries isometric.
RibbonGraph shrink_boundary(const RibbonGraph& g, int circle, const Rat& eps);

}  // namespace tat
