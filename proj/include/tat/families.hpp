#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tat/ribbon_graph.hpp"

namespace tat {

// Incremental construction with name-based dart tokens ("e+" / "e-").
struct Builder {
  RibbonGraph g;

  int vertex(const std::string& name);
  int edge(const std::string& name, const std::string& v, const std::string& w, const Rat& len,
           int level = 0);
  DartId dart(const std::string& token) const;
  Builder& order(const std::string& v, const std::vector<std::string>& darts);
  Builder& circle(const std::string& name, int level, const std::vector<std::string>& darts);
  Builder& delta(int level, const Rat& value);
  Builder& delta(int level, const std::string& component, const Rat& value);
  Builder& toward(int level, const std::string& dart_token);
  RibbonGraph build();

 private:
  std::map<std::string, int> vmap_, emap_;
};

// Cycle of n edges e0..e{n-1} through v0..v{n-1}; whole graph optionally the
// relative circle "A" (free face on the e+ side).
RibbonGraph circle_graph(const std::vector<Rat>& lengths, bool relative = false);

// Two vertices joined by edges a,b,c of length 1.  planar=false gives the
// one-face (genus 1) rotation, planar=true the three-face (genus 0) one.
RibbonGraph theta_graph(bool planar);

// Two circles of length 2*eps (relative, level 0) joined by four spokes of
// length 1/2-eps through a central vertex; relative tat for any eps in (0,1/4).
RibbonGraph fig1_graph(const Rat& eps);

// Two loop circles of length r (relative, level 0) joined by a bar of length
// 1-r; the induced twist exchanges the circles.
RibbonGraph dumbbell_graph(const Rat& r);

// Depth-1 assembly of total twist length two: a level-0 bar of length 8/9
// joins two once-punctured torus spines at level 1; each spine's boundary is
// a relative circle of length 1/18.  The twist exchanges the spines and
// rotates each circle by half a turn.
RibbonGraph paired_tori_graph();

// Depth-2 closure of paired_tori_graph: the two relative circles are glued
// into one level-2 square whose collar is amphidromic (the twist trades the
// square's two side faces).  No relative part remains.
RibbonGraph amphidrome_graph();

// Seeded generator of small valid filtered graphs built from layered cycles,
// with random orders, lengths, deltas and an occasional relative circle.
// Every output passes validate; most are not tats.
RibbonGraph random_graph(std::uint64_t seed, int max_edges = 12, int max_depth = 2,
                         int max_den = 24);

// Seeded sampler of known tat fixtures (rescaled wheels, dumbbells, paired
// tori); every output holds under the mixed check and has trivalent relative
// circles.
RibbonGraph random_tat_fixture(std::uint64_t seed);

}  // namespace tat
