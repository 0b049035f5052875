#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tat/rational.hpp"
#include "tat/ribbon_graph.hpp"  // GraphError

namespace tat {

struct NielsenPiece {
  std::string name;
  long long orbit = 1;  // number of surfaces cyclically permuted
  bool fixed_boundary = false;
};

struct NielsenAnnulus {
  std::string name;
  int v = 0, w = 0;     // piece indices; v == w for loops
  long long orbit = 1;  // number of annuli cyclically permuted
  Rat screw;
  bool amphidrome = false;
};

struct AutomorphismGraph {
  std::vector<NielsenPiece> pieces;
  std::vector<NielsenAnnulus> annuli;
  std::optional<int> piece_index(const std::string& name) const;
};

std::vector<std::string> validate(const AutomorphismGraph& G);

// BFS distance from the fixed-boundary pieces; throws on empty source set or
// a disconnected graph.
std::vector<int> distance_function(const AutomorphismGraph& G);

struct FilteringCheck {
  bool ok = false;
  std::string witness;
};
FilteringCheck is_filtering(const AutomorphismGraph& G, const std::vector<int>& L);

// Splits every annulus orbit joining equal-distance pieces (loops included):
// a non-amphidrome orbit of size l becomes two orbits of size l through a new
// piece orbit of size l, each keeping half the screw; an amphidrome loop orbit
// of size l becomes one non-amphidrome orbit of size 2l carrying the full
// screw, ending at a new piece orbit of size l.
AutomorphismGraph split_for_filtering(const AutomorphismGraph& G);

// Seeded connected decorated graph: spanning tree plus random extra edges,
// loops and amphidrome loops; piece 0 keeps a fixed boundary.
AutomorphismGraph random_nielsen(std::uint64_t seed, int max_pieces = 15);

// Annulus level = 1 + min distance of its endpoints (equal to the max).
int annulus_level(const AutomorphismGraph& G, const std::vector<int>& D, int a);

struct LevelSchedule {
  int level = 0;
  Rat delta;
  std::vector<std::pair<std::string, Rat>> shrink_targets;  // annulus -> new boundary length
};
// boundary_len maps annulus name -> current boundary length l(B_{i,1}).
std::vector<LevelSchedule> delta_schedule(const AutomorphismGraph& G,
                                          const std::map<std::string, Rat>& boundary_len);

}  // namespace tat
