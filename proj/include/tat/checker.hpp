#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tat/walk.hpp"

namespace tat {

// Clause ids: 1 endpoint mismatch, 2 endpoint level, 3 boundary landing,
// 4 order mismatch, 5 length mismatch.
struct Witness {
  DartId dart = 0;  // family start dart
  Rat offset;       // interior offset on that dart
  int clause = 0;
  MetricPoint gamma_end, omega_end;
  std::string detail;
};

struct Verdict {
  bool holds = true;
  std::vector<Witness> witnesses;  // sorted by (dart, offset)
  std::vector<std::string> notes;
};

struct CheckOptions {
  bool parallel = true;
};

Verdict check_pure_tat(const RibbonGraph& g, const Rat& len = Rat(1),
                       const CheckOptions& opt = {});
Verdict check_relative_tat(const RibbonGraph& g, const Rat& len = Rat(1),
                           const CheckOptions& opt = {});
Verdict check_mixed_tat(const RibbonGraph& g, const CheckOptions& opt = {});
// Order and length equalities along every walk family piece.
Verdict check_walk_lemma(const RibbonGraph& g, const CheckOptions& opt = {});

// Twist image of p; vertex points take the common one-sided limit and raise
// AmbiguousDirection when the sides disagree.
MetricPoint twist_image(const RibbonGraph& g, const MetricPoint& p);

struct LevelOrbits {
  Components comps;
  std::vector<int> image;  // component -> image component (a permutation)
  std::vector<int> orbit_id;
  std::vector<int> orbit_len;
};
struct OrbitTable {
  std::vector<LevelOrbits> levels;  // index = level
};
OrbitTable component_orbits(const RibbonGraph& g);

struct ScrewOrbit {
  int level = 0;
  std::vector<int> faces;  // face indices at this level, in orbit order
  Rat face_len;            // length of faces[0]
  Rat delta_sum;           // deltas accumulated around the orbit
  Rat screw;               // -delta_sum / face_len
  bool toward = false;     // carries a designation mark
};
struct ScrewTable {
  std::vector<FaceTable> tables;                // per level; [0] unused
  std::vector<std::vector<ScrewOrbit>> levels;  // [level] -> orbits, levels >= 1
};
ScrewTable screw_numbers(const RibbonGraph& g);

struct BoundaryRotation {
  int circle = 0;
  int image_circle = 0;
  Rat shift;     // along the image circle, in [0, length)
  Rat fraction;  // shift / length, in (0, 1]; a full turn reports 1
};
BoundaryRotation boundary_rotation(const RibbonGraph& g, int circle);
std::vector<BoundaryRotation> boundary_rotations(const RibbonGraph& g);

// Pointwise re-check of the three clauses at n random offsets per edge.
// A clean run is evidence, not proof.
Verdict sampling_oracle(const RibbonGraph& g, int n, std::uint64_t seed);

// Cross-validation of the symbolic walk families against an independent
// stepping walker at n random offsets per edge.  Samples falling on family
// breakpoints or vertex alignments are skipped, not compared.
struct OracleReport {
  int samples = 0;
  int skipped = 0;
  std::vector<std::string> disagreements;
};
OracleReport oracle_vs_symbolic(const RibbonGraph& g, int n, std::uint64_t seed);

}  // namespace tat
