#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tat/rational.hpp"

namespace tat {

struct GraphError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Dart d belongs to edge d>>1; even darts run tail->head as declared.
using DartId = int;
inline DartId rev(DartId d) { return d ^ 1; }
inline int dart_edge(DartId d) { return d >> 1; }
inline bool dart_positive(DartId d) { return (d & 1) == 0; }

// Numeric tokens compare by value, before non-numeric ones; ties lexicographic.
bool token_less(const std::string& a, const std::string& b);

struct RelativeCircle {
  std::string name;
  int level = 0;
  std::vector<DartId> darts;  // free-face cycle: sigma(rev(darts[j])) == darts[j+1]
};

struct DeltaEntry {
  int level = 0;
  bool wildcard = false;
  std::string component;  // min edge token of the component, empty if wildcard
  Rat value;
};

struct TowardMark {
  int level = 0;
  DartId dart = 0;  // designates the face of that level containing this dart
};

struct MetricPoint {
  DartId dart = 0;
  Rat offset;  // in [0, edge length]
  friend bool operator==(const MetricPoint& a, const MetricPoint& b) {
    return a.dart == b.dart && a.offset == b.offset;
  }
  friend bool operator!=(const MetricPoint& a, const MetricPoint& b) { return !(a == b); }
};

struct RibbonGraph {
  std::vector<std::string> vertex_names;
  std::vector<std::string> edge_names;
  std::vector<int> efrom, eto;  // dart 2e runs efrom[e] -> eto[e]
  std::vector<Rat> elen;
  std::vector<int> elevel;
  std::vector<std::vector<DartId>> order;  // per vertex, counterclockwise
  std::vector<RelativeCircle> circles;
  std::vector<DeltaEntry> deltas;
  std::vector<TowardMark> towards;

  int num_vertices() const { return (int)vertex_names.size(); }
  int num_edges() const { return (int)edge_names.size(); }
  int num_darts() const { return 2 * num_edges(); }
  int depth() const;

  int dart_from(DartId d) const { return dart_positive(d) ? efrom[dart_edge(d)] : eto[dart_edge(d)]; }
  int dart_to(DartId d) const { return dart_from(rev(d)); }
  const Rat& len(int e) const { return elen[e]; }
  const Rat& dart_len(DartId d) const { return elen[dart_edge(d)]; }
  int level(int e) const { return elevel[e]; }
  int dart_level(DartId d) const { return elevel[dart_edge(d)]; }

  DartId sigma(DartId d) const { return sigma_[d]; }
  DartId sigma_inv(DartId d) const { return sigma_inv_[d]; }

  std::optional<int> vertex_index(const std::string& name) const;
  std::optional<int> edge_index(const std::string& name) const;
  std::string dart_name(DartId d) const { return edge_names[dart_edge(d)] + (dart_positive(d) ? "+" : "-"); }
  std::optional<DartId> dart_by_name(const std::string& token) const;

  // Circle index containing the edge, or -1.
  int circle_of_edge(int e) const;
  bool on_relative(int e) const { return circle_of_edge(e) >= 0; }

  // Builds sigma from the order lists; call after filling fields.
  // Structural impossibilities are recorded for validate(), not thrown.
  void finalize();
  bool finalized() const { return finalized_; }

  std::vector<std::string> structural_errors_;

 private:
  std::vector<DartId> sigma_, sigma_inv_;
  std::map<std::string, int> vindex_, eindex_;
  std::vector<int> circle_of_edge_;
  bool finalized_ = false;
};

std::vector<std::string> validate(const RibbonGraph& g);

// Next dart of level >= lvl counterclockwise at the tail vertex of d, after d.
DartId sigma_at_level(const RibbonGraph& g, int lvl, DartId d);
// Face traversal: continue the walk arriving along d.
inline DartId next_at_level(const RibbonGraph& g, int lvl, DartId d) {
  return sigma_at_level(g, lvl, rev(d));
}

// Cycles rotated to start at their least dart, sorted by first dart.
std::vector<std::vector<DartId>> faces(const RibbonGraph& g, int lvl);

Rat face_length(const RibbonGraph& g, const std::vector<DartId>& face);

struct FaceTable {
  int level = 0;
  std::vector<std::vector<DartId>> cycles;
  std::vector<Rat> lengths;
  std::vector<int> face_of;   // dart -> face index (-1 below level)
  std::vector<int> pos_of;    // dart -> position within its cycle
  std::vector<Rat> arc_start;  // dart -> face length consumed before it
};
FaceTable build_face_table(const RibbonGraph& g, int lvl);

struct EulerData {
  long long verts = 0, edges = 0, faces_n = 0;
  long long chi = 0, genus = 0, boundary = 0;
};
std::vector<EulerData> euler_genus_components(const RibbonGraph& g, int lvl);
EulerData euler_genus(const RibbonGraph& g, int lvl);

struct Components {
  int count = 0;
  std::vector<int> comp_of_edge;       // -1 below level
  std::vector<std::string> names;      // per component: min edge token
};
Components component_ids(const RibbonGraph& g, int lvl);

struct DeltaMap {
  int depth = 0;
  std::vector<Components> comps;                         // per level
  std::vector<std::vector<std::optional<Rat>>> values;   // [level][component]
  std::vector<std::string> problems;                     // unresolvable entries
  std::optional<Rat> at_edge(int lvl, int e) const;
};
DeltaMap resolve_deltas(const RibbonGraph& g);

MetricPoint canonical_point(const RibbonGraph& g, MetricPoint p);
bool is_vertex_point(const RibbonGraph& g, const MetricPoint& p);
int depth_of(const RibbonGraph& g, const MetricPoint& p);

RibbonGraph induced_subgraph(const RibbonGraph& g, int lvl);

bool graph_equal(const RibbonGraph& a, const RibbonGraph& b);

}  // namespace tat
