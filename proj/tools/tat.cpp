#include <CLI11.hpp>

#include <tat/checker.hpp>
#include <tat/families.hpp>
#include <tat/io.hpp>
#include <tat/nielsen.hpp>
#include <tat/surgery.hpp>
#include <tat/walk.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

using namespace tat;

namespace {

// Exit codes: 0 holds / ok, 1 check failed with witness, 2 input error,
// 3 oracle vs symbolic disagreement.
constexpr int kOk = 0;
constexpr int kWitness = 1;
constexpr int kInput = 2;
constexpr int kDisagree = 3;

struct InputFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

RibbonGraph load_graph(const std::string& path) {
  RibbonGraph g = parse_graph_file(path);
  auto errs = validate(g);
  if (!errs.empty()) {
    std::ostringstream msg;
    msg << path << ": invalid graph";
    for (const auto& e : errs) msg << "\n  " << e;
    throw InputFailure(msg.str());
  }
  return g;
}

std::string point_str(const RibbonGraph& g, const MetricPoint& p) {
  return g.dart_name(p.dart) + " @ " + rat_str(p.offset);
}

std::string join_rats(const std::vector<Rat>& xs) {
  std::string out;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += rat_str(xs[i]);
  }
  return out;
}

Rat circle_length(const RibbonGraph& g, const RelativeCircle& c) {
  Rat total;
  for (DartId d : c.darts) total += g.dart_len(d);
  return total;
}

Rat parse_rat_or_fail(const std::string& tok, const std::string& what) {
  auto r = parse_rat(tok);
  if (!r) throw InputFailure(what + ": not a rational: " + tok);
  return *r;
}

DirectedPoint parse_start(const RibbonGraph& g, const std::string& tok) {
  auto colon = tok.find(':');
  if (colon == std::string::npos)
    throw InputFailure("--start expects <dart>:<p>/<q>, got " + tok);
  auto d = g.dart_by_name(tok.substr(0, colon));
  if (!d) throw InputFailure("unknown dart " + tok.substr(0, colon));
  Rat off = parse_rat_or_fail(tok.substr(colon + 1), "--start offset");
  if (off < 0 || off > g.dart_len(*d))
    throw InputFailure("--start offset outside [0, " + rat_str(g.dart_len(*d)) + "]");
  return {*d, off};
}

void print_witness(const RibbonGraph& g, const Witness& w) {
  std::cout << "witness: dart " << g.dart_name(w.dart) << ", offset "
            << rat_str(w.offset) << ", clause " << w.clause << " (" << w.detail
            << ")\n";
  std::cout << "  gamma end: " << point_str(g, w.gamma_end) << "\n";
  std::cout << "  omega end: " << point_str(g, w.omega_end) << "\n";
}

void print_trace(const RibbonGraph& g, const WalkTrace& t) {
  std::cout << "start: " << g.dart_name(t.start.dart) << " @ "
            << rat_str(t.start.offset) << "\n";
  std::cout << "legs: " << t.legs.size() << "\n";
  for (size_t i = 0; i < t.legs.size(); ++i) {
    const auto& leg = t.legs[i];
    std::cout << "  leg " << i << " (level " << leg.level << "): length "
              << rat_str(leg.length) << ", darts";
    for (DartId d : leg.darts) std::cout << " " << g.dart_name(d);
    std::cout << ", end " << g.dart_name(leg.end.dart) << " @ "
              << rat_str(leg.end.offset) << "\n";
  }
  std::cout << "order: " << t.order << "\n";
  std::cout << "total length: " << rat_str(t.total_length) << "\n";
  std::cout << "endpoint: " << point_str(g, t.endpoint) << "\n";
}

std::map<std::string, Rat> parse_lengths_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputFailure("cannot open " + path);
  std::map<std::string, Rat> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string id, val, extra;
    if (!(ls >> id)) continue;
    if (!(ls >> val) || ls >> extra)
      throw InputFailure(path + ":" + std::to_string(lineno) +
                         ": expected `<annulus> <p>/<q>`");
    out[id] = parse_rat_or_fail(val, path + ":" + std::to_string(lineno));
  }
  return out;
}

int cmd_info(const std::string& file) {
  RibbonGraph g = load_graph(file);
  std::cout << "graph: " << g.num_vertices() << " vertices, " << g.num_edges()
            << " edges, depth " << g.depth() << ", " << g.circles.size()
            << " relative circle(s)\n";
  for (const auto& c : g.circles)
    std::cout << "relative " << c.name << " (level " << c.level << "): length "
              << rat_str(circle_length(g, c)) << "\n";
  DeltaMap dm = resolve_deltas(g);
  for (int lvl = 0; lvl <= g.depth(); ++lvl) {
    EulerData eu = euler_genus(g, lvl);
    auto ft = faces(g, lvl);
    std::vector<Rat> lens;
    for (const auto& f : ft) lens.push_back(face_length(g, f));
    std::cout << "level " << lvl << ": V " << eu.verts << ", E " << eu.edges
              << ", chi " << eu.chi << ", genus " << eu.genus << ", boundary "
              << eu.boundary << ", faces of length " << join_rats(lens) << "\n";
    auto per = euler_genus_components(g, lvl);
    std::cout << "  components " << dm.comps[lvl].count << ":";
    for (int k = 0; k < dm.comps[lvl].count; ++k)
      std::cout << " " << dm.comps[lvl].names[k] << " (genus " << per[k].genus
                << ", boundary " << per[k].boundary << ")";
    std::cout << "\n  delta:";
    for (int k = 0; k < dm.comps[lvl].count; ++k) {
      const auto& v = dm.values[lvl][k];
      std::cout << " " << dm.comps[lvl].names[k] << " = "
                << (v ? rat_str(*v) : "?");
    }
    std::cout << "\n";
  }
  return kOk;
}

int cmd_check(const std::string& file, const std::string& mode, int oracle_n,
              std::uint64_t seed) {
  RibbonGraph g = load_graph(file);
  Verdict v;
  if (mode == "pure")
    v = check_pure_tat(g);
  else if (mode == "relative")
    v = check_relative_tat(g);
  else
    v = check_mixed_tat(g);
  if (v.holds) {
    std::cout << "check " << mode << ": holds\n";
  } else {
    std::cout << "check " << mode << ": FAILS (" << v.witnesses.size()
              << " witness" << (v.witnesses.size() == 1 ? "" : "es") << ")\n";
    print_witness(g, v.witnesses.front());
  }
  if (oracle_n > 0) {
    Verdict o = sampling_oracle(g, oracle_n, seed);
    std::cout << "oracle: n " << oracle_n << ", seed " << seed << ", "
              << (o.holds ? "no witness" : "witness found") << "\n";
    if (o.holds != v.holds) {
      std::cerr << "oracle and symbolic checker disagree: symbolic "
                << (v.holds ? "holds" : "fails") << ", oracle "
                << (o.holds ? "found no witness" : "found a witness") << "\n";
      if (!o.holds) print_witness(g, o.witnesses.front());
      return kDisagree;
    }
  }
  return v.holds ? kOk : kWitness;
}

int cmd_walk(const std::string& file, const std::string& start_tok,
             const std::string& len_tok, bool mixed, bool boundary) {
  RibbonGraph g = load_graph(file);
  if (mixed == !len_tok.empty())
    throw InputFailure("exactly one of --length and --mixed is required");
  DirectedPoint start = parse_start(g, start_tok);
  WalkTrace t;
  try {
    if (boundary) {
      MetricPoint p = canonical_point(g, {start.dart, start.offset});
      int ic = g.circle_of_edge(dart_edge(p.dart));
      if (ic < 0 || is_vertex_point(g, p))
        throw InputFailure("--boundary start must be a non-vertex point of a relative circle");
      if (mixed)
        t = boundary_mixed_safe_walk(g, p);
      else
        t = boundary_safe_walk(g, p, parse_rat_or_fail(len_tok, "--length"),
                               g.circles[ic].level);
    } else if (mixed) {
      t = mixed_safe_walk(g, start);
    } else {
      t = safe_walk(g, start, parse_rat_or_fail(len_tok, "--length"),
                    g.dart_level(start.dart));
    }
  } catch (const AmbiguousDirection& ex) {
    throw InputFailure(std::string("ambiguous direction: ") + ex.what());
  }
  print_trace(g, t);
  return kOk;
}

int cmd_screw(const std::string& file) {
  RibbonGraph g = load_graph(file);
  ScrewTable st = screw_numbers(g);
  bool any = false;
  for (int lvl = 1; lvl < (int)st.levels.size(); ++lvl) {
    if (st.levels[lvl].empty()) continue;
    any = true;
    std::cout << "level " << lvl << ":\n";
    for (size_t k = 0; k < st.levels[lvl].size(); ++k) {
      const auto& o = st.levels[lvl][k];
      std::cout << "  orbit " << k << ": " << o.faces.size()
                << " face(s), face length " << rat_str(o.face_len)
                << ", delta sum " << rat_str(o.delta_sum) << ", screw "
                << rat_str(o.screw) << (o.toward ? " [toward]" : "") << "\n";
    }
  }
  if (!any) std::cout << "screw table: empty\n";
  return kOk;
}

int cmd_rotation(const std::string& file) {
  RibbonGraph g = load_graph(file);
  auto rots = boundary_rotations(g);
  if (rots.empty()) {
    std::cout << "rotation table: empty\n";
    return kOk;
  }
  for (const auto& r : rots)
    std::cout << "circle " << g.circles[r.circle].name << " -> "
              << g.circles[r.image_circle].name << ": shift "
              << rat_str(r.shift) << ", fraction " << rat_str(r.fraction)
              << "\n";
  return kOk;
}

int cmd_shrink(const std::string& file, const std::string& circle,
               const std::string& eps_tok, const std::string& out) {
  RibbonGraph g = load_graph(file);
  int ci = -1;
  for (size_t i = 0; i < g.circles.size(); ++i)
    if (g.circles[i].name == circle) ci = (int)i;
  if (ci < 0) throw InputFailure("unknown relative circle " + circle);
  Rat eps = parse_rat_or_fail(eps_tok, "--epsilon");
  RibbonGraph h;
  try {
    h = shrink_boundary(g, ci, eps);
  } catch (const GraphError& ex) {
    throw InputFailure(ex.what());
  }
  for (const auto& c : g.circles) {
    for (const auto& hc : h.circles)
      if (hc.name == c.name && circle_length(h, hc) != circle_length(g, c))
        std::cout << "circle " << c.name << ": length "
                  << rat_str(circle_length(g, c)) << " -> "
                  << rat_str(circle_length(h, hc)) << "\n";
  }
  std::ofstream os(out);
  if (!os) throw InputFailure("cannot write " + out);
  os << serialize_graph(h);
  std::cout << "wrote " << out << "\n";
  return kOk;
}

AutomorphismGraph load_nielsen(const std::string& path) {
  AutomorphismGraph G = parse_nielsen_file(path);
  auto errs = validate(G);
  if (!errs.empty()) {
    std::ostringstream msg;
    msg << path << ": invalid decorated graph";
    for (const auto& e : errs) msg << "\n  " << e;
    throw InputFailure(msg.str());
  }
  return G;
}

int cmd_nielsen(const std::string& file, bool check, bool modify,
                const std::string& schedule, const std::string& out) {
  AutomorphismGraph G = load_nielsen(file);
  if (check) {
    auto D = distance_function(G);
    std::cout << "distance:";
    for (size_t i = 0; i < G.pieces.size(); ++i)
      std::cout << " " << G.pieces[i].name << "=" << D[i];
    std::cout << "\n";
    auto chk = is_filtering(G, D);
    if (chk.ok) {
      std::cout << "filtering: ok\n";
      return kOk;
    }
    std::cout << "filtering: FAILS (" << chk.witness << ")\n";
    return kWitness;
  }
  if (modify) {
    AutomorphismGraph H = split_for_filtering(G);
    if (out.empty()) {
      std::cout << serialize_nielsen(H);
    } else {
      std::ofstream os(out);
      if (!os) throw InputFailure("cannot write " + out);
      os << serialize_nielsen(H);
      std::cout << "wrote " << out << "\n";
    }
    return kOk;
  }
  auto lens = parse_lengths_file(schedule);
  std::vector<LevelSchedule> sched;
  try {
    sched = delta_schedule(G, lens);
  } catch (const GraphError& ex) {
    throw InputFailure(ex.what());
  }
  for (const auto& s : sched) {
    std::cout << "level " << s.level << ": delta " << rat_str(s.delta);
    for (const auto& [name, target] : s.shrink_targets)
      std::cout << ", shrink " << name << " -> " << rat_str(target);
    std::cout << "\n";
  }
  return kOk;
}

int cmd_export(const std::string& file) {
  RibbonGraph g = load_graph(file);
  std::cout << dot_export(g);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checker for train-track-like metric ribbon graphs"};
  app.require_subcommand(1);

  std::string file, mode, start_tok, len_tok, circle, eps_tok, out, schedule;
  int oracle_n = 0;
  std::uint64_t seed = 0;
  bool mixed = false, boundary = false, want_check = false, want_modify = false,
       want_dot = false;

  auto* info = app.add_subcommand("info", "Per-level structure report");
  info->add_option("file", file)->required();

  auto* check = app.add_subcommand("check", "Run the tat property checker");
  check->add_option("file", file)->required();
  check->add_option("--mode", mode, "pure, relative or mixed")
      ->required()
      ->check(CLI::IsMember({"pure", "relative", "mixed"}));
  check->add_option("--oracle", oracle_n, "also sample n offsets per edge");
  check->add_option("--seed", seed, "oracle seed");

  auto* walk = app.add_subcommand("walk", "Trace a safe walk");
  walk->add_option("file", file)->required();
  walk->add_option("--start", start_tok, "<dart>:<p>/<q>")->required();
  walk->add_option("--length", len_tok, "walk length in pi-units");
  walk->add_flag("--mixed", mixed, "full mixed walk instead of --length");
  walk->add_flag("--boundary", boundary, "start from a relative-circle point");

  auto* screw = app.add_subcommand("screw", "Screw numbers per level and orbit");
  screw->add_option("file", file)->required();

  auto* rotation = app.add_subcommand("rotation", "Boundary rotation table");
  rotation->add_option("file", file)->required();

  auto* shrink = app.add_subcommand("shrink", "Shrink a boundary orbit");
  shrink->add_option("file", file)->required();
  shrink->add_option("--circle", circle, "relative circle name")->required();
  shrink->add_option("--epsilon", eps_tok, "length to remove")->required();
  shrink->add_option("-o,--out", out, "output graph file")->required();

  auto* nielsen = app.add_subcommand("nielsen", "Decorated-graph operations");
  nielsen->add_option("file", file)->required();
  auto* nc = nielsen->add_flag("--check", want_check, "filtering check");
  auto* nm = nielsen->add_flag("--modify", want_modify, "split to a filtering graph");
  auto* ns = nielsen->add_option("--schedule", schedule,
                                 "delta schedule from a lengths file");
  nielsen->add_option("-o,--out", out, "output .nls for --modify");
  nc->excludes(nm)->excludes(ns);
  nm->excludes(ns);

  auto* exp = app.add_subcommand("export", "DOT-compatible description");
  exp->add_option("file", file)->required();
  exp->add_flag("--dot", want_dot, "DOT text output")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  try {
    if (*info) return cmd_info(file);
    if (*check) return cmd_check(file, mode, oracle_n, seed);
    if (*walk) return cmd_walk(file, start_tok, len_tok, mixed, boundary);
    if (*screw) return cmd_screw(file);
    if (*rotation) return cmd_rotation(file);
    if (*shrink) return cmd_shrink(file, circle, eps_tok, out);
    if (*nielsen) {
      if (!want_check && !want_modify && schedule.empty())
        throw InputFailure("one of --check, --modify, --schedule is required");
      return cmd_nielsen(file, want_check, want_modify, schedule, out);
    }
    if (*exp) return cmd_export(file);
  } catch (const InputFailure& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kInput;
  } catch (const ParseError& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kInput;
  } catch (const GraphError& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kInput;
  }
  return kInput;
}
