#include "tat/io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "tat/families.hpp"

namespace tat {
namespace {

bool valid_id(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isalnum((unsigned char)c) && c != '_') return false;
  return true;
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

struct Line {
  int no = 0;
  std::vector<std::string> head;  // tokens before ':' (or all tokens)
  std::vector<std::string> tail;  // tokens after ':'
  bool has_colon = false;
};

// Strips comments, splits at the first ':' if present.
std::vector<Line> read_lines(std::istream& in) {
  std::vector<Line> out;
  std::string raw;
  int no = 0;
  while (std::getline(in, raw)) {
    ++no;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    Line ln;
    ln.no = no;
    auto colon = raw.find(':');
    if (colon != std::string::npos) {
      ln.has_colon = true;
      ln.head = split_ws(raw.substr(0, colon));
      ln.tail = split_ws(raw.substr(colon + 1));
      if (raw.find(':', colon + 1) != std::string::npos)
        throw ParseError(no, "multiple ':' on one line");
    } else {
      ln.head = split_ws(raw);
    }
    if (ln.head.empty() && ln.tail.empty() && !ln.has_colon) continue;
    if (ln.head.empty()) throw ParseError(no, "missing directive before ':'");
    out.push_back(std::move(ln));
  }
  return out;
}

void expect_header(const std::vector<Line>& lines) {
  if (lines.empty()) throw ParseError(1, "missing header `tat-format 1`");
  const Line& h = lines.front();
  if (h.has_colon || h.head.size() != 2 || h.head[0] != "tat-format" || h.head[1] != "1")
    throw ParseError(h.no, "first line must be `tat-format 1`");
}

int parse_int(const Line& ln, const std::string& tok, const char* what) {
  int v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size())
    throw ParseError(ln.no, std::string("bad ") + what + " `" + tok + "`");
  return v;
}

Rat parse_rat_tok(const Line& ln, const std::string& tok, const char* what) {
  auto r = parse_rat(tok);
  if (!r) throw ParseError(ln.no, std::string("bad ") + what + " `" + tok + "`");
  return *r;
}

}  // namespace

RibbonGraph parse_graph(std::istream& in) {
  auto lines = read_lines(in);
  expect_header(lines);
  Builder b;
  std::set<std::string> verts, ordered, leveled, circles;
  std::map<std::string, int> edges;
  struct Pending {
    int line;
    enum { Order, Circle, Level, Delta, Toward } kind;
    std::vector<std::string> head, tail;
  };
  std::vector<Pending> pend;
  for (size_t i = 1; i < lines.size(); ++i) {
    const Line& ln = lines[i];
    const std::string& dir = ln.head[0];
    if (dir == "vertex") {
      if (ln.has_colon || ln.head.size() != 2) throw ParseError(ln.no, "usage: vertex <id>");
      if (!valid_id(ln.head[1])) throw ParseError(ln.no, "bad vertex id `" + ln.head[1] + "`");
      if (!verts.insert(ln.head[1]).second)
        throw ParseError(ln.no, "duplicate vertex " + ln.head[1]);
      b.vertex(ln.head[1]);
    } else if (dir == "edge") {
      if (ln.has_colon || ln.head.size() != 6 || ln.head[4] != "len")
        throw ParseError(ln.no, "usage: edge <id> <v> <w> len <p>/<q>");
      if (!valid_id(ln.head[1])) throw ParseError(ln.no, "bad edge id `" + ln.head[1] + "`");
      for (int k = 2; k <= 3; ++k)
        if (!verts.count(ln.head[k]))
          throw ParseError(ln.no, "undeclared vertex " + ln.head[k]);
      if (edges.count(ln.head[1])) throw ParseError(ln.no, "duplicate edge " + ln.head[1]);
      Rat len = parse_rat_tok(ln, ln.head[5], "length");
      edges.emplace(ln.head[1], b.edge(ln.head[1], ln.head[2], ln.head[3], len));
    } else if (dir == "order") {
      if (!ln.has_colon || ln.head.size() != 2)
        throw ParseError(ln.no, "usage: order <v>: <dart list>");
      pend.push_back({ln.no, Pending::Order, ln.head, ln.tail});
    } else if (dir == "level") {
      if (ln.has_colon || ln.head.size() != 3) throw ParseError(ln.no, "usage: level <edge> <i>");
      pend.push_back({ln.no, Pending::Level, ln.head, {}});
    } else if (dir == "relative") {
      if (!ln.has_colon || ln.head.size() != 4 || ln.head[2] != "level")
        throw ParseError(ln.no, "usage: relative <name> level <i>: <dart cycle>");
      pend.push_back({ln.no, Pending::Circle, ln.head, ln.tail});
    } else if (dir == "delta") {
      if (ln.has_colon || ln.head.size() != 4)
        throw ParseError(ln.no, "usage: delta <i> <component|*> <p>/<q>");
      pend.push_back({ln.no, Pending::Delta, ln.head, {}});
    } else if (dir == "toward") {
      if (ln.has_colon || ln.head.size() != 3) throw ParseError(ln.no, "usage: toward <level> <dart>");
      pend.push_back({ln.no, Pending::Toward, ln.head, {}});
    } else {
      throw ParseError(ln.no, "unknown directive `" + dir + "`");
    }
  }
  // Dart-bearing directives resolve after all edges are declared.
  for (const auto& p : pend) {
    Line ln{p.line, p.head, p.tail, true};
    try {
      switch (p.kind) {
        case Pending::Order:
          if (!verts.count(p.head[1])) throw ParseError(p.line, "undeclared vertex " + p.head[1]);
          if (!ordered.insert(p.head[1]).second)
            throw ParseError(p.line, "duplicate order for vertex " + p.head[1]);
          b.order(p.head[1], p.tail);
          break;
        case Pending::Level: {
          if (!edges.count(p.head[1])) throw ParseError(p.line, "undeclared edge " + p.head[1]);
          if (!leveled.insert(p.head[1]).second)
            throw ParseError(p.line, "duplicate level for edge " + p.head[1]);
          int lvl = parse_int(ln, p.head[2], "level");
          if (lvl < 0) throw ParseError(p.line, "negative level");
          b.g.elevel[edges.at(p.head[1])] = lvl;
          break;
        }
        case Pending::Circle: {
          if (!valid_id(p.head[1])) throw ParseError(p.line, "bad circle id `" + p.head[1] + "`");
          if (!circles.insert(p.head[1]).second)
            throw ParseError(p.line, "duplicate relative circle " + p.head[1]);
          int lvl = parse_int(ln, p.head[3], "level");
          if (p.tail.empty()) throw ParseError(p.line, "empty dart cycle");
          b.circle(p.head[1], lvl, p.tail);
          break;
        }
        case Pending::Delta: {
          int lvl = parse_int(ln, p.head[1], "level");
          Rat v = parse_rat_tok(ln, p.head[3], "delta value");
          if (p.head[2] == "*")
            b.delta(lvl, v);
          else
            b.delta(lvl, p.head[2], v);
          break;
        }
        case Pending::Toward: {
          int lvl = parse_int(ln, p.head[1], "level");
          b.toward(lvl, p.head[2]);
          break;
        }
      }
    } catch (const ParseError&) {
      throw;
    } catch (const GraphError& e) {
      throw ParseError(p.line, e.what());
    }
  }
  return b.build();
}

RibbonGraph parse_graph_string(const std::string& text) {
  std::istringstream is(text);
  return parse_graph(is);
}

RibbonGraph parse_graph_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw GraphError("cannot open " + path);
  return parse_graph(f);
}

std::string serialize_graph(const RibbonGraph& g) {
  std::ostringstream os;
  os << "tat-format 1\n";
  for (const auto& v : g.vertex_names) os << "vertex " << v << "\n";
  for (int e = 0; e < g.num_edges(); ++e)
    os << "edge " << g.edge_names[e] << " " << g.vertex_names[g.efrom[e]] << " "
       << g.vertex_names[g.eto[e]] << " len " << rat_str(g.elen[e]) << "\n";
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (g.order[v].empty()) continue;
    os << "order " << g.vertex_names[v] << ":";
    for (DartId d : g.order[v]) os << " " << g.dart_name(d);
    os << "\n";
  }
  for (int e = 0; e < g.num_edges(); ++e)
    if (g.elevel[e] != 0) os << "level " << g.edge_names[e] << " " << g.elevel[e] << "\n";
  for (const auto& c : g.circles) {
    os << "relative " << c.name << " level " << c.level << ":";
    for (DartId d : c.darts) os << " " << g.dart_name(d);
    os << "\n";
  }
  for (const auto& d : g.deltas)
    os << "delta " << d.level << " " << (d.wildcard ? "*" : d.component) << " "
       << rat_str(d.value) << "\n";
  for (const auto& t : g.towards)
    os << "toward " << t.level << " " << g.dart_name(t.dart) << "\n";
  return os.str();
}

AutomorphismGraph parse_nielsen(std::istream& in) {
  auto lines = read_lines(in);
  expect_header(lines);
  AutomorphismGraph G;
  std::set<std::string> pieces, annuli;
  for (size_t i = 1; i < lines.size(); ++i) {
    const Line& ln = lines[i];
    if (ln.has_colon) throw ParseError(ln.no, "unexpected ':'");
    const std::string& dir = ln.head[0];
    if (dir == "piece") {
      bool fixed = ln.head.size() == 5 && ln.head[4] == "fixed-boundary";
      if (!(ln.head.size() == 4 || fixed) || ln.head[2] != "orbit")
        throw ParseError(ln.no, "usage: piece <id> orbit <n> [fixed-boundary]");
      if (!valid_id(ln.head[1])) throw ParseError(ln.no, "bad piece id `" + ln.head[1] + "`");
      if (!pieces.insert(ln.head[1]).second)
        throw ParseError(ln.no, "duplicate piece " + ln.head[1]);
      int orbit = parse_int(ln, ln.head[3], "orbit");
      G.pieces.push_back({ln.head[1], orbit, fixed});
    } else if (dir == "annuli") {
      bool amph = ln.head.size() == 9 && ln.head[8] == "amphidrome";
      if (!(ln.head.size() == 8 || amph) || ln.head[4] != "orbit" || ln.head[6] != "screw")
        throw ParseError(ln.no, "usage: annuli <id> <v> <w> orbit <n> screw <p>/<q> [amphidrome]");
      if (!valid_id(ln.head[1])) throw ParseError(ln.no, "bad annulus id `" + ln.head[1] + "`");
      if (!annuli.insert(ln.head[1]).second)
        throw ParseError(ln.no, "duplicate annulus " + ln.head[1]);
      auto v = G.piece_index(ln.head[2]), w = G.piece_index(ln.head[3]);
      if (!v) throw ParseError(ln.no, "undeclared piece " + ln.head[2]);
      if (!w) throw ParseError(ln.no, "undeclared piece " + ln.head[3]);
      int orbit = parse_int(ln, ln.head[5], "orbit");
      Rat screw = parse_rat_tok(ln, ln.head[7], "screw");
      G.annuli.push_back({ln.head[1], *v, *w, orbit, screw, amph});
    } else {
      throw ParseError(ln.no, "unknown directive `" + dir + "`");
    }
  }
  return G;
}

AutomorphismGraph parse_nielsen_string(const std::string& text) {
  std::istringstream is(text);
  return parse_nielsen(is);
}

AutomorphismGraph parse_nielsen_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw GraphError("cannot open " + path);
  return parse_nielsen(f);
}

std::string serialize_nielsen(const AutomorphismGraph& G) {
  std::ostringstream os;
  os << "tat-format 1\n";
  for (const auto& p : G.pieces) {
    os << "piece " << p.name << " orbit " << p.orbit;
    if (p.fixed_boundary) os << " fixed-boundary";
    os << "\n";
  }
  for (const auto& a : G.annuli) {
    os << "annuli " << a.name << " " << G.pieces[a.v].name << " " << G.pieces[a.w].name
       << " orbit " << a.orbit << " screw " << rat_str(a.screw);
    if (a.amphidrome) os << " amphidrome";
    os << "\n";
  }
  return os.str();
}

std::string dot_export(const RibbonGraph& g) {
  std::ostringstream os;
  os << "graph tat {\n";
  for (const auto& v : g.vertex_names) os << "  \"" << v << "\";\n";
  for (int e = 0; e < g.num_edges(); ++e)
    os << "  \"" << g.vertex_names[g.efrom[e]] << "\" -- \"" << g.vertex_names[g.eto[e]]
       << "\" [label=\"" << g.edge_names[e] << " " << rat_str(g.elen[e]) << " L" << g.elevel[e]
       << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace tat
