#pragma once

#include <iosfwd>
#include <string>

#include "tat/nielsen.hpp"
#include "tat/ribbon_graph.hpp"

namespace tat {

struct ParseError : GraphError {
  int line = 0;
  ParseError(int line_, const std::string& msg)
      : GraphError("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

// Both text formats open with the header line `tat-format 1`.
RibbonGraph parse_graph(std::istream& in);
RibbonGraph parse_graph_string(const std::string& text);
RibbonGraph parse_graph_file(const std::string& path);
std::string serialize_graph(const RibbonGraph& g);

AutomorphismGraph parse_nielsen(std::istream& in);
AutomorphismGraph parse_nielsen_string(const std::string& text);
AutomorphismGraph parse_nielsen_file(const std::string& path);
std::string serialize_nielsen(const AutomorphismGraph& G);

std::string dot_export(const RibbonGraph& g);

}  // namespace tat
