#include <doctest.h>

#include <tat/families.hpp>
#include <tat/io.hpp>
#include <tat/nielsen.hpp>

#include <fstream>
#include <map>
#include <sstream>
#include <string>

using namespace tat;

namespace {

std::string fixture(const std::string& name) {
  return std::string(TAT_FIXTURES_DIR) + "/" + name;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

TEST_CASE("fixture files match the builders") {
  CHECK(graph_equal(parse_graph_file(fixture("circle.tat")),
                    circle_graph({Rat(1), Rat(1)})));
  CHECK(graph_equal(parse_graph_file(fixture("theta.tat")), theta_graph(true)));
  CHECK(graph_equal(parse_graph_file(fixture("fig1.tat")), fig1_graph(Rat(1, 18))));
  CHECK(graph_equal(parse_graph_file(fixture("dumbbell.tat")),
                    dumbbell_graph(Rat(1, 2))));
  CHECK(graph_equal(parse_graph_file(fixture("paired_tori.tat")),
                    paired_tori_graph()));
  CHECK(graph_equal(parse_graph_file(fixture("amphidrome.tat")),
                    amphidrome_graph()));
}

TEST_CASE("fixture files round-trip through the text format") {
  for (const char* name : {"circle.tat", "theta.tat", "fig1.tat", "dumbbell.tat",
                           "paired_tori.tat", "amphidrome.tat"}) {
    CAPTURE(name);
    auto g = parse_graph_file(fixture(name));
    CHECK(validate(g).empty());
    auto again = parse_graph_string(serialize_graph(g));
    CHECK(graph_equal(g, again));
    CHECK(serialize_graph(g) == serialize_graph(again));
  }
}

TEST_CASE("decorated-graph fixture parses and round-trips") {
  auto G = parse_nielsen_file(fixture("amphidrome.nls"));
  CHECK(validate(G).empty());
  REQUIRE(G.pieces.size() == 2);
  REQUIRE(G.annuli.size() == 2);
  CHECK(G.pieces[0].fixed_boundary);
  CHECK(G.annuli[1].amphidrome);
  auto again = parse_nielsen_string(serialize_nielsen(G));
  CHECK(serialize_nielsen(G) == serialize_nielsen(again));
  CHECK(!is_filtering(G, distance_function(G)).ok);
  CHECK(is_filtering(split_for_filtering(G),
                     distance_function(split_for_filtering(G)))
            .ok);
}

TEST_CASE("schedule lengths file matches the split fixture") {
  auto split = split_for_filtering(parse_nielsen_file(fixture("amphidrome.nls")));
  std::map<std::string, Rat> lens;
  std::istringstream in(slurp(fixture("schedule_lengths.txt")));
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string id, val;
    if (ls >> id >> val) {
      auto r = parse_rat(val);
      REQUIRE(r);
      lens[id] = *r;
    }
  }
  auto sched = delta_schedule(split, lens);
  REQUIRE(sched.size() == 2);
  CHECK(sched[0].level == 1);
  CHECK(sched[0].delta == Rat(1, 18));
  CHECK(sched[1].level == 2);
  CHECK(sched[1].delta == Rat(1, 36));
  CHECK(sched[0].shrink_targets.empty());
  CHECK(sched[1].shrink_targets.empty());
}
