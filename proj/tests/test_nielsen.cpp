#include <doctest.h>

#include "tat/io.hpp"
#include "tat/nielsen.hpp"

using namespace tat;

namespace {

const char* kLoopGraph =
    "tat-format 1\n"
    "piece p0 orbit 1 fixed-boundary\n"
    "piece p1 orbit 2\n"
    "annuli a1 p0 p1 orbit 2 screw -1\n"
    "annuli a2 p1 p1 orbit 1 screw -1 amphidrome\n";

}  // namespace

TEST_CASE("distance function is breadth first from the fixed boundary") {
  AutomorphismGraph G;
  G.pieces = {{"p0", 1, true}, {"p1", 1, false}, {"p2", 1, false}};
  G.annuli = {{"a", 0, 1, 1, Rat(-1), false}, {"b", 1, 2, 1, Rat(-1), false}};
  CHECK(distance_function(G) == std::vector<int>{0, 1, 2});
  CHECK(is_filtering(G, distance_function(G)).ok);

  AutomorphismGraph one;
  one.pieces = {{"p0", 1, true}};
  CHECK(distance_function(one) == std::vector<int>{0});

  AutomorphismGraph off;
  off.pieces = {{"p0", 1, false}};
  CHECK_THROWS_AS(distance_function(off), GraphError);

  G.pieces.push_back({"stray", 1, false});
  CHECK_THROWS_AS(distance_function(G), GraphError);
}

TEST_CASE("loops never shorten distances") {
  auto G = parse_nielsen_string(kLoopGraph);
  CHECK(validate(G).empty());
  CHECK(distance_function(G) == std::vector<int>{0, 1});
}

TEST_CASE("filtering clauses and witnesses") {
  auto G = parse_nielsen_string(kLoopGraph);
  auto chk = is_filtering(G, distance_function(G));
  CHECK(!chk.ok);
  CHECK(chk.witness.find("a2") != std::string::npos);

  AutomorphismGraph star;
  star.pieces = {{"c", 1, true}, {"u", 1, false}, {"v", 1, false}};
  star.annuli = {{"a", 0, 1, 1, Rat(-1), false}, {"b", 0, 2, 1, Rat(-1), false}};
  CHECK(is_filtering(star, {0, 1, 1}).ok);
  star.annuli.push_back({"c", 1, 2, 1, Rat(-1), false});
  auto bad = is_filtering(star, {0, 1, 1});
  CHECK(!bad.ok);
  CHECK(bad.witness.find("equal levels") != std::string::npos);

  AutomorphismGraph path;
  path.pieces = {{"c", 1, true}, {"u", 1, false}, {"v", 1, false}};
  path.annuli = {{"a", 0, 1, 1, Rat(-1), false}, {"b", 1, 2, 1, Rat(-1), false}};
  auto lonely = is_filtering(path, {0, 2, 1});
  CHECK(!lonely.ok);
  CHECK(lonely.witness.find("lower") != std::string::npos);

  AutomorphismGraph floating;
  floating.pieces = {{"c", 1, true}, {"u", 1, false}};
  floating.annuli = {{"a", 0, 1, 1, Rat(-1), false}};
  CHECK(!is_filtering(floating, {1, 2}).ok);
}

TEST_CASE("validate rejects malformed decorations") {
  auto G = parse_nielsen_string(kLoopGraph);
  CHECK(validate(G).empty());
  G.annuli[0].screw = Rat(1, 2);
  CHECK(!validate(G).empty());
  G = parse_nielsen_string(kLoopGraph);
  G.annuli[1].v = 0;
  CHECK(!validate(G).empty());
  G = parse_nielsen_string(kLoopGraph);
  G.pieces[0].fixed_boundary = false;
  CHECK(!validate(G).empty());
}

TEST_CASE("splitting the loop graph yields the four annuli shape") {
  auto G = parse_nielsen_string(kLoopGraph);
  auto H = split_for_filtering(G);
  CHECK(validate(H).empty());
  REQUIRE(H.pieces.size() == 3);
  REQUIRE(H.annuli.size() == 2);
  CHECK(H.pieces[2].orbit == 1);
  CHECK(!H.pieces[2].fixed_boundary);
  CHECK(H.annuli[0].name == "a1");
  CHECK(H.annuli[1].orbit == 2);
  CHECK(H.annuli[1].screw == Rat(-1));
  CHECK(!H.annuli[1].amphidrome);
  CHECK(H.annuli[1].v == 1);
  CHECK(H.annuli[1].w == 2);
  long long total = 0;
  for (const auto& a : H.annuli) total += a.orbit;
  CHECK(total == 4);
  auto D = distance_function(H);
  CHECK(D == std::vector<int>{0, 1, 2});
  CHECK(is_filtering(H, D).ok);
  CHECK(serialize_nielsen(split_for_filtering(H)) == serialize_nielsen(H));
}

TEST_CASE("non-amphidrome splits halve the screw") {
  AutomorphismGraph G;
  G.pieces = {{"b", 1, true}, {"u", 1, false}, {"v", 1, false}};
  G.annuli = {{"x", 0, 1, 1, Rat(-1), false},
              {"y", 0, 2, 1, Rat(-1), false},
              {"z", 1, 2, 2, Rat(-1, 2), false}};
  auto H = split_for_filtering(G);
  REQUIRE(H.pieces.size() == 4);
  REQUIRE(H.annuli.size() == 4);
  CHECK(H.pieces[3].orbit == 2);
  CHECK(H.annuli[2].screw == Rat(-1, 4));
  CHECK(H.annuli[3].screw == Rat(-1, 4));
  CHECK(H.annuli[2].orbit == 2);
  CHECK(is_filtering(H, distance_function(H)).ok);
}

TEST_CASE("delta schedule reproduces the worked constants") {
  auto H = split_for_filtering(parse_nielsen_string(kLoopGraph));
  std::map<std::string, Rat> lens{{"a1", Rat(1, 9)}, {"a2_half", Rat(1, 18)}};
  auto sched = delta_schedule(H, lens);
  REQUIRE(sched.size() == 2);
  CHECK(sched[0].level == 1);
  CHECK(sched[0].delta == Rat(1, 18));
  CHECK(sched[0].shrink_targets.empty());
  CHECK(sched[1].level == 2);
  CHECK(sched[1].delta == Rat(1, 36));
  CHECK(sched[1].shrink_targets.empty());
}

TEST_CASE("delta schedule equalizes by shrinking") {
  AutomorphismGraph G;
  G.pieces = {{"b", 1, true}, {"u", 1, false}};
  G.annuli = {{"x", 0, 1, 2, Rat(-1), false}, {"y", 0, 1, 1, Rat(-1), false}};
  std::map<std::string, Rat> lens{{"x", Rat(1, 9)}, {"y", Rat(1, 12)}};
  auto sched = delta_schedule(G, lens);
  REQUIRE(sched.size() == 1);
  CHECK(sched[0].delta == Rat(1, 18));
  REQUIRE(sched[0].shrink_targets.size() == 1);
  CHECK(sched[0].shrink_targets[0].first == "y");
  CHECK(sched[0].shrink_targets[0].second == Rat(1, 18));

  lens["y"] = Rat(1, 18);
  auto even = delta_schedule(G, lens);
  CHECK(even[0].delta == Rat(1, 18));
  CHECK(even[0].shrink_targets.empty());

  lens.erase("y");
  CHECK_THROWS_AS(delta_schedule(G, lens), GraphError);
}

TEST_CASE("random decorated graphs always filter after splitting") {
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    CAPTURE(seed);
    auto G = random_nielsen(seed);
    CHECK(validate(G).empty());
    auto H = split_for_filtering(G);
    CHECK(validate(H).empty());
    CHECK(is_filtering(H, distance_function(H)).ok);
    for (const auto& a : H.annuli) CHECK(!a.amphidrome);
  }
}
