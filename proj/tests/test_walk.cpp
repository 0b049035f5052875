#include <doctest.h>

#include <random>

#include "tat/families.hpp"
#include "tat/walk.hpp"

using namespace tat;

static RibbonGraph level_circle(const Rat& d0, const Rat& d1) {
  auto g = circle_graph({Rat(1, 2), Rat(1, 2)});
  g.elevel[0] = g.elevel[1] = 1;
  g.deltas.clear();
  g.deltas.push_back({0, true, "", d0});
  g.deltas.push_back({1, true, "", d1});
  return g;
}

TEST_CASE("safe walk on a circle") {
  auto g = circle_graph({Rat(1), Rat(1)});
  auto tr = safe_walk(g, {0, Rat(1, 2)}, Rat(1), 0);
  CHECK(tr.endpoint.dart == 2);
  CHECK(tr.endpoint.offset == Rat(1, 2));
  CHECK(tr.order == 0);
  CHECK(tr.total_length == Rat(1));

  auto back = safe_walk(g, {0, Rat(1, 2)}, Rat(2), 0);
  CHECK(back.endpoint.dart == 0);
  CHECK(back.endpoint.offset == Rat(1, 2));
  CHECK(back.legs[0].darts.size() == 3);
}

TEST_CASE("safe walk turning rule on the theta graph") {
  auto g = theta_graph(false);
  auto tr = safe_walk(g, {*g.dart_by_name("a+"), Rat(1, 2)}, Rat(1), 0);
  DartId cont = next_at_level(g, 0, *g.dart_by_name("a+"));
  CHECK(cont == *g.dart_by_name("b-"));
  CHECK(tr.endpoint == canonical_point(g, {cont, Rat(1, 2)}));
}

TEST_CASE("walk concatenation") {
  std::mt19937_64 rng(7);
  auto graphs = {circle_graph({Rat(1), Rat(1, 3)}), theta_graph(false), theta_graph(true),
                 fig1_graph(Rat(1, 18))};
  for (const auto& g : graphs) {
    for (int k = 0; k < 50; ++k) {
      DartId d = (DartId)(rng() % g.num_darts());
      Rat t = g.dart_len(d) * (int)(1 + rng() % 16) / 17;
      Rat l1 = Rat(1 + (int)(rng() % 12), 1 + (int)(rng() % 12));
      Rat l2 = Rat(1 + (int)(rng() % 12), 1 + (int)(rng() % 12));
      auto whole = safe_walk(g, {d, t}, l1 + l2, 0);
      auto first = safe_walk(g, {d, t}, l1, 0);
      auto second = safe_walk(g, first.endpoint_direction, l2, 0);
      CHECK(whole.endpoint == second.endpoint);
    }
  }
}

TEST_CASE("boundary walk starts against the circle orientation") {
  auto g = dumbbell_graph(Rat(1, 3));
  // C1 = [g1-]; the walk from (g1+, x) must leave along g1+ and land on C2.
  auto tr = boundary_safe_walk(g, {*g.dart_by_name("g1+"), Rat(1, 4)}, Rat(1), 0);
  CHECK(tr.start.dart == *g.dart_by_name("g1+"));
  CHECK(tr.endpoint == canonical_point(g, {*g.dart_by_name("g2+"), Rat(1, 4)}));
  CHECK(g.on_relative(dart_edge(tr.endpoint.dart)));

  CHECK_THROWS_AS(boundary_safe_walk(g, {*g.dart_by_name("b+"), Rat(1, 4)}, Rat(1), 0),
                  GraphError);
  CHECK_THROWS_AS(boundary_safe_walk(g, {*g.dart_by_name("g1+"), Rat(0)}, Rat(1), 0), GraphError);
}

TEST_CASE("zero-length boundary walk returns its start") {
  auto g = circle_graph({Rat(1)}, true);
  auto tr = boundary_safe_walk(g, {0, Rat(1, 3)}, Rat(0), 0);
  CHECK(tr.endpoint == canonical_point(g, {0, Rat(1, 3)}));
  CHECK(tr.order == 0);
  auto loop = boundary_safe_walk(g, {0, Rat(1, 3)}, Rat(1), 0);
  CHECK(loop.endpoint == canonical_point(g, {0, Rat(1, 3)}));
}

TEST_CASE("mixed walk reduces to one leg at depth 0") {
  auto g = fig1_graph(Rat(1, 18));
  auto tr = mixed_safe_walk(g, {*g.dart_by_name("u1+"), Rat(1, 4)});
  CHECK(tr.order == 0);
  CHECK(tr.total_length == Rat(1));
  auto plain = safe_walk(g, {*g.dart_by_name("u1+"), Rat(1, 4)}, Rat(1), 0);
  CHECK(tr.endpoint == plain.endpoint);
  CHECK_THROWS_AS(mixed_safe_walk(g, {*g.dart_by_name("e1+"), Rat(1, 100)}), GraphError);
}

TEST_CASE("mixed walk runs a second leg inside the level subgraph") {
  auto g = level_circle(Rat(1, 2), Rat(1, 8));
  auto tr = mixed_safe_walk(g, {0, Rat(1, 8)});
  CHECK(tr.order == 1);
  CHECK(tr.legs[0].length == Rat(1, 2));
  CHECK(tr.legs[1].length == Rat(1, 8));
  CHECK(tr.total_length == Rat(5, 8));
  // leg 0: (e0+,1/8) + 1/2 -> (e1+,1/8); leg 1 continues to (e1+,1/4).
  CHECK(tr.endpoint == canonical_point(g, {2, Rat(1, 4)}));
}

TEST_CASE("mixed walk stop rule and vertex ambiguity") {
  auto g = level_circle(Rat(1, 2), Rat(1, 8));
  g.elevel[1] = 0;  // leg-0 endpoint now falls outside the level-1 subgraph
  auto tr = mixed_safe_walk(g, {0, Rat(1, 8)});
  CHECK(tr.order == 0);

  auto h = level_circle(Rat(1, 4), Rat(1, 8));
  // from (e0+, 1/4): leg 0 ends exactly at the vertex between e0 and e1
  CHECK_THROWS_AS(mixed_safe_walk(h, {0, Rat(1, 4)}), AmbiguousDirection);
}

TEST_CASE("single-piece family on the circle") {
  auto g = circle_graph({Rat(1), Rat(1)});
  auto fam = safe_walk_family(g, 0, Rat(1), 0);
  REQUIRE(fam.pieces.size() == 1);
  CHECK(fam.pieces[0].lo == Rat(0));
  CHECK(fam.pieces[0].hi == Rat(1));
  CHECK(fam.pieces[0].end_dart == 2);
  CHECK(fam.pieces[0].end_c == Rat(0));
}

TEST_CASE("family breakpoints fall where the endpoint crosses vertices") {
  auto g = circle_graph({Rat(1), Rat(1, 3), Rat(1, 3), Rat(1, 3)});
  auto fam = safe_walk_family(g, 0, Rat(1), 0);
  REQUIRE(fam.pieces.size() == 3);
  CHECK(fam.pieces[0].hi == Rat(1, 3));
  CHECK(fam.pieces[1].hi == Rat(2, 3));
  CHECK(fam.pieces[1].end_dart == 4);
  CHECK(fam.pieces[1].end_c == Rat(-1, 3));
  CHECK_THROWS_AS(fam.piece_at(Rat(1, 3)), GraphError);
  CHECK(fam.piece_at(Rat(1, 2)).end_dart == 4);
}

static void check_family_agrees(const RibbonGraph& g, const DeltaMap& dm) {
  for (DartId d = 0; d < g.num_darts(); ++d) {
    if (g.on_relative(dart_edge(d))) continue;
    auto fam = mixed_walk_family(g, dm, d);
    REQUIRE(!fam.pieces.empty());
    CHECK(fam.pieces.front().lo == Rat(0));
    CHECK(fam.pieces.back().hi == g.dart_len(d));
    for (size_t i = 1; i < fam.pieces.size(); ++i) CHECK(fam.pieces[i].lo == fam.pieces[i - 1].hi);
    for (const auto& p : fam.pieces) {
      for (int k = 1; k <= 7; k += 3) {
        Rat u = p.lo + (p.hi - p.lo) * k / 8;
        auto tr = mixed_safe_walk(g, dm, {d, u});
        CHECK(tr.order == p.order);
        CHECK(tr.total_length == p.total_len);
        CHECK(tr.endpoint == canonical_point(g, {p.end_dart, u + p.end_c}));
      }
    }
  }
}

TEST_CASE("mixed families agree with pointwise walks") {
  for (const auto& g : {theta_graph(false), fig1_graph(Rat(1, 18)), fig1_graph(Rat(1, 10)),
                        dumbbell_graph(Rat(1, 3)), level_circle(Rat(1, 2), Rat(1, 8))})
    check_family_agrees(g, resolve_deltas(g));
}
