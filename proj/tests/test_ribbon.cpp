#include <doctest.h>

#include "tat/families.hpp"
#include "tat/ribbon_graph.hpp"

using namespace tat;

TEST_CASE("two-edge circle is the smallest valid graph") {
  auto g = circle_graph({Rat(1), Rat(1)});
  CHECK(validate(g).empty());
  auto fs = faces(g, 0);
  REQUIRE(fs.size() == 2);
  for (const auto& f : fs) {
    CHECK(f.size() == 2);
    CHECK(face_length(g, f) == Rat(2));
  }
  auto e = euler_genus(g, 0);
  CHECK(e.chi == 0);
  CHECK(e.genus == 0);
  CHECK(e.boundary == 2);
}

TEST_CASE("non-positive length reported") {
  auto g = circle_graph({Rat(1), Rat(1)});
  g.elen[1] = Rat(0);
  auto r = validate(g);
  REQUIRE(r.size() == 1);
  CHECK(r[0].find("non-positive length") != std::string::npos);
}

TEST_CASE("univalent vertex in upper level reported") {
  auto g = theta_graph(false);
  g.elevel[2] = 1;  // edge c alone at level 1 leaves v0,v1 univalent there
  auto r = validate(g);
  REQUIRE(!r.empty());
  for (const auto& m : r) CHECK(m.find("univalent") != std::string::npos);
  CHECK(r.size() == 2);
}

TEST_CASE("theta face counts fix the two rotation systems") {
  auto g1 = theta_graph(false);
  CHECK(validate(g1).empty());
  CHECK(faces(g1, 0).size() == 1);
  auto e1 = euler_genus(g1, 0);
  CHECK(e1.chi == -1);
  CHECK(e1.genus == 1);
  CHECK(e1.boundary == 1);

  auto g3 = theta_graph(true);
  CHECK(validate(g3).empty());
  CHECK(faces(g3, 0).size() == 3);
  auto e3 = euler_genus(g3, 0);
  CHECK(e3.chi == -1);
  CHECK(e3.genus == 0);
  CHECK(e3.boundary == 3);
}

TEST_CASE("faces partition darts and lengths sum to twice the total") {
  for (auto g : {theta_graph(false), theta_graph(true), circle_graph({Rat(1), Rat(1, 2)}),
                 fig1_graph(Rat(1, 18)), dumbbell_graph(Rat(1, 9))}) {
    auto fs = faces(g, 0);
    std::vector<int> hit(g.num_darts(), 0);
    Rat total = 0;
    for (const auto& f : fs) {
      for (DartId d : f) hit[d]++;
      total += face_length(g, f);
    }
    for (int d = 0; d < g.num_darts(); ++d) CHECK(hit[d] == 1);
    Rat edges2 = 0;
    for (const auto& l : g.elen) edges2 += 2 * l;
    CHECK(total == edges2);
  }
}

TEST_CASE("canonical points") {
  auto g = circle_graph({Rat(1), Rat(1)});
  // dart 0 = e0+, dart 1 = e0-, dart 2 = e1+, dart 3 = e1-
  MetricPoint p{0, Rat(1, 3)};
  auto c = canonical_point(g, p);
  CHECK(c.dart == 0);
  CHECK(c.offset == Rat(1, 3));
  auto c2 = canonical_point(g, {1, Rat(2, 3)});
  CHECK(c2.dart == 0);
  CHECK(c2.offset == Rat(1, 3));
  auto c3 = canonical_point(g, {0, Rat(1)});  // head of e0+ is v1
  CHECK(c3.offset == 0);
  CHECK(g.dart_from(c3.dart) == 1);
  CHECK(c3.dart == 1);  // least dart leaving v1 is e0-
  auto c4 = canonical_point(g, c3);
  CHECK(c4.dart == c3.dart);
  CHECK(c4.offset == c3.offset);
  CHECK_THROWS_AS(canonical_point(g, {0, Rat(3, 2)}), GraphError);
}

TEST_CASE("depth of points") {
  auto g = theta_graph(false);
  g.elevel[0] = 1;  // a
  g.elevel[1] = 1;  // b
  g.finalize();
  CHECK(validate(g).empty());
  CHECK(depth_of(g, {4, Rat(1, 2)}) == 0);  // interior of c
  CHECK(depth_of(g, {0, Rat(1, 2)}) == 1);  // interior of a
  CHECK(depth_of(g, {0, Rat(0)}) == 1);     // vertex v0 touches level 1
}

TEST_CASE("components per level") {
  auto g = theta_graph(false);
  g.elevel[0] = 1;
  g.elevel[1] = 1;
  g.finalize();
  auto c0 = component_ids(g, 0);
  CHECK(c0.count == 1);
  CHECK(c0.names[0] == "a");
  auto c1 = component_ids(g, 1);
  CHECK(c1.count == 1);
  CHECK(c1.names[0] == "a");
  CHECK(c1.comp_of_edge[2] == -1);
  auto c2 = component_ids(g, 2);
  CHECK(c2.count == 0);

  auto d = dumbbell_graph(Rat(1, 9));
  auto dc = component_ids(d, 0);
  CHECK(dc.count == 1);
  CHECK(dc.names[0] == "b");
}

TEST_CASE("induced subgraph") {
  auto g = theta_graph(false);
  auto same = induced_subgraph(g, 0);
  CHECK(graph_equal(g, same));

  g.elevel[0] = 1;
  g.elevel[1] = 1;
  g.finalize();
  auto h = induced_subgraph(g, 1);
  CHECK(h.num_edges() == 2);
  CHECK(h.num_vertices() == 2);
  CHECK(validate(h).empty());
  CHECK(faces(h, 1).size() == 2);
  auto hh = induced_subgraph(induced_subgraph(g, 1), 1);
  CHECK(graph_equal(h, hh));
}

TEST_CASE("relative circle conditions") {
  auto g = circle_graph({Rat(1), Rat(1)}, true);
  CHECK(validate(g).empty());

  auto bad = circle_graph({Rat(1), Rat(1)});
  bad.circles.push_back({"A", 0, {0, 3}});  // e0+ then e1-: chain breaks
  bad.finalize();
  auto r = validate(bad);
  CHECK(!r.empty());

  auto f = fig1_graph(Rat(1, 18));
  CHECK(validate(f).empty());
  auto d = dumbbell_graph(Rat(1, 3));
  CHECK(validate(d).empty());
}

TEST_CASE("delta resolution") {
  auto g = dumbbell_graph(Rat(1, 9));
  auto dm = resolve_deltas(g);
  REQUIRE(dm.problems.empty());
  auto v = dm.at_edge(0, 0);
  REQUIRE(v.has_value());
  CHECK(*v == Rat(1));

  g.deltas.push_back({0, false, "zzz", Rat(1, 2)});
  auto dm2 = resolve_deltas(g);
  CHECK(!dm2.problems.empty());

  g.deltas.pop_back();
  g.deltas.push_back({0, false, "b", Rat(1, 2)});
  auto dm3 = resolve_deltas(g);
  CHECK(dm3.problems.empty());
  CHECK(*dm3.at_edge(0, 2) == Rat(1, 2));
}

TEST_CASE("token ordering for component names") {
  CHECK(token_less("9", "10"));
  CHECK(token_less("2", "b"));
  CHECK(!token_less("b", "2"));
  CHECK(token_less("a", "b"));
  CHECK(token_less("a1", "a2"));
}
