#include <doctest.h>

#include <algorithm>

#include "tamefill/diagram.hpp"
#include "test_util.hpp"

using namespace tamefill;

namespace {

CayleyBall z2_ball(int radius) {
  RewritingSystem rs = rs_z2();
  return build_ball(oracle_from_rs(rs), rs.alphabet(), radius);
}

Presentation z2_presentation() {
  Alphabet ab = ab_f2();
  return make_presentation(ab, {ab.parse_word("a b A B")});
}

int ball_vertex(const CayleyBall& ball, const std::string& text) {
  int v = ball.find(ball.alphabet().parse_word(text));
  REQUIRE(v >= 0);
  return v;
}

struct Square {
  Diagram diagram;
  CompactMaps maps;
};

// The lattice cell with corners at the identity, b, ab, a, walked
// b a B A from the basepoint.
Square build_square(const CayleyBall& ball) {
  const Alphabet& ab = ball.alphabet();
  Arena arena(ball);
  const int p0 = arena.add_vertex(ball_vertex(ball, ""));
  const int p1 = arena.add_vertex(ball_vertex(ball, "b"));
  const int p2 = arena.add_vertex(ball_vertex(ball, "a b"));
  const int p3 = arena.add_vertex(ball_vertex(ball, "a"));
  const int e0 = arena.add_edge(p0, p1, *ab.find("b"));
  const int e1 = arena.add_edge(p1, p2, *ab.find("a"));
  const int e2 = arena.add_edge(p2, p3, *ab.find("B"));
  const int e3 = arena.add_edge(p3, p0, *ab.find("A"));
  arena.add_face({e0, e1, e2, e3});
  Square result;
  result.diagram = arena.compact({e0, e1, e2, e3}, p0, &result.maps);
  return result;
}

}  // namespace

TEST_CASE("the lattice square validates and carries the pinned profile") {
  CayleyBall ball = z2_ball(2);
  Square sq = build_square(ball);
  const Diagram& d = sq.diagram;

  CHECK(d.vertex_count() == 4);
  CHECK(d.edge_count() == 4);
  CHECK(d.face_count() == 1);
  CHECK(d.euler_characteristic() == 1);
  CHECK(ball.alphabet().format_word(d.boundary_word()) == "b a B A");
  CHECK(ball.alphabet().format_word(d.face_word(0)) == "b a B A");

  ValidationReport report = validate_diagram(d, ball, z2_presentation());
  CHECK(report.passed);
  CHECK(report.problems.empty());

  DiagramProfile in = intrinsic_profile(d);
  CHECK(in.diameter == 2);
  REQUIRE(in.vertex.size() == 4);
  CHECK(in.vertex[0] == Q4{0});
  CHECK(in.vertex[1] == Q4{4});
  CHECK(in.vertex[2] == Q4{8});
  CHECK(in.vertex[3] == Q4{4});
  CHECK(in.edge[0] == Q4{2});
  CHECK(in.edge[1] == Q4{6});
  CHECK(in.edge[2] == Q4{6});
  CHECK(in.edge[3] == Q4{2});
  REQUIRE(in.face.size() == 1);
  CHECK(in.face[0] == Q4{5});
  CHECK(q4_to_string(in.face[0]) == "5/4");

  // The square embeds, so both profiles agree cell by cell.
  DiagramProfile ex = extrinsic_profile(d, ball);
  CHECK(ex.vertex == in.vertex);
  CHECK(ex.edge == in.edge);
  CHECK(ex.face == in.face);
  REQUIRE(ex.face_collapsed.size() == 1);
  CHECK(!ex.face_collapsed[0]);

  CHECK(cell_value(in, {CellRef::Kind::Vertex, 2}) == Q4{8});
  CHECK(cell_value(in, {CellRef::Kind::Edge, 1}) == Q4{6});
  CHECK(cell_value(in, {CellRef::Kind::Face, 0}) == Q4{5});
}

TEST_CASE("a single vertex is the filling of the empty word") {
  CayleyBall ball = z2_ball(1);
  Arena arena(ball);
  const int p0 = arena.add_vertex(0);
  Diagram d = arena.compact({}, p0);
  CHECK(d.vertex_count() == 1);
  CHECK(d.edge_count() == 0);
  CHECK(d.face_count() == 0);
  CHECK(d.boundary_word().empty());
  CHECK(validate_diagram(d, ball, z2_presentation()).passed);
  DiagramProfile in = intrinsic_profile(d);
  CHECK(in.diameter == 0);
  CHECK(in.vertex[0] == Q4{0});
}

TEST_CASE("an out-and-back spur fills a cancelling pair") {
  CayleyBall ball = z2_ball(1);
  const Alphabet& ab = ball.alphabet();
  Arena arena(ball);
  const int p0 = arena.add_vertex(ball_vertex(ball, ""));
  const int p1 = arena.add_vertex(ball_vertex(ball, "a"));
  const int e0 = arena.add_edge(p0, p1, *ab.find("a"));
  Diagram d = arena.compact({e0, e0 ^ 1}, p0);
  CHECK(d.vertex_count() == 2);
  CHECK(d.edge_count() == 1);
  CHECK(ab.format_word(d.boundary_word()) == "a A");
  CHECK(validate_diagram(d, ball, z2_presentation()).passed);
  DiagramProfile in = intrinsic_profile(d);
  CHECK(in.vertex[1] == Q4{4});
  CHECK(in.edge[0] == Q4{2});
}

TEST_CASE("projection distances can undercut diagram distances") {
  CayleyBall ball = z2_ball(2);
  const Alphabet& ab = ball.alphabet();
  // A path spelling b B b: its middle vertex projects back to the
  // identity, so the projected distances drop to 0, 1, 0, 1.
  Arena arena(ball);
  const int p0 = arena.add_vertex(ball_vertex(ball, ""));
  const int p1 = arena.add_vertex(ball_vertex(ball, "b"));
  const int p2 = arena.add_vertex(ball_vertex(ball, ""));
  const int p3 = arena.add_vertex(ball_vertex(ball, "b"));
  const int e0 = arena.add_edge(p0, p1, *ab.find("b"));
  const int e1 = arena.add_edge(p1, p2, *ab.find("B"));
  const int e2 = arena.add_edge(p2, p3, *ab.find("b"));
  Diagram d = arena.compact({e0, e1, e2, e2 ^ 1, e1 ^ 1, e0 ^ 1}, p0);
  CHECK(ab.format_word(d.boundary_word()) == "b B b B b B");
  CHECK(validate_diagram(d, ball, z2_presentation()).passed);

  DiagramProfile in = intrinsic_profile(d);
  DiagramProfile ex = extrinsic_profile(d, ball);
  CHECK(in.diameter == 3);
  CHECK(ex.diameter == 1);
  bool strictly_below = false;
  for (int v = 0; v < d.vertex_count(); ++v) {
    CHECK(ex.vertex[v] <= in.vertex[v]);
    strictly_below |= ex.vertex[v] < in.vertex[v];
    CHECK(in.vertex[v].q % 4 == 0);
  }
  for (int k = 0; k < d.edge_count(); ++k) {
    CHECK(ex.edge[k] <= in.edge[k]);
    CHECK(in.edge[k].q % 4 == 2);
    CHECK(ex.edge[k].q % 4 == 2);
  }
  CHECK(strictly_below);
}

TEST_CASE("validation pinpoints structural defects") {
  CayleyBall ball = z2_ball(2);
  const Alphabet& ab = ball.alphabet();

  SUBCASE("face word that is not a relator") {
    Square sq = build_square(ball);
    Presentation wrong = make_presentation(ab_f2(), {ab_f2().parse_word("a a a")});
    ValidationReport report = validate_diagram(sq.diagram, ball, wrong);
    CHECK(!report.passed);
    REQUIRE(report.problems.size() == 1);
    CHECK(report.problems[0].find("not a relator") != std::string::npos);
  }

  SUBCASE("projection that breaks an edge") {
    Arena arena(ball);
    const int p0 = arena.add_vertex(ball_vertex(ball, ""));
    const int p1 = arena.add_vertex(ball_vertex(ball, "b"));  // but labeled a
    const int e0 = arena.add_edge(p0, p1, *ab.find("a"));
    Diagram d = arena.compact({e0, e0 ^ 1}, p0);
    ValidationReport report = validate_diagram(d, ball, z2_presentation());
    CHECK(!report.passed);
    bool found = false;
    for (const auto& text : report.problems) {
      found |= text.find("projects inconsistently") != std::string::npos;
    }
    CHECK(found);
  }

  SUBCASE("basepoint away from the identity") {
    Arena arena(ball);
    const int p0 = arena.add_vertex(ball_vertex(ball, "a"));
    const int p1 = arena.add_vertex(ball_vertex(ball, ""));
    const int e0 = arena.add_edge(p0, p1, *ab.find("A"));
    Diagram d = arena.compact({e0, e0 ^ 1}, p0);
    ValidationReport report = validate_diagram(d, ball, z2_presentation());
    CHECK(!report.passed);
    CHECK(report.problems[0].find("basepoint") != std::string::npos);
  }

  SUBCASE("doubled face breaks both the count and the incidences") {
    Arena arena(ball);
    const int p0 = arena.add_vertex(ball_vertex(ball, ""));
    const int p1 = arena.add_vertex(ball_vertex(ball, "b"));
    const int p2 = arena.add_vertex(ball_vertex(ball, "a b"));
    const int p3 = arena.add_vertex(ball_vertex(ball, "a"));
    const int e0 = arena.add_edge(p0, p1, *ab.find("b"));
    const int e1 = arena.add_edge(p1, p2, *ab.find("a"));
    const int e2 = arena.add_edge(p2, p3, *ab.find("B"));
    const int e3 = arena.add_edge(p3, p0, *ab.find("A"));
    arena.add_face({e0, e1, e2, e3});
    arena.add_face({e0, e1, e2, e3});
    Diagram d = arena.compact({e0, e1, e2, e3}, p0);
    ValidationReport report = validate_diagram(d, ball, z2_presentation());
    CHECK(!report.passed);
    bool chi = false, sides = false;
    for (const auto& text : report.problems) {
      chi |= text.find("Euler characteristic") != std::string::npos;
      sides |= text.find("incident sides") != std::string::npos;
    }
    CHECK(chi);
    CHECK(sides);
  }

  SUBCASE("disconnected vertex") {
    Arena arena(ball);
    const int p0 = arena.add_vertex(ball_vertex(ball, ""));
    arena.add_vertex(ball_vertex(ball, "a"));
    Diagram d = arena.compact({}, p0);
    ValidationReport report = validate_diagram(d, ball, z2_presentation());
    CHECK(!report.passed);
    bool unreachable = false;
    for (const auto& text : report.problems) {
      unreachable |= text.find("unreachable") != std::string::npos;
    }
    CHECK(unreachable);
    CHECK_THROWS_AS((void)intrinsic_profile(d), Error);
  }

  SUBCASE("boundary that does not close") {
    Arena arena(ball);
    const int p0 = arena.add_vertex(ball_vertex(ball, ""));
    const int p1 = arena.add_vertex(ball_vertex(ball, "a"));
    const int e0 = arena.add_edge(p0, p1, *ab.find("a"));
    Diagram d = arena.compact({e0}, p0);
    ValidationReport report = validate_diagram(d, ball, z2_presentation());
    CHECK(!report.passed);
    bool open_walk = false, sides = false;
    for (const auto& text : report.problems) {
      open_walk |= text.find("closed walk") != std::string::npos;
      sides |= text.find("incident sides") != std::string::npos;
    }
    CHECK(open_walk);
    CHECK(sides);
  }
}

TEST_CASE("gluing merges edge classes in lockstep with their twins") {
  CayleyBall ball = z2_ball(2);
  const Alphabet& ab = ball.alphabet();

  SUBCASE("two parallel strands fold to one edge") {
    Arena arena(ball);
    const int p0 = arena.add_vertex(ball_vertex(ball, ""));
    const int p1 = arena.add_vertex(ball_vertex(ball, "a"));
    const int p2 = arena.add_vertex(ball_vertex(ball, "a"));
    const int e0 = arena.add_edge(p0, p1, *ab.find("a"));
    const int e1 = arena.add_edge(p0, p2, *ab.find("a"));
    arena.merge_edges(e0, e1);
    CHECK(arena.find_edge(e0) == arena.find_edge(e1));
    CHECK(arena.find_edge(e0 ^ 1) == arena.find_edge(e1 ^ 1));
    CHECK(arena.find_vertex(p1) == arena.find_vertex(p2));
    CompactMaps maps;
    Diagram d = arena.compact({e0, e1 ^ 1}, p0, &maps);
    CHECK(d.vertex_count() == 2);
    CHECK(d.edge_count() == 1);
    CHECK(maps.vertex[static_cast<size_t>(p1)] == maps.vertex[static_cast<size_t>(p2)]);
    CHECK(maps.edge[static_cast<size_t>(e0)] == maps.edge[static_cast<size_t>(e1)]);
    CHECK(validate_diagram(d, ball, z2_presentation()).passed);
  }

  SUBCASE("gluing refuses mismatched pieces") {
    Arena arena(ball);
    const int p0 = arena.add_vertex(ball_vertex(ball, ""));
    const int p1 = arena.add_vertex(ball_vertex(ball, "a"));
    const int p2 = arena.add_vertex(ball_vertex(ball, "b"));
    const int e0 = arena.add_edge(p0, p1, *ab.find("a"));
    const int e1 = arena.add_edge(p0, p2, *ab.find("b"));
    CHECK_THROWS_WITH_AS(arena.merge_vertices(p1, p2), doctest::Contains("projection"),
                         Error);
    CHECK_THROWS_WITH_AS(arena.merge_edges(e0, e1), doctest::Contains("label"), Error);
    CHECK_THROWS_WITH_AS(arena.merge_edges(e0, e0 ^ 1), doctest::Contains("reversal"),
                         Error);
  }
}

TEST_CASE("import replays a diagram, optionally translated") {
  CayleyBall ball = z2_ball(2);
  const Alphabet& ab = ball.alphabet();
  // Source: the segment from the identity to a.
  Arena source(ball);
  const int s0 = source.add_vertex(ball_vertex(ball, ""));
  const int s1 = source.add_vertex(ball_vertex(ball, "a"));
  const int se = source.add_edge(s0, s1, *ab.find("a"));
  Diagram segment = source.compact({se, se ^ 1}, s0);

  SUBCASE("verbatim") {
    Arena arena(ball);
    Imported in = arena.import(segment, {});
    CHECK(in.boundary.size() == 2);
    CHECK(arena.projection(in.basepoint) == 0);
    Diagram d = arena.compact(in.boundary, in.basepoint);
    CHECK(d.vertex_count() == 2);
    CHECK(ab.format_word(d.boundary_word()) == "a A");
  }

  SUBCASE("translated by b") {
    Arena arena(ball);
    Imported in = arena.import(segment, ab.parse_word("b"));
    CHECK(arena.projection(in.vertices[0]) == ball_vertex(ball, "b"));
    CHECK(arena.projection(in.vertices[1]) == ball_vertex(ball, "a b"));
  }

  SUBCASE("translation pushed off the ball") {
    CayleyBall small = z2_ball(1);
    Arena source1(small);
    const int t0 = source1.add_vertex(0);
    const int t1 = source1.add_vertex(ball_vertex(small, "a"));
    const int te = source1.add_edge(t0, t1, *ab.find("a"));
    Diagram seg = source1.compact({te, te ^ 1}, t0);
    Arena arena(small);
    CHECK_THROWS_WITH_AS((void)arena.import(seg, ab.parse_word("b")),
                         doctest::Contains("BallTooSmall"), Error);
  }
}

TEST_CASE("a cell projecting twice over one edge is marked collapsed") {
  Alphabet ab;
  ab.add_involution("s");
  RewritingSystem rs(ab, {{ab.parse_word("s s"), {}}});
  CayleyBall ball = build_ball(oracle_from_rs(rs), ab, 1);
  REQUIRE(ball.vertex_count() == 2);

  Arena arena(ball);
  const int p0 = arena.add_vertex(0);
  const int p1 = arena.add_vertex(1);
  const Letter s = *ab.find("s");
  const int e0 = arena.add_edge(p0, p1, s);
  const int e1 = arena.add_edge(p0, p1, s);
  arena.add_face({e0, e1 ^ 1});
  Diagram d = arena.compact({e0, e1 ^ 1}, p0);
  CHECK(d.vertex_count() == 2);
  CHECK(d.edge_count() == 2);
  CHECK(d.euler_characteristic() == 1);

  DiagramProfile ex = extrinsic_profile(d, ball);
  REQUIRE(ex.face_collapsed.size() == 1);
  CHECK(ex.face_collapsed[0]);
  CHECK(ex.face[0] == Q4{1});
  CHECK(ex.face[0].q % 4 == 1);
}
