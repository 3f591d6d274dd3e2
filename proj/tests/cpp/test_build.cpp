#include <doctest.h>

#include <algorithm>

#include "tamefill/build.hpp"
#include "test_util.hpp"

using namespace tamefill;

namespace {

CayleyBall z2_ball(int radius) {
  RewritingSystem rs = rs_z2();
  return build_ball(oracle_from_rs(rs), rs.alphabet(), radius);
}

RewritingSystem z3_rs() {
  Alphabet ab = ab_f1();
  auto W = [&](const char* s) { return ab.parse_word(s); };
  std::vector<Rule> rules{
      {W("a A"), {}}, {W("A a"), {}}, {W("a a"), W("A")}, {W("A A"), W("a")}};
  return RewritingSystem(ab, std::move(rules));
}

int vertex(const CayleyBall& ball, const std::string& text) {
  int v = ball.find(ball.alphabet().parse_word(text));
  REQUIRE(v >= 0);
  return v;
}

Letter letter(const CayleyBall& ball, const std::string& name) {
  auto l = ball.alphabet().find(name);
  REQUIRE(l.has_value());
  return *l;
}

Word walk_word(const Diagram& d, const std::vector<int>& walk) {
  Word w;
  for (int e : walk) w.push_back(d.label(e));
  return w;
}

// Head-to-tail from start; returns the final vertex, or -1 on a break.
int walk_end(const Diagram& d, const std::vector<int>& walk, int start) {
  int at = start;
  for (int e : walk) {
    if (d.src(e) != at) return -1;
    at = d.dst(e);
  }
  return at;
}

// Every trivial word of length 1..max_len over the ball's alphabet.
std::vector<Word> trivial_words(const CayleyBall& ball, int max_len) {
  std::vector<Word> out;
  const Letter top = static_cast<Letter>(ball.alphabet().size() - 1);
  Word w;
  while (true) {
    int i = static_cast<int>(w.size()) - 1;
    while (i >= 0 && w[static_cast<size_t>(i)] == top) w[static_cast<size_t>(i--)] = 0;
    if (i >= 0) {
      ++w[static_cast<size_t>(i)];
    } else {
      if (static_cast<int>(w.size()) == max_len) break;
      w.assign(w.size() + 1, 0);
    }
    if (ball.oracle()(w).empty()) out.push_back(w);
  }
  return out;
}

}  // namespace

TEST_CASE("the edge diagram of a commuting edge is the square") {
  CayleyBall ball = z2_ball(3);
  FlowFunction ff = rewriting_flow(rs_z2(), ball);
  NDiagramBuilder builder(ff, ball);
  auto W = [&](const char* s) { return ball.alphabet().parse_word(s); };

  const NDiagram& sq = builder.edge_diagram(vertex(ball, "b"), letter(ball, "a"));
  CHECK(sq.diagram.vertex_count() == 4);
  CHECK(sq.diagram.edge_count() == 4);
  CHECK(sq.diagram.face_count() == 1);
  CHECK(sq.diagram.euler_characteristic() == 1);
  CHECK(sq.diagram.boundary_word() == W("b a B A"));
  CHECK(sq.diagram.face_word(0) == W("B a b A"));
  CHECK(walk_word(sq.diagram, sq.src_path) == W("b"));
  CHECK(walk_word(sq.diagram, sq.dst_path) == W("a b"));
  CHECK(sq.diagram.label(sq.hat_edge) == letter(ball, "a"));
  CHECK(ball.nf(sq.diagram.projection(sq.diagram.src(sq.hat_edge))) == W("b"));
  CHECK(ball.nf(sq.diagram.projection(sq.diagram.dst(sq.hat_edge))) == W("a b"));

  ValidationReport rep = validate_diagram(sq.diagram, ball, flow_presentation(ff, ball));
  CAPTURE(rep.problems);
  CHECK(rep.passed);
  CHECK(check_tree_path_property(sq.diagram, ball).empty());

  // Combing into the edge: basepoint, inner arc edge, the cell, the
  // edge itself. Coarse distances 0, 1/2, 5/4, 3/2.
  REQUIRE(sq.to_edge.size() == 4);
  CHECK(sq.to_edge[0] == CellRef{CellRef::Kind::Vertex, sq.diagram.basepoint()});
  CHECK(sq.to_edge[1].kind == CellRef::Kind::Edge);
  CHECK(sq.to_edge[2].kind == CellRef::Kind::Face);
  CHECK(sq.to_edge[3] ==
        CellRef{CellRef::Kind::Edge, Diagram::undirected(sq.hat_edge)});
  DiagramProfile prof = intrinsic_profile(sq.diagram);
  std::vector<Q4> tds;
  for (CellRef c : sq.to_edge) tds.push_back(cell_value(prof, c));
  CHECK(tds == std::vector<Q4>{Q4{0}, Q4{2}, Q4{5}, Q4{6}});

  // Memoization returns the same object; the reverse orientation is
  // the mirror of the same disc.
  CHECK(&builder.edge_diagram(vertex(ball, "b"), letter(ball, "a")) == &sq);
  const NDiagram& rev = builder.edge_diagram(vertex(ball, "a b"), letter(ball, "A"));
  CHECK(rev.diagram.boundary_word() == W("a b A B"));
  CHECK(walk_word(rev.diagram, rev.src_path) == W("a b"));
  CHECK(walk_word(rev.diagram, rev.dst_path) == W("b"));
  CHECK(rev.hat_edge == Diagram::twin(sq.hat_edge));
  CHECK(rev.to_edge == sq.to_edge);
  CHECK(&builder.edge_diagram(vertex(ball, "a b"), letter(ball, "A")) == &rev);
}

TEST_CASE("a declared two-sided split builds the same square") {
  CayleyBall ball = z2_ball(3);
  FlowFunction ff = rewriting_flow(rs_z2(), ball);
  auto W = [&](const char* s) { return ball.alphabet().parse_word(s); };
  // label b^-1 a b with both ends peeled: x_g = b, inner arc a, x_h = b
  ff.assign(vertex(ball, "b"), letter(ball, "a"), W("B a b"), 1, 1, true);
  NDiagramBuilder builder(ff, ball);
  const NDiagram& sq = builder.edge_diagram(vertex(ball, "b"), letter(ball, "a"));
  CHECK(sq.diagram.vertex_count() == 4);
  CHECK(sq.diagram.edge_count() == 4);
  CHECK(sq.diagram.face_count() == 1);
  CHECK(sq.diagram.boundary_word() == W("b a B A"));
  CHECK(sq.diagram.face_word(0) == W("B a b A"));
  CHECK(validate_diagram(sq.diagram, ball, flow_presentation(ff, ball)).passed);
  CHECK(check_tree_path_property(sq.diagram, ball).empty());
}

TEST_CASE("seashell fillings glue the edge diagrams along normal forms") {
  CayleyBall ball = z2_ball(3);
  FlowFunction ff = rewriting_flow(rs_z2(), ball);
  NDiagramBuilder builder(ff, ball);
  auto W = [&](const char* s) { return ball.alphabet().parse_word(s); };

  Filling f = builder.seashell(W("b a B A"));
  CHECK(f.diagram.vertex_count() == 4);
  CHECK(f.diagram.edge_count() == 4);
  CHECK(f.diagram.face_count() == 1);
  CHECK(f.diagram.euler_characteristic() == 1);
  CHECK(f.diagram.boundary_word() == W("b a B A"));
  CHECK(intrinsic_profile(f.diagram).diameter == 2);
  ValidationReport rep = validate_diagram(f.diagram, ball, flow_presentation(ff, ball));
  CAPTURE(rep.problems);
  CHECK(rep.passed);
  CHECK(check_tree_path_property(f.diagram, ball).empty());

  const std::vector<int> bverts = boundary_vertices(f.diagram);
  REQUIRE(bverts.size() == 5);
  CHECK(bverts.front() == f.diagram.basepoint());
  CHECK(bverts.back() == f.diagram.basepoint());
  REQUIRE(f.spokes.size() == 5);
  for (size_t i = 0; i < f.spokes.size(); ++i) {
    CHECK(walk_end(f.diagram, f.spokes[i], f.diagram.basepoint()) == bverts[i]);
    CHECK(walk_word(f.diagram, f.spokes[i]) ==
          ball.nf(f.diagram.projection(bverts[i])));
  }
  REQUIRE(f.edge_combing.size() == 4);
  for (size_t i = 0; i < f.edge_combing.size(); ++i) {
    REQUIRE(!f.edge_combing[i].empty());
    CHECK(f.edge_combing[i].front() ==
          CellRef{CellRef::Kind::Vertex, f.diagram.basepoint()});
    CHECK(f.edge_combing[i].back() ==
          CellRef{CellRef::Kind::Edge, Diagram::undirected(f.diagram.boundary()[i])});
  }

  // Out-and-back cancellation needs no cell.
  Filling spur = builder.seashell(W("a A"));
  CHECK(spur.diagram.vertex_count() == 2);
  CHECK(spur.diagram.edge_count() == 1);
  CHECK(spur.diagram.face_count() == 0);
  CHECK(spur.diagram.boundary_word() == W("a A"));
  CHECK(validate_diagram(spur.diagram, ball, flow_presentation(ff, ball)).passed);

  Filling empty = builder.seashell(Word());
  CHECK(empty.diagram.vertex_count() == 1);
  CHECK(empty.diagram.edge_count() == 0);
  CHECK(empty.spokes.size() == 1);
  CHECK(empty.edge_combing.empty());

  CHECK_THROWS_WITH_AS(builder.seashell(W("a")), doctest::Contains("NotIdentity"),
                       Error);
}

TEST_CASE("free reductions seashell into trees") {
  RewritingSystem rs = rs_free2();
  CayleyBall ball = build_ball(oracle_from_rs(rs), rs.alphabet(), 3);
  FlowFunction ff = rewriting_flow(rs, ball);
  NDiagramBuilder builder(ff, ball);
  auto W = [&](const char* s) { return ball.alphabet().parse_word(s); };

  Filling f = builder.seashell(W("a b B A"));
  CHECK(f.diagram.vertex_count() == 3);
  CHECK(f.diagram.edge_count() == 2);
  CHECK(f.diagram.face_count() == 0);
  CHECK(f.diagram.boundary_word() == W("a b B A"));
  CHECK(intrinsic_profile(f.diagram).diameter == 2);
  CHECK(check_tree_path_property(f.diagram, ball).empty());
}

TEST_CASE("builder errors: ball exits, cycles, missing and empty labels") {
  CayleyBall ball = z2_ball(2);
  auto W = [&](const char* s) { return ball.alphabet().parse_word(s); };

  {
    FlowFunction ff = rewriting_flow(rs_z2(), ball);
    NDiagramBuilder builder(ff, ball);
    CHECK_THROWS_WITH_AS(builder.seashell(W("a a a A A A")),
                         doctest::Contains("BallTooSmall"), Error);
  }
  {
    // Two recursive edges whose labels run through each other.
    FlowFunction ff = rewriting_flow(rs_z2(), ball);
    ff.assign(vertex(ball, "b"), letter(ball, "a"), W("B B a b b"), 0, 0, true);
    ff.assign(vertex(ball, "B"), letter(ball, "a"), W("b b a B B"), 0, 0, true);
    NDiagramBuilder builder(ff, ball);
    CHECK_THROWS_WITH_AS(builder.edge_diagram(vertex(ball, "b"), letter(ball, "a")),
                         doctest::Contains("CycleDetected"), Error);
  }
  {
    // A label marked as exiting the ball refuses to build.
    FlowFunction ff = rewriting_flow(rs_z2(), ball);
    ff.assign(vertex(ball, "b"), letter(ball, "a"), W("b a B"), 0, 0, false);
    NDiagramBuilder builder(ff, ball);
    CHECK_THROWS_WITH_AS(builder.edge_diagram(vertex(ball, "b"), letter(ball, "a")),
                         doctest::Contains("BallTooSmall"), Error);
  }
  {
    FlowFunction ff(ball.vertex_count(), ball.alphabet().size());
    NDiagramBuilder builder(ff, ball);
    CHECK_THROWS_WITH_AS(builder.edge_diagram(vertex(ball, "b"), letter(ball, "a")),
                         doctest::Contains("InvalidArgument"), Error);
  }
  {
    FlowFunction ff = rewriting_flow(rs_z2(), ball);
    ff.assign(vertex(ball, "b"), letter(ball, "a"), Word(), 0, 0, true);
    NDiagramBuilder builder(ff, ball);
    CHECK_THROWS_WITH_AS(builder.edge_diagram(vertex(ball, "b"), letter(ball, "a")),
                         doctest::Contains("InvalidArgument"), Error);
  }
}

TEST_CASE("the flow presentation symmetrizes the edge relators") {
  CayleyBall ball = z2_ball(2);
  FlowFunction ff = rewriting_flow(rs_z2(), ball);
  Presentation p = flow_presentation(ff, ball);
  auto W = [&](const char* s) { return ball.alphabet().parse_word(s); };
  CHECK(p.is_relator(W("b a B A")));
  CHECK(p.is_relator(W("B a b A")));
  CHECK(p.is_relator(W("a A")));
  CHECK(p.is_relator(W("B b")));
  CHECK(!p.is_relator(W("a a B A")));
  // four cancellation bigons plus the eight commutator words
  CHECK(p.relators.size() == 12);
}

TEST_CASE("the tree path property fails on a vertex off its normal form") {
  CayleyBall ball = z2_ball(2);
  auto W = [&](const char* s) { return ball.alphabet().parse_word(s); };
  Arena arena(ball);
  const int base = arena.add_vertex(0);
  const int v1 = arena.add_vertex(vertex(ball, "a"));
  const int v2 = arena.add_vertex(vertex(ball, "a b"));
  const int v3 = arena.add_vertex(vertex(ball, "b"));
  const int e0 = arena.add_edge(base, v1, letter(ball, "a"));
  const int e1 = arena.add_edge(v1, v2, letter(ball, "b"));
  const int e2 = arena.add_edge(v2, v3, letter(ball, "A"));
  const std::vector<int> bnd{e0, e1, e2, e2 ^ 1, e1 ^ 1, e0 ^ 1};
  Diagram d = arena.compact(bnd, base);
  // the b-labeled vertex hangs off the far corner, so no path reading
  // "b" from the basepoint reaches it
  auto problems = check_tree_path_property(d, ball);
  REQUIRE(problems.size() == 1);
  CHECK(problems[0].find(ball.alphabet().format_word(W("b"))) != std::string::npos);
}

TEST_CASE("finite fillings tile a word with catalog discs") {
  RewritingSystem rs = z3_rs();
  CayleyBall ball = build_ball(oracle_from_rs(rs), rs.alphabet(), 2);
  REQUIRE(ball.boundary_complete());
  REQUIRE(ball.vertex_count() == 3);
  FlowFunction ff = rewriting_flow(rs, ball);
  NDiagramBuilder builder(ff, ball);
  auto W = [&](const char* s) { return ball.alphabet().parse_word(s); };

  FillingCatalog cat = FillingCatalog::build(builder, 3);
  CHECK(cat.entries().size() == 4);
  CHECK(cat.find(W("a A")) != nullptr);
  CHECK(cat.find(W("A a")) != nullptr);
  CHECK(cat.find(W("a a a")) != nullptr);
  CHECK(cat.find(W("A A A")) != nullptr);
  CHECK(cat.find(W("a a")) == nullptr);
  CHECK(cat.max_intrinsic_diameter() == 1);
  CHECK(cat.find(W("a a a"))->face_count() == 1);

  Presentation p = flow_presentation(ff, ball);

  Filling f = build_finite_filling(W("a a a a a a"), cat, ball);
  CHECK(f.diagram.vertex_count() == 5);
  CHECK(f.diagram.edge_count() == 6);
  CHECK(f.diagram.face_count() == 2);
  CHECK(f.diagram.euler_characteristic() == 1);
  CHECK(f.diagram.boundary_word() == W("a a a a a a"));
  ValidationReport rep = validate_diagram(f.diagram, ball, p);
  CAPTURE(rep.problems);
  CHECK(rep.passed);
  REQUIRE(f.spokes.size() == 7);
  const std::vector<int> bverts = boundary_vertices(f.diagram);
  for (size_t i = 0; i < f.spokes.size(); ++i) {
    CHECK(f.spokes[i].size() == i);
    CHECK(walk_end(f.diagram, f.spokes[i], f.diagram.basepoint()) == bverts[i]);
  }
  REQUIRE(f.edge_combing.size() == 6);
  for (size_t i = 0; i < f.edge_combing.size(); ++i) {
    CHECK(f.edge_combing[i].back() ==
          CellRef{CellRef::Kind::Edge, Diagram::undirected(f.diagram.boundary()[i])});
  }

  // Folding only: the filled word collapses to a tripod.
  Filling t = build_finite_filling(W("A a a a A A"), cat, ball);
  CHECK(t.diagram.vertex_count() == 4);
  CHECK(t.diagram.edge_count() == 3);
  CHECK(t.diagram.face_count() == 0);
  CHECK(t.diagram.euler_characteristic() == 1);
  CHECK(t.diagram.boundary_word() == W("A a a a A A"));
  CHECK(validate_diagram(t.diagram, ball, p).passed);

  FillingCatalog small = FillingCatalog::build(builder, 2);
  CHECK_THROWS_WITH_AS(build_finite_filling(W("a a a a a a"), small, ball),
                       doctest::Contains("CatalogIncomplete"), Error);
  CHECK_THROWS_WITH_AS(build_finite_filling(W("a a"), cat, ball),
                       doctest::Contains("NotIdentity"), Error);
  CHECK_THROWS_WITH_AS(build_finite_filling(W("a a"), cat, z2_ball(2)),
                       doctest::Contains("InvalidArgument"), Error);

  Filling e = build_finite_filling(Word(), cat, ball);
  CHECK(e.diagram.vertex_count() == 1);
  CHECK(e.spokes.size() == 1);
}

TEST_CASE("ladder diagrams over commuting edges") {
  CayleyBall ball = z2_ball(4);
  auto W = [&](const char* s) { return ball.alphabet().parse_word(s); };
  Presentation rungs = make_presentation(ball.alphabet(), trivial_words(ball, 6));

  NDiagram th = build_thin_diagram(ball, vertex(ball, "b"), letter(ball, "a"), 2);
  CHECK(th.diagram.vertex_count() == 5);
  CHECK(th.diagram.edge_count() == 6);
  CHECK(th.diagram.face_count() == 2);
  CHECK(th.diagram.euler_characteristic() == 1);
  CHECK(th.diagram.boundary_word() == W("b a B A"));
  CHECK(walk_word(th.diagram, th.src_path) == W("b"));
  CHECK(walk_word(th.diagram, th.dst_path) == W("a b"));
  CHECK(th.diagram.label(th.hat_edge) == letter(ball, "a"));
  CHECK(th.diagram.face_word(0) == W("b a B A"));
  CHECK(th.diagram.face_word(1) == W("a B b A"));
  ValidationReport rep = validate_diagram(th.diagram, ball, rungs);
  CAPTURE(rep.problems);
  CHECK(rep.passed);
  REQUIRE(th.to_edge.size() == 5);
  CHECK(th.to_edge[0] == CellRef{CellRef::Kind::Vertex, th.diagram.basepoint()});
  CHECK(th.to_edge[1].kind == CellRef::Kind::Face);
  CHECK(th.to_edge[2].kind == CellRef::Kind::Edge);
  CHECK(th.to_edge[3].kind == CellRef::Kind::Face);
  CHECK(th.to_edge[4] ==
        CellRef{CellRef::Kind::Edge, Diagram::undirected(th.hat_edge)});

  NDiagram tall = build_thin_diagram(ball, vertex(ball, "b b"), letter(ball, "a"), 2);
  CHECK(tall.diagram.vertex_count() == 8);
  CHECK(tall.diagram.edge_count() == 10);
  CHECK(tall.diagram.face_count() == 3);
  CHECK(tall.diagram.euler_characteristic() == 1);
  CHECK(tall.diagram.boundary_word() == W("b b a B B A"));
  CHECK(validate_diagram(tall.diagram, ball, rungs).passed);

  // Tree edges fold down to one segment in both orientations.
  NDiagram down = build_thin_diagram(ball, 0, letter(ball, "a"), 2);
  CHECK(down.diagram.edge_count() == 1);
  CHECK(down.diagram.face_count() == 0);
  CHECK(down.diagram.boundary_word() == W("a A"));
  CHECK(down.diagram.label(down.hat_edge) == letter(ball, "a"));
  NDiagram up = build_thin_diagram(ball, vertex(ball, "a"), letter(ball, "A"), 2);
  CHECK(up.diagram.edge_count() == 1);
  CHECK(up.diagram.face_count() == 0);
  CHECK(walk_word(up.diagram, up.src_path) == W("a"));
  CHECK(up.dst_path.empty());

  CHECK_THROWS_WITH_AS(build_thin_diagram(ball, vertex(ball, "b"), letter(ball, "a"), 1),
                       doctest::Contains("FellowTravelerViolation"), Error);
}

TEST_CASE("the level flow builds the same square and seashells cleanly") {
  CayleyBall ball = z2_ball(4);
  FlowFunction ff = ac_flow(ball, 4);
  NDiagramBuilder builder(ff, ball);
  auto W = [&](const char* s) { return ball.alphabet().parse_word(s); };

  const NDiagram& sq = builder.edge_diagram(vertex(ball, "b"), letter(ball, "a"));
  CHECK(sq.diagram.vertex_count() == 4);
  CHECK(sq.diagram.edge_count() == 4);
  CHECK(sq.diagram.face_count() == 1);
  CHECK(sq.diagram.boundary_word() == W("b a B A"));
  CHECK(validate_diagram(sq.diagram, ball, flow_presentation(ff, ball)).passed);
  CHECK(check_tree_path_property(sq.diagram, ball).empty());

  Filling f = builder.seashell(W("a a b A A B"));
  CHECK(f.diagram.euler_characteristic() == 1);
  CHECK(f.diagram.boundary_word() == W("a a b A A B"));
  ValidationReport rep = validate_diagram(f.diagram, ball, flow_presentation(ff, ball));
  CAPTURE(rep.problems);
  CHECK(rep.passed);
  CHECK(check_tree_path_property(f.diagram, ball).empty());
}
