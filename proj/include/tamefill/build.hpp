#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>

#include "tamefill/diagram.hpp"
#include "tamefill/flow.hpp"

namespace tamefill {

// A combing path recorded as the cells it passes through, starting at
// the basepoint vertex and alternating vertex/edge (possibly entering
// a face just before its far edge). Coarse distances of a sample come
// from a DiagramProfile via cell_value.
using PathSample = std::vector<CellRef>;

// Sample of a vertex-to-vertex walk (directed edge ids). start is the
// source vertex of the walk, used when the walk is empty.
PathSample walk_sample(const Diagram& d, const std::vector<int>& walk, int start);

// Edge diagram: boundary reads y_src a y_dst^-1 from the basepoint.
// src_path and dst_path are the two boundary sides (directed edge
// ids); hat_edge is the directed a-edge between their endpoints.
// to_edge is the combing path into the interior of the hat edge.
struct NDiagram {
  Diagram diagram;
  std::vector<int> src_path;
  std::vector<int> dst_path;
  PathSample to_edge;
  int hat_edge = -1;
};

// Filling of a trivial word w: boundary reads w from the basepoint.
// spokes[i] is the combing walk to the i-th boundary vertex (n+1
// walks, first and last empty); edge_combing[i] ends at the interior
// of the i-th boundary edge.
struct Filling {
  Diagram diagram;
  std::vector<std::vector<int>> spokes;
  std::vector<PathSample> edge_combing;
};

// Vertices along the boundary walk, basepoint first and last.
std::vector<int> boundary_vertices(const Diagram& d);

// Presentation whose relators are label(ff(e)) a^-1 over the assigned
// inside edges. Tree edges contribute the cancellation bigons a a^-1.
Presentation flow_presentation(const FlowFunction& ff, const CayleyBall& ball);

// Checks that every diagram vertex is reachable from the basepoint by
// a path reading the normal form of its projection. Returns one line
// per failing vertex, empty when the property holds.
std::vector<std::string> check_tree_path_property(const Diagram& d,
                                                  const CayleyBall& ball);

// Builds edge diagrams recursively along the flow, memoized per
// undirected edge; the reverse orientation is served as the mirror
// (reversed boundary, swapped sides). seashell glues the diagrams of
// the edges along a trivial word's path, sharing the normal-form
// walls, into a Filling of the word.
class NDiagramBuilder {
 public:
  NDiagramBuilder(const FlowFunction& ff, const CayleyBall& ball);

  const CayleyBall& ball() const { return *ball_; }

  // Throws CycleDetected on re-entrant flow recursion, BallTooSmall
  // when a needed label path or word path exits the ball.
  const NDiagram& edge_diagram(int v, Letter a);

  // Throws NotIdentity unless w normalizes to the empty word,
  // NonSimpleNormalForm when a gluing wall repeats a vertex.
  Filling seashell(const Word& w);

 private:
  struct Chain {
    explicit Chain(const CayleyBall& ball) : arena(ball) {}
    Arena arena;
    std::vector<int> left_path;
    std::vector<int> right_path;
    std::vector<int> arc;
    std::vector<std::vector<int>> spokes;
    std::vector<PathSample> arc_samples;  // edge cells hold directed arena ids
    int basepoint = -1;
  };

  Chain glue_chain(int start, const Word& w);
  NDiagram build(int v, Letter a);
  NDiagram degenerate(int v, Letter a, int u);

  const FlowFunction* ff_;
  const CayleyBall* ball_;
  std::map<std::pair<int, Letter>, NDiagram> memo_;
  std::set<std::pair<int, Letter>> in_progress_;
};

// Fillings for every trivial word up to max_length, indexed by word.
class FillingCatalog {
 public:
  static FillingCatalog build(NDiagramBuilder& builder, int max_length);

  const Diagram* find(const Word& w) const;
  int max_length() const { return max_length_; }
  int max_intrinsic_diameter() const;
  const std::map<Word, Diagram, ShortlexLess>& entries() const { return entries_; }

 private:
  std::map<Word, Diagram, ShortlexLess> entries_;
  int max_length_ = 0;
};

// Fills a trivial word over a finite group by repeatedly gluing the
// catalog diagram of the earliest-ending minimal trivial subword onto
// the word path, translated to the subword's start. The ball must
// cover the whole group (boundary_complete). The combing walks run
// along the boundary prefix, so every sampled cell sits within half
// the word length of the basepoint. Throws CatalogIncomplete when a
// needed subword diagram is missing.
Filling build_finite_filling(const Word& u, const FillingCatalog& catalog,
                             const CayleyBall& ball);

// Ladder diagram over the edge (v, a): rung i joins the length-i
// prefixes of the two normal forms by the shortlex-least inside
// geodesic (length <= K, else FellowTravelerViolation), the last rung
// is the edge itself, and consecutive rungs bound one cell. Shared
// normal-form prefixes fold onto one rail, and an edge inside the
// tree folds down to a bare segment. to_edge sweeps rung to rung
// through every cell.
NDiagram build_thin_diagram(const CayleyBall& ball, int v, Letter a, int K);

}  // namespace tamefill
