#pragma once

#include <compare>

#include "tamefill/cayley.hpp"

namespace tamefill {

// A point class of a diagram: a vertex, an (undirected) open edge, or
// an open 2-cell.
struct CellRef {
  enum class Kind { Vertex, Edge, Face };
  Kind kind;
  int id;
  auto operator<=>(const CellRef&) const = default;
};

// A finite combinatorial disc over a ball: vertices carry projections
// (ball vertex ids), directed edges come in twin pairs d <-> d^1 (the
// low bit), faces and the outer boundary are closed walks of directed
// edges. Instances are produced by Arena::compact and are immutable.
class Diagram {
 public:
  Diagram() = default;  // empty; meaningful instances come from Arena::compact

  int vertex_count() const { return static_cast<int>(vproj_.size()); }
  int edge_count() const { return static_cast<int>(esrc_.size() / 2); }
  int face_count() const { return static_cast<int>(faces_.size()); }
  int basepoint() const { return basepoint_; }
  int projection(int v) const { return vproj_.at(static_cast<size_t>(v)); }
  int src(int d) const { return esrc_.at(static_cast<size_t>(d)); }
  int dst(int d) const { return esrc_.at(static_cast<size_t>(d ^ 1)); }
  Letter label(int d) const { return elab_.at(static_cast<size_t>(d)); }
  static int twin(int d) { return d ^ 1; }
  static int undirected(int d) { return d >> 1; }
  const std::vector<int>& face(int f) const { return faces_.at(static_cast<size_t>(f)); }
  const std::vector<int>& boundary() const { return boundary_; }
  Word face_word(int f) const;
  Word boundary_word() const;
  int euler_characteristic() const {
    return vertex_count() - edge_count() + face_count();
  }
  // The same disc with the boundary walked the other way round.
  Diagram reversed_boundary() const;

 private:
  friend class Arena;

  std::vector<int> vproj_;
  std::vector<int> esrc_;  // size 2E; entry d^1 holds the endpoint of d
  std::vector<Letter> elab_;
  std::vector<std::vector<int>> faces_;
  std::vector<int> boundary_;
  int basepoint_ = 0;
};

// Directed edge ids grouped by source vertex, ascending.
std::vector<std::vector<int>> outgoing_edges(const Diagram& d);

struct CompactMaps {
  std::vector<int> vertex;  // arena vertex id -> dense id
  std::vector<int> edge;    // arena directed id -> dense directed id
};

struct Imported {
  std::vector<int> boundary;  // the imported boundary walk, arena ids
  int basepoint = -1;
  std::vector<int> vertices;  // dense id in the source -> arena id
  std::vector<int> edges;     // dense directed id -> arena directed id
  int face_offset = 0;
};

// Mutable builder. Vertices and directed edges live in union-find
// classes so that paths can be glued; twins are always merged in
// lockstep, so d ^ 1 stays the reversal throughout.
class Arena {
 public:
  explicit Arena(const CayleyBall& ball) : ball_(&ball) {}

  const CayleyBall& ball() const { return *ball_; }

  int add_vertex(int proj);
  // Fresh twin pair src -> dst labeled a; returns the even direction.
  int add_edge(int src, int dst, Letter a);
  int add_face(std::vector<int> cycle);

  int find_vertex(int v) const;
  int find_edge(int d) const;
  int src(int d) const;
  int dst(int d) const;
  Letter label(int d) const;
  int projection(int v) const;
  int vertex_count() const { return static_cast<int>(vparent_.size()); }

  // Gluing. Edges merge source with source; projections and labels
  // must agree, and an edge never merges with its own reversal.
  void merge_vertices(int v1, int v2);
  void merge_edges(int d1, int d2);

  // Copies a diagram in, left-translating every projection by the
  // given word (empty = no translation). Throws BallTooSmall when a
  // translated projection leaves the ball.
  Imported import(const Diagram& d, const Word& translate);

  Diagram compact(const std::vector<int>& boundary, int basepoint,
                  CompactMaps* maps = nullptr) const;

 private:
  int find(std::vector<int>& parent, int x) const;

  const CayleyBall* ball_;
  mutable std::vector<int> vparent_;
  std::vector<int> vproj_;
  mutable std::vector<int> eparent_;  // over directed ids
  std::vector<int> esrc_;             // raw source vertex per directed id
  std::vector<Letter> elab_;
  std::vector<std::vector<int>> faces_;
};

struct ValidationReport {
  bool passed = false;
  std::vector<std::string> problems;
};

// Structural checks: projections consistent with the ball, connected,
// Euler characteristic 1, faces labeled by relators, boundary a closed
// walk at the basepoint, and every undirected edge incident to exactly
// two sides among face cycles and the boundary walk.
ValidationReport validate_diagram(const Diagram& d, const CayleyBall& ball,
                                  const Presentation& p);

// Coarse distances in quarter units: vertices are path distances
// (residue 0 mod 4), open edges sit half a unit above their nearer
// endpoint (residue 2), open faces a quarter below their farthest
// boundary edge (residue 1).
struct DiagramProfile {
  std::vector<Q4> vertex;
  std::vector<Q4> edge;
  std::vector<Q4> face;
  std::vector<bool> face_collapsed;  // extrinsic only: cell image degenerate
  int diameter = 0;                  // max vertex distance, whole units
};

DiagramProfile intrinsic_profile(const Diagram& d);
DiagramProfile extrinsic_profile(const Diagram& d, const CayleyBall& ball);

Q4 cell_value(const DiagramProfile& p, CellRef c);

}  // namespace tamefill
