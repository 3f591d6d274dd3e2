#pragma once

#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include "tamefill/rewrite.hpp"
#include "tamefill/word.hpp"

namespace tamefill {

// Maps any word to the canonical normal form of the group element it
// represents. The oracle IS the group: vertices are keyed by its output.
using NormalFormOracle = std::function<Word(const Word&)>;

NormalFormOracle oracle_from_rs(const RewritingSystem& rs);

struct GroupElement {
  Word nf;
  int dist;  // path-metric distance to the identity vertex
};

// The radius-n ball of the Cayley graph. Vertex 0 is the identity;
// ids are assigned level by level, shortlex within each level. Edges
// whose far endpoint lies outside the ball dangle (target kOutside).
class CayleyBall {
 public:
  static constexpr int kOutside = -1;

  int radius() const { return radius_; }
  const Alphabet& alphabet() const { return alphabet_; }
  const NormalFormOracle& oracle() const { return oracle_; }

  int vertex_count() const { return static_cast<int>(verts_.size()); }
  const GroupElement& vertex(int v) const { return verts_.at(v); }
  const Word& nf(int v) const { return verts_.at(v).nf; }
  int dist(int v) const { return verts_.at(v).dist; }
  int find(const Word& normal_form) const;  // kOutside if absent

  int neighbor(int v, Letter a) const;

  // Undirected tree membership of the edge leaving v by a.
  bool tree_edge(int v, Letter a) const;
  int tree_parent(int v) const { return parent_.at(v); }
  Letter tree_parent_letter(int v) const { return parent_letter_.at(v); }

  bool nf_tree() const { return nf_tree_; }
  bool prefix_closed() const { return prefix_closed_; }
  bool boundary_complete() const { return boundary_complete_; }

  std::vector<int> sphere(int m) const;  // RadiusExceeded if m > radius

  struct DirEdge {
    int src;
    Letter label;

    bool operator==(const DirEdge&) const = default;
  };

  // The canonical orientation of the undirected edge containing
  // (v, a): source at the shortlex-least endpoint; loops take the
  // smaller of the two labels.
  DirEdge canonical(int v, Letter a) const;

  // All fully inside undirected edges, one canonical orientation each,
  // sorted by (src, label).
  std::vector<DirEdge> undirected_edges() const;

  friend CayleyBall build_ball(NormalFormOracle oracle, Alphabet alphabet, int radius);

 private:
  Alphabet alphabet_;
  NormalFormOracle oracle_;
  int radius_ = 0;
  std::vector<GroupElement> verts_;
  std::vector<std::vector<int>> adj_;  // adj_[v][letter]
  std::vector<int> parent_;            // tree parent vertex, -1 at basepoint
  std::vector<Letter> parent_letter_;  // letter read from parent to child
  std::vector<int> level_offset_;      // level_offset_[d] = first id at distance d
  std::unordered_map<Word, int> index_;
  bool nf_tree_ = false;
  bool prefix_closed_ = false;
  bool boundary_complete_ = false;
};

// Breadth-first enumeration from the identity. Throws OracleFailure if
// the oracle throws, InconsistentOracle if it moves the basepoint, is
// not idempotent on a vertex, or yields asymmetric adjacency.
CayleyBall build_ball(NormalFormOracle oracle, Alphabet alphabet, int radius);

// True iff every prefix of every normal form in B(radius) is fixed by
// the oracle.
bool check_prefix_closed(const NormalFormOracle& oracle, const Alphabet& alphabet, int radius);

// Vertex ids visited when reading w from vertex `start`; size l(w)+1.
// nullopt if the path leaves the ball.
std::optional<std::vector<int>> trace_path(const CayleyBall& ball, int start, const Word& w);

// Shortlex-least shortest path from u to v through vertices at
// distance <= level only. nullopt if v is unreachable inside.
std::optional<Word> shortlex_geodesic_inside(const CayleyBall& ball, int u, int v, int level);

struct AlmostConvexResult {
  bool passed = true;
  int n = 0;
  int k = 0;
  // First failing pair, ids in S(n); inside_dist absent when g and h
  // are disconnected inside B(n).
  int g = -1;
  int h = -1;
  std::optional<int> inside_dist;
};

// For every pair g, h in S(n) with d(g,h) <= 2, finds the shortest
// path from g to h inside B(n). Passes iff all such paths have length
// <= k. Requires radius >= n+1 so every distance-2 witness is visible.
AlmostConvexResult check_almost_convex(const CayleyBall& ball, int n, int k);

struct FellowTravelerResult {
  bool passed = true;
  int K = 0;
  int max_distance = 0;  // max synchronous distance observed
  int checked_level = 0;  // edges with both endpoints in B(checked_level)
  // First violating edge and prefix index.
  int g = -1;
  Letter a = 0;
  int index = -1;
};

// Synchronous fellow-traveler check of the normal forms: for each
// edge with both endpoints in B(radius-K), distances between length-i
// prefixes (padded at the ends) must stay <= K. Restricting paths to
// the ball is exact at that level.
FellowTravelerResult check_fellow_traveler(const CayleyBall& ball, int K);

}  // namespace tamefill
