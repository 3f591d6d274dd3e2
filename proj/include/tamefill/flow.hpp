#pragma once

#include <tuple>

#include "tamefill/cayley.hpp"

namespace tamefill {

// Assignment for one directed edge e: the label of the replacement
// path ff(e), plus the factorization label = x_g^-1 c_e x_h recorded
// as the two suffix lengths. usable means the traced path stays
// inside the ball; diagram construction refuses unusable edges.
struct FlowEdge {
  Word label;
  bool assigned = false;
  bool usable = false;
  int split_xg = 0;
  int split_xh = 0;
};

class FlowFunction {
 public:
  FlowFunction(int vertex_count, int alphabet_size)
      : letters_(alphabet_size),
        edges_(static_cast<size_t>(vertex_count) * static_cast<size_t>(alphabet_size)) {}

  const FlowEdge& edge(int v, Letter a) const { return edges_.at(index(v, a)); }
  bool assigned(int v, Letter a) const { return edges_.at(index(v, a)).assigned; }

  void assign(int v, Letter a, Word label, int split_xg, int split_xh, bool usable) {
    FlowEdge& fe = edges_.at(index(v, a));
    fe.label = std::move(label);
    fe.assigned = true;
    fe.usable = usable;
    fe.split_xg = split_xg;
    fe.split_xh = split_xh;
    bound_k_ = std::max(bound_k_, static_cast<int>(fe.label.size()));
  }

  // Max assigned path length (F3 constant). Settable so verification
  // of hand-built assignments can be exercised.
  int bound_k() const { return bound_k_; }
  void set_bound_k(int k) { bound_k_ = k; }

 private:
  size_t index(int v, Letter a) const {
    return static_cast<size_t>(v) * static_cast<size_t>(letters_) +
           static_cast<size_t>(static_cast<unsigned char>(a));
  }

  int letters_;
  std::vector<FlowEdge> edges_;
  int bound_k_ = 0;
};

// ff(e) = e on every inside edge. Valid but silent: its descent
// relation is empty (an edge is never strictly below itself).
FlowFunction identity_flow(const CayleyBall& ball);

// The rewriting flow of a complete minimal system: tree edges fix
// themselves; otherwise the unique rule u a -> v applying at the end
// of y_g a gives the path labeled u^-1 v. Requires the ball tree to be
// the normal-form tree. Throws NoApplicableRule when the system and
// the ball disagree (incomplete system).
FlowFunction rewriting_flow(const RewritingSystem& rs, const CayleyBall& ball);

// The almost-convexity flow with constant k: tree edges fix
// themselves; a same-level edge takes the shortlex-least shortest
// path inside its ball level; an edge between levels n and n+1 splits
// y_(ga) = y' b and routes through the inside path joining the two
// sphere points, pre/post-composed with the tree edge labeled b.
// Requires geodesic normal forms. Throws NotAlmostConvex (with the
// witness pair) when no inside path of length <= k exists.
FlowFunction ac_flow(const CayleyBall& ball, int k);

enum class FlowViolationKind {
  Unassigned,    // inside edge without a label
  WrongEndpoint, // traced path ends elsewhere (F1)
  TreeEdgeMoved, // degenerate edge with label != its own (F2d)
  OverBound,     // label longer than bound_k (F3)
};

const char* flow_violation_name(FlowViolationKind k);

struct FlowViolation {
  FlowViolationKind kind;
  int v;
  Letter a;
};

// Strict descent pairs (e', e): e' is a recursive edge distinct from e
// on the traced path ff(e), both as canonical undirected edges.
struct DescentRelation {
  std::vector<std::pair<CayleyBall::DirEdge, CayleyBall::DirEdge>> pairs;
  bool acyclic = true;
  std::vector<CayleyBall::DirEdge> cycle;  // witness when not acyclic
};

struct FlowReport {
  bool passed = false;
  std::vector<FlowViolation> violations;
  DescentRelation descent;
  int bound_k = 0;
  int unusable = 0;  // assigned edges whose paths exit the ball
};

// Checks F1 by path tracing, F2d against the ball tree, F3 against
// bound_k, and finite well-foundedness (acyclicity) of the descent
// relation. Throws DanglingEdge if an edge marked usable exits the
// ball; edges marked unusable are skipped and counted.
FlowReport verify_flow(const FlowFunction& ff, const CayleyBall& ball);

// S_ff rows (y_g, a, label(ff(e))) over assigned inside edges, sorted
// by (vertex id, letter).
std::vector<std::tuple<Word, Letter, Word>> flow_triples(const FlowFunction& ff,
                                                         const CayleyBall& ball);

}  // namespace tamefill
