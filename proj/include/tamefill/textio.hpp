#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tamefill/build.hpp"
#include "tamefill/cayley.hpp"
#include "tamefill/diagram.hpp"
#include "tamefill/flow.hpp"
#include "tamefill/rewrite.hpp"
#include "tamefill/word.hpp"

namespace tamefill {

// Result of reading the presentation text format. The system is
// present iff the input had at least one rule line.
struct ParsedInput {
  Presentation presentation;
  std::optional<RewritingSystem> system;
};

// Line-oriented UTF-8 text; `#` starts a comment, tokens split on
// whitespace. Directives:
//   generators: a A b B     letter names in index order
//   inverses: a A, b B      comma-separated pairs; unpaired letters
//                           are their own inverses
//   relator: a b A B        symmetrized into the presentation
//   rule: b a -> a b        the token "1" denotes the empty word
// Paired letters must be adjacent in the generators list so indices
// survive a round trip. Throws ParseError naming the offending line.
ParsedInput parse_presentation_file(const std::string& text,
                                    long step_budget = kDefaultStepBudget,
                                    long node_budget = kDefaultNodeBudget);

// Inverse of the parser on the fields that matter:
// parse_presentation_file(print_input(in)) reproduces the alphabet,
// the relators, and the rules (budgets reset to defaults).
std::string print_presentation(const Presentation& p);
std::string print_input(const ParsedInput& in);

// Words render space-separated; the empty word renders as "1".
std::string display_word(const Alphabet& ab, const Word& w);

// {"radius", "boundary_complete", "vertices": [{id, nf, dist}],
//  "edges": [{src, label, dst, tree}]}; canonical undirected edges in
// (src, label) order. Output is stable across runs.
std::string ball_json(const CayleyBall& ball);

// Undirected graph, vertices labeled by normal form, tree edges thick.
std::string ball_dot(const CayleyBall& ball);

// One line "w<TAB>a<TAB>label" per assigned directed edge, ordered by
// (vertex id, letter).
std::string flow_table(const FlowFunction& ff, const CayleyBall& ball);

// {"vertices": [{id, nf, dist}], "edges": [{id, src, dst, label,
//  tree}], "faces": [{id, edges}], "boundary": [directed ids],
//  "profile": {cell id -> quarters}} with cell ids "v0"/"e0"/"f0".
std::string diagram_json(const Diagram& d, const CayleyBall& ball,
                         const DiagramProfile& prof);

// Straight-line drawing: boundary vertices on a circle, interior
// vertices at iterated neighbor averages.
std::string diagram_svg(const Diagram& d, const Alphabet& ab);

// Combing paths keyed by boundary sample: "vertex_i" holds the spoke
// to the i-th boundary vertex, "edge_i" the path into the i-th
// boundary edge. Values are cell id sequences.
std::string combing_json(const Filling& f);

// Keys "src_path", "dst_path", "to_edge".
std::string combing_json(const NDiagram& nd);

struct TamenessCsvRow {
  Q4 x;
  Q4 f;
  std::optional<Q4> bound;
};

// Header x_quarters,f_quarters,bound_quarters; a missing bound is an
// empty field. Values are raw quarter counts.
std::string tameness_csv(const std::vector<TamenessCsvRow>& rows);

}  // namespace tamefill
