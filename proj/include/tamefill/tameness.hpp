#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tamefill/build.hpp"
#include "tamefill/cayley.hpp"
#include "tamefill/diagram.hpp"
#include "tamefill/rewrite.hpp"
#include "tamefill/word.hpp"

namespace tamefill {

// Nondecreasing step function on the quarter grid. f(x) is the value of
// the largest breakpoint with key <= x, and 0 below the first key.
// Canonical form: keys strictly increasing, values strictly increasing,
// no zero-value breakpoints.
struct StepFunction {
  std::vector<std::pair<Q4, Q4>> breakpoints;

  Q4 operator()(Q4 x) const;
  bool constant() const { return breakpoints.size() <= 1; }
  Q4 max_value() const;
};

StepFunction minimal_monotone(const std::map<Q4, Q4>& constraints);

// Collects the tameness constraints of combing samples: a point reached
// at parameter t bounds every point passed at parameter s <= t, so each
// cell of a sample constrains f at its value by the prefix maximum.
class TamenessMeter {
 public:
  void add_path(const DiagramProfile& prof, const PathSample& path);
  // Vertex walks from the basepoint, as produced in Filling::spokes.
  void add_walk(const Diagram& d, const DiagramProfile& prof,
                const std::vector<int>& walk);
  // A filling's full sample set: one walk per boundary vertex plus one
  // path per boundary edge.
  void add_filling(const Diagram& d, const DiagramProfile& prof,
                   const Filling& f);
  // An edge diagram's sample set: both boundary side walks and the path
  // into the distinguished edge.
  void add_edge_diagram(const DiagramProfile& prof, const NDiagram& nd);

  StepFunction result() const { return minimal_monotone(constraints_); }

 private:
  std::map<Q4, Q4> constraints_;
};

// Convenience: measure one filling in one profile.
StepFunction measure_tameness(const Diagram& d, const DiagramProfile& prof,
                              const Filling& f);

// Radius-indexed bound tables. k_ti(n) is the longest normal form over
// the n-ball, k_te(n) the farthest element visited by those normal
// forms, k_xi/k_xe the largest intrinsic/extrinsic edge-diagram
// diameters over recursive edges rooted in the n-ball. mu_i/mu_e
// combine them per compute_mus.
struct BoundSuite {
  StepFunction k_ti, k_te, k_xi, k_xe;
  StepFunction mu_i, mu_e;
  int n_max = -1;  // kappa tables valid on [0, n_max]
  int mu_max = -1; // mu tables valid on [0, mu_max]
  int rho = 0;     // relator-length constant used by the mus

  // Exact quarter-grid evaluation:
  // mu_i(x) = max{k_ti(ceil(x)+1)+1, x+1, k_xi(ceil(x)+rho+1)+1}.
  Q4 mu_intrinsic(Q4 x) const;
  Q4 mu_extrinsic(Q4 x) const;
};

BoundSuite compute_kappas(NDiagramBuilder& builder, int n_max);

// Fills mu_i/mu_e from the kappa tables; rho is the longest relator
// length of the flow presentation. Needs kappas beyond rho + 1.
void compute_mus(BoundSuite& suite, int rho);

// Normal forms encountered while unfolding the flow across the edge
// from w by a, and k(w,a) = the longest of them.
struct LeResult {
  std::set<Word, ShortlexLess> words;
  int k = 0;
};

LeResult compute_Le(const Word& w, Letter a, const FlowFunction& ff,
                    const CayleyBall& ball);

// max k(y_g, a) over g in the n-ball and all letters a.
int k_r_prime(int n, const FlowFunction& ff, const CayleyBall& ball);

// Longest rule side, the rewriting growth constant.
int longest_rule(const RewritingSystem& rs);

// gamma(n + rho + 2) + 1 with rho = longest_rule(rs).
int rsgrowth_bound(const RewritingSystem& rs, int n);

// t_i(n) = longest normal-form prefix lying in the n-ball; t_e(n) = the
// farthest element visited by such prefixes.
std::pair<StepFunction, StepFunction> compute_t_functions(const CayleyBall& ball,
                                                          int n_max);

struct DiameterCheckItem {
  Word word;
  int idiam = 0;
};

struct DiameterBoundReport {
  bool passed = true;
  int checked = 0;
  std::vector<std::string> failures;
};

// Verifies idiam(D_w) <= ceil(f(l(w)/2)) for each item.
DiameterBoundReport check_diameter_bound(const std::vector<DiameterCheckItem>& items,
                                         const StepFunction& f,
                                         const Alphabet& ab);

}  // namespace tamefill
