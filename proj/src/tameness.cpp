#include "tamefill/tameness.hpp"

#include <algorithm>

namespace tamefill {

Q4 StepFunction::operator()(Q4 x) const {
  auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), x,
                             [](Q4 v, const std::pair<Q4, Q4>& b) { return v < b.first; });
  if (it == breakpoints.begin()) return Q4{0};
  return std::prev(it)->second;
}

Q4 StepFunction::max_value() const {
  return breakpoints.empty() ? Q4{0} : breakpoints.back().second;
}

StepFunction minimal_monotone(const std::map<Q4, Q4>& constraints) {
  StepFunction f;
  Q4 run{0};
  for (const auto& [x, v] : constraints) {
    if (v > run) {
      run = v;
      f.breakpoints.emplace_back(x, v);
    }
  }
  return f;
}

void TamenessMeter::add_path(const DiagramProfile& prof, const PathSample& path) {
  Q4 run{0};
  for (CellRef c : path) {
    const Q4 v = cell_value(prof, c);
    run = std::max(run, v);
    Q4& slot = constraints_[v];
    slot = std::max(slot, run);
  }
}

void TamenessMeter::add_walk(const Diagram& d, const DiagramProfile& prof,
                             const std::vector<int>& walk) {
  add_path(prof, walk_sample(d, walk, d.basepoint()));
}

void TamenessMeter::add_filling(const Diagram& d, const DiagramProfile& prof,
                                const Filling& f) {
  for (const auto& s : f.spokes) add_walk(d, prof, s);
  for (const auto& p : f.edge_combing) add_path(prof, p);
}

void TamenessMeter::add_edge_diagram(const DiagramProfile& prof, const NDiagram& nd) {
  add_walk(nd.diagram, prof, nd.src_path);
  add_walk(nd.diagram, prof, nd.dst_path);
  add_path(prof, nd.to_edge);
}

StepFunction measure_tameness(const Diagram& d, const DiagramProfile& prof,
                              const Filling& f) {
  TamenessMeter m;
  m.add_filling(d, prof, f);
  return m.result();
}

namespace {

StepFunction table_to_step(const std::vector<int>& table) {
  std::map<Q4, Q4> c;
  for (size_t n = 0; n < table.size(); ++n)
    c[q4_of_int(static_cast<int>(n))] = q4_of_int(table[n]);
  return minimal_monotone(c);
}

int step_at_int(const StepFunction& f, int n) { return f(q4_of_int(n)).q / 4; }

void prefix_max(std::vector<int>& table) {
  for (size_t i = 1; i < table.size(); ++i) table[i] = std::max(table[i], table[i - 1]);
}

}  // namespace

BoundSuite compute_kappas(NDiagramBuilder& builder, int n_max) {
  const CayleyBall& ball = builder.ball();
  if (n_max < 0) fail(Errc::InvalidArgument, "negative table range");
  if (ball.radius() < n_max + 1)
    fail(Errc::MissingDiagram,
         "edge diagrams rooted at " + std::to_string(n_max) +
             " need a ball of radius " + std::to_string(n_max + 1));

  std::vector<int> kti(static_cast<size_t>(n_max) + 1, 0);
  std::vector<int> kte(static_cast<size_t>(n_max) + 1, 0);
  std::vector<int> kxi(static_cast<size_t>(n_max) + 1, 0);
  std::vector<int> kxe(static_cast<size_t>(n_max) + 1, 0);

  for (int v = 0; v < ball.vertex_count(); ++v) {
    const int d = ball.dist(v);
    if (d > n_max) continue;
    kti[static_cast<size_t>(d)] =
        std::max(kti[static_cast<size_t>(d)], static_cast<int>(ball.nf(v).size()));
    int far = 0;
    for (int w = v; w != 0; w = ball.tree_parent(w)) far = std::max(far, ball.dist(w));
    kte[static_cast<size_t>(d)] = std::max(kte[static_cast<size_t>(d)], far);
  }

  for (const auto& e : ball.undirected_edges()) {
    const int u = ball.neighbor(e.src, e.label);
    const int root = std::min(ball.dist(e.src), ball.dist(u));
    if (root > n_max) continue;
    if (ball.tree_edge(e.src, e.label)) continue;
    const NDiagram& nd = builder.edge_diagram(e.src, e.label);
    kxi[static_cast<size_t>(root)] = std::max(kxi[static_cast<size_t>(root)],
                                              intrinsic_profile(nd.diagram).diameter);
    kxe[static_cast<size_t>(root)] =
        std::max(kxe[static_cast<size_t>(root)],
                 extrinsic_profile(nd.diagram, ball).diameter);
  }

  prefix_max(kti);
  prefix_max(kte);
  prefix_max(kxi);
  prefix_max(kxe);

  BoundSuite suite;
  suite.k_ti = table_to_step(kti);
  suite.k_te = table_to_step(kte);
  suite.k_xi = table_to_step(kxi);
  suite.k_xe = table_to_step(kxe);
  suite.n_max = n_max;
  return suite;
}

void compute_mus(BoundSuite& suite, int rho) {
  if (rho < 0) fail(Errc::InvalidArgument, "negative relator length");
  const int mu_max = suite.n_max - rho - 1;
  if (mu_max < 0)
    fail(Errc::RangeExceeded, "tables stop at " + std::to_string(suite.n_max) +
                                  ", too short for relators of length " +
                                  std::to_string(rho));
  std::vector<int> mi(static_cast<size_t>(mu_max) + 1);
  std::vector<int> me(static_cast<size_t>(mu_max) + 1);
  for (int n = 0; n <= mu_max; ++n) {
    mi[static_cast<size_t>(n)] =
        std::max({step_at_int(suite.k_ti, n + 1) + 1, n + 1,
                  step_at_int(suite.k_xi, n + rho + 1) + 1});
    me[static_cast<size_t>(n)] =
        std::max({step_at_int(suite.k_te, n + 1) + 1, n + 1,
                  step_at_int(suite.k_xe, n + rho + 1) + 1});
  }
  suite.mu_i = table_to_step(mi);
  suite.mu_e = table_to_step(me);
  suite.mu_max = mu_max;
  suite.rho = rho;
}

Q4 BoundSuite::mu_intrinsic(Q4 x) const {
  if (mu_max < 0) fail(Errc::RangeExceeded, "mu tables not computed");
  const int c = q4_ceil(x);
  if (c + rho + 1 > n_max)
    fail(Errc::RangeExceeded, "argument " + q4_to_string(x) + " needs tables past " +
                                  std::to_string(n_max));
  return std::max({q4_of_int(step_at_int(k_ti, c + 1) + 1), Q4{x.q + 4},
                   q4_of_int(step_at_int(k_xi, c + rho + 1) + 1)});
}

Q4 BoundSuite::mu_extrinsic(Q4 x) const {
  if (mu_max < 0) fail(Errc::RangeExceeded, "mu tables not computed");
  const int c = q4_ceil(x);
  if (c + rho + 1 > n_max)
    fail(Errc::RangeExceeded, "argument " + q4_to_string(x) + " needs tables past " +
                                  std::to_string(n_max));
  return std::max({q4_of_int(step_at_int(k_te, c + 1) + 1), Q4{x.q + 4},
                   q4_of_int(step_at_int(k_xe, c + rho + 1) + 1)});
}

namespace {

// Unfolds the flow recursively across edges, accumulating the normal
// forms of every vertex visited.
class LeEngine {
 public:
  LeEngine(const FlowFunction& ff, const CayleyBall& ball) : ff_(&ff), ball_(&ball) {}

  const LeResult& edge(int v, Letter a) {
    const CayleyBall::DirEdge canon = ball_->canonical(v, a);
    const std::pair<int, Letter> key{canon.src, canon.label};
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    if (in_progress_.count(key))
      fail(Errc::CycleDetected,
           "flow recursion revisits the edge at " +
               ball_->alphabet().format_word(ball_->nf(canon.src)) + " by " +
               std::string(ball_->alphabet().name(canon.label)));
    if (--budget_ < 0)
      fail(Errc::BudgetExceeded, "flow unfolding exceeded the step budget");
    in_progress_.insert(key);
    LeResult r = unfold(canon.src, canon.label);
    in_progress_.erase(key);
    return memo_.emplace(key, std::move(r)).first->second;
  }

 private:
  LeResult unfold(int v, Letter a) {
    const int u = ball_->neighbor(v, a);
    LeResult r;
    r.words.insert(ball_->nf(v));
    r.words.insert(ball_->nf(u));
    if (!ball_->tree_edge(v, a)) {
      const FlowEdge& fe = ff_->edge(v, a);
      const std::string where = ball_->alphabet().format_word(ball_->nf(v)) +
                                " by " + std::string(ball_->alphabet().name(a));
      if (!fe.assigned)
        fail(Errc::InvalidArgument, "no flow label on the edge at " + where);
      if (!fe.usable)
        fail(Errc::BallTooSmall, "the flow path at " + where + " exits the ball");
      auto trace = trace_path(*ball_, v, fe.label);
      if (!trace) fail(Errc::BallTooSmall, "the flow path at " + where + " exits the ball");
      for (int t : *trace) r.words.insert(ball_->nf(t));
      for (size_t i = 0; i < fe.label.size(); ++i) {
        const LeResult& sub = edge((*trace)[i], fe.label[i]);
        r.words.insert(sub.words.begin(), sub.words.end());
      }
    }
    for (const Word& y : r.words) r.k = std::max(r.k, static_cast<int>(y.size()));
    return r;
  }

  const FlowFunction* ff_;
  const CayleyBall* ball_;
  std::map<std::pair<int, Letter>, LeResult> memo_;
  std::set<std::pair<int, Letter>> in_progress_;
  long budget_ = kDefaultStepBudget;
};

}  // namespace

LeResult compute_Le(const Word& w, Letter a, const FlowFunction& ff,
                    const CayleyBall& ball) {
  const int v = ball.find(ball.oracle()(w));
  if (v < 0) fail(Errc::BallTooSmall, "the word lies outside the ball");
  if (ball.neighbor(v, a) == CayleyBall::kOutside)
    fail(Errc::BallTooSmall, "the edge leaves the ball");
  LeEngine eng(ff, ball);
  return eng.edge(v, a);
}

int k_r_prime(int n, const FlowFunction& ff, const CayleyBall& ball) {
  if (n < 0) fail(Errc::InvalidArgument, "negative radius");
  if (ball.radius() < n + 1)
    fail(Errc::BallTooSmall, "edges from the " + std::to_string(n) +
                                 "-ball need radius " + std::to_string(n + 1));
  LeEngine eng(ff, ball);
  int best = 0;
  for (int v = 0; v < ball.vertex_count(); ++v) {
    if (ball.dist(v) > n) continue;
    for (int i = 0; i < ball.alphabet().size(); ++i)
      best = std::max(best, eng.edge(v, static_cast<Letter>(i)).k);
  }
  return best;
}

int longest_rule(const RewritingSystem& rs) {
  size_t best = 0;
  for (const Rule& r : rs.rules()) best = std::max({best, r.lhs.size(), r.rhs.size()});
  return static_cast<int>(best);
}

int rsgrowth_bound(const RewritingSystem& rs, int n) {
  if (n < 0) fail(Errc::InvalidArgument, "negative argument");
  const size_t m = static_cast<size_t>(n + longest_rule(rs) + 2);
  const size_t g = all_rules_length_nonincreasing(rs) ? m : gamma(rs, m);
  return static_cast<int>(g) + 1;
}

std::pair<StepFunction, StepFunction> compute_t_functions(const CayleyBall& ball,
                                                          int n_max) {
  if (n_max < 0) fail(Errc::InvalidArgument, "negative table range");
  if (n_max > ball.radius())
    fail(Errc::BallTooSmall, "tables to " + std::to_string(n_max) +
                                 " need a ball of that radius");
  std::vector<int> ti(static_cast<size_t>(n_max) + 1, 0);
  std::vector<int> te(static_cast<size_t>(n_max) + 1, 0);
  for (int v = 0; v < ball.vertex_count(); ++v) {
    const Word& y = ball.nf(v);
    auto trace = trace_path(ball, 0, y);
    if (!trace) fail(Errc::BallTooSmall, "a normal form leaves the ball");
    int far = 0;
    for (size_t i = 0; i < trace->size(); ++i) {
      const int d = ball.dist((*trace)[i]);
      far = std::max(far, d);
      if (d > n_max) continue;
      ti[static_cast<size_t>(d)] = std::max(ti[static_cast<size_t>(d)], static_cast<int>(i));
      te[static_cast<size_t>(d)] = std::max(te[static_cast<size_t>(d)], far);
    }
  }
  prefix_max(ti);
  prefix_max(te);
  return {table_to_step(ti), table_to_step(te)};
}

DiameterBoundReport check_diameter_bound(const std::vector<DiameterCheckItem>& items,
                                         const StepFunction& f, const Alphabet& ab) {
  DiameterBoundReport rep;
  for (const auto& item : items) {
    ++rep.checked;
    const int bound = q4_ceil(f(q4_half(static_cast<int>(item.word.size()))));
    if (item.idiam > bound)
      rep.failures.push_back("word " + ab.format_word(item.word) + ": diameter " +
                             std::to_string(item.idiam) + " over bound " +
                             std::to_string(bound));
  }
  rep.passed = rep.failures.empty();
  return rep;
}

}  // namespace tamefill
