#include "tamefill/flow.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tamefill {

namespace {

// Visits every directed edge with both endpoints inside the ball.
template <typename Fn>
void for_each_inside_edge(const CayleyBall& ball, Fn&& fn) {
  const int letters = static_cast<int>(ball.alphabet().size());
  for (int v = 0; v < ball.vertex_count(); ++v) {
    for (int a = 0; a < letters; ++a) {
      const int u = ball.neighbor(v, static_cast<Letter>(a));
      if (u == CayleyBall::kOutside) continue;
      fn(v, static_cast<Letter>(a), u);
    }
  }
}

void require_nf_tree(const CayleyBall& ball, const char* what) {
  if (!ball.nf_tree()) {
    fail(Errc::InvalidArgument,
         std::string(what) + " needs a ball whose tree follows the normal forms");
  }
}

}  // namespace

const char* flow_violation_name(FlowViolationKind k) {
  switch (k) {
    case FlowViolationKind::Unassigned: return "unassigned";
    case FlowViolationKind::WrongEndpoint: return "wrong-endpoint";
    case FlowViolationKind::TreeEdgeMoved: return "tree-edge-moved";
    case FlowViolationKind::OverBound: return "over-bound";
  }
  return "?";
}

FlowFunction identity_flow(const CayleyBall& ball) {
  FlowFunction ff(ball.vertex_count(), static_cast<int>(ball.alphabet().size()));
  for_each_inside_edge(ball, [&](int v, Letter a, int) {
    ff.assign(v, a, Word(1, a), 0, 0, true);
  });
  return ff;
}

FlowFunction rewriting_flow(const RewritingSystem& rs, const CayleyBall& ball) {
  require_nf_tree(ball, "rewriting flow");
  if (!(rs.alphabet() == ball.alphabet())) {
    fail(Errc::WrongAlphabet, "rewriting flow: system and ball alphabets differ");
  }
  const Alphabet& ab = ball.alphabet();
  FlowFunction ff(ball.vertex_count(), static_cast<int>(ab.size()));

  for_each_inside_edge(ball, [&](int v, Letter a, int u) {
    Word ya = ball.nf(v);
    ya.push_back(a);
    Word yb = ball.nf(u);
    yb.push_back(ab.inverse(a));
    const bool fixed = is_irreducible(rs, ya) || is_irreducible(rs, yb);
    if (fixed != ball.tree_edge(v, a)) {
      fail(Errc::NoApplicableRule,
           "rewriting flow: system disagrees with the ball tree at (" +
               ab.format_word(ball.nf(v)) + ", " + std::string(ab.name(a)) + ")");
    }
    if (fixed) {
      ff.assign(v, a, Word(1, a), 0, 0, true);
      return;
    }
    // y_g irreducible, y_g a reducible: any applicable rule must end at
    // the last position, i.e. its lhs is a suffix of y_g a. Longest
    // lhs wins, then rule order.
    int best = -1;
    for (size_t r = 0; r < rs.rules().size(); ++r) {
      const Word& lhs = rs.rules()[r].lhs;
      if (lhs.size() > ya.size()) continue;
      if (!std::equal(lhs.rbegin(), lhs.rend(), ya.rbegin())) continue;
      if (best < 0 || lhs.size() > rs.rules()[best].lhs.size()) best = static_cast<int>(r);
    }
    if (best < 0) {
      fail(Errc::NoApplicableRule,
           "rewriting flow: no rule ends y_g a at (" + ab.format_word(ball.nf(v)) +
               ", " + std::string(ab.name(a)) + ")");
    }
    const Rule& rule = rs.rules()[static_cast<size_t>(best)];
    Word u_part(rule.lhs.begin(), rule.lhs.end() - 1);
    Word label = formal_inverse(ab, u_part);
    label.insert(label.end(), rule.rhs.begin(), rule.rhs.end());
    const bool usable = trace_path(ball, v, label).has_value();
    ff.assign(v, a, std::move(label), static_cast<int>(u_part.size()), 0, usable);
  });
  return ff;
}

FlowFunction ac_flow(const CayleyBall& ball, int k) {
  require_nf_tree(ball, "almost-convexity flow");
  if (k < 0) fail(Errc::InvalidArgument, "almost-convexity flow: negative constant");
  const Alphabet& ab = ball.alphabet();
  for (int v = 0; v < ball.vertex_count(); ++v) {
    if (static_cast<int>(ball.nf(v).size()) != ball.dist(v)) {
      fail(Errc::InvalidArgument, "almost-convexity flow: normal forms are not geodesic");
    }
  }
  FlowFunction ff(ball.vertex_count(), static_cast<int>(ab.size()));

  auto inside_or_fail = [&](int from, int to, int level) -> Word {
    auto w = shortlex_geodesic_inside(ball, from, to, level);
    if (!w || static_cast<int>(w->size()) > k) {
      fail(Errc::NotAlmostConvex,
           "no inside path of length <= " + std::to_string(k) + " from " +
               ab.format_word(ball.nf(from)) + " to " + ab.format_word(ball.nf(to)) +
               " within distance " + std::to_string(level));
    }
    return *w;
  };

  for_each_inside_edge(ball, [&](int v, Letter a, int u) {
    if (ball.tree_edge(v, a)) {
      ff.assign(v, a, Word(1, a), 0, 0, true);
      return;
    }
    const int dv = ball.dist(v);
    const int du = ball.dist(u);
    if (dv == du) {
      Word phi = inside_or_fail(v, u, dv);
      ff.assign(v, a, std::move(phi), 0, 0, true);
      return;
    }
    // Edge between spheres: the deeper endpoint t has y_t = y' b with
    // the tree edge labeled b joining mid = y' to t.
    const int t = (dv < du) ? u : v;
    const int g = (dv < du) ? v : u;
    const Letter b = ball.tree_parent_letter(t);
    const int mid = ball.tree_parent(t);
    if (dv < du) {
      Word label = inside_or_fail(g, mid, dv);
      label.push_back(b);
      ff.assign(v, a, std::move(label), 0, 1, true);
    } else {
      Word label(1, ab.inverse(b));
      Word phi = inside_or_fail(mid, g, du);
      label.insert(label.end(), phi.begin(), phi.end());
      ff.assign(v, a, std::move(label), 1, 0, true);
    }
  });
  return ff;
}

namespace {

struct DescentGraph {
  std::vector<CayleyBall::DirEdge> nodes;
  std::map<std::pair<int, Letter>, int> index;
  std::vector<std::set<int>> arcs;  // node -> strictly smaller nodes

  int node_of(const CayleyBall::DirEdge& e) {
    auto key = std::make_pair(e.src, e.label);
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    const int id = static_cast<int>(nodes.size());
    index.emplace(key, id);
    nodes.push_back(e);
    arcs.emplace_back();
    return id;
  }
};

// Three-color DFS; fills cycle with the offending node sequence.
bool find_cycle(const DescentGraph& g, std::vector<int>& cycle) {
  std::vector<int> color(g.nodes.size(), 0);
  std::vector<int> stack;
  // Iterative DFS frames: (node, iterator position).
  for (size_t root = 0; root < g.nodes.size(); ++root) {
    if (color[root] != 0) continue;
    std::vector<std::pair<int, std::set<int>::const_iterator>> frames;
    frames.emplace_back(static_cast<int>(root), g.arcs[root].begin());
    color[root] = 1;
    stack.push_back(static_cast<int>(root));
    while (!frames.empty()) {
      auto& [n, it] = frames.back();
      if (it == g.arcs[static_cast<size_t>(n)].end()) {
        color[static_cast<size_t>(n)] = 2;
        stack.pop_back();
        frames.pop_back();
        continue;
      }
      const int m = *it;
      ++it;
      if (color[static_cast<size_t>(m)] == 1) {
        auto at = std::find(stack.begin(), stack.end(), m);
        cycle.assign(at, stack.end());
        return true;
      }
      if (color[static_cast<size_t>(m)] == 0) {
        color[static_cast<size_t>(m)] = 1;
        stack.push_back(m);
        frames.emplace_back(m, g.arcs[static_cast<size_t>(m)].begin());
      }
    }
  }
  return false;
}

}  // namespace

FlowReport verify_flow(const FlowFunction& ff, const CayleyBall& ball) {
  const Alphabet& ab = ball.alphabet();
  FlowReport report;
  report.bound_k = ff.bound_k();
  DescentGraph graph;
  std::set<std::pair<std::pair<int, Letter>, std::pair<int, Letter>>> seen_pairs;

  for_each_inside_edge(ball, [&](int v, Letter a, int u) {
    if (!ff.assigned(v, a)) {
      report.violations.push_back({FlowViolationKind::Unassigned, v, a});
      return;
    }
    const FlowEdge& fe = ff.edge(v, a);
    const bool tree = ball.tree_edge(v, a);
    if (tree && fe.label != Word(1, a)) {
      report.violations.push_back({FlowViolationKind::TreeEdgeMoved, v, a});
    }
    if (static_cast<int>(fe.label.size()) > ff.bound_k()) {
      report.violations.push_back({FlowViolationKind::OverBound, v, a});
    }
    auto path = trace_path(ball, v, fe.label);
    if (!path) {
      if (fe.usable) {
        fail(Errc::DanglingEdge,
             "flow path exits the ball at (" + ab.format_word(ball.nf(v)) + ", " +
                 std::string(ab.name(a)) + ")");
      }
      ++report.unusable;
      return;
    }
    if (path->back() != u) {
      report.violations.push_back({FlowViolationKind::WrongEndpoint, v, a});
      return;
    }
    if (tree) return;
    // Recursive edge: every recursive edge strictly below it.
    const CayleyBall::DirEdge self = ball.canonical(v, a);
    const int self_id = graph.node_of(self);
    for (size_t i = 0; i + 1 < path->size(); ++i) {
      const int p = (*path)[i];
      const Letter l = fe.label[i];
      if (ball.tree_edge(p, l)) continue;
      const CayleyBall::DirEdge step = ball.canonical(p, l);
      if (step == self) continue;
      const int step_id = graph.node_of(step);
      graph.arcs[static_cast<size_t>(self_id)].insert(step_id);
      auto key = std::make_pair(std::make_pair(step.src, step.label),
                                std::make_pair(self.src, self.label));
      if (seen_pairs.insert(key).second) {
        report.descent.pairs.emplace_back(step, self);
      }
    }
  });

  std::vector<int> cycle;
  report.descent.acyclic = !find_cycle(graph, cycle);
  for (int n : cycle) report.descent.cycle.push_back(graph.nodes[static_cast<size_t>(n)]);
  report.passed = report.violations.empty() && report.descent.acyclic;
  return report;
}

std::vector<std::tuple<Word, Letter, Word>> flow_triples(const FlowFunction& ff,
                                                         const CayleyBall& ball) {
  std::vector<std::tuple<Word, Letter, Word>> rows;
  for_each_inside_edge(ball, [&](int v, Letter a, int) {
    if (!ff.assigned(v, a)) return;
    rows.emplace_back(ball.nf(v), a, ff.edge(v, a).label);
  });
  return rows;
}

}  // namespace tamefill
