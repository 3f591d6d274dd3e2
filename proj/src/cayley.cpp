#include "tamefill/cayley.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_set>

namespace tamefill {

NormalFormOracle oracle_from_rs(const RewritingSystem& rs) {
  return [rs](const Word& w) { return normal_form(rs, w); };
}

namespace {

Word call_oracle(const NormalFormOracle& oracle, const Word& w) {
  try {
    return oracle(w);
  } catch (const std::exception& e) {
    fail(Errc::OracleFailure, std::string("oracle failed: ") + e.what());
  }
}

}  // namespace

int CayleyBall::find(const Word& normal_form) const {
  auto it = index_.find(normal_form);
  return it == index_.end() ? kOutside : it->second;
}

int CayleyBall::neighbor(int v, Letter a) const {
  return adj_.at(v).at(static_cast<size_t>(static_cast<unsigned char>(a)));
}

bool CayleyBall::tree_edge(int v, Letter a) const {
  int u = neighbor(v, a);
  if (u == kOutside) return false;
  return (parent_[u] == v && parent_letter_[u] == a) ||
         (parent_[v] == u && parent_letter_[v] == alphabet_.inverse(a));
}

std::vector<int> CayleyBall::sphere(int m) const {
  if (m < 0 || m > radius_)
    fail(Errc::RadiusExceeded,
         "sphere(" + std::to_string(m) + ") of a radius-" + std::to_string(radius_) + " ball");
  std::vector<int> out;
  for (int v = level_offset_[m]; v < level_offset_[m + 1]; ++v) out.push_back(v);
  return out;
}

CayleyBall::DirEdge CayleyBall::canonical(int v, Letter a) const {
  int u = neighbor(v, a);
  if (u == kOutside)
    fail(Errc::DanglingEdge, "no canonical orientation for a dangling edge");
  if (u == v) return {v, std::min(a, alphabet_.inverse(a))};
  if (shortlex_less(nf(u), nf(v))) return {u, alphabet_.inverse(a)};
  return {v, a};
}

std::vector<CayleyBall::DirEdge> CayleyBall::undirected_edges() const {
  std::vector<DirEdge> out;
  for (int v = 0; v < vertex_count(); ++v)
    for (Letter a = 0; a < alphabet_.size(); ++a) {
      if (neighbor(v, a) == kOutside) continue;
      DirEdge c = canonical(v, a);
      if (c.src == v && c.label == a) out.push_back(c);
    }
  return out;
}

CayleyBall build_ball(NormalFormOracle oracle, Alphabet alphabet, int radius) {
  if (radius < 0) fail(Errc::InvalidArgument, "negative radius");
  CayleyBall ball;
  ball.alphabet_ = std::move(alphabet);
  ball.oracle_ = std::move(oracle);
  ball.radius_ = radius;
  const Alphabet& ab = ball.alphabet_;
  const int nl = ab.size();

  if (!call_oracle(ball.oracle_, Word{}).empty())
    fail(Errc::InconsistentOracle, "oracle moves the basepoint");
  ball.verts_.push_back({Word{}, 0});
  ball.adj_.emplace_back(nl, CayleyBall::kOutside - 1);  // -2 marks unset
  ball.parent_.push_back(-1);
  ball.parent_letter_.push_back(0);
  ball.index_.emplace(Word{}, 0);
  ball.level_offset_ = {0, 1};

  for (int d = 0; d <= radius; ++d) {
    // New normal forms discovered from level d, with their discoverers
    // in (vertex, letter) processing order.
    std::map<Word, std::vector<CayleyBall::DirEdge>, ShortlexLess> pending;
    for (int v = ball.level_offset_[d]; v < ball.level_offset_[d + 1]; ++v) {
      for (Letter a = 0; a < nl; ++a) {
        Word y = call_oracle(ball.oracle_, ball.verts_[v].nf + a);
        auto it = ball.index_.find(y);
        if (it != ball.index_.end())
          ball.adj_[v][static_cast<size_t>(a)] = it->second;
        else if (d < radius)
          pending[y].push_back({v, a});
        else
          ball.adj_[v][static_cast<size_t>(a)] = CayleyBall::kOutside;
      }
    }
    for (auto& [y, sources] : pending) {
      if (call_oracle(ball.oracle_, y) != y)
        fail(Errc::InconsistentOracle,
             "oracle is not idempotent on '" + ab.format_word(y) + "'");
      int id = static_cast<int>(ball.verts_.size());
      ball.verts_.push_back({y, d + 1});
      ball.adj_.emplace_back(nl, CayleyBall::kOutside - 1);
      ball.parent_.push_back(sources.front().src);
      ball.parent_letter_.push_back(sources.front().label);
      ball.index_.emplace(y, id);
      for (const auto& [src, label] : sources)
        ball.adj_[src][static_cast<size_t>(static_cast<unsigned char>(label))] = id;
    }
    ball.level_offset_.push_back(static_cast<int>(ball.verts_.size()));
  }

  ball.boundary_complete_ = true;
  for (int v = 0; v < ball.vertex_count(); ++v)
    for (Letter a = 0; a < nl; ++a) {
      int u = ball.adj_[v][static_cast<size_t>(a)];
      if (u == CayleyBall::kOutside - 1)
        fail(Errc::InconsistentOracle, "unset adjacency entry");
      if (u == CayleyBall::kOutside) {
        ball.boundary_complete_ = false;
        continue;
      }
      if (ball.adj_[u][static_cast<size_t>(static_cast<unsigned char>(ab.inverse(a)))] != v)
        fail(Errc::InconsistentOracle,
             "asymmetric adjacency at '" + ab.format_word(ball.nf(v)) + "' by " +
                 std::string(ab.name(a)));
      if (std::abs(ball.dist(v) - ball.dist(u)) > 1)
        fail(Errc::InconsistentOracle, "edge skips a distance level");
    }

  // Prefix closure of the enumerated normal forms.
  ball.prefix_closed_ = true;
  {
    std::unordered_set<Word> confirmed{Word{}};
    for (const auto& ge : ball.verts_) {
      for (size_t len = 1; len < ge.nf.size() && ball.prefix_closed_; ++len) {
        Word p = ge.nf.substr(0, len);
        if (confirmed.count(p)) continue;
        if (ball.index_.count(p) || call_oracle(ball.oracle_, p) == p)
          confirmed.insert(p);
        else
          ball.prefix_closed_ = false;
      }
      if (!ball.prefix_closed_) break;
    }
  }

  // Prefer the normal-form tree: parent of v is the vertex of nf(v)
  // minus its last letter. Falls back to the BFS tree (parents already
  // assigned) when a parent is missing or prefixes are not closed.
  ball.nf_tree_ = ball.prefix_closed_;
  for (int v = 1; v < ball.vertex_count() && ball.nf_tree_; ++v) {
    const Word& y = ball.nf(v);
    int p = ball.find(y.substr(0, y.size() - 1));
    if (p == CayleyBall::kOutside || ball.neighbor(p, y.back()) != v)
      ball.nf_tree_ = false;
  }
  if (ball.nf_tree_) {
    for (int v = 1; v < ball.vertex_count(); ++v) {
      const Word& y = ball.nf(v);
      ball.parent_[v] = ball.find(y.substr(0, y.size() - 1));
      ball.parent_letter_[v] = y.back();
    }
  }
  return ball;
}

bool check_prefix_closed(const NormalFormOracle& oracle, const Alphabet& alphabet, int radius) {
  return build_ball(oracle, alphabet, radius).prefix_closed();
}

std::optional<std::vector<int>> trace_path(const CayleyBall& ball, int start, const Word& w) {
  std::vector<int> out{start};
  for (Letter a : w) {
    int next = ball.neighbor(out.back(), a);
    if (next == CayleyBall::kOutside) return std::nullopt;
    out.push_back(next);
  }
  return out;
}

namespace {

// BFS distances from src through vertices with dist <= level; -1 where
// unreached. Stops early past max_depth when max_depth >= 0.
std::vector<int> inside_bfs(const CayleyBall& ball, int src, int level, int max_depth) {
  std::vector<int> d(ball.vertex_count(), -1);
  if (ball.dist(src) > level) return d;
  std::deque<int> q{src};
  d[src] = 0;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    if (max_depth >= 0 && d[v] >= max_depth) continue;
    for (Letter a = 0; a < ball.alphabet().size(); ++a) {
      int u = ball.neighbor(v, a);
      if (u == CayleyBall::kOutside || ball.dist(u) > level || d[u] >= 0) continue;
      d[u] = d[v] + 1;
      q.push_back(u);
    }
  }
  return d;
}

}  // namespace

std::optional<Word> shortlex_geodesic_inside(const CayleyBall& ball, int u, int v, int level) {
  if (ball.dist(u) > level || ball.dist(v) > level) return std::nullopt;
  std::vector<int> dv = inside_bfs(ball, v, level, -1);
  if (dv[u] < 0) return std::nullopt;
  Word out;
  int cur = u;
  while (cur != v) {
    for (Letter a = 0;; ++a) {
      if (a >= ball.alphabet().size())
        fail(Errc::InconsistentOracle, "BFS distance field has no descent");
      int w = ball.neighbor(cur, a);
      if (w == CayleyBall::kOutside || ball.dist(w) > level || dv[w] != dv[cur] - 1) continue;
      out.push_back(a);
      cur = w;
      break;
    }
  }
  return out;
}

AlmostConvexResult check_almost_convex(const CayleyBall& ball, int n, int k) {
  if (n + 1 > ball.radius())
    fail(Errc::RadiusExceeded, "almost convexity at n=" + std::to_string(n) +
                                   " needs ball radius " + std::to_string(n + 1));
  AlmostConvexResult res;
  res.n = n;
  res.k = k;
  for (int g : ball.sphere(n)) {
    // Candidates at Cayley distance <= 2: all midpoints sit in B(n+1).
    std::unordered_set<int> near;
    for (Letter a = 0; a < ball.alphabet().size(); ++a) {
      int m = ball.neighbor(g, a);
      if (m == CayleyBall::kOutside) continue;
      near.insert(m);
      for (Letter b = 0; b < ball.alphabet().size(); ++b) {
        int h = ball.neighbor(m, b);
        if (h != CayleyBall::kOutside) near.insert(h);
      }
    }
    std::vector<int> candidates;
    for (int h : near)
      if (h > g && ball.dist(h) == n) candidates.push_back(h);
    if (candidates.empty()) continue;
    std::sort(candidates.begin(), candidates.end());
    std::vector<int> din = inside_bfs(ball, g, n, -1);
    for (int h : candidates) {
      if (din[h] >= 0 && din[h] <= k) continue;
      res.passed = false;
      res.g = g;
      res.h = h;
      if (din[h] >= 0) res.inside_dist = din[h];
      return res;
    }
  }
  return res;
}

FellowTravelerResult check_fellow_traveler(const CayleyBall& ball, int K) {
  if (K < 0 || K > ball.radius())
    fail(Errc::RadiusExceeded, "fellow traveler constant exceeds ball radius");
  FellowTravelerResult res;
  res.K = K;
  res.checked_level = ball.radius() - K;
  for (const auto& e : ball.undirected_edges()) {
    int g = e.src;
    int h = ball.neighbor(g, e.label);
    if (ball.dist(g) > res.checked_level || ball.dist(h) > res.checked_level) continue;
    auto gp = trace_path(ball, 0, ball.nf(g));
    auto hp = trace_path(ball, 0, ball.nf(h));
    if (!gp || !hp)
      fail(Errc::BallTooSmall, "normal-form path leaves the ball");
    size_t steps = std::max(gp->size(), hp->size());
    for (size_t i = 0; i < steps; ++i) {
      int u = (*gp)[std::min(i, gp->size() - 1)];
      int v = (*hp)[std::min(i, hp->size() - 1)];
      if (ball.dist(u) + K > ball.radius() || ball.dist(v) + K > ball.radius())
        fail(Errc::BallTooSmall, "prefix too deep to bound its neighborhood");
      std::vector<int> du = inside_bfs(ball, u, ball.radius(), K);
      if (du[v] >= 0) {
        res.max_distance = std::max(res.max_distance, du[v]);
        continue;
      }
      res.passed = false;
      res.g = g;
      res.a = e.label;
      res.index = static_cast<int>(i);
      return res;
    }
  }
  return res;
}

}  // namespace tamefill
