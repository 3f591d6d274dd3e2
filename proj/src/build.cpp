#include "tamefill/build.hpp"

#include <algorithm>
#include <cassert>
#include <set>

namespace tamefill {

namespace {

// Sample of a walk in arena coordinates. Edge cells hold directed
// arena ids; remap_sample turns them into dense undirected ids.
PathSample arena_walk_sample(const Arena& arena, int start, const std::vector<int>& walk) {
  PathSample s;
  s.push_back({CellRef::Kind::Vertex, arena.find_vertex(start)});
  for (int d : walk) {
    s.push_back({CellRef::Kind::Edge, d});
    s.push_back({CellRef::Kind::Vertex, arena.dst(d)});
  }
  return s;
}

std::vector<int> remap_walk(const CompactMaps& maps, const std::vector<int>& walk) {
  std::vector<int> out;
  out.reserve(walk.size());
  for (int d : walk) out.push_back(maps.edge.at(static_cast<size_t>(d)));
  return out;
}

PathSample remap_sample(const CompactMaps& maps, const PathSample& s) {
  PathSample out;
  out.reserve(s.size());
  for (CellRef c : s) {
    switch (c.kind) {
      case CellRef::Kind::Vertex:
        out.push_back({c.kind, maps.vertex.at(static_cast<size_t>(c.id))});
        break;
      case CellRef::Kind::Edge:
        out.push_back({c.kind, maps.edge.at(static_cast<size_t>(c.id)) >> 1});
        break;
      case CellRef::Kind::Face:
        out.push_back(c);
        break;
    }
  }
  return out;
}

// Walks and samples of a memoized diagram re-expressed in arena ids.
std::vector<int> import_walk(const Imported& imp, const std::vector<int>& walk) {
  std::vector<int> out;
  out.reserve(walk.size());
  for (int d : walk) out.push_back(imp.edges.at(static_cast<size_t>(d)));
  return out;
}

PathSample import_sample(const Imported& imp, const PathSample& s) {
  PathSample out;
  out.reserve(s.size());
  for (CellRef c : s) {
    switch (c.kind) {
      case CellRef::Kind::Vertex:
        out.push_back({c.kind, imp.vertices.at(static_cast<size_t>(c.id))});
        break;
      case CellRef::Kind::Edge:
        out.push_back({c.kind, imp.edges.at(static_cast<size_t>(2 * c.id))});
        break;
      case CellRef::Kind::Face:
        out.push_back({c.kind, c.id + imp.face_offset});
        break;
    }
  }
  return out;
}

}  // namespace

PathSample walk_sample(const Diagram& d, const std::vector<int>& walk, int start) {
  PathSample s;
  s.push_back({CellRef::Kind::Vertex, start});
  for (int e : walk) {
    s.push_back({CellRef::Kind::Edge, Diagram::undirected(e)});
    s.push_back({CellRef::Kind::Vertex, d.dst(e)});
  }
  return s;
}

std::vector<int> boundary_vertices(const Diagram& d) {
  std::vector<int> out{d.basepoint()};
  for (int e : d.boundary()) out.push_back(d.dst(e));
  return out;
}

Presentation flow_presentation(const FlowFunction& ff, const CayleyBall& ball) {
  const Alphabet& ab = ball.alphabet();
  std::vector<Word> rel;
  for (int v = 0; v < ball.vertex_count(); ++v) {
    for (int i = 0; i < ab.size(); ++i) {
      const Letter a = static_cast<Letter>(i);
      if (ball.neighbor(v, a) == CayleyBall::kOutside) continue;
      if (!ff.assigned(v, a)) continue;
      Word r = ff.edge(v, a).label;
      r.push_back(ab.inverse(a));
      rel.push_back(std::move(r));
    }
  }
  if (rel.empty()) fail(Errc::InvalidArgument, "flow assigns no edges");
  return make_presentation(ab, rel);
}

std::vector<std::string> check_tree_path_property(const Diagram& d,
                                                  const CayleyBall& ball) {
  std::vector<std::string> problems;
  const auto out = outgoing_edges(d);
  for (int v = 0; v < d.vertex_count(); ++v) {
    const Word& y = ball.nf(d.projection(v));
    std::set<int> frontier{d.basepoint()};
    for (Letter a : y) {
      std::set<int> next;
      for (int w : frontier)
        for (int e : out[static_cast<size_t>(w)])
          if (d.label(e) == a) next.insert(d.dst(e));
      frontier = std::move(next);
      if (frontier.empty()) break;
    }
    if (!frontier.count(v))
      problems.push_back("no path reading " + ball.alphabet().format_word(y) +
                         " from the basepoint reaches vertex " + std::to_string(v));
  }
  return problems;
}

NDiagramBuilder::NDiagramBuilder(const FlowFunction& ff, const CayleyBall& ball)
    : ff_(&ff), ball_(&ball) {
  if (!ball.nf_tree())
    fail(Errc::InvalidArgument,
         "diagram construction needs a ball whose tree follows the normal forms");
}

const NDiagram& NDiagramBuilder::edge_diagram(int v, Letter a) {
  const std::pair<int, Letter> key{v, a};
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;

  const CayleyBall::DirEdge canon = ball_->canonical(v, a);
  const std::pair<int, Letter> ckey{canon.src, canon.label};
  auto cit = memo_.find(ckey);
  if (cit == memo_.end()) {
    if (in_progress_.count(ckey))
      fail(Errc::CycleDetected,
           "flow recursion revisits the edge at " +
               ball_->alphabet().format_word(ball_->nf(canon.src)) + " by " +
               std::string(ball_->alphabet().name(canon.label)));
    in_progress_.insert(ckey);
    NDiagram built = build(canon.src, canon.label);
    in_progress_.erase(ckey);
    cit = memo_.emplace(ckey, std::move(built)).first;
  }
  if (ckey == key) return cit->second;

  const NDiagram& c = cit->second;
  NDiagram m;
  m.diagram = c.diagram.reversed_boundary();
  m.src_path = c.dst_path;
  m.dst_path = c.src_path;
  m.to_edge = c.to_edge;
  m.hat_edge = Diagram::twin(c.hat_edge);
  return memo_.emplace(key, std::move(m)).first->second;
}

NDiagram NDiagramBuilder::degenerate(int v, [[maybe_unused]] Letter a, int u) {
  const Word& yv = ball_->nf(v);
  const Word& yu = ball_->nf(u);
  const bool child = yu.size() == yv.size() + 1;
  assert(child ? yu.back() == a : yv.back() == ball_->alphabet().inverse(a));
  const Word& deep = child ? yu : yv;
  auto trace = trace_path(*ball_, 0, deep);
  if (!trace) fail(Errc::BallTooSmall, "normal form leaves the ball");

  Arena arena(*ball_);
  int prev = arena.add_vertex(0);
  const int base = prev;
  std::vector<int> walk;
  for (size_t i = 0; i < deep.size(); ++i) {
    const int nv = arena.add_vertex((*trace)[i + 1]);
    walk.push_back(arena.add_edge(prev, nv, deep[i]));
    prev = nv;
  }
  const std::vector<int> shallow(walk.begin(), walk.end() - 1);
  std::vector<int> bnd = walk;
  for (auto it = walk.rbegin(); it != walk.rend(); ++it) bnd.push_back(*it ^ 1);
  const int hat = child ? walk.back() : (walk.back() ^ 1);

  PathSample te = arena_walk_sample(arena, base, shallow);
  te.push_back({CellRef::Kind::Edge, hat});

  CompactMaps maps;
  NDiagram nd;
  nd.diagram = arena.compact(bnd, base, &maps);
  nd.src_path = remap_walk(maps, child ? shallow : walk);
  nd.dst_path = remap_walk(maps, child ? walk : shallow);
  nd.to_edge = remap_sample(maps, te);
  nd.hat_edge = maps.edge.at(static_cast<size_t>(hat));
  return nd;
}

NDiagram NDiagramBuilder::build(int v, Letter a) {
  const int u = ball_->neighbor(v, a);
  if (ball_->tree_edge(v, a)) return degenerate(v, a, u);

  const Alphabet& ab = ball_->alphabet();
  const FlowEdge& fe = ff_->edge(v, a);
  const std::string where =
      ab.format_word(ball_->nf(v)) + " by " + std::string(ab.name(a));
  if (!fe.assigned) fail(Errc::InvalidArgument, "no flow label on the edge at " + where);
  if (!fe.usable) fail(Errc::BallTooSmall, "the flow path at " + where + " exits the ball");
  if (fe.label.empty()) fail(Errc::InvalidArgument, "empty flow label at " + where);
  auto trace = trace_path(*ball_, v, fe.label);
  assert(trace);

  const int len = static_cast<int>(fe.label.size());
  const int xg = fe.split_xg;
  const int xh = fe.split_xh;
  const int mid = len - xg - xh;
  if (xg < 0 || xh < 0 || mid < 0)
    fail(Errc::InvalidArgument, "flow label shorter than its declared ends at " + where);

  Chain chain = glue_chain((*trace)[static_cast<size_t>(xg)],
                           fe.label.substr(static_cast<size_t>(xg), static_cast<size_t>(mid)));
  Arena& arena = chain.arena;

  // Fresh wall from the left end up to the source vertex; the first
  // xg letters of the label spell it reversed.
  const Word xg_word = formal_inverse(ab, fe.label.substr(0, static_cast<size_t>(xg)));
  int at = chain.left_path.empty() ? chain.basepoint : arena.dst(chain.left_path.back());
  std::vector<int> xg_arc;
  for (int j = 0; j < xg; ++j) {
    const int nv = arena.add_vertex((*trace)[static_cast<size_t>(xg - 1 - j)]);
    xg_arc.push_back(arena.add_edge(at, nv, xg_word[static_cast<size_t>(j)]));
    at = nv;
  }
  const int g_vertex = at;

  const Word xh_word = fe.label.substr(static_cast<size_t>(len - xh));
  at = chain.right_path.empty() ? chain.basepoint : arena.dst(chain.right_path.back());
  std::vector<int> xh_arc;
  for (int j = 0; j < xh; ++j) {
    const int nv = arena.add_vertex((*trace)[static_cast<size_t>(xg + mid + 1 + j)]);
    xh_arc.push_back(arena.add_edge(at, nv, xh_word[static_cast<size_t>(j)]));
    at = nv;
  }
  const int h_vertex = at;

  const int hat = arena.add_edge(g_vertex, h_vertex, a);

  // The cell reads x_g^-1 c x_h a^-1 from the source vertex.
  std::vector<int> cycle;
  for (int j = xg - 1; j >= 0; --j) cycle.push_back(xg_arc[static_cast<size_t>(j)] ^ 1);
  cycle.insert(cycle.end(), chain.arc.begin(), chain.arc.end());
  cycle.insert(cycle.end(), xh_arc.begin(), xh_arc.end());
  cycle.push_back(hat ^ 1);
  const int face_id = arena.add_face(std::move(cycle));

  std::vector<int> src_raw = chain.left_path;
  src_raw.insert(src_raw.end(), xg_arc.begin(), xg_arc.end());
  std::vector<int> dst_raw = chain.right_path;
  dst_raw.insert(dst_raw.end(), xh_arc.begin(), xh_arc.end());

  std::vector<int> bnd = src_raw;
  bnd.push_back(hat);
  for (auto it = dst_raw.rbegin(); it != dst_raw.rend(); ++it) bnd.push_back(*it ^ 1);

  // Into the cell through the middle of its inner arc (or straight
  // from the left end when the arc is empty), then across to the edge.
  PathSample te = mid == 0 ? arena_walk_sample(arena, chain.basepoint, chain.left_path)
                           : chain.arc_samples[static_cast<size_t>((mid - 1) / 2)];
  te.push_back({CellRef::Kind::Face, face_id});
  te.push_back({CellRef::Kind::Edge, hat});

  CompactMaps maps;
  NDiagram nd;
  nd.diagram = arena.compact(bnd, chain.basepoint, &maps);
  nd.src_path = remap_walk(maps, src_raw);
  nd.dst_path = remap_walk(maps, dst_raw);
  nd.to_edge = remap_sample(maps, te);
  nd.hat_edge = maps.edge.at(static_cast<size_t>(hat));
  return nd;
}

NDiagramBuilder::Chain NDiagramBuilder::glue_chain(int start, const Word& w) {
  Chain chain(*ball_);
  if (w.empty()) {
    const Word& y = ball_->nf(start);
    auto trace = trace_path(*ball_, 0, y);
    if (!trace) fail(Errc::BallTooSmall, "normal form leaves the ball");
    int prev = chain.arena.add_vertex(0);
    chain.basepoint = prev;
    std::vector<int> walk;
    for (size_t i = 0; i < y.size(); ++i) {
      const int nv = chain.arena.add_vertex((*trace)[i + 1]);
      walk.push_back(chain.arena.add_edge(prev, nv, y[i]));
      prev = nv;
    }
    chain.left_path = walk;
    chain.right_path = walk;
    chain.spokes.push_back(std::move(walk));
    return chain;
  }

  int at = start;
  std::vector<int> prev_right;
  for (size_t i = 0; i < w.size(); ++i) {
    const int next = ball_->neighbor(at, w[i]);
    if (next == CayleyBall::kOutside)
      fail(Errc::BallTooSmall, "word path leaves the ball");
    const NDiagram& nd = edge_diagram(at, w[i]);
    Imported imp = chain.arena.import(nd.diagram, Word());
    std::vector<int> left = import_walk(imp, nd.src_path);
    std::vector<int> right = import_walk(imp, nd.dst_path);
    PathSample te = import_sample(imp, nd.to_edge);
    const int hat = imp.edges.at(static_cast<size_t>(nd.hat_edge));

    if (i == 0) {
      chain.basepoint = imp.basepoint;
      chain.left_path = left;
      chain.spokes.push_back(std::move(left));
    } else {
      // The shared wall must be a simple path for the result to stay
      // a disc.
      const Word& y = ball_->nf(at);
      auto wall = trace_path(*ball_, 0, y);
      if (!wall) fail(Errc::BallTooSmall, "normal form leaves the ball");
      const std::set<int> seen(wall->begin(), wall->end());
      if (seen.size() != wall->size())
        fail(Errc::NonSimpleNormalForm,
             "normal form " + ball_->alphabet().format_word(y) + " revisits a vertex");
      assert(left.size() == prev_right.size());
      chain.arena.merge_vertices(chain.basepoint, imp.basepoint);
      for (size_t j = 0; j < left.size(); ++j)
        chain.arena.merge_edges(prev_right[j], left[j]);
    }
    chain.spokes.push_back(right);
    chain.arc.push_back(hat);
    chain.arc_samples.push_back(std::move(te));
    prev_right = std::move(right);
    at = next;
  }
  chain.right_path = std::move(prev_right);
  return chain;
}

Filling NDiagramBuilder::seashell(const Word& w) {
  if (!ball_->oracle()(w).empty())
    fail(Errc::NotIdentity, "the word does not represent the identity");
  Filling f;
  if (w.empty()) {
    Arena arena(*ball_);
    const int base = arena.add_vertex(0);
    f.diagram = arena.compact({}, base);
    f.spokes.push_back({});
    return f;
  }
  Chain chain = glue_chain(0, w);
  CompactMaps maps;
  f.diagram = chain.arena.compact(chain.arc, chain.basepoint, &maps);
  for (const auto& s : chain.spokes) f.spokes.push_back(remap_walk(maps, s));
  for (const auto& s : chain.arc_samples) f.edge_combing.push_back(remap_sample(maps, s));
  return f;
}

FillingCatalog FillingCatalog::build(NDiagramBuilder& builder, int max_length) {
  if (max_length < 1) fail(Errc::InvalidArgument, "catalog needs a positive length bound");
  FillingCatalog cat;
  cat.max_length_ = max_length;
  const CayleyBall& ball = builder.ball();
  const Letter top = static_cast<Letter>(ball.alphabet().size() - 1);
  Word w;
  while (true) {
    int i = static_cast<int>(w.size()) - 1;
    while (i >= 0 && w[static_cast<size_t>(i)] == top) w[static_cast<size_t>(i--)] = 0;
    if (i >= 0) {
      ++w[static_cast<size_t>(i)];
    } else {
      if (static_cast<int>(w.size()) == max_length) break;
      w.assign(w.size() + 1, 0);
    }
    if (ball.oracle()(w).empty()) cat.entries_.emplace(w, builder.seashell(w).diagram);
  }
  return cat;
}

const Diagram* FillingCatalog::find(const Word& w) const {
  auto it = entries_.find(w);
  return it == entries_.end() ? nullptr : &it->second;
}

int FillingCatalog::max_intrinsic_diameter() const {
  int best = 0;
  for (const auto& [w, d] : entries_)
    best = std::max(best, intrinsic_profile(d).diameter);
  return best;
}

Filling build_finite_filling(const Word& u, const FillingCatalog& catalog,
                             const CayleyBall& ball) {
  if (!ball.boundary_complete())
    fail(Errc::InvalidArgument, "finite filling needs the whole group inside the ball");
  if (!ball.oracle()(u).empty())
    fail(Errc::NotIdentity, "the word does not represent the identity");

  Arena arena(ball);
  const int base = arena.add_vertex(0);
  Filling f;
  if (u.empty()) {
    f.diagram = arena.compact({}, base);
    f.spokes.push_back({});
    return f;
  }

  auto trace = trace_path(ball, 0, u);
  assert(trace);  // complete balls hold every path
  std::vector<int> verts{base};
  std::vector<int> path;
  for (size_t i = 0; i < u.size(); ++i) {
    const int nv = arena.add_vertex((*trace)[i + 1]);
    path.push_back(arena.add_edge(verts.back(), nv, u[i]));
    verts.push_back(nv);
  }

  // Repeatedly close the earliest-ending minimal trivial subword with
  // its translated catalog disc; the word shrinks by the closed span.
  std::vector<int> cur_verts = verts;
  std::vector<int> cur_edges = path;
  while (!cur_edges.empty()) {
    size_t bi = 0, bj = 0;
    bool found = false;
    for (size_t j = 1; j <= cur_edges.size() && !found; ++j) {
      for (size_t i = j; i-- > 0;) {
        if (arena.projection(cur_verts[i]) == arena.projection(cur_verts[j])) {
          bi = i;
          bj = j;
          found = true;
          break;
        }
      }
    }
    if (!found) fail(Errc::InvalidArgument, "word path never revisits an element");
    Word v;
    for (size_t k = bi; k < bj; ++k) v.push_back(arena.label(cur_edges[k]));
    const Diagram* piece = catalog.find(v);
    if (!piece)
      fail(Errc::CatalogIncomplete,
           "no catalog diagram for " + ball.alphabet().format_word(v));
    Imported imp = arena.import(*piece, ball.nf(arena.projection(cur_verts[bi])));
    arena.merge_vertices(cur_verts[bi], imp.basepoint);
    for (size_t k = 0; k < v.size(); ++k)
      arena.merge_edges(cur_edges[bi + k], imp.boundary.at(k));
    cur_edges.erase(cur_edges.begin() + static_cast<long>(bi),
                    cur_edges.begin() + static_cast<long>(bj));
    cur_verts.erase(cur_verts.begin() + static_cast<long>(bi) + 1,
                    cur_verts.begin() + static_cast<long>(bj) + 1);
  }

  CompactMaps maps;
  f.diagram = arena.compact(path, base, &maps);
  // Combing walks run along the boundary prefix, never deeper into
  // the disc than half the word length.
  std::vector<int> prefix;
  f.spokes.push_back({});
  for (size_t i = 0; i < path.size(); ++i) {
    PathSample s = arena_walk_sample(arena, base, prefix);
    s.push_back({CellRef::Kind::Edge, path[i]});
    f.edge_combing.push_back(remap_sample(maps, s));
    prefix.push_back(path[i]);
    f.spokes.push_back(remap_walk(maps, prefix));
  }
  return f;
}

NDiagram build_thin_diagram(const CayleyBall& ball, int v, Letter a, int K) {
  if (!ball.nf_tree())
    fail(Errc::InvalidArgument,
         "ladder construction needs a ball whose tree follows the normal forms");
  const int u = ball.neighbor(v, a);
  if (u == CayleyBall::kOutside) fail(Errc::DanglingEdge, "the edge leaves the ball");
  const Alphabet& ab = ball.alphabet();
  const Word& yg = ball.nf(v);
  const Word& yh = ball.nf(u);
  const int m = static_cast<int>(yg.size());
  const int n = static_cast<int>(yh.size());
  const int rows = std::max(m, n);
  if (rows == 0) fail(Errc::InvalidArgument, "loop edge at the identity");
  auto tg = trace_path(ball, 0, yg);
  auto th = trace_path(ball, 0, yh);
  if (!tg || !th) fail(Errc::BallTooSmall, "normal form leaves the ball");

  int s = 0;
  while (s < std::min(m, n) && yg[static_cast<size_t>(s)] == yh[static_cast<size_t>(s)]) ++s;

  Arena arena(ball);
  std::vector<int> vg(static_cast<size_t>(m) + 1), vh(static_cast<size_t>(n) + 1);
  const int base = arena.add_vertex(0);
  vg[0] = vh[0] = base;
  std::vector<int> rail_g(static_cast<size_t>(m)), rail_h(static_cast<size_t>(n));
  for (int i = 1; i <= s; ++i) {
    const int nv = arena.add_vertex((*tg)[static_cast<size_t>(i)]);
    const int e = arena.add_edge(vg[static_cast<size_t>(i - 1)], nv, yg[static_cast<size_t>(i - 1)]);
    vg[static_cast<size_t>(i)] = vh[static_cast<size_t>(i)] = nv;
    rail_g[static_cast<size_t>(i - 1)] = rail_h[static_cast<size_t>(i - 1)] = e;
  }
  for (int i = s + 1; i <= m; ++i) {
    const int nv = arena.add_vertex((*tg)[static_cast<size_t>(i)]);
    rail_g[static_cast<size_t>(i - 1)] =
        arena.add_edge(vg[static_cast<size_t>(i - 1)], nv, yg[static_cast<size_t>(i - 1)]);
    vg[static_cast<size_t>(i)] = nv;
  }
  for (int i = s + 1; i <= n; ++i) {
    const int nv = arena.add_vertex((*th)[static_cast<size_t>(i)]);
    rail_h[static_cast<size_t>(i - 1)] =
        arena.add_edge(vh[static_cast<size_t>(i - 1)], nv, yh[static_cast<size_t>(i - 1)]);
    vh[static_cast<size_t>(i)] = nv;
  }
  const int g_vertex = vg[static_cast<size_t>(m)];
  const int h_vertex = vh[static_cast<size_t>(n)];

  // Rungs fold onto the shared prefix; the only other folds are the
  // two bigon shapes of a tree edge.
  const bool child_fold = s == m && n == m + 1 && yh[static_cast<size_t>(m)] == a;
  const bool parent_fold = s == n && m == n + 1 && yg[static_cast<size_t>(n)] == ab.inverse(a);
  const bool fold = child_fold || parent_fold;
  const int hat = child_fold    ? rail_h[static_cast<size_t>(n - 1)]
                  : parent_fold ? (rail_g[static_cast<size_t>(m - 1)] ^ 1)
                                : arena.add_edge(g_vertex, h_vertex, a);

  std::vector<std::vector<int>> rung(static_cast<size_t>(rows) + 1);
  for (int i = s + 1; i < rows; ++i) {
    const int gb = (*tg)[static_cast<size_t>(std::min(i, m))];
    const int hb = (*th)[static_cast<size_t>(std::min(i, n))];
    auto phi = shortlex_geodesic_inside(ball, gb, hb, ball.radius());
    if (!phi) fail(Errc::BallTooSmall, "no inside path between the prefixes");
    if (phi->empty()) fail(Errc::InvalidArgument, "distinct normal forms share an element");
    if (static_cast<int>(phi->size()) > K)
      fail(Errc::FellowTravelerViolation,
           "prefixes at index " + std::to_string(i) + " are " +
               std::to_string(phi->size()) + " apart, over the constant " +
               std::to_string(K));
    auto pv = trace_path(ball, gb, *phi);
    assert(pv);
    int at = i <= m ? vg[static_cast<size_t>(i)] : g_vertex;
    const int goal = i <= n ? vh[static_cast<size_t>(i)] : h_vertex;
    for (size_t j = 0; j < phi->size(); ++j) {
      const bool last = j + 1 == phi->size();
      const int nv = last ? goal : arena.add_vertex((*pv)[j + 1]);
      rung[static_cast<size_t>(i)].push_back(arena.add_edge(at, nv, (*phi)[j]));
      at = nv;
    }
  }
  if (!fold) rung[static_cast<size_t>(rows)] = {hat};

  std::vector<int> faces(static_cast<size_t>(rows) + 1, -1);
  if (!fold) {
    for (int i = s + 1; i <= rows; ++i) {
      std::vector<int> cycle;
      if (i <= m) cycle.push_back(rail_g[static_cast<size_t>(i - 1)]);
      cycle.insert(cycle.end(), rung[static_cast<size_t>(i)].begin(),
                   rung[static_cast<size_t>(i)].end());
      if (i <= n) cycle.push_back(rail_h[static_cast<size_t>(i - 1)] ^ 1);
      const auto& below = rung[static_cast<size_t>(i - 1)];
      for (auto it = below.rbegin(); it != below.rend(); ++it) cycle.push_back(*it ^ 1);
      faces[static_cast<size_t>(i)] = arena.add_face(std::move(cycle));
    }
  }

  std::vector<int> bnd = rail_g;
  bnd.push_back(hat);
  for (auto it = rail_h.rbegin(); it != rail_h.rend(); ++it) bnd.push_back(*it ^ 1);

  PathSample te;
  if (fold) {
    te = arena_walk_sample(arena, base, child_fold ? rail_g : rail_h);
    te.push_back({CellRef::Kind::Edge, hat});
  } else {
    const std::vector<int> shared(rail_g.begin(), rail_g.begin() + s);
    te = arena_walk_sample(arena, base, shared);
    for (int i = s + 1; i <= rows; ++i) {
      te.push_back({CellRef::Kind::Face, faces[static_cast<size_t>(i)]});
      const auto& r = rung[static_cast<size_t>(i)];
      te.push_back({CellRef::Kind::Edge, r[(r.size() - 1) / 2]});
    }
  }

  CompactMaps maps;
  NDiagram nd;
  nd.diagram = arena.compact(bnd, base, &maps);
  nd.src_path = remap_walk(maps, rail_g);
  nd.dst_path = remap_walk(maps, rail_h);
  nd.to_edge = remap_sample(maps, te);
  nd.hat_edge = maps.edge.at(static_cast<size_t>(hat));
  return nd;
}

}  // namespace tamefill
