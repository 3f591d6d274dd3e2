#include "tamefill/diagram.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace tamefill {

Word Diagram::face_word(int f) const {
  Word w;
  for (int d : face(f)) w.push_back(label(d));
  return w;
}

Word Diagram::boundary_word() const {
  Word w;
  for (int d : boundary_) w.push_back(label(d));
  return w;
}

Diagram Diagram::reversed_boundary() const {
  Diagram d = *this;
  d.boundary_.clear();
  for (auto it = boundary_.rbegin(); it != boundary_.rend(); ++it)
    d.boundary_.push_back(*it ^ 1);
  return d;
}

std::vector<std::vector<int>> outgoing_edges(const Diagram& d) {
  std::vector<std::vector<int>> out(static_cast<size_t>(d.vertex_count()));
  for (int e = 0; e < 2 * d.edge_count(); ++e) {
    out.at(static_cast<size_t>(d.src(e))).push_back(e);
  }
  return out;
}

int Arena::find(std::vector<int>& parent, int x) const {
  int root = x;
  while (parent[static_cast<size_t>(root)] != root) root = parent[static_cast<size_t>(root)];
  while (parent[static_cast<size_t>(x)] != root) {
    int next = parent[static_cast<size_t>(x)];
    parent[static_cast<size_t>(x)] = root;
    x = next;
  }
  return root;
}

int Arena::add_vertex(int proj) {
  if (proj < 0 || proj >= ball_->vertex_count()) {
    fail(Errc::InvalidArgument, "arena vertex projection outside the ball");
  }
  vparent_.push_back(static_cast<int>(vparent_.size()));
  vproj_.push_back(proj);
  return static_cast<int>(vparent_.size()) - 1;
}

int Arena::add_edge(int src, int dst, Letter a) {
  const int s = find_vertex(src);
  const int t = find_vertex(dst);
  const int d = static_cast<int>(eparent_.size());
  eparent_.push_back(d);
  eparent_.push_back(d + 1);
  esrc_.push_back(s);
  esrc_.push_back(t);
  elab_.push_back(a);
  elab_.push_back(ball_->alphabet().inverse(a));
  return d;
}

int Arena::add_face(std::vector<int> cycle) {
  faces_.push_back(std::move(cycle));
  return static_cast<int>(faces_.size()) - 1;
}

int Arena::find_vertex(int v) const { return find(vparent_, v); }
int Arena::find_edge(int d) const { return find(eparent_, d); }

int Arena::src(int d) const {
  return find_vertex(esrc_[static_cast<size_t>(find_edge(d))]);
}

int Arena::dst(int d) const { return src(d ^ 1); }

Letter Arena::label(int d) const { return elab_[static_cast<size_t>(find_edge(d))]; }

int Arena::projection(int v) const { return vproj_[static_cast<size_t>(find_vertex(v))]; }

void Arena::merge_vertices(int v1, int v2) {
  const int r1 = find_vertex(v1);
  const int r2 = find_vertex(v2);
  if (r1 == r2) return;
  if (vproj_[static_cast<size_t>(r1)] != vproj_[static_cast<size_t>(r2)]) {
    fail(Errc::InvalidArgument, "cannot glue vertices with different projections");
  }
  vparent_[static_cast<size_t>(r2)] = r1;
}

void Arena::merge_edges(int d1, int d2) {
  const int r1 = find_edge(d1);
  const int r2 = find_edge(d2);
  if (r1 == r2) return;
  if (find_edge(d1 ^ 1) == r2) {
    fail(Errc::InvalidArgument, "cannot glue an edge to its own reversal");
  }
  if (elab_[static_cast<size_t>(r1)] != elab_[static_cast<size_t>(r2)]) {
    fail(Errc::InvalidArgument, "cannot glue edges with different labels");
  }
  merge_vertices(esrc_[static_cast<size_t>(r1)], esrc_[static_cast<size_t>(r2)]);
  merge_vertices(esrc_[static_cast<size_t>(r1 ^ 1)], esrc_[static_cast<size_t>(r2 ^ 1)]);
  const int t1 = find_edge(r1 ^ 1);
  const int t2 = find_edge(r2 ^ 1);
  eparent_[static_cast<size_t>(r2)] = r1;
  eparent_[static_cast<size_t>(t2)] = t1;
}

Imported Arena::import(const Diagram& d, const Word& translate) {
  Imported result;
  result.vertices.reserve(static_cast<size_t>(d.vertex_count()));
  for (int v = 0; v < d.vertex_count(); ++v) {
    int proj = d.projection(v);
    if (!translate.empty()) {
      Word target = translate;
      const Word& tail = ball_->nf(proj);
      target.insert(target.end(), tail.begin(), tail.end());
      const int moved = ball_->find(ball_->oracle()(target));
      if (moved < 0) {
        fail(Errc::BallTooSmall,
             "translated projection " + ball_->alphabet().format_word(target) +
                 " lies outside the ball");
      }
      proj = moved;
    }
    result.vertices.push_back(add_vertex(proj));
  }
  result.edges.assign(static_cast<size_t>(2 * d.edge_count()), -1);
  for (int k = 0; k < d.edge_count(); ++k) {
    const int e = add_edge(result.vertices[static_cast<size_t>(d.src(2 * k))],
                           result.vertices[static_cast<size_t>(d.dst(2 * k))],
                           d.label(2 * k));
    result.edges[static_cast<size_t>(2 * k)] = e;
    result.edges[static_cast<size_t>(2 * k + 1)] = e ^ 1;
  }
  result.face_offset = static_cast<int>(faces_.size());
  for (int f = 0; f < d.face_count(); ++f) {
    std::vector<int> cycle;
    for (int e : d.face(f)) cycle.push_back(result.edges[static_cast<size_t>(e)]);
    add_face(std::move(cycle));
  }
  for (int e : d.boundary()) result.boundary.push_back(result.edges[static_cast<size_t>(e)]);
  result.basepoint = result.vertices[static_cast<size_t>(d.basepoint())];
  return result;
}

Diagram Arena::compact(const std::vector<int>& boundary, int basepoint,
                       CompactMaps* maps) const {
  Diagram out;
  // Dense ids in first-seen raw-id order, so construction order pins
  // the numbering.
  std::vector<int> vdense(vparent_.size(), -1);
  for (size_t v = 0; v < vparent_.size(); ++v) {
    const int r = find_vertex(static_cast<int>(v));
    if (vdense[static_cast<size_t>(r)] < 0) {
      vdense[static_cast<size_t>(r)] = static_cast<int>(out.vproj_.size());
      out.vproj_.push_back(vproj_[static_cast<size_t>(r)]);
    }
  }
  std::vector<int> edense(eparent_.size(), -1);
  for (size_t d = 0; d < eparent_.size(); ++d) {
    const int r = find_edge(static_cast<int>(d));
    if (edense[static_cast<size_t>(r)] >= 0) continue;
    const int t = find_edge(static_cast<int>(d) ^ 1);
    const int id = static_cast<int>(out.elab_.size());
    edense[static_cast<size_t>(r)] = id;
    edense[static_cast<size_t>(t)] = id + 1;
    out.esrc_.push_back(vdense[static_cast<size_t>(find_vertex(esrc_[static_cast<size_t>(r)]))]);
    out.esrc_.push_back(vdense[static_cast<size_t>(find_vertex(esrc_[static_cast<size_t>(t)]))]);
    out.elab_.push_back(elab_[static_cast<size_t>(r)]);
    out.elab_.push_back(elab_[static_cast<size_t>(t)]);
  }
  auto edge_of = [&](int d) { return edense[static_cast<size_t>(find_edge(d))]; };
  for (const auto& cycle : faces_) {
    std::vector<int> dense;
    dense.reserve(cycle.size());
    for (int d : cycle) dense.push_back(edge_of(d));
    out.faces_.push_back(std::move(dense));
  }
  for (int d : boundary) out.boundary_.push_back(edge_of(d));
  out.basepoint_ = vdense[static_cast<size_t>(find_vertex(basepoint))];
  if (maps) {
    maps->vertex.resize(vparent_.size());
    for (size_t v = 0; v < vparent_.size(); ++v) {
      maps->vertex[v] = vdense[static_cast<size_t>(find_vertex(static_cast<int>(v)))];
    }
    maps->edge.resize(eparent_.size());
    for (size_t d = 0; d < eparent_.size(); ++d) {
      maps->edge[d] = edge_of(static_cast<int>(d));
    }
  }
  return out;
}

ValidationReport validate_diagram(const Diagram& d, const CayleyBall& ball,
                                  const Presentation& p) {
  ValidationReport report;
  auto problem = [&](std::string text) { report.problems.push_back(std::move(text)); };
  const Alphabet& ab = ball.alphabet();

  if (d.vertex_count() < 1) {
    problem("no vertices");
    report.passed = false;
    return report;
  }
  for (int v = 0; v < d.vertex_count(); ++v) {
    if (d.projection(v) < 0 || d.projection(v) >= ball.vertex_count()) {
      problem("vertex " + std::to_string(v) + " projects outside the ball");
    }
  }
  if (!report.problems.empty()) {
    report.passed = false;
    return report;
  }
  if (d.projection(d.basepoint()) != 0) {
    problem("basepoint projects to " + ab.format_word(ball.nf(d.projection(d.basepoint()))) +
            " instead of the identity");
  }
  for (int e = 0; e < 2 * d.edge_count(); e += 2) {
    if (d.label(e ^ 1) != ab.inverse(d.label(e))) {
      problem("edge " + std::to_string(e >> 1) + " has mismatched twin labels");
    }
  }
  for (int e = 0; e < 2 * d.edge_count(); ++e) {
    const int target = ball.neighbor(d.projection(d.src(e)), d.label(e));
    if (target != d.projection(d.dst(e))) {
      problem("edge " + std::to_string(e >> 1) + " projects inconsistently at " +
              ab.format_word(ball.nf(d.projection(d.src(e)))) + " by " +
              std::string(ab.name(d.label(e))));
    }
  }

  // Connectivity of the 1-skeleton.
  {
    std::vector<char> seen(static_cast<size_t>(d.vertex_count()), 0);
    std::deque<int> queue{d.basepoint()};
    seen[static_cast<size_t>(d.basepoint())] = 1;
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      for (int e = 0; e < 2 * d.edge_count(); ++e) {
        if (d.src(e) != v) continue;
        if (!seen[static_cast<size_t>(d.dst(e))]) {
          seen[static_cast<size_t>(d.dst(e))] = 1;
          queue.push_back(d.dst(e));
        }
      }
    }
    for (int v = 0; v < d.vertex_count(); ++v) {
      if (!seen[static_cast<size_t>(v)]) {
        problem("vertex " + std::to_string(v) + " is unreachable from the basepoint");
      }
    }
  }

  if (d.euler_characteristic() != 1) {
    problem("Euler characteristic " + std::to_string(d.euler_characteristic()) +
            ", expected 1");
  }

  for (int f = 0; f < d.face_count(); ++f) {
    const auto& cycle = d.face(f);
    if (cycle.empty()) {
      problem("face " + std::to_string(f) + " is empty");
      continue;
    }
    for (size_t i = 0; i < cycle.size(); ++i) {
      const int here = cycle[i];
      const int next = cycle[(i + 1) % cycle.size()];
      if (d.dst(here) != d.src(next)) {
        problem("face " + std::to_string(f) + " does not close up");
        break;
      }
    }
    if (!p.is_relator(d.face_word(f))) {
      problem("face " + std::to_string(f) + " reads " + ab.format_word(d.face_word(f)) +
              ", not a relator");
    }
  }

  {
    const auto& walk = d.boundary();
    int at = d.basepoint();
    bool ok = true;
    for (int e : walk) {
      if (d.src(e) != at) {
        ok = false;
        break;
      }
      at = d.dst(e);
    }
    if (!ok || at != d.basepoint()) {
      problem("boundary is not a closed walk at the basepoint");
    }
  }

  {
    std::vector<int> sides(static_cast<size_t>(d.edge_count()), 0);
    for (int f = 0; f < d.face_count(); ++f) {
      for (int e : d.face(f)) ++sides[static_cast<size_t>(e >> 1)];
    }
    for (int e : d.boundary()) ++sides[static_cast<size_t>(e >> 1)];
    for (int k = 0; k < d.edge_count(); ++k) {
      if (sides[static_cast<size_t>(k)] != 2) {
        problem("edge " + std::to_string(k) + " has " +
                std::to_string(sides[static_cast<size_t>(k)]) +
                " incident sides, expected 2");
      }
    }
  }

  report.passed = report.problems.empty();
  return report;
}

namespace {

DiagramProfile profile_from_vertex_units(const Diagram& d, const std::vector<int>& vdist) {
  DiagramProfile p;
  p.vertex.reserve(vdist.size());
  for (int dist : vdist) {
    p.vertex.push_back(Q4{4 * dist});
    p.diameter = std::max(p.diameter, dist);
  }
  p.edge.reserve(static_cast<size_t>(d.edge_count()));
  for (int k = 0; k < d.edge_count(); ++k) {
    const int lo = std::min(vdist[static_cast<size_t>(d.src(2 * k))],
                            vdist[static_cast<size_t>(d.dst(2 * k))]);
    p.edge.push_back(Q4{4 * lo + 2});
  }
  p.face.reserve(static_cast<size_t>(d.face_count()));
  for (int f = 0; f < d.face_count(); ++f) {
    int top = 0;
    bool any = false;
    for (int e : d.face(f)) {
      top = std::max(top, p.edge[static_cast<size_t>(e >> 1)].q);
      any = true;
    }
    if (!any) fail(Errc::InvalidArgument, "profile of an empty face");
    p.face.push_back(Q4{top - 1});
  }
  return p;
}

}  // namespace

DiagramProfile intrinsic_profile(const Diagram& d) {
  std::vector<int> vdist(static_cast<size_t>(d.vertex_count()), -1);
  std::deque<int> queue{d.basepoint()};
  vdist[static_cast<size_t>(d.basepoint())] = 0;
  const auto out = outgoing_edges(d);
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int e : out[static_cast<size_t>(v)]) {
      const int u = d.dst(e);
      if (vdist[static_cast<size_t>(u)] < 0) {
        vdist[static_cast<size_t>(u)] = vdist[static_cast<size_t>(v)] + 1;
        queue.push_back(u);
      }
    }
  }
  for (int dist : vdist) {
    if (dist < 0) fail(Errc::InvalidArgument, "profile of a disconnected diagram");
  }
  return profile_from_vertex_units(d, vdist);
}

DiagramProfile extrinsic_profile(const Diagram& d, const CayleyBall& ball) {
  std::vector<int> vdist;
  vdist.reserve(static_cast<size_t>(d.vertex_count()));
  for (int v = 0; v < d.vertex_count(); ++v) {
    vdist.push_back(ball.dist(d.projection(v)));
  }
  DiagramProfile p = profile_from_vertex_units(d, vdist);
  p.face_collapsed.reserve(static_cast<size_t>(d.face_count()));
  for (int f = 0; f < d.face_count(); ++f) {
    std::set<std::pair<int, Letter>> images;
    bool collapsed = false;
    for (int e : d.face(f)) {
      const auto canon = ball.canonical(d.projection(d.src(e)), d.label(e));
      if (!images.insert({canon.src, canon.label}).second) collapsed = true;
    }
    p.face_collapsed.push_back(collapsed);
  }
  return p;
}

Q4 cell_value(const DiagramProfile& p, CellRef c) {
  switch (c.kind) {
    case CellRef::Kind::Vertex: return p.vertex.at(static_cast<size_t>(c.id));
    case CellRef::Kind::Edge: return p.edge.at(static_cast<size_t>(c.id));
    case CellRef::Kind::Face: return p.face.at(static_cast<size_t>(c.id));
  }
  fail(Errc::InvalidArgument, "bad cell reference");
}

}  // namespace tamefill
