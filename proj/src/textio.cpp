#include "tamefill/textio.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <sstream>
#include <string_view>

#include "json.hpp"

namespace tamefill {

namespace {

using nlohmann::json;

[[noreturn]] void fail_line(int line, const std::string& msg) {
  fail(Errc::ParseError, "line " + std::to_string(line) + ": " + msg);
}

std::string strip_comment(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  size_t hash = line.find('#');
  if (hash != std::string_view::npos) line = line.substr(0, hash);
  return std::string(line);
}

std::vector<std::string> split_ws(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

bool valid_name(const std::string& tok) {
  return tok != "1" && tok != "->" && tok.find(',') == std::string::npos;
}

void check_letters(const std::vector<std::string>& toks, const Alphabet& ab,
                   int line) {
  for (const std::string& t : toks) {
    if (t == "1") continue;
    if (!ab.find(t)) fail_line(line, "unknown letter '" + t + "'");
  }
}

std::string join(const std::vector<std::string>& toks) {
  std::string out;
  for (const std::string& t : toks) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

}  // namespace

ParsedInput parse_presentation_file(const std::string& text, long step_budget,
                                    long node_budget) {
  std::vector<std::string> gens;
  bool saw_gens = false;
  int gens_line = 0;
  std::map<std::string, std::string> partner;
  struct RawLine {
    std::string text;
    int line;
  };
  std::vector<RawLine> relator_raw;
  struct RawRule {
    std::string lhs, rhs;
    int line;
  };
  std::vector<RawRule> rule_raw;

  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = strip_comment(raw);
    std::vector<std::string> toks = split_ws(line);
    if (toks.empty()) continue;
    const std::string& head = toks[0];
    std::vector<std::string> rest(toks.begin() + 1, toks.end());
    if (head == "generators:") {
      if (saw_gens) fail_line(line_no, "duplicate generators directive");
      if (rest.empty()) fail_line(line_no, "empty generators list");
      saw_gens = true;
      gens_line = line_no;
      gens = rest;
    } else if (head == "inverses:") {
      size_t at = line.find("inverses:") + std::string("inverses:").size();
      std::string body = line.substr(at);
      std::istringstream chunks(body);
      std::string chunk;
      while (std::getline(chunks, chunk, ',')) {
        std::vector<std::string> pair = split_ws(chunk);
        if (pair.size() != 2)
          fail_line(line_no, "inverse pair needs exactly two letters");
        if (pair[0] == pair[1])
          fail_line(line_no, "a letter cannot pair with itself");
        for (int side = 0; side < 2; ++side) {
          const std::string& a = pair[side];
          const std::string& b = pair[1 - side];
          auto [it, fresh] = partner.emplace(a, b);
          if (!fresh && it->second != b)
            fail_line(line_no, "letter '" + a + "' paired twice");
        }
      }
    } else if (head == "relator:") {
      relator_raw.push_back({join(rest), line_no});
    } else if (head == "rule:") {
      size_t arrow = 0;
      int arrows = 0;
      for (size_t i = 0; i < rest.size(); ++i)
        if (rest[i] == "->") {
          arrow = i;
          ++arrows;
        }
      if (arrows != 1) fail_line(line_no, "rule needs exactly one ->");
      std::vector<std::string> lhs(rest.begin(), rest.begin() + arrow);
      std::vector<std::string> rhs(rest.begin() + arrow + 1, rest.end());
      if (lhs.empty()) fail_line(line_no, "rule missing left side");
      if (rhs.empty()) fail_line(line_no, "rule missing right side");
      rule_raw.push_back({join(lhs), join(rhs), line_no});
    } else {
      fail_line(line_no, "unknown directive '" + head + "'");
    }
  }

  if (!saw_gens) fail(Errc::ParseError, "missing generators directive");

  for (size_t i = 0; i < gens.size(); ++i) {
    if (!valid_name(gens[i])) fail_line(gens_line, "bad letter name '" + gens[i] + "'");
    for (size_t j = i + 1; j < gens.size(); ++j)
      if (gens[i] == gens[j])
        fail_line(gens_line, "duplicate letter '" + gens[i] + "'");
  }
  for (const auto& [a, b] : partner) {
    bool known = false;
    for (const std::string& g : gens) known = known || g == a;
    if (!known) fail_line(gens_line, "inverse names unknown letter '" + a + "'");
    (void)b;
  }

  Alphabet ab;
  for (size_t i = 0; i < gens.size();) {
    auto it = partner.find(gens[i]);
    if (it == partner.end()) {
      ab.add_involution(gens[i]);
      ++i;
    } else {
      if (i + 1 >= gens.size() || gens[i + 1] != it->second)
        fail_line(gens_line, "inverse pair " + gens[i] + " " + it->second +
                                 " must be adjacent in generators");
      ab.add_pair(gens[i], it->second);
      i += 2;
    }
  }

  std::vector<Word> relators;
  for (const RawLine& r : relator_raw) {
    check_letters(split_ws(r.text), ab, r.line);
    Word w = ab.parse_word(r.text);
    if (w.empty()) fail_line(r.line, "empty relator");
    relators.push_back(w);
  }

  std::vector<Rule> rules;
  for (const RawRule& r : rule_raw) {
    check_letters(split_ws(r.lhs), ab, r.line);
    check_letters(split_ws(r.rhs), ab, r.line);
    Word lhs = ab.parse_word(r.lhs);
    if (lhs.empty()) fail_line(r.line, "empty rule left side");
    rules.push_back({lhs, ab.parse_word(r.rhs)});
  }

  ParsedInput out{make_presentation(ab, relators), std::nullopt};
  if (!rules.empty())
    out.system.emplace(ab, std::move(rules), step_budget, node_budget);
  return out;
}

std::string display_word(const Alphabet& ab, const Word& w) {
  return w.empty() ? "1" : ab.format_word(w);
}

std::string print_presentation(const Presentation& p) {
  const Alphabet& ab = p.alphabet;
  std::string out = "generators:";
  for (int l = 0; l < ab.size(); ++l) {
    out += ' ';
    out += ab.name(static_cast<Letter>(l));
  }
  out += '\n';
  std::vector<std::string> pairs;
  for (int l = 0; l < ab.size(); ++l) {
    Letter inv = ab.inverse(static_cast<Letter>(l));
    if (inv != static_cast<Letter>(l) && l < static_cast<int>(inv))
      pairs.push_back(std::string(ab.name(static_cast<Letter>(l))) + " " +
                      std::string(ab.name(inv)));
  }
  if (!pairs.empty()) {
    out += "inverses: ";
    for (size_t i = 0; i < pairs.size(); ++i) {
      if (i) out += ", ";
      out += pairs[i];
    }
    out += '\n';
  }
  for (const Word& r : p.relators) out += "relator: " + display_word(ab, r) + '\n';
  return out;
}

std::string print_input(const ParsedInput& in) {
  std::string out = print_presentation(in.presentation);
  if (in.system) {
    const Alphabet& ab = in.system->alphabet();
    for (const Rule& r : in.system->rules())
      out += "rule: " + display_word(ab, r.lhs) + " -> " +
             display_word(ab, r.rhs) + '\n';
  }
  return out;
}

namespace {

json ball_vertices_json(const CayleyBall& ball) {
  json verts = json::array();
  for (int v = 0; v < ball.vertex_count(); ++v)
    verts.push_back({{"id", v},
                     {"nf", display_word(ball.alphabet(), ball.nf(v))},
                     {"dist", ball.dist(v)}});
  return verts;
}

}  // namespace

std::string ball_json(const CayleyBall& ball) {
  json j;
  j["radius"] = ball.radius();
  j["boundary_complete"] = ball.boundary_complete();
  j["vertices"] = ball_vertices_json(ball);
  json edges = json::array();
  for (const CayleyBall::DirEdge& e : ball.undirected_edges())
    edges.push_back({{"src", e.src},
                     {"label", std::string(ball.alphabet().name(e.label))},
                     {"dst", ball.neighbor(e.src, e.label)},
                     {"tree", ball.tree_edge(e.src, e.label)}});
  j["edges"] = edges;
  return j.dump(2) + "\n";
}

namespace {

std::string dot_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string ball_dot(const CayleyBall& ball) {
  std::string out = "graph ball {\n  node [shape=circle fontsize=10];\n";
  for (int v = 0; v < ball.vertex_count(); ++v)
    out += "  v" + std::to_string(v) + " [label=\"" +
           dot_escape(display_word(ball.alphabet(), ball.nf(v))) + "\"];\n";
  for (const CayleyBall::DirEdge& e : ball.undirected_edges()) {
    out += "  v" + std::to_string(e.src) + " -- v" +
           std::to_string(ball.neighbor(e.src, e.label)) + " [label=\"" +
           dot_escape(ball.alphabet().name(e.label)) + "\"";
    if (ball.tree_edge(e.src, e.label)) out += " penwidth=2";
    out += "];\n";
  }
  out += "}\n";
  return out;
}

std::string flow_table(const FlowFunction& ff, const CayleyBall& ball) {
  std::string out;
  for (int v = 0; v < ball.vertex_count(); ++v)
    for (int a = 0; a < ball.alphabet().size(); ++a) {
      Letter la = static_cast<Letter>(a);
      if (!ff.assigned(v, la)) continue;
      out += display_word(ball.alphabet(), ball.nf(v));
      out += '\t';
      out += ball.alphabet().name(la);
      out += '\t';
      out += display_word(ball.alphabet(), ff.edge(v, la).label);
      out += '\n';
    }
  return out;
}

namespace {

std::string cell_name(CellRef c) {
  const char* tag = c.kind == CellRef::Kind::Vertex  ? "v"
                    : c.kind == CellRef::Kind::Edge ? "e"
                                                    : "f";
  return tag + std::to_string(c.id);
}

json sample_json(const PathSample& sample) {
  json arr = json::array();
  for (CellRef c : sample) arr.push_back(cell_name(c));
  return arr;
}

}  // namespace

std::string diagram_json(const Diagram& d, const CayleyBall& ball,
                         const DiagramProfile& prof) {
  const Alphabet& ab = ball.alphabet();
  json j;
  json verts = json::array();
  for (int v = 0; v < d.vertex_count(); ++v) {
    int proj = d.projection(v);
    verts.push_back({{"id", v},
                     {"nf", display_word(ab, ball.nf(proj))},
                     {"dist", ball.dist(proj)}});
  }
  j["vertices"] = verts;
  json edges = json::array();
  for (int e = 0; e < d.edge_count(); ++e) {
    int dir = 2 * e;
    edges.push_back(
        {{"id", e},
         {"src", d.src(dir)},
         {"dst", d.dst(dir)},
         {"label", std::string(ab.name(d.label(dir)))},
         {"tree", ball.tree_edge(d.projection(d.src(dir)), d.label(dir))}});
  }
  j["edges"] = edges;
  json faces = json::array();
  for (int f = 0; f < d.face_count(); ++f)
    faces.push_back({{"id", f}, {"edges", d.face(f)}});
  j["faces"] = faces;
  j["boundary"] = d.boundary();
  json profile;
  for (int v = 0; v < d.vertex_count(); ++v)
    profile[cell_name({CellRef::Kind::Vertex, v})] = prof.vertex[v].q;
  for (int e = 0; e < d.edge_count(); ++e)
    profile[cell_name({CellRef::Kind::Edge, e})] = prof.edge[e].q;
  for (int f = 0; f < d.face_count(); ++f)
    profile[cell_name({CellRef::Kind::Face, f})] = prof.face[f].q;
  j["profile"] = profile;
  return j.dump(2) + "\n";
}

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '&')
      out += "&amp;";
    else if (c == '<')
      out += "&lt;";
    else if (c == '>')
      out += "&gt;";
    else
      out += c;
  }
  return out;
}

// Edge labels at midpoints, then vertex dots; the basepoint is red.
std::string svg_labels_and_nodes(const Diagram& d, const Alphabet& ab,
                                 const std::vector<double>& x,
                                 const std::vector<double>& y) {
  std::string out;
  for (int e = 0; e < d.edge_count(); ++e) {
    int dir = 2 * e;
    double mx = (x[d.src(dir)] + x[d.dst(dir)]) / 2;
    double my = (y[d.src(dir)] + y[d.dst(dir)]) / 2;
    out += "  <text x=\"" + num(mx) + "\" y=\"" + num(my - 2) + "\">";
    out += xml_escape(ab.name(d.label(dir)));
    out += "</text>\n";
  }
  out += "</g>\n<g>\n";
  for (int v = 0; v < d.vertex_count(); ++v)
    out += "  <circle cx=\"" + num(x[v]) + "\" cy=\"" + num(y[v]) +
           "\" r=\"4\" fill=\"" +
           (v == d.basepoint() ? std::string("#cc3311") : std::string("#4477aa")) +
           "\"/>\n";
  return out + "</g>\n</svg>\n";
}

}  // namespace

std::string diagram_svg(const Diagram& d, const Alphabet& ab) {
  const int V = d.vertex_count();
  const double cx = 250, cy = 250, radius = 210;
  std::vector<double> x(V, cx), y(V, cy);
  std::vector<char> fixed(V, 0);
  std::vector<int> ring;
  for (int v : boundary_vertices(d))
    if (!fixed[v]) {
      fixed[v] = 1;
      ring.push_back(v);
    }
  for (size_t i = 0; i < ring.size(); ++i) {
    double ang = -std::numbers::pi / 2 +
                 2 * std::numbers::pi * static_cast<double>(i) /
                     static_cast<double>(ring.size());
    x[ring[i]] = cx + radius * std::cos(ang);
    y[ring[i]] = cy + radius * std::sin(ang);
  }
  if (ring.size() == 1) {
    x[ring[0]] = cx;
    y[ring[0]] = cy;
  }
  std::vector<std::vector<int>> adj = outgoing_edges(d);
  for (int round = 0; round < 300; ++round)
    for (int v = 0; v < V; ++v) {
      if (fixed[v] || adj[v].empty()) continue;
      double sx = 0, sy = 0;
      for (int dir : adj[v]) {
        sx += x[d.dst(dir)];
        sy += y[d.dst(dir)];
      }
      x[v] = sx / static_cast<double>(adj[v].size());
      y[v] = sy / static_cast<double>(adj[v].size());
    }

  std::string out =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 500 500\" "
      "width=\"500\" height=\"500\">\n";
  out += "<g stroke=\"#556677\" stroke-width=\"1.5\">\n";
  for (int e = 0; e < d.edge_count(); ++e) {
    int dir = 2 * e;
    out += "  <line x1=\"" + num(x[d.src(dir)]) + "\" y1=\"" +
           num(y[d.src(dir)]) + "\" x2=\"" + num(x[d.dst(dir)]) + "\" y2=\"" +
           num(y[d.dst(dir)]) + "\"/>\n";
  }
  out += "</g>\n<g font-family=\"monospace\" font-size=\"10\" fill=\"#333333\" "
         "text-anchor=\"middle\">\n";
  return out + svg_labels_and_nodes(d, ab, x, y);
}

std::string tameness_csv(const std::vector<TamenessCsvRow>& rows) {
  std::string out = "x_quarters,f_quarters,bound_quarters\n";
  for (const TamenessCsvRow& r : rows) {
    out += std::to_string(r.x.q) + "," + std::to_string(r.f.q) + ",";
    if (r.bound) out += std::to_string(r.bound->q);
    out += "\n";
  }
  return out;
}

std::string combing_json(const Filling& f) {
  json j;
  for (size_t i = 0; i < f.spokes.size(); ++i)
    j["vertex_" + std::to_string(i)] =
        sample_json(walk_sample(f.diagram, f.spokes[i], f.diagram.basepoint()));
  for (size_t i = 0; i < f.edge_combing.size(); ++i)
    j["edge_" + std::to_string(i)] = sample_json(f.edge_combing[i]);
  return j.dump(2) + "\n";
}

std::string combing_json(const NDiagram& nd) {
  json j;
  j["src_path"] =
      sample_json(walk_sample(nd.diagram, nd.src_path, nd.diagram.basepoint()));
  j["dst_path"] =
      sample_json(walk_sample(nd.diagram, nd.dst_path, nd.diagram.basepoint()));
  j["to_edge"] = sample_json(nd.to_edge);
  return j.dump(2) + "\n";
}

}  // namespace tamefill
