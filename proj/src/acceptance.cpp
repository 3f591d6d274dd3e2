#include "tamefill/acceptance.hpp"

#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "tamefill/build.hpp"
#include "tamefill/cayley.hpp"
#include "tamefill/diagram.hpp"
#include "tamefill/flow.hpp"
#include "tamefill/presets.hpp"
#include "tamefill/rewrite.hpp"
#include "tamefill/tameness.hpp"
#include "tamefill/word.hpp"

namespace tamefill {

namespace {

// Budgets sized so no honest criterion trips them.
constexpr long kStepBudget = 100000000;
constexpr long kNodeBudget = 10000000;

// Exhaustive-word caps per criterion.
constexpr int kRewriteWordLen = 5;
constexpr size_t kReachCap = 100000;
constexpr int kPoolSize = 50;
constexpr int kSuiteLenZ2 = 8;
constexpr int kSuiteLenS3 = 6;
constexpr int kKappaMax = 10;
constexpr int kGammaBrute = 7;
constexpr int kProbeMax = 6;
constexpr int kPredicateLen = 4;

std::vector<Word> all_words(int letters, int maxlen) {
  std::vector<Word> out{Word{}};
  std::vector<Word> level{Word{}};
  for (int len = 1; len <= maxlen; ++len) {
    std::vector<Word> next;
    for (const Word& w : level)
      for (int a = 0; a < letters; ++a) {
        Word ext = w;
        ext.push_back(static_cast<Letter>(a));
        next.push_back(ext);
      }
    out.insert(out.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return out;
}

// Freely reduced nonempty words of the given length bound that the
// system sends to the empty word.
std::vector<Word> trivial_words(const RewritingSystem& rs, int maxlen) {
  std::vector<Word> out;
  for (const Word& w : all_words(rs.alphabet().size(), maxlen)) {
    if (w.empty() || !is_freely_reduced(rs.alphabet(), w)) continue;
    if (normal_form(rs, w).empty()) out.push_back(w);
  }
  return out;
}

std::vector<Word> rewrite_successors(const std::vector<Rule>& rules,
                                     const Word& w) {
  std::vector<Word> out;
  for (const Rule& r : rules)
    for (size_t at = w.find(r.lhs); at != Word::npos;
         at = w.find(r.lhs, at + 1))
      out.push_back(w.substr(0, at) + r.rhs + w.substr(at + r.lhs.size()));
  return out;
}

bool irreducible(const std::vector<Rule>& rules, const Word& w) {
  for (const Rule& r : rules)
    if (w.find(r.lhs) != Word::npos) return false;
  return true;
}

struct Ctx {
  std::map<std::string, RewritingSystem> systems;
  std::map<std::string, CayleyBall> balls;

  const RewritingSystem& sys(const std::string& name) {
    auto it = systems.find(name);
    if (it == systems.end()) {
      const PresetEntry& entry = preset(name);
      it = systems
               .emplace(name, RewritingSystem(entry.rs->alphabet(),
                                              entry.rs->rules(), kStepBudget,
                                              kNodeBudget))
               .first;
    }
    return it->second;
  }

  const CayleyBall& ball(const std::string& name, int radius) {
    std::string key = name + "/" + std::to_string(radius);
    auto it = balls.find(key);
    if (it == balls.end()) {
      const RewritingSystem& rs = sys(name);
      it = balls
               .emplace(key, build_ball(
                                 [rs](const Word& w) {
                                   return normal_form(rs, w);
                                 },
                                 rs.alphabet(), radius))
               .first;
    }
    return it->second;
  }

  // One measured combing family: diagrams, per-word intrinsic
  // diameters, and the merged measured functions.
  struct Family {
    std::vector<Word> words;
    std::vector<Filling> fillings;
    std::vector<int> idiams;
    StepFunction fi, fe;
    int catalog_idiam = 0;
  };

  std::optional<Family> z2_rw, z2_ac, s3_rw, z3_fin, s3_fin;

  Family measure_seashells(const std::string& name, int radius,
                           const FlowFunction& ff, int maxlen) {
    const CayleyBall& b = ball(name, radius);
    NDiagramBuilder builder(ff, b);
    Family fam;
    fam.words = trivial_words(sys(name), maxlen);
    TamenessMeter mi, me;
    for (const Word& w : fam.words) {
      Filling f = builder.seashell(w);
      DiagramProfile prof = intrinsic_profile(f.diagram);
      fam.idiams.push_back(prof.diameter);
      mi.add_filling(f.diagram, prof, f);
      me.add_filling(f.diagram, extrinsic_profile(f.diagram, b), f);
      fam.fillings.push_back(std::move(f));
    }
    fam.fi = mi.result();
    fam.fe = me.result();
    return fam;
  }

  Family measure_finite(const std::string& name, int radius, int catalog_len,
                        int maxlen) {
    const CayleyBall& b = ball(name, radius);
    FlowFunction ff = rewriting_flow(sys(name), b);
    NDiagramBuilder builder(ff, b);
    FillingCatalog cat = FillingCatalog::build(builder, catalog_len);
    Family fam;
    fam.catalog_idiam = cat.max_intrinsic_diameter();
    fam.words = trivial_words(sys(name), maxlen);
    TamenessMeter mi, me;
    for (const Word& w : fam.words) {
      Filling f = build_finite_filling(w, cat, b);
      DiagramProfile prof = intrinsic_profile(f.diagram);
      fam.idiams.push_back(prof.diameter);
      mi.add_filling(f.diagram, prof, f);
      me.add_filling(f.diagram, extrinsic_profile(f.diagram, b), f);
      fam.fillings.push_back(std::move(f));
    }
    fam.fi = mi.result();
    fam.fe = me.result();
    return fam;
  }

  const Family& z2_rewriting() {
    if (!z2_rw)
      z2_rw = measure_seashells("Z2", 5, rewriting_flow(sys("Z2"), ball("Z2", 5)),
                                kSuiteLenZ2);
    return *z2_rw;
  }
  const Family& z2_convex() {
    if (!z2_ac) z2_ac = measure_seashells("Z2", 5, ac_flow(ball("Z2", 5), 4),
                                          kSuiteLenZ2);
    return *z2_ac;
  }
  const Family& s3_rewriting() {
    if (!s3_rw)
      s3_rw = measure_seashells("S3", 3, rewriting_flow(sys("S3"), ball("S3", 3)),
                                kSuiteLenS3);
    return *s3_rw;
  }
};

std::string q4_note(Q4 x) { return q4_to_string(x); }

// Vertex distances recomputed by plain search from the basepoint.
std::vector<int> bfs_distances(const Diagram& d) {
  std::vector<std::vector<int>> adj = outgoing_edges(d);
  std::vector<int> dist(static_cast<size_t>(d.vertex_count()), -1);
  std::deque<int> queue{d.basepoint()};
  dist[d.basepoint()] = 0;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int dir : adj[v]) {
      int u = d.dst(dir);
      if (dist[u] < 0) {
        dist[u] = dist[v] + 1;
        queue.push_back(u);
      }
    }
  }
  return dist;
}

std::string check_profiles(const Diagram& d, const CayleyBall& ball) {
  DiagramProfile in = intrinsic_profile(d);
  DiagramProfile ex = extrinsic_profile(d, ball);
  std::vector<int> dist = bfs_distances(d);
  for (int v = 0; v < d.vertex_count(); ++v) {
    if (in.vertex[v] != q4_of_int(dist[v]))
      return "vertex " + std::to_string(v) + " profile " +
             q4_note(in.vertex[v]) + " vs search " + std::to_string(dist[v]);
    if (in.vertex[v].q % 4 != 0 || ex.vertex[v].q % 4 != 0)
      return "vertex residue broken at " + std::to_string(v);
    if (ex.vertex[v] > in.vertex[v])
      return "extrinsic above intrinsic at vertex " + std::to_string(v);
  }
  for (int e = 0; e < d.edge_count(); ++e) {
    if (in.edge[e].q % 4 != 2 || ex.edge[e].q % 4 != 2)
      return "edge residue broken at " + std::to_string(e);
    if (ex.edge[e] > in.edge[e])
      return "extrinsic above intrinsic at edge " + std::to_string(e);
  }
  for (int f = 0; f < d.face_count(); ++f) {
    if (in.face[f].q % 4 != 1)
      return "face residue broken at " + std::to_string(f);
    if (!ex.face_collapsed[f] && ex.face[f].q % 4 != 1)
      return "extrinsic face residue broken at " + std::to_string(f);
    if (ex.face[f] > in.face[f])
      return "extrinsic above intrinsic at face " + std::to_string(f);
  }
  return "";
}

// True shape test written independently of the library predicate:
// scan prefix sums and forbidden factors over the display names.
bool brute_thompson(const Alphabet& ab, const Word& w) {
  auto name = [&](size_t i) { return std::string(ab.name(w[i])); };
  for (size_t i = 0; i + 1 < w.size(); ++i)
    if (ab.inverse(w[i]) == w[i + 1]) return false;
  for (size_t i = 0; i + 2 < w.size(); ++i)
    if (name(i) == "x0" && name(i + 1) == "x0" &&
        (name(i + 2) == "x1" || name(i + 2) == "X1"))
      return false;
  int sum = 0;
  for (size_t i = 0; i < w.size(); ++i) {
    if (name(i) == "x0") ++sum;
    if (name(i) == "X0") --sum;
    if (sum > 0) return false;
  }
  return true;
}

bool brute_bs1p(const Alphabet& ab, const Word& w, int p) {
  size_t i = 0, n = w.size();
  auto is = [&](size_t at, const char* nm) {
    return at < n && std::string(ab.name(w[at])) == nm;
  };
  size_t ti = 0;
  while (is(i, "T")) ++i, ++ti;
  size_t m = 0;
  if (is(i, "a"))
    while (is(i, "a")) ++i, ++m;
  else if (is(i, "A"))
    while (is(i, "A")) ++i, ++m;
  size_t k = 0;
  while (is(i, "t")) ++i, ++k;
  if (i != n) return false;
  return static_cast<int>(m) % p != 0 || ti == 0 || k == 0;
}

class Gate {
 public:
  explicit Gate(std::ostream& out) : out_(out) {}

  void criterion(const std::string& name,
                 const std::function<std::string()>& body) {
    std::string problem;
    try {
      problem = body();
    } catch (const Error& e) {
      problem = e.what();
    }
    if (problem.empty()) {
      ++result.passed;
      out_ << "PASS  " << name << "\n";
    } else {
      ++result.failed;
      out_ << "FAIL  " << name << ": " << problem << "\n";
    }
  }

  AcceptanceResult result;

 private:
  std::ostream& out_;
};

}  // namespace

AcceptanceResult run_acceptance(std::ostream& out) {
  Gate gate(out);
  Ctx ctx;

  gate.criterion("rewriting presets are complete and minimal", [&] {
    for (const char* name : {"Z2", "F2", "Z3", "Z5", "S3"}) {
      const RewritingSystem& rs = ctx.sys(name);
      if (!check_minimal(rs).empty())
        return std::string(name) + " fails minimality";
      if (!critical_pairs(rs).empty())
        return std::string(name) + " has unresolved critical pairs";
      for (const Word& w : all_words(rs.alphabet().size(), kRewriteWordLen)) {
        Word nf = normal_form(rs, w);
        std::set<Word> seen{w};
        std::deque<Word> queue{w};
        std::set<Word> sinks;
        while (!queue.empty()) {
          Word cur = queue.front();
          queue.pop_front();
          std::vector<Word> next = rewrite_successors(rs.rules(), cur);
          if (next.empty()) sinks.insert(cur);
          for (Word& s : next)
            if (seen.insert(s).second) queue.push_back(std::move(s));
          if (seen.size() > kReachCap)
            return std::string(name) + " reachability blew past the cap";
        }
        if (sinks.size() != 1 || *sinks.begin() != nf ||
            !irreducible(rs.rules(), nf))
          return std::string(name) + " word " +
                 rs.alphabet().format_word(w) + " rewrites ambiguously";
      }
    }
    return std::string{};
  });

  gate.criterion("coarse distance oracle agrees with search", [&] {
    std::vector<std::pair<const Diagram*, const CayleyBall*>> pool;
    const Ctx::Family& z2 = ctx.z2_rewriting();
    const CayleyBall& bz2 = ctx.ball("Z2", 5);
    for (const Filling& f : z2.fillings) pool.push_back({&f.diagram, &bz2});
    const Ctx::Family& s3 = ctx.s3_rewriting();
    const CayleyBall& bs3 = ctx.ball("S3", 3);
    for (const Filling& f : s3.fillings) pool.push_back({&f.diagram, &bs3});
    if (pool.size() < kPoolSize) return std::string("diagram pool too small");
    for (int i = 0; i < kPoolSize; ++i) {
      size_t at = (i * pool.size()) / kPoolSize;
      std::string problem = check_profiles(*pool[at].first, *pool[at].second);
      if (!problem.empty())
        return "diagram " + std::to_string(at) + ": " + problem;
    }
    return std::string{};
  });

  gate.criterion("flow functions verify and their edge diagrams validate", [&] {
    struct Case {
      const char* name;
      int radius;
    };
    for (Case c : {Case{"Z2", 5}, Case{"F2", 6}}) {
      const CayleyBall& b = ctx.ball(c.name, c.radius);
      FlowFunction ff = rewriting_flow(ctx.sys(c.name), b);
      FlowReport report = verify_flow(ff, b);
      if (!report.passed || !report.descent.acyclic)
        return std::string(c.name) + " flow fails verification";
      Presentation p = flow_presentation(ff, b);
      NDiagramBuilder builder(ff, b);
      for (const CayleyBall::DirEdge& e : b.undirected_edges()) {
        int far = b.neighbor(e.src, e.label);
        for (auto [v, a] :
             {std::pair<int, Letter>{e.src, e.label},
              std::pair<int, Letter>{far, b.alphabet().inverse(e.label)}}) {
          const NDiagram& nd = builder.edge_diagram(v, a);
          ValidationReport val = validate_diagram(nd.diagram, b, p);
          if (!val.passed)
            return std::string(c.name) + " edge diagram invalid: " +
                   val.problems.front();
          std::vector<std::string> tp = check_tree_path_property(nd.diagram, b);
          if (!tp.empty())
            return std::string(c.name) + " edge diagram: " + tp.front();
        }
      }
    }
    return std::string{};
  });

  gate.criterion("seashell fillings are sound", [&] {
    struct Case {
      const char* name;
      int radius;
      const Ctx::Family* fam;
    };
    const Ctx::Family& z2 = ctx.z2_rewriting();
    const Ctx::Family& s3 = ctx.s3_rewriting();
    for (Case c : {Case{"Z2", 5, &z2}, Case{"S3", 3, &s3}}) {
      const CayleyBall& b = ctx.ball(c.name, c.radius);
      FlowFunction ff = rewriting_flow(ctx.sys(c.name), b);
      Presentation p = flow_presentation(ff, b);
      if (c.fam->words.empty()) return std::string("empty suite");
      for (size_t i = 0; i < c.fam->words.size(); ++i) {
        const Diagram& d = c.fam->fillings[i].diagram;
        if (d.boundary_word() != c.fam->words[i])
          return "boundary mismatch on " +
                 b.alphabet().format_word(c.fam->words[i]);
        if (d.euler_characteristic() != 1)
          return "wrong Euler characteristic on " +
                 b.alphabet().format_word(c.fam->words[i]);
        ValidationReport val = validate_diagram(d, b, p);
        if (!val.passed)
          return b.alphabet().format_word(c.fam->words[i]) + ": " +
                 val.problems.front();
      }
    }
    return std::string{};
  });

  gate.criterion("measured tameness stays under the derived bound tables", [&] {
    const CayleyBall& b = ctx.ball("Z2", kKappaMax + 1);
    FlowFunction ff = rewriting_flow(ctx.sys("Z2"), b);
    NDiagramBuilder builder(ff, b);
    BoundSuite suite = compute_kappas(builder, kKappaMax);
    int rho = static_cast<int>(flow_presentation(ff, b).longest_relator());
    compute_mus(suite, rho);
    const Ctx::Family& fam = ctx.z2_rewriting();
    for (const auto& [x, v] : fam.fi.breakpoints)
      if (v > suite.mu_intrinsic(x))
        return "intrinsic " + q4_note(v) + " over table bound at " + q4_note(x);
    for (const auto& [x, v] : fam.fe.breakpoints)
      if (v > suite.mu_extrinsic(x))
        return "extrinsic " + q4_note(v) + " over table bound at " + q4_note(x);
    return std::string{};
  });

  gate.criterion("measured tameness stays under the growth bound", [&] {
    const RewritingSystem& rs = ctx.sys("Z2");
    for (int n = 0; n <= kGammaBrute; ++n)
      if (gamma(rs, static_cast<size_t>(n)) != static_cast<size_t>(n))
        return "growth at " + std::to_string(n) + " is not the identity";
    const Ctx::Family& fam = ctx.z2_rewriting();
    for (const StepFunction* f : {&fam.fi, &fam.fe})
      for (const auto& [x, v] : f->breakpoints)
        if (v > q4_of_int(rsgrowth_bound(rs, q4_ceil(x))))
          return "measurement " + q4_note(v) + " over growth bound at " +
                 q4_note(x);
    return std::string{};
  });

  gate.criterion("almost convex flows measure near the identity", [&] {
    const CayleyBall& b = ctx.ball("Z2", 5);
    for (int n = 1; n <= 4; ++n) {
      AlmostConvexResult r = check_almost_convex(b, n, 4);
      if (!r.passed)
        return "ball level " + std::to_string(n) + " is not almost convex";
    }
    const Ctx::Family& fam = ctx.z2_convex();
    for (const StepFunction* f : {&fam.fi, &fam.fe})
      for (const auto& [x, v] : f->breakpoints)
        if (v.q > x.q + 4)
          return "measurement " + q4_note(v) + " above x+1 at " + q4_note(x);
    return std::string{};
  });

  gate.criterion("finite group fillings measure constant", [&] {
    struct Case {
      const char* name;
      int radius;
      int order;
      std::optional<Ctx::Family>* slot;
    };
    for (Case c : {Case{"Z3", 2, 3, &ctx.z3_fin}, Case{"S3", 3, 6, &ctx.s3_fin}}) {
      if (!*c.slot) *c.slot = ctx.measure_finite(c.name, c.radius, c.order, 8);
      const Ctx::Family& fam = **c.slot;
      if (fam.words.empty()) return std::string(c.name) + " suite empty";
      if (!fam.fi.constant())
        return std::string(c.name) + " intrinsic measurement not constant";
      Q4 icap{4 * (c.order + fam.catalog_idiam) + 2};
      Q4 ecap{4 * c.order + 2};
      if (fam.fi.max_value() > icap)
        return std::string(c.name) + " intrinsic above " + q4_note(icap);
      if (fam.fe.max_value() > ecap)
        return std::string(c.name) + " extrinsic above " + q4_note(ecap);
    }
    return std::string{};
  });

  gate.criterion("diagram diameters obey the measured functions", [&] {
    struct Case {
      const char* name;
      const Ctx::Family* fam;
      const Alphabet* ab;
    };
    const Alphabet& ab_z2 = ctx.sys("Z2").alphabet();
    const Alphabet& ab_s3 = ctx.sys("S3").alphabet();
    const Alphabet& ab_z3 = ctx.sys("Z3").alphabet();
    if (!ctx.z3_fin) ctx.z3_fin = ctx.measure_finite("Z3", 2, 3, 8);
    if (!ctx.s3_fin) ctx.s3_fin = ctx.measure_finite("S3", 3, 6, 8);
    std::vector<Case> cases{{"Z2 seashells", &ctx.z2_rewriting(), &ab_z2},
                            {"Z2 convex", &ctx.z2_convex(), &ab_z2},
                            {"S3 seashells", &ctx.s3_rewriting(), &ab_s3},
                            {"Z3 finite", &*ctx.z3_fin, &ab_z3},
                            {"S3 finite", &*ctx.s3_fin, &ab_s3}};
    for (const Case& c : cases) {
      std::vector<DiameterCheckItem> items;
      for (size_t i = 0; i < c.fam->words.size(); ++i)
        items.push_back({c.fam->words[i], c.fam->idiams[i]});
      DiameterBoundReport report = check_diameter_bound(items, c.fam->fi, *c.ab);
      if (!report.passed)
        return std::string(c.name) + ": " + report.failures.front();
    }
    return std::string{};
  });

  gate.criterion("probe diagrams push measurements up", [&] {
    const CayleyBall& b = ctx.ball("Z2", kProbeMax + 1);
    const Alphabet& ab = b.alphabet();
    FlowFunction ff = rewriting_flow(ctx.sys("Z2"), b);
    NDiagramBuilder builder(ff, b);
    for (int n = 1; n <= kProbeMax; ++n) {
      Word w;
      for (int i = 0; i < (n + 1) / 2; ++i) w.push_back(*ab.find("a"));
      for (int i = 0; i < n / 2; ++i) w.push_back(*ab.find("b"));
      Word probe = w;
      for (auto it = w.rbegin(); it != w.rend(); ++it)
        probe.push_back(ab.inverse(*it));
      Filling f = builder.seashell(probe);
      StepFunction fn =
          measure_tameness(f.diagram, intrinsic_profile(f.diagram), f);
      if (fn(q4_of_int(n)).q < 4 * n - 3)
        return "probe " + std::to_string(n) + " only reaches " +
               q4_note(fn(q4_of_int(n)));
    }
    return std::string{};
  });

  gate.criterion("normal form predicates match brute enumeration", [&] {
    Alphabet thompson = thompson_alphabet();
    for (const Word& w : all_words(thompson.size(), kPredicateLen))
      if (thompson_nf_member(thompson, w) != brute_thompson(thompson, w))
        return "tree group predicate differs on " + thompson.format_word(w);
    Alphabet bs = bs_alphabet();
    for (int p : {2, 3})
      for (const Word& w : all_words(bs.size(), kPredicateLen))
        if (bs1p_nf_member(bs, w, p) != brute_bs1p(bs, w, p))
          return "ascending group predicate differs on " + bs.format_word(w) +
                 " with divisor " + std::to_string(p);
    return std::string{};
  });

  out << "criteria passed: " << gate.result.passed << "/"
      << gate.result.passed + gate.result.failed << "\n";
  return gate.result;
}

}  // namespace tamefill
