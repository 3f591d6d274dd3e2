#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tamefill/acceptance.hpp"
#include "tamefill/build.hpp"
#include "tamefill/cayley.hpp"
#include "tamefill/diagram.hpp"
#include "tamefill/flow.hpp"
#include "tamefill/presets.hpp"
#include "tamefill/rewrite.hpp"
#include "tamefill/tameness.hpp"
#include "tamefill/textio.hpp"
#include "tamefill/word.hpp"

namespace {

using namespace tamefill;

struct RunConfig {
  std::string preset;
  std::string input_path;
  std::string command;
  std::string mode;     // flow: verify|build; diagram: edge|word
  std::string kind;     // flow: rewriting|ac
  std::string profile = "intrinsic";
  std::string word_text;
  std::string letter_name;
  std::string words_file;
  int n = 0;
  int k = 4;
  int all_to = -1;
  int bound_n = -1;
  int radius = -1;
  long step_budget = kDefaultStepBudget;
  long node_budget = kDefaultNodeBudget;
  std::string out_dir;
  bool want_json = false;
  bool want_dot = false;
  bool want_svg = false;
  bool want_combing = false;
};

struct Loaded {
  Presentation presentation;
  std::optional<RewritingSystem> system;
};

Loaded load_input(const RunConfig& cfg) {
  if (!cfg.preset.empty()) {
    const PresetEntry& entry = preset(cfg.preset);
    Loaded out{entry.presentation, std::nullopt};
    if (entry.rs)
      out.system.emplace(entry.rs->alphabet(), entry.rs->rules(),
                         cfg.step_budget, cfg.node_budget);
    return out;
  }
  if (cfg.input_path.empty())
    fail(Errc::InvalidArgument, "give --preset NAME or --input FILE");
  std::ifstream in(cfg.input_path);
  if (!in) fail(Errc::ParseError, "cannot read " + cfg.input_path);
  std::stringstream buf;
  buf << in.rdbuf();
  ParsedInput parsed =
      parse_presentation_file(buf.str(), cfg.step_budget, cfg.node_budget);
  return {parsed.presentation, std::move(parsed.system)};
}

const RewritingSystem& need_system(const Loaded& loaded) {
  if (!loaded.system)
    fail(Errc::InvalidArgument,
         "this command needs rewriting rules; add rule: lines or pick a "
         "preset that ships a system");
  return *loaded.system;
}

CayleyBall make_ball(const RewritingSystem& rs, int radius) {
  return build_ball([rs](const Word& w) { return normal_form(rs, w); },
                    rs.alphabet(), radius);
}

void write_artifact(const RunConfig& cfg, const std::string& name,
                    const std::string& content, std::ostream& out) {
  std::filesystem::path dir = cfg.out_dir.empty() ? "." : cfg.out_dir;
  std::filesystem::create_directories(dir);
  std::filesystem::path path = dir / name;
  std::ofstream file(path);
  if (!file) fail(Errc::InvalidArgument, "cannot write " + path.string());
  file << content;
  out << "wrote: " << path.string() << "\n";
}

std::vector<Word> trivial_words(const RewritingSystem& rs, int maxlen) {
  std::vector<Word> out;
  std::vector<Word> level{Word{}};
  for (int len = 1; len <= maxlen; ++len) {
    std::vector<Word> next;
    for (const Word& w : level)
      for (int a = 0; a < rs.alphabet().size(); ++a) {
        Word ext = w;
        ext.push_back(static_cast<Letter>(a));
        if (!is_freely_reduced(rs.alphabet(), ext)) continue;
        next.push_back(ext);
        if (normal_form(rs, ext).empty()) out.push_back(ext);
      }
    level = std::move(next);
  }
  return out;
}

int run_nf(const RunConfig& cfg, std::ostream& out) {
  Loaded loaded = load_input(cfg);
  const RewritingSystem& rs = need_system(loaded);
  Word w = rs.alphabet().parse_word(cfg.word_text);
  out << display_word(rs.alphabet(), normal_form(rs, w)) << "\n";
  return 0;
}

int run_gamma(const RunConfig& cfg, std::ostream& out) {
  Loaded loaded = load_input(cfg);
  if (cfg.n < 0) fail(Errc::InvalidArgument, "length must be nonnegative");
  out << gamma(need_system(loaded), static_cast<size_t>(cfg.n)) << "\n";
  return 0;
}

int run_ball(const RunConfig& cfg, std::ostream& out) {
  Loaded loaded = load_input(cfg);
  CayleyBall ball = make_ball(need_system(loaded), cfg.n);
  out << "vertices: " << ball.vertex_count() << "\n";
  out << "edges: " << ball.undirected_edges().size() << "\n";
  out << "boundary_complete: " << (ball.boundary_complete() ? "true" : "false")
      << "\n";
  if (cfg.want_json) write_artifact(cfg, "ball.json", ball_json(ball), out);
  if (cfg.want_dot) write_artifact(cfg, "ball.dot", ball_dot(ball), out);
  return 0;
}

int run_ac_check(const RunConfig& cfg, std::ostream& out) {
  Loaded loaded = load_input(cfg);
  int radius = cfg.radius >= 0 ? cfg.radius : cfg.n + 1;
  CayleyBall ball = make_ball(need_system(loaded), radius);
  AlmostConvexResult r = check_almost_convex(ball, cfg.n, cfg.k);
  if (r.passed) {
    out << "almost convex: yes\n";
    return 0;
  }
  out << "almost convex: no\n";
  out << "witness: " << display_word(ball.alphabet(), ball.nf(r.g)) << ", "
      << display_word(ball.alphabet(), ball.nf(r.h)) << "\n";
  if (r.inside_dist)
    out << "inside distance: " << *r.inside_dist << "\n";
  else
    out << "inside distance: none\n";
  return 1;
}

FlowFunction make_flow(const RunConfig& cfg, const Loaded& loaded,
                       const CayleyBall& ball) {
  if (cfg.kind == "rewriting") return rewriting_flow(need_system(loaded), ball);
  return ac_flow(ball, cfg.k);
}

int run_flow(const RunConfig& cfg, std::ostream& out) {
  Loaded loaded = load_input(cfg);
  if (cfg.radius < 0) fail(Errc::InvalidArgument, "flow needs --radius");
  CayleyBall ball = make_ball(need_system(loaded), cfg.radius);
  FlowFunction ff = make_flow(cfg, loaded, ball);
  if (cfg.mode == "build") {
    out << flow_table(ff, ball);
    return 0;
  }
  FlowReport report = verify_flow(ff, ball);
  int assigned = 0;
  for (int v = 0; v < ball.vertex_count(); ++v)
    for (int a = 0; a < ball.alphabet().size(); ++a)
      assigned += ff.assigned(v, static_cast<Letter>(a));
  out << "assigned: " << assigned << "\n";
  out << "unusable: " << report.unusable << "\n";
  out << "violations: " << report.violations.size() << "\n";
  out << "descent_pairs: " << report.descent.pairs.size() << "\n";
  out << "acyclic: " << (report.descent.acyclic ? "true" : "false") << "\n";
  out << "verdict: " << (report.passed ? "pass" : "fail") << "\n";
  return report.passed ? 0 : 1;
}

void diagram_summary(const Diagram& d, const Alphabet& ab, std::ostream& out) {
  out << "vertices: " << d.vertex_count() << "\n";
  out << "edges: " << d.edge_count() << "\n";
  out << "faces: " << d.face_count() << "\n";
  out << "boundary: " << display_word(ab, d.boundary_word()) << "\n";
  out << "euler: " << d.euler_characteristic() << "\n";
  out << "intrinsic_diameter: " << intrinsic_profile(d).diameter << "\n";
}

int run_diagram(const RunConfig& cfg, std::ostream& out) {
  Loaded loaded = load_input(cfg);
  const RewritingSystem& rs = need_system(loaded);
  Word w = rs.alphabet().parse_word(cfg.word_text);
  int fallback = cfg.mode == "edge" ? static_cast<int>(w.size()) + 2
                                    : static_cast<int>(w.size()) / 2 + 2;
  int radius = cfg.radius >= 0 ? cfg.radius : fallback;
  CayleyBall ball = make_ball(rs, radius);
  FlowFunction ff = rewriting_flow(rs, ball);
  NDiagramBuilder builder(ff, ball);

  const Diagram* d = nullptr;
  std::string combing;
  if (cfg.mode == "edge") {
    if (cfg.letter_name.empty())
      fail(Errc::InvalidArgument, "diagram edge needs a letter");
    std::optional<Letter> a = ball.alphabet().find(cfg.letter_name);
    if (!a)
      fail(Errc::InvalidArgument, "unknown letter '" + cfg.letter_name + "'");
    int v = ball.find(normal_form(rs, w));
    if (v == CayleyBall::kOutside)
      fail(Errc::BallTooSmall, "vertex outside the ball; raise --radius");
    const NDiagram& nd = builder.edge_diagram(v, *a);
    d = &nd.diagram;
    combing = combing_json(nd);
  } else {
    Filling f = builder.seashell(w);
    diagram_summary(f.diagram, ball.alphabet(), out);
    DiagramProfile prof = cfg.profile == "extrinsic"
                              ? extrinsic_profile(f.diagram, ball)
                              : intrinsic_profile(f.diagram);
    if (cfg.want_json)
      write_artifact(cfg, "diagram.json", diagram_json(f.diagram, ball, prof),
                     out);
    if (cfg.want_svg)
      write_artifact(cfg, "diagram.svg", diagram_svg(f.diagram, ball.alphabet()),
                     out);
    if (cfg.want_combing)
      write_artifact(cfg, "combing.json", combing_json(f), out);
    return 0;
  }

  diagram_summary(*d, ball.alphabet(), out);
  DiagramProfile prof = cfg.profile == "extrinsic"
                            ? extrinsic_profile(*d, ball)
                            : intrinsic_profile(*d);
  if (cfg.want_json)
    write_artifact(cfg, "diagram.json", diagram_json(*d, ball, prof), out);
  if (cfg.want_svg)
    write_artifact(cfg, "diagram.svg", diagram_svg(*d, ball.alphabet()), out);
  if (cfg.want_combing) write_artifact(cfg, "combing.json", combing, out);
  return 0;
}

int run_tameness(const RunConfig& cfg, std::ostream& out) {
  Loaded loaded = load_input(cfg);
  const RewritingSystem& rs = need_system(loaded);
  const Alphabet& ab = rs.alphabet();

  std::vector<Word> words;
  if (!cfg.words_file.empty()) {
    std::ifstream in(cfg.words_file);
    if (!in) fail(Errc::ParseError, "cannot read " + cfg.words_file);
    std::string line;
    while (std::getline(in, line)) {
      size_t hash = line.find('#');
      if (hash != std::string::npos) line.resize(hash);
      std::istringstream probe(line);
      std::string tok;
      if (!(probe >> tok)) continue;
      Word w = ab.parse_word(line);
      if (w.empty()) continue;
      if (!normal_form(rs, w).empty())
        fail(Errc::InvalidArgument,
             "word " + ab.format_word(w) + " does not represent the identity");
      words.push_back(w);
    }
  } else {
    if (cfg.all_to < 0)
      fail(Errc::InvalidArgument, "tameness needs --words FILE or --all-to L");
    words = trivial_words(rs, cfg.all_to);
  }

  int maxlen = 0;
  for (const Word& w : words) maxlen = std::max(maxlen, (int)w.size());
  int radius = cfg.radius >= 0 ? cfg.radius : std::max(2, maxlen / 2 + 2);
  CayleyBall ball = make_ball(rs, radius);
  FlowFunction ff = rewriting_flow(rs, ball);
  NDiagramBuilder builder(ff, ball);
  bool extrinsic = cfg.profile == "extrinsic";

  TamenessMeter meter;
  if (ball.boundary_complete()) {
    FillingCatalog cat = FillingCatalog::build(builder, ball.vertex_count());
    for (const Word& w : words) {
      Filling f = build_finite_filling(w, cat, ball);
      DiagramProfile prof = extrinsic ? extrinsic_profile(f.diagram, ball)
                                      : intrinsic_profile(f.diagram);
      meter.add_filling(f.diagram, prof, f);
    }
  } else {
    for (const Word& w : words) {
      Filling f = builder.seashell(w);
      DiagramProfile prof = extrinsic ? extrinsic_profile(f.diagram, ball)
                                      : intrinsic_profile(f.diagram);
      meter.add_filling(f.diagram, prof, f);
    }
  }
  StepFunction f = meter.result();

  std::optional<BoundSuite> suite;
  if (cfg.bound_n >= 0) {
    CayleyBall bball = make_ball(rs, cfg.bound_n + 1);
    FlowFunction bff = rewriting_flow(rs, bball);
    NDiagramBuilder bbuilder(bff, bball);
    suite = compute_kappas(bbuilder, cfg.bound_n);
    compute_mus(*suite,
                static_cast<int>(flow_presentation(bff, bball).longest_relator()));
  }

  std::vector<TamenessCsvRow> rows;
  std::optional<Q4> violation;
  for (const auto& [x, v] : f.breakpoints) {
    TamenessCsvRow row{x, v, std::nullopt};
    if (suite) {
      try {
        row.bound = extrinsic ? suite->mu_extrinsic(x) : suite->mu_intrinsic(x);
        if (v > *row.bound && !violation) violation = x;
      } catch (const Error&) {
        row.bound = std::nullopt;
      }
    }
    rows.push_back(row);
  }
  std::string csv = tameness_csv(rows);
  out << csv;
  out << "words: " << words.size() << "\n";
  out << "max: " << q4_to_string(f.max_value()) << "\n";
  out << "constant: " << (f.constant() ? "true" : "false") << "\n";
  if (!cfg.out_dir.empty())
    write_artifact(cfg, "tameness_" + cfg.profile + ".csv", csv, out);
  if (violation) {
    out << "bound violated at: " << q4_to_string(*violation) << "\n";
    return 1;
  }
  return 0;
}

int run_bounds(const RunConfig& cfg, std::ostream& out) {
  Loaded loaded = load_input(cfg);
  const RewritingSystem& rs = need_system(loaded);
  int radius = cfg.radius >= 0 ? cfg.radius : cfg.n + 1;
  if (radius < cfg.n + 1)
    fail(Errc::InvalidArgument, "bounds needs radius at least N+1");
  CayleyBall ball = make_ball(rs, radius);
  FlowFunction ff = rewriting_flow(rs, ball);
  NDiagramBuilder builder(ff, ball);
  BoundSuite suite = compute_kappas(builder, cfg.n);
  bool have_mu = true;
  try {
    compute_mus(suite,
                static_cast<int>(flow_presentation(ff, ball).longest_relator()));
  } catch (const Error&) {
    have_mu = false;
  }
  std::string csv = "n,k_ti,k_te,k_xi,k_xe,mu_i,mu_e,k_r_prime,gamma_bound\n";
  for (int n = 0; n <= cfg.n; ++n) {
    Q4 q = q4_of_int(n);
    csv += std::to_string(n) + "," + std::to_string(suite.k_ti(q).q / 4) + "," +
           std::to_string(suite.k_te(q).q / 4) + "," +
           std::to_string(suite.k_xi(q).q / 4) + "," +
           std::to_string(suite.k_xe(q).q / 4) + ",";
    if (have_mu && n <= suite.mu_max) {
      csv += std::to_string(suite.mu_i(q).q / 4) + "," +
             std::to_string(suite.mu_e(q).q / 4);
    } else {
      csv += ",";
    }
    csv += "," + std::to_string(k_r_prime(n, ff, ball)) + "," +
           std::to_string(rsgrowth_bound(rs, n)) + "\n";
  }
  out << csv;
  if (!cfg.out_dir.empty()) write_artifact(cfg, "bounds.csv", csv, out);
  return 0;
}

int run_print(const RunConfig& cfg, std::ostream& out) {
  Loaded loaded = load_input(cfg);
  out << print_input({loaded.presentation, std::move(loaded.system)});
  return 0;
}

int run(const RunConfig& cfg, std::ostream& out) {
  if (cfg.command == "nf") return run_nf(cfg, out);
  if (cfg.command == "gamma") return run_gamma(cfg, out);
  if (cfg.command == "ball") return run_ball(cfg, out);
  if (cfg.command == "ac-check") return run_ac_check(cfg, out);
  if (cfg.command == "flow") return run_flow(cfg, out);
  if (cfg.command == "diagram") return run_diagram(cfg, out);
  if (cfg.command == "tameness") return run_tameness(cfg, out);
  if (cfg.command == "bounds") return run_bounds(cfg, out);
  if (cfg.command == "print") return run_print(cfg, out);
  if (cfg.command == "check-all") {
    AcceptanceResult r = run_acceptance(out);
    return r.failed == 0 ? 0 : 1;
  }
  fail(Errc::InvalidArgument, "unknown command " + cfg.command);
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  if (const char* env = std::getenv("TAMEFILL_BUDGET")) {
    long value = std::atol(env);
    if (value > 0) {
      cfg.step_budget = value;
      cfg.node_budget = value;
    }
  }

  CLI::App app{"rewriting systems, Cayley balls, flow functions, and tame "
               "filling measurement"};
  app.require_subcommand(1);
  app.fallthrough();
  auto* preset_opt =
      app.add_option("--preset", cfg.preset, "built-in presentation name");
  app.add_option("--input", cfg.input_path, "presentation file")
      ->excludes(preset_opt);
  app.add_option("--radius", cfg.radius, "ball radius override")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--out", cfg.out_dir, "directory for exported artifacts");
  long budget = 0;
  app.add_option("--budget", budget, "step/node budget override")
      ->check(CLI::PositiveNumber);

  CLI::App* nf = app.add_subcommand("nf", "normal form of a word");
  nf->add_option("word", cfg.word_text, "word, letters space-separated")
      ->required();

  CLI::App* gamma_cmd =
      app.add_subcommand("gamma", "largest length reachable from words <= N");
  gamma_cmd->add_option("N", cfg.n, "word length cap")->required();

  CLI::App* ball_cmd = app.add_subcommand("ball", "enumerate the ball B(N)");
  ball_cmd->add_option("N", cfg.n, "radius")
      ->required()
      ->check(CLI::NonNegativeNumber);
  ball_cmd->add_flag("--json", cfg.want_json, "write ball.json");
  ball_cmd->add_flag("--dot", cfg.want_dot, "write ball.dot");

  CLI::App* ac = app.add_subcommand(
      "ac-check", "inside paths between close sphere points stay short");
  ac->add_option("N", cfg.n, "sphere level")
      ->required()
      ->check(CLI::NonNegativeNumber);
  ac->add_option("K", cfg.k, "path length cap")->required();

  CLI::App* flow = app.add_subcommand("flow", "build or verify a flow function");
  flow->add_option("mode", cfg.mode, "verify or build")
      ->required()
      ->check(CLI::IsMember({"verify", "build"}));
  flow->add_option("kind", cfg.kind, "rewriting or ac")
      ->required()
      ->check(CLI::IsMember({"rewriting", "ac"}));
  flow->add_option("--k", cfg.k, "convexity constant for kind ac");

  CLI::App* diagram =
      app.add_subcommand("diagram", "build one diagram and export it");
  diagram->add_option("mode", cfg.mode, "edge or word")
      ->required()
      ->check(CLI::IsMember({"edge", "word"}));
  diagram->add_option("word", cfg.word_text,
                      "trivial word, or the edge source vertex")
      ->required();
  diagram->add_option("letter", cfg.letter_name, "edge label (mode edge)");
  diagram->add_option("--profile", cfg.profile, "profile for exports")
      ->check(CLI::IsMember({"intrinsic", "extrinsic"}));
  diagram->add_flag("--json", cfg.want_json, "write diagram.json");
  diagram->add_flag("--svg", cfg.want_svg, "write diagram.svg");
  diagram->add_flag("--combing", cfg.want_combing, "write combing.json");

  CLI::App* tameness =
      app.add_subcommand("tameness", "measure a combing family");
  tameness->add_option("profile", cfg.profile, "intrinsic or extrinsic")
      ->required()
      ->check(CLI::IsMember({"intrinsic", "extrinsic"}));
  auto* words_opt = tameness->add_option("--words", cfg.words_file,
                                         "file with one trivial word per line");
  tameness
      ->add_option("--all-to", cfg.all_to,
                   "all freely reduced trivial words up to this length")
      ->excludes(words_opt);
  tameness->add_option("--bound", cfg.bound_n,
                       "compare against tables derived to this depth");

  CLI::App* bounds =
      app.add_subcommand("bounds", "derived bound tables up to N");
  bounds->add_option("N", cfg.n, "table depth")
      ->required()
      ->check(CLI::NonNegativeNumber);

  app.add_subcommand("check-all", "run the full acceptance suite");
  app.add_subcommand("print", "print the presentation in the text format");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (budget > 0) {
    cfg.step_budget = budget;
    cfg.node_budget = budget;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    return run(cfg, std::cout);
  } catch (const Error& e) {
    nlohmann::json j;
    j["error"] = errc_name(e.code());
    j["message"] = e.what();
    std::cerr << j.dump() << "\n";
    return errc_exit_code(e.code());
  }
}
