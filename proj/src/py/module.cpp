#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tamefill/build.hpp"
#include "tamefill/cayley.hpp"
#include "tamefill/diagram.hpp"
#include "tamefill/flow.hpp"
#include "tamefill/presets.hpp"
#include "tamefill/rewrite.hpp"
#include "tamefill/tameness.hpp"
#include "tamefill/textio.hpp"
#include "tamefill/word.hpp"

namespace py = pybind11;

namespace {

using namespace tamefill;

RewritingSystem preset_system(const std::string& name) {
  const PresetEntry& entry = preset(name);
  if (!entry.rs)
    fail(Errc::InvalidArgument, "preset " + name + " has no rewriting system");
  return *entry.rs;
}

CayleyBall preset_ball(const RewritingSystem& rs, int radius) {
  return build_ball([rs](const Word& w) { return normal_form(rs, w); },
                    rs.alphabet(), radius);
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

std::string py_nf(const std::string& name, const std::string& word) {
  RewritingSystem rs = preset_system(name);
  return display_word(rs.alphabet(),
                      normal_form(rs, rs.alphabet().parse_word(word)));
}

size_t py_gamma(const std::string& name, size_t n) {
  return gamma(preset_system(name), n);
}

std::string py_ball_json(const std::string& name, int radius) {
  RewritingSystem rs = preset_system(name);
  return ball_json(preset_ball(rs, radius));
}

std::string py_ball_dot(const std::string& name, int radius) {
  RewritingSystem rs = preset_system(name);
  return ball_dot(preset_ball(rs, radius));
}

bool py_almost_convex(const std::string& name, int n, int k) {
  RewritingSystem rs = preset_system(name);
  CayleyBall ball = preset_ball(rs, n + 1);
  return check_almost_convex(ball, n, k).passed;
}

bool py_flow_verified(const std::string& name, int radius) {
  RewritingSystem rs = preset_system(name);
  CayleyBall ball = preset_ball(rs, radius);
  FlowFunction ff = rewriting_flow(rs, ball);
  return verify_flow(ff, ball).passed;
}

int seashell_radius(const Word& w, int radius) {
  return radius >= 0 ? radius : static_cast<int>(w.size()) / 2 + 2;
}

std::string py_diagram_json(const std::string& name, const std::string& word,
                            int radius) {
  RewritingSystem rs = preset_system(name);
  Word w = rs.alphabet().parse_word(word);
  CayleyBall ball = preset_ball(rs, seashell_radius(w, radius));
  FlowFunction ff = rewriting_flow(rs, ball);
  NDiagramBuilder builder(ff, ball);
  Filling f = builder.seashell(w);
  return diagram_json(f.diagram, ball, intrinsic_profile(f.diagram));
}

std::string py_diagram_svg(const std::string& name, const std::string& word,
                           int radius) {
  RewritingSystem rs = preset_system(name);
  Word w = rs.alphabet().parse_word(word);
  CayleyBall ball = preset_ball(rs, seashell_radius(w, radius));
  FlowFunction ff = rewriting_flow(rs, ball);
  NDiagramBuilder builder(ff, ball);
  Filling f = builder.seashell(w);
  return diagram_svg(f.diagram, ball.alphabet());
}

std::string py_combing_json(const std::string& name, const std::string& word,
                            int radius) {
  RewritingSystem rs = preset_system(name);
  Word w = rs.alphabet().parse_word(word);
  CayleyBall ball = preset_ball(rs, seashell_radius(w, radius));
  FlowFunction ff = rewriting_flow(rs, ball);
  NDiagramBuilder builder(ff, ball);
  Filling f = builder.seashell(w);
  return combing_json(f);
}

std::vector<std::pair<double, double>> py_tameness(const std::string& name,
                                                   const std::string& profile,
                                                   int max_len, int radius) {
  if (profile != "intrinsic" && profile != "extrinsic")
    fail(Errc::InvalidArgument, "profile must be intrinsic or extrinsic");
  RewritingSystem rs = preset_system(name);
  std::vector<Word> words = trivial_words(rs, max_len);
  int r = radius >= 0 ? radius : std::max(2, max_len / 2 + 2);
  CayleyBall ball = preset_ball(rs, r);
  FlowFunction ff = rewriting_flow(rs, ball);
  NDiagramBuilder builder(ff, ball);
  bool extrinsic = profile == "extrinsic";

  TamenessMeter meter;
  auto add = [&](const Filling& f) {
    DiagramProfile prof = extrinsic ? extrinsic_profile(f.diagram, ball)
                                    : intrinsic_profile(f.diagram);
    meter.add_filling(f.diagram, prof, f);
  };
  if (ball.boundary_complete()) {
    FillingCatalog cat = FillingCatalog::build(builder, ball.vertex_count());
    for (const Word& w : words) add(build_finite_filling(w, cat, ball));
  } else {
    for (const Word& w : words) add(builder.seashell(w));
  }

  std::vector<std::pair<double, double>> out;
  for (const auto& [x, v] : meter.result().breakpoints)
    out.emplace_back(x.q / 4.0, v.q / 4.0);
  return out;
}

bool py_thompson_nf(const std::string& word) {
  Alphabet ab = thompson_alphabet();
  return thompson_nf_member(ab, ab.parse_word(word));
}

bool py_bs1p_nf(const std::string& word, int p) {
  Alphabet ab = bs_alphabet();
  return bs1p_nf_member(ab, ab.parse_word(word), p);
}

std::string py_presentation_text(const std::string& name) {
  const PresetEntry& entry = preset(name);
  return print_input({entry.presentation, entry.rs});
}

std::string py_parse(const std::string& text) {
  return print_input(parse_presentation_file(text));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "rewriting systems, Cayley balls, and tame filling measurement";
  py::register_exception<Error>(m, "Error");

  m.def("preset_names", &preset_names, "names of the built-in presentations");
  m.def("nf", &py_nf, py::arg("preset"), py::arg("word"),
        "normal form of a word, space-separated letters, 1 for empty");
  m.def("gamma", &py_gamma, py::arg("preset"), py::arg("n"),
        "largest length reachable by rewriting from words of length <= n");
  m.def("ball_json", &py_ball_json, py::arg("preset"), py::arg("radius"),
        "JSON description of the radius-r ball in the Cayley graph");
  m.def("ball_dot", &py_ball_dot, py::arg("preset"), py::arg("radius"),
        "Graphviz rendering of the radius-r ball");
  m.def("almost_convex", &py_almost_convex, py::arg("preset"), py::arg("n"),
        py::arg("k"),
        "close sphere-n points joined by inside paths of length <= k");
  m.def("flow_verified", &py_flow_verified, py::arg("preset"),
        py::arg("radius"),
        "the rewriting flow on the radius-r ball passes verification");
  m.def("diagram_json", &py_diagram_json, py::arg("preset"), py::arg("word"),
        py::arg("radius") = -1,
        "JSON of the filling diagram for a trivial word");
  m.def("diagram_svg", &py_diagram_svg, py::arg("preset"), py::arg("word"),
        py::arg("radius") = -1,
        "SVG rendering of the filling diagram for a trivial word");
  m.def("combing_json", &py_combing_json, py::arg("preset"), py::arg("word"),
        py::arg("radius") = -1,
        "JSON of the combing paths across the filling diagram");
  m.def("tameness", &py_tameness, py::arg("preset"), py::arg("profile"),
        py::arg("max_len"), py::arg("radius") = -1,
        "breakpoints (x, f(x)) measured over all trivial words <= max_len");
  m.def("thompson_nf", &py_thompson_nf, py::arg("word"),
        "word over x0 X0 x1 X1 is in the normal form language");
  m.def("bs1p_nf", &py_bs1p_nf, py::arg("word"), py::arg("p"),
        "word over a A t T is in the normal form language for parameter p");
  m.def("presentation_text", &py_presentation_text, py::arg("preset"),
        "the preset in the presentation text format");
  m.def("parse", &py_parse, py::arg("text"),
        "parse presentation text and return its canonical printing");
}
