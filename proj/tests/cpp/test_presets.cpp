#include <doctest.h>

#include <random>

#include "tamefill/cayley.hpp"
#include "tamefill/presets.hpp"
#include "test_util.hpp"

using namespace tamefill;

namespace {

std::vector<Word> all_words(const Alphabet& ab, int max_len) {
  std::vector<Word> out{Word()};
  const Letter top = static_cast<Letter>(ab.size() - 1);
  Word w;
  while (true) {
    int i = static_cast<int>(w.size()) - 1;
    while (i >= 0 && w[static_cast<size_t>(i)] == top) w[static_cast<size_t>(i--)] = 0;
    if (i >= 0) {
      ++w[static_cast<size_t>(i)];
    } else {
      if (static_cast<int>(w.size()) == max_len) break;
      w.assign(w.size() + 1, 0);
    }
    out.push_back(w);
  }
  return out;
}

}  // namespace

TEST_CASE("the catalog lists the bundled systems") {
  const std::vector<std::string> want{"F1", "F2", "Z2", "Z3", "Z5", "S3", "BS12"};
  CHECK(preset_names() == want);

  const PresetEntry& z2 = preset("Z2");
  REQUIRE(z2.rs.has_value());
  CHECK(z2.rs->rules().size() == 8);
  CHECK(z2.presentation.relators.size() == 8);
  const Word comm = z2.presentation.alphabet.parse_word("a b A B");
  CHECK(std::count(z2.presentation.relators.begin(), z2.presentation.relators.end(),
                   comm) == 1);
  CHECK_FALSE(z2.group_order.has_value());

  const PresetEntry& f2 = preset("F2");
  REQUIRE(f2.rs.has_value());
  CHECK(f2.rs->rules().size() == 4);
  CHECK(f2.presentation.relators.empty());

  CHECK(preset("Z3").group_order == 3);
  CHECK(preset("Z5").group_order == 5);
  CHECK(preset("S3").group_order == 6);
  CHECK(preset("S3").presentation.alphabet.size() == 3);

  CHECK_THROWS_WITH_AS(preset("Z4"), doctest::Contains("UnknownPreset"), Error);
  CHECK_THROWS_WITH_AS(preset("Z4"), doctest::Contains("BS12"), Error);
}

TEST_CASE("preset systems pass the load gates") {
  for (const PresetEntry& e : preset_catalog()) {
    CAPTURE(e.name);
    if (!e.rs) continue;
    CHECK(check_minimal(*e.rs).empty());
    if (!e.experimental) {
      CHECK(e.confluent);
      CHECK(critical_pairs(*e.rs).empty());
    }
  }

  // The capped collapse family fails to resolve exactly at its
  // boundary, two overlaps per letter sign, all far beyond small
  // balls.
  const PresetEntry& bs = preset("BS12");
  CHECK(bs.experimental);
  CHECK_FALSE(bs.confluent);
  auto pairs = critical_pairs(*bs.rs);
  CHECK(pairs.size() == 4);
  for (const auto& cp : pairs) CHECK(cp.overlap.size() >= 35);
}

TEST_CASE("preset normal forms are prefix closed and idempotent") {
  std::mt19937 rng(7);
  for (const PresetEntry& e : preset_catalog()) {
    CAPTURE(e.name);
    if (!e.rs) continue;
    const Alphabet& ab = e.rs->alphabet();
    CHECK(check_prefix_closed(oracle_from_rs(*e.rs), ab, 5));
    std::uniform_int_distribution<int> len(0, 8);
    std::uniform_int_distribution<int> pick(0, ab.size() - 1);
    for (int trial = 0; trial < 1000; ++trial) {
      Word w;
      const int l = len(rng);
      for (int i = 0; i < l; ++i) w.push_back(static_cast<Letter>(pick(rng)));
      const Word once = normal_form(*e.rs, w);
      CHECK(normal_form(*e.rs, once) == once);
    }
  }
}

TEST_CASE("finite preset balls stabilize at the group order") {
  struct Case {
    const char* name;
    int order;
    int diameter;
  };
  for (const Case& c : {Case{"Z3", 3, 1}, Case{"Z5", 5, 2}, Case{"S3", 6, 2}}) {
    CAPTURE(c.name);
    const PresetEntry& e = preset(c.name);
    NormalFormOracle oracle = oracle_from_rs(*e.rs);
    CayleyBall small = build_ball(oracle, e.rs->alphabet(), c.diameter - 1);
    CHECK(small.vertex_count() < c.order);
    for (int r = c.diameter; r <= c.diameter + 2; ++r) {
      CayleyBall ball = build_ball(oracle, e.rs->alphabet(), r);
      CHECK(ball.vertex_count() == c.order);
      CHECK(ball.boundary_complete());
    }
  }
}

TEST_CASE("thompson normal form membership") {
  Alphabet ab = thompson_alphabet();
  auto W = [&](const char* s) { return ab.parse_word(s); };
  CHECK(thompson_nf_member(ab, W("")));
  CHECK_FALSE(thompson_nf_member(ab, W("x0")));
  CHECK(thompson_nf_member(ab, W("X0 x1 x0")));
  CHECK_FALSE(thompson_nf_member(ab, W("X0 x0")));
  CHECK_FALSE(thompson_nf_member(ab, W("x1 X1")));
  CHECK_FALSE(thompson_nf_member(ab, W("X1 x1 x1")));
  // The square clause is the only rejection here: prefix sums stay
  // nonpositive and no inverse pair is adjacent.
  CHECK_FALSE(thompson_nf_member(ab, W("X0 X0 x1 x0 x0 x1")));
  CHECK_FALSE(thompson_nf_member(ab, W("X0 X0 x1 x0 x0 X1")));
  CHECK(thompson_nf_member(ab, W("X0 X0 x1 x0 X1 x0")));
  CHECK(thompson_nf_member(ab, W("x1 x1")));
  CHECK_THROWS_WITH_AS(thompson_nf_member(ab_f2(), Word()),
                       doctest::Contains("WrongAlphabet"), Error);
}

TEST_CASE("baumslag solitar normal form membership") {
  Alphabet ab = bs_alphabet();
  auto W = [&](const char* s) { return ab.parse_word(s); };
  CHECK(bs1p_nf_member(ab, W("T a t"), 3));
  CHECK_FALSE(bs1p_nf_member(ab, W("T a a a t"), 3));
  CHECK(bs1p_nf_member(ab, W(""), 3));
  CHECK(bs1p_nf_member(ab, W("T T A A A t"), 2));
  CHECK(bs1p_nf_member(ab, W("a a t"), 2));
  CHECK_FALSE(bs1p_nf_member(ab, W("T t"), 2));
  CHECK_FALSE(bs1p_nf_member(ab, W("a T"), 2));
  CHECK_FALSE(bs1p_nf_member(ab, W("a A"), 2));
  CHECK_FALSE(bs1p_nf_member(ab, W("t a"), 2));
  CHECK_THROWS_WITH_AS(bs1p_nf_member(ab, W("a"), 1),
                       doctest::Contains("InvalidArgument"), Error);
  CHECK_THROWS_WITH_AS(bs1p_nf_member(ab_f2(), Word(), 2),
                       doctest::Contains("WrongAlphabet"), Error);
}

TEST_CASE("membership predicates agree with brute force") {
  {
    Alphabet ab = thompson_alphabet();
    for (const Word& w : all_words(ab, 4))
      CHECK(thompson_nf_member(ab, w) == naive_thompson_member(ab, w));
  }
  {
    Alphabet ab = bs_alphabet();
    for (const Word& w : all_words(ab, 4)) {
      CHECK(bs1p_nf_member(ab, w, 2) == naive_bs1p_member(ab, w, 2));
      CHECK(bs1p_nf_member(ab, w, 3) == naive_bs1p_member(ab, w, 3));
    }
  }
}

TEST_CASE("the capped system realizes the language on small balls") {
  const PresetEntry& bs = preset("BS12");
  const Alphabet& ab = bs.rs->alphabet();
  NormalFormOracle oracle = oracle_from_rs(*bs.rs);
  for (const Word& w : all_words(ab, 4))
    CHECK(bs1p_nf_member(ab, w, 2) == (oracle(w) == w));
  CayleyBall ball = build_ball(oracle, ab, 4);
  for (int v = 0; v < ball.vertex_count(); ++v)
    CHECK(bs1p_nf_member(ab, ball.nf(v), 2));
}
