#include "tamefill/presets.hpp"

#include <utility>

namespace tamefill {

namespace {

PresetEntry make_entry(std::string name, std::string summary, Alphabet ab,
                       std::vector<Word> relators, std::vector<Rule> rules,
                       std::optional<int> order, bool experimental) {
  PresetEntry e;
  e.name = std::move(name);
  e.summary = std::move(summary);
  e.presentation = make_presentation(ab, relators);
  if (!rules.empty()) e.rs.emplace(std::move(ab), std::move(rules));
  e.experimental = experimental;
  e.group_order = order;
  return e;
}

PresetEntry free_entry(std::string name, int rank) {
  Alphabet ab;
  ab.add_pair("a", "A");
  if (rank > 1) ab.add_pair("b", "B");
  std::vector<Rule> rules;
  for (int g = 0; g < rank; ++g) {
    const Letter x = static_cast<Letter>(2 * g);
    const Letter xi = ab.inverse(x);
    rules.push_back({Word{x, xi}, {}});
    rules.push_back({Word{xi, x}, {}});
  }
  return make_entry(std::move(name), "free group: cancellation rules only",
                    std::move(ab), {}, std::move(rules), std::nullopt, false);
}

PresetEntry z2_entry() {
  Alphabet ab;
  ab.add_pair("a", "A");
  ab.add_pair("b", "B");
  auto W = [&](const char* s) { return ab.parse_word(s); };
  std::vector<Rule> rules{
      {W("a A"), {}},       {W("A a"), {}},       {W("b B"), {}},
      {W("B b"), {}},       {W("b a"), W("a b")}, {W("b A"), W("A b")},
      {W("B a"), W("a B")}, {W("B A"), W("A B")}};
  return make_entry("Z2", "free abelian rank 2: a-letters pushed left",
                    std::move(ab), {W("a b A B")}, std::move(rules), std::nullopt,
                    false);
}

PresetEntry zn_entry(std::string name, int n) {
  Alphabet ab;
  ab.add_pair("a", "A");
  auto W = [&](const char* s) { return ab.parse_word(s); };
  // Balanced exponents: a^h collapses to A^(n-h) past the halfway
  // point, so normal forms are a^j, A^j with j <= n/2.
  const int h = n / 2 + 1;
  Word lhs_a(static_cast<size_t>(h), ab.parse_word("a")[0]);
  Word rhs_a(static_cast<size_t>(n - h), ab.parse_word("A")[0]);
  Word lhs_A = formal_inverse(ab, lhs_a);
  Word rhs_A = formal_inverse(ab, rhs_a);
  std::vector<Rule> rules{
      {W("a A"), {}}, {W("A a"), {}}, {lhs_a, rhs_a}, {lhs_A, rhs_A}};
  Word relator(static_cast<size_t>(n), ab.parse_word("a")[0]);
  return make_entry(std::move(name), "cyclic group of order " + std::to_string(n),
                    std::move(ab), {relator}, std::move(rules), n, false);
}

PresetEntry s3_entry() {
  Alphabet ab;
  ab.add_pair("r", "R");
  ab.add_involution("s");
  auto W = [&](const char* s) { return ab.parse_word(s); };
  std::vector<Rule> rules{{W("r R"), {}},     {W("R r"), {}},    {W("s s"), {}},
                          {W("r r"), W("R")}, {W("R R"), W("r")},
                          {W("s r"), W("R s")}, {W("s R"), W("r s")}};
  return make_entry("S3", "symmetric group on 3 letters: s pushed right",
                    std::move(ab), {W("r r r"), W("s s"), W("r s r s")},
                    std::move(rules), 6, false);
}

// Candidate system for t a t^-1 = a^2: t pushed right past a-letters
// (doubling), t^-1 pushed left, and sandwiched even powers collapsed.
// The collapse family is genuinely infinite; it is truncated here, so
// the system is confluent only away from the truncation boundary and
// ships flagged experimental.
constexpr int kBsCollapseCap = 16;

PresetEntry bs12_entry() {
  Alphabet ab;
  ab.add_pair("a", "A");
  ab.add_pair("t", "T");
  auto W = [&](const char* s) { return ab.parse_word(s); };
  const Letter a = 0, A = 1, t = 2, T = 3;
  std::vector<Rule> rules{{W("a A"), {}},        {W("A a"), {}},
                          {W("t T"), {}},        {W("T t"), {}},
                          {W("t a"), W("a a t")}, {W("t A"), W("A A t")},
                          {W("a T"), W("T a a")}, {W("A T"), W("T A A")}};
  for (int m = 1; m <= kBsCollapseCap; ++m) {
    for (Letter g : {a, A}) {
      Word lhs{T};
      lhs.append(static_cast<size_t>(2 * m), g);
      lhs.push_back(t);
      rules.push_back({std::move(lhs), Word(static_cast<size_t>(m), g)});
    }
  }
  return make_entry("BS12", "Baumslag-Solitar (1,2): collapse rules capped",
                    std::move(ab), {W("t a T A A")}, std::move(rules),
                    std::nullopt, true);
}

std::vector<PresetEntry> load_catalog() {
  std::vector<PresetEntry> out;
  out.push_back(free_entry("F1", 1));
  out.push_back(free_entry("F2", 2));
  out.push_back(z2_entry());
  out.push_back(zn_entry("Z3", 3));
  out.push_back(zn_entry("Z5", 5));
  out.push_back(s3_entry());
  out.push_back(bs12_entry());
  for (PresetEntry& e : out) {
    if (!e.rs) continue;
    if (!check_minimal(*e.rs).empty())
      fail(Errc::InvalidArgument, "preset " + e.name + " ships a non-minimal system");
    e.confluent = critical_pairs(*e.rs).empty();
    if (!e.confluent && !e.experimental)
      fail(Errc::InvalidArgument, "preset " + e.name + " ships a non-confluent system");
  }
  return out;
}

}  // namespace

const std::vector<PresetEntry>& preset_catalog() {
  static const std::vector<PresetEntry> catalog = load_catalog();
  return catalog;
}

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const PresetEntry& e : preset_catalog()) out.push_back(e.name);
  return out;
}

const PresetEntry& preset(const std::string& name) {
  for (const PresetEntry& e : preset_catalog())
    if (e.name == name) return e;
  std::string known;
  for (const PresetEntry& e : preset_catalog()) {
    if (!known.empty()) known += ", ";
    known += e.name;
  }
  fail(Errc::UnknownPreset, "no preset named " + name + " (have: " + known + ")");
}

Alphabet thompson_alphabet() {
  Alphabet ab;
  ab.add_pair("x0", "X0");
  ab.add_pair("x1", "X1");
  return ab;
}

Alphabet bs_alphabet() {
  Alphabet ab;
  ab.add_pair("a", "A");
  ab.add_pair("t", "T");
  return ab;
}

bool thompson_nf_member(const Alphabet& ab, const Word& w) {
  if (!(ab == thompson_alphabet()))
    fail(Errc::WrongAlphabet, "expected the x0/x1 alphabet");
  const Letter x0 = 0, X0 = 1, x1 = 2, X1 = 3;
  long sum = 0;
  for (size_t i = 0; i < w.size(); ++i) {
    if (w[i] == x0) ++sum;
    if (w[i] == X0) --sum;
    if (sum > 0) return false;
    if (i + 1 < w.size() && w[i + 1] == ab.inverse(w[i])) return false;
    if (i + 2 < w.size() && w[i] == x0 && w[i + 1] == x0 &&
        (w[i + 2] == x1 || w[i + 2] == X1))
      return false;
  }
  return true;
}

bool bs1p_nf_member(const Alphabet& ab, const Word& w, int p) {
  if (p < 2) fail(Errc::InvalidArgument, "divisor must be at least 2");
  if (!(ab == bs_alphabet())) fail(Errc::WrongAlphabet, "expected the a/t alphabet");
  const Letter a = 0, A = 1, t = 2, T = 3;
  size_t i = 0;
  long ti = 0, m = 0, k = 0;
  while (i < w.size() && w[i] == T) ++ti, ++i;
  if (i < w.size() && (w[i] == a || w[i] == A)) {
    const Letter block = w[i];
    while (i < w.size() && w[i] == block) ++m, ++i;
  }
  while (i < w.size() && w[i] == t) ++k, ++i;
  if (i != w.size()) return false;
  if (m % p != 0) return true;
  return ti == 0 || k == 0;
}

}  // namespace tamefill
