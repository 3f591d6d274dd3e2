#include "tamefill/word.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace tamefill {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::ParseError: return "ParseError";
    case Errc::UnknownPreset: return "UnknownPreset";
    case Errc::WrongAlphabet: return "WrongAlphabet";
    case Errc::RadiusExceeded: return "RadiusExceeded";
    case Errc::RangeExceeded: return "RangeExceeded";
    case Errc::BallTooSmall: return "BallTooSmall";
    case Errc::MissingDiagram: return "MissingDiagram";
    case Errc::CatalogIncomplete: return "CatalogIncomplete";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::OracleFailure: return "OracleFailure";
    case Errc::InconsistentOracle: return "InconsistentOracle";
    case Errc::DanglingEdge: return "DanglingEdge";
    case Errc::NoApplicableRule: return "NoApplicableRule";
    case Errc::NotAlmostConvex: return "NotAlmostConvex";
    case Errc::FellowTravelerViolation: return "FellowTravelerViolation";
    case Errc::CycleDetected: return "CycleDetected";
    case Errc::NotIdentity: return "NotIdentity";
    case Errc::NonSimpleNormalForm: return "NonSimpleNormalForm";
  }
  return "Error";
}

int errc_exit_code(Errc c) {
  switch (c) {
    case Errc::InvalidArgument:
    case Errc::ParseError:
    case Errc::UnknownPreset:
    case Errc::WrongAlphabet:
    case Errc::RadiusExceeded:
    case Errc::RangeExceeded:
    case Errc::BallTooSmall:
    case Errc::MissingDiagram:
    case Errc::CatalogIncomplete:
      return 2;
    case Errc::BudgetExceeded:
    case Errc::OracleFailure:
      return 3;
    default:
      return 1;
  }
}

void fail(Errc code, const std::string& message) { throw Error(code, message); }

int q4_ceil(Q4 x) {
  if (x.q >= 0) return (x.q + 3) / 4;
  return -((-x.q) / 4);
}

std::string q4_to_string(Q4 x) {
  if (x.q % 4 == 0) return std::to_string(x.q / 4);
  if (x.q % 2 == 0) return std::to_string(x.q / 2) + "/2";
  return std::to_string(x.q) + "/4";
}

bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(
      a.begin(), a.end(), b.begin(), b.end(),
      [](char x, char y) { return static_cast<unsigned char>(x) < static_cast<unsigned char>(y); });
}

namespace {

bool valid_letter_name(std::string_view name) {
  if (name.empty() || name == "1" || name == "->" || name == "," || name == "#")
    return false;
  for (char c : name)
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == ',' || c == '#')
      return false;
  return true;
}

}  // namespace

Letter Alphabet::add_name(std::string_view name) {
  if (!valid_letter_name(name))
    fail(Errc::InvalidArgument, "invalid letter name '" + std::string(name) + "'");
  if (find(name))
    fail(Errc::InvalidArgument, "duplicate letter name '" + std::string(name) + "'");
  if (names_.size() >= 127) fail(Errc::InvalidArgument, "alphabet too large");
  names_.emplace_back(name);
  inv_.push_back(0);
  return static_cast<Letter>(names_.size() - 1);
}

Letter Alphabet::add_pair(std::string_view name, std::string_view inverse_name) {
  if (name == inverse_name)
    fail(Errc::InvalidArgument,
         "use add_involution for a self-inverse generator '" + std::string(name) + "'");
  Letter a = add_name(name);
  Letter b = add_name(inverse_name);
  inv_[static_cast<size_t>(a)] = b;
  inv_[static_cast<size_t>(b)] = a;
  return a;
}

Letter Alphabet::add_involution(std::string_view name) {
  Letter a = add_name(name);
  inv_[static_cast<size_t>(a)] = a;
  return a;
}

Letter Alphabet::inverse(Letter a) const {
  return inv_.at(static_cast<size_t>(static_cast<unsigned char>(a)));
}

std::string_view Alphabet::name(Letter a) const {
  return names_.at(static_cast<size_t>(static_cast<unsigned char>(a)));
}

std::optional<Letter> Alphabet::find(std::string_view token) const {
  for (size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == token) return static_cast<Letter>(i);
  return std::nullopt;
}

Word Alphabet::parse_word(std::string_view text) const {
  Word w;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    if (token == "1") continue;
    auto a = find(token);
    if (!a) fail(Errc::ParseError, "unknown letter '" + token + "'");
    w.push_back(*a);
  }
  return w;
}

std::string Alphabet::format_word(const Word& w) const {
  std::string out;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += name(w[i]);
  }
  return out;
}

bool Alphabet::operator==(const Alphabet& other) const {
  return names_ == other.names_ && inv_ == other.inv_;
}

Word formal_inverse(const Alphabet& ab, const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(ab.inverse(*it));
  return out;
}

bool is_freely_reduced(const Alphabet& ab, const Word& w) {
  for (size_t i = 0; i + 1 < w.size(); ++i)
    if (ab.inverse(w[i]) == w[i + 1]) return false;
  return true;
}

Word free_reduce(const Alphabet& ab, const Word& w) {
  Word out;
  out.reserve(w.size());
  for (Letter a : w) {
    if (!out.empty() && ab.inverse(out.back()) == a)
      out.pop_back();
    else
      out.push_back(a);
  }
  return out;
}

Word rotate(const Word& w, size_t k) {
  if (w.empty()) return w;
  k %= w.size();
  return w.substr(k) + w.substr(0, k);
}

std::vector<Word> symmetrize(const Alphabet& ab, const std::vector<Word>& relators,
                             SymmetrizeReport* report) {
  std::set<Word, ShortlexLess> closure;
  std::vector<Word> work;
  for (const Word& r : relators) {
    if (r.empty()) fail(Errc::InvalidArgument, "empty relator");
    if (report && free_reduce(ab, r).empty()) report->trivial_relators.push_back(r);
    work.push_back(r);
  }
  while (!work.empty()) {
    Word w = std::move(work.back());
    work.pop_back();
    if (!closure.insert(w).second) continue;
    for (size_t k = 1; k < w.size(); ++k) work.push_back(rotate(w, k));
    work.push_back(formal_inverse(ab, w));
    Word fr = free_reduce(ab, w);
    if (!fr.empty()) work.push_back(std::move(fr));
  }
  return {closure.begin(), closure.end()};
}

bool Presentation::is_relator(const Word& w) const {
  return std::binary_search(relators.begin(), relators.end(), w, ShortlexLess{});
}

size_t Presentation::longest_relator() const {
  size_t n = 0;
  for (const Word& r : relators) n = std::max(n, r.size());
  return n;
}

Presentation make_presentation(Alphabet alphabet, const std::vector<Word>& relators) {
  Presentation p;
  p.alphabet = std::move(alphabet);
  p.relators = symmetrize(p.alphabet, relators, &p.report);
  return p;
}

Presentation symmetrize(const Presentation& p) {
  return make_presentation(p.alphabet, p.relators);
}

}  // namespace tamefill
