#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tamefill/common.hpp"

namespace tamefill {

// A letter is an index into an Alphabet; a word is a sequence of letter
// indices. Words are std::string for cheap hashing, comparison, and
// substring operations, but they hold indices, never display text.
using Letter = char;
using Word = std::string;

// Shortlex over the declaration order of the alphabet: shorter first,
// ties by leftmost smaller letter index.
bool shortlex_less(const Word& a, const Word& b);

struct ShortlexLess {
  bool operator()(const Word& a, const Word& b) const {
    return shortlex_less(a, b);
  }
};

class Alphabet {
 public:
  // Declares a generator and its distinct formal inverse; returns the
  // generator's index (the inverse gets the next index).
  Letter add_pair(std::string_view name, std::string_view inverse_name);

  // Declares an order-2 generator that is its own inverse. Must be
  // explicit; add_pair never aliases.
  Letter add_involution(std::string_view name);

  int size() const { return static_cast<int>(names_.size()); }
  Letter inverse(Letter a) const;
  std::string_view name(Letter a) const;
  std::optional<Letter> find(std::string_view token) const;

  // Whitespace-separated letter names. The token "1" denotes the empty
  // word and contributes no letters. Unknown tokens raise ParseError.
  Word parse_word(std::string_view text) const;

  // Space-separated names; the empty word renders as "".
  std::string format_word(const Word& w) const;

  bool operator==(const Alphabet& other) const;

 private:
  Letter add_name(std::string_view name);

  std::vector<std::string> names_;
  std::vector<Letter> inv_;
};

Word formal_inverse(const Alphabet& ab, const Word& w);
bool is_freely_reduced(const Alphabet& ab, const Word& w);
Word free_reduce(const Alphabet& ab, const Word& w);

// w rotated left by k: w[k..] + w[..k].
Word rotate(const Word& w, size_t k);

struct SymmetrizeReport {
  // Nonempty input relators whose free reduction is empty. Kept in the
  // closure, reported so callers can warn.
  std::vector<Word> trivial_relators;
};

// Closure of the given relators under cyclic rotation, formal inversion,
// and nonempty freely reduced representatives. Sorted shortlex, unique.
// Empty input relators raise InvalidArgument.
std::vector<Word> symmetrize(const Alphabet& ab, const std::vector<Word>& relators,
                             SymmetrizeReport* report = nullptr);

struct Presentation {
  Alphabet alphabet;
  std::vector<Word> relators;  // symmetrized, shortlex-sorted, unique
  SymmetrizeReport report;

  bool is_relator(const Word& w) const;
  size_t longest_relator() const;
};

Presentation make_presentation(Alphabet alphabet, const std::vector<Word>& relators);
Presentation symmetrize(const Presentation& p);

}  // namespace tamefill
