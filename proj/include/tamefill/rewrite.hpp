#pragma once

#include <optional>
#include <vector>

#include "tamefill/word.hpp"

namespace tamefill {

inline constexpr long kDefaultStepBudget = 10000;
inline constexpr long kDefaultNodeBudget = 2000000;

struct Rule {
  Word lhs;  // nonempty
  Word rhs;

  bool operator==(const Rule&) const = default;
};

// An lhs occurrence: rules[rule].lhs matches w at [pos, pos+len).
struct RuleMatch {
  size_t pos = 0;
  size_t rule = 0;
};

class RewritingSystem {
 public:
  RewritingSystem(Alphabet alphabet, std::vector<Rule> rules,
                  long step_budget = kDefaultStepBudget,
                  long node_budget = kDefaultNodeBudget);

  const Alphabet& alphabet() const { return alphabet_; }
  const std::vector<Rule>& rules() const { return rules_; }
  long step_budget() const { return step_budget_; }
  long node_budget() const { return node_budget_; }

 private:
  Alphabet alphabet_;
  std::vector<Rule> rules_;
  long step_budget_;
  long node_budget_;
};

bool is_irreducible(const RewritingSystem& rs, const Word& w);

// Leftmost occurrence; ties at equal position broken by longest lhs,
// then rule order. Absent iff irreducible.
std::optional<RuleMatch> leftmost_match(const RewritingSystem& rs, const Word& w);

std::optional<Word> rewrite_once(const RewritingSystem& rs, const Word& w);

// Iterates rewrite_once to the unique irreducible word. Throws
// BudgetExceeded after step_budget steps.
Word normal_form(const RewritingSystem& rs, const Word& w);

// The full step sequence w = w0 -> ... -> wn of normal_form; wn
// irreducible. Witnesses reachability of the normal form.
std::vector<Word> rewrite_trace(const RewritingSystem& rs, const Word& w);

// Each step rewrites the shortest reducible prefix: the leftmost-ending
// lhs occurrence, ties as rewrite_once.
std::vector<Word> prefix_rewrite_sequence(const RewritingSystem& rs, const Word& w);

struct MinimalityViolation {
  size_t rule;         // offending rule index
  bool rhs_reducible;  // else a proper factor of the lhs is reducible
  Word witness;        // the reducible rhs, or the embedded lhs
};

// Empty iff every rhs is irreducible and every proper factor of every
// lhs is irreducible.
std::vector<MinimalityViolation> check_minimal(const RewritingSystem& rs);

struct CriticalPair {
  Word overlap;   // the superposition word both rules act on
  Word left_nf;   // normal form of one one-step resolution
  Word right_nf;  // normal form of the other; differs from left_nf
};

// Unresolved critical pairs from all lhs overlaps and containments.
// Empty plus termination means complete by Newman's lemma.
std::vector<CriticalPair> critical_pairs(const RewritingSystem& rs);

// String growth complexity: max length over all words reachable by any
// rewriting sequence from any word of length <= n. Exhaustive search
// over the rewriting digraph; throws BudgetExceeded past node_budget.
size_t gamma(const RewritingSystem& rs, size_t n);

// As gamma, restricted to prefix rewriting sequences.
size_t gamma_prefix(const RewritingSystem& rs, size_t n);

// True iff l(rhs) <= l(lhs) for every rule; then gamma(n) = n.
bool all_rules_length_nonincreasing(const RewritingSystem& rs);

}  // namespace tamefill
