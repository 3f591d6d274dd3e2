#include "tamefill/rewrite.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace tamefill {

RewritingSystem::RewritingSystem(Alphabet alphabet, std::vector<Rule> rules,
                                 long step_budget, long node_budget)
    : alphabet_(std::move(alphabet)),
      rules_(std::move(rules)),
      step_budget_(step_budget),
      node_budget_(node_budget) {
  if (step_budget_ <= 0 || node_budget_ <= 0)
    fail(Errc::InvalidArgument, "budgets must be positive");
  std::set<std::pair<Word, Word>> seen;
  for (const Rule& r : rules_) {
    if (r.lhs.empty()) fail(Errc::InvalidArgument, "rule with empty lhs");
    if (r.lhs == r.rhs) fail(Errc::InvalidArgument, "rule with lhs = rhs");
    if (!seen.insert({r.lhs, r.rhs}).second)
      fail(Errc::InvalidArgument, "duplicate rule");
    for (const Word* side : {&r.lhs, &r.rhs})
      for (Letter a : *side)
        if (static_cast<unsigned char>(a) >= static_cast<unsigned char>(alphabet_.size()))
          fail(Errc::InvalidArgument, "rule letter outside alphabet");
  }
}

namespace {

Word apply_rule(const RewritingSystem& rs, const Word& w, const RuleMatch& m) {
  const Rule& r = rs.rules()[m.rule];
  return w.substr(0, m.pos) + r.rhs + w.substr(m.pos + r.lhs.size());
}

// Best rule matching w at pos: longest lhs, then rule order.
std::optional<size_t> best_rule_at(const RewritingSystem& rs, const Word& w, size_t pos) {
  std::optional<size_t> best;
  size_t best_len = 0;
  for (size_t i = 0; i < rs.rules().size(); ++i) {
    const Word& l = rs.rules()[i].lhs;
    if (l.size() > w.size() - pos || l.size() <= best_len) continue;
    if (w.compare(pos, l.size(), l) == 0) {
      best = i;
      best_len = l.size();
    }
  }
  return best;
}

// Leftmost-ending occurrence; ties by longest lhs, then rule order.
std::optional<RuleMatch> prefix_match(const RewritingSystem& rs, const Word& w) {
  std::optional<RuleMatch> best;
  size_t best_end = 0, best_len = 0;
  for (size_t i = 0; i < rs.rules().size(); ++i) {
    const Word& l = rs.rules()[i].lhs;
    for (size_t pos = 0; pos + l.size() <= w.size(); ++pos) {
      if (w.compare(pos, l.size(), l) != 0) continue;
      size_t end = pos + l.size();
      if (!best || end < best_end || (end == best_end && l.size() > best_len)) {
        best = RuleMatch{pos, i};
        best_end = end;
        best_len = l.size();
      }
      break;  // later occurrences of this lhs end later
    }
  }
  return best;
}

}  // namespace

bool is_irreducible(const RewritingSystem& rs, const Word& w) {
  return !leftmost_match(rs, w).has_value();
}

std::optional<RuleMatch> leftmost_match(const RewritingSystem& rs, const Word& w) {
  for (size_t pos = 0; pos < w.size(); ++pos)
    if (auto rule = best_rule_at(rs, w, pos)) return RuleMatch{pos, *rule};
  return std::nullopt;
}

std::optional<Word> rewrite_once(const RewritingSystem& rs, const Word& w) {
  auto m = leftmost_match(rs, w);
  if (!m) return std::nullopt;
  return apply_rule(rs, w, *m);
}

Word normal_form(const RewritingSystem& rs, const Word& w) {
  Word cur = w;
  for (long step = 0; step < rs.step_budget(); ++step) {
    auto m = leftmost_match(rs, cur);
    if (!m) return cur;
    cur = apply_rule(rs, cur, *m);
  }
  fail(Errc::BudgetExceeded, "normal_form exceeded " + std::to_string(rs.step_budget()) + " steps");
}

std::vector<Word> rewrite_trace(const RewritingSystem& rs, const Word& w) {
  std::vector<Word> out{w};
  for (long step = 0; step < rs.step_budget(); ++step) {
    auto m = leftmost_match(rs, out.back());
    if (!m) return out;
    out.push_back(apply_rule(rs, out.back(), *m));
  }
  fail(Errc::BudgetExceeded, "rewrite_trace exceeded " + std::to_string(rs.step_budget()) + " steps");
}

std::vector<Word> prefix_rewrite_sequence(const RewritingSystem& rs, const Word& w) {
  std::vector<Word> out{w};
  for (long step = 0; step < rs.step_budget(); ++step) {
    auto m = prefix_match(rs, out.back());
    if (!m) return out;
    out.push_back(apply_rule(rs, out.back(), *m));
  }
  fail(Errc::BudgetExceeded,
       "prefix_rewrite_sequence exceeded " + std::to_string(rs.step_budget()) + " steps");
}

std::vector<MinimalityViolation> check_minimal(const RewritingSystem& rs) {
  std::vector<MinimalityViolation> out;
  for (size_t i = 0; i < rs.rules().size(); ++i) {
    const Rule& r = rs.rules()[i];
    if (!is_irreducible(rs, r.rhs)) out.push_back({i, true, r.rhs});
    // A proper factor of the lhs is reducible iff some lhs embeds
    // properly into it.
    for (size_t j = 0; j < rs.rules().size(); ++j) {
      const Word& l = rs.rules()[j].lhs;
      if (l.size() >= r.lhs.size()) continue;
      if (r.lhs.find(l) != Word::npos) {
        out.push_back({i, false, l});
        break;
      }
    }
  }
  return out;
}

std::vector<CriticalPair> critical_pairs(const RewritingSystem& rs) {
  std::set<std::tuple<Word, Word, Word>> found;
  auto consider = [&](const Word& overlap, const Word& left, const Word& right) {
    Word ln = normal_form(rs, left);
    Word rn = normal_form(rs, right);
    if (ln == rn) return;
    if (shortlex_less(rn, ln)) std::swap(ln, rn);
    found.insert({overlap, ln, rn});
  };
  const auto& rules = rs.rules();
  for (size_t i = 0; i < rules.size(); ++i) {
    for (size_t j = 0; j < rules.size(); ++j) {
      const Word &l1 = rules[i].lhs, &l2 = rules[j].lhs;
      // Overlap: proper suffix of l1 = proper prefix of l2.
      for (size_t k = 1; k < l1.size() && k < l2.size(); ++k) {
        if (l1.compare(l1.size() - k, k, l2, 0, k) != 0) continue;
        Word overlap = l1 + l2.substr(k);
        consider(overlap, rules[i].rhs + l2.substr(k),
                 l1.substr(0, l1.size() - k) + rules[j].rhs);
      }
      // Containment: l2 a factor of l1 (proper, or an equal lhs of a
      // distinct rule).
      if (i == j) continue;
      for (size_t pos = 0; pos + l2.size() <= l1.size(); ++pos) {
        if (pos == 0 && l2.size() == l1.size() && i < j) break;  // handled from (j,i)
        if (l1.compare(pos, l2.size(), l2) != 0) continue;
        consider(l1, rules[i].rhs,
                 l1.substr(0, pos) + rules[j].rhs + l1.substr(pos + l2.size()));
      }
    }
  }
  std::vector<CriticalPair> out;
  for (const auto& [overlap, ln, rn] : found) out.push_back({overlap, ln, rn});
  return out;
}

namespace {

// Runs fn on every word of length <= n.
void enumerate_words(const Alphabet& ab, size_t n, const auto& fn) {
  Word w;
  fn(w);
  const int k = ab.size();
  if (k == 0) return;
  while (true) {
    if (w.size() < n) {
      w.push_back(0);
    } else {
      while (!w.empty() && w.back() == k - 1) w.pop_back();
      if (w.empty()) return;
      ++w.back();
    }
    fn(w);
  }
}

}  // namespace

size_t gamma(const RewritingSystem& rs, size_t n) {
  std::unordered_set<Word> visited;
  std::vector<Word> stack;
  enumerate_words(rs.alphabet(), n, [&](const Word& w) { stack.push_back(w); });
  size_t best = 0;
  while (!stack.empty()) {
    Word w = std::move(stack.back());
    stack.pop_back();
    if (!visited.insert(w).second) continue;
    if (static_cast<long>(visited.size()) > rs.node_budget())
      fail(Errc::BudgetExceeded, "gamma reachability exceeded node budget");
    best = std::max(best, w.size());
    for (size_t pos = 0; pos < w.size(); ++pos)
      for (const Rule& r : rs.rules())
        if (r.lhs.size() <= w.size() - pos && w.compare(pos, r.lhs.size(), r.lhs) == 0)
          stack.push_back(w.substr(0, pos) + r.rhs + w.substr(pos + r.lhs.size()));
  }
  return best;
}

size_t gamma_prefix(const RewritingSystem& rs, size_t n) {
  // memo: max length along the (deterministic) prefix trajectory.
  std::unordered_map<Word, size_t> memo;
  long nodes = 0;
  size_t best = 0;
  enumerate_words(rs.alphabet(), n, [&](const Word& start) {
    std::vector<Word> chain;
    Word cur = start;
    size_t tail = 0;
    for (long step = 0;; ++step) {
      if (auto it = memo.find(cur); it != memo.end()) {
        tail = it->second;
        break;
      }
      if (step >= rs.step_budget())
        fail(Errc::BudgetExceeded, "gamma_prefix trajectory exceeded step budget");
      if (++nodes > rs.node_budget())
        fail(Errc::BudgetExceeded, "gamma_prefix exceeded node budget");
      chain.push_back(cur);
      auto m = prefix_match(rs, cur);
      if (!m) {
        tail = cur.size();
        break;
      }
      cur = apply_rule(rs, cur, *m);
    }
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      tail = std::max(tail, it->size());
      memo.emplace(*it, tail);
    }
    best = std::max(best, tail);
  });
  return best;
}

bool all_rules_length_nonincreasing(const RewritingSystem& rs) {
  return std::all_of(rs.rules().begin(), rs.rules().end(),
                     [](const Rule& r) { return r.rhs.size() <= r.lhs.size(); });
}

}  // namespace tamefill
