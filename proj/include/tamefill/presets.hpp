#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tamefill/rewrite.hpp"
#include "tamefill/word.hpp"

namespace tamefill {

// A named example system. Entries with a rewriting system are gated at
// load: check_minimal must come back clean, and critical_pairs must be
// empty unless the entry is experimental. confluent records the
// critical-pair result either way.
struct PresetEntry {
  std::string name;
  std::string summary;
  Presentation presentation;
  std::optional<RewritingSystem> rs;
  bool experimental = false;
  bool confluent = false;
  std::optional<int> group_order;
};

// Catalog order: F1, F2, Z2, Z3, Z5, S3, BS12. Immutable after the
// first access.
const std::vector<PresetEntry>& preset_catalog();
std::vector<std::string> preset_names();

// UnknownPreset when the name is not in the catalog.
const PresetEntry& preset(const std::string& name);

// Alphabets the normal-form predicates below expect.
Alphabet thompson_alphabet();  // x0 X0 x1 X1
Alphabet bs_alphabet();        // a A t T

// True iff w avoids the factors x0^e x0^-e, x1^e x1^-e, x0 x0 x1^e and
// every prefix has x0-exponent sum <= 0.
bool thompson_nf_member(const Alphabet& ab, const Word& w);

// True iff w reads T^i a^m t^k (a-block all a or all A) and either p
// does not divide m or one of i, k is zero. p >= 2.
bool bs1p_nf_member(const Alphabet& ab, const Word& w, int p);

}  // namespace tamefill
