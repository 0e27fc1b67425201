#pragma once

#include <vector>

#include "memb/character.hpp"
#include "memb/rational.hpp"
#include "memb/rng.hpp"

namespace memb {

// Alice's message: the index of a character in the canonical full-table
// ordering. Cost is ceil(log2 #Irr(G)); the coarser ceil(log2 |G|) bound
// is reported alongside.
struct NormMessage {
  int char_index = 0;
  int bit_cost = 0;
};

// Precomputation for the normal-closure membership protocol on (G, H):
// N = <<H>>, the characters containing N in their kernel, and exact
// integer sampling thresholds (chi(1)^2 |N| out of |G|).
struct NormContext {
  const CharacterTable* table = nullptr;
  Subgroup N;                     // normal closure of H
  std::vector<int> lambda;        // character indices
  std::vector<long long> cumw;    // cumulative integer weights, last = |G|
  int bits = 0;                   // ceil(log2 #Irr(G))
  int paper_bits = 0;             // ceil(log2 |G|)
};

NormContext make_norm_context(const CharacterTable& table, const Subgroup& H);

// Samples a character of Lambda_N with probability chi(1)^2 |N| / |G|.
NormMessage alice_norm(const NormContext& ctx, Rng& rng);

// 1 iff |chi(y) - chi(1)| < 1e-8.
int bob_norm(const CharacterTable& table, int y, int char_index);

// Exact acceptance probability of a wrong answer: 0 when y is in <<H>>,
// otherwise |N| / |K| with K = <<N union {y}>>. Always <= 1/2 for y
// outside the closure.
Rational norm_exact_error(const CharacterTable& table, const Subgroup& H, int y);

struct NormRun {
  int decision = 0;
  int bits = 0;
};

NormRun run_norm(const NormContext& ctx, int y, Rng& rng);

}  // namespace memb
