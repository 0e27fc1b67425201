#include "memb/norm_protocol.hpp"

namespace memb {

NormContext make_norm_context(const CharacterTable& table, const Subgroup& H) {
  const FiniteGroup& G = *table.group;
  NormContext ctx;
  ctx.table = &table;
  ctx.N = normal_closure(G, H);
  ctx.lambda = lambda_H(table, ctx.N);
  long long total = 0;
  for (int i : ctx.lambda) {
    total += static_cast<long long>(table.degrees[i]) * table.degrees[i] * ctx.N.order();
    ctx.cumw.push_back(total);
  }
  // The weights must form an exact distribution; anything else means the
  // table is broken.
  if (total != G.n)
    throw std::runtime_error("sampling weights sum to " + std::to_string(total) +
                             " instead of |G| = " + std::to_string(G.n));
  ctx.bits = ceil_log2(static_cast<std::uint64_t>(table.num_chars()));
  ctx.paper_bits = ceil_log2(static_cast<std::uint64_t>(G.n));
  return ctx;
}

NormMessage alice_norm(const NormContext& ctx, Rng& rng) {
  const long long u = static_cast<long long>(rng.below(ctx.table->group->n));
  size_t i = 0;
  while (u >= ctx.cumw[i]) ++i;
  return NormMessage{ctx.lambda[i], ctx.bits};
}

int bob_norm(const CharacterTable& table, int y, int char_index) {
  return std::abs(table.value(char_index, y) - table.chars(char_index, 0)) < tol::cert ? 1 : 0;
}

Rational norm_exact_error(const CharacterTable& table, const Subgroup& H, int y) {
  const FiniteGroup& G = *table.group;
  Subgroup N = normal_closure(G, H);
  if (N.contains(y)) return Rational(0);
  std::vector<int> gens = N.generators;
  gens.push_back(y);
  Subgroup K = normal_closure(G, subgroup_generate(G, gens));
  Rational err(N.order(), K.order());
  if (!(err <= Rational(1, 2))) throw std::runtime_error("closure error above 1/2");
  return err;
}

NormRun run_norm(const NormContext& ctx, int y, Rng& rng) {
  const NormMessage msg = alice_norm(ctx, rng);
  return NormRun{bob_norm(*ctx.table, y, msg.char_index), msg.bit_cost};
}

}  // namespace memb
