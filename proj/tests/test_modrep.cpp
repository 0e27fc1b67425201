#include "doctest.h"

#include <algorithm>
#include <map>
#include <set>

#include "memb/modrep.hpp"

using namespace memb;

namespace {

std::multiset<int> dims_of(const ModularIrrepSet& s) {
  std::multiset<int> d;
  for (const auto& r : s.irreps) d.insert(r.dim);
  return d;
}

// Brute-force acceptance oracle: enumerate every vector of I_H(rho) and
// count the ones fixed by rho(y). Only viable when q^dim is tiny.
Rational accept_by_enumeration(const ModularIrrepSet& set, const Subgroup& H, int y) {
  const FqField& F = set.field;
  const FiniteGroup& G = *set.group;
  Rational acc(0);
  for (int i = 0; i < set.num_irreps(); ++i) {
    FixedSpace fs = fixed_space(F, set.irreps[i], H);
    if (fs.dim == 0) continue;
    const long long w = static_cast<long long>(H.order()) * set.irreps[i].dim * fs.dim;
    long long total = 1, good = 0;
    for (int j = 0; j < fs.dim; ++j) total *= static_cast<long long>(F.q);
    REQUIRE(total <= 100000);
    std::vector<std::uint64_t> coeff(fs.dim, 0);
    for (long long it = 0; it < total; ++it) {
      long long x = it;
      for (int j = 0; j < fs.dim; ++j) {
        coeff[j] = static_cast<std::uint64_t>(x % F.q);
        x /= F.q;
      }
      FqVec v(set.irreps[i].dim, 0);
      for (int j = 0; j < fs.dim; ++j)
        for (int c = 0; c < set.irreps[i].dim; ++c)
          v[c] = F.add(v[c], F.mul(coeff[j], fs.basis.at(j, c)));
      if (bob_modrep(set, y, i, v)) ++good;
    }
    acc = acc + Rational(w, G.n) * Rational(good, total);
  }
  return acc;
}

}  // namespace

TEST_CASE("regular representation basics") {
  GroupPtr s3 = build_group("S3");
  FqField F = FqField::make(5, 1);
  for (int g = 0; g < s3->n; ++g) {
    FqMatrix P = regular_rep_matrix(*s3, F, g);
    long long tr = 0;
    for (int i = 0; i < s3->n; ++i) tr += static_cast<long long>(P.at(i, i));
    CHECK(tr == (g == 0 ? s3->n : 0));
  }
  // fixed space of the whole group inside the regular module is the
  // all-ones line
  FqMatrix stack(static_cast<int>(s3->generators.size()) * s3->n, s3->n);
  int row = 0;
  for (int gi : s3->generators) {
    FqMatrix P = regular_rep_matrix(*s3, F, gi);
    for (int i = 0; i < s3->n; ++i, ++row)
      for (int j = 0; j < s3->n; ++j) stack.at(row, j) = F.sub(P.at(i, j), i == j ? 1 : 0);
  }
  FqMatrix K = fq_kernel(F, stack);
  CHECK(K.rows == 1);
}

TEST_CASE("decomposition dimension patterns") {
  GroupPtr s3 = build_group("S3");
  // F_25 splits S3
  ModularIrrepSet s25 = decompose_regular(*s3, FqField::make(5, 2));
  CHECK(dims_of(s25) == std::multiset<int>{1, 1, 2});
  CHECK(s25.multiplicity == std::vector<int>{1, 1, 2});
  CHECK(s25.splitting);

  // F_5 also splits S3 (rational representations)
  ModularIrrepSet s5 = decompose_regular(*s3, FqField::make(5, 1));
  CHECK(dims_of(s5) == std::multiset<int>{1, 1, 2});
  CHECK(s5.splitting);

  // F_2[Z3] = F_2 + F_4: one linear, one 2-dimensional, multiplicity 1
  GroupPtr z3 = build_group("C3");
  ModularIrrepSet z3f2 = decompose_regular(*z3, FqField::make(2, 1));
  CHECK(dims_of(z3f2) == std::multiset<int>{1, 2});
  CHECK(z3f2.multiplicity == std::vector<int>{1, 1});
  CHECK(!z3f2.splitting);

  // abelian over a splitting field: all linear
  GroupPtr z24 = build_group("Z2^4");
  ModularIrrepSet a = decompose_regular(*z24, FqField::make(5, 1));
  CHECK(a.num_irreps() == 16);
  for (const auto& r : a.irreps) CHECK(r.dim == 1);
  CHECK(a.splitting);

  // S4 over F_49
  GroupPtr s4 = build_group("S4");
  ModularIrrepSet s4f = decompose_regular(*s4, FqField::make(7, 2));
  CHECK(dims_of(s4f) == std::multiset<int>{1, 1, 2, 3, 3});
  CHECK(s4f.splitting);
}

TEST_CASE("homomorphism spot checks pass exactly") {
  GroupPtr q8 = build_group("Q8");
  ModularIrrepSet set = decompose_regular(*q8, FqField::make(5, 1));
  Rng rng(404);
  for (const auto& rho : set.irreps)
    for (int t = 0; t < 100; ++t) {
      const int g = static_cast<int>(rng.below(q8->n));
      const int h = static_cast<int>(rng.below(q8->n));
      CHECK(fq_mul(set.field, rho.at(g), rho.at(h)) == rho.at(q8->op(g, h)));
    }
}

TEST_CASE("fixed spaces") {
  GroupPtr s3 = build_group("S3");
  ModularIrrepSet set = decompose_regular(*s3, FqField::make(5, 2));
  Subgroup whole = subgroup_from_elements(*s3, {0, 1, 2, 3, 4, 5});
  Subgroup h12 = subgroup_generate(*s3, {s3->element_by_name("(12)")});
  for (const auto& rho : set.irreps) {
    // trivial irrep: everything fixed; nontrivial: no G-invariants
    FixedSpace fw = fixed_space(set.field, rho, whole);
    const bool trivial = rho.dim == 1 && fw.dim == 1;
    if (rho.dim == 1)
      CHECK(fw.dim == (trivial ? 1 : 0));
    else
      CHECK(fw.dim == 0);
    if (rho.dim == 2) CHECK(fixed_space(set.field, rho, h12).dim == 1);
  }
}

TEST_CASE("invariant-dimension identity") {
  GroupPtr s3 = build_group("S3");
  ModularIrrepSet set = decompose_regular(*s3, FqField::make(5, 2));
  Subgroup whole = subgroup_from_elements(*s3, {0, 1, 2, 3, 4, 5});
  CHECK(verify_eq1(set, whole).sum == 1);
  Subgroup triv = subgroup_generate(*s3, {});
  CHECK(verify_eq1(set, triv).sum == 6);
  Subgroup h12 = subgroup_generate(*s3, {s3->element_by_name("(12)")});
  Eq1Report rep = verify_eq1(set, h12);
  CHECK(rep.sum == 3);  // 1*1 + 1*0 + 2*1

  // every subgroup of the test groups over two primes
  for (const char* spec : {"S3", "D8", "Q8", "Z2^4"}) {
    GroupPtr g = build_group(spec);
    for (std::uint32_t p : {5u, 7u}) {
      ModularIrrepSet s = decompose_regular(*g, choose_splitting_field(*g, p));
      for (const Subgroup& H : enumerate_subgroups(*g)) CHECK(verify_eq1(s, H).sum == H.index());
    }
  }
}

TEST_CASE("alice samples irreps with the exact weights") {
  GroupPtr s3 = build_group("S3");
  ModularIrrepSet set = decompose_regular(*s3, FqField::make(5, 2));
  Subgroup h12 = subgroup_generate(*s3, {s3->element_by_name("(12)")});
  ModRepContext ctx = make_modrep_context(set, h12);

  // weights over (trivial, sign, 2-dim) are (1/3, 0, 2/3)
  std::map<int, long long> w;
  for (size_t i = 0; i < ctx.weighted_irreps.size(); ++i)
    w[ctx.weighted_irreps[i]] = ctx.cumw[i] - (i ? ctx.cumw[i - 1] : 0);
  std::multiset<long long> weights;
  for (auto& [irrep, wt] : w) weights.insert(wt);
  CHECK(weights == std::multiset<long long>{2, 4});  // out of 6

  // H = G: only the trivial irrep
  Subgroup whole = subgroup_from_elements(*s3, {0, 1, 2, 3, 4, 5});
  ModRepContext cg = make_modrep_context(set, whole);
  CHECK(cg.weighted_irreps.size() == 1);
  CHECK(set.irreps[cg.weighted_irreps[0]].dim == 1);

  // H trivial: Plancherel weights d^2/|G|
  Subgroup triv = subgroup_generate(*s3, {});
  ModRepContext ct = make_modrep_context(set, triv);
  for (size_t i = 0; i < ct.weighted_irreps.size(); ++i) {
    const long long wt = ct.cumw[i] - (i ? ct.cumw[i - 1] : 0);
    const int d = set.irreps[ct.weighted_irreps[i]].dim;
    CHECK(wt == static_cast<long long>(d) * d);
  }
}

TEST_CASE("bob's test and the zero vector") {
  GroupPtr s3 = build_group("S3");
  ModularIrrepSet set = decompose_regular(*s3, FqField::make(5, 2));
  const int y13 = s3->element_by_name("(13)");
  for (int i = 0; i < set.num_irreps(); ++i) {
    const FqVec zero(set.irreps[i].dim, 0);
    CHECK(bob_modrep(set, y13, i, zero) == 1);   // zero always accepted
    CHECK(bob_modrep(set, 0, i, zero) == 1);
  }
  // nonzero fixed vector of <(12)> in the 2-dim irrep is moved by (13)
  Subgroup h12 = subgroup_generate(*s3, {s3->element_by_name("(12)")});
  for (int i = 0; i < set.num_irreps(); ++i) {
    if (set.irreps[i].dim != 2) continue;
    FixedSpace fs = fixed_space(set.field, set.irreps[i], h12);
    REQUIRE(fs.dim == 1);
    FqVec v(2);
    for (int j = 0; j < 2; ++j) v[j] = fs.basis.at(0, j);
    CHECK(bob_modrep(set, y13, i, v) == 0);
    CHECK(bob_modrep(set, s3->element_by_name("(12)"), i, v) == 1);
  }
}

TEST_CASE("exact acceptance oracle") {
  GroupPtr s3 = build_group("S3");
  Subgroup h12 = subgroup_generate(*s3, {s3->element_by_name("(12)")});
  const int y13 = s3->element_by_name("(13)");

  ModularIrrepSet s5 = decompose_regular(*s3, FqField::make(5, 1));
  CHECK(modrep_exact_accept(s5, h12, y13) == Rational(7, 15));
  ModularIrrepSet s25 = decompose_regular(*s3, FqField::make(5, 2));
  CHECK(modrep_exact_accept(s25, h12, y13) == Rational(9, 25));
  CHECK(modrep_exact_accept(s25, h12, s3->element_by_name("(12)")) == Rational(1));

  // Z2^2 with trivial H: (2 + 2/q) / 4
  GroupPtr z22 = build_group("Z2^2");
  for (std::uint32_t p : {3u, 5u}) {
    ModularIrrepSet set = decompose_regular(*z22, FqField::make(p, 1));
    Subgroup triv = subgroup_generate(*z22, {});
    const Rational expect = Rational(2, 4) + Rational(2, 4) * Rational(1, p);
    CHECK(modrep_exact_accept(set, triv, 1) == expect);
    CHECK(accept_by_enumeration(set, triv, 1) == expect);
  }

  // enumeration oracle agrees on the S3 cases
  CHECK(accept_by_enumeration(s5, h12, y13) == Rational(7, 15));
}

TEST_CASE("empirical acceptance matches the oracle") {
  GroupPtr s3 = build_group("S3");
  ModularIrrepSet set = decompose_regular(*s3, FqField::make(5, 2));
  Subgroup h12 = subgroup_generate(*s3, {s3->element_by_name("(12)")});
  ModRepContext ctx = make_modrep_context(set, h12);
  const int y13 = s3->element_by_name("(13)");
  const int T = 20000;
  Rng rng = Rng::stream(99, 1);
  long long acc = 0;
  for (int t = 0; t < T; ++t) {
    ModRepMessage m = alice_modrep(ctx, rng);
    CHECK(m.bits <= ctx.bound_bits);
    acc += bob_modrep(set, y13, m.irrep, m.v);
  }
  const double p = 9.0 / 25.0;
  const double sigma = std::sqrt(p * (1 - p) / T);
  CHECK(std::abs(static_cast<double>(acc) / T - p) <= 4 * sigma);
}

TEST_CASE("perfect completeness over spanning sets") {
  for (const char* spec : {"S3", "D8", "Q8"}) {
    GroupPtr g = build_group(spec);
    ModularIrrepSet set = decompose_regular(*g, choose_splitting_field(*g, 5));
    for (const Subgroup& H : enumerate_subgroups(*g)) {
      for (int i = 0; i < set.num_irreps(); ++i) {
        FixedSpace fs = fixed_space(set.field, set.irreps[i], H);
        for (int r = 0; r < fs.dim; ++r) {
          FqVec b(set.irreps[i].dim);
          for (int j = 0; j < set.irreps[i].dim; ++j) b[j] = fs.basis.at(r, j);
          for (int y : H.elements) CHECK(bob_modrep(set, y, i, b) == 1);
        }
      }
    }
  }
}

TEST_CASE("soundness stays below 1/2 + 1/q") {
  GroupPtr d8 = build_group("D8");
  ModularIrrepSet set = decompose_regular(*d8, choose_splitting_field(*d8, 5));
  for (const Subgroup& H : enumerate_subgroups(*d8))
    for (int y = 0; y < d8->n; ++y) {
      if (H.contains(y)) continue;
      const Rational acc = modrep_exact_accept(set, H, y);
      const Rational bound = Rational(1, 2) + Rational(1, static_cast<long long>(set.field.q));
      CHECK(acc <= bound);
    }
}

TEST_CASE("modular dimension bound") {
  GroupPtr z3 = build_group("C3");
  CharacterTable t3 = character_table(*z3);
  DmaxReport r = dmax_modular(*z3, 2, t3);
  CHECK(r.dmax_p == 2);
  CHECK(r.ord == 2);
  CHECK(r.dmax_0 == 1);

  GroupPtr s3 = build_group("S3");
  CharacterTable ts3 = character_table(*s3);
  DmaxReport r2 = dmax_modular(*s3, 5, ts3);
  CHECK(r2.dmax_p == 2);
  CHECK(r2.bound == 4);  // 2 * ord_6(5) = 2*2

  GroupPtr z24 = build_group("Z2^4");
  CharacterTable tz = character_table(*z24);
  for (std::uint32_t p : {3u, 5u, 7u}) {
    DmaxReport ra = dmax_modular(*z24, p, tz);
    CHECK(ra.dmax_p == 1);
  }
}

TEST_CASE("message bit accounting") {
  GroupPtr s3 = build_group("S3");
  // F_5: one coordinate of the trivial irrep costs 3 bits
  ModularIrrepSet s5 = decompose_regular(*s3, FqField::make(5, 1));
  for (int i = 0; i < s5.num_irreps(); ++i) {
    ModRepBits b = modrep_message_bits(s5, i);
    CHECK(b.header == 2);  // 3 irreps
    if (s5.irreps[i].dim == 1) CHECK(b.payload == 3);
  }
  // F_25 packed coordinates: 5 bits each; 2-dim payload 10, total 12 <= 13
  ModularIrrepSet s25 = decompose_regular(*s3, FqField::make(5, 2));
  for (int i = 0; i < s25.num_irreps(); ++i) {
    ModRepBits b = modrep_message_bits(s25, i);
    CHECK(b.paper_bound == 13);  // ceil(log2 6) + 2*5
    if (s25.irreps[i].dim == 2) {
      CHECK(b.payload == 10);
      CHECK(b.total == 12);
      CHECK(b.digit_payload == 12);  // 2 * 2 * 3
      CHECK(b.total <= b.paper_bound);
    }
  }
}

TEST_CASE("protocol rejects non-splitting decompositions") {
  GroupPtr z3 = build_group("C3");
  ModularIrrepSet set = decompose_regular(*z3, FqField::make(2, 1));  // not splitting
  Subgroup triv = subgroup_generate(*z3, {});
  CHECK_THROWS_AS((void)make_modrep_context(set, triv), std::invalid_argument);
  // but the identity check still works there (multiplicity form)
  CHECK(verify_eq1(set, triv).sum == 3);
}
