#pragma once

#include <vector>

#include "memb/character.hpp"
#include "memb/fq_linalg.hpp"
#include "memb/rational.hpp"
#include "memb/rng.hpp"

namespace memb {

// Irreducible F_q-representation as explicit matrices for every group
// element (filled from the generator matrices along the word table).
struct ModularIrrep {
  int dim = 0;
  int index = 0;
  std::vector<FqMatrix> mats;  // one per element
  const FqMatrix& at(int g) const { return mats[g]; }
};

// Decomposition of the regular module F_q[G] into irreducibles with
// multiplicities. `splitting` records whether every multiplicity equals
// the dimension (the Wedderburn pattern over a splitting field).
struct ModularIrrepSet {
  const FiniteGroup* group = nullptr;
  FqField field;
  std::vector<ModularIrrep> irreps;  // sorted by (dim, trace fingerprint)
  std::vector<int> multiplicity;
  bool splitting = false;

  int num_irreps() const { return static_cast<int>(irreps.size()); }
  int dmax() const;
};

// Permutation matrix of left translation by g on F_q[G].
FqMatrix regular_rep_matrix(const FiniteGroup& G, const FqField& F, int g);

// Splits the regular module by the random-algebra-element kernel method
// (minimal polynomial factors, kernel-vector spinning, dual-kernel
// irreducibility certificate) and groups constituents into isomorphism
// classes. Throws if certification fails within the iteration budget.
ModularIrrepSet decompose_regular(const FiniteGroup& G, const FqField& F,
                                  std::uint64_t seed = 0x5eedULL);

struct FixedSpace {
  int irrep = 0;
  FqMatrix basis;  // rows: reduced echelon basis of I_H(rho)
  int dim = 0;
};

FixedSpace fixed_space(const FqField& F, const ModularIrrep& rho, const Subgroup& H);

struct Eq1Row {
  int irrep;
  int dim;
  int mult;
  int fixed_dim;
};

struct Eq1Report {
  std::vector<Eq1Row> rows;
  long long sum = 0;    // sum of mult * dim I_H
  long long index = 0;  // [G:H]
};

// Checks sum_rho mult(rho) * dim I_H(rho) = [G:H] exactly; throws on
// violation.
Eq1Report verify_eq1(const ModularIrrepSet& set, const Subgroup& H);

// Protocol context bound to (decomposition, H). Requires the Wedderburn
// splitting pattern so the sampling weights |H| d dim I_H / |G| form an
// exact distribution.
struct ModRepContext {
  const ModularIrrepSet* set = nullptr;
  Subgroup H;
  std::vector<FixedSpace> fixed;     // per irrep
  std::vector<long long> cumw;       // cumulative weights over positive-weight irreps
  std::vector<int> weighted_irreps;  // parallel to cumw
  int header_bits = 0;
  int coord_bits = 0;                // ceil(log2 q), packed coordinate width
  long long bound_bits = 0;          // ceil(log2 |G|) + dmax * coord_bits
};

ModRepContext make_modrep_context(const ModularIrrepSet& set, const Subgroup& H);

struct ModRepMessage {
  int irrep = 0;
  FqVec v;  // ambient V_rho coordinates
  long long bits = 0;
};

// Samples rho with probability |H| d_rho dim I_H(rho) / |G| (exact integer
// thresholds) and v uniformly over all q^dim vectors of I_H(rho),
// including zero.
ModRepMessage alice_modrep(const ModRepContext& ctx, Rng& rng);

// Exact field-arithmetic test rho(y) v = v.
int bob_modrep(const ModularIrrepSet& set, int y, int irrep, const FqVec& v);

// Exact acceptance probability: sum_rho Pr[rho] q^(dim I_K - dim I_H) with
// K = <H, y>; equals 1 when y is in H.
Rational modrep_exact_accept(const ModularIrrepSet& set, const Subgroup& H, int y);

struct DmaxReport {
  int dmax_p = 0;  // over the prime field F_p
  int dmax_0 = 0;  // complex degrees
  int ord = 0;     // ord_m(p), m the exponent
  long long bound = 0;
};

// Largest irreducible dimension over F_p, checked against the bound
// dmax_p <= dmax_0 * ord_m(p). Throws on violation (a decomposition bug).
DmaxReport dmax_modular(const FiniteGroup& G, std::uint32_t p, const CharacterTable& table);

struct ModRepBits {
  int header = 0;
  int payload = 0;        // d * ceil(log2 q), the wire layout
  int total = 0;
  int digit_payload = 0;  // d * k * ceil(log2 p), reported for comparison
  long long paper_bound = 0;
};

ModRepBits modrep_message_bits(const ModularIrrepSet& set, int irrep);

}  // namespace memb
