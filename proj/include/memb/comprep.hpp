#pragma once

#include <Eigen/Core>

#include <complex>
#include <vector>

#include "memb/character.hpp"
#include "memb/rng.hpp"

namespace memb {

// Unitary complex irreducible with explicit matrices for every element.
// The index equals the row of the matching character in the canonical
// table ordering.
struct UnitaryIrrep {
  int dim = 0;
  int index = 0;
  std::vector<Eigen::MatrixXcd> mats;
  const Eigen::MatrixXcd& at(int g) const { return mats[g]; }
};

struct UnitaryIrrepSet {
  const FiniteGroup* group = nullptr;
  std::vector<UnitaryIrrep> irreps;  // sorted by character-table row
  double cert_residual = 0.0;        // worst unitarity/homomorphism residual

  int num_irreps() const { return static_cast<int>(irreps.size()); }
  int dmax() const;
};

// Construction routes: tensor products for direct products, explicit
// characters for abelian groups, induction from an index-2 abelian
// subgroup, Young's orthogonal form for symmetric groups, and a numerical
// split of the regular representation as the generic fallback. Every
// route is certified (unitarity, homomorphism samples, trace match
// against the character table) before the set is returned.
UnitaryIrrepSet complex_irreps(const FiniteGroup& G, const CharacterTable& table);

// Orthonormal basis (columns) of the H-fixed subspace, from the averaging
// projector P_H = (1/|H|) sum_h rho(h). Throws if P_H fails the
// idempotence or integer-trace certification.
Eigen::MatrixXcd fixed_space_C(const UnitaryIrrep& rho, const Subgroup& H);

// epsilon_G = min(1/8, 1 / (64 |G|^2 (1 + log2 |G|)^3)).
double epsilon_for_group(int group_order);

// Implicit quantization codec: the 2d real coordinates are rounded to a
// delta-grid with delta = eps / (2 sqrt(2d)). decode reconstructs the grid
// point (so encode after decode reproduces the code exactly); decode_unit
// renormalizes it, landing within eps of any unit vector that encoded to
// the code, so |<n, v>|^2 > 1 - eps^2.
struct EpsilonCodec {
  int dim = 0;
  double epsilon = 0.125;
  double delta = 0;
  int bits_per_coord = 0;
  std::uint64_t levels = 0;

  EpsilonCodec() = default;
  EpsilonCodec(int d, double eps);

  std::vector<std::uint64_t> encode(const Eigen::VectorXcd& v) const;  // 2d codes
  Eigen::VectorXcd decode(const std::vector<std::uint64_t>& code) const;
  Eigen::VectorXcd decode_unit(const std::vector<std::uint64_t>& code) const;
  long long bits() const { return 2LL * dim * bits_per_coord; }
};

struct CompContext {
  const UnitaryIrrepSet* set = nullptr;
  Subgroup H;
  double epsilon = 0.125;
  std::vector<Eigen::MatrixXcd> fixed_bases;  // per irrep, columns
  std::vector<int> fixed_dims;
  std::vector<long long> cumw;
  std::vector<int> weighted_irreps;
  std::vector<EpsilonCodec> codecs;  // per irrep
  int header_bits = 0;
  long long bound_bits = 0;
};

// epsilon <= 0 selects epsilon_for_group.
CompContext make_comp_context(const UnitaryIrrepSet& set, const Subgroup& H, double epsilon = 0);

struct CompMessage {
  int irrep = 0;
  std::vector<std::uint64_t> code;
  Eigen::VectorXcd n;  // decoded unit vector
  long long bits = 0;
};

// Samples rho with probability |H| d dim I_H / |G|, then a Haar-uniform
// unit vector of I_H(rho) via Gaussian coefficients, and encodes it.
CompMessage alice_comprep(const CompContext& ctx, Rng& rng);

// 1 iff |1 - <rho(y) n, n>| <= 2 eps.
int bob_comprep(const UnitaryIrrepSet& set, int y, int irrep, const Eigen::VectorXcd& n,
                double eps);

// Largest eigenvalue of the normalized adjacency matrix of
// Cay(K, yA u Ay^-1) on the orthogonal complement of the all-ones vector.
// A must be symmetric and yA u Ay^-1 must generate K. Asserts the value is
// below 1 - 1e-9 and returns it.
double cayley_second_eigenvalue(const FiniteGroup& K, const std::vector<int>& A, int y);

// Convenience: K = <H, y> rebuilt as a group, A = generators of H with
// inverses and the identity.
double cayley_second_eigenvalue(const FiniteGroup& G, const Subgroup& H, int y);

// gens(H) closed under inversion, with the identity included (so that
// yA u Ay^-1 always generates <H, y>).
std::vector<int> symmetric_generating_set(const FiniteGroup& G, const Subgroup& H);

}  // namespace memb
