#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "memb/group.hpp"

namespace memb {

// F_q with q = p^k. Elements are uint64 values in [0, q) whose base-p
// digits are the coefficients of the residue polynomial (digit i is the
// coefficient of x^i). The modulus is the lexicographically least monic
// irreducible of degree k, so fields are identical across runs.
struct FqField {
  std::uint32_t p = 2;
  int k = 1;
  std::uint64_t q = 2;
  std::vector<std::uint32_t> modulus;  // k+1 coefficients over F_p, monic

  using Elem = std::uint64_t;

  static constexpr int kMaxDegree = 31;

  static FqField make(std::uint32_t p, int k);

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;  // throws on zero
  Elem pow(Elem a, std::uint64_t e) const;
  Elem from_int(std::uint64_t v) const { return v % p; }  // prime-subfield embedding

 private:
  // x^(k+i) mod modulus for i in [0, k-1], as k digits each.
  std::vector<std::vector<std::uint32_t>> red_;
  void build_reduction();
  friend FqField make_raw_field(std::uint32_t, int, std::vector<std::uint32_t>);
};

// k = ord_m(p) with m = exponent(G); guarantees multiplicity = dimension
// in the regular-module decomposition. Requires p prime, p not dividing
// |G|.
FqField choose_splitting_field(const FiniteGroup& G, std::uint32_t p);

// Multiplicative order of p modulo m (requires gcd(p, m) = 1).
int multiplicative_order(std::uint64_t p, std::uint64_t m);

bool prime_check(std::uint64_t p);

// --- univariate polynomials over F_q, low-degree-first coefficients ---

using FqPoly = std::vector<FqField::Elem>;

namespace fqpoly {

FqPoly trim(FqPoly f);
int degree(const FqPoly& f);  // -1 for the zero polynomial
FqPoly add(const FqField& F, const FqPoly& a, const FqPoly& b);
FqPoly sub(const FqField& F, const FqPoly& a, const FqPoly& b);
FqPoly mul(const FqField& F, const FqPoly& a, const FqPoly& b);
FqPoly scale(const FqField& F, const FqPoly& a, FqField::Elem c);
// quotient and remainder by a nonzero divisor
std::pair<FqPoly, FqPoly> divmod(const FqField& F, const FqPoly& a, const FqPoly& b);
FqPoly mod(const FqField& F, const FqPoly& a, const FqPoly& b);
FqPoly monic(const FqField& F, const FqPoly& a);
FqPoly gcd(const FqField& F, FqPoly a, FqPoly b);
FqPoly powmod(const FqField& F, FqPoly base, std::uint64_t e, const FqPoly& m);
FqPoly derivative(const FqField& F, const FqPoly& a);

// Complete factorization into monic irreducibles with multiplicities
// (squarefree + distinct-degree + Cantor-Zassenhaus splitting).
std::vector<std::pair<FqPoly, int>> factor(const FqField& F, const FqPoly& f,
                                           std::uint64_t seed = 0x9a75);

bool is_irreducible(const FqField& F, const FqPoly& f);

}  // namespace fqpoly

}  // namespace memb
