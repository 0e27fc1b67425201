#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "memb/common.hpp"

namespace memb {

// Commuting cyclic factors: every element of the (sub)group is a unique
// product gens[0]^e0 * ... * gens[r-1]^e_{r-1} with 0 <= e_i < orders[i].
struct AbelianFactors {
  std::vector<int> gens;
  std::vector<int> orders;
};

struct FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

// Finite group as an explicit multiplication table. Element 0 is the
// identity. Immutable after construction; safe to share across threads.
struct FiniteGroup {
  int n = 1;
  Eigen::MatrixXi mul;           // mul(a, b) = a * b
  std::vector<int> inv;
  std::string label;
  std::vector<std::string> element_names;
  std::vector<int> generators;   // canonical small generating set

  // Structure hints consumed by the complex-irrep builders. Absent hints
  // route the group to the generic numerical construction.
  std::optional<AbelianFactors> abelian;
  struct Index2 {
    std::vector<int> sub_elements;  // abelian subgroup of index 2 (sorted)
    AbelianFactors sub;
    int coset_rep;                  // t with G = A + tA
  };
  std::optional<Index2> index2;
  struct Product {
    GroupPtr left, right;           // element index = a * right->n + b
  };
  std::optional<Product> product;
  std::optional<int> symmetric_n;

  // Factorization over `generators`: for g != 0 in BFS order,
  // g = generators[word_gen[g]] * word_prev[g].
  std::vector<int> word_gen, word_prev;
  std::vector<int> bfs_order;

  int op(int a, int b) const { return mul(a, b); }
  int inverse(int a) const { return inv[a]; }
  int order() const { return n; }
  int conjugate(int g, int x) const { return op(op(g, x), inv[g]); }  // g x g^-1
  int power(int g, long long e) const;
  int element_order(int g) const;
  std::uint64_t hash() const;

  // Accepts an element name or a decimal index.
  int element_by_name(const std::string& name) const;

  // Latin-square, inverse, and associativity checks (exhaustive for
  // n <= 256, sampled above). Throws on violation.
  void validate() const;

  void build_word_table();  // fills word_gen/word_prev/bfs_order
};

// Group family specification. Orders are capped at kMaxGroupOrder.
struct GroupSpec {
  enum class Family {
    cyclic,              // a = n
    elementary_abelian,  // a = p (prime), b = r
    dihedral,            // a = rotation count; group order 2a
    symmetric,           // a = n
    quaternion8,
    direct_product,      // children[0] x children[1]
    semidirect_reversal  // a = n; Z2 acting on Z2^n by coordinate reversal
  };
  Family family = Family::cyclic;
  int a = 1, b = 0;
  std::vector<GroupSpec> children;

  long long order() const;
  std::string label() const;

  // CLI syntax: S3, Z2^4, D8 (order 8), Q8, C6, Z2xZ2^5, prod(C2,C3).
  static GroupSpec parse(const std::string& text);
};

GroupPtr build_group(const GroupSpec& spec, long long max_order = kMaxGroupOrder);
GroupPtr build_group(const std::string& spec_text, long long max_order = kMaxGroupOrder);

// Subgroup as a sorted element list inside a parent group.
struct Subgroup {
  const FiniteGroup* parent = nullptr;
  std::vector<int> elements;   // sorted, contains 0
  std::vector<int> generators;

  int order() const { return static_cast<int>(elements.size()); }
  long long index() const { return parent->n / order(); }
  bool contains(int g) const;
};

Subgroup subgroup_generate(const FiniteGroup& G, const std::vector<int>& gens);

// Builds a Subgroup from a full element list (must be closed); generators
// are derived greedily.
Subgroup subgroup_from_elements(const FiniteGroup& G, std::vector<int> elements);

bool is_normal(const FiniteGroup& G, const Subgroup& H);

// Smallest normal subgroup of G containing H.
Subgroup normal_closure(const FiniteGroup& G, const Subgroup& H);

// Every subgroup exactly once, sorted by (order, elements). Throws
// enumeration_bound_error if |G| > bound.
std::vector<Subgroup> enumerate_subgroups(const FiniteGroup& G, int bound = kEnumerationBound);

// Conjugacy classes sorted by smallest member; the identity class is first.
std::vector<std::vector<int>> conjugacy_classes(const FiniteGroup& G);

// Least m with g^m = 1 for all g.
int exponent(const FiniteGroup& G);

struct GammaResult {
  int size = 0;
  std::vector<int> witness;
  bool exact = true;  // false above the exact-search limit (greedy bound)
};

// Maximum independent subset: no member lies in the subgroup generated by
// the others. Exact DFS up to exact_limit, greedy witness above.
GammaResult independent_subset_gamma(const FiniteGroup& G, int exact_limit = kGammaExactLimit);

struct CosetDecomposition {
  long long index = 1;
  std::vector<std::vector<int>> cosets;  // left cosets gH, each sorted
};

CosetDecomposition coset_index(const FiniteGroup& G, const Subgroup& H);

// Reindexes a subgroup as a standalone group (identity first). Structure
// hints are not carried over.
GroupPtr as_group(const Subgroup& H);

}  // namespace memb
