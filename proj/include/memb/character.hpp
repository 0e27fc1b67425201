#pragma once

#include <Eigen/Core>

#include <complex>
#include <vector>

#include "memb/group.hpp"

namespace memb {

// Complex character table. Rows are irreducible characters, columns are
// conjugacy classes (classes sorted by smallest member, identity first).
// Characters are sorted by (degree, lexicographic values) so indices are
// stable across runs.
struct CharacterTable {
  const FiniteGroup* group = nullptr;
  std::vector<std::vector<int>> classes;
  std::vector<int> class_of;   // element -> class index
  std::vector<int> class_rep;  // smallest member per class
  Eigen::MatrixXcd chars;      // chars(i, c) = chi_i on class c
  std::vector<int> degrees;    // chi_i(1), certified integers
  std::vector<bool> integral;  // true when every value of chi_i is a rational integer
  double ortho_residual = 0.0;

  int num_chars() const { return static_cast<int>(degrees.size()); }
  std::complex<double> value(int chi, int g) const { return chars(chi, class_of[g]); }
};

// Class-algebra eigenvector construction with a-posteriori certification
// (degree sum, row orthogonality). Throws on certification failure rather
// than returning an inconsistent table.
CharacterTable character_table(const FiniteGroup& G);

// ker(chi) = {g : chi(g) = chi(1)}; always normal.
Subgroup char_kernel(const CharacterTable& table, int chi);

// Indices of characters whose kernel contains the normal subgroup N,
// verified against sum(chi(1)^2) = [G:N]. Throws if N is not normal.
std::vector<int> lambda_H(const CharacterTable& table, const Subgroup& N);

}  // namespace memb
