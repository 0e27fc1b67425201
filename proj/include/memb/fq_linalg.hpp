#pragma once

#include <vector>

#include "memb/fq.hpp"

namespace memb {

using FqVec = std::vector<FqField::Elem>;

// Dense matrix over F_q, row-major. Kept deliberately small: the protocol
// stack needs products, reduced echelon form, kernels, and inverses.
struct FqMatrix {
  int rows = 0, cols = 0;
  std::vector<FqField::Elem> a;

  FqMatrix() = default;
  FqMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}

  FqField::Elem& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  FqField::Elem at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

  static FqMatrix identity(int n) {
    FqMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  bool operator==(const FqMatrix& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
  }
};

FqMatrix fq_mul(const FqField& F, const FqMatrix& A, const FqMatrix& B);
FqMatrix fq_add(const FqField& F, const FqMatrix& A, const FqMatrix& B);
FqMatrix fq_sub(const FqField& F, const FqMatrix& A, const FqMatrix& B);
FqMatrix fq_transpose(const FqMatrix& A);
FqVec fq_matvec(const FqField& F, const FqMatrix& A, const FqVec& v);

// In-place reduced row echelon form; returns the rank and, optionally, the
// pivot column per row.
int fq_rref(const FqField& F, FqMatrix& A, std::vector<int>* pivots = nullptr);

int fq_rank(const FqField& F, FqMatrix A);

// Right kernel {v : Av = 0} as a matrix whose rows form a reduced-echelon
// basis (canonical across runs).
FqMatrix fq_kernel(const FqField& F, const FqMatrix& A);

FqMatrix fq_inverse(const FqField& F, const FqMatrix& A);  // throws if singular

// Row space membership helper used by the spinning routines: a reduced
// echelon basis that supports incremental insertion.
struct FqEchelon {
  const FqField* F = nullptr;
  int cols = 0;
  std::vector<FqVec> rows;   // reduced, sorted by pivot
  std::vector<int> pivots;

  FqEchelon(const FqField& field, int c) : F(&field), cols(c) {}
  int rank() const { return static_cast<int>(rows.size()); }
  void reduce(FqVec& v) const;       // subtract projections onto basis rows
  bool insert(FqVec v);              // false if v was already in the span
  bool contains(FqVec v) const;
  FqMatrix basis() const;            // rows as a matrix
};

}  // namespace memb
