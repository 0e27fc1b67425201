#include "memb/fq_linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace memb {

FqMatrix fq_mul(const FqField& F, const FqMatrix& A, const FqMatrix& B) {
  if (A.cols != B.rows) throw std::invalid_argument("fq_mul shape mismatch");
  FqMatrix C(A.rows, B.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int l = 0; l < A.cols; ++l) {
      const FqField::Elem x = A.at(i, l);
      if (!x) continue;
      for (int j = 0; j < B.cols; ++j) {
        const FqField::Elem y = B.at(l, j);
        if (y) C.at(i, j) = F.add(C.at(i, j), F.mul(x, y));
      }
    }
  return C;
}

FqMatrix fq_add(const FqField& F, const FqMatrix& A, const FqMatrix& B) {
  FqMatrix C(A.rows, A.cols);
  for (size_t i = 0; i < C.a.size(); ++i) C.a[i] = F.add(A.a[i], B.a[i]);
  return C;
}

FqMatrix fq_sub(const FqField& F, const FqMatrix& A, const FqMatrix& B) {
  FqMatrix C(A.rows, A.cols);
  for (size_t i = 0; i < C.a.size(); ++i) C.a[i] = F.sub(A.a[i], B.a[i]);
  return C;
}

FqMatrix fq_transpose(const FqMatrix& A) {
  FqMatrix T(A.cols, A.rows);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) T.at(j, i) = A.at(i, j);
  return T;
}

FqVec fq_matvec(const FqField& F, const FqMatrix& A, const FqVec& v) {
  if (static_cast<int>(v.size()) != A.cols) throw std::invalid_argument("fq_matvec shape mismatch");
  FqVec r(A.rows, 0);
  for (int i = 0; i < A.rows; ++i) {
    FqField::Elem s = 0;
    for (int j = 0; j < A.cols; ++j) {
      const FqField::Elem x = A.at(i, j);
      if (x && v[j]) s = F.add(s, F.mul(x, v[j]));
    }
    r[i] = s;
  }
  return r;
}

int fq_rref(const FqField& F, FqMatrix& A, std::vector<int>* pivots) {
  int rank = 0;
  if (pivots) pivots->clear();
  for (int col = 0; col < A.cols && rank < A.rows; ++col) {
    int pr = -1;
    for (int r = rank; r < A.rows; ++r)
      if (A.at(r, col)) {
        pr = r;
        break;
      }
    if (pr < 0) continue;
    if (pr != rank)
      for (int j = 0; j < A.cols; ++j) std::swap(A.at(pr, j), A.at(rank, j));
    const FqField::Elem piv_inv = F.inv(A.at(rank, col));
    for (int j = col; j < A.cols; ++j) A.at(rank, j) = F.mul(A.at(rank, j), piv_inv);
    for (int r = 0; r < A.rows; ++r) {
      if (r == rank) continue;
      const FqField::Elem c = A.at(r, col);
      if (!c) continue;
      for (int j = col; j < A.cols; ++j)
        A.at(r, j) = F.sub(A.at(r, j), F.mul(c, A.at(rank, j)));
    }
    if (pivots) pivots->push_back(col);
    ++rank;
  }
  return rank;
}

int fq_rank(const FqField& F, FqMatrix A) { return fq_rref(F, A); }

FqMatrix fq_kernel(const FqField& F, const FqMatrix& A) {
  FqMatrix R = A;
  std::vector<int> pivots;
  const int rank = fq_rref(F, R, &pivots);
  std::vector<bool> is_pivot(A.cols, false);
  for (int c : pivots) is_pivot[c] = true;
  FqMatrix K(A.cols - rank, A.cols);
  int out = 0;
  for (int free = 0; free < A.cols; ++free) {
    if (is_pivot[free]) continue;
    K.at(out, free) = 1;
    for (int r = 0; r < rank; ++r) K.at(out, pivots[r]) = F.neg(R.at(r, free));
    ++out;
  }
  fq_rref(F, K);  // canonical form
  return K;
}

FqMatrix fq_inverse(const FqField& F, const FqMatrix& A) {
  if (A.rows != A.cols) throw std::invalid_argument("fq_inverse needs a square matrix");
  const int n = A.rows;
  FqMatrix aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = A.at(i, j);
    aug.at(i, n + i) = 1;
  }
  if (fq_rref(F, aug) != n) throw std::domain_error("matrix not invertible");
  FqMatrix inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
  return inv;
}

void FqEchelon::reduce(FqVec& v) const {
  for (size_t r = 0; r < rows.size(); ++r) {
    const FqField::Elem c = v[pivots[r]];
    if (!c) continue;
    for (int j = 0; j < cols; ++j)
      if (rows[r][j]) v[j] = F->sub(v[j], F->mul(c, rows[r][j]));
  }
}

bool FqEchelon::insert(FqVec v) {
  reduce(v);
  int piv = -1;
  for (int j = 0; j < cols; ++j)
    if (v[j]) {
      piv = j;
      break;
    }
  if (piv < 0) return false;
  const FqField::Elem s = F->inv(v[piv]);
  for (int j = 0; j < cols; ++j) v[j] = F->mul(v[j], s);
  // back-eliminate the new pivot from existing rows
  for (size_t r = 0; r < rows.size(); ++r) {
    const FqField::Elem c = rows[r][piv];
    if (!c) continue;
    for (int j = 0; j < cols; ++j)
      if (v[j]) rows[r][j] = F->sub(rows[r][j], F->mul(c, v[j]));
  }
  // keep rows ordered by pivot
  size_t pos = 0;
  while (pos < pivots.size() && pivots[pos] < piv) ++pos;
  rows.insert(rows.begin() + pos, std::move(v));
  pivots.insert(pivots.begin() + pos, piv);
  return true;
}

bool FqEchelon::contains(FqVec v) const {
  reduce(v);
  for (FqField::Elem x : v)
    if (x) return false;
  return true;
}

FqMatrix FqEchelon::basis() const {
  FqMatrix B(rank(), cols);
  for (int r = 0; r < rank(); ++r)
    for (int j = 0; j < cols; ++j) B.at(r, j) = rows[r][j];
  return B;
}

}  // namespace memb
