#include "memb/character.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

#include "memb/rng.hpp"

namespace memb {

namespace {

// Orders characters by (degree, lexicographic values with re before im),
// quantized so that ties are resolved identically across runs.
struct CharRow {
  int degree;
  std::vector<std::complex<double>> values;
};

long long quant(double x) { return std::llround(x * 1e9); }

bool row_less(const CharRow& a, const CharRow& b) {
  if (a.degree != b.degree) return a.degree < b.degree;
  for (size_t c = 0; c < a.values.size(); ++c) {
    const long long ar = quant(a.values[c].real()), br = quant(b.values[c].real());
    if (ar != br) return ar < br;
    const long long ai = quant(a.values[c].imag()), bi = quant(b.values[c].imag());
    if (ai != bi) return ai < bi;
  }
  return false;
}

}  // namespace

CharacterTable character_table(const FiniteGroup& G) {
  if (G.n > kEnumerationBound)
    throw enumeration_bound_error("character table refused for |G| = " + std::to_string(G.n));

  CharacterTable T;
  T.group = &G;
  T.classes = conjugacy_classes(G);
  const int k = static_cast<int>(T.classes.size());
  T.class_of.assign(G.n, -1);
  for (int c = 0; c < k; ++c) {
    T.class_rep.push_back(T.classes[c].front());
    for (int g : T.classes[c]) T.class_of[g] = c;
  }

  // Integer structure constants: z_i z_j = sum_l a_{ijl} z_l, with
  // a_{ijl} = #{x in C_i : x^{-1} rep_l in C_j}.
  std::vector<Eigen::MatrixXd> A(k, Eigen::MatrixXd::Zero(k, k));
  for (int i = 0; i < k; ++i)
    for (int l = 0; l < k; ++l)
      for (int x : T.classes[i]) {
        const int y = G.op(G.inverse(x), T.class_rep[l]);
        A[i](T.class_of[y], l) += 1.0;
      }

  const double n = static_cast<double>(G.n);
  std::string last_err = "no attempt";
  for (int attempt = 0; attempt < 10; ++attempt) {
    Rng rng(0xC0FFEEULL + 7919ULL * attempt);
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(k, k);
    for (int i = 0; i < k; ++i) M += (1.0 + rng.uniform01()) * A[i];

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M.cast<std::complex<double>>());
    if (es.info() != Eigen::Success) {
      last_err = "eigensolver failed";
      continue;
    }

    std::vector<CharRow> rows;
    bool ok = true;
    for (int c = 0; c < k && ok; ++c) {
      Eigen::VectorXcd w = es.eigenvectors().col(c);
      if (std::abs(w(0)) < 1e-10) {
        ok = false;
        last_err = "degenerate eigenvector";
        break;
      }
      w /= w(0);  // identity class carries omega = 1
      // w_l = |C_l| chi(g_l) / chi(1); recover the degree from the
      // second orthogonality of chi with itself.
      double s = 0;
      for (int l = 0; l < k; ++l) s += std::norm(w(l)) / T.classes[l].size();
      const double deg = std::sqrt(n / s);
      const int d = static_cast<int>(std::llround(deg));
      if (d < 1 || std::abs(deg - d) > tol::int_round) {
        ok = false;
        last_err = "non-integer degree";
        break;
      }
      CharRow row;
      row.degree = d;
      for (int l = 0; l < k; ++l)
        row.values.push_back(w(l) * (static_cast<double>(d) / T.classes[l].size()));
      rows.push_back(std::move(row));
    }
    if (!ok) continue;

    std::sort(rows.begin(), rows.end(), row_less);

    // certification: degree sum and row orthogonality
    long long degsq = 0;
    for (const CharRow& r : rows) degsq += static_cast<long long>(r.degree) * r.degree;
    if (degsq != G.n) {
      last_err = "degree sum mismatch";
      continue;
    }
    double resid = 0;
    for (int i = 0; i < k && resid <= tol::cert; ++i)
      for (int j = 0; j < k; ++j) {
        std::complex<double> ip = 0;
        for (int l = 0; l < k; ++l)
          ip += static_cast<double>(T.classes[l].size()) * rows[i].values[l] *
                std::conj(rows[j].values[l]);
        ip /= n;
        resid = std::max(resid, std::abs(ip - (i == j ? 1.0 : 0.0)));
      }
    if (resid > tol::cert) {
      last_err = "orthogonality residual " + std::to_string(resid);
      continue;
    }

    T.chars.resize(k, k);
    for (int i = 0; i < k; ++i) {
      T.degrees.push_back(rows[i].degree);
      bool integral = true;
      for (int l = 0; l < k; ++l) {
        T.chars(i, l) = rows[i].values[l];
        const double re = rows[i].values[l].real();
        if (std::abs(re - std::llround(re)) > tol::int_round ||
            std::abs(rows[i].values[l].imag()) > tol::int_round)
          integral = false;
      }
      T.integral.push_back(integral);
    }
    T.ortho_residual = resid;
    return T;
  }
  throw std::runtime_error("character table certification failed for " + G.label + ": " + last_err);
}

Subgroup char_kernel(const CharacterTable& table, int chi) {
  if (chi < 0 || chi >= table.num_chars()) throw std::invalid_argument("character index out of range");
  const FiniteGroup& G = *table.group;
  const std::complex<double> at1 = table.chars(chi, 0);
  std::vector<int> elems;
  for (int g = 0; g < G.n; ++g)
    if (std::abs(table.value(chi, g) - at1) < tol::cert) elems.push_back(g);
  Subgroup K = subgroup_from_elements(G, elems);
  if (!is_normal(G, K)) throw std::runtime_error("character kernel not normal");
  return K;
}

std::vector<int> lambda_H(const CharacterTable& table, const Subgroup& N) {
  const FiniteGroup& G = *table.group;
  if (N.parent != &G) throw std::invalid_argument("subgroup belongs to a different group");
  if (!is_normal(G, N)) throw std::invalid_argument("lambda_H requires a normal subgroup");
  std::vector<int> out;
  long long degsq = 0;
  for (int i = 0; i < table.num_chars(); ++i) {
    const std::complex<double> at1 = table.chars(i, 0);
    bool contained = true;
    for (int g : N.elements)
      if (std::abs(table.value(i, g) - at1) >= tol::cert) {
        contained = false;
        break;
      }
    if (contained) {
      out.push_back(i);
      degsq += static_cast<long long>(table.degrees[i]) * table.degrees[i];
    }
  }
  if (degsq != G.n / N.order())
    throw std::runtime_error("kernel-character identity violated: sum " + std::to_string(degsq) +
                             " != index " + std::to_string(G.n / N.order()));
  return out;
}

}  // namespace memb
