#include "memb/comprep.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace memb {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

using Cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

std::vector<Mat> element_matrices(const FiniteGroup& G, const std::vector<Mat>& gen_mats,
                                  int dim) {
  std::vector<Mat> mats(G.n);
  mats[0] = Mat::Identity(dim, dim);
  for (int g : G.bfs_order) {
    if (g == 0) continue;
    mats[g] = gen_mats[G.word_gen[g]] * mats[G.word_prev[g]];
  }
  return mats;
}

// Unique product decomposition over commuting cyclic factors; maps each
// element covered by the factors to its exponent tuple.
std::map<int, std::vector<int>> tuple_map(const FiniteGroup& G, const AbelianFactors& f) {
  std::map<int, std::vector<int>> out;
  const int r = static_cast<int>(f.gens.size());
  std::vector<int> e(r, 0);
  while (true) {
    int g = 0;
    for (int j = 0; j < r; ++j) g = G.op(g, G.power(f.gens[j], e[j]));
    if (!out.emplace(g, e).second)
      throw std::runtime_error("abelian factor hint is not a unique decomposition");
    int j = 0;
    while (j < r && ++e[j] == f.orders[j]) e[j++] = 0;
    if (j == r) break;
    if (r == 0) break;
  }
  return out;
}

// chi(x) = exp(2 pi i sum a_j e_j(x) / m_j) for a dual exponent tuple a.
Cd char_value(const AbelianFactors& f, const std::vector<int>& dual,
              const std::vector<int>& e) {
  double phase = 0;
  for (size_t j = 0; j < f.gens.size(); ++j)
    phase += static_cast<double>(dual[j]) * e[j] / f.orders[j];
  return std::polar(1.0, kTwoPi * phase);
}

std::vector<std::vector<int>> all_dual_tuples(const AbelianFactors& f) {
  std::vector<std::vector<int>> out;
  const int r = static_cast<int>(f.gens.size());
  std::vector<int> a(r, 0);
  while (true) {
    out.push_back(a);
    int j = 0;
    while (j < r && ++a[j] == f.orders[j]) a[j++] = 0;
    if (j == r || r == 0) break;
  }
  return out;
}

// ---- abelian route: all characters as 1x1 unitaries ----

std::vector<std::vector<Mat>> build_abelian(const FiniteGroup& G) {
  const AbelianFactors& f = *G.abelian;
  auto tuples = tuple_map(G, f);
  if (static_cast<int>(tuples.size()) != G.n)
    throw std::runtime_error("abelian hint does not cover the group");
  std::vector<std::vector<Mat>> gen_mats;
  for (const auto& dual : all_dual_tuples(f)) {
    std::vector<Mat> mats;
    for (int gi : G.generators) {
      Mat m(1, 1);
      m(0, 0) = char_value(f, dual, tuples.at(gi));
      mats.push_back(m);
    }
    gen_mats.push_back(std::move(mats));
  }
  return gen_mats;
}

// ---- induction from an abelian subgroup of index 2 ----

std::vector<std::vector<Mat>> build_index2(const FiniteGroup& G) {
  const FiniteGroup::Index2& h = *G.index2;
  const int t = h.coset_rep;
  const int tinv = G.inverse(t);
  auto tuples = tuple_map(G, h.sub);
  if (tuples.size() != h.sub_elements.size())
    throw std::runtime_error("index-2 hint does not cover the subgroup");
  auto in_sub = [&](int g) {
    return std::binary_search(h.sub_elements.begin(), h.sub_elements.end(), g);
  };
  auto lam = [&](const std::vector<int>& dual, int a) {
    return char_value(h.sub, dual, tuples.at(a));
  };
  // conjugate character: lam^t(a) = lam(t a t^-1)
  auto lam_t = [&](const std::vector<int>& dual, int a) {
    return lam(dual, G.op(G.op(t, a), tinv));
  };

  auto quantized = [&](const std::vector<int>& dual, bool conj) {
    std::vector<long long> key;
    for (int a : h.sub_elements) {
      const Cd v = conj ? lam_t(dual, a) : lam(dual, a);
      key.push_back(std::llround(v.real() * 1e9));
      key.push_back(std::llround(v.imag() * 1e9));
    }
    return key;
  };

  std::vector<std::vector<Mat>> gen_mats;
  const int tsq = G.op(t, t);  // t^2 lies in the subgroup
  for (const auto& dual : all_dual_tuples(h.sub)) {
    const auto plain = quantized(dual, false);
    const auto conj = quantized(dual, true);
    if (plain == conj) {
      // two linear extensions with value +-sqrt(lam(t^2)) on t
      const Cd c = std::sqrt(lam(dual, tsq));
      for (int sign = 0; sign < 2; ++sign) {
        const Cd ct = sign ? -c : c;
        std::vector<Mat> mats;
        for (int gi : G.generators) {
          Mat m(1, 1);
          if (in_sub(gi))
            m(0, 0) = lam(dual, gi);
          else
            m(0, 0) = lam(dual, G.op(gi, tinv)) * ct;
          mats.push_back(m);
        }
        gen_mats.push_back(std::move(mats));
      }
    } else if (plain < conj) {  // each orbit pair once
      // induced 2-dim representation on basis (v, t.v)
      std::vector<Mat> mats;
      for (int gi : G.generators) {
        Mat m(2, 2);
        m.setZero();
        if (in_sub(gi)) {
          m(0, 0) = lam(dual, gi);
          m(1, 1) = lam(dual, G.op(G.op(tinv, gi), t));
        } else {
          const int a = G.op(gi, tinv);  // gi = a t
          m(1, 0) = lam(dual, G.op(G.op(tinv, a), t));
          m(0, 1) = lam(dual, tsq) * lam(dual, a);
        }
        mats.push_back(m);
      }
      gen_mats.push_back(std::move(mats));
    }
  }
  return gen_mats;
}

// ---- Young's orthogonal form for symmetric groups ----

struct Tableau {
  std::vector<int> row, col;  // position of value v (0-based)
};

void enumerate_syt(const std::vector<int>& shape, int n, std::vector<int>& len,
                   Tableau& cur, int v, std::vector<Tableau>& out) {
  if (v == n) {
    out.push_back(cur);
    return;
  }
  for (size_t r = 0; r < shape.size(); ++r) {
    if (len[r] >= shape[r]) continue;
    if (r > 0 && len[r] >= len[r - 1]) continue;
    cur.row[v] = static_cast<int>(r);
    cur.col[v] = len[r];
    ++len[r];
    enumerate_syt(shape, n, len, cur, v + 1, out);
    --len[r];
  }
}

void partitions_of(int n, int maxpart, std::vector<int>& cur,
                   std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int p = std::min(n, maxpart); p >= 1; --p) {
    cur.push_back(p);
    partitions_of(n - p, p, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<Mat>> build_yor(const FiniteGroup& G) {
  const int n = *G.symmetric_n;
  std::vector<std::vector<int>> shapes;
  std::vector<int> tmp;
  partitions_of(n, n, tmp, shapes);

  std::vector<std::vector<Mat>> gen_mats;
  for (const auto& shape : shapes) {
    std::vector<Tableau> tabs;
    std::vector<int> len(shape.size(), 0);
    Tableau cur;
    cur.row.assign(n, 0);
    cur.col.assign(n, 0);
    enumerate_syt(shape, n, len, cur, 0, tabs);
    const int d = static_cast<int>(tabs.size());

    std::map<std::pair<std::vector<int>, std::vector<int>>, int> tab_index;
    for (int i = 0; i < d; ++i) tab_index[{tabs[i].row, tabs[i].col}] = i;

    std::vector<Mat> mats;
    for (int k = 0; k + 1 < n; ++k) {  // adjacent transposition (k+1, k+2)
      Mat m(d, d);
      m.setZero();
      for (int i = 0; i < d; ++i) {
        const Tableau& T = tabs[i];
        const int r1 = T.row[k], c1 = T.col[k];
        const int r2 = T.row[k + 1], c2 = T.col[k + 1];
        if (r1 == r2) {
          m(i, i) += 1.0;
        } else if (c1 == c2) {
          m(i, i) += -1.0;
        } else {
          const double dist = static_cast<double>((c2 - r2) - (c1 - r1));
          Tableau S = T;
          std::swap(S.row[k], S.row[k + 1]);
          std::swap(S.col[k], S.col[k + 1]);
          const int j = tab_index.at({S.row, S.col});
          m(i, i) = 1.0 / dist;
          m(j, i) = std::sqrt(1.0 - 1.0 / (dist * dist));
        }
      }
      mats.push_back(m);
    }
    if (n == 1) mats.assign(G.generators.size(), Mat::Identity(d, d));
    gen_mats.push_back(std::move(mats));
  }
  return gen_mats;
}

// ---- tensor route for direct products ----

Mat kron(const Mat& A, const Mat& B) {
  Mat K(A.rows() * B.rows(), A.cols() * B.cols());
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j)
      K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
  return K;
}

std::vector<std::vector<Mat>> build_tensor(const FiniteGroup& G) {
  const FiniteGroup::Product& pr = *G.product;
  CharacterTable tl = character_table(*pr.left);
  CharacterTable tr = character_table(*pr.right);
  UnitaryIrrepSet L = complex_irreps(*pr.left, tl);
  UnitaryIrrepSet R = complex_irreps(*pr.right, tr);
  const int nr = pr.right->n;
  std::vector<std::vector<Mat>> gen_mats;
  for (const auto& a : L.irreps)
    for (const auto& b : R.irreps) {
      std::vector<Mat> mats;
      for (int gi : G.generators) mats.push_back(kron(a.at(gi / nr), b.at(gi % nr)));
      gen_mats.push_back(std::move(mats));
    }
  return gen_mats;
}

// ---- numerical fallback: split the regular representation ----

Eigen::MatrixXd regular_perm(const FiniteGroup& G, int g) {
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(G.n, G.n);
  for (int x = 0; x < G.n; ++x) P(G.op(g, x), x) = 1.0;
  return P;
}

std::vector<std::vector<Mat>> build_numeric(const FiniteGroup& G, const CharacterTable& table,
                                            std::uint64_t seed) {
  const int n = G.n;
  std::vector<Eigen::MatrixXd> P(n);
  for (int g = 0; g < n; ++g) P[g] = regular_perm(G, g);

  for (int attempt = 0; attempt < 8; ++attempt) {
    Rng rng(seed + 131 * attempt);
    Mat R(n, n);
    for (int i = 0; i < n; ++i) {
      R(i, i) = rng.gaussian();
      for (int j = i + 1; j < n; ++j) {
        const Cd v(rng.gaussian(), rng.gaussian());
        R(i, j) = v;
        R(j, i) = std::conj(v);
      }
    }
    // average to a G-equivariant Hermitian operator
    Mat T = Mat::Zero(n, n);
    for (int g = 0; g < n; ++g) T += P[g] * R * P[g].transpose();
    T /= static_cast<double>(n);

    Eigen::SelfAdjointEigenSolver<Mat> es(T);
    if (es.info() != Eigen::Success) continue;
    const Eigen::VectorXd ev = es.eigenvalues();

    // cluster eigenvalues; each cluster is one irreducible copy
    std::vector<std::pair<int, int>> clusters;
    int start = 0;
    for (int i = 1; i <= n; ++i) {
      if (i == n || ev(i) - ev(i - 1) > 1e-7 * (1.0 + std::abs(ev(i)))) {
        clusters.emplace_back(start, i);
        start = i;
      }
    }

    std::vector<std::vector<Mat>> gen_mats(table.num_chars());
    std::vector<bool> have(table.num_chars(), false);
    bool ok = true;
    for (auto [lo, hi] : clusters) {
      const int d = hi - lo;
      Mat B = es.eigenvectors().middleCols(lo, d);
      std::vector<Mat> mats;
      bool inv_ok = true;
      for (int gi : G.generators) {
        Mat rho = B.adjoint() * P[gi] * B;
        if ((P[gi] * B - B * rho).cwiseAbs().maxCoeff() > 1e-7) {
          inv_ok = false;
          break;
        }
        mats.push_back(rho);
      }
      if (G.generators.empty()) mats.assign(0, Mat());
      if (!inv_ok) {
        ok = false;
        break;
      }
      // match to a character row by traces on class representatives
      auto elems = element_matrices(G, mats, d);
      int row = -1;
      for (int i = 0; i < table.num_chars() && row < 0; ++i) {
        if (table.degrees[i] != d) continue;
        bool match = true;
        for (size_t c = 0; c < table.classes.size() && match; ++c)
          match = std::abs(elems[table.class_rep[c]].trace() - table.chars(i, c)) < 1e-5;
        if (match) row = i;
      }
      if (row < 0) {
        ok = false;
        break;
      }
      if (!have[row]) {
        have[row] = true;
        gen_mats[row] = std::move(mats);
      }
    }
    if (!ok) continue;
    for (bool h : have) ok = ok && h;
    if (!ok) continue;
    return gen_mats;
  }
  throw std::runtime_error("numerical irrep construction failed for " + G.label);
}

}  // namespace

int UnitaryIrrepSet::dmax() const {
  int d = 0;
  for (const auto& r : irreps) d = std::max(d, r.dim);
  return d;
}

UnitaryIrrepSet complex_irreps(const FiniteGroup& G, const CharacterTable& table) {
  if (G.n > kEnumerationBound)
    throw enumeration_bound_error("irrep construction refused for |G| = " + std::to_string(G.n));
  if (table.group != &G) throw std::invalid_argument("table belongs to a different group");

  std::vector<std::vector<Mat>> gen_mats;
  if (G.product)
    gen_mats = build_tensor(G);
  else if (G.abelian)
    gen_mats = build_abelian(G);
  else if (G.index2)
    gen_mats = build_index2(G);
  else if (G.symmetric_n)
    gen_mats = build_yor(G);
  else
    gen_mats = build_numeric(G, table, 0xC1A0ULL ^ G.hash());

  UnitaryIrrepSet set;
  set.group = &G;
  double resid = 0;

  std::vector<UnitaryIrrep> built;
  for (auto& mats : gen_mats) {
    UnitaryIrrep rho;
    rho.dim = mats.empty() ? 1 : static_cast<int>(mats.front().rows());
    rho.mats = element_matrices(G, mats, rho.dim);
    built.push_back(std::move(rho));
  }

  // certification: unitarity everywhere, homomorphism on sampled pairs
  Rng rng(0x5A5AULL ^ G.hash());
  for (const auto& rho : built) {
    const Mat I = Mat::Identity(rho.dim, rho.dim);
    for (int g = 0; g < G.n; ++g)
      resid = std::max(resid, (rho.at(g) * rho.at(g).adjoint() - I).cwiseAbs().maxCoeff());
    for (int s = 0; s < 64; ++s) {
      const int g = static_cast<int>(rng.below(G.n));
      const int h = static_cast<int>(rng.below(G.n));
      resid = std::max(resid,
                       (rho.at(g) * rho.at(h) - rho.at(G.op(g, h))).cwiseAbs().maxCoeff());
    }
  }
  if (resid > tol::cert)
    throw std::runtime_error("irrep certification failed for " + G.label + " (residual " +
                             std::to_string(resid) + ")");

  // canonical order: bijection onto character rows by class traces
  std::vector<int> row_of(built.size(), -1);
  std::vector<bool> used(table.num_chars(), false);
  for (size_t i = 0; i < built.size(); ++i) {
    for (int r = 0; r < table.num_chars(); ++r) {
      if (used[r] || table.degrees[r] != built[i].dim) continue;
      bool match = true;
      for (size_t c = 0; c < table.classes.size() && match; ++c)
        match = std::abs(built[i].at(table.class_rep[c]).trace() - table.chars(r, c)) <
                tol::match;
      if (match) {
        row_of[i] = r;
        used[r] = true;
        break;
      }
    }
    if (row_of[i] < 0)
      throw std::runtime_error("irrep does not match any character row in " + G.label);
  }
  set.irreps.resize(table.num_chars());
  for (size_t i = 0; i < built.size(); ++i) {
    built[i].index = row_of[i];
    set.irreps[row_of[i]] = std::move(built[i]);
  }
  if (static_cast<int>(built.size()) != table.num_chars())
    throw std::runtime_error("irrep count does not match the character count");
  set.cert_residual = resid;
  return set;
}

Eigen::MatrixXcd fixed_space_C(const UnitaryIrrep& rho, const Subgroup& H) {
  const int d = rho.dim;
  Mat P = Mat::Zero(d, d);
  for (int h : H.elements) P += rho.at(h);
  P /= static_cast<double>(H.order());
  if ((P * P - P).cwiseAbs().maxCoeff() > tol::cert)
    throw std::runtime_error("averaging projector is not idempotent");
  const double tr = P.trace().real();
  const int dim = static_cast<int>(std::llround(tr));
  if (std::abs(tr - dim) > tol::int_round || std::abs(P.trace().imag()) > tol::int_round)
    throw std::runtime_error("projector trace is not an integer");
  Eigen::SelfAdjointEigenSolver<Mat> es(P);
  Mat basis(d, dim);
  int col = 0;
  for (int i = 0; i < d; ++i)
    if (es.eigenvalues()(i) > 0.5) basis.col(col++) = es.eigenvectors().col(i);
  if (col != dim) throw std::runtime_error("projector rank does not match its trace");
  return basis;
}

double epsilon_for_group(int group_order) {
  if (group_order < 2) return 0.125;
  const double n = static_cast<double>(group_order);
  const double lg = 1.0 + std::log2(n);
  return std::min(0.125, 1.0 / (64.0 * n * n * lg * lg * lg));
}

EpsilonCodec::EpsilonCodec(int d, double eps) : dim(d), epsilon(eps) {
  if (d < 1 || eps <= 0 || eps > 0.125 + 1e-15)
    throw std::invalid_argument("codec needs d >= 1 and 0 < eps <= 1/8");
  delta = eps / (2.0 * std::sqrt(2.0 * d));
  levels = static_cast<std::uint64_t>(std::floor(2.0 / delta)) + 1;
  bits_per_coord = static_cast<int>(std::ceil(std::log2(2.0 / delta + 1.0)));
}

std::vector<std::uint64_t> EpsilonCodec::encode(const Eigen::VectorXcd& v) const {
  if (v.size() != dim) throw std::invalid_argument("codec dimension mismatch");
  // accepts exact unit vectors and their own grid reconstructions
  if (std::abs(v.norm() - 1.0) > epsilon)
    throw std::invalid_argument("encode expects a (near-)unit vector");
  std::vector<std::uint64_t> code(2 * dim);
  for (int i = 0; i < dim; ++i) {
    const double parts[2] = {v(i).real(), v(i).imag()};
    for (int s = 0; s < 2; ++s) {
      long long j = std::llround((parts[s] + 1.0) / delta);
      j = std::max(0LL, std::min(j, static_cast<long long>(levels) - 1));
      code[2 * i + s] = static_cast<std::uint64_t>(j);
    }
  }
  return code;
}

Eigen::VectorXcd EpsilonCodec::decode(const std::vector<std::uint64_t>& code) const {
  if (static_cast<int>(code.size()) != 2 * dim)
    throw std::invalid_argument("code length mismatch");
  Eigen::VectorXcd u(dim);
  for (int i = 0; i < dim; ++i) {
    if (code[2 * i] >= levels || code[2 * i + 1] >= levels)
      throw std::invalid_argument("code value out of range");
    u(i) = Cd(-1.0 + code[2 * i] * delta, -1.0 + code[2 * i + 1] * delta);
  }
  return u;
}

Eigen::VectorXcd EpsilonCodec::decode_unit(const std::vector<std::uint64_t>& code) const {
  Eigen::VectorXcd u = decode(code);
  const double nn = u.norm();
  if (nn < 1e-6) throw std::invalid_argument("code decodes to the zero vector");
  return u / nn;
}

CompContext make_comp_context(const UnitaryIrrepSet& set, const Subgroup& H, double epsilon) {
  const FiniteGroup& G = *set.group;
  CompContext ctx;
  ctx.set = &set;
  ctx.H = H;
  ctx.epsilon = epsilon > 0 ? epsilon : epsilon_for_group(G.n);
  long long total = 0;
  for (int i = 0; i < set.num_irreps(); ++i) {
    Mat basis = fixed_space_C(set.irreps[i], H);
    const int dimI = static_cast<int>(basis.cols());
    const long long w = static_cast<long long>(H.order()) * set.irreps[i].dim * dimI;
    if (w > 0) {
      total += w;
      ctx.cumw.push_back(total);
      ctx.weighted_irreps.push_back(i);
    }
    ctx.fixed_bases.push_back(std::move(basis));
    ctx.fixed_dims.push_back(dimI);
    ctx.codecs.emplace_back(set.irreps[i].dim, ctx.epsilon);
  }
  if (total != G.n)
    throw std::runtime_error("sampling weights sum to " + std::to_string(total) +
                             " instead of |G| = " + std::to_string(G.n));
  ctx.header_bits = ceil_log2(static_cast<std::uint64_t>(set.num_irreps()));
  ctx.bound_bits = ceil_log2(static_cast<std::uint64_t>(G.n)) +
                   EpsilonCodec(std::max(set.dmax(), 1), ctx.epsilon).bits();
  return ctx;
}

CompMessage alice_comprep(const CompContext& ctx, Rng& rng) {
  const long long u = static_cast<long long>(rng.below(ctx.set->group->n));
  size_t i = 0;
  while (u >= ctx.cumw[i]) ++i;
  const int irrep = ctx.weighted_irreps[i];
  const Mat& basis = ctx.fixed_bases[irrep];
  const int dimI = ctx.fixed_dims[irrep];

  Vec coeff(dimI);
  double nrm = 0;
  do {
    for (int j = 0; j < dimI; ++j) coeff(j) = Cd(rng.gaussian(), rng.gaussian());
    nrm = coeff.norm();
  } while (nrm < 1e-12);
  Vec v = basis * (coeff / nrm);  // Haar-uniform on the unit sphere of I_H

  CompMessage msg;
  msg.irrep = irrep;
  msg.code = ctx.codecs[irrep].encode(v);
  msg.n = ctx.codecs[irrep].decode_unit(msg.code);
  msg.bits = ctx.header_bits + ctx.codecs[irrep].bits();
  return msg;
}

int bob_comprep(const UnitaryIrrepSet& set, int y, int irrep, const Eigen::VectorXcd& n,
                double eps) {
  const Cd ip = (set.irreps[irrep].at(y) * n).dot(n);
  return std::abs(1.0 - ip) <= 2.0 * eps ? 1 : 0;
}

std::vector<int> symmetric_generating_set(const FiniteGroup& G, const Subgroup& H) {
  std::vector<int> A{0};
  for (int g : H.generators) {
    A.push_back(g);
    A.push_back(G.inverse(g));
  }
  std::sort(A.begin(), A.end());
  A.erase(std::unique(A.begin(), A.end()), A.end());
  return A;
}

double cayley_second_eigenvalue(const FiniteGroup& K, const std::vector<int>& A, int y) {
  if (A.empty()) throw std::invalid_argument("generating multiset A is empty");
  std::vector<int> inv_sorted, a_sorted = A;
  for (int a : A) inv_sorted.push_back(K.inverse(a));
  std::sort(a_sorted.begin(), a_sorted.end());
  std::sort(inv_sorted.begin(), inv_sorted.end());
  if (a_sorted != inv_sorted) throw std::invalid_argument("A is not symmetric");

  std::vector<int> S;
  for (int a : A) S.push_back(K.op(y, a));
  for (int a : A) S.push_back(K.op(a, K.inverse(y)));

  std::vector<int> gens = S;
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  if (subgroup_generate(K, gens).order() != K.n)
    throw std::invalid_argument("yA u Ay^-1 does not generate the group");

  const int n = K.n;
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
  const double w = 1.0 / static_cast<double>(S.size());
  for (int s : S)
    for (int u = 0; u < n; ++u) M(K.op(s, u), u) += w;
  if ((M - M.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::logic_error("Cayley adjacency matrix is not symmetric");

  if (n == 1) return -1.0;  // no nontrivial spectrum; report a safe value

  // orthonormal basis of the complement of the all-ones vector via a
  // Householder reflection mapping e_1 to 1/sqrt(n)
  Eigen::VectorXd u = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  Eigen::VectorXd w1 = -u;
  w1(0) += 1.0;
  const double wn = w1.norm();
  Eigen::MatrixXd Hh = Eigen::MatrixXd::Identity(n, n);
  if (wn > 1e-12) Hh -= (2.0 / (wn * wn)) * (w1 * w1.transpose());
  const Eigen::MatrixXd Q = Hh.rightCols(n - 1);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Q.transpose() * M * Q);
  const double lambda = es.eigenvalues().maxCoeff();
  if (lambda >= 1.0 - tol::spectral)
    throw std::runtime_error("Cayley spectral gap violated: lambda = " + std::to_string(lambda));
  return lambda;
}

double cayley_second_eigenvalue(const FiniteGroup& G, const Subgroup& H, int y) {
  std::vector<int> kgens = H.generators;
  kgens.push_back(y);
  Subgroup K = subgroup_generate(G, kgens);
  GroupPtr Kg = as_group(K);
  std::vector<int> to_new(G.n, -1);
  for (int i = 0; i < K.order(); ++i) to_new[K.elements[i]] = i;
  std::vector<int> A;
  for (int a : symmetric_generating_set(G, H)) A.push_back(to_new[a]);
  return cayley_second_eigenvalue(*Kg, A, to_new[y]);
}

}  // namespace memb
