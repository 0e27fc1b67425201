#include "memb/modrep.hpp"

#include <algorithm>
#include <map>

namespace memb {

namespace {

// Module with explicit action matrices for the parent group's generators.
struct Mod {
  int dim = 0;
  std::vector<FqMatrix> act;
};

FqVec matrix_row(const FqMatrix& M, int r) {
  FqVec v(M.cols);
  for (int j = 0; j < M.cols; ++j) v[j] = M.at(r, j);
  return v;
}

// theta = c0 I + sum c_j * (short random word in the generators)
FqMatrix random_algebra_element(const FqField& F, const Mod& W, Rng& rng) {
  FqMatrix theta(W.dim, W.dim);
  const FqField::Elem c0 = rng.below(F.q);
  for (int i = 0; i < W.dim; ++i) theta.at(i, i) = c0;
  if (W.act.empty()) return theta;
  for (int term = 0; term < 5; ++term) {
    FqMatrix word = W.act[rng.below(W.act.size())];
    const int len = static_cast<int>(rng.below(3));
    for (int l = 0; l < len; ++l) word = fq_mul(F, word, W.act[rng.below(W.act.size())]);
    const FqField::Elem c = rng.below(F.q);
    for (size_t i = 0; i < word.a.size(); ++i)
      theta.a[i] = F.add(theta.a[i], F.mul(c, word.a[i]));
  }
  return theta;
}

FqVec apply_poly(const FqField& F, const FqPoly& f, const FqMatrix& theta, const FqVec& v) {
  FqVec r(v.size(), 0);
  for (int i = fqpoly::degree(f); i >= 0; --i) {
    r = fq_matvec(F, theta, r);
    if (f[i])
      for (size_t j = 0; j < r.size(); ++j)
        r[j] = F.add(r[j], F.mul(f[i], v[j]));
  }
  return r;
}

FqMatrix eval_poly(const FqField& F, const FqPoly& f, const FqMatrix& theta) {
  FqMatrix r(theta.rows, theta.cols);
  for (int i = fqpoly::degree(f); i >= 0; --i) {
    r = fq_mul(F, theta, r);
    if (f[i])
      for (int d = 0; d < theta.rows; ++d) r.at(d, d) = F.add(r.at(d, d), f[i]);
  }
  return r;
}

FqPoly local_min_poly(const FqField& F, const FqMatrix& theta, const FqVec& v0) {
  const int n = theta.rows;
  FqEchelon E(F, n);
  std::vector<FqVec> krylov;
  FqVec cur = v0;
  while (E.insert(cur)) {
    krylov.push_back(cur);
    cur = fq_matvec(F, theta, cur);
  }
  const int m = static_cast<int>(krylov.size());
  // solve sum c_i krylov[i] = cur
  FqMatrix aug(n, m + 1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) aug.at(i, j) = krylov[j][i];
    aug.at(i, m) = cur[i];
  }
  std::vector<int> pivots;
  const int rank = fq_rref(F, aug, &pivots);
  if (rank != m) throw std::logic_error("krylov basis rank mismatch");
  FqPoly f(m + 1, 0);
  f[m] = 1;
  for (int r = 0; r < m; ++r) f[pivots[r]] = F.neg(aug.at(r, m));
  return f;
}

FqPoly min_poly(const FqField& F, const FqMatrix& theta, Rng& rng) {
  const int n = theta.rows;
  FqVec v(n, 0);
  v[0] = 1;
  FqPoly mp = local_min_poly(F, theta, v);
  for (int extra = 0; extra < 6; ++extra) {
    // verify on random probes; extend by lcm when a probe escapes
    FqVec u(n);
    for (auto& x : u) x = rng.below(F.q);
    FqVec img = apply_poly(F, mp, theta, u);
    bool zero = true;
    for (auto x : img) zero = zero && x == 0;
    if (zero) continue;
    FqPoly mu = local_min_poly(F, theta, u);
    FqPoly g = fqpoly::gcd(F, mp, mu);
    mp = fqpoly::divmod(F, fqpoly::mul(F, mp, mu), g).first;
  }
  return fqpoly::monic(F, mp);
}

// Closure of v under the action; vectors processed as inserted.
FqEchelon spin(const FqField& F, const Mod& W, const FqVec& v) {
  FqEchelon E(F, W.dim);
  std::vector<FqVec> work;
  if (E.insert(v)) work.push_back(v);
  for (size_t head = 0; head < work.size(); ++head) {
    for (const FqMatrix& A : W.act) {
      FqVec w = fq_matvec(F, A, work[head]);
      if (E.insert(w)) work.push_back(w);
    }
  }
  return E;
}

// Coordinates of w in a reduced echelon basis; w must lie in the span.
FqVec coords_in(const FqField& F, const FqEchelon& E, FqVec w) {
  FqVec c(E.rank());
  for (int r = 0; r < E.rank(); ++r) c[r] = w[E.pivots[r]];
  // residual check
  for (int r = 0; r < E.rank(); ++r)
    if (c[r])
      for (int j = 0; j < E.cols; ++j)
        if (E.rows[r][j]) w[j] = F.sub(w[j], F.mul(c[r], E.rows[r][j]));
  for (auto x : w)
    if (x) throw std::logic_error("vector escapes an invariant subspace");
  return c;
}

Mod restrict_to(const FqField& F, const Mod& W, const FqEchelon& E) {
  Mod U;
  U.dim = E.rank();
  for (const FqMatrix& A : W.act) {
    FqMatrix L(U.dim, U.dim);
    for (int j = 0; j < U.dim; ++j) {
      FqVec img = fq_matvec(F, A, E.rows[j]);
      FqVec c = coords_in(F, E, std::move(img));
      for (int i = 0; i < U.dim; ++i) L.at(i, j) = c[i];
    }
    U.act.push_back(std::move(L));
  }
  return U;
}

Mod quotient_by(const FqField& F, const Mod& W, const FqEchelon& E) {
  std::vector<bool> is_pivot(W.dim, false);
  for (int p : E.pivots) is_pivot[p] = true;
  std::vector<int> free_cols;
  for (int j = 0; j < W.dim; ++j)
    if (!is_pivot[j]) free_cols.push_back(j);
  Mod Q;
  Q.dim = static_cast<int>(free_cols.size());
  for (const FqMatrix& A : W.act) {
    FqMatrix L(Q.dim, Q.dim);
    for (int j = 0; j < Q.dim; ++j) {
      FqVec img(W.dim, 0);
      for (int i = 0; i < W.dim; ++i) img[i] = A.at(i, free_cols[j]);
      E.reduce(img);  // kill the pivot coordinates (mod the submodule)
      for (int i = 0; i < Q.dim; ++i) L.at(i, j) = img[free_cols[i]];
    }
    Q.act.push_back(std::move(L));
  }
  return Q;
}

void chop(const FqField& F, const Mod& W, Rng& rng, std::vector<Mod>& out) {
  if (W.dim == 0) return;
  if (W.dim == 1) {
    out.push_back(W);
    return;
  }
  for (int attempt = 0; attempt < 40; ++attempt) {
    const FqMatrix theta = random_algebra_element(F, W, rng);
    FqPoly mp;
    try {
      mp = min_poly(F, theta, rng);
    } catch (const std::logic_error&) {
      continue;
    }
    auto factors = fqpoly::factor(F, mp, rng.next());

    auto split_along = [&](const FqEchelon& U) {
      chop(F, restrict_to(F, W, U), rng, out);
      chop(F, quotient_by(F, W, U), rng, out);
    };

    std::vector<std::pair<FqPoly, FqMatrix>> kernels;  // factor -> kernel basis
    for (auto& [f, mult] : factors) {
      (void)mult;
      FqMatrix K = fq_kernel(F, eval_poly(F, f, theta));
      if (K.rows == 0) continue;
      // kernel rows, then a few random combinations
      for (int c = 0; c < K.rows + 2; ++c) {
        FqVec v(W.dim, 0);
        if (c < K.rows) {
          v = matrix_row(K, c);
        } else {
          for (int r = 0; r < K.rows; ++r) {
            const FqField::Elem coef = rng.below(F.q);
            if (!coef) continue;
            for (int j = 0; j < W.dim; ++j) v[j] = F.add(v[j], F.mul(coef, K.at(r, j)));
          }
          bool zero = true;
          for (auto x : v) zero = zero && x == 0;
          if (zero) continue;
        }
        FqEchelon U = spin(F, W, v);
        if (U.rank() < W.dim) {
          split_along(U);
          return;
        }
      }
      kernels.emplace_back(f, std::move(K));
    }

    // No kernel vector generated a proper submodule. A factor whose
    // nullity equals its degree makes the one-vector checks decisive:
    // every kernel vector generates the same submodule, and likewise on
    // the dual side.
    for (auto& [f, K] : kernels) {
      if (K.rows != fqpoly::degree(f)) continue;
      Mod dual;
      dual.dim = W.dim;
      for (const FqMatrix& A : W.act) dual.act.push_back(fq_transpose(fq_inverse(F, A)));
      FqMatrix KD = fq_kernel(F, fq_transpose(eval_poly(F, f, theta)));
      if (KD.rows == 0) continue;
      FqEchelon D = spin(F, dual, matrix_row(KD, 0));
      if (D.rank() == W.dim) {
        out.push_back(W);  // certified irreducible
        return;
      }
      // proper dual submodule: its perp is a proper submodule
      FqMatrix perp = fq_kernel(F, D.basis());
      FqEchelon U(F, W.dim);
      for (int r = 0; r < perp.rows; ++r) U.insert(matrix_row(perp, r));
      if (U.rank() == 0 || U.rank() == W.dim)
        throw std::logic_error("dual-perp split degenerated");
      split_along(U);
      return;
    }
  }
  throw std::runtime_error("module decomposition failed to certify irreducibility in budget");
}

std::vector<FqMatrix> element_matrices(const FiniteGroup& G, const FqField& F,
                                       const std::vector<FqMatrix>& gen_mats, int dim) {
  std::vector<FqMatrix> mats(G.n);
  mats[0] = FqMatrix::identity(dim);
  for (int g : G.bfs_order) {
    if (g == 0) continue;
    mats[g] = fq_mul(F, gen_mats[G.word_gen[g]], mats[G.word_prev[g]]);
  }
  return mats;
}

// Nonzero intertwiner X with rho1(gen) X = X rho2(gen) for all generators.
bool modules_isomorphic(const FqField& F, const ModularIrrep& a, const ModularIrrep& b,
                        const FiniteGroup& G) {
  if (a.dim != b.dim) return false;
  const int d = a.dim;
  const int ng = std::max<size_t>(G.generators.size(), 1);
  FqMatrix sys(ng * d * d, d * d);
  int row = 0;
  auto add_block = [&](const FqMatrix& r1, const FqMatrix& r2) {
    // (r1 X - X r2)_{ij} = sum_l r1_{il} X_{lj} - X_{il} r2_{lj}
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        for (int l = 0; l < d; ++l) {
          sys.at(row, l * d + j) = F.add(sys.at(row, l * d + j), r1.at(i, l));
          sys.at(row, i * d + l) = F.sub(sys.at(row, i * d + l), r2.at(l, j));
        }
        ++row;
      }
  };
  if (G.generators.empty()) {
    add_block(a.mats[0], b.mats[0]);
  } else {
    for (int gi : G.generators) add_block(a.at(gi), b.at(gi));
  }
  return fq_kernel(F, sys).rows > 0;
}

}  // namespace

int ModularIrrepSet::dmax() const {
  int d = 0;
  for (const auto& r : irreps) d = std::max(d, r.dim);
  return d;
}

FqMatrix regular_rep_matrix(const FiniteGroup& G, const FqField& F, int g) {
  (void)F;
  FqMatrix P(G.n, G.n);
  for (int x = 0; x < G.n; ++x) P.at(G.op(g, x), x) = 1;
  return P;
}

ModularIrrepSet decompose_regular(const FiniteGroup& G, const FqField& F, std::uint64_t seed) {
  if (G.n > kEnumerationBound)
    throw enumeration_bound_error("regular-module decomposition refused for |G| = " +
                                  std::to_string(G.n));
  if (G.n % F.p == 0)
    throw std::invalid_argument("characteristic divides the group order (no Maschke splitting)");

  Mod reg;
  reg.dim = G.n;
  for (int gi : G.generators) reg.act.push_back(regular_rep_matrix(G, F, gi));

  Rng rng(seed ^ (G.hash() * 0x9E3779B97F4A7C15ULL) ^ F.q);
  std::vector<Mod> constituents;
  chop(F, reg, rng, constituents);

  // materialize full element tables and fingerprints
  struct Cand {
    ModularIrrep rep;
    std::vector<FqField::Elem> traces;
  };
  std::vector<Cand> cands;
  for (Mod& m : constituents) {
    Cand c;
    c.rep.dim = m.dim;
    c.rep.mats = element_matrices(G, F, m.act, m.dim);
    c.traces.resize(G.n);
    for (int g = 0; g < G.n; ++g) {
      FqField::Elem t = 0;
      for (int i = 0; i < m.dim; ++i) t = F.add(t, c.rep.mats[g].at(i, i));
      c.traces[g] = t;
    }
    cands.push_back(std::move(c));
  }

  // homomorphism spot checks on each constituent
  for (const Cand& c : cands) {
    Rng prng(seed ^ 0xABCDEFULL);
    for (int t = 0; t < 32; ++t) {
      const int g = static_cast<int>(prng.below(G.n));
      const int h = static_cast<int>(prng.below(G.n));
      if (!(fq_mul(F, c.rep.mats[g], c.rep.mats[h]) == c.rep.mats[G.op(g, h)]))
        throw std::runtime_error("constituent is not a homomorphism");
    }
  }

  // isomorphism classes: fingerprint buckets confirmed by intertwiner solve
  std::vector<int> class_of(cands.size(), -1);
  std::vector<int> reps;  // candidate index of each class representative
  for (size_t i = 0; i < cands.size(); ++i) {
    for (size_t rix = 0; rix < reps.size(); ++rix) {
      const Cand& r = cands[reps[rix]];
      if (r.rep.dim != cands[i].rep.dim || r.traces != cands[i].traces) continue;
      if (modules_isomorphic(F, r.rep, cands[i].rep, G)) {
        class_of[i] = static_cast<int>(rix);
        break;
      }
    }
    if (class_of[i] < 0) {
      class_of[i] = static_cast<int>(reps.size());
      reps.push_back(static_cast<int>(i));
    }
  }

  std::vector<int> order(reps.size());
  for (size_t i = 0; i < reps.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    const Cand& a = cands[reps[x]];
    const Cand& b = cands[reps[y]];
    if (a.rep.dim != b.rep.dim) return a.rep.dim < b.rep.dim;
    return a.traces < b.traces;
  });

  ModularIrrepSet set;
  set.group = &G;
  set.field = F;
  long long dimcount = 0;
  for (size_t pos = 0; pos < order.size(); ++pos) {
    const int rix = order[pos];
    int mult = 0;
    for (size_t i = 0; i < cands.size(); ++i)
      if (class_of[i] == rix) ++mult;
    ModularIrrep rep = std::move(cands[reps[rix]].rep);
    rep.index = static_cast<int>(pos);
    dimcount += static_cast<long long>(mult) * rep.dim;
    set.irreps.push_back(std::move(rep));
    set.multiplicity.push_back(mult);
  }
  if (dimcount != G.n)
    throw std::runtime_error("dimension count violated: " + std::to_string(dimcount) +
                             " != " + std::to_string(G.n));
  set.splitting = true;
  for (size_t i = 0; i < set.irreps.size(); ++i)
    set.splitting = set.splitting && set.multiplicity[i] == set.irreps[i].dim;
  return set;
}

FixedSpace fixed_space(const FqField& F, const ModularIrrep& rho, const Subgroup& H) {
  FixedSpace fs;
  fs.irrep = rho.index;
  const int d = rho.dim;
  if (H.generators.empty()) {
    fs.basis = FqMatrix::identity(d);
    fs.dim = d;
    return fs;
  }
  FqMatrix stack(static_cast<int>(H.generators.size()) * d, d);
  int row = 0;
  for (int h : H.generators) {
    const FqMatrix& M = rho.at(h);
    for (int i = 0; i < d; ++i, ++row)
      for (int j = 0; j < d; ++j) stack.at(row, j) = F.sub(M.at(i, j), i == j ? 1 : 0);
  }
  fs.basis = fq_kernel(F, stack);
  fs.dim = fs.basis.rows;
  return fs;
}

Eq1Report verify_eq1(const ModularIrrepSet& set, const Subgroup& H) {
  const FiniteGroup& G = *set.group;
  if (H.parent != &G) throw std::invalid_argument("subgroup belongs to a different group");
  Eq1Report rep;
  rep.index = G.n / H.order();
  for (int i = 0; i < set.num_irreps(); ++i) {
    FixedSpace fs = fixed_space(set.field, set.irreps[i], H);
    rep.rows.push_back({i, set.irreps[i].dim, set.multiplicity[i], fs.dim});
    rep.sum += static_cast<long long>(set.multiplicity[i]) * fs.dim;
  }
  if (rep.sum != rep.index)
    throw std::runtime_error("invariant-dimension identity violated: " + std::to_string(rep.sum) +
                             " != " + std::to_string(rep.index));
  return rep;
}

ModRepContext make_modrep_context(const ModularIrrepSet& set, const Subgroup& H) {
  if (!set.splitting)
    throw std::invalid_argument(
        "protocol requires the splitting pattern (multiplicity = dimension); "
        "use the field of degree ord_m(p)");
  const FiniteGroup& G = *set.group;
  ModRepContext ctx;
  ctx.set = &set;
  ctx.H = H;
  long long total = 0;
  for (int i = 0; i < set.num_irreps(); ++i) {
    FixedSpace fs = fixed_space(set.field, set.irreps[i], H);
    const long long w =
        static_cast<long long>(H.order()) * set.irreps[i].dim * fs.dim;
    if (w > 0) {
      total += w;
      ctx.cumw.push_back(total);
      ctx.weighted_irreps.push_back(i);
    }
    ctx.fixed.push_back(std::move(fs));
  }
  if (total != G.n)
    throw std::runtime_error("sampling weights sum to " + std::to_string(total) +
                             " instead of |G| = " + std::to_string(G.n));
  ctx.header_bits = ceil_log2(static_cast<std::uint64_t>(set.num_irreps()));
  ctx.coord_bits = ceil_log2(set.field.q);
  ctx.bound_bits = ceil_log2(static_cast<std::uint64_t>(G.n)) +
                   static_cast<long long>(set.dmax()) * ctx.coord_bits;
  return ctx;
}

ModRepMessage alice_modrep(const ModRepContext& ctx, Rng& rng) {
  const FqField& F = ctx.set->field;
  const long long u = static_cast<long long>(rng.below(ctx.set->group->n));
  size_t i = 0;
  while (u >= ctx.cumw[i]) ++i;
  const int irrep = ctx.weighted_irreps[i];
  const FixedSpace& fs = ctx.fixed[irrep];
  const int d = ctx.set->irreps[irrep].dim;
  ModRepMessage msg;
  msg.irrep = irrep;
  msg.v.assign(d, 0);
  for (int r = 0; r < fs.dim; ++r) {
    const FqField::Elem c = rng.below(F.q);
    if (!c) continue;
    for (int j = 0; j < d; ++j) msg.v[j] = F.add(msg.v[j], F.mul(c, fs.basis.at(r, j)));
  }
  msg.bits = ctx.header_bits + static_cast<long long>(d) * ctx.coord_bits;
  return msg;
}

int bob_modrep(const ModularIrrepSet& set, int y, int irrep, const FqVec& v) {
  return fq_matvec(set.field, set.irreps[irrep].at(y), v) == v ? 1 : 0;
}

Rational modrep_exact_accept(const ModularIrrepSet& set, const Subgroup& H, int y) {
  if (!set.splitting) throw std::invalid_argument("oracle requires the splitting pattern");
  const FiniteGroup& G = *set.group;
  if (H.contains(y)) return Rational(1);
  std::vector<int> kgens = H.generators;
  kgens.push_back(y);
  Subgroup K = subgroup_generate(G, kgens);
  Rational acc(0);
  for (int i = 0; i < set.num_irreps(); ++i) {
    FixedSpace fh = fixed_space(set.field, set.irreps[i], H);
    if (fh.dim == 0) continue;
    FixedSpace fk = fixed_space(set.field, set.irreps[i], K);
    const long long w = static_cast<long long>(H.order()) * set.irreps[i].dim * fh.dim;
    const long long qpow = Rational::ipow(static_cast<long long>(set.field.q), fh.dim - fk.dim);
    acc = acc + Rational(w, G.n) * Rational(1, qpow);
  }
  return acc;
}

DmaxReport dmax_modular(const FiniteGroup& G, std::uint32_t p, const CharacterTable& table) {
  if (!prime_check(p)) throw std::invalid_argument("p must be prime");
  if (G.n % p == 0) throw std::invalid_argument("p divides |G|");
  DmaxReport rep;
  const FqField Fp = FqField::make(p, 1);
  ModularIrrepSet set = decompose_regular(G, Fp);
  rep.dmax_p = set.dmax();
  for (int d : table.degrees) rep.dmax_0 = std::max(rep.dmax_0, d);
  rep.ord = multiplicative_order(p, exponent(G));
  rep.bound = static_cast<long long>(rep.dmax_0) * rep.ord;
  if (rep.dmax_p > rep.bound)
    throw std::runtime_error("modular dimension bound violated: " + std::to_string(rep.dmax_p) +
                             " > " + std::to_string(rep.bound));
  return rep;
}

ModRepBits modrep_message_bits(const ModularIrrepSet& set, int irrep) {
  ModRepBits b;
  const int d = set.irreps[irrep].dim;
  b.header = ceil_log2(static_cast<std::uint64_t>(set.num_irreps()));
  b.payload = d * ceil_log2(set.field.q);
  b.total = b.header + b.payload;
  const int p_bits = ceil_log2(static_cast<std::uint64_t>(set.field.p));
  b.digit_payload = d * set.field.k * p_bits;
  b.paper_bound = ceil_log2(static_cast<std::uint64_t>(set.group->n)) +
                  static_cast<long long>(set.dmax()) * ceil_log2(set.field.q);
  return b;
}

}  // namespace memb
