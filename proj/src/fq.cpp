#include "memb/fq.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "memb/rng.hpp"

namespace memb {

namespace {

constexpr std::uint32_t kMaxPrime = 1u << 20;

void unpack(const FqField& F, FqField::Elem e, std::uint32_t* d) {
  for (int i = 0; i < F.k; ++i) {
    d[i] = static_cast<std::uint32_t>(e % F.p);
    e /= F.p;
  }
}

FqField::Elem pack(const FqField& F, const std::uint32_t* d) {
  FqField::Elem e = 0;
  for (int i = F.k - 1; i >= 0; --i) e = e * F.p + d[i];
  return e;
}

}  // namespace

bool prime_check(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

int multiplicative_order(std::uint64_t p, std::uint64_t m) {
  if (m == 1) return 1;
  if (std::gcd(p, m) != 1) throw std::invalid_argument("p shares a factor with the modulus");
  std::uint64_t x = p % m;
  int ord = 1;
  while (x != 1) {
    x = (x * (p % m)) % m;
    ++ord;
    if (ord > static_cast<int>(m)) throw std::logic_error("order computation diverged");
  }
  return ord;
}

void FqField::build_reduction() {
  red_.assign(k, std::vector<std::uint32_t>(k, 0));
  // x^k = -(modulus without leading coefficient)
  std::vector<std::uint32_t> cur(k);
  for (int i = 0; i < k; ++i) cur[i] = (p - modulus[i] % p) % p;
  red_[0] = cur;
  for (int i = 1; i < k; ++i) {
    // multiply by x, reduce top digit
    std::vector<std::uint32_t> next(k, 0);
    const std::uint32_t top = cur[k - 1];
    for (int j = k - 1; j >= 1; --j) next[j] = cur[j - 1];
    next[0] = 0;
    if (top) {
      for (int j = 0; j < k; ++j)
        next[j] = static_cast<std::uint32_t>(
            (next[j] + static_cast<std::uint64_t>(top) * red_[0][j]) % p);
    }
    red_[i] = next;
    cur = next;
  }
}

FqField::Elem FqField::add(Elem a, Elem b) const {
  if (k == 1) return (a + b) % p;
  std::uint32_t da[kMaxDegree], db[kMaxDegree];
  unpack(*this, a, da);
  unpack(*this, b, db);
  for (int i = 0; i < k; ++i) da[i] = (da[i] + db[i]) % p;
  return pack(*this, da);
}

FqField::Elem FqField::sub(Elem a, Elem b) const { return add(a, neg(b)); }

FqField::Elem FqField::neg(Elem a) const {
  if (k == 1) return (p - a % p) % p;
  std::uint32_t d[kMaxDegree];
  unpack(*this, a, d);
  for (int i = 0; i < k; ++i) d[i] = (p - d[i]) % p;
  return pack(*this, d);
}

FqField::Elem FqField::mul(Elem a, Elem b) const {
  if (k == 1) return (a * b) % p;
  std::uint32_t da[kMaxDegree], db[kMaxDegree];
  unpack(*this, a, da);
  unpack(*this, b, db);
  std::uint64_t prod[2 * kMaxDegree];
  std::fill(prod, prod + 2 * k - 1, 0);
  for (int i = 0; i < k; ++i) {
    if (!da[i]) continue;
    for (int j = 0; j < k; ++j) prod[i + j] += static_cast<std::uint64_t>(da[i]) * db[j];
  }
  std::uint32_t out[kMaxDegree];
  for (int i = 0; i < k; ++i) out[i] = static_cast<std::uint32_t>(prod[i] % p);
  for (int i = k; i < 2 * k - 1; ++i) {
    const std::uint64_t c = prod[i] % p;
    if (!c) continue;
    const auto& row = red_[i - k];
    for (int j = 0; j < k; ++j) out[j] = static_cast<std::uint32_t>((out[j] + c * row[j]) % p);
  }
  return pack(*this, out);
}

FqField::Elem FqField::pow(Elem a, std::uint64_t e) const {
  Elem r = 1, base = a;
  while (e) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

FqField::Elem FqField::inv(Elem a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  if (k == 1) {
    // extended Euclid in Z
    long long t = 0, newt = 1, r = p, newr = static_cast<long long>(a % p);
    while (newr != 0) {
      const long long qq = r / newr;
      std::swap(t -= qq * newt, newt);
      std::swap(r -= qq * newr, newr);
    }
    return static_cast<Elem>(((t % p) + p) % p);
  }
  // extended Euclid in F_p[x] on digit vectors
  using Vec = std::vector<std::uint32_t>;
  auto deg = [](const Vec& v) {
    for (int i = static_cast<int>(v.size()) - 1; i >= 0; --i)
      if (v[i]) return i;
    return -1;
  };
  auto inv_mod_p = [this](std::uint32_t x) {
    long long t = 0, newt = 1, r = p, newr = x % p;
    while (newr != 0) {
      const long long qq = r / newr;
      std::swap(t -= qq * newt, newt);
      std::swap(r -= qq * newr, newr);
    }
    return static_cast<std::uint32_t>(((t % p) + p) % p);
  };
  Vec r(modulus.begin(), modulus.end());
  Vec newr(k + 1, 0);
  {
    std::uint32_t d[kMaxDegree];
    unpack(*this, a, d);
    for (int i = 0; i < k; ++i) newr[i] = d[i];
  }
  Vec t(k + 1, 0), newt(k + 1, 0);
  newt[0] = 1;
  while (deg(newr) >= 0) {
    const int dr = deg(r), dn = deg(newr);
    if (dr < dn) {
      std::swap(r, newr);
      std::swap(t, newt);
      continue;
    }
    const std::uint32_t c =
        static_cast<std::uint32_t>((static_cast<std::uint64_t>(r[dr]) * inv_mod_p(newr[dn])) % p);
    const int shift = dr - dn;
    for (int i = 0; i <= dn; ++i) {
      r[i + shift] = static_cast<std::uint32_t>(
          (r[i + shift] + static_cast<std::uint64_t>(p - c) * newr[i]) % p);
      t[i + shift] = static_cast<std::uint32_t>(
          (t[i + shift] + static_cast<std::uint64_t>(p - c) * newt[i]) % p);
    }
  }
  const int dr = deg(r);
  if (dr != 0) throw std::logic_error("element not invertible (modulus not irreducible?)");
  const std::uint32_t scale = inv_mod_p(r[0]);
  std::uint32_t out[kMaxDegree];
  for (int i = 0; i < k; ++i)
    out[i] = static_cast<std::uint32_t>((static_cast<std::uint64_t>(t[i]) * scale) % p);
  return pack(*this, out);
}

FqField make_raw_field(std::uint32_t p, int k, std::vector<std::uint32_t> modulus) {
  FqField F;
  F.p = p;
  F.k = k;
  F.q = 1;
  for (int i = 0; i < k; ++i) F.q *= p;
  F.modulus = std::move(modulus);
  if (k > 1) F.build_reduction();
  return F;
}

FqField FqField::make(std::uint32_t p, int k) {
  if (!prime_check(p)) throw std::invalid_argument("field characteristic must be prime");
  if (p > kMaxPrime) throw std::invalid_argument("characteristic too large");
  if (k < 1 || k > kMaxDegree) throw std::invalid_argument("extension degree out of range");
  double bits = k * std::log2(static_cast<double>(p));
  if (bits > 62) throw std::invalid_argument("field too large (q exceeds 2^62)");

  if (k == 1) return make_raw_field(p, 1, {0, 1});

  // lexicographically least monic irreducible of degree k: enumerate the
  // low coefficients as a base-p counter
  FqField Fp = make_raw_field(p, 1, {0, 1});
  std::uint64_t total = 1;
  for (int i = 0; i < k; ++i) total *= p;
  for (std::uint64_t v = 0; v < total; ++v) {
    std::vector<std::uint32_t> cand(k + 1, 0);
    std::uint64_t x = v;
    for (int i = 0; i < k; ++i) {
      cand[i] = static_cast<std::uint32_t>(x % p);
      x /= p;
    }
    cand[k] = 1;
    FqPoly f(cand.begin(), cand.end());
    if (fqpoly::is_irreducible(Fp, f)) return make_raw_field(p, k, std::move(cand));
  }
  throw std::logic_error("no irreducible modulus found");
}

FqField choose_splitting_field(const FiniteGroup& G, std::uint32_t p) {
  if (!prime_check(p)) throw std::invalid_argument("p must be prime");
  if (G.n % p == 0)
    throw std::invalid_argument("characteristic " + std::to_string(p) + " divides |G| = " +
                                std::to_string(G.n));
  const int m = exponent(G);
  const int k = multiplicative_order(p, m);
  return FqField::make(p, k);
}

// ---------------------------------------------------------------------------
// polynomials

namespace fqpoly {

FqPoly trim(FqPoly f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

int degree(const FqPoly& f) {
  for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
    if (f[i]) return i;
  return -1;
}

FqPoly add(const FqField& F, const FqPoly& a, const FqPoly& b) {
  FqPoly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < r.size(); ++i) {
    FqField::Elem v = i < a.size() ? a[i] : 0;
    if (i < b.size()) v = F.add(v, b[i]);
    r[i] = v;
  }
  return trim(std::move(r));
}

FqPoly sub(const FqField& F, const FqPoly& a, const FqPoly& b) {
  FqPoly nb(b.size());
  for (size_t i = 0; i < b.size(); ++i) nb[i] = F.neg(b[i]);
  return add(F, a, nb);
}

FqPoly mul(const FqField& F, const FqPoly& a, const FqPoly& b) {
  if (degree(a) < 0 || degree(b) < 0) return {};
  FqPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j)
      if (b[j]) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  }
  return trim(std::move(r));
}

FqPoly scale(const FqField& F, const FqPoly& a, FqField::Elem c) {
  FqPoly r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], c);
  return trim(std::move(r));
}

std::pair<FqPoly, FqPoly> divmod(const FqField& F, const FqPoly& a, const FqPoly& b) {
  const int db = degree(b);
  if (db < 0) throw std::domain_error("division by zero polynomial");
  FqPoly rem = trim(a);
  const FqField::Elem lead_inv = F.inv(b[db]);
  int dr = degree(rem);
  if (dr < db) return {{}, rem};
  FqPoly quot(dr - db + 1, 0);
  while (dr >= db) {
    const FqField::Elem c = F.mul(rem[dr], lead_inv);
    quot[dr - db] = c;
    for (int i = 0; i <= db; ++i)
      rem[dr - db + i] = F.sub(rem[dr - db + i], F.mul(c, b[i]));
    rem = trim(std::move(rem));
    dr = degree(rem);
  }
  return {trim(std::move(quot)), rem};
}

FqPoly mod(const FqField& F, const FqPoly& a, const FqPoly& b) { return divmod(F, a, b).second; }

FqPoly monic(const FqField& F, const FqPoly& a) {
  const int d = degree(a);
  if (d < 0) return {};
  return scale(F, trim(a), F.inv(a[d]));
}

FqPoly gcd(const FqField& F, FqPoly a, FqPoly b) {
  a = trim(std::move(a));
  b = trim(std::move(b));
  while (degree(b) >= 0) {
    FqPoly r = mod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(F, a);
}

FqPoly powmod(const FqField& F, FqPoly base, std::uint64_t e, const FqPoly& m) {
  FqPoly r{1};
  base = mod(F, base, m);
  while (e) {
    if (e & 1) r = mod(F, mul(F, r, base), m);
    base = mod(F, mul(F, base, base), m);
    e >>= 1;
  }
  return r;
}

FqPoly derivative(const FqField& F, const FqPoly& a) {
  if (a.size() <= 1) return {};
  FqPoly r(a.size() - 1);
  for (size_t i = 1; i < a.size(); ++i) {
    FqField::Elem c = 0;
    const std::uint64_t im = i % F.p;
    for (std::uint64_t t = 0; t < im; ++t) c = F.add(c, a[i]);
    r[i - 1] = c;
  }
  return trim(std::move(r));
}

namespace {

// p-th root of f when f = g(x^p): coefficientwise c -> c^(q/p).
FqPoly pth_root(const FqField& F, const FqPoly& f) {
  FqPoly r((degree(f)) / F.p + 1, 0);
  const std::uint64_t e = F.q / F.p;  // x^(q/p) inverts the Frobenius
  for (size_t i = 0; i < f.size(); i += F.p) r[i / F.p] = F.pow(f[i], e);
  return trim(std::move(r));
}

// squarefree decomposition (Yun adapted to characteristic p)
void squarefree(const FqField& F, const FqPoly& f, int outer_mult,
                std::vector<std::pair<FqPoly, int>>& out) {
  if (degree(f) <= 0) return;
  FqPoly d = derivative(F, f);
  if (degree(d) < 0) {
    // f = g(x^p)
    squarefree(F, pth_root(F, f), outer_mult * static_cast<int>(F.p), out);
    return;
  }
  FqPoly c = gcd(F, f, d);
  FqPoly w = divmod(F, f, c).first;  // product of squarefree factors
  int mult = 1;
  while (degree(w) > 0) {
    FqPoly y = gcd(F, w, c);
    FqPoly part = divmod(F, w, y).first;  // factors with exact multiplicity `mult`
    if (degree(part) > 0) out.emplace_back(monic(F, part), mult * outer_mult);
    w = std::move(y);
    c = divmod(F, c, w).first;
    ++mult;
  }
  if (degree(c) > 0) squarefree(F, c, outer_mult, out);  // leftover p-th powers
}

// equal-degree splitting of a squarefree product of degree-d irreducibles
void equal_degree(const FqField& F, const FqPoly& f, int d, Rng& rng, std::vector<FqPoly>& out) {
  const int n = degree(f);
  if (n == d) {
    out.push_back(monic(F, f));
    return;
  }
  FqPoly factor;
  while (true) {
    FqPoly r(n, 0);
    for (int i = 0; i < n; ++i) r[i] = rng.below(F.q);
    r = trim(std::move(r));
    if (degree(r) < 1) continue;
    FqPoly g = gcd(F, r, f);
    if (degree(g) > 0 && degree(g) < n) {
      factor = g;
      break;
    }
    if (F.p == 2) {
      // trace map over F_2: r + r^2 + ... + r^(2^(d*k-1))
      FqPoly t = r, acc = r;
      const int steps = d * F.k;
      for (int i = 1; i < steps; ++i) {
        t = mod(F, mul(F, t, t), f);
        acc = add(F, acc, t);
      }
      g = gcd(F, acc, f);
    } else {
      // r^((q^d-1)/2) via the norm map N(r) = r^(1+q+...+q^(d-1)),
      // keeping every exponent below q
      FqPoly N = r, ri = r;
      for (int i = 1; i < d; ++i) {
        ri = powmod(F, ri, F.q, f);
        N = mod(F, mul(F, N, ri), f);
      }
      FqPoly h = powmod(F, N, (F.q - 1) / 2, f);
      g = gcd(F, sub(F, h, FqPoly{1}), f);
    }
    if (degree(g) > 0 && degree(g) < n) {
      factor = g;
      break;
    }
  }
  equal_degree(F, factor, d, rng, out);
  equal_degree(F, divmod(F, f, factor).first, d, rng, out);
}

}  // namespace

std::vector<std::pair<FqPoly, int>> factor(const FqField& F, const FqPoly& f0,
                                           std::uint64_t seed) {
  FqPoly f = monic(F, f0);
  if (degree(f) < 1) throw std::domain_error("factor: constant polynomial");
  std::vector<std::pair<FqPoly, int>> sqf;
  squarefree(F, f, 1, sqf);

  Rng rng(seed ^ 0xF1E1DULL);
  std::vector<std::pair<FqPoly, int>> out;
  for (auto& [part, mult] : sqf) {
    // distinct-degree split: gcd with x^(q^d) - x
    FqPoly rem = part;
    FqPoly xq = powmod(F, FqPoly{0, 1}, F.q, rem);  // x^q mod rem
    FqPoly h = xq;
    int d = 1;
    while (degree(rem) >= 2 * d) {
      FqPoly g = gcd(F, sub(F, h, FqPoly{0, 1}), rem);
      if (degree(g) > 0) {
        std::vector<FqPoly> irr;
        equal_degree(F, g, d, rng, irr);
        for (auto& u : irr) out.emplace_back(u, mult);
        rem = divmod(F, rem, g).first;
        h = mod(F, h, rem);
      }
      ++d;
      if (degree(rem) < 2 * d) break;
      h = powmod(F, h, F.q, rem);  // advance Frobenius: x^(q^d) mod rem
    }
    if (degree(rem) > 0) out.emplace_back(monic(F, rem), mult);
  }
  // deterministic order: by (degree, coefficients)
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
    for (size_t i = a.first.size(); i-- > 0;)
      if (a.first[i] != b.first[i]) return a.first[i] < b.first[i];
    return a.second < b.second;
  });
  return out;
}

bool is_irreducible(const FqField& F, const FqPoly& f0) {
  const FqPoly f = monic(F, f0);
  const int n = degree(f);
  if (n <= 0) return false;
  if (n == 1) return true;
  // Rabin: x^(q^n) = x mod f, and gcd(x^(q^(n/l)) - x, f) = 1 for primes l|n
  const FqPoly x{0, 1};
  FqPoly h = x;
  std::vector<FqPoly> frob_pows(n + 1);  // x^(q^i) mod f
  frob_pows[0] = x;
  for (int i = 1; i <= n; ++i) frob_pows[i] = powmod(F, frob_pows[i - 1], F.q, f);
  if (trim(sub(F, frob_pows[n], x)) != FqPoly{}) return false;
  for (int l = 2; l <= n; ++l) {
    if (n % l) continue;
    bool lp = true;
    for (int d = 2; d * d <= l; ++d)
      if (l % d == 0) lp = false;
    if (!lp) continue;
    if (degree(gcd(F, sub(F, frob_pows[n / l], x), f)) != 0) return false;
  }
  return true;
}

}  // namespace fqpoly

}  // namespace memb
