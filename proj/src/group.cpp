#include "memb/group.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "memb/rng.hpp"

namespace memb {

namespace {

bool is_prime(long long p) {
  if (p < 2) return false;
  for (long long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

long long checked_pow(long long b, int e, long long cap) {
  long long r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > cap / b) return cap + 1;
    r *= b;
  }
  return r;
}

// ---- permutation utilities (symmetric family) ----

using Perm = std::vector<int>;  // perm[i] = image of point i (0-based)

Perm compose(const Perm& a, const Perm& b) {  // (a*b)(x) = a(b(x))
  Perm r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[b[i]];
  return r;
}

// Lexicographic rank of a permutation of 0..n-1.
long long perm_rank(const Perm& p) {
  const int n = static_cast<int>(p.size());
  long long rank = 0, fact = 1;
  std::vector<long long> f(n + 1, 1);
  for (int i = 1; i <= n; ++i) f[i] = f[i - 1] * i;
  for (int i = 0; i < n; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < n; ++j)
      if (p[j] < p[i]) ++smaller;
    rank += smaller * f[n - 1 - i];
  }
  (void)fact;
  return rank;
}

Perm perm_unrank(int n, long long rank) {
  std::vector<long long> f(n + 1, 1);
  for (int i = 1; i <= n; ++i) f[i] = f[i - 1] * i;
  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  Perm p;
  for (int i = n - 1; i >= 0; --i) {
    const long long idx = rank / f[i];
    rank %= f[i];
    p.push_back(pool[idx]);
    pool.erase(pool.begin() + idx);
  }
  return p;
}

// Cycle notation with 1-based points, cycles starting at their smallest
// point and ordered by it: "(12)(34)", identity "e".
std::string perm_name(const Perm& p) {
  const int n = static_cast<int>(p.size());
  std::vector<bool> seen(n, false);
  std::string out;
  for (int s = 0; s < n; ++s) {
    if (seen[s] || p[s] == s) continue;
    out += '(';
    int x = s;
    while (!seen[x]) {
      seen[x] = true;
      out += std::to_string(x + 1);
      x = p[x];
    }
    out += ')';
  }
  return out.empty() ? "e" : out;
}

Perm perm_parse(const std::string& text, int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  if (text == "e" || text == "()") return p;
  size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    if (text[i] != '(') throw std::invalid_argument("bad cycle notation: " + text);
    ++i;
    std::vector<int> cycle;
    while (i < text.size() && text[i] != ')') {
      if (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ',') {
        ++i;
        continue;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i])))
        throw std::invalid_argument("bad cycle notation: " + text);
      int v = 0;
      if (n <= 9) {  // single-digit points, "(12)" means (1 2)
        v = text[i] - '0';
        ++i;
      } else {
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
          v = v * 10 + (text[i] - '0');
          ++i;
        }
      }
      if (v < 1 || v > n) throw std::invalid_argument("cycle point out of range: " + text);
      cycle.push_back(v - 1);
    }
    if (i >= text.size()) throw std::invalid_argument("unterminated cycle: " + text);
    ++i;  // ')'
    for (size_t j = 0; j + 1 < cycle.size(); ++j) p[cycle[j]] = cycle[j + 1];
    if (!cycle.empty()) p[cycle.back()] = cycle.front();
  }
  return p;
}

int bit_reverse(int v, int n) {
  int r = 0;
  for (int i = 0; i < n; ++i)
    if (v & (1 << i)) r |= 1 << (n - 1 - i);
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// FiniteGroup

int FiniteGroup::power(int g, long long e) const {
  const int ord = element_order(g);
  e %= ord;
  if (e < 0) e += ord;
  int r = 0;
  for (long long i = 0; i < e; ++i) r = op(r, g);
  return r;
}

int FiniteGroup::element_order(int g) const {
  int x = g, ord = 1;
  while (x != 0) {
    x = op(x, g);
    ++ord;
  }
  return ord;
}

std::uint64_t FiniteGroup::hash() const {
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
  auto mix = [&h](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ULL;
  };
  mix(static_cast<std::uint64_t>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) mix(static_cast<std::uint64_t>(mul(a, b)));
  return h;
}

int FiniteGroup::element_by_name(const std::string& name) const {
  for (int g = 0; g < n; ++g)
    if (element_names[g] == name) return g;
  // Cycle notation is re-canonicalized so "(21)" matches "(12)".
  if (symmetric_n && !name.empty() && (name[0] == '(' || name == "e")) {
    const std::string canon = perm_name(perm_parse(name, *symmetric_n));
    for (int g = 0; g < n; ++g)
      if (element_names[g] == canon) return g;
  }
  // Fall back to a decimal index.
  bool digits = !name.empty();
  for (char c : name) digits = digits && std::isdigit(static_cast<unsigned char>(c));
  if (digits) {
    const int v = std::stoi(name);
    if (v >= 0 && v < n) return v;
  }
  throw std::invalid_argument("unknown element '" + name + "' in " + label);
}

void FiniteGroup::validate() const {
  if (n < 1 || mul.rows() != n || mul.cols() != n || static_cast<int>(inv.size()) != n)
    throw std::runtime_error("group table shape mismatch");
  std::vector<bool> seen(n);
  for (int a = 0; a < n; ++a) {
    std::fill(seen.begin(), seen.end(), false);
    for (int b = 0; b < n; ++b) {
      const int v = mul(a, b);
      if (v < 0 || v >= n || seen[v]) throw std::runtime_error("row not a permutation");
      seen[v] = true;
    }
    std::fill(seen.begin(), seen.end(), false);
    for (int b = 0; b < n; ++b) {
      const int v = mul(b, a);
      if (seen[v]) throw std::runtime_error("column not a permutation");
      seen[v] = true;
    }
    if (mul(0, a) != a || mul(a, 0) != a) throw std::runtime_error("identity violated");
    if (mul(a, inv[a]) != 0 || mul(inv[a], a) != 0) throw std::runtime_error("inverse violated");
  }
  if (n <= 256) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (mul(mul(a, b), c) != mul(a, mul(b, c)))
            throw std::runtime_error("associativity violated");
  } else {
    Rng rng(0x5eedULL ^ static_cast<std::uint64_t>(n));
    for (int t = 0; t < 200000; ++t) {
      const int a = static_cast<int>(rng.below(n));
      const int b = static_cast<int>(rng.below(n));
      const int c = static_cast<int>(rng.below(n));
      if (mul(mul(a, b), c) != mul(a, mul(b, c)))
        throw std::runtime_error("associativity violated (sampled)");
    }
  }
}

void FiniteGroup::build_word_table() {
  word_gen.assign(n, -1);
  word_prev.assign(n, -1);
  bfs_order.clear();
  bfs_order.push_back(0);
  std::vector<bool> seen(n, false);
  seen[0] = true;
  for (size_t head = 0; head < bfs_order.size(); ++head) {
    const int g = bfs_order[head];
    for (size_t i = 0; i < generators.size(); ++i) {
      const int h = op(generators[i], g);
      if (!seen[h]) {
        seen[h] = true;
        word_gen[h] = static_cast<int>(i);
        word_prev[h] = g;
        bfs_order.push_back(h);
      }
    }
  }
  if (static_cast<int>(bfs_order.size()) != n)
    throw std::runtime_error("generators do not generate " + label);
}

// ---------------------------------------------------------------------------
// GroupSpec

long long GroupSpec::order() const {
  switch (family) {
    case Family::cyclic: return a;
    case Family::elementary_abelian: return checked_pow(a, b, kMaxGroupOrder + 1);
    case Family::dihedral: return 2LL * a;
    case Family::symmetric: {
      long long f = 1;
      for (int i = 2; i <= a; ++i) f *= i;
      return f;
    }
    case Family::quaternion8: return 8;
    case Family::direct_product: return children[0].order() * children[1].order();
    case Family::semidirect_reversal: return 2LL * checked_pow(2, a, kMaxGroupOrder + 1);
  }
  return 0;
}

std::string GroupSpec::label() const {
  switch (family) {
    case Family::cyclic: return "C" + std::to_string(a);
    case Family::elementary_abelian:
      return "Z" + std::to_string(a) + "^" + std::to_string(b);
    case Family::dihedral: return "D" + std::to_string(2 * a);
    case Family::symmetric: return "S" + std::to_string(a);
    case Family::quaternion8: return "Q8";
    case Family::direct_product:
      return "prod(" + children[0].label() + "," + children[1].label() + ")";
    case Family::semidirect_reversal: return "Z2xZ2^" + std::to_string(a);
  }
  return "?";
}

GroupSpec GroupSpec::parse(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw std::invalid_argument("empty group spec");

  GroupSpec g;
  auto num = [&](const std::string& t) {
    if (t.empty()) throw std::invalid_argument("bad group spec: " + raw);
    for (char c : t)
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw std::invalid_argument("bad group spec: " + raw);
    return std::stoi(t);
  };

  if (s.rfind("prod(", 0) == 0 && s.back() == ')') {
    const std::string inner = s.substr(5, s.size() - 6);
    int depth = 0;
    size_t split = std::string::npos;
    for (size_t i = 0; i < inner.size(); ++i) {
      if (inner[i] == '(') ++depth;
      if (inner[i] == ')') --depth;
      if (inner[i] == ',' && depth == 0) {
        split = i;
        break;
      }
    }
    if (split == std::string::npos) throw std::invalid_argument("bad product spec: " + raw);
    g.family = Family::direct_product;
    g.children.push_back(parse(inner.substr(0, split)));
    g.children.push_back(parse(inner.substr(split + 1)));
    return g;
  }
  if (s.rfind("Z2xZ2^", 0) == 0) {
    g.family = Family::semidirect_reversal;
    g.a = num(s.substr(6));
    if (g.a < 1) throw std::invalid_argument("semidirect_reversal needs n >= 1");
    return g;
  }
  if (s == "Q8") {
    g.family = Family::quaternion8;
    return g;
  }
  if (s[0] == 'S') {
    g.family = Family::symmetric;
    g.a = num(s.substr(1));
    if (g.a < 1) throw std::invalid_argument("symmetric needs n >= 1");
    return g;
  }
  if (s[0] == 'C') {
    g.family = Family::cyclic;
    g.a = num(s.substr(1));
    if (g.a < 1) throw std::invalid_argument("cyclic needs n >= 1");
    return g;
  }
  if (s[0] == 'D') {
    const int ord = num(s.substr(1));
    if (ord < 2 || ord % 2 != 0)
      throw std::invalid_argument("Dn denotes the dihedral group of order n (n even)");
    g.family = Family::dihedral;
    g.a = ord / 2;
    return g;
  }
  if (s[0] == 'Z') {
    const auto caret = s.find('^');
    g.family = Family::elementary_abelian;
    if (caret == std::string::npos) {
      g.a = num(s.substr(1));
      g.b = 1;
    } else {
      g.a = num(s.substr(1, caret - 1));
      g.b = num(s.substr(caret + 1));
    }
    if (!is_prime(g.a)) throw std::invalid_argument("elementary abelian base must be prime");
    if (g.b < 1) throw std::invalid_argument("elementary abelian rank must be >= 1");
    return g;
  }
  throw std::invalid_argument("unrecognized group spec: " + raw);
}

// ---------------------------------------------------------------------------
// Family constructions

namespace {

GroupPtr finish(std::shared_ptr<FiniteGroup> g) {
  g->inv.assign(g->n, -1);
  for (int a = 0; a < g->n; ++a)
    for (int b = 0; b < g->n; ++b)
      if (g->mul(a, b) == 0) g->inv[a] = b;
  g->validate();
  g->build_word_table();
  return g;
}

GroupPtr build_cyclic(int n) {
  auto g = std::make_shared<FiniteGroup>();
  g->n = n;
  g->label = "C" + std::to_string(n);
  g->mul.resize(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) g->mul(a, b) = (a + b) % n;
  for (int a = 0; a < n; ++a) g->element_names.push_back(std::to_string(a));
  if (n > 1) {
    g->generators = {1};
    g->abelian = AbelianFactors{{1}, {n}};
  } else {
    g->abelian = AbelianFactors{{}, {}};
  }
  return finish(g);
}

GroupPtr build_elementary_abelian(int p, int r) {
  long long ord = 1;
  for (int i = 0; i < r; ++i) ord *= p;
  const int n = static_cast<int>(ord);
  auto g = std::make_shared<FiniteGroup>();
  g->n = n;
  g->label = "Z" + std::to_string(p) + "^" + std::to_string(r);
  g->mul.resize(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int x = a, y = b, pw = 1, s = 0;
      for (int i = 0; i < r; ++i) {
        s += ((x % p + y % p) % p) * pw;
        x /= p;
        y /= p;
        pw *= p;
      }
      g->mul(a, b) = s;
    }
  for (int a = 0; a < n; ++a) {
    std::string name;
    int x = a;
    for (int i = 0; i < r; ++i) {
      name += std::to_string(x % p);
      x /= p;
    }
    g->element_names.push_back(name);
  }
  AbelianFactors f;
  int pw = 1;
  for (int i = 0; i < r; ++i) {
    f.gens.push_back(pw);
    f.orders.push_back(p);
    g->generators.push_back(pw);
    pw *= p;
  }
  g->abelian = std::move(f);
  return finish(g);
}

// Rotations r^i (i < m) then reflections r^i s; index = i + m*j.
GroupPtr build_dihedral(int m) {
  const int n = 2 * m;
  auto g = std::make_shared<FiniteGroup>();
  g->n = n;
  g->label = "D" + std::to_string(n);
  g->mul.resize(n, n);
  auto idx = [m](int i, int j) { return i + m * j; };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const int ai = a % m, aj = a / m, bi = b % m, bj = b / m;
      // (r^ai s^aj)(r^bi s^bj) = r^(ai + (-1)^aj bi) s^(aj+bj)
      const int ci = ((ai + (aj ? m - bi : bi)) % m + m) % m;
      const int cj = (aj + bj) % 2;
      g->mul(a, b) = idx(ci, cj);
    }
  for (int a = 0; a < n; ++a) {
    const int i = a % m, j = a / m;
    std::string name = i == 0 ? "" : (i == 1 ? "r" : "r" + std::to_string(i));
    if (j) name += "s";
    if (name.empty()) name = "e";
    g->element_names.push_back(name);
  }
  const int s = idx(0, 1);
  if (m > 1)
    g->generators = {1, s};
  else
    g->generators = {s};
  if (m <= 2) {
    AbelianFactors f;
    if (m == 2) f = AbelianFactors{{1, s}, {2, 2}};
    else f = AbelianFactors{{s}, {2}};
    g->abelian = std::move(f);
  } else {
    FiniteGroup::Index2 h;
    for (int i = 0; i < m; ++i) h.sub_elements.push_back(i);
    h.sub = AbelianFactors{{1}, {m}};
    h.coset_rep = s;
    g->index2 = std::move(h);
  }
  return finish(g);
}

GroupPtr build_symmetric(int n_pts) {
  long long ord = 1;
  for (int i = 2; i <= n_pts; ++i) ord *= i;
  const int n = static_cast<int>(ord);
  auto g = std::make_shared<FiniteGroup>();
  g->n = n;
  g->label = "S" + std::to_string(n_pts);
  std::vector<Perm> perms(n);
  for (int i = 0; i < n; ++i) perms[i] = perm_unrank(n_pts, i);
  g->mul.resize(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      g->mul(a, b) = static_cast<int>(perm_rank(compose(perms[a], perms[b])));
  for (int a = 0; a < n; ++a) g->element_names.push_back(perm_name(perms[a]));
  for (int k = 0; k + 1 < n_pts; ++k) {
    Perm t(n_pts);
    std::iota(t.begin(), t.end(), 0);
    std::swap(t[k], t[k + 1]);
    g->generators.push_back(static_cast<int>(perm_rank(t)));
  }
  g->symmetric_n = n_pts;
  if (n_pts <= 2) g->abelian = AbelianFactors{g->generators, std::vector<int>(g->generators.size(), 2)};
  return finish(g);
}

GroupPtr build_quaternion8() {
  // Elements 1,-1,i,-i,j,-j,k,-k; index = 2*axis + (sign < 0), axis in
  // {1,i,j,k} order.
  auto g = std::make_shared<FiniteGroup>();
  g->n = 8;
  g->label = "Q8";
  const char* names[8] = {"1", "-1", "i", "-i", "j", "-j", "k", "-k"};
  for (int a = 0; a < 8; ++a) g->element_names.push_back(names[a]);
  // unit table over axes 0=1,1=i,2=j,3=k: (axis, sign)
  auto unit_mul = [](int a, int b, int& axis, int& sign) {
    static const int ax[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int sg[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
    axis = ax[a][b];
    sign = sg[a][b];
  };
  g->mul.resize(8, 8);
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      const int aa = a / 2, sa = a % 2 ? -1 : 1;
      const int bb = b / 2, sb = b % 2 ? -1 : 1;
      int axis, sign;
      unit_mul(aa, bb, axis, sign);
      sign *= sa * sb;
      g->mul(a, b) = 2 * axis + (sign < 0 ? 1 : 0);
    }
  g->generators = {2, 4};  // i, j
  FiniteGroup::Index2 h;
  h.sub_elements = {0, 1, 2, 3};
  h.sub = AbelianFactors{{2}, {4}};  // <i>
  h.coset_rep = 4;                   // j
  g->index2 = std::move(h);
  return finish(g);
}

GroupPtr build_semidirect_reversal(int r) {
  const int m = 1 << r;
  const int n = 2 * m;
  auto g = std::make_shared<FiniteGroup>();
  g->n = n;
  g->label = "Z2xZ2^" + std::to_string(r);
  g->mul.resize(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const int av = a & (m - 1), at = a >> r;
      const int bv = b & (m - 1), bt = b >> r;
      // (at, av)(bt, bv) = (at^bt, av ^ rev^at(bv))
      const int v = av ^ (at ? bit_reverse(bv, r) : bv);
      const int t = at ^ bt;
      g->mul(a, b) = v | (t << r);
    }
  for (int a = 0; a < n; ++a) {
    std::string name = a >> r ? "t" : "";
    for (int i = 0; i < r; ++i) name += (a >> i) & 1 ? "1" : "0";
    g->element_names.push_back(name);
  }
  for (int i = 0; i < r; ++i) g->generators.push_back(1 << i);
  g->generators.push_back(m);  // t
  if (r == 1) {
    g->abelian = AbelianFactors{{1, m}, {2, 2}};
  } else {
    FiniteGroup::Index2 h;
    for (int v = 0; v < m; ++v) h.sub_elements.push_back(v);
    AbelianFactors f;
    for (int i = 0; i < r; ++i) {
      f.gens.push_back(1 << i);
      f.orders.push_back(2);
    }
    h.sub = std::move(f);
    h.coset_rep = m;
    g->index2 = std::move(h);
  }
  return finish(g);
}

GroupPtr build_product(const GroupSpec& spec, long long max_order) {
  GroupPtr L = build_group(spec.children[0], max_order);
  GroupPtr R = build_group(spec.children[1], max_order);
  const int n = L->n * R->n;
  auto g = std::make_shared<FiniteGroup>();
  g->n = n;
  g->label = spec.label();
  g->mul.resize(n, n);
  const int nr = R->n;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const int al = a / nr, ar = a % nr, bl = b / nr, br = b % nr;
      g->mul(a, b) = L->op(al, bl) * nr + R->op(ar, br);
    }
  for (int a = 0; a < n; ++a)
    g->element_names.push_back("(" + L->element_names[a / nr] + "," + R->element_names[a % nr] + ")");
  for (int x : L->generators) g->generators.push_back(x * nr);
  for (int x : R->generators) g->generators.push_back(x);
  if (L->abelian && R->abelian) {
    AbelianFactors f;
    for (size_t i = 0; i < L->abelian->gens.size(); ++i) {
      f.gens.push_back(L->abelian->gens[i] * nr);
      f.orders.push_back(L->abelian->orders[i]);
    }
    for (size_t i = 0; i < R->abelian->gens.size(); ++i) {
      f.gens.push_back(R->abelian->gens[i]);
      f.orders.push_back(R->abelian->orders[i]);
    }
    g->abelian = std::move(f);
  }
  g->product = FiniteGroup::Product{L, R};
  return finish(g);
}

}  // namespace

GroupPtr build_group(const GroupSpec& spec, long long max_order) {
  const long long ord = spec.order();
  if (ord < 1 || ord > max_order)
    throw std::invalid_argument("group order " + std::to_string(ord) + " outside [1, " +
                                std::to_string(max_order) + "]");
  switch (spec.family) {
    case GroupSpec::Family::cyclic: return build_cyclic(spec.a);
    case GroupSpec::Family::elementary_abelian:
      if (!is_prime(spec.a)) throw std::invalid_argument("elementary abelian base must be prime");
      return build_elementary_abelian(spec.a, spec.b);
    case GroupSpec::Family::dihedral: return build_dihedral(spec.a);
    case GroupSpec::Family::symmetric: return build_symmetric(spec.a);
    case GroupSpec::Family::quaternion8: return build_quaternion8();
    case GroupSpec::Family::direct_product: return build_product(spec, max_order);
    case GroupSpec::Family::semidirect_reversal: return build_semidirect_reversal(spec.a);
  }
  throw std::invalid_argument("unknown family");
}

GroupPtr build_group(const std::string& text, long long max_order) {
  return build_group(GroupSpec::parse(text), max_order);
}

// ---------------------------------------------------------------------------
// Subgroups

bool Subgroup::contains(int g) const {
  return std::binary_search(elements.begin(), elements.end(), g);
}

Subgroup subgroup_generate(const FiniteGroup& G, const std::vector<int>& gens) {
  for (int g : gens)
    if (g < 0 || g >= G.n) throw std::invalid_argument("generator index out of range");
  std::vector<bool> in(G.n, false);
  in[0] = true;
  std::vector<int> elems{0}, work{0};
  auto push = [&](int x) {
    if (!in[x]) {
      in[x] = true;
      elems.push_back(x);
      work.push_back(x);
    }
  };
  for (int g : gens) push(g);
  for (size_t head = 0; head < work.size(); ++head) {
    const int x = work[head];
    for (int g : gens) {
      push(G.op(x, g));
      push(G.op(g, x));
    }
  }
  std::sort(elems.begin(), elems.end());
  Subgroup H;
  H.parent = &G;
  H.elements = std::move(elems);
  H.generators = gens;
  return H;
}

Subgroup subgroup_from_elements(const FiniteGroup& G, std::vector<int> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  std::vector<int> gens;
  Subgroup cur = subgroup_generate(G, {});
  for (int g : elements) {
    if (!cur.contains(g)) {
      gens.push_back(g);
      cur = subgroup_generate(G, gens);
    }
  }
  if (cur.elements != elements)
    throw std::invalid_argument("element set is not closed under the group operation");
  return cur;
}

bool is_normal(const FiniteGroup& G, const Subgroup& H) {
  const std::vector<int>& probes = G.generators.empty() ? std::vector<int>{0} : G.generators;
  for (int g : probes)
    for (int h : H.elements)
      if (!H.contains(G.conjugate(g, h))) return false;
  return true;
}

Subgroup normal_closure(const FiniteGroup& G, const Subgroup& H) {
  if (H.parent != &G) throw std::invalid_argument("subgroup belongs to a different group");
  std::vector<int> gens;
  const std::vector<int>& base = H.generators.empty() && H.order() > 1 ? H.elements : H.generators;
  for (int g = 0; g < G.n; ++g)
    for (int h : base) gens.push_back(G.conjugate(g, h));
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  Subgroup N = subgroup_generate(G, gens);
  // conjugation closure re-checked, not assumed
  for (int g = 0; g < G.n; ++g)
    for (int h : N.elements)
      if (!N.contains(G.conjugate(g, h))) throw std::runtime_error("normal closure not normal");
  return N;
}

std::vector<Subgroup> enumerate_subgroups(const FiniteGroup& G, int bound) {
  if (G.n > bound)
    throw enumeration_bound_error("subgroup enumeration refused for |G| = " + std::to_string(G.n) +
                                  " > " + std::to_string(bound));
  // Breadth-first join closure starting from all cyclic subgroups.
  std::map<std::vector<int>, Subgroup> seen;
  std::vector<Subgroup> cyclics;
  {
    Subgroup t = subgroup_generate(G, {});
    seen.emplace(t.elements, t);
    cyclics.push_back(t);
  }
  for (int g = 1; g < G.n; ++g) {
    Subgroup c = subgroup_generate(G, {g});
    if (seen.emplace(c.elements, c).second) cyclics.push_back(c);
  }
  std::vector<Subgroup> frontier = cyclics;
  while (!frontier.empty()) {
    std::vector<Subgroup> next;
    for (const Subgroup& a : frontier) {
      for (const Subgroup& c : cyclics) {
        if (c.order() == 1) continue;
        std::vector<int> gens = a.generators;
        gens.insert(gens.end(), c.generators.begin(), c.generators.end());
        Subgroup j = subgroup_generate(G, gens);
        if (seen.emplace(j.elements, j).second) next.push_back(j);
      }
    }
    frontier = std::move(next);
  }
  std::vector<Subgroup> out;
  out.reserve(seen.size());
  for (auto& [elems, H] : seen) out.push_back(H);
  std::sort(out.begin(), out.end(), [](const Subgroup& x, const Subgroup& y) {
    if (x.order() != y.order()) return x.order() < y.order();
    return x.elements < y.elements;
  });
  return out;
}

std::vector<std::vector<int>> conjugacy_classes(const FiniteGroup& G) {
  std::vector<int> cls(G.n, -1);
  std::vector<std::vector<int>> classes;
  for (int g = 0; g < G.n; ++g) {
    if (cls[g] >= 0) continue;
    const int id = static_cast<int>(classes.size());
    std::vector<int> orbit;
    for (int x = 0; x < G.n; ++x) {
      const int c = G.conjugate(x, g);
      if (cls[c] < 0) {
        cls[c] = id;
        orbit.push_back(c);
      }
    }
    std::sort(orbit.begin(), orbit.end());
    classes.push_back(std::move(orbit));
  }
  std::sort(classes.begin(), classes.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return classes;
}

int exponent(const FiniteGroup& G) {
  long long m = 1;
  for (int g = 0; g < G.n; ++g) m = std::lcm(m, static_cast<long long>(G.element_order(g)));
  return static_cast<int>(m);
}

namespace {

bool set_is_independent(const FiniteGroup& G, const std::vector<int>& S) {
  for (size_t i = 0; i < S.size(); ++i) {
    std::vector<int> rest;
    for (size_t j = 0; j < S.size(); ++j)
      if (j != i) rest.push_back(S[j]);
    if (subgroup_generate(G, rest).contains(S[i])) return false;
  }
  return true;
}

struct GammaSearch {
  const FiniteGroup& G;
  const std::vector<int>& cand;
  int best = 0;
  std::vector<int> best_set;
  int cutoff;  // gamma <= log2 |G|; stop early at the ceiling

  void dfs(std::vector<int>& S, size_t start, const Subgroup& span) {
    if (static_cast<int>(S.size()) > best) {
      best = static_cast<int>(S.size());
      best_set = S;
    }
    if (best >= cutoff) return;
    for (size_t i = start; i < cand.size(); ++i) {
      if (static_cast<int>(S.size() + (cand.size() - i)) <= best) break;
      const int g = cand[i];
      if (span.contains(g)) continue;
      S.push_back(g);
      if (set_is_independent(G, S)) {
        Subgroup next = subgroup_generate(G, S);
        dfs(S, i + 1, next);
        if (best >= cutoff) {
          S.pop_back();
          return;
        }
      }
      S.pop_back();
    }
  }
};

}  // namespace

GammaResult independent_subset_gamma(const FiniteGroup& G, int exact_limit) {
  GammaResult r;
  if (G.n == 1) return r;
  std::vector<int> cand;
  for (int g = 1; g < G.n; ++g) cand.push_back(g);
  std::sort(cand.begin(), cand.end(), [&](int a, int b) {
    const int oa = G.element_order(a), ob = G.element_order(b);
    if (oa != ob) return oa > ob;
    return a < b;
  });
  if (G.n <= exact_limit) {
    GammaSearch s{G, cand, 0, {}, ceil_log2(G.n + 0ULL)};
    // floor(log2 n): largest k with 2^k <= n
    int fl = 0;
    while ((1 << (fl + 1)) <= G.n) ++fl;
    s.cutoff = fl;
    std::vector<int> S;
    Subgroup trivial = subgroup_generate(G, {});
    s.dfs(S, 0, trivial);
    r.size = s.best;
    r.witness = s.best_set;
    r.exact = true;
  } else {
    std::vector<int> S;
    for (int g : cand) {
      Subgroup span = subgroup_generate(G, S);
      if (span.contains(g)) continue;
      S.push_back(g);
      if (!set_is_independent(G, S)) S.pop_back();
    }
    r.size = static_cast<int>(S.size());
    r.witness = S;
    r.exact = false;
  }
  std::sort(r.witness.begin(), r.witness.end());
  return r;
}

CosetDecomposition coset_index(const FiniteGroup& G, const Subgroup& H) {
  if (H.parent != &G) throw std::invalid_argument("subgroup belongs to a different group");
  CosetDecomposition d;
  std::vector<bool> seen(G.n, false);
  for (int g = 0; g < G.n; ++g) {
    if (seen[g]) continue;
    std::vector<int> coset;
    for (int h : H.elements) {
      const int x = G.op(g, h);
      seen[x] = true;
      coset.push_back(x);
    }
    std::sort(coset.begin(), coset.end());
    d.cosets.push_back(std::move(coset));
  }
  d.index = static_cast<long long>(d.cosets.size());
  if (d.index != G.n / H.order()) throw std::runtime_error("coset partition size mismatch");
  return d;
}

GroupPtr as_group(const Subgroup& H) {
  const FiniteGroup& G = *H.parent;
  const int n = H.order();
  std::vector<int> to_new(G.n, -1);
  for (int i = 0; i < n; ++i) to_new[H.elements[i]] = i;
  auto g = std::make_shared<FiniteGroup>();
  g->n = n;
  g->label = G.label + "|sub" + std::to_string(n);
  g->mul.resize(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) g->mul(a, b) = to_new[G.op(H.elements[a], H.elements[b])];
  for (int a = 0; a < n; ++a) g->element_names.push_back(G.element_names[H.elements[a]]);
  for (int x : H.generators)
    if (x != 0) g->generators.push_back(to_new[x]);
  if (g->generators.empty() && n > 1) {
    // derive generators greedily
    Subgroup cur = subgroup_generate(G, {});
    std::vector<int> gens;
    for (int e : H.elements) {
      if (!cur.contains(e)) {
        gens.push_back(e);
        cur = subgroup_generate(G, gens);
      }
    }
    for (int x : gens) g->generators.push_back(to_new[x]);
  }
  return finish(g);
}

}  // namespace memb
