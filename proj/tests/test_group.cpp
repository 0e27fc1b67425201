#include "doctest.h"

#include <algorithm>
#include <set>

#include "memb/group.hpp"

using namespace memb;

namespace {

// Independent oracle: every subset of G closed under the operation. Only
// viable for tiny groups; used to pin the join-closure enumerator.
int count_subgroups_brute(const FiniteGroup& G) {
  const int n = G.n;
  int count = 0;
  for (int mask = 0; mask < (1 << n); ++mask) {
    if (!(mask & 1)) continue;  // must contain identity
    bool closed = true;
    for (int a = 0; a < n && closed; ++a) {
      if (!(mask >> a & 1)) continue;
      if (!(mask >> G.inverse(a) & 1)) closed = false;
      for (int b = 0; b < n && closed; ++b)
        if ((mask >> b & 1) && !(mask >> G.op(a, b) & 1)) closed = false;
    }
    if (closed) ++count;
  }
  return count;
}

// Gaussian binomial [r choose k]_2.
long long gauss_binom2(int r, int k) {
  long long num = 1, den = 1;
  for (int i = 0; i < k; ++i) {
    num *= (1LL << (r - i)) - 1;
    den *= (1LL << (i + 1)) - 1;
  }
  return num / den;
}

bool subset_independent(const FiniteGroup& G, const std::vector<int>& S) {
  for (size_t i = 0; i < S.size(); ++i) {
    std::vector<int> rest;
    for (size_t j = 0; j < S.size(); ++j)
      if (j != i) rest.push_back(S[j]);
    if (subgroup_generate(G, rest).contains(S[i])) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("families build with correct orders and valid tables") {
  CHECK(build_group("S3")->n == 6);
  CHECK(build_group("Z2xZ2^3")->n == 16);
  CHECK(build_group("D8")->n == 8);
  CHECK(build_group("Q8")->n == 8);
  CHECK(build_group("C6")->n == 6);
  CHECK(build_group("Z2^4")->n == 16);
  CHECK(build_group("prod(C2,C3)")->n == 6);
  CHECK(build_group("S4")->n == 24);
}

TEST_CASE("spec parsing rejects bad input") {
  CHECK_THROWS(GroupSpec::parse("Z4^2"));       // 4 not prime
  CHECK_THROWS(GroupSpec::parse("D7"));         // odd order
  CHECK_THROWS(GroupSpec::parse("banana"));
  CHECK_THROWS(build_group("S8"));              // order overflow (40320 > 5040)
}

TEST_CASE("prod(C2,C3) is isomorphic to C6 by order profile") {
  GroupPtr a = build_group("prod(C2,C3)");
  GroupPtr b = build_group("C6");
  // brute-force profile: abelian + same multiset of element orders
  auto profile = [](const FiniteGroup& G) {
    std::multiset<int> orders;
    for (int g = 0; g < G.n; ++g) orders.insert(G.element_order(g));
    bool abelian = true;
    for (int x = 0; x < G.n; ++x)
      for (int y = 0; y < G.n; ++y)
        if (G.op(x, y) != G.op(y, x)) abelian = false;
    return std::pair(abelian, orders);
  };
  CHECK(profile(*a) == profile(*b));
}

TEST_CASE("subgroup generation") {
  GroupPtr s3 = build_group("S3");
  CHECK(subgroup_generate(*s3, {}).order() == 1);
  const int t12 = s3->element_by_name("(12)");
  const int t13 = s3->element_by_name("(13)");
  CHECK(subgroup_generate(*s3, {t12}).order() == 2);
  CHECK(subgroup_generate(*s3, {t12, t13}).order() == 6);
  CHECK_THROWS(subgroup_generate(*s3, {99}));
}

TEST_CASE("normal closure") {
  GroupPtr s3 = build_group("S3");
  const int t12 = s3->element_by_name("(12)");
  Subgroup H = subgroup_generate(*s3, {t12});
  Subgroup N = normal_closure(*s3, H);
  CHECK(N.order() == 6);  // conjugates of a transposition generate S3
  // brute-force oracle: closure of all conjugates
  std::vector<int> conj;
  for (int g = 0; g < s3->n; ++g) conj.push_back(s3->conjugate(g, t12));
  CHECK(subgroup_generate(*s3, conj).elements == N.elements);

  Subgroup A3 = subgroup_generate(*s3, {s3->element_by_name("(123)")});
  CHECK(is_normal(*s3, A3));
  CHECK(normal_closure(*s3, A3).elements == A3.elements);  // normal H fixed
  Subgroup triv = subgroup_generate(*s3, {});
  CHECK(normal_closure(*s3, triv).order() == 1);
}

TEST_CASE("subgroup enumeration matches brute force") {
  GroupPtr z22 = build_group("Z2^2");
  CHECK(enumerate_subgroups(*z22).size() == 5);
  CHECK(count_subgroups_brute(*z22) == 5);

  GroupPtr s3 = build_group("S3");
  auto subs = enumerate_subgroups(*s3);
  CHECK(subs.size() == 6);
  CHECK(count_subgroups_brute(*s3) == 6);
  // sorted by (order, elements), unique
  for (size_t i = 1; i < subs.size(); ++i) {
    CHECK(subs[i - 1].order() <= subs[i].order());
    CHECK(subs[i - 1].elements != subs[i].elements);
  }

  GroupPtr z5 = build_group("C5");
  CHECK(enumerate_subgroups(*z5).size() == 2);

  // Lagrange for every enumerated subgroup of S4
  GroupPtr s4 = build_group("S4");
  auto subs4 = enumerate_subgroups(*s4);
  CHECK(subs4.size() == 30);
  for (const Subgroup& H : subs4) CHECK(s4->n % H.order() == 0);
}

TEST_CASE("enumeration bound is enforced") {
  GroupPtr g = build_group("Z2^4");
  CHECK_THROWS_AS((void)enumerate_subgroups(*g, 10), enumeration_bound_error);
}

TEST_CASE("conjugacy classes") {
  GroupPtr z8 = build_group("C8");
  CHECK(conjugacy_classes(*z8).size() == 8);

  GroupPtr s3 = build_group("S3");
  auto cls = conjugacy_classes(*s3);
  REQUIRE(cls.size() == 3);
  std::multiset<size_t> sizes;
  for (auto& c : cls) sizes.insert(c.size());
  CHECK(sizes == std::multiset<size_t>{1, 2, 3});
  CHECK(cls[0] == std::vector<int>{0});  // identity singleton first

  GroupPtr s4 = build_group("S4");
  auto cls4 = conjugacy_classes(*s4);
  CHECK(cls4.size() == 5);
  std::multiset<size_t> sizes4;
  for (auto& c : cls4) sizes4.insert(c.size());
  CHECK(sizes4 == std::multiset<size_t>{1, 3, 6, 6, 8});
}

TEST_CASE("exponent") {
  CHECK(exponent(*build_group("Z2^3")) == 2);
  CHECK(exponent(*build_group("S3")) == 6);
  CHECK(exponent(*build_group("Q8")) == 4);
  CHECK(exponent(*build_group("S4")) == 12);
}

TEST_CASE("independent subset gamma") {
  for (int r = 1; r <= 4; ++r) {
    GroupPtr g = build_group("Z2^" + std::to_string(r));
    GammaResult res = independent_subset_gamma(*g);
    CHECK(res.exact);
    CHECK(res.size == r);
    CHECK(subset_independent(*g, res.witness));
  }
  GroupPtr c6 = build_group("C6");
  GammaResult res = independent_subset_gamma(*c6);
  CHECK(res.size == 2);
  CHECK(res.exact);
  // exhaustive oracle over all subsets of C6
  int best = 0;
  for (int mask = 0; mask < 64; ++mask) {
    std::vector<int> S;
    for (int g = 0; g < 6; ++g)
      if (mask >> g & 1) S.push_back(g);
    if (S.empty() || std::find(S.begin(), S.end(), 0) != S.end()) continue;
    if (subset_independent(*c6, S)) best = std::max(best, static_cast<int>(S.size()));
  }
  CHECK(best == res.size);

  GroupPtr triv = build_group("C1");
  CHECK(independent_subset_gamma(*triv).size == 0);

  // gamma <= log2 |G| across the test groups
  for (const char* spec : {"S3", "S4", "D8", "Q8", "Z2^4", "C6"}) {
    GroupPtr g = build_group(spec);
    GammaResult gr = independent_subset_gamma(*g);
    CHECK(static_cast<double>(gr.size) <= std::log2(static_cast<double>(g->n)) + 1e-12);
  }
}

TEST_CASE("coset index") {
  GroupPtr s3 = build_group("S3");
  Subgroup whole = subgroup_from_elements(*s3, {0, 1, 2, 3, 4, 5});
  CHECK(coset_index(*s3, whole).index == 1);
  Subgroup A3 = subgroup_generate(*s3, {s3->element_by_name("(123)")});
  auto d = coset_index(*s3, A3);
  CHECK(d.index == 2);
  // cosets partition the group
  std::set<int> all;
  for (auto& c : d.cosets)
    for (int x : c) all.insert(x);
  CHECK(all.size() == 6);

  GroupPtr z24 = build_group("Z2^4");
  Subgroup H = subgroup_generate(*z24, {1, 2});
  CHECK(H.order() == 4);
  CHECK(coset_index(*z24, H).index == 4);
}

TEST_CASE("subgroup count growth for Z2^r is superlinear in log") {
  std::vector<double> log_counts;
  for (int r = 1; r <= 4; ++r) {
    GroupPtr g = build_group("Z2^" + std::to_string(r));
    auto subs = enumerate_subgroups(*g);
    long long expect = 0;
    for (int k = 0; k <= r; ++k) expect += gauss_binom2(r, k);
    CHECK(static_cast<long long>(subs.size()) == expect);
    log_counts.push_back(std::log2(static_cast<double>(subs.size())));
  }
  // increments of log2(count) grow with r
  for (size_t i = 2; i < log_counts.size(); ++i) {
    CHECK(log_counts[i] - log_counts[i - 1] > log_counts[i - 1] - log_counts[i - 2]);
  }
}

TEST_CASE("as_group reindexes a subgroup with identity first") {
  GroupPtr s4 = build_group("S4");
  Subgroup H = subgroup_generate(*s4, {s4->element_by_name("(12)"), s4->element_by_name("(34)")});
  GroupPtr K = as_group(H);
  CHECK(K->n == 4);
  CHECK(K->element_names[0] == "e");
  K->validate();
}

TEST_CASE("element naming round trips") {
  GroupPtr s4 = build_group("S4");
  for (int g = 0; g < s4->n; ++g) CHECK(s4->element_by_name(s4->element_names[g]) == g);
  CHECK(s4->element_by_name("(21)") == s4->element_by_name("(12)"));
  GroupPtr d8 = build_group("D8");
  CHECK(d8->element_by_name("e") == 0);
  CHECK(d8->element_by_name("rs") == d8->op(1, d8->element_by_name("s")));
}
