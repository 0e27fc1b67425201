#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "memb/harness.hpp"
#include "memb/json_io.hpp"

using namespace memb;

TEST_CASE("trivial protocol") {
  GroupPtr z24 = build_group("Z2^4");
  Subgroup triv = subgroup_generate(*z24, {});
  TrivialRun r0 = trivial_protocol(*z24, triv, 3);
  CHECK(r0.gens_sent == 0);
  CHECK(r0.payload_bits == 0);  // header only
  CHECK(r0.decision == 0);

  Subgroup H = subgroup_generate(*z24, {1, 2});
  TrivialRun r1 = trivial_protocol(*z24, H, 1);
  CHECK(r1.gens_sent == 2);
  CHECK(r1.payload_bits == 8);  // 2 generators x 4 bits
  CHECK(r1.decision == 1);

  // decision is exact on every pair
  GroupPtr s3 = build_group("S3");
  for (const Subgroup& S : enumerate_subgroups(*s3))
    for (int y = 0; y < s3->n; ++y)
      CHECK(trivial_protocol(*s3, S, y).decision == (S.contains(y) ? 1 : 0));

  // full-rank payload is r^2 for Z2^r
  for (int r = 2; r <= 5; ++r) {
    GroupPtr g = build_group("Z2^" + std::to_string(r));
    std::vector<int> all(g->n);
    for (int i = 0; i < g->n; ++i) all[i] = i;
    Subgroup full = subgroup_from_elements(*g, all);
    CHECK(trivial_protocol(*g, full, 0).payload_bits == static_cast<long long>(r) * r);
  }
}

TEST_CASE("quantum reference") {
  GroupPtr g = build_group("Z2^4");
  Subgroup H = subgroup_generate(*g, {1, 2});
  for (int y = 0; y < g->n; ++y) {
    QuantumReference q = quantum_reference(*g, H, y);
    CHECK(q.accept == (H.contains(y) ? Rational(1) : Rational(1, 2)));
    CHECK(q.qubits == 4);
  }
}

TEST_CASE("amplification") {
  Workspace ws;
  GroupPtr s3 = build_group("S3");
  Subgroup A3 = subgroup_generate(*s3, {s3->element_by_name("(123)")});
  const int y12 = s3->element_by_name("(12)");

  ProtocolConfig cfg;
  cfg.id = ProtocolId::norm;

  // k = 1 is the identity
  auto base = bind_protocol(cfg, ws, s3, A3);
  CHECK(base->analytic_accept(y12).value() == Rational(1, 2));

  cfg.amplify = 2;
  auto amp = bind_protocol(cfg, ws, s3, A3);
  Rng rng = Rng::stream(3, 3);
  const int T = 20000;
  long long acc = 0;
  for (int t = 0; t < T; ++t) {
    TrialOutcome o = amp->run(y12, rng);
    acc += o.decision;
    CHECK(o.bits <= amp->bits_bound());
  }
  const double p = 0.25, sigma = std::sqrt(p * (1 - p) / T);
  CHECK(std::abs(static_cast<double>(acc) / T - p) <= 4 * sigma);

  // completeness survives amplification
  const int y123 = s3->element_by_name("(123)");
  for (int t = 0; t < 200; ++t) CHECK(amp->run(y123, rng).decision == 1);

  // the round count that reaches error 1/3
  const double err = 0.5;
  const int k = static_cast<int>(std::ceil(std::log(3.0) / std::log(1.0 / err)));
  CHECK(std::pow(err, k) <= 1.0 / 3.0 + 1e-12);
}

TEST_CASE("exhaustive evaluation of the closure protocol on S3") {
  Workspace ws;
  GroupPtr s3 = build_group("S3");
  ProtocolConfig cfg;
  cfg.id = ProtocolId::norm;
  EvalReport rep = evaluate(cfg, ws, s3, EvalPlan{}, 400, 11);
  CHECK(rep.summary.completeness_verified);
  CHECK(rep.summary.bits_max <= 3);
  CHECK(rep.summary.rows == 36);  // 6 subgroups x 6 elements
  for (const EvalRow& row : rep.rows) {
    if (row.truth) CHECK(*row.empirical == 1.0);
    if (row.H_order == 3 && !row.truth) {
      CHECK(*row.analytic == 0.5);  // A3 rows
      CHECK(row.analytic_exact == "1/2");
    }
  }
}

TEST_CASE("membership semantics skips non-normal subgroups") {
  Workspace ws;
  GroupPtr s3 = build_group("S3");
  ProtocolConfig cfg;
  cfg.id = ProtocolId::norm;
  cfg.norm_closure_semantics = false;
  EvalReport rep = evaluate(cfg, ws, s3, EvalPlan{}, 50, 1);
  CHECK(rep.summary.skipped_subgroups == 3);  // the transposition subgroups
  CHECK(rep.summary.completeness_verified);
}

TEST_CASE("modrep evaluation matches the oracle within 4 sigma") {
  Workspace ws;
  GroupPtr s3 = build_group("S3");
  ProtocolConfig cfg;
  cfg.id = ProtocolId::modrep;
  cfg.p = 5;
  cfg.k = 2;
  EvalReport rep = evaluate(cfg, ws, s3, EvalPlan{}, 3000, 7);
  CHECK(rep.summary.completeness_verified);
  CHECK(rep.summary.rows_with_analytic > 0);
  CHECK(rep.summary.rows_within_4sigma == rep.summary.rows_with_analytic);
  // the (<(12)>, (13)) row carries the exact 9/25
  bool found = false;
  for (const EvalRow& row : rep.rows)
    if (row.H_order == 2 && row.y == "(13)" && !row.truth && row.analytic_exact == "9/25")
      found = true;
  CHECK(found);
}

TEST_CASE("comprep evaluation is complete and measurably sound") {
  Workspace ws;
  GroupPtr d8 = build_group("D8");
  ProtocolConfig cfg;
  cfg.id = ProtocolId::comprep;
  EvalReport rep = evaluate(cfg, ws, d8, EvalPlan{}, 300, 23);
  CHECK(rep.summary.completeness_verified);
  for (const EvalRow& row : rep.rows)
    if (!row.truth && row.H_order < 8) CHECK(*row.empirical < 1.0);
}

TEST_CASE("quantum rows are analytic only") {
  Workspace ws;
  GroupPtr s3 = build_group("S3");
  ProtocolConfig cfg;
  cfg.id = ProtocolId::quantum;
  EvalReport rep = evaluate(cfg, ws, s3, EvalPlan{}, 1000, 4);
  for (const EvalRow& row : rep.rows) {
    CHECK(!row.empirical);
    CHECK(*row.analytic == (row.truth ? 1.0 : 0.5));
  }
}

TEST_CASE("vc lower bound") {
  GroupPtr z24 = build_group("Z2^4");
  VcReport v = vc_lower_bound(*z24);
  CHECK(v.gamma.size == 4);
  CHECK(v.shattering_verified);
  CHECK(v.bound == doctest::Approx((1.0 - binary_entropy(1.0 / 3.0)) * 4).epsilon(1e-12));
  CHECK(v.bound == doctest::Approx(0.3268167).epsilon(1e-6));

  GroupPtr triv = build_group("C1");
  CHECK(vc_lower_bound(*triv).bound == 0.0);

  GroupPtr c6 = build_group("C6");
  VcReport v6 = vc_lower_bound(*c6);
  CHECK(v6.gamma.size == 2);
  CHECK(v6.bound == doctest::Approx((1.0 - binary_entropy(1.0 / 3.0)) * 2));
}

TEST_CASE("cost tables respect the stated bounds") {
  Workspace ws;
  ProtocolConfig norm;
  norm.id = ProtocolId::norm;
  auto rows = cost_table(norm, ws, "Z2^r", 1, 6, 32, 5);
  REQUIRE(rows.size() == 6);
  for (int i = 0; i < 6; ++i) {
    CHECK(rows[i].observed_bits <= rows[i].bound_bits);
    CHECK(rows[i].observed_bits == i + 1);  // 2^r characters
  }

  ProtocolConfig comp;
  comp.id = ProtocolId::comprep;
  auto crows = cost_table(comp, ws, "Z2xZ2^n", 1, 4, 32, 5);
  for (const CostRow& r : crows) CHECK(r.observed_bits <= r.bound_bits);

  ProtocolConfig triv;
  triv.id = ProtocolId::trivial;
  auto trows = cost_table(triv, ws, "Z2^r", 2, 5, 32, 5);
  for (const CostRow& r : trows) CHECK(r.observed_bits <= r.bound_bits);

  ProtocolConfig mod;
  mod.id = ProtocolId::modrep;
  mod.p = 5;
  auto mrows = cost_table(mod, ws, "Sn", 3, 4, 32, 5);
  for (const CostRow& r : mrows) CHECK(r.observed_bits <= r.bound_bits);
}

TEST_CASE("evaluation is deterministic given the seed") {
  Workspace ws;
  GroupPtr d8 = build_group("D8");
  ProtocolConfig cfg;
  cfg.id = ProtocolId::modrep;
  cfg.p = 5;
  EvalReport a = evaluate(cfg, ws, d8, EvalPlan{}, 500, 42);
  EvalReport b = evaluate(cfg, ws, d8, EvalPlan{}, 500, 42);
  CHECK(report_to_json(a).dump() == report_to_json(b).dump());
  EvalReport c = evaluate(cfg, ws, d8, EvalPlan{}, 500, 43);
  CHECK(report_to_json(a).dump() != report_to_json(c).dump());

  // sampled plans are seed-driven too
  EvalPlan sampled;
  sampled.exhaustive = false;
  EvalReport d = evaluate(cfg, ws, d8, sampled, 200, 9);
  EvalReport e = evaluate(cfg, ws, d8, sampled, 200, 9);
  CHECK(report_to_json(d).dump() == report_to_json(e).dump());
}

TEST_CASE("file caches round trip and survive re-verification") {
  const std::string dir = "cache_test_tmp";
  std::filesystem::remove_all(dir);
  {
    Workspace ws(dir);
    GroupPtr s3 = build_group("S3");
    const CharacterTable& t = ws.chartable(s3);
    CHECK(t.num_chars() == 3);
    const UnitaryIrrepSet& u = ws.unitary(s3);
    CHECK(u.num_irreps() == 3);
    const ModularIrrepSet& m = ws.modular(s3, 5, 0);
    CHECK(m.field.q == 25);
  }
  {
    // a fresh workspace reloads from disk
    Workspace ws(dir);
    GroupPtr s3 = build_group("S3");
    CHECK(ws.chartable(s3).num_chars() == 3);
    CHECK(ws.unitary(s3).num_irreps() == 3);
    CHECK(ws.modular(s3, 5, 0).splitting);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("report serialization") {
  Workspace ws;
  GroupPtr s3 = build_group("S3");
  ProtocolConfig cfg;
  cfg.id = ProtocolId::norm;
  EvalReport rep = evaluate(cfg, ws, s3, EvalPlan{}, 100, 2);
  Json j = report_to_json(rep);
  CHECK(j["schema"] == 1);
  CHECK(j["protocol"] == "norm");
  CHECK(j["group"] == "S3");
  CHECK(j["rows"].size() == 36);
  const std::string csv = report_to_csv(rep);
  CHECK(csv.find("protocol,group") == 0);

  Json g = group_to_json(*s3);
  CHECK(g["order"] == 6);
  CHECK(g["mul"].size() == 36);
}
