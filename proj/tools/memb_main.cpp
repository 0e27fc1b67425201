#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "memb/harness.hpp"
#include "memb/json_io.hpp"

using namespace memb;

namespace {

// "gens=(12),(13)" or "(12),(13)" or "1,3"; commas split at paren depth 0.
std::vector<int> parse_subgroup_gens(const FiniteGroup& G, std::string text) {
  if (text.rfind("gens=", 0) == 0) text = text.substr(5);
  std::vector<int> out;
  std::string cur;
  int depth = 0;
  auto flush = [&] {
    if (!cur.empty()) {
      out.push_back(G.element_by_name(cur));
      cur.clear();
    }
  };
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      flush();
      continue;
    }
    if (!std::isspace(static_cast<unsigned char>(c))) cur += c;
  }
  flush();
  return out;
}

void emit(const Json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(1) << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot open " + out_path);
  out << j.dump(1) << "\n";
}

void emit_report(const EvalReport& rep, const std::string& out_path) {
  if (out_path.size() >= 4 && out_path.substr(out_path.size() - 4) == ".csv") {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open " + out_path);
    out << report_to_csv(rep);
    return;
  }
  emit(report_to_json(rep), out_path);
}

struct CommonArgs {
  std::string group;
  std::string out;
  std::string cache_dir;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"one-way subgroup-membership protocols: library experiment harness"};
  app.require_subcommand(1);

  // gen-group ---------------------------------------------------------------
  CommonArgs ga;
  auto* gen = app.add_subcommand("gen-group", "build a group and print its table as JSON");
  gen->add_option("--group", ga.group, "group spec, e.g. S3, Z2^4, D8, Q8, C6, Z2xZ2^5, prod(C2,C3)")
      ->required();
  gen->add_option("--out", ga.out, "output file (stdout when omitted)");

  // chartable ---------------------------------------------------------------
  CommonArgs ca;
  auto* chart = app.add_subcommand("chartable", "character table with identity checks");
  chart->add_option("--group", ca.group)->required();
  chart->add_option("--out", ca.out);
  chart->add_option("--cache-dir", ca.cache_dir, "JSON cache directory");

  // verify ------------------------------------------------------------------
  CommonArgs va;
  bool v_eq1 = false, v_eq2 = false, v_appendix = false, v_net = false;
  std::vector<std::uint32_t> v_primes{5, 7};
  std::vector<int> v_dims{1, 2, 3};
  int v_samples = 10000;
  double v_eps = 0.05;
  std::uint64_t v_seed = 7;
  auto* verify = app.add_subcommand("verify", "identity and contract checks");
  verify->add_option("--group", va.group);
  verify->add_flag("--eq1", v_eq1, "invariant-dimension identity over F_q");
  verify->add_flag("--eq2", v_eq2, "kernel-character identity over C");
  verify->add_flag("--appendix-ineq", v_appendix, "dmax_p <= dmax_0 * ord_m(p)");
  verify->add_flag("--net", v_net, "codec net guarantee on random unit vectors");
  verify->add_option("--p", v_primes, "primes (eq1 / appendix-ineq)")->delimiter(',');
  verify->add_option("--dims", v_dims, "codec dimensions (net)")->delimiter(',');
  verify->add_option("--samples", v_samples, "random vectors per dimension (net)");
  verify->add_option("--epsilon", v_eps, "codec epsilon (net)");
  verify->add_option("--seed", v_seed);
  verify->add_option("--out", va.out);
  verify->add_option("--cache-dir", va.cache_dir);

  // run ---------------------------------------------------------------------
  CommonArgs ra;
  std::string r_protocol = "norm", r_subgroup, r_y, r_plan, r_epsilon = "auto";
  std::string r_semantics = "closure";
  std::uint32_t r_p = 5;
  int r_k = 0, r_amplify = 1;
  long long r_trials = 10000;
  std::uint64_t r_seed = 7;
  auto* run = app.add_subcommand("run", "run a protocol on one pair or a sweep plan");
  run->add_option("--protocol", r_protocol, "norm|modrep|comprep|trivial|quantum")->required();
  run->add_option("--group", ra.group)->required();
  run->add_option("--subgroup", r_subgroup, "Alice's subgroup, e.g. \"gens=(12)\"");
  run->add_option("--y", r_y, "Bob's element, e.g. \"(13)\"");
  run->add_option("--p", r_p, "modrep characteristic");
  run->add_option("--k", r_k, "modrep extension degree (0: ord_m(p))");
  run->add_option("--epsilon", r_epsilon, "comprep threshold or 'auto'");
  run->add_option("--trials", r_trials);
  run->add_option("--seed", r_seed);
  run->add_option("--amplify", r_amplify, "AND of k independent rounds");
  run->add_option("--plan", r_plan, "exhaustive|sampled sweep instead of one pair");
  run->add_option("--norm-semantics", r_semantics, "closure|membership");
  run->add_option("--out", ra.out, "report file (.json or .csv)");
  run->add_option("--cache-dir", ra.cache_dir);

  // table ---------------------------------------------------------------
  CommonArgs ta;
  std::string t_protocol = "norm", t_family = "Z2^r", t_range = "1..5";
  std::uint32_t t_p = 5;
  long long t_trials = 64;
  std::uint64_t t_seed = 7;
  auto* table = app.add_subcommand("table", "bit-cost rows across a group family");
  table->add_option("--protocol", t_protocol)->required();
  table->add_option("--family", t_family, "Z2^r|Z2xZ2^n|Cn|Dn|Sn");
  table->add_option("--range", t_range, "a..b");
  table->add_option("--p", t_p);
  table->add_option("--trials", t_trials);
  table->add_option("--seed", t_seed);
  table->add_option("--out", ta.out);
  table->add_option("--cache-dir", ta.cache_dir);

  // lowerbound ----------------------------------------------------------
  CommonArgs la;
  auto* lower = app.add_subcommand("lowerbound", "independent-subset size and the VC bound");
  lower->add_option("--group", la.group)->required();
  lower->add_option("--out", la.out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      GroupPtr G = build_group(ga.group);
      emit(group_to_json(*G), ga.out);
      return 0;
    }

    if (chart->parsed()) {
      Workspace ws(ca.cache_dir);
      GroupPtr G = build_group(ca.group);
      const CharacterTable& t = ws.chartable(G);
      Json j = chartable_to_json(t);
      long long degsq = 0;
      for (int d : t.degrees) degsq += static_cast<long long>(d) * d;
      Json checks;
      checks["degree_square_sum"] = degsq;
      checks["degree_square_sum_equals_order"] = (degsq == G->n);
      checks["ortho_residual"] = t.ortho_residual;
      Json eq2 = Json::array();
      for (const Subgroup& N : enumerate_subgroups(*G)) {
        if (!is_normal(*G, N)) continue;
        auto lam = lambda_H(t, N);
        long long s = 0;
        for (int i : lam) s += static_cast<long long>(t.degrees[i]) * t.degrees[i];
        eq2.push_back(Json{{"subgroup_order", N.order()},
                           {"lambda_size", lam.size()},
                           {"degree_square_sum", s},
                           {"index", G->n / N.order()}});
      }
      checks["kernel_identity_per_normal_subgroup"] = std::move(eq2);
      j["checks"] = std::move(checks);
      emit(j, ca.out);
      return 0;
    }

    if (verify->parsed()) {
      Json out;
      bool all_ok = true;
      Workspace ws(va.cache_dir);
      if (v_eq1) {
        GroupPtr G = build_group(va.group);
        Json rows = Json::array();
        for (std::uint32_t p : v_primes) {
          const ModularIrrepSet& set = ws.modular(G, p, 0);
          for (const Subgroup& H : enumerate_subgroups(*G)) {
            Eq1Report r = verify_eq1(set, H);  // throws on violation
            rows.push_back(Json{{"p", p},
                                {"q", set.field.q},
                                {"subgroup_order", H.order()},
                                {"sum", r.sum},
                                {"index", r.index}});
          }
        }
        out["eq1"] = Json{{"group", va.group}, {"ok", true}, {"rows", std::move(rows)}};
      }
      if (v_eq2) {
        GroupPtr G = build_group(va.group);
        const CharacterTable& t = ws.chartable(G);
        Json rows = Json::array();
        for (const Subgroup& N : enumerate_subgroups(*G)) {
          if (!is_normal(*G, N)) continue;
          auto lam = lambda_H(t, N);  // throws on violation
          long long s = 0;
          for (int i : lam) s += static_cast<long long>(t.degrees[i]) * t.degrees[i];
          rows.push_back(Json{{"subgroup_order", N.order()}, {"sum", s}});
        }
        out["eq2"] = Json{{"group", va.group}, {"ok", true}, {"rows", std::move(rows)}};
      }
      if (v_appendix) {
        GroupPtr G = build_group(va.group);
        const CharacterTable& t = ws.chartable(G);
        Json rows = Json::array();
        for (std::uint32_t p : v_primes) {
          DmaxReport r = dmax_modular(*G, p, t);  // throws on violation
          rows.push_back(Json{{"p", p},
                              {"dmax_p", r.dmax_p},
                              {"dmax_0", r.dmax_0},
                              {"ord", r.ord},
                              {"bound", r.bound}});
        }
        out["appendix_ineq"] = Json{{"group", va.group}, {"ok", true}, {"rows", std::move(rows)}};
      }
      if (v_net) {
        Json rows = Json::array();
        Rng rng(v_seed);
        for (int d : v_dims) {
          EpsilonCodec codec(d, v_eps);
          long long violations = 0;
          for (int s = 0; s < v_samples; ++s) {
            Eigen::VectorXcd v(d);
            for (int i = 0; i < d; ++i)
              v(i) = std::complex<double>(rng.gaussian(), rng.gaussian());
            if (v.norm() < 1e-12) continue;
            v /= v.norm();
            Eigen::VectorXcd n = codec.decode_unit(codec.encode(v));
            if (std::norm(n.dot(v)) <= 1.0 - v_eps * v_eps) ++violations;
          }
          all_ok = all_ok && violations == 0;
          rows.push_back(Json{{"dim", d},
                              {"epsilon", v_eps},
                              {"samples", v_samples},
                              {"violations", violations},
                              {"bits", codec.bits()}});
        }
        out["net"] = Json{{"ok", all_ok}, {"rows", std::move(rows)}};
      }
      if (out.empty())
        throw CLI::ValidationError("verify needs one of --eq1/--eq2/--appendix-ineq/--net");
      emit(out, va.out);
      return all_ok ? 0 : 1;
    }

    if (run->parsed()) {
      Workspace ws(ra.cache_dir);
      GroupPtr G = build_group(ra.group);
      ProtocolConfig cfg;
      cfg.id = protocol_from_name(r_protocol);
      cfg.p = r_p;
      cfg.k = r_k;
      cfg.epsilon = (r_epsilon == "auto") ? 0.0 : std::stod(r_epsilon);
      cfg.amplify = r_amplify;
      if (r_semantics == "membership") cfg.norm_closure_semantics = false;
      else if (r_semantics != "closure")
        throw CLI::ValidationError("--norm-semantics closure|membership");

      if (!r_plan.empty()) {
        EvalPlan plan;
        if (r_plan == "exhaustive") plan.exhaustive = true;
        else if (r_plan == "sampled") plan.exhaustive = false;
        else throw CLI::ValidationError("--plan exhaustive|sampled");
        EvalReport rep = evaluate(cfg, ws, G, plan, r_trials, r_seed);
        emit_report(rep, ra.out);
        return 0;
      }

      if (r_y.empty()) throw CLI::ValidationError("single runs need --y (or use --plan)");
      Subgroup H = subgroup_generate(*G, parse_subgroup_gens(*G, r_subgroup));
      const int y = G->element_by_name(r_y);
      std::unique_ptr<BoundProtocol> bound = bind_protocol(cfg, ws, G, H);

      Json j;
      j["protocol"] = r_protocol;
      j["group"] = G->label;
      Json gens = Json::array();
      for (int g : H.generators) gens.push_back(G->element_names[g]);
      j["H"] = Json{{"gens", std::move(gens)}, {"order", H.order()}};
      j["y"] = G->element_names[y];
      j["truth"] = bound->truth(y);
      if (bound->runnable() && r_trials > 0) {
        Rng rng = Rng::stream(r_seed, 0);
        long long accepts = 0, bits_max = 0;
        for (long long t = 0; t < r_trials; ++t) {
          TrialOutcome o = bound->run(y, rng);
          accepts += o.decision;
          bits_max = std::max(bits_max, o.bits);
        }
        j["trials"] = r_trials;
        j["empirical_accept"] = static_cast<double>(accepts) / static_cast<double>(r_trials);
        j["bits"] = bits_max;
      } else {
        j["bits"] = bound->bits_bound();
      }
      if (auto a = bound->analytic_accept(y)) {
        j["analytic_accept"] = a->value();
        j["analytic_exact"] = a->str();
      }
      j["bits_bound"] = bound->bits_bound();
      j["seed"] = r_seed;
      emit(j, ra.out);
      return 0;
    }

    if (table->parsed()) {
      Workspace ws(ta.cache_dir);
      const auto dots = t_range.find("..");
      if (dots == std::string::npos) throw CLI::ValidationError("--range a..b");
      const int lo = std::stoi(t_range.substr(0, dots));
      const int hi = std::stoi(t_range.substr(dots + 2));
      ProtocolConfig cfg;
      cfg.id = protocol_from_name(t_protocol);
      cfg.p = t_p;
      emit(cost_table_to_json(cost_table(cfg, ws, t_family, lo, hi, t_trials, t_seed)), ta.out);
      return 0;
    }

    if (lower->parsed()) {
      GroupPtr G = build_group(la.group);
      emit(vc_to_json(*G, vc_lower_bound(*G)), la.out);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
