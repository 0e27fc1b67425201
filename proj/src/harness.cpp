#include "memb/harness.hpp"

#include <algorithm>
#include <cmath>

#include "memb/json_io.hpp"

namespace memb {

std::string protocol_name(ProtocolId id) {
  switch (id) {
    case ProtocolId::norm: return "norm";
    case ProtocolId::modrep: return "modrep";
    case ProtocolId::comprep: return "comprep";
    case ProtocolId::trivial: return "trivial";
    case ProtocolId::quantum: return "quantum";
  }
  return "?";
}

ProtocolId protocol_from_name(const std::string& name) {
  if (name == "norm") return ProtocolId::norm;
  if (name == "modrep") return ProtocolId::modrep;
  if (name == "comprep") return ProtocolId::comprep;
  if (name == "trivial") return ProtocolId::trivial;
  if (name == "quantum") return ProtocolId::quantum;
  throw std::invalid_argument("unknown protocol '" + name + "'");
}

// ---------------------------------------------------------------------------
// Workspace

Workspace::Entry& Workspace::entry(const GroupPtr& G) {
  auto it = entries_.find(G->hash());
  if (it == entries_.end()) {
    Entry e;
    e.group = G;
    it = entries_.emplace(G->hash(), std::move(e)).first;
  }
  return it->second;
}

const CharacterTable& Workspace::chartable(const GroupPtr& G) {
  std::lock_guard<std::mutex> lock(mu_);
  Entry& e = entry(G);
  if (!e.table) {
    if (!cache_dir_.empty()) e.table = load_chartable_cache(cache_dir_, *e.group);
    if (!e.table) {
      e.table = std::make_unique<CharacterTable>(character_table(*e.group));
      if (!cache_dir_.empty()) save_chartable_cache(cache_dir_, *e.table);
    }
  }
  return *e.table;
}

const UnitaryIrrepSet& Workspace::unitary(const GroupPtr& G) {
  const CharacterTable& table = chartable(G);
  std::lock_guard<std::mutex> lock(mu_);
  Entry& e = entry(G);
  if (!e.unitary) {
    if (!cache_dir_.empty()) e.unitary = load_unitary_cache(cache_dir_, *e.group, table);
    if (!e.unitary) {
      e.unitary = std::make_unique<UnitaryIrrepSet>(complex_irreps(*e.group, table));
      if (!cache_dir_.empty()) save_unitary_cache(cache_dir_, *e.unitary);
    }
  }
  return *e.unitary;
}

const ModularIrrepSet& Workspace::modular(const GroupPtr& G, std::uint32_t p, int k) {
  std::lock_guard<std::mutex> lock(mu_);
  Entry& e = entry(G);
  if (k <= 0) k = multiplicative_order(p, exponent(*e.group));
  const auto key = std::make_pair(p, k);
  auto it = e.modular.find(key);
  if (it == e.modular.end()) {
    std::unique_ptr<ModularIrrepSet> set;
    if (!cache_dir_.empty()) set = load_modular_cache(cache_dir_, *e.group, p, k);
    if (!set) {
      set = std::make_unique<ModularIrrepSet>(decompose_regular(*e.group, FqField::make(p, k)));
      if (!cache_dir_.empty()) save_modular_cache(cache_dir_, *set);
    }
    it = e.modular.emplace(key, std::move(set)).first;
  }
  return *it->second;
}

// ---------------------------------------------------------------------------
// baselines

TrivialRun trivial_protocol(const FiniteGroup& G, const Subgroup& H, int y) {
  std::vector<int> gens;
  Subgroup cur = subgroup_generate(G, {});
  for (int g : H.elements) {
    if (cur.contains(g)) continue;
    gens.push_back(g);
    cur = subgroup_generate(G, gens);
    if (cur.order() == H.order()) break;
  }
  if (cur.elements != H.elements) throw std::logic_error("greedy generators missed the subgroup");
  TrivialRun r;
  r.gens_sent = static_cast<int>(gens.size());
  const int elem_bits = ceil_log2(static_cast<std::uint64_t>(G.n));
  r.header_bits = ceil_log2(static_cast<std::uint64_t>(elem_bits) + 1);
  r.payload_bits = static_cast<long long>(r.gens_sent) * elem_bits;
  r.total_bits = r.header_bits + r.payload_bits;
  r.decision = cur.contains(y) ? 1 : 0;  // Bob reconstructs H and answers exactly
  return r;
}

QuantumReference quantum_reference(const FiniteGroup& G, const Subgroup& H, int y) {
  QuantumReference q;
  // |<H | yH>| is 1 when the cosets coincide and 0 when they are disjoint;
  // the overlap test accepts with probability (1 + overlap) / 2.
  q.accept = H.contains(y) ? Rational(1) : Rational(1, 2);
  q.qubits = ceil_log2(static_cast<std::uint64_t>(G.n));
  return q;
}

// ---------------------------------------------------------------------------
// bound protocols

namespace {

class NormBound : public BoundProtocol {
 public:
  NormBound(const CharacterTable& table, const Subgroup& H, bool closure)
      : table_(&table), H_(H), ctx_(make_norm_context(table, H)), closure_(closure) {}

  TrialOutcome run(int y, Rng& rng) override {
    const NormRun r = run_norm(ctx_, y, rng);
    return {r.decision, r.bits};
  }
  std::optional<Rational> analytic_accept(int y) const override {
    if (ctx_.N.contains(y)) return Rational(1);
    return norm_exact_error(*table_, H_, y);
  }
  int truth(int y) const override { return (closure_ ? ctx_.N : H_).contains(y) ? 1 : 0; }
  bool certify_complete(int y) const override {
    for (int i : ctx_.lambda)
      if (!bob_norm(*table_, y, i)) return false;
    return true;
  }
  long long bits_bound() const override { return ctx_.paper_bits; }

 private:
  const CharacterTable* table_;
  Subgroup H_;
  NormContext ctx_;
  bool closure_;
};

class ModRepBound : public BoundProtocol {
 public:
  ModRepBound(const ModularIrrepSet& set, const Subgroup& H)
      : set_(&set), H_(H), ctx_(make_modrep_context(set, H)) {}

  TrialOutcome run(int y, Rng& rng) override {
    const ModRepMessage m = alice_modrep(ctx_, rng);
    return {bob_modrep(*set_, y, m.irrep, m.v), m.bits};
  }
  std::optional<Rational> analytic_accept(int y) const override {
    return modrep_exact_accept(*set_, H_, y);
  }
  int truth(int y) const override { return H_.contains(y) ? 1 : 0; }
  bool certify_complete(int y) const override {
    for (int i = 0; i < set_->num_irreps(); ++i) {
      const FixedSpace& fs = ctx_.fixed[i];
      for (int r = 0; r < fs.dim; ++r) {
        FqVec b(set_->irreps[i].dim);
        for (int j = 0; j < set_->irreps[i].dim; ++j) b[j] = fs.basis.at(r, j);
        if (!bob_modrep(*set_, y, i, b)) return false;
      }
    }
    return true;
  }
  long long bits_bound() const override { return ctx_.bound_bits; }

 private:
  const ModularIrrepSet* set_;
  Subgroup H_;
  ModRepContext ctx_;
};

class CompBound : public BoundProtocol {
 public:
  CompBound(const UnitaryIrrepSet& set, const Subgroup& H, double eps)
      : set_(&set), H_(H), ctx_(make_comp_context(set, H, eps)) {}

  TrialOutcome run(int y, Rng& rng) override {
    const CompMessage m = alice_comprep(ctx_, rng);
    return {bob_comprep(*set_, y, m.irrep, m.n, ctx_.epsilon), m.bits};
  }
  std::optional<Rational> analytic_accept(int) const override { return std::nullopt; }
  int truth(int y) const override { return H_.contains(y) ? 1 : 0; }
  bool certify_complete(int y) const override {
    for (int i = 0; i < set_->num_irreps(); ++i) {
      if (ctx_.fixed_dims[i] == 0) continue;
      const Eigen::MatrixXcd& B = ctx_.fixed_bases[i];
      if ((set_->irreps[i].at(y) * B - B).cwiseAbs().maxCoeff() > tol::cert) return false;
    }
    return true;
  }
  long long bits_bound() const override { return ctx_.bound_bits; }
  double epsilon() const { return ctx_.epsilon; }

 private:
  const UnitaryIrrepSet* set_;
  Subgroup H_;
  CompContext ctx_;
};

class TrivialBound : public BoundProtocol {
 public:
  TrivialBound(const FiniteGroup& G, const Subgroup& H) : G_(&G), H_(H) {}
  TrialOutcome run(int y, Rng&) override {
    const TrivialRun r = trivial_protocol(*G_, H_, y);
    return {r.decision, r.total_bits};
  }
  std::optional<Rational> analytic_accept(int y) const override {
    return Rational(H_.contains(y) ? 1 : 0);
  }
  int truth(int y) const override { return H_.contains(y) ? 1 : 0; }
  bool certify_complete(int) const override { return true; }
  long long bits_bound() const override {
    const long long L = ceil_log2(static_cast<std::uint64_t>(G_->n));
    return L * (L + 1);
  }

 private:
  const FiniteGroup* G_;
  Subgroup H_;
};

class QuantumBound : public BoundProtocol {
 public:
  QuantumBound(const FiniteGroup& G, const Subgroup& H) : G_(&G), H_(H) {}
  TrialOutcome run(int, Rng&) override {
    throw std::logic_error("the quantum reference is analytic only");
  }
  std::optional<Rational> analytic_accept(int y) const override {
    return quantum_reference(*G_, H_, y).accept;
  }
  int truth(int y) const override { return H_.contains(y) ? 1 : 0; }
  bool certify_complete(int) const override { return true; }
  long long bits_bound() const override { return ceil_log2(static_cast<std::uint64_t>(G_->n)); }
  bool runnable() const override { return false; }

 private:
  const FiniteGroup* G_;
  Subgroup H_;
};

class AmplifiedBound : public BoundProtocol {
 public:
  AmplifiedBound(std::unique_ptr<BoundProtocol> inner, int k)
      : inner_(std::move(inner)), k_(k) {}
  TrialOutcome run(int y, Rng& rng) override {
    TrialOutcome out{1, 0};
    for (int i = 0; i < k_; ++i) {
      const TrialOutcome o = inner_->run(y, rng);
      out.decision &= o.decision;
      out.bits += o.bits;
    }
    return out;
  }
  std::optional<Rational> analytic_accept(int y) const override {
    // exact value can overflow 64-bit rationals for large k; the double
    // value is carried by the evaluation layer instead
    if (k_ == 1) return inner_->analytic_accept(y);
    return std::nullopt;
  }
  std::optional<double> analytic_accept_double(int y) const {
    const auto base = inner_->analytic_accept(y);
    if (!base) return std::nullopt;
    return std::pow(base->value(), k_);
  }
  int truth(int y) const override { return inner_->truth(y); }
  bool certify_complete(int y) const override { return inner_->certify_complete(y); }
  long long bits_bound() const override { return k_ * inner_->bits_bound(); }
  bool runnable() const override { return inner_->runnable(); }

 private:
  std::unique_ptr<BoundProtocol> inner_;
  int k_;
};

}  // namespace

std::unique_ptr<BoundProtocol> bind_protocol(const ProtocolConfig& cfg, Workspace& ws,
                                             const GroupPtr& G, const Subgroup& H) {
  std::unique_ptr<BoundProtocol> p;
  switch (cfg.id) {
    case ProtocolId::norm:
      if (!cfg.norm_closure_semantics && !is_normal(*G, H))
        throw std::invalid_argument("membership semantics needs a normal subgroup");
      p = std::make_unique<NormBound>(ws.chartable(G), H, cfg.norm_closure_semantics);
      break;
    case ProtocolId::modrep:
      p = std::make_unique<ModRepBound>(ws.modular(G, cfg.p, cfg.k), H);
      break;
    case ProtocolId::comprep:
      p = std::make_unique<CompBound>(ws.unitary(G), H, cfg.epsilon);
      break;
    case ProtocolId::trivial: p = std::make_unique<TrivialBound>(*G, H); break;
    case ProtocolId::quantum: p = std::make_unique<QuantumBound>(*G, H); break;
  }
  if (cfg.amplify > 1) p = std::make_unique<AmplifiedBound>(std::move(p), cfg.amplify);
  return p;
}

// ---------------------------------------------------------------------------
// evaluation

EvalReport evaluate(const ProtocolConfig& cfg, Workspace& ws, const GroupPtr& G,
                    const EvalPlan& plan, long long trials, std::uint64_t seed) {
  if (cfg.amplify < 1) throw std::invalid_argument("amplification count must be >= 1");
  EvalReport rep;
  rep.protocol = protocol_name(cfg.id);
  rep.group = G->label;
  rep.plan = plan.exhaustive ? "exhaustive" : "sampled";
  rep.seed = seed;
  rep.trials = trials;
  rep.config = cfg;

  std::vector<Subgroup> subgroups;
  if (plan.exhaustive) {
    subgroups = enumerate_subgroups(*G);
  } else {
    Rng hr = Rng::stream(seed, 0xA11CE);
    const int max_gens = std::max(1, ceil_log2(static_cast<std::uint64_t>(G->n)));
    for (int i = 0; i < plan.sample_subgroups; ++i) {
      std::vector<int> gens;
      const int count = 1 + static_cast<int>(hr.below(max_gens));
      for (int j = 0; j < count; ++j) gens.push_back(static_cast<int>(hr.below(G->n)));
      subgroups.push_back(subgroup_generate(*G, gens));
    }
  }

  long long row_id = 0;
  for (const Subgroup& H : subgroups) {
    if (cfg.id == ProtocolId::norm && !cfg.norm_closure_semantics && !is_normal(*G, H)) {
      ++rep.summary.skipped_subgroups;
      continue;
    }
    std::unique_ptr<BoundProtocol> bound = bind_protocol(cfg, ws, G, H);
    rep.summary.bits_bound = std::max(rep.summary.bits_bound, bound->bits_bound());
    auto* amplified = dynamic_cast<AmplifiedBound*>(bound.get());

    std::vector<int> ys;
    if (plan.exhaustive) {
      ys.resize(G->n);
      for (int y = 0; y < G->n; ++y) ys[y] = y;
    } else {
      Rng yr = Rng::stream(seed, 0xB0B ^ static_cast<std::uint64_t>(row_id + 1));
      for (int j = 0; j < plan.sample_ys; ++j) ys.push_back(static_cast<int>(yr.below(G->n)));
    }

    for (int y : ys) {
      EvalRow row;
      for (int g : H.generators) row.H_gens.push_back(G->element_names[g]);
      row.H_order = H.order();
      row.H_normal = is_normal(*G, H);
      row.y = G->element_names[y];
      row.truth = bound->truth(y);
      if (row.truth) row.complete_ok = bound->certify_complete(y);

      if (const auto exact = bound->analytic_accept(y)) {
        row.analytic = exact->value();
        row.analytic_exact = exact->str();
      } else if (amplified) {
        if (const auto pd = amplified->analytic_accept_double(y)) row.analytic = *pd;
      }

      if (bound->runnable() && trials > 0) {
        Rng rng = Rng::stream(seed, 0x7000000ULL + static_cast<std::uint64_t>(row_id));
        long long accepts = 0, bits_sum = 0;
        for (long long t = 0; t < trials; ++t) {
          const TrialOutcome o = bound->run(y, rng);
          accepts += o.decision;
          bits_sum += o.bits;
          row.bits_max = std::max(row.bits_max, o.bits);
          if (o.bits > bound->bits_bound())
            throw std::runtime_error("message exceeded the per-protocol bit bound");
        }
        row.trials = trials;
        row.empirical = static_cast<double>(accepts) / static_cast<double>(trials);
        row.bits_mean = static_cast<double>(bits_sum) / static_cast<double>(trials);
        if (row.truth && accepts != trials) row.complete_ok = false;
      }

      if (row.analytic && row.empirical) {
        const double p = *row.analytic;
        if (p > 0 && p < 1) {
          const double sigma = std::sqrt(p * (1 - p) / static_cast<double>(trials));
          row.sigma_dev = std::abs(*row.empirical - p) / sigma;
        } else {
          row.sigma_dev = (*row.empirical == p) ? 0.0 : 1e18;
        }
      }

      if (row.truth && !row.complete_ok) rep.summary.completeness_verified = false;
      rep.summary.bits_max = std::max(rep.summary.bits_max, row.bits_max);
      ++rep.summary.rows;
      if (row.sigma_dev) {
        ++rep.summary.rows_with_analytic;
        if (*row.sigma_dev <= 4.0) ++rep.summary.rows_within_4sigma;
      }
      rep.rows.push_back(std::move(row));
      ++row_id;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// lower bound

double binary_entropy(double x) {
  if (x <= 0 || x >= 1) return 0;
  return -x * std::log2(x) - (1 - x) * std::log2(1 - x);
}

VcReport vc_lower_bound(const FiniteGroup& G) {
  VcReport rep;
  rep.gamma = independent_subset_gamma(G);
  const std::vector<int>& S = rep.gamma.witness;
  if (S.size() > 20) throw std::logic_error("witness too large to verify");
  for (std::uint64_t mask = 0; mask < (1ULL << S.size()); ++mask) {
    std::vector<int> R;
    for (size_t i = 0; i < S.size(); ++i)
      if (mask >> i & 1) R.push_back(S[i]);
    Subgroup gen = subgroup_generate(G, R);
    for (size_t i = 0; i < S.size(); ++i) {
      const bool in_R = (mask >> i & 1) != 0;
      if (gen.contains(S[i]) != in_R)
        throw std::runtime_error("shattering witness failed; gamma witness is broken");
    }
  }
  rep.shattering_verified = true;
  rep.bound = (1.0 - binary_entropy(1.0 / 3.0)) * rep.gamma.size;
  return rep;
}

// ---------------------------------------------------------------------------
// cost table

namespace {

std::string family_member(const std::string& family, int i) {
  if (family == "Z2^r") return "Z2^" + std::to_string(i);
  if (family == "Z2xZ2^n") return "Z2xZ2^" + std::to_string(i);
  if (family == "Cn") return "C" + std::to_string(i);
  if (family == "Dn") return "D" + std::to_string(i);
  if (family == "Sn") return "S" + std::to_string(i);
  throw std::invalid_argument("unknown family '" + family + "'");
}

}  // namespace

std::vector<CostRow> cost_table(const ProtocolConfig& cfg, Workspace& ws,
                                const std::string& family, int lo, int hi, long long trials,
                                std::uint64_t seed) {
  std::vector<CostRow> rows;
  for (int i = lo; i <= hi; ++i) {
    GroupPtr G = build_group(family_member(family, i));
    CostRow row;
    row.group = G->label;
    row.order = G->n;

    switch (cfg.id) {
      case ProtocolId::norm: {
        const CharacterTable& t = ws.chartable(G);
        row.observed_bits = ceil_log2(static_cast<std::uint64_t>(t.num_chars()));
        row.bound_bits = ceil_log2(static_cast<std::uint64_t>(G->n));
        break;
      }
      case ProtocolId::modrep: {
        const ModularIrrepSet& set = ws.modular(G, cfg.p, cfg.k);
        for (int r = 0; r < set.num_irreps(); ++r) {
          const ModRepBits b = modrep_message_bits(set, r);
          row.observed_bits = std::max<long long>(row.observed_bits, b.total);
          row.bound_bits = b.paper_bound;
        }
        break;
      }
      case ProtocolId::comprep: {
        const UnitaryIrrepSet& set = ws.unitary(G);
        const double eps = cfg.epsilon > 0 ? cfg.epsilon : epsilon_for_group(G->n);
        const int header = ceil_log2(static_cast<std::uint64_t>(set.num_irreps()));
        for (const auto& rho : set.irreps)
          row.observed_bits =
              std::max<long long>(row.observed_bits, header + EpsilonCodec(rho.dim, eps).bits());
        row.bound_bits = ceil_log2(static_cast<std::uint64_t>(G->n)) +
                         EpsilonCodec(std::max(set.dmax(), 1), eps).bits();
        break;
      }
      case ProtocolId::trivial: {
        std::vector<Subgroup> subs;
        try {
          subs = enumerate_subgroups(*G);
        } catch (const enumeration_bound_error&) {
          Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(i));
          for (int s = 0; s < 16; ++s) {
            std::vector<int> gens;
            const int count = 1 + static_cast<int>(rng.below(
                                  std::max(1, ceil_log2(static_cast<std::uint64_t>(G->n)))));
            for (int j = 0; j < count; ++j) gens.push_back(static_cast<int>(rng.below(G->n)));
            subs.push_back(subgroup_generate(*G, gens));
          }
        }
        for (const Subgroup& H : subs) {
          const TrivialRun r = trivial_protocol(*G, H, 0);
          row.observed_bits = std::max(row.observed_bits, r.total_bits);
        }
        const long long L = ceil_log2(static_cast<std::uint64_t>(G->n));
        row.bound_bits = L * (L + 1);
        break;
      }
      case ProtocolId::quantum: {
        row.observed_bits = ceil_log2(static_cast<std::uint64_t>(G->n));
        row.bound_bits = row.observed_bits;
        break;
      }
    }

    // a few sampled runs confirm per-message accounting stays under the bound
    if (cfg.id != ProtocolId::quantum && trials > 0) {
      Rng rng = Rng::stream(seed, 0xC057 ^ static_cast<std::uint64_t>(i));
      std::vector<int> gens{static_cast<int>(rng.below(G->n))};
      Subgroup H = subgroup_generate(*G, gens);
      std::unique_ptr<BoundProtocol> bound = bind_protocol(cfg, ws, G, H);
      for (long long t = 0; t < std::min<long long>(trials, 64); ++t) {
        const TrialOutcome o = bound->run(static_cast<int>(rng.below(G->n)), rng);
        if (o.bits > row.bound_bits)
          throw std::runtime_error("observed message bits exceed the bound for " + G->label);
      }
    }
    if (row.observed_bits > row.bound_bits)
      throw std::runtime_error("cost bound violated for " + G->label + ": " +
                               std::to_string(row.observed_bits) + " > " +
                               std::to_string(row.bound_bits));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace memb
