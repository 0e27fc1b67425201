#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "memb/comprep.hpp"
#include "memb/modrep.hpp"
#include "memb/norm_protocol.hpp"

namespace memb {

enum class ProtocolId { norm, modrep, comprep, trivial, quantum };

std::string protocol_name(ProtocolId id);
ProtocolId protocol_from_name(const std::string& name);

struct ProtocolConfig {
  ProtocolId id = ProtocolId::norm;
  std::uint32_t p = 5;   // modrep characteristic
  int k = 0;             // extension degree; 0 selects ord_m(p)
  double epsilon = 0;    // comprep threshold; <= 0 selects epsilon_for_group
  int amplify = 1;       // AND of k independent rounds
  bool norm_closure_semantics = true;  // false: normal H only, plain membership
};

// Process-wide cache of character tables and irrep sets, built under a
// single-writer lock and optionally backed by JSON files in cache_dir.
class Workspace {
 public:
  Workspace() = default;
  explicit Workspace(std::string cache_dir) : cache_dir_(std::move(cache_dir)) {}

  const CharacterTable& chartable(const GroupPtr& G);
  const UnitaryIrrepSet& unitary(const GroupPtr& G);
  const ModularIrrepSet& modular(const GroupPtr& G, std::uint32_t p, int k);

  const std::string& cache_dir() const { return cache_dir_; }

 private:
  struct Entry {
    GroupPtr group;
    std::unique_ptr<CharacterTable> table;
    std::unique_ptr<UnitaryIrrepSet> unitary;
    std::map<std::pair<std::uint32_t, int>, std::unique_ptr<ModularIrrepSet>> modular;
  };
  Entry& entry(const GroupPtr& G);
  std::mutex mu_;
  std::map<std::uint64_t, Entry> entries_;
  std::string cache_dir_;
};

struct TrialOutcome {
  int decision = 0;
  long long bits = 0;
};

// A protocol bound to (G, H) with its precomputations done. One object
// serves every y and every trial.
class BoundProtocol {
 public:
  virtual ~BoundProtocol() = default;
  virtual TrialOutcome run(int y, Rng& rng) = 0;
  virtual std::optional<Rational> analytic_accept(int y) const = 0;
  virtual int truth(int y) const = 0;
  // Deterministic completeness certificate for y with truth(y) = 1.
  virtual bool certify_complete(int y) const = 0;
  virtual long long bits_bound() const = 0;
  virtual bool runnable() const { return true; }
};

std::unique_ptr<BoundProtocol> bind_protocol(const ProtocolConfig& cfg, Workspace& ws,
                                             const GroupPtr& G, const Subgroup& H);

// ---- baselines ----

struct TrivialRun {
  int decision = 0;
  int gens_sent = 0;
  long long header_bits = 0;
  long long payload_bits = 0;
  long long total_bits = 0;
};

// Alice sends a greedy minimal generating sequence, each element in
// ceil(log2 |G|) bits behind a count header; Bob reconstructs H exactly.
TrivialRun trivial_protocol(const FiniteGroup& G, const Subgroup& H, int y);

struct QuantumReference {
  Rational accept;  // 1 when y in H, 1/2 otherwise
  int qubits = 0;
};

// Closed-form acceptance of the coset-overlap test; no state simulation.
QuantumReference quantum_reference(const FiniteGroup& G, const Subgroup& H, int y);

// ---- evaluation ----

struct EvalPlan {
  bool exhaustive = true;
  int sample_subgroups = 8;
  int sample_ys = 8;
};

struct EvalRow {
  std::vector<std::string> H_gens;
  int H_order = 1;
  bool H_normal = true;
  std::string y;
  int truth = 0;
  long long trials = 0;
  std::optional<double> empirical;
  std::optional<double> analytic;
  std::string analytic_exact;  // "num/den" when available unamplified
  long long bits_max = 0;
  double bits_mean = 0;
  bool complete_ok = true;
  std::optional<double> sigma_dev;
};

struct EvalSummary {
  bool completeness_verified = true;
  long long bits_max = 0;
  long long bits_bound = 0;
  long long rows = 0;
  long long rows_with_analytic = 0;
  long long rows_within_4sigma = 0;
  long long skipped_subgroups = 0;
};

struct EvalReport {
  int schema = 1;
  std::string protocol;
  std::string group;
  std::string plan;
  std::uint64_t seed = 0;
  long long trials = 0;
  ProtocolConfig config;
  std::vector<EvalRow> rows;
  EvalSummary summary;
};

// Deterministic given (config, plan, trials, seed). Per-row trial streams
// are derived from (seed, row index) so rows are independent.
EvalReport evaluate(const ProtocolConfig& cfg, Workspace& ws, const GroupPtr& G,
                    const EvalPlan& plan, long long trials, std::uint64_t seed);

// ---- lower bound ----

double binary_entropy(double x);

struct VcReport {
  GammaResult gamma;
  double bound = 0;  // (1 - h(1/3)) * gamma
  bool shattering_verified = false;
};

// Verifies the shattering witness directly: for every R inside the
// witness S, membership of each s in <R> equals s in R. Throws if the
// witness fails (a gamma bug).
VcReport vc_lower_bound(const FiniteGroup& G);

// ---- cost table ----

struct CostRow {
  std::string group;
  long long order = 0;
  long long observed_bits = 0;
  long long bound_bits = 0;
};

// Builds the family over the range, measures worst-case message bits, and
// asserts observed <= bound per group. Family names: Z2^r, Z2xZ2^n, Cn,
// Dn, Sn (the range value replaces the parameter).
std::vector<CostRow> cost_table(const ProtocolConfig& cfg, Workspace& ws,
                                const std::string& family, int lo, int hi, long long trials,
                                std::uint64_t seed);

}  // namespace memb
