#include "memb/json_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace memb {

namespace {

namespace fs = std::filesystem;

std::optional<Json> read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  try {
    Json j;
    in >> j;
    return j;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void write_json(const fs::path& path, const Json& j) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path);
  out << j.dump(1) << "\n";
}

Json complex_to_json(const std::complex<double>& z) { return Json::array({z.real(), z.imag()}); }

Json cmatrix_to_json(const Eigen::MatrixXcd& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXcd cmatrix_from_json(const Json& j) {
  const int rows = static_cast<int>(j.size());
  const int cols = rows ? static_cast<int>(j[0].size()) : 0;
  Eigen::MatrixXcd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int c = 0; c < cols; ++c)
      m(i, c) = std::complex<double>(j[i][c][0].get<double>(), j[i][c][1].get<double>());
  return m;
}

Json fqmatrix_to_json(const FqMatrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows; ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols; ++j) row.push_back(m.at(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

FqMatrix fqmatrix_from_json(const Json& j) {
  const int rows = static_cast<int>(j.size());
  const int cols = rows ? static_cast<int>(j[0].size()) : 0;
  FqMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int c = 0; c < cols; ++c) m.at(i, c) = j[i][c].get<std::uint64_t>();
  return m;
}

}  // namespace

std::string group_hash_hex(const FiniteGroup& G) {
  std::ostringstream os;
  os << std::hex << G.hash();
  return os.str();
}

Json group_to_json(const FiniteGroup& G) {
  Json j;
  j["label"] = G.label;
  j["order"] = G.n;
  Json mul = Json::array();
  for (int a = 0; a < G.n; ++a)
    for (int b = 0; b < G.n; ++b) mul.push_back(G.mul(a, b));
  j["mul"] = std::move(mul);
  j["element_names"] = G.element_names;
  return j;
}

Json chartable_to_json(const CharacterTable& t) {
  Json j;
  j["group_hash"] = group_hash_hex(*t.group);
  j["class_reps"] = t.class_rep;
  Json chars = Json::array();
  for (int i = 0; i < t.num_chars(); ++i) {
    Json row = Json::array();
    for (size_t c = 0; c < t.classes.size(); ++c) row.push_back(complex_to_json(t.chars(i, c)));
    chars.push_back(std::move(row));
  }
  j["char_values"] = std::move(chars);
  j["degrees"] = t.degrees;
  j["ortho_residual"] = t.ortho_residual;
  return j;
}

Json report_to_json(const EvalReport& r) {
  Json j;
  j["schema"] = r.schema;
  j["protocol"] = r.protocol;
  j["group"] = r.group;
  j["plan"] = r.plan;
  j["seed"] = r.seed;
  j["trials"] = r.trials;
  j["amplify"] = r.config.amplify;
  if (r.config.id == ProtocolId::modrep) {
    j["p"] = r.config.p;
    j["k"] = r.config.k;
  }
  if (r.config.id == ProtocolId::comprep) j["epsilon"] = r.config.epsilon;
  if (r.config.id == ProtocolId::norm)
    j["semantics"] = r.config.norm_closure_semantics ? "closure" : "membership";

  Json rows = Json::array();
  for (const EvalRow& row : r.rows) {
    Json rj;
    rj["H"] = Json{{"gens", row.H_gens}, {"order", row.H_order}, {"normal", row.H_normal}};
    rj["y"] = row.y;
    rj["truth"] = row.truth;
    rj["trials"] = row.trials;
    if (row.empirical) rj["empirical_accept"] = *row.empirical;
    if (row.analytic) rj["analytic_accept"] = *row.analytic;
    if (!row.analytic_exact.empty()) rj["analytic_exact"] = row.analytic_exact;
    rj["bits_max"] = row.bits_max;
    rj["bits_mean"] = row.bits_mean;
    rj["complete_ok"] = row.complete_ok;
    if (row.sigma_dev) rj["sigma_dev"] = *row.sigma_dev;
    rows.push_back(std::move(rj));
  }
  j["rows"] = std::move(rows);
  j["summary"] = Json{{"completeness_verified", r.summary.completeness_verified},
                      {"bits_max", r.summary.bits_max},
                      {"bits_bound", r.summary.bits_bound},
                      {"rows", r.summary.rows},
                      {"rows_with_analytic", r.summary.rows_with_analytic},
                      {"rows_within_4sigma", r.summary.rows_within_4sigma},
                      {"skipped_subgroups", r.summary.skipped_subgroups}};
  return j;
}

std::string report_to_csv(const EvalReport& r) {
  std::ostringstream os;
  os << "protocol,group,H_gens,H_order,H_normal,y,truth,trials,empirical_accept,"
        "analytic_accept,analytic_exact,bits_max,bits_mean,complete_ok,sigma_dev\n";
  for (const EvalRow& row : r.rows) {
    os << r.protocol << ',' << r.group << ',' << '"';
    for (size_t i = 0; i < row.H_gens.size(); ++i) os << (i ? " " : "") << row.H_gens[i];
    os << '"' << ',' << row.H_order << ',' << (row.H_normal ? 1 : 0) << ',' << '"' << row.y
       << '"' << ',' << row.truth << ',' << row.trials << ',';
    if (row.empirical) os << *row.empirical;
    os << ',';
    if (row.analytic) os << *row.analytic;
    os << ',' << row.analytic_exact << ',' << row.bits_max << ',' << row.bits_mean << ','
       << (row.complete_ok ? 1 : 0) << ',';
    if (row.sigma_dev) os << *row.sigma_dev;
    os << '\n';
  }
  return os.str();
}

Json vc_to_json(const FiniteGroup& G, const VcReport& v) {
  Json j;
  j["group"] = G.label;
  j["gamma"] = v.gamma.size;
  j["gamma_exact"] = v.gamma.exact;
  // the independence reading: membership in the generated subgroup,
  // products with repetition and inverses
  j["independence_definition"] = "membership-in-generated-subgroup";
  Json witness = Json::array();
  for (int g : v.gamma.witness) witness.push_back(G.element_names[g]);
  j["witness"] = std::move(witness);
  j["shattering_verified"] = v.shattering_verified;
  j["vc_lower_bound"] = v.bound;
  return j;
}

Json cost_table_to_json(const std::vector<CostRow>& rows) {
  Json arr = Json::array();
  for (const CostRow& r : rows)
    arr.push_back(Json{{"group", r.group},
                       {"order", r.order},
                       {"observed_bits", r.observed_bits},
                       {"bound_bits", r.bound_bits}});
  return arr;
}

// ---------------------------------------------------------------------------
// caches

void save_chartable_cache(const std::string& dir, const CharacterTable& t) {
  write_json(fs::path(dir) / ("chartable_" + group_hash_hex(*t.group) + ".json"),
             chartable_to_json(t));
}

std::unique_ptr<CharacterTable> load_chartable_cache(const std::string& dir,
                                                     const FiniteGroup& G) {
  const auto j = read_json(fs::path(dir) / ("chartable_" + group_hash_hex(G) + ".json"));
  if (!j) return nullptr;
  try {
    if ((*j)["group_hash"].get<std::string>() != group_hash_hex(G)) return nullptr;
    auto t = std::make_unique<CharacterTable>();
    t->group = &G;
    t->classes = conjugacy_classes(G);
    const int k = static_cast<int>(t->classes.size());
    t->class_of.assign(G.n, -1);
    for (int c = 0; c < k; ++c) {
      t->class_rep.push_back(t->classes[c].front());
      for (int g : t->classes[c]) t->class_of[g] = c;
    }
    if ((*j)["class_reps"].get<std::vector<int>>() != t->class_rep) return nullptr;
    t->degrees = (*j)["degrees"].get<std::vector<int>>();
    if (static_cast<int>(t->degrees.size()) != k) return nullptr;
    t->chars.resize(k, k);
    for (int i = 0; i < k; ++i)
      for (int c = 0; c < k; ++c) {
        const auto& v = (*j)["char_values"][i][c];
        t->chars(i, c) = std::complex<double>(v[0].get<double>(), v[1].get<double>());
      }
    // re-certify before trusting the file
    long long degsq = 0;
    for (int d : t->degrees) degsq += static_cast<long long>(d) * d;
    if (degsq != G.n) return nullptr;
    double resid = 0;
    for (int i = 0; i < k; ++i)
      for (int c = 0; c < k; ++c) {
        std::complex<double> ip = 0;
        for (int l = 0; l < k; ++l)
          ip += static_cast<double>(t->classes[l].size()) * t->chars(i, l) *
                std::conj(t->chars(c, l));
        ip /= static_cast<double>(G.n);
        resid = std::max(resid, std::abs(ip - (i == c ? 1.0 : 0.0)));
      }
    if (resid > tol::cert) return nullptr;
    t->ortho_residual = resid;
    for (int i = 0; i < k; ++i) {
      bool integral = true;
      for (int c = 0; c < k; ++c) {
        const auto z = t->chars(i, c);
        if (std::abs(z.real() - std::llround(z.real())) > tol::int_round ||
            std::abs(z.imag()) > tol::int_round)
          integral = false;
      }
      t->integral.push_back(integral);
    }
    return t;
  } catch (const std::exception&) {
    return nullptr;
  }
}

void save_modular_cache(const std::string& dir, const ModularIrrepSet& s) {
  Json j;
  j["group_hash"] = group_hash_hex(*s.group);
  j["p"] = s.field.p;
  j["k"] = s.field.k;
  j["modulus"] = s.field.modulus;
  Json irreps = Json::array();
  for (int i = 0; i < s.num_irreps(); ++i) {
    Json gens = Json::array();
    for (int gi : s.group->generators) gens.push_back(fqmatrix_to_json(s.irreps[i].at(gi)));
    irreps.push_back(Json{{"dim", s.irreps[i].dim},
                          {"multiplicity", s.multiplicity[i]},
                          {"generator_matrices", std::move(gens)}});
  }
  j["irreps"] = std::move(irreps);
  std::ostringstream name;
  name << "modrep_" << group_hash_hex(*s.group) << "_p" << s.field.p << "_k" << s.field.k
       << ".json";
  write_json(fs::path(dir) / name.str(), j);
}

std::unique_ptr<ModularIrrepSet> load_modular_cache(const std::string& dir,
                                                    const FiniteGroup& G, std::uint32_t p,
                                                    int k) {
  std::ostringstream name;
  name << "modrep_" << group_hash_hex(G) << "_p" << p << "_k" << k << ".json";
  const auto j = read_json(fs::path(dir) / name.str());
  if (!j) return nullptr;
  try {
    if ((*j)["group_hash"].get<std::string>() != group_hash_hex(G)) return nullptr;
    FqField F = FqField::make(p, k);
    if ((*j)["modulus"].get<std::vector<std::uint32_t>>() != F.modulus) return nullptr;
    auto set = std::make_unique<ModularIrrepSet>();
    set->group = &G;
    set->field = F;
    long long dimcount = 0;
    for (const auto& ij : (*j)["irreps"]) {
      ModularIrrep rho;
      rho.dim = ij["dim"].get<int>();
      rho.index = set->num_irreps();
      std::vector<FqMatrix> gen_mats;
      for (const auto& gm : ij["generator_matrices"]) gen_mats.push_back(fqmatrix_from_json(gm));
      if (gen_mats.size() != G.generators.size()) return nullptr;
      rho.mats.resize(G.n);
      rho.mats[0] = FqMatrix::identity(rho.dim);
      for (int g : G.bfs_order) {
        if (g == 0) continue;
        rho.mats[g] = fq_mul(F, gen_mats[G.word_gen[g]], rho.mats[G.word_prev[g]]);
      }
      const int mult = ij["multiplicity"].get<int>();
      dimcount += static_cast<long long>(mult) * rho.dim;
      set->irreps.push_back(std::move(rho));
      set->multiplicity.push_back(mult);
    }
    if (dimcount != G.n) return nullptr;
    // spot-check the homomorphism property before trusting the file
    Rng rng(0xCACEDULL);
    for (const auto& rho : set->irreps)
      for (int t = 0; t < 16; ++t) {
        const int a = static_cast<int>(rng.below(G.n));
        const int b = static_cast<int>(rng.below(G.n));
        if (!(fq_mul(F, rho.at(a), rho.at(b)) == rho.at(G.op(a, b)))) return nullptr;
      }
    set->splitting = true;
    for (size_t i = 0; i < set->irreps.size(); ++i)
      set->splitting = set->splitting && set->multiplicity[i] == set->irreps[i].dim;
    return set;
  } catch (const std::exception&) {
    return nullptr;
  }
}

void save_unitary_cache(const std::string& dir, const UnitaryIrrepSet& s) {
  Json j;
  j["group_hash"] = group_hash_hex(*s.group);
  Json irreps = Json::array();
  for (const auto& rho : s.irreps) {
    Json gens = Json::array();
    for (int gi : s.group->generators) gens.push_back(cmatrix_to_json(rho.at(gi)));
    irreps.push_back(Json{{"dim", rho.dim}, {"generator_matrices", std::move(gens)}});
  }
  j["irreps"] = std::move(irreps);
  j["cert_residual"] = s.cert_residual;
  write_json(fs::path(dir) / ("unitary_" + group_hash_hex(*s.group) + ".json"), j);
}

std::unique_ptr<UnitaryIrrepSet> load_unitary_cache(const std::string& dir,
                                                    const FiniteGroup& G,
                                                    const CharacterTable& table) {
  const auto j = read_json(fs::path(dir) / ("unitary_" + group_hash_hex(G) + ".json"));
  if (!j) return nullptr;
  try {
    if ((*j)["group_hash"].get<std::string>() != group_hash_hex(G)) return nullptr;
    auto set = std::make_unique<UnitaryIrrepSet>();
    set->group = &G;
    if (static_cast<int>((*j)["irreps"].size()) != table.num_chars()) return nullptr;
    double resid = 0;
    int index = 0;
    for (const auto& ij : (*j)["irreps"]) {
      UnitaryIrrep rho;
      rho.dim = ij["dim"].get<int>();
      rho.index = index++;
      std::vector<Eigen::MatrixXcd> gen_mats;
      for (const auto& gm : ij["generator_matrices"]) gen_mats.push_back(cmatrix_from_json(gm));
      if (gen_mats.size() != G.generators.size()) return nullptr;
      rho.mats.resize(G.n);
      rho.mats[0] = Eigen::MatrixXcd::Identity(rho.dim, rho.dim);
      for (int g : G.bfs_order) {
        if (g == 0) continue;
        rho.mats[g] = gen_mats[G.word_gen[g]] * rho.mats[G.word_prev[g]];
      }
      set->irreps.push_back(std::move(rho));
    }
    // re-certify: unitarity, sampled homomorphism, trace match to the table
    Rng rng(0xCAC4EULL);
    for (int i = 0; i < set->num_irreps(); ++i) {
      const auto& rho = set->irreps[i];
      if (rho.dim != table.degrees[i]) return nullptr;
      const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(rho.dim, rho.dim);
      for (int g = 0; g < G.n; ++g)
        resid = std::max(resid, (rho.at(g) * rho.at(g).adjoint() - I).cwiseAbs().maxCoeff());
      for (int t = 0; t < 16; ++t) {
        const int a = static_cast<int>(rng.below(G.n));
        const int b = static_cast<int>(rng.below(G.n));
        resid =
            std::max(resid, (rho.at(a) * rho.at(b) - rho.at(G.op(a, b))).cwiseAbs().maxCoeff());
      }
      for (size_t c = 0; c < table.classes.size(); ++c)
        if (std::abs(rho.at(table.class_rep[c]).trace() - table.chars(i, c)) > tol::match)
          return nullptr;
    }
    if (resid > tol::cert) return nullptr;
    set->cert_residual = resid;
    return set;
  } catch (const std::exception&) {
    return nullptr;
  }
}

}  // namespace memb
