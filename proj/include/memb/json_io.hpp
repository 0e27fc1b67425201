#pragma once

#include <memory>
#include <string>

#include "json.hpp"

#include "memb/character.hpp"
#include "memb/comprep.hpp"
#include "memb/harness.hpp"
#include "memb/modrep.hpp"

namespace memb {

using Json = nlohmann::ordered_json;

std::string group_hash_hex(const FiniteGroup& G);

// {label, order, mul (row-major), element_names}
Json group_to_json(const FiniteGroup& G);

Json chartable_to_json(const CharacterTable& t);
Json report_to_json(const EvalReport& r);
std::string report_to_csv(const EvalReport& r);
Json vc_to_json(const FiniteGroup& G, const VcReport& v);
Json cost_table_to_json(const std::vector<CostRow>& rows);

// File caches keyed by the group hash. Loads re-verify the payload and
// return nullptr on any mismatch so callers can recompute.
void save_chartable_cache(const std::string& dir, const CharacterTable& t);
std::unique_ptr<CharacterTable> load_chartable_cache(const std::string& dir,
                                                     const FiniteGroup& G);
void save_modular_cache(const std::string& dir, const ModularIrrepSet& s);
std::unique_ptr<ModularIrrepSet> load_modular_cache(const std::string& dir,
                                                    const FiniteGroup& G, std::uint32_t p,
                                                    int k);
void save_unitary_cache(const std::string& dir, const UnitaryIrrepSet& s);
std::unique_ptr<UnitaryIrrepSet> load_unitary_cache(const std::string& dir,
                                                    const FiniteGroup& G,
                                                    const CharacterTable& table);

}  // namespace memb
