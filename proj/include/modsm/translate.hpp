#pragma once

#include "modsm/module.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace modsm::translate {

enum class expansion {
    faithful,        // every (B', C') pair reaching the bound
    subset_minimal,  // only pairs with no satisfying proper subset
};

inline constexpr std::uint64_t default_rule_cap = std::uint64_t(1) << 20;

/// Normal-form translation with the id map from the source module and the
/// ids of the complement atoms introduced for choice heads.
struct translation {
    module translated;
    std::vector<atom_id> map;            // source atom -> translated atom
    std::vector<atom_id> complement_of;  // source choice head -> its marker atom
};

/// Translates choice rules via complement markers and weight rules via body
/// subset expansion; the result is a normal-rule module over <I, O, H+H'>.
translation tr_nlp_mapped(const module& m, expansion mode = expansion::faithful,
                          std::uint64_t rule_cap = default_rule_cap);

module tr_nlp(const module& m, expansion mode = expansion::faithful,
              std::uint64_t rule_cap = default_rule_cap);

/// Executable restatement of the three translation-scheme conditions for a
/// joinable module pair: faithfulness after revealing the original hidden
/// atoms, preservation of the join, and distribution over the join.
struct condition_report {
    bool faithful_ok = false;
    bool join_preserved = false;
    bool modular_ok = false;
    std::string detail;

    bool ok() const { return faithful_ok && join_preserved && modular_ok; }
};

condition_report check_translation_conditions(const module& m1, const module& m2,
                                              std::uint64_t cap);

} // namespace modsm::translate
