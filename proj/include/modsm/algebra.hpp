#pragma once

#include "modsm/module.hpp"
#include "modsm/semantics.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace modsm::algebra {

/// Non-throwing precondition analysis for the composition operator.
struct compose_report {
    bool ok = true;
    std::vector<std::string> output_clash;  // shared output atom names
    std::vector<std::string> hidden_leak;   // hidden atoms visible to the partner
};

compose_report compose_check(const module& m1, const module& m2);

/// Composition with the id maps from each operand into the result. Atoms are
/// matched across modules by name; nameless hidden atoms are renamed apart.
struct composition {
    module combined;
    std::vector<std::vector<atom_id>> maps;  // per operand: atom id -> combined id

    const std::vector<atom_id>& map1() const { return maps[0]; }
    const std::vector<atom_id>& map2() const { return maps[1]; }
};

composition compose_mapped(const module& m1, const module& m2);

composition compose_all_mapped(const std::vector<module>& modules);

/// <R1+R2, (I1\O2)+(I2\O1), O1+O2, H1+H2>; throws composition_error when the
/// outputs clash or hidden atoms leak.
module compose(const module& m1, const module& m2);

/// True when the composition is defined and the modules are not mutually
/// dependent, i.e. the join exists.
bool joinable(const module& m1, const module& m2);

/// Composition plus the denial of positive recursion across the modules;
/// throws mutual_dependence_error carrying the shared SCC.
module join(const module& m1, const module& m2);

/// n-ary join; equivalent to folding pairwise joins in any order. The empty
/// list yields the empty module.
module join_all(const std::vector<module>& modules);

/// M1 and M2 agree on the atoms visible to the other module.
bool compatible(const interpretation& m1_int, const interpretation& m2_int, const module& m1,
                const module& m2);

/// { M1 + M2 | M1 in A1, M2 in A2 compatible }, expressed in the atom ids of
/// compose(m1, m2).
model_set natural_join(const model_set& a1, const model_set& a2, const module& m1,
                       const module& m2);

model_set natural_join_all(const std::vector<model_set>& sets,
                           const std::vector<module>& modules);

/// Both sides of SM(P1 |x| P2) = SM(P1 (u) P2), with witnesses of any
/// discrepancy.
struct theorem_report {
    bool ok = true;
    model_set joined;        // SM of the join
    model_set natural;       // natural join of the operand model sets
    model_set only_joined;   // witnesses missing from the natural join
    model_set only_natural;  // witnesses missing from the join
};

theorem_report check_module_theorem(const module& m1, const module& m2,
                                    std::uint64_t cap = semantics::default_cap);

/// Decides whether the semantical join is defined: the composition exists and
/// SM(m1 (+) m2) equals SM(m1) |x| SM(m2), checked exhaustively via the three
/// witness patterns over all subsets of Hb(m1 (+) m2).
bool check_semantical_join(const module& m1, const module& m2,
                           std::uint64_t cap = semantics::default_cap);

} // namespace modsm::algebra
