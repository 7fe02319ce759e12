#pragma once

#include "modsm/module.hpp"

#include <cstdint>
#include <vector>

namespace modsm::semantics {

/// Weight rules with no negative literals and no input atoms; has a unique
/// least model.
struct positive_program {
    std::vector<weight_rule> rules;
};

/// Classical satisfaction: a weight rule requires its head whenever the
/// weight sum of satisfied body literals reaches the bound; choice rules are
/// always satisfied.
bool satisfies(const interpretation& m, const rule& r);

bool satisfies(const interpretation& m, const program& rules);

/// Classical models of the rules of `m` over Hb(m).
model_set classical_models(const module& m, std::uint64_t cap);

/// Input-aware reduct: all negative literals and all input-atom literals are
/// evaluated under `m_int`.
positive_program reduct(const module& m, const interpretation& m_int);

/// Least model as the fixpoint of the one-step consequence operator.
interpretation least_model(const positive_program& p, std::size_t atom_bound);

/// M is stable iff M minus the input signature equals the least model of the
/// reduct of the rules with respect to M.
bool is_stable(const module& m, const interpretation& m_int);

enum class strategy {
    brute_force,   // enumerate all subsets of Hb
    instantiate,   // enumerate input assignments, solve each instantiation
};

inline constexpr std::uint64_t default_cap = std::uint64_t(1) << 20;

/// Reads MODSM_CAP if set, otherwise returns default_cap.
std::uint64_t configured_cap();

/// All stable models of `m`, canonically ordered. `threads` > 1 fans the
/// instantiate strategy out over input assignments; output is independent of
/// scheduling.
model_set stable_models(const module& m, strategy s = strategy::brute_force,
                        std::uint64_t cap = default_cap, unsigned threads = 1);

// --- splitting sets (normal rules, empty input signature) ---

bool is_splitting_set(const module& p, const atom_set& u);

struct splitting_result {
    module bottom;  // <b_U(P), {}, U, {}>
    module top;     // <t_U(P), U, Hb(P) minus U, {}>
    std::vector<std::pair<interpretation, interpretation>> solutions;
};

/// Partial evaluation of the top with respect to X, as a module over
/// Hb(P) minus U.
module partial_eval(const module& top, const atom_set& u, const interpretation& x);

/// Splits `p` at `u` and enumerates all solutions per the splitting-set
/// characterization.
splitting_result splitting(const module& p, const atom_set& u,
                           std::uint64_t cap = default_cap);

/// Validates the splitting-set theorem on `p`/`u` by full enumeration:
/// M is stable iff (M within U, M outside U) is a solution.
bool check_splitting_theorem(const module& p, const atom_set& u,
                             std::uint64_t cap = default_cap);

} // namespace modsm::semantics
