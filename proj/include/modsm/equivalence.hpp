#pragma once

#include "modsm/module.hpp"
#include "modsm/semantics.hpp"

#include <cstdint>
#include <vector>

namespace modsm::equivalence {

/// SM(p) = SM(q), compared on atom names. Requires empty input signatures.
bool weak_eq(const module& p, const module& q, std::uint64_t cap = semantics::default_cap);

/// Equal visible signatures and a projection-preserving bijection between the
/// stable model sets, decided as multiset equality of visible projections.
bool visible_eq(const module& p, const module& q, std::uint64_t cap = semantics::default_cap);

enum class eq_method {
    direct,     // equal input signatures plus visible equivalence
    generator,  // join both sides with the input generator, then compare
};

/// Modular equivalence; the generator method requires compatible interfaces.
bool modular_eq(const module& p, const module& q, eq_method method = eq_method::direct,
                std::uint64_t cap = semantics::default_cap);

/// G_I: a single choice rule over `input_names` with the whole set as output;
/// its stable models are exactly the subsets of I.
module input_generator(const std::vector<std::string>& input_names);

/// The hidden part <hid(R), I+O, H, {}>: rules defining hidden atoms, with
/// choice heads projected onto H.
module hidden_part(const module& m);

/// Enough visible atoms: the hidden part admits at most one stable model per
/// interpretation of the visible signature, so distinct stable models always
/// differ visibly.
bool eva(const module& m, std::uint64_t cap = semantics::default_cap);

/// Samples the universally quantified semantical equivalence: for every
/// context whose semantical joins with both modules are defined, the
/// compositions must be visibly equivalent. Contexts that do not compose are
/// skipped.
bool sem_modular_eq_sampled(const module& p, const module& q,
                            const std::vector<module>& contexts,
                            std::uint64_t cap = semantics::default_cap);

} // namespace modsm::equivalence
